use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use saxl_core::recipe::{self, EvalOptions};
use saxl_core::report::{self, Analyses, RunOptions};
use saxl_core::{fixtures, saxl, suites, Error};

#[derive(Parser)]
#[command(name = "saxl", version, about = "Base sizes and generalised Saxl graphs of permutation groups")]
struct Cli {
    /// Worker threads for edge tests (1 keeps runs sequential)
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Directory searched for fixture and generator files
    #[arg(long, global = true)]
    fixtures_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group from a recipe and report its invariants
    Run(RunArgs),
    /// Recompute a bundled table and compare with the expected values
    #[command(name = "reproduce_table", alias = "reproduce-table")]
    ReproduceTable {
        /// Suite name (psl2-bases, diag-small)
        name: String,
    },
    /// Write the Saxl graph of a recipe as DOT or an edge list
    #[command(name = "export_graph", alias = "export-graph")]
    ExportGraph {
        recipe: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        /// Output file (stdout if omitted)
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = saxl_core::actions::DEFAULT_DEGREE_CAP)]
        cap_degree: usize,
    },
    /// Write the bundled fixtures and manifest, or list them
    Fixtures {
        /// Target directory
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
        /// Only print the manifest
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Edges,
}

#[derive(clap::Args)]
struct RunArgs {
    recipe: String,
    #[arg(long)]
    all: bool,
    #[arg(long)]
    base: bool,
    #[arg(long)]
    saxl: bool,
    #[arg(long)]
    reg: bool,
    /// Tuple length for the probability block, as k=<k> or <k>
    #[arg(long, value_parser = parse_prob)]
    prob: Option<usize>,
    #[arg(long)]
    isigma: bool,
    #[arg(long)]
    wreath_check: bool,
    /// For diag:...:k=2 recipes, test whether N^2 = T for the neighbourhood N
    #[arg(long)]
    experimental_n2: bool,
    #[arg(long, default_value_t = saxl_core::actions::DEFAULT_DEGREE_CAP)]
    cap_degree: usize,
    /// Largest group order for analyses that list every element
    #[arg(long, default_value_t = saxl_core::prob::QHAT_ORDER_CAP)]
    cap_group_order: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Start the base size search at this value
    #[arg(long)]
    hint_b: Option<usize>,
    #[arg(long, default_value_t = 20_000)]
    mc_samples: u64,
    /// Write the report here instead of stdout
    #[arg(long)]
    json: Option<PathBuf>,
    /// Also write the Saxl graph as DOT
    #[arg(long)]
    dot: Option<PathBuf>,
}

fn parse_prob(s: &str) -> Result<usize, String> {
    let v = s.strip_prefix("k=").unwrap_or(s);
    v.parse::<usize>().ok().filter(|&k| k > 0).ok_or_else(|| format!("expected k=<positive integer>, got '{s}'"))
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if e.is_cap() { EXIT_CAP } else { EXIT_USAGE })
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build_global() {
        eprintln!("warning: {e}");
    }
    let mut eval = EvalOptions::default();
    if let Some(d) = &cli.fixtures_dir {
        eval.fixtures_dir = d.clone();
    }
    match cli.command {
        Command::Run(args) => run(args, eval),
        Command::ReproduceTable { name } => match suites::reproduce(&name, &eval) {
            Ok(rows) => {
                print!("{}", suites::format_table(&rows));
                if rows.iter().all(|r| r.matches) {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(EXIT_MISMATCH)
                }
            }
            Err(e) => fail(&e),
        },
        Command::ExportGraph { recipe, format, out, cap_degree } => {
            eval.cap_degree = cap_degree;
            let res = recipe::evaluate(&recipe, &eval).and_then(|e| saxl::saxl_graph(&e.group)).and_then(|s| {
                let text = match format {
                    Format::Dot => s.to_dot(),
                    Format::Edges => s.to_edge_list(),
                };
                write_out(out.as_ref(), &text)
            });
            match res {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(&e),
            }
        }
        Command::Fixtures { dir, list } => {
            let res = if list {
                fixtures::NAMES.iter().map(|n| fixtures::build(n)).collect::<Result<Vec<_>, _>>().map(|all| print!("{}", fixtures::manifest(&all)))
            } else {
                fixtures::write_all(&dir).map(|all| eprintln!("wrote {} fixtures to {}", all.len(), dir.display()))
            };
            match res {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(&e),
            }
        }
    }
}

fn run(args: RunArgs, mut eval: EvalOptions) -> ExitCode {
    eval.cap_degree = args.cap_degree;
    let e = match recipe::evaluate(&args.recipe, &eval) {
        Ok(e) => e,
        Err(err) => return fail(&err),
    };
    let any = args.base || args.saxl || args.reg || args.prob.is_some() || args.isigma || args.wreath_check;
    let mut a = if args.all {
        Analyses::all()
    } else if any {
        Analyses { base: args.base, saxl: args.saxl, reg: args.reg, prob: args.prob, prob_at_b: false, isigma: args.isigma, wreath_check: args.wreath_check, experimental_n2: false }
    } else {
        Analyses { base: true, saxl: true, ..Default::default() }
    };
    if args.prob.is_some() {
        a.prob = args.prob;
    }
    a.experimental_n2 = args.experimental_n2;
    if a.experimental_n2 {
        a.saxl = true;
    }
    let opts = RunOptions { seed: args.seed, hint_b: args.hint_b, mc_samples: args.mc_samples, cap_group_order: args.cap_group_order, cap_degree: args.cap_degree };
    let r = report::run(&e, &a, &opts);
    let mut json = r.to_json();
    json.push('\n');
    if let Err(err) = write_out(args.json.as_ref(), &json) {
        return fail(&err);
    }
    if let Some(path) = &args.dot {
        let res = match r.b.value() {
            Some(&b) => saxl::saxl_graph_with_b(&e.group, b),
            None => saxl::saxl_graph(&e.group),
        };
        if let Err(err) = res.and_then(|s| write_out(Some(path), &s.to_dot())) {
            return fail(&err);
        }
    }
    ExitCode::SUCCESS
}
