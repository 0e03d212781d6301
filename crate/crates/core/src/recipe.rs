//! One-line group recipes.
//!
//! ```text
//! sym:n  alt:n  cyc:n  dih:n  triv:n
//! psl2:q[:pl]  pgl2:q[:pl]  psigmal2:q[:pl]  pgammal2:q[:pl]  m10:q[:pl]
//! gl:n:q  sl:n:q            (on nonzero vectors)
//! pgl:n:q  psl:n:q          (on projective points)
//! pairs(R)  subsets(R;k)  coset(R;SUB)  wr(L;P)
//! affine:q:n:MATS           MATS = file, fixture:<name> or gl
//! diag:T=<name>:k=<k>:top=R[:outer=0|1]
//! hol:<name>  gens:<file>  fixture:<name>
//! ```
//!
//! SUB is `gens:<file>`, `fixture:<name>` or a bare file name. A trailing
//! `@intransitive-ok` accepts intransitive or unfaithful results.

use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_traits::One;

use crate::actions::{self, LinearKind, Psl2Variant};
use crate::diagonal;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fixtures::{self, FixtureData};
use crate::gensfile;
use crate::group::PermGroup;
use crate::linear::{self, Mat};
use crate::perm::Perm;
use crate::simple::SmallGroup;

#[derive(Clone, Debug)]
pub struct EvalOptions {
    pub cap_degree: usize,
    pub fixtures_dir: PathBuf,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { cap_degree: actions::DEFAULT_DEGREE_CAP, fixtures_dir: default_fixtures_dir() }
    }
}

/// `SAXL_FIXTURES`, else ./fixtures, else the fixtures directory of the
/// source tree.
pub fn default_fixtures_dir() -> PathBuf {
    if let Ok(d) = std::env::var("SAXL_FIXTURES") {
        return PathBuf::from(d);
    }
    let local = PathBuf::from("fixtures");
    if local.is_dir() {
        return local;
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[derive(Clone, Debug)]
pub enum Structure {
    Plain,
    Wreath { l: Box<Evaluated>, p: Box<Evaluated> },
    Diagonal { t: String, k: usize, outer: bool, top_trivial: bool },
}

#[derive(Clone, Debug)]
pub struct Evaluated {
    pub recipe: String,
    pub group: PermGroup,
    pub kernel_order: BigUint,
    pub intransitive_ok: bool,
    pub structure: Structure,
    pub notes: Vec<String>,
}

impl Evaluated {
    fn plain(recipe: &str, group: PermGroup) -> Evaluated {
        Evaluated { recipe: recipe.to_string(), group, kernel_order: BigUint::one(), intransitive_ok: false, structure: Structure::Plain, notes: Vec::new() }
    }
    pub fn faithful(&self) -> bool {
        self.kernel_order.is_one()
    }
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

/// Splits at top-level occurrences of `sep` (outside parentheses).
fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn trim_at(pos: usize, s: &str) -> (usize, &str) {
    let lead = s.len() - s.trim_start().len();
    (pos + lead, s.trim())
}

fn number(pos: usize, s: &str) -> Result<usize> {
    s.trim().parse::<usize>().map_err(|_| perr(pos, format!("expected a number, found '{s}'")))
}

pub fn evaluate(recipe: &str, opts: &EvalOptions) -> Result<Evaluated> {
    let (pos, body) = trim_at(0, recipe);
    let (body, ok) = match body.strip_suffix("@intransitive-ok") {
        Some(b) => (b.trim_end(), true),
        None => (body, false),
    };
    let mut e = eval_at(pos, body, opts)?;
    e.recipe = recipe.trim().to_string();
    e.intransitive_ok |= ok;
    if !e.intransitive_ok {
        if !e.group.is_transitive() {
            return Err(Error::invalid(format!("recipe '{}' is intransitive; append @intransitive-ok to accept", e.recipe)));
        }
        if !e.faithful() {
            return Err(Error::invalid(format!("recipe '{}' is unfaithful (kernel order {}); append @intransitive-ok to accept", e.recipe, e.kernel_order)));
        }
    }
    Ok(e)
}

fn inner_args<'a>(pos: usize, s: &'a str, name: &str) -> Result<Option<(usize, &'a str)>> {
    let Some(rest) = s.strip_prefix(name).and_then(|r| r.strip_prefix('(')) else { return Ok(None) };
    let Some(inner) = rest.strip_suffix(')') else {
        return Err(perr(pos + s.len(), format!("missing ')' closing {name}(")));
    };
    Ok(Some((pos + name.len() + 1, inner)))
}

fn eval_at(pos: usize, s: &str, opts: &EvalOptions) -> Result<Evaluated> {
    let cap = opts.cap_degree;
    if let Some((p, inner)) = inner_args(pos, s, "pairs")? {
        let (p, inner) = trim_at(p, inner);
        let g = eval_at(p, inner, opts)?;
        let n = g.group.degree();
        if n * n.saturating_sub(1) / 2 > cap {
            return Err(Error::cap("pairs action degree", n * (n - 1) / 2, cap));
        }
        let a = actions::pairs_action(&g.group)?;
        let mut e = Evaluated::plain(s, a.group);
        e.kernel_order = a.kernel_order * g.kernel_order;
        return Ok(e);
    }
    if let Some((p, inner)) = inner_args(pos, s, "subsets")? {
        let parts = split_top(inner, ';');
        if parts.len() != 2 {
            return Err(perr(p, "subsets takes a recipe and a size"));
        }
        let (p0, r) = trim_at(p + parts[0].0, parts[0].1);
        let g = eval_at(p0, r, opts)?;
        let k = number(p + parts[1].0, parts[1].1)?;
        let a = actions::subsets_action(&g.group, k, cap)?;
        let mut e = Evaluated::plain(s, a.group);
        e.kernel_order = a.kernel_order * g.kernel_order;
        return Ok(e);
    }
    if let Some((p, inner)) = inner_args(pos, s, "coset")? {
        let parts = split_top(inner, ';');
        if parts.len() != 2 {
            return Err(perr(p, "coset takes a recipe and a subgroup generator file"));
        }
        let (p0, r) = trim_at(p + parts[0].0, parts[0].1);
        let g = eval_at(p0, r, opts)?;
        let (p1, sub) = trim_at(p + parts[1].0, parts[1].1);
        let h = load_subgroup(p1, sub, opts)?;
        let ca = actions::coset_action(&g.group, &h, cap)?;
        let mut e = Evaluated::plain(s, ca.action.group);
        e.kernel_order = ca.action.kernel_order;
        return Ok(e);
    }
    if let Some((p, inner)) = inner_args(pos, s, "wr")? {
        let parts = split_top(inner, ';');
        if parts.len() != 2 {
            return Err(perr(p, "wr takes two recipes"));
        }
        let (p0, r0) = trim_at(p + parts[0].0, parts[0].1);
        let (p1, r1) = trim_at(p + parts[1].0, parts[1].1);
        let l = eval_at(p0, r0, opts)?;
        let top = eval_at(p1, r1, opts)?;
        let w = actions::wreath_product_action(&l.group, &top.group, cap)?;
        let mut e = Evaluated::plain(s, w);
        e.structure = Structure::Wreath { l: Box::new(l), p: Box::new(top) };
        return Ok(e);
    }
    let (head, rest) = match s.find(':') {
        Some(i) => (&s[..i], &s[i + 1..]),
        None => return Err(perr(pos, format!("unrecognised recipe '{s}'"))),
    };
    let rpos = pos + head.len() + 1;
    let fields: Vec<&str> = rest.split(':').collect();
    let field_pos = |i: usize| rpos + fields[..i].iter().map(|f| f.len() + 1).sum::<usize>();
    let num = |i: usize| -> Result<usize> {
        let f = fields.get(i).ok_or_else(|| perr(rpos + rest.len(), format!("{head} needs more parameters")))?;
        number(field_pos(i), f)
    };
    let plain = |g: PermGroup| Ok(Evaluated::plain(s, g));
    match head {
        "sym" => plain(actions::symmetric(num(0)?)),
        "alt" => plain(actions::alternating(num(0)?)),
        "cyc" => plain(actions::cyclic(num(0)?)),
        "dih" => plain(actions::dihedral(num(0)?)),
        "triv" => {
            let mut e = Evaluated::plain(s, PermGroup::trivial(num(0)?.max(1)));
            e.intransitive_ok = e.group.degree() > 1;
            Ok(e)
        }
        "psl2" | "pgl2" | "psigmal2" | "pgammal2" | "m10" => {
            let q = num(0)?;
            if let Some(a) = fields.get(1) {
                if *a != "pl" {
                    return Err(perr(field_pos(1), format!("unknown action '{a}' (only 'pl')")));
                }
            }
            let v = match head {
                "psl2" => Psl2Variant::Psl,
                "pgl2" => Psl2Variant::Pgl,
                "psigmal2" => Psl2Variant::Psigmal,
                "pgammal2" => Psl2Variant::Pgammal,
                _ => Psl2Variant::M10,
            };
            plain(actions::psl2_projective(q, v)?)
        }
        "gl" | "sl" => {
            let (n, q) = (num(0)?, num(1)?);
            let kind = if head == "gl" { LinearKind::Gl } else { LinearKind::Sl };
            check_degree(q.checked_pow(n as u32).map(|x| x - 1), cap)?;
            plain(actions::linear_on_nonzero(n, q, kind)?)
        }
        "pgl" | "psl" => {
            let (n, q) = (num(0)?, num(1)?);
            let kind = if head == "pgl" { LinearKind::Gl } else { LinearKind::Sl };
            check_degree(q.checked_pow(n as u32).map(|x| (x - 1) / (q - 1).max(1)), cap)?;
            plain(actions::linear_projective(n, q, kind, false)?)
        }
        "affine" => {
            let (q, n) = (num(0)?, num(1)?);
            let src = fields.get(2..).map(|f| f.join(":")).unwrap_or_default();
            if src.is_empty() {
                return Err(perr(rpos + rest.len(), "affine needs a matrix source"));
            }
            let k = Field::of_order(q)?;
            let mats = load_matrices(field_pos(2), &src, n, &k, opts)?;
            plain(actions::affine_group_over(&k, n, &mats)?)
        }
        "diag" => eval_diag(rpos, rest, s, opts),
        "hol" => {
            let t = SmallGroup::bundled(rest)?;
            plain(diagonal::holomorph(&t)?)
        }
        "gens" => {
            let (n, gens) = read_gens_lookup(rpos, rest, opts)?;
            plain(PermGroup::from_parts(n, gens))
        }
        "fixture" => {
            let f = fixtures::build(rest.trim())?;
            plain(f.group()?)
        }
        _ => Err(perr(pos, format!("unknown recipe family '{head}'"))),
    }
}

fn check_degree(d: Option<usize>, cap: usize) -> Result<()> {
    match d {
        Some(d) if d <= cap => Ok(()),
        Some(d) => Err(Error::cap("degree", d, cap)),
        None => Err(Error::cap("degree", "overflow", cap)),
    }
}

fn eval_diag(rpos: usize, rest: &str, whole: &str, opts: &EvalOptions) -> Result<Evaluated> {
    let (body, outer) = match rest.rfind(":outer=") {
        Some(i) => {
            let v = &rest[i + 7..];
            let o = match v.trim() {
                "0" => false,
                "1" => true,
                _ => return Err(perr(rpos + i + 7, "outer must be 0 or 1")),
            };
            (&rest[..i], o)
        }
        None => (rest, false),
    };
    let t_part = body.strip_prefix("T=").ok_or_else(|| perr(rpos, "diag needs T=<name>"))?;
    let (t_name, after_t) = t_part.split_once(':').ok_or_else(|| perr(rpos, "diag needs k=<k>"))?;
    let kpos = rpos + 2 + t_name.len() + 1;
    let k_part = after_t.strip_prefix("k=").ok_or_else(|| perr(kpos, "diag needs k=<k>"))?;
    let (k_str, top_str) = match k_part.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (k_part, None),
    };
    let k = number(kpos + 2, k_str)?;
    let top = match top_str {
        Some(t) => {
            let tpos = kpos + 2 + k_str.len() + 1;
            let r = t.strip_prefix("top=").ok_or_else(|| perr(tpos, "expected top=<recipe>"))?;
            let mut sub = opts.clone();
            sub.cap_degree = opts.cap_degree.max(k);
            let e = eval_at(tpos + 4, r, &sub)?;
            e.group
        }
        None => PermGroup::trivial(k),
    };
    let t = SmallGroup::bundled(t_name)?;
    let d = diagonal::diagonal_group(&t, k, &top, outer, opts.cap_degree)?;
    let mut e = Evaluated::plain(whole, d.group);
    e.structure = Structure::Diagonal { t: t.name.clone(), k, outer, top_trivial: top.is_trivial() };
    if !d.primitive_expected {
        e.notes.push("top group is not primitive on [k]".into());
    }
    Ok(e)
}

/// Finds a file: as given, below the fixtures directory, or by file name
/// anywhere below it.
pub fn lookup_file(name: &str, opts: &EvalOptions) -> Option<PathBuf> {
    let p = PathBuf::from(name);
    if p.is_file() {
        return Some(p);
    }
    let q = opts.fixtures_dir.join(name);
    if q.is_file() {
        return Some(q);
    }
    let file_name = p.file_name()?.to_owned();
    let mut stack = vec![opts.fixtures_dir.clone()];
    while let Some(d) = stack.pop() {
        let Ok(rd) = std::fs::read_dir(&d) else { continue };
        let mut entries: Vec<PathBuf> = rd.filter_map(|e| e.ok().map(|e| e.path())).collect();
        entries.sort();
        for e in entries {
            if e.is_dir() {
                stack.push(e);
            } else if e.file_name() == Some(file_name.as_os_str()) {
                return Some(e);
            }
        }
    }
    None
}

fn read_gens_lookup(pos: usize, name: &str, opts: &EvalOptions) -> Result<(usize, Vec<Perm>)> {
    let name = name.trim();
    let path = lookup_file(name, opts).ok_or_else(|| Error::Io(format!("{name}: file not found (also searched {})", opts.fixtures_dir.display())))?;
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    gensfile::parse_gens(&text).map_err(|e| match e {
        Error::Parse { pos: p, msg } => perr(pos, format!("{}: byte {p}: {msg}", path.display())),
        other => other,
    })
}

fn load_subgroup(pos: usize, sub: &str, opts: &EvalOptions) -> Result<Vec<Perm>> {
    if let Some(name) = sub.strip_prefix("fixture:") {
        return Ok(fixtures::build(name.trim())?.group()?.nontrivial_generators());
    }
    let file = sub.strip_prefix("gens:").unwrap_or(sub);
    Ok(read_gens_lookup(pos, file, opts)?.1)
}

fn load_matrices(pos: usize, src: &str, n: usize, k: &Field, opts: &EvalOptions) -> Result<Vec<Mat>> {
    let src = src.trim();
    if src == "gl" {
        return Ok(linear::gl_generators(n, k));
    }
    if src == "sl" {
        return Ok(linear::sl_generators(n, k));
    }
    if let Some(name) = src.strip_prefix("fixture:") {
        let f = fixtures::build(name.trim())?;
        return match f.data {
            FixtureData::Matrices { q, n: dim, mats } if q == k.order() && dim == n => Ok(mats),
            _ => Err(perr(pos, format!("fixture {name} is not a matrix group over GF({}) of dimension {n}", k.order()))),
        };
    }
    let path = lookup_file(src, opts).ok_or_else(|| Error::Io(format!("{src}: file not found")))?;
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    linear::parse_matrices(&text, n, k)
}
