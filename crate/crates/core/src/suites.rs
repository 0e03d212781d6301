//! Bundled regression tables for `reproduce_table`.

use serde::Serialize;

use crate::bases;
use crate::error::{Error, Result};
use crate::recipe::{evaluate, EvalOptions};
use crate::saxl;

pub const SUITES: &[&str] = &["psl2-bases", "diag-small"];

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub case: String,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
}

/// Base sizes of primitive groups with socle L2(q) for small q.
const PSL2_BASES: &[(&str, usize)] = &[
    ("psl2:5:pl", 3),
    ("psl2:7:pl", 3),
    ("pgl2:7:pl", 3),
    ("psl2:8:pl", 3),
    ("pgammal2:8:pl", 4),
    ("psl2:9:pl", 3),
    ("pgl2:9:pl", 3),
    ("m10:9:pl", 3),
    ("psigmal2:9:pl", 4),
    ("pgammal2:9:pl", 4),
    ("psl2:11:pl", 3),
    ("pgl2:11:pl", 3),
    ("psigmal2:16:pl", 4),
    ("psigmal2:25:pl", 4),
    ("coset(psl2:5; fixture:a4-in-psl2-5)", 3),
    ("coset(pgl2:5; fixture:s4-in-pgl2-5)", 4),
    ("coset(psl2:7; fixture:s4-in-psl2-7)", 3),
    ("coset(psl2:9; fixture:a5-in-psl2-9)", 4),
    ("coset(psigmal2:9; fixture:s5-in-psigmal2-9)", 5),
    ("coset(psl2:11; fixture:a5-in-psl2-11)", 3),
    ("coset(psl2:19; fixture:a5-in-psl2-19)", 3),
    ("coset(psl2:11; fixture:d12-in-psl2-11)", 2),
    ("coset(psl2:13; fixture:a4-in-psl2-13)", 2),
    ("fixture:psigmal2-9-subfield", 4),
    ("fixture:psigmal2-16-subfield", 3),
    ("fixture:psigmal2-25-subfield", 3),
];

/// Diagonal groups with T = A5: (recipe, b, complete, arc-transitive);
/// None where the row does not assert the flag.
const DIAG_SMALL: &[(&str, usize, Option<bool>, Option<bool>)] = &[
    ("diag:T=A5:k=2", 3, Some(true), None),
    ("diag:T=A5:k=2:outer=1", 3, Some(true), Some(false)),
    ("diag:T=A5:k=2:top=sym:2", 3, Some(false), None),
    ("diag:T=A5:k=2:top=sym:2:outer=1", 4, Some(true), Some(false)),
    ("diag:T=A5:k=3:top=alt:3", 2, None, Some(false)),
    ("diag:T=A5:k=3:top=sym:3:outer=1", 2, None, Some(true)),
];

fn row(case: &str, expected: String, computed: String) -> Row {
    Row { case: case.to_string(), matches: expected == computed, expected, computed }
}

fn flag(v: Option<bool>, name: &str) -> String {
    match v {
        Some(true) => name.to_string(),
        Some(false) => format!("not {name}"),
        None => String::new(),
    }
}

fn describe(b: usize, complete: Option<bool>, arc: Option<bool>) -> String {
    let mut parts = vec![format!("b={b}")];
    for s in [flag(complete, "complete"), flag(arc, "arc-transitive")] {
        if !s.is_empty() {
            parts.push(s);
        }
    }
    parts.join(", ")
}

pub fn psl2_bases(opts: &EvalOptions) -> Result<Vec<Row>> {
    PSL2_BASES
        .iter()
        .map(|&(recipe, b)| {
            let g = evaluate(recipe, opts)?.group;
            Ok(row(recipe, format!("b={b}"), format!("b={}", bases::base_size(&g).b)))
        })
        .collect()
}

pub fn diag_small(opts: &EvalOptions) -> Result<Vec<Row>> {
    DIAG_SMALL
        .iter()
        .map(|&(recipe, b, complete, arc)| {
            let g = evaluate(recipe, opts)?.group;
            let got = bases::base_size(&g).b;
            let (c, a) = if complete.is_some() || arc.is_some() {
                let s = saxl::saxl_graph_with_b(&g, got)?;
                (complete.map(|_| s.is_complete()), arc.map(|_| s.is_arc_transitive()))
            } else {
                (None, None)
            };
            Ok(row(recipe, describe(b, complete, arc), describe(got, c, a)))
        })
        .collect()
}

pub fn reproduce(name: &str, opts: &EvalOptions) -> Result<Vec<Row>> {
    match name {
        "psl2-bases" => psl2_bases(opts),
        "diag-small" => diag_small(opts),
        _ => Err(Error::invalid(format!("unknown suite '{name}'; available: {}", SUITES.join(", ")))),
    }
}

pub fn format_table(rows: &[Row]) -> String {
    let w = rows.iter().map(|r| r.case.len()).max().unwrap_or(4).max(4);
    let e = rows.iter().map(|r| r.expected.len()).max().unwrap_or(8).max(8);
    let c = rows.iter().map(|r| r.computed.len()).max().unwrap_or(8).max(8);
    let mut s = format!("{:w$}  {:e$}  {:c$}  match\n", "case", "expected", "computed");
    for r in rows {
        s.push_str(&format!("{:w$}  {:e$}  {:c$}  {}\n", r.case, r.expected, r.computed, if r.matches { "yes" } else { "NO" }));
    }
    s
}
