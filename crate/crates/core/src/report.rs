//! JSON report of the invariants computed for one recipe.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bases;
use crate::error::{Error, Result};
use crate::prob;
use crate::recipe::{Evaluated, Structure};
use crate::saxl::{self, SaxlGraph};
use crate::simple::SmallGroup;
use crate::wreath;

pub const SCHEMA: u32 = 1;

/// A value or the reason it was not computed; serialized as the value
/// itself or as the string "skipped(reason)".
#[derive(Clone, Debug, PartialEq)]
pub enum Slot<T> {
    Value(T),
    Skipped(String),
}

impl<T> Slot<T> {
    pub fn skipped(reason: impl Into<String>) -> Self {
        Slot::Skipped(reason.into())
    }
    pub fn value(&self) -> Option<&T> {
        match self {
            Slot::Value(v) => Some(v),
            Slot::Skipped(_) => None,
        }
    }
    fn from_result(r: Result<T>) -> Self {
        match r {
            Ok(v) => Slot::Value(v),
            Err(e) => Slot::Skipped(skip_reason(&e)),
        }
    }
}

fn skip_reason(e: &Error) -> String {
    match e {
        Error::BaseSizeBelowTwo => "base size below 2".into(),
        e if e.is_cap() => format!("cap: {e}"),
        e => format!("error: {e}"),
    }
}

impl<T: Serialize> Serialize for Slot<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Slot::Value(v) => v.serialize(s),
            Slot::Skipped(r) => s.serialize_str(&format!("skipped({r})")),
        }
    }
}

impl<'de, T: DeserializeOwned> Deserialize<'de> for Slot<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        if let serde_json::Value::String(s) = &v {
            if let Some(r) = s.strip_prefix("skipped(").and_then(|r| r.strip_suffix(')')) {
                return Ok(Slot::Skipped(r.to_string()));
            }
        }
        T::deserialize(v).map(Slot::Value).map_err(serde::de::Error::custom)
    }
}

/// A diameter, or "disconnected(c components)".
#[derive(Clone, Debug, PartialEq)]
pub enum Diameter {
    Finite(usize),
    Disconnected(usize),
}

impl Serialize for Diameter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Diameter::Finite(d) => s.serialize_u64(*d as u64),
            Diameter::Disconnected(c) => s.serialize_str(&format!("disconnected({c} components)")),
        }
    }
}

impl<'de> Deserialize<'de> for Diameter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        if let Some(n) = v.as_u64() {
            return Ok(Diameter::Finite(n as usize));
        }
        v.as_str()
            .and_then(|s| s.strip_prefix("disconnected("))
            .and_then(|s| s.strip_suffix(" components)"))
            .and_then(|c| c.parse().ok())
            .map(Diameter::Disconnected)
            .ok_or_else(|| serde::de::Error::custom("expected a diameter"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbBlock {
    pub k: usize,
    pub q_exact: Slot<String>,
    pub q_mc: Slot<prob::McEstimate>,
    pub qhat: Slot<String>,
    pub q_exact_le_qhat: Slot<bool>,
    pub t: Slot<Option<u64>>,
    pub r: Slot<Option<u64>>,
    /// 1 - Q(G,b) <= (val/n)^(b-1), checked when k = b.
    pub valency_bound: Slot<bool>,
    /// When r >= 2: diameter <= 2 and val > n(1 - 1/r).
    pub predictions_hold: Slot<bool>,
    /// "found" or "inconclusive" for a greedy (r+1)-clique.
    pub clique_r_plus_1: Slot<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsigmaBlock {
    /// Classes of points with equal stabilizers (parts of IΣ).
    pub parts: usize,
    pub complete: bool,
    pub edgeless: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WreathBlock {
    pub distinguishing_number: usize,
    pub predicted_b: usize,
    pub hypotheses_hold: bool,
    pub b_matches: Slot<bool>,
    pub reg_one_agrees: Slot<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub recipe: String,
    pub seed: u64,
    pub degree: usize,
    pub order: String,
    pub transitive: bool,
    pub primitive: Slot<bool>,
    pub faithful: bool,
    pub b: Slot<usize>,
    pub witness_base: Slot<Vec<usize>>,
    pub points: usize,
    pub val: Slot<usize>,
    pub edges: Slot<usize>,
    pub diameter: Slot<Diameter>,
    pub complete: Slot<bool>,
    pub cnc: Slot<bool>,
    pub arc_transitive: Slot<bool>,
    pub locally_faithful: Slot<bool>,
    pub strong_conjecture: Slot<bool>,
    pub almost_regular_suborbits: Slot<usize>,
    pub dirac: Slot<bool>,
    pub n_squared_is_t: Slot<bool>,
    pub reg: Slot<String>,
    pub irredundant_max: Slot<usize>,
    pub irredundant_sizes: Slot<Vec<usize>>,
    pub isigma: Slot<IsigmaBlock>,
    pub prob: Slot<ProbBlock>,
    pub wreath: Slot<WreathBlock>,
    pub notes: Vec<String>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
    pub fn from_json(s: &str) -> Result<Report> {
        serde_json::from_str(s).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })
    }
    /// The report with timings removed, for determinism comparisons.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        r.timings_ms.clear();
        r
    }
}

#[derive(Clone, Debug, Default)]
pub struct Analyses {
    pub base: bool,
    pub saxl: bool,
    pub reg: bool,
    pub prob: Option<usize>,
    pub prob_at_b: bool,
    pub isigma: bool,
    pub wreath_check: bool,
    pub experimental_n2: bool,
}

impl Analyses {
    pub fn all() -> Analyses {
        Analyses { base: true, saxl: true, reg: true, prob: None, prob_at_b: true, isigma: true, wreath_check: true, experimental_n2: false }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub hint_b: Option<usize>,
    pub mc_samples: u64,
    /// Largest group order for analyses that enumerate group elements.
    pub cap_group_order: u64,
    pub cap_degree: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 1, hint_b: None, mc_samples: 20_000, cap_group_order: prob::QHAT_ORDER_CAP, cap_degree: crate::actions::DEFAULT_DEGREE_CAP }
    }
}

fn not_requested<T>() -> Slot<T> {
    Slot::skipped("not requested")
}

struct Timer<'a> {
    timings: &'a mut BTreeMap<String, f64>,
}

impl Timer<'_> {
    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.insert(phase.to_string(), start.elapsed().as_secs_f64() * 1e3);
        out
    }
}

pub fn run(e: &Evaluated, a: &Analyses, opts: &RunOptions) -> Report {
    let g = e.group.clone().with_seed(opts.seed);
    let n = g.degree();
    let mut timings = BTreeMap::new();
    let mut t = Timer { timings: &mut timings };
    let order = t.time("order", || g.order());
    let transitive = g.is_transitive();
    let primitive = if transitive { Slot::from_result(g.is_primitive()) } else { Slot::Value(false) };
    let mut notes = e.notes.clone();

    let want_b = a.base || a.saxl || a.reg || a.prob_at_b || a.wreath_check || a.isigma;
    let base = if want_b { Some(t.time("base", || bases::base_size_with_hint(&g, opts.hint_b))) } else { None };
    let b = base.as_ref().map(|r| r.b);

    let mut r = Report {
        schema: SCHEMA,
        recipe: e.recipe.clone(),
        seed: opts.seed,
        degree: n,
        order: order.to_string(),
        transitive,
        primitive,
        faithful: e.faithful(),
        b: base.as_ref().map(|r| Slot::Value(r.b)).unwrap_or_else(not_requested),
        witness_base: base.as_ref().map(|r| Slot::Value(r.witness.clone())).unwrap_or_else(not_requested),
        points: n,
        val: not_requested(),
        edges: not_requested(),
        diameter: not_requested(),
        complete: not_requested(),
        cnc: not_requested(),
        arc_transitive: not_requested(),
        locally_faithful: not_requested(),
        strong_conjecture: not_requested(),
        almost_regular_suborbits: not_requested(),
        dirac: not_requested(),
        n_squared_is_t: not_requested(),
        reg: not_requested(),
        irredundant_max: not_requested(),
        irredundant_sizes: not_requested(),
        isigma: not_requested(),
        prob: not_requested(),
        wreath: not_requested(),
        notes: Vec::new(),
        timings_ms: BTreeMap::new(),
    };

    let mut sigma: Option<SaxlGraph> = None;
    if a.saxl || a.prob_at_b || a.prob.is_some() {
        let bb = b.unwrap_or_else(|| bases::base_size(&g).b);
        match t.time("saxl", || saxl::saxl_graph_with_b(&g, bb)) {
            Ok(s) => {
                notes.extend(s.warnings.iter().cloned());
                sigma = Some(s);
            }
            Err(err) if a.saxl => {
                let reason = skip_reason(&err);
                r.val = Slot::skipped(reason.clone());
                r.edges = Slot::skipped(reason.clone());
                r.diameter = Slot::skipped(reason.clone());
                r.complete = Slot::skipped(reason.clone());
                r.cnc = Slot::skipped(reason.clone());
                r.arc_transitive = Slot::skipped(reason.clone());
                r.locally_faithful = Slot::skipped(reason.clone());
                r.strong_conjecture = Slot::skipped(reason.clone());
                r.almost_regular_suborbits = Slot::skipped(reason.clone());
                r.dirac = Slot::skipped(reason.clone());
                r.n_squared_is_t = Slot::skipped(reason);
            }
            Err(_) => {}
        }
    }
    if a.saxl {
        if let Some(s) = &sigma {
            t.time("saxl_properties", || fill_saxl(&mut r, s, e, a));
        }
    }

    if a.reg {
        let bb = b.expect("base size computed");
        r.reg = Slot::Value(t.time("reg", || bases::reg_with_b(&g, bb)).reg.to_string());
    }

    if a.isigma {
        let cap_ok = order <= BigUint::from(opts.cap_group_order);
        r.isigma = Slot::from_result(t.time("isigma", || {
            saxl::isigma(&g).map(|ig| IsigmaBlock { parts: ig.classes, complete: ig.is_complete(), edgeless: ig.is_edgeless() })
        }));
        if cap_ok {
            match t.time("irredundant", || bases::irredundant_sizes(&g)) {
                Ok(sizes) => {
                    r.irredundant_max = Slot::Value(*sizes.iter().max().unwrap_or(&0));
                    r.irredundant_sizes = Slot::Value(sizes.into_iter().collect());
                }
                Err(err) => {
                    r.irredundant_max = Slot::skipped(skip_reason(&err));
                    r.irredundant_sizes = Slot::skipped(skip_reason(&err));
                }
            }
        } else {
            r.irredundant_max = Slot::skipped("cap: group order");
            r.irredundant_sizes = Slot::skipped("cap: group order");
        }
    }

    if a.prob.is_some() || a.prob_at_b {
        let k = a.prob.or(b).unwrap_or(1);
        r.prob = Slot::Value(t.time("prob", || prob_block(&g, k, b, sigma.as_ref(), opts)));
    }

    if a.wreath_check {
        r.wreath = match &e.structure {
            Structure::Wreath { l, p } => Slot::from_result(t.time("wreath", || wreath_block(&l.group, &p.group, b, opts.cap_degree))),
            _ => Slot::skipped("not a wreath recipe"),
        };
    }

    r.notes = notes;
    r.timings_ms = timings;
    r
}

fn fill_saxl(r: &mut Report, s: &SaxlGraph, e: &Evaluated, a: &Analyses) {
    r.val = Slot::Value(s.valency());
    r.edges = Slot::Value(s.edge_count());
    let c = s.components();
    r.diameter = Slot::Value(match s.diameter() {
        Some(d) => Diameter::Finite(d),
        None => Diameter::Disconnected(c),
    });
    r.complete = Slot::Value(s.is_complete());
    r.cnc = Slot::Value(s.common_neighbour_check());
    r.arc_transitive = Slot::Value(s.is_arc_transitive());
    r.locally_faithful = Slot::from_result(s.is_locally_faithful());
    r.strong_conjecture = Slot::Value(s.strong_conjecture_check());
    r.almost_regular_suborbits = Slot::Value(s.almost_regular_suborbits(s.orbitals.reps[0]).len());
    r.dirac = Slot::Value(s.dirac_condition());
    if a.experimental_n2 {
        r.n_squared_is_t = match &e.structure {
            Structure::Diagonal { t, k: 2, .. } => Slot::from_result(n_squared_is_t(t, s)),
            _ => Slot::skipped("needs a diagonal recipe with k=2"),
        };
    } else {
        r.n_squared_is_t = not_requested();
    }
}

/// With k = 2 the point D(1,t) is numbered by the index of t, so N is the
/// neighbourhood of point 0.
fn n_squared_is_t(name: &str, s: &SaxlGraph) -> Result<bool> {
    let t = SmallGroup::bundled(name)?;
    let nb = s.neighbours(0);
    let mut hit = vec![false; t.order()];
    for &x in &nb {
        for &y in &nb {
            hit[t.mul(x, y)] = true;
        }
    }
    Ok(hit.into_iter().all(|h| h))
}

fn prob_block(g: &crate::group::PermGroup, k: usize, b: Option<usize>, sigma: Option<&SaxlGraph>, opts: &RunOptions) -> ProbBlock {
    let q_exact = prob::q_exact(g, k);
    let q_mc = match &q_exact {
        Ok(_) => Slot::skipped("exact value available"),
        Err(_) => Slot::from_result(prob::q_mc(g, k, opts.mc_samples, opts.seed)),
    };
    let qhat = if g.order() <= BigUint::from(opts.cap_group_order) {
        prob::qhat(g, k)
    } else {
        Err(Error::cap("group order", g.order(), opts.cap_group_order))
    };
    let q_exact_le_qhat = match (&q_exact, &qhat) {
        (Ok(q), Ok(h)) => Slot::Value(q <= h),
        _ => Slot::skipped("needs both Q and Q-hat"),
    };
    // thresholds from the exact value, else from the upper bound
    let q_for_t = q_exact.as_ref().ok().or(qhat.as_ref().ok()).cloned();
    let thresholds = match &q_for_t {
        Some(q) if *q < num_rational::BigRational::one() => Some(prob::lemma24_thresholds(k, q)),
        Some(_) => Some(Err(Error::invalid("Q = 1: no base of this size"))),
        None => None,
    };
    let (t, rr) = match &thresholds {
        Some(Ok(th)) => (Slot::Value(th.t), Slot::Value(th.r)),
        Some(Err(e)) => (Slot::skipped(skip_reason(e)), Slot::skipped(skip_reason(e))),
        None => (Slot::skipped("no value of Q"), Slot::skipped("no value of Q")),
    };
    let n = g.degree();
    let valency_bound = match (&q_exact, b, sigma) {
        (Ok(q), Some(bb), Some(s)) if bb == k && s.orbitals.transitive() => Slot::Value(prob::valency_bound_holds(q, s.valency(), n, bb)),
        (_, _, None) => Slot::skipped("no Saxl graph"),
        _ => Slot::skipped("needs exact Q at k = b on a transitive group"),
    };
    let (predictions_hold, clique) = match (&thresholds, sigma) {
        (Some(Ok(th)), Some(s)) if s.orbitals.transitive() && th.r.is_none_or(|r| r >= 2) => {
            let diam_ok = matches!(s.diameter(), Some(d) if d <= 2);
            let val_ok = th.r.is_none_or(|r| prob::valency_prediction_holds(s.valency(), n, r));
            let clique = match th.r {
                Some(r) if (r as usize) < n => match s.greedy_clique(r as usize + 1) {
                    Some(_) => Slot::Value("found".to_string()),
                    None => Slot::Value("inconclusive".to_string()),
                },
                _ => Slot::skipped("r too large"),
            };
            (Slot::Value(diam_ok && val_ok), clique)
        }
        (Some(Ok(_)), Some(_)) => (Slot::skipped("r < 2 or intransitive"), Slot::skipped("r < 2 or intransitive")),
        _ => (Slot::skipped("needs thresholds and a Saxl graph"), Slot::skipped("needs thresholds and a Saxl graph")),
    };
    ProbBlock {
        k,
        q_exact: q_exact.as_ref().map(prob::rational_string).map(Slot::Value).unwrap_or_else(|e| Slot::skipped(skip_reason(e))),
        q_mc,
        qhat: qhat.as_ref().map(prob::rational_string).map(Slot::Value).unwrap_or_else(|e| Slot::skipped(skip_reason(e))),
        q_exact_le_qhat,
        t,
        r: rr,
        valency_bound,
        predictions_hold,
        clique_r_plus_1: clique,
    }
}

fn wreath_block(l: &crate::group::PermGroup, p: &crate::group::PermGroup, b: Option<usize>, cap: usize) -> Result<WreathBlock> {
    let pred = wreath::wreath_base_size_via_213(l, p)?;
    let b_matches = match b {
        Some(bb) => Slot::Value(bb == pred.m),
        None => Slot::skipped("base size not computed"),
    };
    let reg_one_agrees = Slot::from_result(wreath::reg_one_check(l, p, cap).map(|c| c.agree()));
    Ok(WreathBlock { distinguishing_number: pred.distinguishing_number, predicted_b: pred.m, hypotheses_hold: pred.hypotheses_hold, b_matches, reg_one_agrees })
}
