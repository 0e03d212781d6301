//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::Brute;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use saxl_core::diag::{self, PairChecker};
use saxl_core::recipe::{evaluate, EvalOptions, Evaluated};
use saxl_core::saxl::{saxl_graph_with_b, SaxlGraph};
use saxl_core::simple::SmallGroup;
use saxl_core::{actions, bases, prob, saxl, wreath, PermGroup};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn eval(recipe: &str) -> Result<Evaluated, String> {
    evaluate(recipe, &EvalOptions::default()).map_err(|e| format!("{recipe}: {e}"))
}

fn group(recipe: &str) -> Result<PermGroup, String> {
    Ok(eval(recipe)?.group)
}

/// Recipes for the base size, Saxl structure, L3(4) and diagonal suites.
fn suite_recipes() -> Vec<String> {
    let mut v: Vec<String> = (3..=8).map(|n| format!("sym:{n}")).collect();
    v.extend((2..=4).map(|n| format!("gl:{n}:2")));
    for r in [
        "coset(psl2:5; fixture:a4-in-psl2-5)",
        "coset(psl2:7; fixture:s4-in-psl2-7)",
        "coset(psl2:11; fixture:a5-in-psl2-11)",
        "coset(pgl2:5; fixture:s4-in-pgl2-5)",
        "coset(psl2:9; fixture:a5-in-psl2-9)",
        "coset(psigmal2:9; fixture:s5-in-psigmal2-9)",
        "fixture:psigmal2-9-subfield",
        "fixture:psigmal2-16-subfield",
        "fixture:psigmal2-25-subfield",
        "fixture:pgl2-7-on-14",
        "wr(fixture:pgl2-7-on-14; triv:2)",
        "fixture:l34-hyperovals",
        "diag:T=A5:k=2",
        "diag:T=A5:k=2:top=sym:2:outer=1",
        "diag:T=A5:k=3:top=sym:3:outer=1",
    ] {
        v.push(r.to_string());
    }
    v
}

struct Case {
    recipe: String,
    g: PermGroup,
    b: usize,
    primitive: bool,
    sigma: Option<SaxlGraph>,
}

fn corpus() -> Result<Vec<Case>, String> {
    suite_recipes()
        .into_iter()
        .map(|recipe| {
            let g = group(&recipe)?;
            let b = bases::base_size(&g).b;
            let primitive = g.is_transitive() && g.is_primitive().map_err(|e| e.to_string())?;
            let sigma = if b >= 2 { Some(saxl_graph_with_b(&g, b).map_err(|e| format!("{recipe}: {e}"))?) } else { None };
            Ok(Case { recipe, g, b, primitive, sigma })
        })
        .collect()
}

fn c1_engine() -> Outcome {
    let ambient = common::ambient_groups();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    for i in 0..200 {
        let g = common::random_small_transitive(&ambient, &mut rng);
        let o = Brute::of(&g, 50_000);
        ensure!(g.order() == BigUint::from(o.order()), "sample {i}: order {} vs {}", g.order(), o.order());
        let orbits: Vec<BTreeSet<usize>> = g.orbits().into_iter().map(|v| v.into_iter().collect()).collect();
        ensure!(orbits == o.orbits(), "sample {i}: orbits differ");
        for x in 0..g.degree() {
            let s = g.point_stabilizer(x).map_err(|e| e.to_string())?;
            ensure!(s.order() == BigUint::from(o.pointwise_stabilizer_order(&[x])), "sample {i}: stabilizer of {x}");
        }
        let y = rng.gen_range(0..g.degree());
        let s2 = g.pointwise_stabilizer(&[0, y]).map_err(|e| e.to_string())?;
        ensure!(s2.order() == BigUint::from(o.pointwise_stabilizer_order(&[0, y])), "sample {i}: stabilizer of (0,{y})");
        ensure!(g.is_primitive().map_err(|e| e.to_string())? == o.is_primitive(), "sample {i}: primitivity");
    }
    Ok("200 random transitive groups of degree <= 8".into())
}

fn c2_bases() -> Outcome {
    let mut rows = Vec::new();
    for n in 2..=8 {
        rows.push((format!("sym:{n}"), n - 1));
    }
    for n in 2..=4 {
        rows.push((format!("gl:{n}:2"), n));
    }
    for (r, b) in [
        ("coset(psl2:5; fixture:a4-in-psl2-5)", 3),
        ("coset(psl2:7; fixture:s4-in-psl2-7)", 3),
        ("coset(psl2:11; fixture:a5-in-psl2-11)", 3),
        ("coset(pgl2:5; fixture:s4-in-pgl2-5)", 4),
        ("coset(psl2:9; fixture:a5-in-psl2-9)", 4),
        ("coset(psigmal2:9; fixture:s5-in-psigmal2-9)", 5),
        ("fixture:psigmal2-9-subfield", 4),
        ("fixture:psigmal2-16-subfield", 3),
        ("fixture:psigmal2-25-subfield", 3),
    ] {
        rows.push((r.to_string(), b));
    }
    for (r, want) in &rows {
        let got = bases::base_size(&group(r)?).b;
        ensure!(got == *want, "{r}: b = {got}, expected {want}");
    }
    Ok(format!("{} base sizes", rows.len()))
}

fn c3_components() -> Outcome {
    let g = group("fixture:pgl2-7-on-14")?;
    ensure!(g.degree() == 14 && g.order() == BigUint::from(336u32), "fixture is not PGL2(7) on 14 points");
    let b = bases::base_size(&g).b;
    ensure!(b == 3, "b = {b}");
    let s = saxl_graph_with_b(&g, b).map_err(|e| e.to_string())?;
    ensure!(s.components() == 2, "{} components", s.components());
    let sq = group("wr(fixture:pgl2-7-on-14; triv:2)")?;
    let b2 = bases::base_size(&sq).b;
    ensure!(b2 == 3, "square: b = {b2}");
    let s2 = saxl_graph_with_b(&sq, b2).map_err(|e| e.to_string())?;
    ensure!(s2.components() == 4, "square: {} components", s2.components());
    Ok("2 and 4 components".into())
}

fn c4_l34() -> Outcome {
    let g = group("fixture:l34-hyperovals")?;
    ensure!(g.degree() == 56, "degree {}", g.degree());
    let b = bases::base_size(&g).b;
    ensure!(b == 3, "b = {b}");
    let s = saxl_graph_with_b(&g, b).map_err(|e| e.to_string())?;
    ensure!(s.is_arc_transitive(), "not arc-transitive");
    let r = bases::reg_with_b(&g, b).reg;
    ensure!(r == BigUint::from(4u32), "reg = {r}");
    Ok("b=3, arc-transitive, reg=4".into())
}

fn c5_diagonal() -> Outcome {
    let g = group("diag:T=A5:k=2")?;
    let b = bases::base_size(&g).b;
    ensure!(b == 3, "P=1: b = {b}");
    ensure!(saxl_graph_with_b(&g, b).map_err(|e| e.to_string())?.is_complete(), "P=1: not semi-Frobenius");

    let g = group("diag:T=A5:k=2:top=sym:2:outer=1")?;
    let b = bases::base_size(&g).b;
    ensure!(b == 4, "full W, k=2: b = {b}");
    ensure!(!saxl_graph_with_b(&g, b).map_err(|e| e.to_string())?.is_arc_transitive(), "full W, k=2: arc-transitive");

    let g = group("diag:T=A5:k=3:top=sym:3:outer=1")?;
    ensure!(g.degree() == 3600, "k=3 degree {}", g.degree());
    let b = bases::base_size(&g).b;
    ensure!(b == 2, "k=3: b = {b}");
    ensure!(saxl_graph_with_b(&g, b).map_err(|e| e.to_string())?.is_arc_transitive(), "k=3: not arc-transitive");
    let r = bases::reg_with_b(&g, b).reg;
    ensure!(r.is_one(), "k=3: reg = {r}");
    Ok("k=2 P=1, k=2 full, k=3 full".into())
}

fn c6_sporadic() -> Outcome {
    let g = group("coset(fixture:m12; fixture:l211-in-m12)")?;
    ensure!(g.degree() == 144, "M12 degree {}", g.degree());
    let b = bases::base_size(&g).b;
    ensure!(b == 3, "M12: b = {b}");
    ensure!(!saxl_graph_with_b(&g, b).map_err(|e| e.to_string())?.is_complete(), "M12: semi-Frobenius");

    let g = group("coset(fixture:m11; fixture:m11-3set-stabilizer)")?;
    ensure!(g.degree() == 165 && g.is_primitive().map_err(|e| e.to_string())?, "M11 action is not primitive of degree 165");
    let b = bases::base_size(&g).b;
    ensure!(b == 2, "M11: b = {b}");
    ensure!(saxl_graph_with_b(&g, b).map_err(|e| e.to_string())?.common_neighbour_check(), "M11: common neighbour check fails");
    Ok("M12 on 144, M11 on 165".into())
}

fn c7_probability(corpus: &[Case]) -> Outcome {
    let mut checked = 0;
    for c in corpus {
        let n = c.g.degree();
        let Some(s) = &c.sigma else { continue };
        if (n as f64).powi(c.b as i32) > 1e6 || !c.g.is_transitive() {
            continue;
        }
        let q = prob::q_exact(&c.g, c.b).map_err(|e| e.to_string())?;
        let qh = prob::qhat(&c.g, c.b).map_err(|e| e.to_string())?;
        ensure!(q <= qh, "{}: Q = {} > Q-hat = {}", c.recipe, q, qh);
        ensure!(prob::valency_bound_holds(&q, s.valency(), n, c.b), "{}: valency bound fails", c.recipe);
        if q < BigRational::one() {
            let th = prob::lemma24_thresholds(c.b, &q).map_err(|e| e.to_string())?;
            if th.r.is_none_or(|r| r >= 2) {
                ensure!(matches!(s.diameter(), Some(d) if d <= 2), "{}: r >= 2 but diameter {:?}", c.recipe, s.diameter());
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} groups"))
}

fn c8_wreath() -> Outcome {
    for (l, p) in [("sym:3", "sym:2"), ("alt:5", "cyc:2"), ("sym:3", "cyc:3")] {
        let lg = group(l)?;
        let pg = group(p)?;
        let pred = wreath::wreath_base_size_via_213(&lg, &pg).map_err(|e| e.to_string())?;
        let w = actions::wreath_product_action(&lg, &pg, 10_000).map_err(|e| e.to_string())?;
        let b = bases::base_size(&w).b;
        ensure!(b == pred.m, "{l} wr {p}: b = {b}, predicted {}", pred.m);
    }
    for (r, d) in [("psl2:5:pl", 3), ("fixture:pgammal2-8", 3), ("fixture:agl3-2", 4)] {
        let p = group(r)?;
        let got = wreath::distinguishing_number(&p).0;
        ensure!(got == d, "D({r}) = {got}, expected {d}");
        ensure!(wreath::unique_regular_partition_orbit(&p, d).map_err(|e| e.to_string())?, "{r}: regular partition orbit not unique");
    }
    Ok("3 wreath products, 3 distinguishing numbers".into())
}

fn c9_diag_pairs() -> Outcome {
    let a5 = SmallGroup::bundled("A5").map_err(|e| e.to_string())?;
    let g = diag::pair_group(&a5, true).map_err(|e| e.to_string())?;
    let pc = PairChecker::new(&a5, true);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let x = rng.gen_range(0..a5.order());
        let y = rng.gen_range(0..a5.order());
        let fast = pc.pair_base_check(x, y).map_err(|e| e.to_string())?;
        ensure!(fast == diag::generic_pair_base_test(&g, x, y), "A5 pair ({x},{y}) disagrees");
    }
    let a7 = SmallGroup::bundled("A7").map_err(|e| e.to_string())?;
    let pc7 = PairChecker::new(&a7, true);
    for (x, o) in diag::prime_order_class_reps(&a7) {
        ensure!(pc7.star_condition(x).map_err(|e| e.to_string())?.is_some(), "A7: star fails at an element of order {o}");
    }
    let l211 = SmallGroup::bundled("L2_11").map_err(|e| e.to_string())?;
    let pc11 = PairChecker::new(&l211, true);
    let sixes = diag::aut_class_reps_of_order(&l211, 6);
    ensure!(!sixes.is_empty(), "L2(11) has no element of order 6");
    for x in sixes {
        ensure!(pc11.star_condition(x).map_err(|e| e.to_string())?.is_none(), "L2(11): star holds at order 6");
    }
    Ok("500 A5 pairs, A7 star true, L2(11) order-6 star false".into())
}

fn c10_irredundant(corpus: &[Case]) -> Outcome {
    let mut interval_checked = 0;
    for c in corpus {
        if c.primitive {
            let ig = saxl::isigma(&c.g).map_err(|e| e.to_string())?;
            ensure!(ig.is_complete(), "{}: irredundant base graph not complete", c.recipe);
        }
        if let Some(s) = &c.sigma {
            if c.g.degree() <= 20 {
                let ik = saxl::isigma_k(&c.g, c.b, bases::IRREDUNDANT_NODE_CAP).map_err(|e| e.to_string())?;
                let mut edges: Vec<(usize, usize)> = s.edges().into_iter().map(|(u, v, _)| (u.min(v), u.max(v))).collect();
                edges.sort_unstable();
                ensure!(ik == edges, "{}: IΣ_b differs from Σ", c.recipe);
            }
        }
        if c.g.degree() <= 10 {
            let sizes = bases::irredundant_sizes(&c.g).map_err(|e| e.to_string())?;
            let top = *sizes.iter().max().unwrap();
            let want: BTreeSet<usize> = (c.b..=top).collect();
            ensure!(sizes == want, "{}: sizes {:?} are not [b, I]", c.recipe, sizes);
            let oracle = Brute::of(&c.g, 50_000).irredundant_sizes();
            ensure!(sizes == oracle, "{}: sizes {:?}, enumeration gives {:?}", c.recipe, sizes, oracle);
            interval_checked += 1;
        }
    }
    Ok(format!("{} groups, {interval_checked} interval checks", corpus.len()))
}

fn two_transitive(g: &PermGroup) -> Result<bool, String> {
    if !g.is_transitive() || g.degree() < 2 {
        return Ok(false);
    }
    Ok(g.point_stabilizer(0).map_err(|e| e.to_string())?.orbits().len() == 2)
}

fn c11_properties(corpus: &[Case]) -> Outcome {
    let mut n_graphs = 0;
    for c in corpus {
        let Some(s) = &c.sigma else { continue };
        n_graphs += 1;
        let name = &c.recipe;
        for (u, v, _) in s.edges() {
            for g in c.g.generators() {
                ensure!(s.is_adjacent(g.image(u), g.image(v)), "{name}: edge ({u},{v}) not invariant");
            }
        }
        let transitive = c.g.is_transitive();
        if transitive {
            let vals = s.valencies();
            ensure!(vals.iter().all(|&v| v == vals[0]), "{name}: valency not constant");
            ensure!(s.is_locally_faithful().map_err(|e| e.to_string())?, "{name}: not locally faithful");
        }
        if c.b >= 3 {
            for (i, &r) in s.orbitals.reps.iter().enumerate() {
                let nr: BTreeSet<usize> = s.neighbours(r).into_iter().collect();
                for (j, &y) in s.orbitals.suborbit_reps[i].iter().enumerate() {
                    if s.selected[i][j] {
                        ensure!(s.neighbours(y).iter().any(|z| nr.contains(z)), "{name}: edge ({r},{y}) without common neighbour");
                    }
                }
            }
        }
        let lhs = s.is_complete() && s.is_arc_transitive();
        ensure!(lhs == two_transitive(&c.g)?, "{name}: complete and arc-transitive = {lhs} disagrees with 2-transitivity");
        if c.primitive {
            ensure!(s.strong_conjecture_check() == s.common_neighbour_check(), "{name}: strong and common neighbour checks disagree");
        }
    }
    Ok(format!("{n_graphs} Saxl graphs"))
}

fn main() {
    let mut failures = 0;
    let mut report = |id: usize, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failures += 1;
                println!("FAIL {id:>2} {name}: {why} ({secs:.1}s)");
            }
        }
    };
    report(1, "engine soundness", &mut c1_engine);
    report(2, "base size regressions", &mut c2_bases);
    report(3, "Saxl graph components", &mut c3_components);
    report(4, "L3(4) on 56 hyperovals", &mut c4_l34);
    report(5, "diagonal groups over A5", &mut c5_diagonal);
    report(6, "sporadic cases", &mut c6_sporadic);
    let corpus = corpus();
    let with_corpus = |f: fn(&[Case]) -> Outcome| match &corpus {
        Ok(c) => f(c),
        Err(e) => Err(format!("corpus: {e}")),
    };
    report(7, "probabilistic consistency", &mut || with_corpus(c7_probability));
    report(8, "wreath products", &mut c8_wreath);
    report(9, "diagonal pair criterion", &mut c9_diag_pairs);
    report(10, "irredundant bases", &mut || with_corpus(c10_irredundant));
    report(11, "Saxl graph invariants", &mut || with_corpus(c11_properties));
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
