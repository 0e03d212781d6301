mod common;

use std::sync::OnceLock;

use common::{random_small_transitive, Brute};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use saxl_core::actions::{self, Psl2Variant};
use saxl_core::diag::{self, PairChecker};
use saxl_core::field::Field;
use saxl_core::recipe::{evaluate, EvalOptions};
use saxl_core::simple::SmallGroup;
use saxl_core::wreath::{self, Partition};
use saxl_core::{bases, diagonal, linear, prob, saxl, Perm, PermGroup};

fn ambient() -> &'static [PermGroup] {
    static A: OnceLock<Vec<PermGroup>> = OnceLock::new();
    A.get_or_init(common::ambient_groups)
}

fn group(recipe: &str) -> PermGroup {
    evaluate(recipe, &EvalOptions::default()).unwrap().group
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn orbit_stabilizer_and_membership(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_small_transitive(ambient(), &mut rng);
        for a in 0..g.degree() {
            let orbit = g.orbit(a).unwrap().len();
            let stab = g.point_stabilizer(a).unwrap().order();
            prop_assert_eq!(BigUint::from(orbit) * stab, g.order());
        }
        prop_assert!(g.pointwise_stabilizer(&g.base()).unwrap().order().is_one());
        let gens = g.generators();
        let len = rng.gen_range(1..=3);
        let mut p = Perm::identity(g.degree());
        for _ in 0..len {
            p = p.mul(&gens[rng.gen_range(0..gens.len())]);
        }
        prop_assert!(g.contains(&p).unwrap());
        prop_assert!(g.contains(&g.random_element(&mut rng)).unwrap());
    }

    #[test]
    fn base_witness_and_counts(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_small_transitive(ambient(), &mut rng);
        let r = bases::base_size(&g);
        prop_assert!(g.is_base(&r.witness));
        prop_assert_eq!(r.witness.len(), r.b);
        if r.b > 0 {
            prop_assert!(!bases::has_base_of_size(&g, r.b - 1));
            prop_assert!(prob::q_exact(&g, r.b - 1).unwrap().is_one());
        }
        prop_assert!(prob::q_exact(&g, r.b).unwrap() < num_rational::BigRational::one());
        let n = BigUint::from(g.degree());
        for k in 1..=r.b + 1 {
            prop_assert!((bases::count_ordered_bases(&g, k) % &n).is_zero());
        }
        prop_assert!(bases::reg(&g).reg >= BigUint::one());
        let sizes = bases::irredundant_sizes(&g).unwrap();
        let top = *sizes.iter().max().unwrap();
        prop_assert_eq!(sizes, (r.b..=top).collect());
    }

    #[test]
    fn saxl_structure(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_small_transitive(ambient(), &mut rng);
        let b = bases::base_size(&g).b;
        prop_assume!(b >= 2);
        let s = saxl::saxl_graph(&g).unwrap();
        let edges = s.edges();
        for _ in 0..100 {
            let h = g.random_element(&mut rng);
            let (u, v, _) = edges[rng.gen_range(0..edges.len())];
            prop_assert!(s.is_adjacent(h.image(u), h.image(v)));
        }
        let vals = s.valencies();
        prop_assert!(vals.iter().all(|&v| v == vals[0]));
        if g.is_primitive().unwrap() {
            prop_assert_eq!(s.components(), 1);
            prop_assert_eq!(s.strong_conjecture_check(), s.common_neighbour_check());
        }
        if bases::reg_with_b(&g, b).reg.is_one() {
            prop_assert!(s.is_arc_transitive());
        }
        let q = prob::q_exact(&g, b).unwrap();
        prop_assert!(prob::valency_bound_holds(&q, s.valency(), g.degree(), b));
        prop_assert!(q <= prob::qhat(&g, b).unwrap());
    }

    #[test]
    fn isigma_parts_are_blocks(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_small_transitive(ambient(), &mut rng);
        let ig = saxl::isigma(&g).unwrap();
        let parts = ig.parts();
        for part in &parts {
            for x in part {
                for y in part {
                    prop_assert!(x == y || !ig.is_adjacent(*x, *y));
                }
            }
            for h in g.generators() {
                let img: Vec<usize> = part.iter().map(|&x| h.image(x)).collect();
                let c = ig.class_of[img[0]];
                prop_assert!(img.iter().all(|&y| ig.class_of[y] == c));
            }
        }
        let n = g.degree();
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    prop_assert_eq!(ig.is_adjacent(x, y), ig.class_of[x] != ig.class_of[y]);
                }
            }
        }
    }

    #[test]
    fn refining_keeps_distinguishing(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_small_transitive(ambient(), &mut rng);
        let k = p.degree();
        let m = rng.gen_range(1..=k);
        let colours: Vec<usize> = (0..k).map(|_| rng.gen_range(0..m)).collect();
        let part = Partition::from_colours(&colours, m);
        if wreath::is_distinguishing(&p, &part).unwrap() {
            // split one part by giving a single point a fresh colour
            let mut finer = colours.clone();
            finer[rng.gen_range(0..k)] = m;
            prop_assert!(wreath::is_distinguishing(&p, &Partition::from_colours(&finer, m + 1)).unwrap());
        }
        prop_assert!(wreath::distinguishing_number(&p).0 <= k);
    }
}

#[test]
fn primitivity_up_to_degree_ten() {
    for r in [
        "pairs(sym:5)",
        "pairs(alt:5)",
        "psl2:9:pl",
        "pgammal2:8",
        "wr(sym:3; sym:2)",
        "affine:3:2:gl",
        "dih:9",
        "dih:10",
        "cyc:10",
        "alt:10",
        "coset(psl2:5; fixture:a4-in-psl2-5)",
    ] {
        let g = group(r);
        assert_eq!(g.is_primitive().unwrap(), Brute::of(&g, 4_000_000).is_primitive(), "{r}");
    }
}

#[test]
fn alternating_excludes_transpositions() {
    for n in 3..=9 {
        let t = Perm::parse_cycles(n, "(0 1)").unwrap();
        assert!(!actions::alternating(n).contains(&t).unwrap());
        assert!(actions::symmetric(n).contains(&t).unwrap());
    }
}

#[test]
fn projective_lines_are_two_transitive() {
    for q in [5, 7, 8, 9, 11, 13, 16, 25] {
        for v in [Psl2Variant::Psl, Psl2Variant::Pgl] {
            let g = actions::psl2_projective(q, v).unwrap();
            assert!(g.is_transitive());
            assert_eq!(g.point_stabilizer(0).unwrap().orbits().len(), 2, "q={q} {v:?}");
        }
    }
}

#[test]
fn coset_degree_times_subgroup_order() {
    for (g, h) in [("psl2:7", "s4-in-psl2-7"), ("psl2:11", "a5-in-psl2-11"), ("psl2:13", "a4-in-psl2-13"), ("fixture:m12", "l211-in-m12")] {
        let gg = group(g);
        let hh = group(&format!("fixture:{h}@intransitive-ok"));
        let ca = actions::coset_action(&gg, &hh.nontrivial_generators(), 20_000).unwrap();
        assert!(ca.action.faithful());
        assert_eq!(BigUint::from(ca.action.group.degree()) * hh.order(), gg.order());
    }
}

#[test]
fn diagonal_point_stabilizer_is_the_diagonal() {
    let a5 = SmallGroup::bundled("A5").unwrap();
    let d = diagonal::diagonal_group(&a5, 2, &PermGroup::trivial(2), false, 1000).unwrap();
    assert_eq!(d.group.point_stabilizer(0).unwrap().order(), BigUint::from(60u32));
}

#[test]
fn affine_translations_and_zero_stabilizer() {
    let k = Field::of_order(4).unwrap();
    let mats = linear::sl_generators(2, &k);
    let g = actions::affine_group_over(&k, 2, &mats).unwrap();
    let translations = PermGroup::new(g.generators()[..4].to_vec()).unwrap();
    assert!(translations.is_transitive());
    assert_eq!(translations.order(), BigUint::from(16u32));
    let h = PermGroup::new(mats.iter().map(|m| linear::vector_perm(m, &k)).collect()).unwrap();
    let stab = g.point_stabilizer(0).unwrap();
    assert!(stab.same_group(&h));
}

#[test]
fn wreath_orders() {
    for (l, p, k) in [("sym:3", "sym:2", 2u32), ("alt:5", "cyc:2", 2), ("sym:3", "cyc:3", 3), ("dih:4", "sym:3", 3)] {
        let (lg, pg) = (group(l), group(p));
        let w = actions::wreath_product_action(&lg, &pg, 10_000).unwrap();
        assert_eq!(w.order(), lg.order().pow(k) * pg.order());
    }
}

#[test]
fn distinguishing_numbers_of_symmetric_groups() {
    for k in 1..=6 {
        assert_eq!(wreath::distinguishing_number(&actions::symmetric(k)).0, k);
    }
}

#[test]
fn reg_one_characterisation() {
    for (l, p) in [("sym:3", "sym:2"), ("alt:5", "cyc:2"), ("sym:3", "sym:3")] {
        let c = wreath::reg_one_check(&group(l), &group(p), 10_000).unwrap();
        assert!(c.agree(), "{l} wr {p}: {c:?}");
    }
}

#[test]
fn hyperoval_action_is_arc_transitive_with_reg_four() {
    // arc-transitive does not force reg = 1
    let g = group("fixture:l34-hyperovals");
    let s = saxl::saxl_graph(&g).unwrap();
    assert!(s.is_arc_transitive());
    assert_eq!(bases::reg_with_b(&g, s.b).reg, BigUint::from(4u32));
}

#[test]
fn signature_constant_on_stabilizer_orbits() {
    let a5 = SmallGroup::bundled("A5").unwrap();
    let d = diagonal::diagonal_group(&a5, 3, &actions::symmetric(3), true, 10_000).unwrap();
    let stab = d.group.point_stabilizer(0).unwrap();
    for orbit in stab.orbits() {
        let sig = |x: usize| {
            let mut full = vec![0];
            full.extend(diagonal::point_tuple(&a5, x, 2));
            diag::partition_signature(&full)
        };
        let s0 = sig(orbit[0]);
        assert!(orbit.iter().all(|&x| sig(x) == s0));
    }
}

#[test]
fn a7_star_matches_semi_frobenius() {
    let a7 = SmallGroup::bundled("A7").unwrap();
    let pc = PairChecker::new(&a7, true);
    let star = diag::prime_order_class_reps(&a7).into_iter().all(|(x, _)| pc.star_condition(x).unwrap().is_some());
    let g = diag::pair_group(&a7, true).unwrap();
    let s = saxl::saxl_graph_with_b(&g.group, 3).unwrap();
    assert!(!bases::has_base_of_size(&g.group, 2));
    assert_eq!(s.is_complete(), star);
    assert!(star);
}
