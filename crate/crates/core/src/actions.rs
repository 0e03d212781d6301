//! Standard permutation actions: named families, projective lines, coset
//! actions, induced actions on pairs and sets, affine groups and wreath
//! products in product action.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::PermGroup;
use crate::linear::{self, Mat};
use crate::perm::Perm;

pub const DEFAULT_DEGREE_CAP: usize = 20_000;

/// A constructed action together with the size of its kernel.
#[derive(Clone, Debug)]
pub struct Action {
    pub group: PermGroup,
    pub kernel_order: BigUint,
}

impl Action {
    pub fn faithful(&self) -> bool {
        self.kernel_order.is_one()
    }
}

pub fn trivial(n: usize) -> PermGroup {
    PermGroup::trivial(n)
}

pub fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n.max(1));
    }
    let t = Perm::from_cycles(n, &[vec![0, 1]]).unwrap();
    let c = Perm::from_cycles(n, &[(0..n).collect()]).unwrap();
    PermGroup::from_parts(n, vec![t, c])
}

pub fn alternating(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::trivial(n.max(1));
    }
    let gens = (0..n - 2).map(|i| Perm::from_cycles(n, &[vec![i, i + 1, i + 2]]).unwrap()).collect();
    PermGroup::from_parts(n, gens)
}

pub fn cyclic(n: usize) -> PermGroup {
    PermGroup::from_parts(n.max(1), vec![Perm::from_cycles(n.max(1), &[(0..n).collect()]).unwrap()])
}

/// Dihedral group of order 2n on the n vertices of a polygon.
pub fn dihedral(n: usize) -> PermGroup {
    if n < 3 {
        return symmetric(n);
    }
    let r = Perm::from_cycles(n, &[(0..n).collect()]).unwrap();
    let s = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
    PermGroup::from_parts(n, vec![r, s])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Psl2Variant {
    Psl,
    Pgl,
    Psigmal,
    Pgammal,
    /// PSL_2(q) extended by the product of a diagonal and a field
    /// automorphism of order 2 (M_10 for q = 9).
    M10,
}

impl Psl2Variant {
    pub fn expected_order(self, q: usize, f: usize) -> u64 {
        let q64 = q as u64;
        let pgl = q64 * (q64 * q64 - 1);
        let psl = if q % 2 == 0 { pgl } else { pgl / 2 };
        match self {
            Psl2Variant::Psl => psl,
            Psl2Variant::Pgl => pgl,
            Psl2Variant::Psigmal => psl * f as u64,
            Psl2Variant::Pgammal => pgl * f as u64,
            Psl2Variant::M10 => psl * 2,
        }
    }
}

/// Point index on the projective line: [1:0] is 0 and [x:1] is 1 + x.
fn line_point(a: usize, b: usize, k: &Field) -> usize {
    if b == 0 {
        0
    } else {
        1 + k.div(a, b).unwrap()
    }
}

fn line_vector(i: usize) -> (usize, usize) {
    if i == 0 {
        (1, 0)
    } else {
        (i - 1, 1)
    }
}

/// Permutation of PG(1,q) from v -> (v^sigma) M with M = [[a,b],[c,d]].
pub fn line_perm(k: &Field, m: [usize; 4], frob: usize) -> Perm {
    let q = k.order();
    let img = (0..=q)
        .map(|i| {
            let (mut x, mut y) = line_vector(i);
            for _ in 0..frob {
                x = k.frobenius(x);
                y = k.frobenius(y);
            }
            let nx = k.add(k.mul(x, m[0]), k.mul(y, m[2]));
            let ny = k.add(k.mul(x, m[1]), k.mul(y, m[3]));
            line_point(nx, ny, k)
        })
        .collect();
    Perm::from_images(img).expect("invertible matrix")
}

/// Groups with socle L_2(q) on the q + 1 points of the projective line.
pub fn psl2_projective(q: usize, variant: Psl2Variant) -> Result<PermGroup> {
    if q < 4 {
        return Err(Error::invalid(format!("projective line groups need q >= 4 (got {q})")));
    }
    let k = Field::of_order(q)?;
    let f = k.degree();
    match variant {
        Psl2Variant::Psigmal | Psl2Variant::Pgammal if f == 1 => {
            return Err(Error::invalid(format!("no field automorphisms for prime q = {q}")));
        }
        Psl2Variant::M10 if f % 2 == 1 || q % 2 == 0 => {
            return Err(Error::invalid(format!("M10-style extension needs q an even power of an odd prime (got {q})")));
        }
        _ => {}
    }
    let mu = k.primitive();
    let mut gens = Vec::new();
    for &c in &k.additive_basis() {
        gens.push(line_perm(&k, [1, 0, c, 1], 0));
    }
    gens.push(line_perm(&k, [mu, 0, 0, k.inv(mu).unwrap()], 0));
    gens.push(line_perm(&k, [0, 1, k.neg(1), 0], 0));
    match variant {
        Psl2Variant::Psl => {}
        Psl2Variant::Pgl => gens.push(line_perm(&k, [mu, 0, 0, 1], 0)),
        Psl2Variant::Psigmal => gens.push(line_perm(&k, [1, 0, 0, 1], 1)),
        Psl2Variant::Pgammal => {
            gens.push(line_perm(&k, [mu, 0, 0, 1], 0));
            gens.push(line_perm(&k, [1, 0, 0, 1], 1));
        }
        Psl2Variant::M10 => {
            // field automorphism of order 2 is x -> x^(p^(f/2))
            gens.push(line_perm(&k, [mu, 0, 0, 1], f / 2));
        }
    }
    Ok(PermGroup::from_parts(q + 1, gens))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearKind {
    Sl,
    Gl,
}

/// GL_n(q) or SL_n(q) on the nonzero vectors.
pub fn linear_on_nonzero(n: usize, q: usize, kind: LinearKind) -> Result<PermGroup> {
    let k = Field::of_order(q)?;
    let mats = match kind {
        LinearKind::Sl => linear::sl_generators(n, &k),
        LinearKind::Gl => linear::gl_generators(n, &k),
    };
    let gens = mats.iter().map(|m| linear::nonzero_vector_perm(m, &k)).collect();
    Ok(PermGroup::from_parts(q.pow(n as u32) - 1, gens))
}

/// PSL_n(q) or PGL_n(q), optionally with field automorphisms, on the
/// points of PG(n-1, q).
pub fn linear_projective(n: usize, q: usize, kind: LinearKind, semilinear: bool) -> Result<PermGroup> {
    let k = Field::of_order(q)?;
    let pts = linear::projective_points(n, &k);
    let mats = match kind {
        LinearKind::Sl => linear::sl_generators(n, &k),
        LinearKind::Gl => linear::gl_generators(n, &k),
    };
    let mut gens: Vec<Perm> = mats.iter().map(|m| linear::projective_perm(&pts, m, None, &k)).collect();
    if semilinear && k.degree() > 1 {
        let frob = |x: usize| k.frobenius(x);
        gens.push(linear::projective_perm(&pts, &Mat::identity(n), Some(&frob), &k));
    }
    Ok(PermGroup::from_parts(pts.len(), gens))
}

/// Result of a coset action: the image group, a coset representative per
/// point and the kernel size.
#[derive(Clone, Debug)]
pub struct CosetAction {
    pub action: Action,
    pub reps: Vec<Perm>,
}

/// Lexicographically least base image of the coset Hg, using a chain of H
/// whose base is a base of the overgroup.
fn coset_key(hchain: &Chain, g: &Perm) -> Vec<u32> {
    let mut s = g.clone();
    let mut key = Vec::with_capacity(hchain.levels().len());
    for l in hchain.levels() {
        let (mut best, mut best_pt) = (u32::MAX, l.base as usize);
        for &beta in l.orbit() {
            let y = s.image(beta as usize) as u32;
            if y < best {
                best = y;
                best_pt = beta as usize;
            }
        }
        key.push(best);
        if best_pt != l.base as usize {
            let u = l.rep_of(best_pt).unwrap();
            s = u.mul(&s);
        }
    }
    key
}

/// Action of G on the right cosets of H = <h_gens>.
pub fn coset_action(g: &PermGroup, h_gens: &[Perm], cap: usize) -> Result<CosetAction> {
    for h in h_gens {
        if !g.contains(h)? {
            return Err(Error::invalid("subgroup generator is not in the group"));
        }
    }
    let h = PermGroup::new(h_gens.to_vec())?;
    let index = g.order() / h.order();
    if index > BigUint::from(cap) {
        return Err(Error::cap("coset action index", index, cap));
    }
    let gbase = g.base();
    let hchain = h.chain_with_prefix(&gbase);
    let gens = g.nontrivial_generators();
    let n = g.degree();
    let mut reps = vec![Perm::identity(n)];
    let mut lookup: HashMap<Vec<u32>, usize> = HashMap::new();
    lookup.insert(coset_key(&hchain, &reps[0]), 0);
    let mut images: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    let mut i = 0;
    while i < reps.len() {
        for (gi, x) in gens.iter().enumerate() {
            let r = reps[i].mul(x);
            let key = coset_key(&hchain, &r);
            let j = match lookup.get(&key) {
                Some(&j) => j,
                None => {
                    let j = reps.len();
                    lookup.insert(key, j);
                    reps.push(r);
                    j
                }
            };
            images[gi].push(j);
        }
        i += 1;
    }
    let degree = reps.len();
    let perms: Result<Vec<Perm>> = images.into_iter().map(Perm::from_images).collect();
    let group = PermGroup::from_parts(degree, perms?);
    let kernel_order = g.order() / group.order();
    Ok(CosetAction { action: Action { group, kernel_order }, reps })
}

fn induced(g: &PermGroup, sets: &[Vec<usize>]) -> Result<Action> {
    let gens = g.action_on_sets(sets)?;
    let group = PermGroup::from_parts(sets.len().max(1), gens);
    let kernel_order = g.order() / group.order();
    Ok(Action { group, kernel_order })
}

/// All k-subsets of {0..n-1} in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Induced action on unordered pairs of distinct points.
pub fn pairs_action(g: &PermGroup) -> Result<Action> {
    if g.degree() < 2 {
        return Err(Error::invalid("pairs action needs degree at least 2"));
    }
    induced(g, &k_subsets(g.degree(), 2))
}

pub fn subsets_action(g: &PermGroup, k: usize, cap: usize) -> Result<Action> {
    let sets = k_subsets(g.degree(), k);
    if sets.len() > cap {
        return Err(Error::cap("subset action degree", sets.len(), cap));
    }
    induced(g, &sets)
}

/// Orbit of a point set under G, sorted lexicographically.
pub fn set_orbit(g: &PermGroup, set: &[usize], cap: usize) -> Result<Vec<Vec<usize>>> {
    let mut start = set.to_vec();
    start.sort_unstable();
    start.dedup();
    let gens = g.nontrivial_generators();
    let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
    let mut orbit = vec![start.clone()];
    seen.insert(start);
    let mut i = 0;
    while i < orbit.len() {
        for x in &gens {
            let t = x.image_set(&orbit[i]);
            if seen.insert(t.clone()) {
                orbit.push(t);
                if orbit.len() > cap {
                    return Err(Error::cap("set orbit length", orbit.len(), cap));
                }
            }
        }
        i += 1;
    }
    orbit.sort();
    Ok(orbit)
}

/// Action of G on the orbit of a point set.
pub fn set_orbit_action(g: &PermGroup, set: &[usize], cap: usize) -> Result<Action> {
    let orbit = set_orbit(g, set, cap)?;
    induced(g, &orbit)
}

/// V:H on the q^n vectors of V = GF(q)^n in lexicographic order.
pub fn affine_group(q: usize, n: usize, mats: &[Mat]) -> Result<PermGroup> {
    let k = Field::of_order(q)?;
    affine_group_over(&k, n, mats)
}

pub fn affine_group_over(k: &Field, n: usize, mats: &[Mat]) -> Result<PermGroup> {
    let q = k.order();
    let total = q.checked_pow(n as u32).ok_or_else(|| Error::cap("affine degree", "overflow", DEFAULT_DEGREE_CAP))?;
    if total > DEFAULT_DEGREE_CAP {
        return Err(Error::cap("affine degree", total, DEFAULT_DEGREE_CAP));
    }
    let mut gens = Vec::new();
    for i in 0..n {
        for &c in &k.additive_basis() {
            let img = (0..total)
                .map(|x| {
                    let mut v = linear::index_vector(x, n, q);
                    v[i] = k.add(v[i], c);
                    linear::vector_index(&v, q)
                })
                .collect();
            gens.push(Perm::from_images(img)?);
        }
    }
    for m in mats {
        if m.n != n {
            return Err(Error::invalid("matrix dimension mismatch"));
        }
        if !m.is_invertible(k) {
            return Err(Error::invalid("singular matrix"));
        }
        gens.push(linear::vector_perm(m, k));
    }
    Ok(PermGroup::from_parts(total, gens))
}

/// L wr P in product action on Gamma^k, tuples in lexicographic order.
/// Each generator of L is placed in every coordinate, so P need not be
/// transitive (P trivial gives the direct power L^k).
pub fn wreath_product_action(l: &PermGroup, p: &PermGroup, cap: usize) -> Result<PermGroup> {
    let m = l.degree();
    let k = p.degree();
    let total = (m as u128).checked_pow(k as u32).filter(|&t| t <= cap as u128).ok_or_else(|| Error::cap("product action degree", format!("{m}^{k}"), cap))? as usize;
    let decode = |mut x: usize| {
        let mut v = vec![0usize; k];
        for i in (0..k).rev() {
            v[i] = x % m;
            x /= m;
        }
        v
    };
    let encode = |v: &[usize]| v.iter().fold(0usize, |acc, &x| acc * m + x);
    let mut gens = Vec::new();
    for z in l.nontrivial_generators() {
        for j in 0..k {
            let img = (0..total)
                .map(|x| {
                    let mut v = decode(x);
                    v[j] = z.image(v[j]);
                    encode(&v)
                })
                .collect();
            gens.push(Perm::from_images(img)?);
        }
    }
    for s in p.nontrivial_generators() {
        let img = (0..total)
            .map(|x| {
                let v = decode(x);
                let mut w = vec![0usize; k];
                for j in 0..k {
                    w[s.image(j)] = v[j];
                }
                encode(&w)
            })
            .collect();
        gens.push(Perm::from_images(img)?);
    }
    Ok(PermGroup::from_parts(total, gens))
}

/// All elements of a small group (ordered by image vector).
pub fn elements(g: &PermGroup, cap: u64) -> Result<Vec<Perm>> {
    let o = g.order();
    if o > BigUint::from(cap) {
        return Err(Error::cap("group order for element listing", o, cap));
    }
    let mut v = Vec::new();
    g.for_each_element(|x| v.push(x.clone()));
    v.sort();
    Ok(v)
}

/// Subgroup of the elements satisfying `pred` (which must define a
/// subgroup), with a small generating set chosen greedily.
pub fn subgroup_by_filter<F: Fn(&Perm) -> bool>(g: &PermGroup, cap: u64, pred: F) -> Result<PermGroup> {
    let els = elements(g, cap)?;
    let members: Vec<Perm> = els.into_iter().filter(|x| pred(x)).collect();
    let target = BigUint::from(members.len());
    let mut gens: Vec<Perm> = Vec::new();
    let mut cur = PermGroup::trivial(g.degree());
    for x in members.iter().rev() {
        if cur.order() == target {
            break;
        }
        if !cur.contains(x)? {
            gens.push(x.clone());
            cur = PermGroup::new(gens.clone())?;
        }
    }
    if cur.order() != target {
        return Err(Error::invalid("filtered elements do not form a subgroup"));
    }
    Ok(cur)
}

/// First pair (a, b) of elements of orders (oa, ob) with ab of order oab
/// generating a subgroup of the given order, scanning elements in order.
pub fn find_two_generated(g: &PermGroup, oa: u64, ob: u64, oab: Option<u64>, order: u64) -> Result<Option<PermGroup>> {
    let els = elements(g, 2_000_000)?;
    let a_list: Vec<&Perm> = els.iter().filter(|x| x.order() == oa).collect();
    let b_list: Vec<&Perm> = els.iter().filter(|x| x.order() == ob).collect();
    let target = BigUint::from(order);
    for a in &a_list {
        for b in &b_list {
            if let Some(o) = oab {
                if a.mul(b).order() != o {
                    continue;
                }
            }
            let h = PermGroup::new(vec![(*a).clone(), (*b).clone()])?;
            if h.order() == target {
                return Ok(Some(h));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(g: &PermGroup) -> u64 {
        g.order_u64().unwrap()
    }

    #[test]
    fn named_families() {
        assert_eq!(ord(&symmetric(5)), 120);
        assert_eq!(ord(&alternating(5)), 60);
        assert_eq!(ord(&cyclic(7)), 7);
        assert_eq!(ord(&dihedral(4)), 8);
        assert_eq!(ord(&dihedral(5)), 10);
    }

    #[test]
    fn projective_line_orders() {
        use Psl2Variant::*;
        for (q, v, o) in [(5, Psl, 60), (7, Pgl, 336), (9, Psigmal, 720), (9, M10, 720), (8, Pgammal, 1512), (4, Psl, 60), (9, Pgammal, 1440)] {
            let g = psl2_projective(q, v).unwrap();
            assert_eq!(g.degree(), q + 1);
            assert_eq!(ord(&g), o, "{v:?} q={q}");
            assert_eq!(v.expected_order(q, Field::of_order(q).unwrap().degree()), o);
        }
        assert!(psl2_projective(3, Psl2Variant::Psl).is_err());
        assert!(psl2_projective(7, Psl2Variant::Psigmal).is_err());
    }

    #[test]
    fn m10_is_not_s6() {
        // S_6 contains transpositions' images with 4 fixed points on 10
        // points; M_10's outer coset has no involutions
        let m10 = psl2_projective(9, Psl2Variant::M10).unwrap();
        let psl = psl2_projective(9, Psl2Variant::Psl).unwrap();
        let mut outer_involutions = 0;
        m10.for_each_element(|x| {
            if x.order() == 2 && !psl.contains(x).unwrap() {
                outer_involutions += 1;
            }
        });
        assert_eq!(outer_involutions, 0);
    }

    #[test]
    fn linear_groups() {
        assert_eq!(ord(&linear_on_nonzero(3, 2, LinearKind::Gl).unwrap()), 168);
        assert_eq!(ord(&linear_on_nonzero(2, 3, LinearKind::Gl).unwrap()), 48);
        assert_eq!(ord(&linear_projective(3, 4, LinearKind::Sl, false).unwrap()), 20160);
    }

    #[test]
    fn coset_action_natural() {
        let s4 = symmetric(4);
        let h = vec![Perm::parse_cycles(4, "(0 1)").unwrap(), Perm::parse_cycles(4, "(0 1 2)").unwrap()];
        let ca = coset_action(&s4, &h, 100).unwrap();
        assert_eq!(ca.action.group.degree(), 4);
        assert!(ca.action.faithful());
        assert_eq!(ord(&ca.action.group), 24);
    }

    #[test]
    fn coset_action_with_kernel() {
        // S_4 on cosets of the normal Klein group plus a transposition: S_4 / V_4 = S_3
        let s4 = symmetric(4);
        let h = vec![Perm::parse_cycles(4, "(0 1)(2 3)").unwrap(), Perm::parse_cycles(4, "(0 2)(1 3)").unwrap()];
        let ca = coset_action(&s4, &h, 100).unwrap();
        assert_eq!(ca.action.group.degree(), 6);
        assert_eq!(ca.action.kernel_order, BigUint::from(4u32));
        assert!(coset_action(&s4, &[Perm::identity(4)], 10).is_err());
    }

    #[test]
    fn pairs_and_wreath() {
        let pa = pairs_action(&symmetric(3)).unwrap();
        assert_eq!(pa.group.degree(), 3);
        assert_eq!(ord(&pa.group), 6);
        let c2 = pairs_action(&symmetric(2)).unwrap();
        assert_eq!(c2.group.degree(), 1);
        assert!(!c2.faithful());
        let pg = pairs_action(&psl2_projective(5, Psl2Variant::Pgl).unwrap()).unwrap();
        assert_eq!(pg.group.degree(), 15);
        assert!(pg.group.is_transitive());
        let w = wreath_product_action(&symmetric(3), &symmetric(2), 1000).unwrap();
        assert_eq!((w.degree(), ord(&w)), (9, 72));
        let w = wreath_product_action(&alternating(5), &cyclic(2), 1000).unwrap();
        assert_eq!((w.degree(), ord(&w)), (25, 7200));
    }

    #[test]
    fn affine_examples() {
        let k = Field::of_order(2).unwrap();
        let agl = affine_group(2, 3, &linear::gl_generators(3, &k)).unwrap();
        assert_eq!((agl.degree(), ord(&agl)), (8, 1344));
        let a13 = affine_group(3, 1, &[Mat::from_rows(vec![vec![2]]).unwrap()]).unwrap();
        assert_eq!((a13.degree(), ord(&a13)), (3, 6));
        // stabilizer of the zero vector is exactly the linear part
        let st = agl.point_stabilizer(0).unwrap();
        assert_eq!(ord(&st), 168);
    }

    #[test]
    fn subgroup_search_helpers() {
        let a5 = alternating(5);
        let a4 = find_two_generated(&a5, 2, 3, Some(3), 12).unwrap().unwrap();
        assert_eq!(ord(&a4), 12);
        let stab = subgroup_by_filter(&a5, 1000, |x| x.image(4) == 4).unwrap();
        assert_eq!(ord(&stab), 12);
    }
}
