//! Exact base sizes, ordered base counts, reg(G) and irredundant bases.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseSearchResult {
    pub b: usize,
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
}

/// Orbits of H that are not fixed points, largest first (ties by smallest
/// point).
fn nontrivial_orbits(h: &PermGroup) -> Vec<Vec<usize>> {
    let mut orbs: Vec<Vec<usize>> = h.orbits().into_iter().filter(|o| o.len() > 1).collect();
    orbs.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    orbs
}

fn search(h: &PermGroup, m: usize, nodes: &mut u64, path: &mut Vec<usize>) -> bool {
    *nodes += 1;
    if h.order().is_one() {
        return true;
    }
    if m == 0 {
        return false;
    }
    let orbs = nontrivial_orbits(h);
    let order = h.order();
    let largest = orbs[0].len();
    if order > BigUint::from(largest).pow(m as u32) {
        return false;
    }
    if m == 1 {
        // a single point works iff it lies in a regular orbit
        if BigUint::from(largest) == order {
            path.push(orbs[0][0]);
            return true;
        }
        return false;
    }
    for orb in &orbs {
        let g = orb[0];
        let hs = h.point_stabilizer(g).expect("point in range");
        path.push(g);
        if search(&hs, m - 1, nodes, path) {
            return true;
        }
        path.pop();
    }
    false
}

/// Some set of at most m points with trivial pointwise stabilizer in H.
pub fn base_of_size(h: &PermGroup, m: usize) -> Option<Vec<usize>> {
    let mut nodes = 0;
    let mut path = Vec::new();
    search(h, m, &mut nodes, &mut path).then_some(path)
}

pub fn has_base_of_size(h: &PermGroup, m: usize) -> bool {
    base_of_size(h, m).is_some()
}

/// Lower bound ceil(log |G| / log n) on the base size.
pub fn base_size_lower_bound(g: &PermGroup) -> usize {
    if g.order().is_one() {
        return 0;
    }
    let n = g.degree().max(2) as f64;
    let l = (g.order_f64().ln() / n.ln() - 1e-9).ceil();
    l.max(1.0) as usize
}

/// Minimal base size with a witness, by iterative deepening. `hint`
/// skips depths below it; depth hint - 1 is still searched so the result
/// stays certified.
pub fn base_size_with_hint(g: &PermGroup, hint: Option<usize>) -> BaseSearchResult {
    if g.order().is_one() {
        return BaseSearchResult { b: 0, witness: Vec::new(), nodes_explored: 0 };
    }
    let mut nodes = 0;
    let mut m = base_size_lower_bound(g);
    if let Some(h) = hint {
        if h > m {
            let mut path = Vec::new();
            if !search(g, h - 1, &mut nodes, &mut path) {
                m = h;
            }
        }
    }
    loop {
        let mut path = Vec::new();
        if search(g, m, &mut nodes, &mut path) {
            return BaseSearchResult { b: m, witness: path, nodes_explored: nodes };
        }
        m += 1;
    }
}

pub fn base_size(g: &PermGroup) -> BaseSearchResult {
    base_size_with_hint(g, None)
}

/// Cache of subgroups keyed by (order, orbit partition); hits are confirmed
/// by mutual containment.
struct SubgroupCache<V> {
    map: HashMap<(BigUint, Vec<u32>), Vec<(PermGroup, V)>>,
}

impl<V: Clone> SubgroupCache<V> {
    fn new() -> Self {
        SubgroupCache { map: HashMap::new() }
    }
    fn key(h: &PermGroup) -> (BigUint, Vec<u32>) {
        (h.order(), h.orbit_labels())
    }
    fn get(&self, h: &PermGroup) -> Option<V> {
        let list = self.map.get(&Self::key(h))?;
        list.iter().find(|(g, _)| g.contains_group(h) && h.contains_group(g)).map(|(_, v)| v.clone())
    }
    fn insert(&mut self, h: &PermGroup, v: V) {
        self.map.entry(Self::key(h)).or_default().push((h.clone(), v));
    }
}

/// Number of ordered k-tuples of points with trivial pointwise stabilizer.
pub fn count_ordered_bases(g: &PermGroup, k: usize) -> BigUint {
    let mut caches: Vec<SubgroupCache<BigUint>> = (0..=k).map(|_| SubgroupCache::new()).collect();
    count_rec(g, k, &mut caches)
}

fn count_rec(h: &PermGroup, k: usize, caches: &mut [SubgroupCache<BigUint>]) -> BigUint {
    let n = h.degree();
    if h.order().is_one() {
        return BigUint::from(n).pow(k as u32);
    }
    if k == 0 {
        return BigUint::zero();
    }
    if let Some(v) = caches[k].get(h) {
        return v;
    }
    let mut total = BigUint::zero();
    let mut fixed = 0usize;
    for orb in h.orbits() {
        if orb.len() == 1 {
            fixed += 1;
            continue;
        }
        let hs = h.point_stabilizer(orb[0]).expect("point in range");
        total += count_rec(&hs, k - 1, caches) * BigUint::from(orb.len());
    }
    if fixed > 0 {
        total += count_rec(h, k - 1, caches) * BigUint::from(fixed);
    }
    caches[k].insert(h, total.clone());
    total
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularOrbitCount {
    pub b: usize,
    pub ordered_base_count: BigUint,
    pub reg: BigUint,
}

/// Number of regular orbits of G on ordered m-tuples.
pub fn reg_tuples(g: &PermGroup, m: usize) -> BigUint {
    let c = count_ordered_bases(g, m);
    let (q, r) = c.div_rem(&g.order());
    assert!(r.is_zero(), "ordered base count not divisible by |G|");
    q
}

pub fn reg(g: &PermGroup) -> RegularOrbitCount {
    reg_with_b(g, base_size(g).b)
}

pub fn reg_with_b(g: &PermGroup, b: usize) -> RegularOrbitCount {
    let c = count_ordered_bases(g, b);
    let (q, r) = c.div_rem(&g.order());
    assert!(r.is_zero(), "ordered base count not divisible by |G|");
    RegularOrbitCount { b, ordered_base_count: c, reg: q }
}

/// Budget on search nodes for the irredundant base routines.
pub const IRREDUNDANT_NODE_CAP: u64 = 200_000;

struct Budget {
    used: u64,
    cap: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            return Err(Error::cap("irredundant search nodes", self.used, self.cap));
        }
        Ok(())
    }
}

/// Set of lengths of irredundant bases of the subgroup, with one witness
/// sequence per length.
fn sizes_rec(h: &PermGroup, cache: &mut SubgroupCache<SizeMap>, budget: &mut Budget) -> Result<SizeMap> {
    budget.tick()?;
    if h.order().is_one() {
        return Ok(SizeMap::from([(0, Vec::new())]));
    }
    if let Some(v) = cache.get(h) {
        return Ok(v);
    }
    let mut out = SizeMap::new();
    for orb in nontrivial_orbits(h) {
        let g = orb[0];
        let hs = h.point_stabilizer(g)?;
        for (s, w) in sizes_rec(&hs, cache, budget)? {
            out.entry(s + 1).or_insert_with(|| {
                let mut v = vec![g];
                v.extend(w);
                v
            });
        }
    }
    cache.insert(h, out.clone());
    Ok(out)
}

type SizeMap = BTreeMap<usize, Vec<usize>>;

/// All achievable irredundant base sizes, each with a witness.
pub fn irredundant_sizes_with_witnesses(g: &PermGroup, node_cap: u64) -> Result<SizeMap> {
    if g.order().is_one() {
        return Err(Error::invalid("irredundant bases need a nontrivial group"));
    }
    let mut cache = SubgroupCache::new();
    let mut budget = Budget { used: 0, cap: node_cap };
    sizes_rec(g, &mut cache, &mut budget)
}

pub fn irredundant_sizes(g: &PermGroup) -> Result<BTreeSet<usize>> {
    Ok(irredundant_sizes_with_witnesses(g, IRREDUNDANT_NODE_CAP)?.into_keys().collect())
}

/// I(G) with a witness irredundant base of that length.
pub fn irredundant_max(g: &PermGroup) -> Result<(usize, Vec<usize>)> {
    let m = irredundant_sizes_with_witnesses(g, IRREDUNDANT_NODE_CAP)?;
    let (k, w) = m.into_iter().next_back().expect("nontrivial group has an irredundant base");
    Ok((k, w))
}

/// Unordered pairs {a, b} (a < b) lying in a common irredundant base of
/// length k. The first point ranges over orbit representatives and the
/// result is closed under G.
pub fn irredundant_pairs(g: &PermGroup, k: usize, node_cap: u64) -> Result<HashSet<(usize, usize)>> {
    let mut found: HashSet<(usize, usize)> = HashSet::new();
    let mut budget = Budget { used: 0, cap: node_cap };
    fn rec(h: &PermGroup, k: usize, path: &mut Vec<usize>, found: &mut HashSet<(usize, usize)>, budget: &mut Budget) -> Result<()> {
        budget.tick()?;
        if h.order().is_one() {
            if path.len() == k {
                for i in 0..path.len() {
                    for j in 0..i {
                        let (a, b) = (path[i].min(path[j]), path[i].max(path[j]));
                        found.insert((a, b));
                    }
                }
            }
            return Ok(());
        }
        if path.len() == k {
            return Ok(());
        }
        for orb in nontrivial_orbits(h) {
            for &x in &orb {
                let hs = h.point_stabilizer(x)?;
                path.push(x);
                rec(&hs, k, path, found, budget)?;
                path.pop();
            }
        }
        Ok(())
    }
    for orb in nontrivial_orbits(g) {
        let x = orb[0];
        let hs = g.point_stabilizer(x)?;
        let mut path = vec![x];
        rec(&hs, k, &mut path, &mut found, &mut budget)?;
    }
    // close under G
    let gens = g.nontrivial_generators();
    let mut queue: Vec<(usize, usize)> = found.iter().copied().collect();
    while let Some((a, b)) = queue.pop() {
        for x in &gens {
            let (c, d) = (x.image(a), x.image(b));
            let e = (c.min(d), c.max(d));
            if found.insert(e) {
                queue.push(e);
            }
        }
    }
    Ok(found)
}
