//! Permutation groups given by generators, with a lazily built chain.

use std::collections::VecDeque;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::chain::{build_chain, Chain};
use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_SEED: u64 = 0x5a71_2024;

pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    seed: u64,
    known_order: Option<BigUint>,
    chain: OnceLock<Arc<Chain>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup { degree: self.degree, gens: self.gens.clone(), seed: self.seed, known_order: self.known_order.clone(), chain }
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup").field("degree", &self.degree).field("gens", &self.gens).finish()
    }
}

impl PermGroup {
    pub fn new(gens: Vec<Perm>) -> Result<PermGroup> {
        let first = gens.first().ok_or_else(|| Error::invalid("empty generator list"))?;
        let n = first.degree();
        for g in &gens {
            if g.degree() != n {
                return Err(Error::DegreeMismatch { expected: n, got: g.degree() });
            }
        }
        Ok(PermGroup::from_parts(n, gens))
    }

    pub fn from_parts(degree: usize, gens: Vec<Perm>) -> PermGroup {
        let gens = if gens.is_empty() { vec![Perm::identity(degree)] } else { gens };
        PermGroup { degree, gens, seed: DEFAULT_SEED, known_order: None, chain: OnceLock::new() }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        let g = PermGroup::from_parts(degree, vec![Perm::identity(degree)]);
        let _ = g.chain.set(Arc::new(Chain::trivial(degree)));
        g
    }

    /// Group with a certified chain (used for derived subgroups).
    pub(crate) fn from_chain(chain: Chain, seed: u64) -> PermGroup {
        let degree = chain.degree();
        let mut gens = chain.level_gens(0);
        if gens.is_empty() {
            gens.push(Perm::identity(degree));
        }
        let known = Some(chain.order());
        let g = PermGroup { degree, gens, seed, known_order: known, chain: OnceLock::new() };
        let _ = g.chain.set(Arc::new(chain));
        g
    }

    pub fn with_seed(mut self, seed: u64) -> PermGroup {
        self.seed = seed;
        self.chain = OnceLock::new();
        self
    }

    /// Declares the order; the chain is then built without the
    /// verification pass. Only for orders that are already certified.
    pub fn with_known_order(mut self, order: BigUint) -> PermGroup {
        self.known_order = Some(order);
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Non-identity generators.
    pub fn nontrivial_generators(&self) -> Vec<Perm> {
        self.gens.iter().filter(|g| !g.is_identity()).cloned().collect()
    }

    pub fn chain(&self) -> &Arc<Chain> {
        self.chain.get_or_init(|| {
            let known = self.known_order.as_ref().map(|o| (o, None));
            Arc::new(build_chain(self.degree, &self.gens, &[], known, self.seed))
        })
    }

    pub fn order(&self) -> BigUint {
        if let Some(o) = &self.known_order {
            return o.clone();
        }
        self.chain().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn order_f64(&self) -> f64 {
        self.order().to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(|g| g.is_identity())
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, got: p.degree() });
        }
        Ok(self.chain().contains(p))
    }

    /// Subgroup test by generators.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.gens.iter().all(|g| self.chain().contains(g))
    }

    /// Equality of subgroups of a common symmetric group.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.order() == other.order() && self.contains_group(other) && other.contains_group(self)
    }

    pub fn moves(&self, x: usize) -> bool {
        self.gens.iter().any(|g| g.image(x) != x)
    }

    fn check_point(&self, x: usize) -> Result<()> {
        if x >= self.degree {
            return Err(Error::PointOutOfRange { point: x, degree: self.degree });
        }
        Ok(())
    }

    pub fn orbit(&self, alpha: usize) -> Result<Vec<usize>> {
        self.check_point(alpha)?;
        let mut seen = vec![false; self.degree];
        Ok(self.orbit_from(alpha, &mut seen))
    }

    fn orbit_from(&self, alpha: usize, seen: &mut [bool]) -> Vec<usize> {
        let gens = self.nontrivial_generators();
        let mut orb = vec![alpha];
        seen[alpha] = true;
        let mut i = 0;
        while i < orb.len() {
            let x = orb[i];
            i += 1;
            for g in &gens {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    orb.push(y);
                }
            }
        }
        orb
    }

    /// All orbits, each sorted, listed by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let mut o = self.orbit_from(x, &mut seen);
                o.sort_unstable();
                out.push(o);
            }
        }
        out
    }

    /// For each point, the index of its orbit in `orbits()` order.
    pub fn orbit_labels(&self) -> Vec<u32> {
        let mut lab = vec![u32::MAX; self.degree];
        for (i, o) in self.orbits().iter().enumerate() {
            for &x in o {
                lab[x] = i as u32;
            }
        }
        lab
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || {
            let mut seen = vec![false; self.degree];
            self.orbit_from(0, &mut seen).len() == self.degree
        }
    }

    /// Chain whose base begins with `prefix` (reuses the current chain when
    /// it already does).
    pub fn chain_with_prefix(&self, prefix: &[usize]) -> Arc<Chain> {
        let c = self.chain();
        let base = c.base();
        if base.len() >= prefix.len() && base[..prefix.len()] == *prefix {
            return c.clone();
        }
        let order = c.order();
        Arc::new(build_chain(self.degree, &self.nontrivial_generators(), prefix, Some((&order, Some(c))), self.seed ^ 0x9e37))
    }

    pub fn point_stabilizer(&self, alpha: usize) -> Result<PermGroup> {
        self.check_point(alpha)?;
        if !self.moves(alpha) {
            return Ok(self.clone());
        }
        let c = self.chain_with_prefix(&[alpha]);
        Ok(PermGroup::from_chain(c.suffix(1), self.seed))
    }

    pub fn pointwise_stabilizer(&self, set: &[usize]) -> Result<PermGroup> {
        let mut h = self.clone();
        for &x in set {
            self.check_point(x)?;
            if h.is_trivial() {
                break;
            }
            if h.moves(x) {
                h = h.point_stabilizer(x)?;
            }
        }
        Ok(h)
    }

    /// True when the pointwise stabilizer of `set` is trivial.
    pub fn is_base(&self, set: &[usize]) -> bool {
        self.pointwise_stabilizer(set).map(|h| h.order().is_one()).unwrap_or(false)
    }

    /// Some g with s_i^g = t_i for all i.
    pub fn transporter(&self, s: &[usize], t: &[usize]) -> Result<Option<Perm>> {
        if s.len() != t.len() {
            return Err(Error::invalid("transporter tuples differ in length"));
        }
        for &x in s.iter().chain(t) {
            self.check_point(x)?;
        }
        // repeated points in s must map consistently
        for i in 0..s.len() {
            for j in 0..i {
                if (s[i] == s[j]) != (t[i] == t[j]) {
                    return Ok(None);
                }
            }
        }
        let mut prefix: Vec<usize> = Vec::new();
        let mut targets: Vec<usize> = Vec::new();
        for (&a, &b) in s.iter().zip(t) {
            if !prefix.contains(&a) {
                prefix.push(a);
                targets.push(b);
            }
        }
        let c = self.chain_with_prefix(&prefix);
        Ok(crate::backtrack::transporter_in_chain(&c, &targets))
    }

    pub fn transporter_exists(&self, s: &[usize], t: &[usize]) -> Result<bool> {
        Ok(self.transporter(s, t)?.is_some())
    }

    /// Primitivity test; `Err(block)` carries a minimal nontrivial block.
    pub fn primitivity(&self) -> Result<std::result::Result<(), Vec<usize>>> {
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let n = self.degree;
        if n <= 2 {
            return Ok(Ok(()));
        }
        let gens = self.nontrivial_generators();
        let stab = self.point_stabilizer(0)?;
        for orb in stab.orbits() {
            let beta = orb[0];
            if beta == 0 {
                continue;
            }
            let block = minimal_block(n, &gens, 0, beta);
            if block.len() < n {
                return Ok(Err(block));
            }
        }
        Ok(Ok(()))
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.primitivity()?.is_ok())
    }

    /// Uniform random element from the chain.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R) -> Perm {
        self.chain().random_element(rng)
    }

    pub fn for_each_element<F: FnMut(&Perm)>(&self, f: F) {
        self.chain().for_each_element(f)
    }

    /// Image of the group under a relabelling map of its generators.
    pub fn map_generators<F: Fn(&Perm) -> Perm>(&self, f: F) -> Result<PermGroup> {
        PermGroup::new(self.gens.iter().map(f).collect())
    }

    /// Induced action on an invariant list of point sets given as sorted
    /// vectors; returns the permutation images of each generator.
    pub fn action_on_sets(&self, sets: &[Vec<usize>]) -> Result<Vec<Perm>> {
        let index: std::collections::HashMap<&[usize], usize> =
            sets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut out = Vec::new();
        for g in &self.gens {
            let mut img = Vec::with_capacity(sets.len());
            for s in sets {
                let t = g.image_set(s);
                let j = index.get(t.as_slice()).ok_or_else(|| Error::invalid("set family is not invariant"))?;
                img.push(*j);
            }
            out.push(Perm::from_images(img)?);
        }
        Ok(out)
    }
}

/// Finest block system in which `a` and `b` are equivalent; returns the
/// block containing `a`.
pub fn minimal_block(n: usize, gens: &[Perm], a: usize, b: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut queue = VecDeque::new();
    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
    if ra != rb {
        parent[rb] = ra;
        queue.push_back((a, b));
    }
    while let Some((x, y)) = queue.pop_front() {
        for g in gens {
            let (u, v) = (g.image(x), g.image(y));
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[rv] = ru;
                queue.push_back((ru, rv));
            }
        }
    }
    let r = find(&mut parent, a);
    (0..n).filter(|&x| find(&mut parent, x) == r).collect()
}

/// Small helper used by tests and constructions.
pub fn order_of(gens: &[Perm]) -> BigUint {
    match PermGroup::new(gens.to_vec()) {
        Ok(g) => g.order(),
        Err(_) => BigUint::one(),
    }
}
