//! Brute-force oracles that list every group element. They share nothing
//! with the library beyond reading generator images.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use saxl_core::{Perm, PermGroup};

pub type Images = Vec<usize>;

pub fn images(p: &Perm) -> Images {
    p.to_vec()
}

fn compose(a: &Images, b: &Images) -> Images {
    a.iter().map(|&x| b[x]).collect()
}

pub struct Brute {
    pub n: usize,
    pub elems: Vec<Images>,
}

impl Brute {
    /// Closure of the generators; panics past `cap` elements.
    pub fn new(n: usize, gens: &[Images], cap: usize) -> Brute {
        let id: Images = (0..n).collect();
        let mut seen: HashSet<Images> = HashSet::new();
        seen.insert(id.clone());
        let mut elems = vec![id];
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let h = compose(&elems[i], g);
                if seen.insert(h.clone()) {
                    elems.push(h);
                    assert!(elems.len() <= cap, "group larger than oracle cap {cap}");
                }
            }
            i += 1;
        }
        Brute { n, elems }
    }

    pub fn of(g: &PermGroup, cap: usize) -> Brute {
        let gens: Vec<Images> = g.generators().iter().map(images).collect();
        Brute::new(g.degree(), &gens, cap)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn orbit(&self, x: usize) -> BTreeSet<usize> {
        self.elems.iter().map(|g| g[x]).collect()
    }

    pub fn orbits(&self) -> Vec<BTreeSet<usize>> {
        let mut done = vec![false; self.n];
        let mut out = Vec::new();
        for x in 0..self.n {
            if !done[x] {
                let o = self.orbit(x);
                for &y in &o {
                    done[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.n
    }

    pub fn fixes_all(g: &Images, set: &[usize]) -> bool {
        set.iter().all(|&x| g[x] == x)
    }

    pub fn pointwise_stabilizer_order(&self, set: &[usize]) -> usize {
        self.elems.iter().filter(|g| Brute::fixes_all(g, set)).count()
    }

    pub fn is_base(&self, set: &[usize]) -> bool {
        self.pointwise_stabilizer_order(set) == 1
    }

    /// Transitive with no block B containing 0 and 1 < |B| < n.
    pub fn is_primitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        let n = self.n;
        assert!(n <= 16, "primitivity oracle is exponential");
        for mask in 0u32..(1 << (n - 1)) {
            let set: Vec<usize> = std::iter::once(0).chain((1..n).filter(|&i| mask >> (i - 1) & 1 == 1)).collect();
            let s = set.len();
            if s == 1 || s == n || n % s != 0 {
                continue;
            }
            let member: HashSet<usize> = set.iter().copied().collect();
            let is_block = self.elems.iter().all(|g| {
                let hits = set.iter().filter(|&&x| member.contains(&g[x])).count();
                hits == 0 || hits == s
            });
            if is_block {
                return false;
            }
        }
        true
    }

    pub fn transporter_exists(&self, s: &[usize], t: &[usize]) -> bool {
        self.elems.iter().any(|g| s.iter().zip(t).all(|(&a, &b)| g[a] == b))
    }

    /// Number of k-tuples that are bases.
    pub fn count_base_tuples(&self, k: usize) -> u64 {
        let mut count = 0;
        let mut t = vec![0usize; k];
        loop {
            if self.is_base(&t) {
                count += 1;
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return count;
                }
                i -= 1;
                t[i] += 1;
                if t[i] < self.n {
                    break;
                }
                t[i] = 0;
            }
        }
    }

    pub fn q(&self, k: usize) -> BigRational {
        let total = BigInt::from(self.n).pow(k as u32);
        BigRational::new(total.clone() - BigInt::from(self.count_base_tuples(k)), total)
    }

    pub fn element_order(g: &Images) -> u64 {
        let id: Images = (0..g.len()).collect();
        let mut x = g.clone();
        let mut o = 1;
        while x != id {
            x = compose(&x, g);
            o += 1;
        }
        o
    }

    pub fn qhat(&self, k: usize) -> BigRational {
        let mut num = BigInt::from(0);
        for g in &self.elems {
            let o = Brute::element_order(g);
            if o > 1 && (2..o).all(|d| o % d != 0) {
                let fix = g.iter().enumerate().filter(|(i, &y)| *i == y).count();
                num += BigInt::from(fix).pow(k as u32);
            }
        }
        BigRational::new(num, BigInt::from(self.n).pow(k as u32))
    }

    pub fn base_size(&self) -> usize {
        if self.order() == 1 {
            return 0;
        }
        (1..=self.n).find(|&k| subsets(self.n, k).iter().any(|s| self.is_base(s))).unwrap()
    }

    /// {a,c} lies in some base of size b.
    pub fn saxl_edge(&self, b: usize, a: usize, c: usize) -> bool {
        subsets(self.n, b).iter().any(|s| s.contains(&a) && s.contains(&c) && self.is_base(s))
    }

    /// Lengths of irredundant bases, by descending through fixed point
    /// closures.
    pub fn irredundant_sizes(&self) -> BTreeSet<usize> {
        let all: Vec<usize> = (0..self.order()).collect();
        let mut memo = HashMap::new();
        self.irr(&all, &mut memo)
    }

    fn irr(&self, sub: &[usize], memo: &mut HashMap<Vec<usize>, BTreeSet<usize>>) -> BTreeSet<usize> {
        if sub.len() == 1 {
            return BTreeSet::from([0]);
        }
        if let Some(v) = memo.get(sub) {
            return v.clone();
        }
        let mut out = BTreeSet::new();
        for x in 0..self.n {
            let next: Vec<usize> = sub.iter().copied().filter(|&i| self.elems[i][x] == x).collect();
            if next.len() < sub.len() {
                for l in self.irr(&next, memo) {
                    out.insert(l + 1);
                }
            }
        }
        memo.insert(sub.to_vec(), out.clone());
        out
    }

    /// Smallest number of parts in a partition of [n] whose part
    /// stabilizers meet trivially.
    pub fn distinguishing_number(&self) -> usize {
        for m in 1..=self.n {
            let total = m.pow(self.n as u32);
            for idx in 0..total {
                let mut c = vec![0; self.n];
                let mut x = idx;
                for ci in c.iter_mut() {
                    *ci = x % m;
                    x /= m;
                }
                let preserving = self.elems.iter().filter(|g| (0..self.n).all(|i| c[g[i]] == c[i])).count();
                if preserving == 1 {
                    return m;
                }
            }
        }
        unreachable!()
    }
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Perm {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        v.swap(i, j);
    }
    Perm::from_images(v).unwrap()
}

/// A transitive group generated by two random permutations of degree n.
pub fn random_transitive<R: Rng>(n: usize, rng: &mut R) -> PermGroup {
    loop {
        let g = PermGroup::new(vec![random_perm(n, rng), random_perm(n, rng)]).unwrap();
        if g.is_transitive() {
            return g;
        }
    }
}

/// Transitive groups of degree 3..=8 used as sources of random pairs.
pub fn ambient_groups() -> Vec<PermGroup> {
    use saxl_core::recipe::{evaluate, EvalOptions};
    let mut v = Vec::new();
    for n in 3..=8 {
        for r in ["sym", "alt", "cyc", "dih"] {
            v.push(evaluate(&format!("{r}:{n}"), &EvalOptions::default()).unwrap().group);
        }
    }
    for r in ["psl2:5", "pgl2:5", "psl2:7", "pgl2:7", "pairs(sym:4)", "wr(sym:2; sym:3)", "wr(sym:2; cyc:2)", "affine:2:3:gl", "affine:7:1:gl", "affine:5:1:gl", "pgammal2:4"] {
        if let Ok(e) = evaluate(r, &EvalOptions::default()) {
            v.push(e.group);
        }
    }
    v
}

/// A transitive group of degree at most 8 generated by two random
/// elements of a random ambient group.
pub fn random_small_transitive<R: Rng>(ambient: &[PermGroup], rng: &mut R) -> PermGroup {
    loop {
        let a = &ambient[rng.gen_range(0..ambient.len())];
        let g = PermGroup::new(vec![a.random_element(rng), a.random_element(rng)]).unwrap();
        if g.is_transitive() {
            return g;
        }
    }
}
