//! Product action structure: distinguishing partitions, reg(L,m), base
//! size of L wr P from its factors, and bases assembled from arrays.

use num_bigint::BigUint;
use num_traits::One;

use crate::actions;
use crate::backtrack::nontrivial_colour_preserver;
use crate::bases;
use crate::error::{Error, Result};
use crate::group::PermGroup;

/// Partition of [k] into parts; for ordered partitions parts may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub k: usize,
    pub parts: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(k: usize, parts: Vec<Vec<usize>>) -> Result<Partition> {
        let mut seen = vec![false; k];
        for p in &parts {
            for &x in p {
                if x >= k || seen[x] {
                    return Err(Error::invalid("parts must be disjoint subsets of [k]"));
                }
                seen[x] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::invalid("parts must cover [k]"));
        }
        Ok(Partition { k, parts })
    }

    /// From a colouring of [k] by part indices 0..m.
    pub fn from_colours(colours: &[usize], m: usize) -> Partition {
        let mut parts = vec![Vec::new(); m];
        for (i, &c) in colours.iter().enumerate() {
            parts[c].push(i);
        }
        Partition { k: colours.len(), parts }
    }

    pub fn colours(&self) -> Vec<u32> {
        let mut c = vec![0u32; self.k];
        for (j, p) in self.parts.iter().enumerate() {
            for &x in p {
                c[x] = j as u32;
            }
        }
        c
    }

    pub fn nonempty_parts(&self) -> usize {
        self.parts.iter().filter(|p| !p.is_empty()).count()
    }
}

/// The intersection of the setwise stabilizers of the parts is trivial.
pub fn is_distinguishing(p: &PermGroup, part: &Partition) -> Result<bool> {
    if p.degree() != part.k {
        return Err(Error::DegreeMismatch { expected: p.degree(), got: part.k });
    }
    if p.order().is_one() {
        return Ok(true);
    }
    Ok(nontrivial_colour_preserver(p.chain(), &part.colours()).is_none())
}

/// Calls `f` on every restricted growth string of length k with values
/// below m (each an unordered partition into at most m parts); stops when
/// `f` returns true.
fn for_each_rgs(k: usize, m: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(s: &mut Vec<usize>, k: usize, m: usize, used: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if s.len() == k {
            return f(s);
        }
        for c in 0..(used + 1).min(m) {
            s.push(c);
            let stop = rec(s, k, m, used.max(c + 1), f);
            s.pop();
            if stop {
                return true;
            }
        }
        false
    }
    rec(&mut Vec::with_capacity(k), k, m, 0, f)
}

/// D(P) with a witness partition.
pub fn distinguishing_number(p: &PermGroup) -> (usize, Partition) {
    let k = p.degree();
    if p.order().is_one() {
        return (1, Partition { k, parts: vec![(0..k).collect()] });
    }
    let chain = p.chain().clone();
    for m in 1..=k {
        let mut found: Option<Vec<usize>> = None;
        for_each_rgs(k, m, &mut |s| {
            let colours: Vec<u32> = s.iter().map(|&c| c as u32).collect();
            if nontrivial_colour_preserver(&chain, &colours).is_none() {
                found = Some(s.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(s) = found {
            let used = s.iter().max().unwrap() + 1;
            return (used, Partition::from_colours(&s, used));
        }
    }
    unreachable!("the partition into singletons is distinguishing")
}

pub fn reg_tuples(l: &PermGroup, m: usize) -> BigUint {
    bases::reg_tuples(l, m)
}

#[derive(Clone, Debug)]
pub struct WreathPrediction {
    pub m: usize,
    pub distinguishing_number: usize,
    /// L primitive and not regular, P transitive.
    pub hypotheses_hold: bool,
}

/// Smallest m with reg(L,m) >= D(P).
pub fn wreath_base_size_via_213(l: &PermGroup, p: &PermGroup) -> Result<WreathPrediction> {
    let d = distinguishing_number(p).0;
    let hypotheses_hold = l.is_transitive() && l.is_primitive()? && !bases::has_base_of_size(l, 1) && p.is_transitive();
    let mut m = bases::base_size(l).b;
    loop {
        if reg_tuples(l, m) >= BigUint::from(d) {
            return Ok(WreathPrediction { m, distinguishing_number: d, hypotheses_hold });
        }
        m += 1;
        if m > l.degree() + 1 {
            return Err(Error::invalid("no m with enough regular orbits"));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrayVerdict {
    /// Columns have trivial pointwise stabilizer in L wr P.
    pub direct: bool,
    pub rows_are_bases: bool,
    pub partition: Partition,
    pub partition_distinguishing: bool,
}

impl ArrayVerdict {
    pub fn agree(&self) -> bool {
        self.direct == (self.rows_are_bases && self.partition_distinguishing)
    }
}

/// Compares the direct base test for the columns of a k x b array with the
/// row and partition criterion. `wreath` must be L wr P built by
/// `actions::wreath_product_action`.
pub fn assemble_base_from_array(l: &PermGroup, p: &PermGroup, wreath: &PermGroup, array: &[Vec<usize>]) -> Result<ArrayVerdict> {
    let k = p.degree();
    let m = l.degree();
    if array.len() != k || array.iter().any(|r| r.len() != array[0].len()) {
        return Err(Error::invalid("array must have k rows of equal length"));
    }
    let b = array[0].len();
    let columns: Vec<usize> = (0..b).map(|c| (0..k).fold(0, |acc, i| acc * m + array[i][c])).collect();
    let direct = wreath.is_base(&columns);
    let rows_are_bases = array.iter().all(|r| l.is_base(r));
    // rows in the same L-orbit share a part
    let mut colour = vec![usize::MAX; k];
    let mut parts = 0;
    for i in 0..k {
        if colour[i] != usize::MAX {
            continue;
        }
        colour[i] = parts;
        for j in i + 1..k {
            if colour[j] == usize::MAX && l.transporter_exists(&array[i], &array[j])? {
                colour[j] = parts;
            }
        }
        parts += 1;
    }
    let partition = Partition::from_colours(&colour, parts);
    let partition_distinguishing = is_distinguishing(p, &partition)?;
    Ok(ArrayVerdict { direct, rows_are_bases, partition, partition_distinguishing })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionOrbitCount {
    pub m: usize,
    pub regular_partitions: u64,
    pub regular_orbits: u64,
}

impl PartitionOrbitCount {
    pub fn unique(&self) -> bool {
        self.regular_orbits == 1
    }
}

/// Regular P-orbits on ordered partitions of [k] into m possibly empty
/// parts.
pub fn regular_partition_orbits(p: &PermGroup, m: usize) -> Result<PartitionOrbitCount> {
    let k = p.degree();
    let total = (m as u128).checked_pow(k as u32).filter(|&t| t <= 50_000_000).ok_or_else(|| Error::cap("ordered partitions", format!("{m}^{k}"), 50_000_000u64))? as u64;
    let chain = p.chain().clone();
    let order = p.order_u64().unwrap_or(u64::MAX);
    let mut regular = 0u64;
    let mut colours = vec![0u32; k];
    for idx in 0..total {
        let mut x = idx;
        for c in colours.iter_mut().rev() {
            *c = (x % m as u64) as u32;
            x /= m as u64;
        }
        if order == 1 || nontrivial_colour_preserver(&chain, &colours).is_none() {
            regular += 1;
        }
    }
    Ok(PartitionOrbitCount { m, regular_partitions: regular, regular_orbits: regular / order })
}

/// P has a unique regular orbit on ordered partitions into m parts.
pub fn unique_regular_partition_orbit(p: &PermGroup, m: usize) -> Result<bool> {
    Ok(regular_partition_orbits(p, m)?.unique())
}

/// Both sides of the reg(L wr P) = 1 characterisation.
#[derive(Clone, Debug)]
pub struct RegOneCheck {
    pub reg_wreath: BigUint,
    pub reg_l_at_b: BigUint,
    pub distinguishing_number: usize,
    pub unique_regular_orbit: bool,
}

impl RegOneCheck {
    pub fn agree(&self) -> bool {
        let lhs = self.reg_wreath.is_one();
        let rhs = self.reg_l_at_b == BigUint::from(self.distinguishing_number) && self.unique_regular_orbit;
        lhs == rhs
    }
}

pub fn reg_one_check(l: &PermGroup, p: &PermGroup, cap: usize) -> Result<RegOneCheck> {
    let w = actions::wreath_product_action(l, p, cap)?;
    let r = bases::reg(&w);
    let d = distinguishing_number(p).0;
    Ok(RegOneCheck {
        reg_wreath: r.reg,
        reg_l_at_b: reg_tuples(l, r.b),
        distinguishing_number: d,
        unique_regular_orbit: unique_regular_partition_orbit(p, d)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{cyclic, symmetric};

    #[test]
    fn distinguishing_examples() {
        let c4 = cyclic(4);
        assert!(is_distinguishing(&c4, &Partition::new(4, vec![vec![0], vec![1, 2, 3]]).unwrap()).unwrap());
        assert!(!is_distinguishing(&symmetric(4), &Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap()).unwrap());
        assert!(is_distinguishing(&PermGroup::trivial(3), &Partition::new(3, vec![vec![0, 1, 2]]).unwrap()).unwrap());
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert_eq!(distinguishing_number(&symmetric(4)).0, 4);
        assert_eq!(distinguishing_number(&PermGroup::trivial(5)).0, 1);
        assert_eq!(distinguishing_number(&cyclic(4)).0, 2);
    }

    #[test]
    fn reg_tuple_counts() {
        assert_eq!(reg_tuples(&symmetric(3), 2), BigUint::one());
        assert_eq!(reg_tuples(&symmetric(3), 1), BigUint::from(0u32));
    }

    #[test]
    fn theorem_small() {
        let l = symmetric(3);
        let p = symmetric(2);
        let pred = wreath_base_size_via_213(&l, &p).unwrap();
        let w = actions::wreath_product_action(&l, &p, 1000).unwrap();
        assert_eq!(pred.m, bases::base_size(&w).b);
        assert!(pred.hypotheses_hold);
    }

    #[test]
    fn arrays() {
        let l = symmetric(3);
        let p = symmetric(2);
        let w = actions::wreath_product_action(&l, &p, 1000).unwrap();
        let same = assemble_base_from_array(&l, &p, &w, &[vec![0, 1], vec![0, 1]]).unwrap();
        assert!(!same.direct && same.agree());
        let good = assemble_base_from_array(&l, &p, &w, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert!(good.agree());
    }

    #[test]
    fn partition_orbits() {
        assert!(unique_regular_partition_orbit(&symmetric(3), 3).unwrap());
        let c = regular_partition_orbits(&cyclic(3), 2).unwrap();
        // the six non-constant 2-colourings fall into two regular orbits
        assert_eq!(c.regular_partitions, 6);
        assert_eq!(c.regular_orbits, 2);
    }
}
