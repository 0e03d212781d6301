//! Checks specific to diagonal type groups with k = 2: the pair criterion
//! for bases of T^2.(O x S_2), condition (*) and the tuple partition
//! signature.

use std::collections::BTreeMap;

use crate::diagonal::{self, DiagonalGroup};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::simple::SmallGroup;

/// Multiset of part sizes of the partition of positions by equal entries,
/// as sorted (size, multiplicity) pairs.
pub fn partition_signature(tuple: &[usize]) -> Vec<(usize, usize)> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in tuple {
        *counts.entry(x).or_default() += 1;
    }
    let mut sig: BTreeMap<usize, usize> = BTreeMap::new();
    for (_, c) in counts {
        *sig.entry(c).or_default() += 1;
    }
    sig.into_iter().rev().collect()
}

/// K = Inn(T).O acting on the elements of T, with O = Out(T) when
/// `outer` is set and O = 1 otherwise.
pub struct PairChecker<'a> {
    pub t: &'a SmallGroup,
    pub k: PermGroup,
}

impl<'a> PairChecker<'a> {
    pub fn new(t: &'a SmallGroup, outer: bool) -> PairChecker<'a> {
        PairChecker { t, k: t.automorphism_group(outer) }
    }

    /// Condition (a): no nontrivial automorphism in K centralizes both.
    pub fn condition_a(&self, x: usize, y: usize) -> Result<bool> {
        Ok(self.k.pointwise_stabilizer(&[x, y])?.order() == 1u32.into())
    }

    /// Condition (b): no automorphism in K inverts both.
    pub fn condition_b(&self, x: usize, y: usize) -> Result<bool> {
        let (xi, yi) = (self.t.inv(x), self.t.inv(y));
        Ok(!self.k.transporter_exists(&[x, y], &[xi, yi])?)
    }

    pub fn pair_base_check(&self, x: usize, y: usize) -> Result<bool> {
        Ok(self.condition_a(x, y)? && self.condition_b(x, y)?)
    }

    /// Some y satisfies both conditions with x (x must not be the identity).
    pub fn star_condition(&self, x: usize) -> Result<Option<usize>> {
        if x == 0 {
            return Err(Error::invalid("condition (*) needs a nonidentity element"));
        }
        for y in 1..self.t.order() {
            if self.pair_base_check(x, y)? {
                return Ok(Some(y));
            }
        }
        Ok(None)
    }
}

pub fn diag_pair_base_check(t: &SmallGroup, outer: bool, x: usize, y: usize) -> Result<bool> {
    PairChecker::new(t, outer).pair_base_check(x, y)
}

pub fn star_condition(t: &SmallGroup, x: usize) -> Result<bool> {
    Ok(PairChecker::new(t, true).star_condition(x)?.is_some())
}

/// T^2.(O x S_2) for the pair criterion.
pub fn pair_group(t: &SmallGroup, outer: bool) -> Result<DiagonalGroup> {
    diagonal::diagonal_group(t, 2, &crate::actions::symmetric(2), outer, 1_000_000)
}

/// Direct test: {D, D(1,x), D(1,y)} has trivial pointwise stabilizer.
/// With k = 2 the point D(1,t) is numbered by the index of t.
pub fn generic_pair_base_test(g: &DiagonalGroup, x: usize, y: usize) -> bool {
    g.group.is_base(&[0, x, y])
}

/// Representatives of the prime-order conjugacy classes of T (smallest
/// element index in each class), with the element order.
pub fn prime_order_class_reps(t: &SmallGroup) -> Vec<(usize, u64)> {
    let inn = t.automorphism_group(false);
    let mut seen = vec![false; t.order()];
    let mut out = Vec::new();
    for x in 1..t.order() {
        if seen[x] {
            continue;
        }
        for y in inn.orbit(x).expect("element index in range") {
            seen[y] = true;
        }
        let o = t.element(x).order();
        if crate::field::is_prime(o as usize) {
            out.push((x, o));
        }
    }
    out
}

/// Elements of T of the given order, one per Aut(T)-class.
pub fn aut_class_reps_of_order(t: &SmallGroup, order: u64) -> Vec<usize> {
    let aut = t.automorphism_group(true);
    let mut seen = vec![false; t.order()];
    let mut out = Vec::new();
    for x in 1..t.order() {
        if seen[x] || t.element(x).order() != order {
            continue;
        }
        for y in aut.orbit(x).expect("element index in range") {
            seen[y] = true;
        }
        out.push(x);
    }
    out
}
