//! Diagonal type groups T^k.(O x P) on the cosets of the diagonal
//! subgroup, and holomorphs.
//!
//! The coset D(t_1, ..., t_k) is labelled by the normalised tuple
//! (t_1^-1 t_2, ..., t_1^-1 t_k) and points are numbered lexicographically
//! over T's element order.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::simple::SmallGroup;

#[derive(Clone, Debug)]
pub struct DiagonalGroup {
    pub group: PermGroup,
    pub k: usize,
    /// P primitive on [k], or k = 2 and P trivial.
    pub primitive_expected: bool,
}

pub fn point_index(t: &SmallGroup, tuple: &[usize]) -> usize {
    let n = t.order();
    tuple.iter().fold(0, |acc, &x| acc * n + x)
}

pub fn point_tuple(t: &SmallGroup, mut idx: usize, len: usize) -> Vec<usize> {
    let n = t.order();
    let mut v = vec![0; len];
    for i in (0..len).rev() {
        v[i] = idx % n;
        idx /= n;
    }
    v
}

/// Normalised label of the coset D(full) for a full k-tuple.
pub fn normalise(t: &SmallGroup, full: &[usize]) -> Vec<usize> {
    let inv = t.inv(full[0]);
    full[1..].iter().map(|&x| t.mul(inv, x)).collect()
}

pub fn diagonal_group(t: &SmallGroup, k: usize, top: &PermGroup, with_outer: bool, cap: usize) -> Result<DiagonalGroup> {
    if !t.simple {
        return Err(Error::invalid(format!("{} is not a nonabelian simple group", t.name)));
    }
    if k < 2 {
        return Err(Error::invalid("diagonal groups need k >= 2"));
    }
    if top.degree() != k {
        return Err(Error::DegreeMismatch { expected: k, got: top.degree() });
    }
    let n = t.order();
    let total = (n as u128).checked_pow(k as u32 - 1).filter(|&x| x <= cap as u128).ok_or_else(|| Error::cap("diagonal degree", format!("{n}^{}", k - 1), cap))? as usize;
    let full_of = |idx: usize| {
        let mut f = vec![0usize];
        f.extend(point_tuple(t, idx, k - 1));
        f
    };
    let build = |f: &dyn Fn(&mut Vec<usize>)| -> Result<Perm> {
        let img = (0..total)
            .map(|i| {
                let mut full = full_of(i);
                f(&mut full);
                point_index(t, &normalise(t, &full))
            })
            .collect();
        Perm::from_images(img)
    };
    let mut gens = Vec::new();
    for s in t.generator_indices() {
        for j in 0..k {
            gens.push(build(&|full: &mut Vec<usize>| full[j] = t.mul(full[j], s))?);
        }
    }
    if with_outer {
        for n in &t.outer {
            let m = t.conjugation_map(n);
            gens.push(build(&|full: &mut Vec<usize>| {
                for x in full.iter_mut() {
                    *x = m[*x];
                }
            })?);
        }
    }
    for pi in top.nontrivial_generators() {
        gens.push(build(&|full: &mut Vec<usize>| {
            let old = full.clone();
            for j in 0..k {
                full[pi.image(j)] = old[j];
            }
        })?);
    }
    let primitive_expected = (k == 2 && top.is_trivial()) || top.is_primitive().unwrap_or(false);
    Ok(DiagonalGroup { group: PermGroup::from_parts(total, gens), k, primitive_expected })
}

/// Hol(T) on the elements of T: t -> g^-1 t for generators g, and the
/// automorphisms (inner and outer) applied to t.
pub fn holomorph(t: &SmallGroup) -> Result<PermGroup> {
    let n = t.order();
    let mut gens = Vec::new();
    for g in t.generator_indices() {
        let gi = t.inv(g);
        gens.push(Perm::from_images((0..n).map(|x| t.mul(gi, x)).collect())?);
    }
    for m in t.automorphism_maps(true) {
        gens.push(Perm::from_images(m)?);
    }
    Ok(PermGroup::from_parts(n, gens))
}
