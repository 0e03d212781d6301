//! Probability that random tuples fail to be bases, the prime-order
//! fixed point bound and the derived thresholds.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bases;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

pub const EXACT_TUPLE_CAP: u64 = 10_000_000;
pub const QHAT_ORDER_CAP: u64 = 10_000_000;

fn ratio(a: impl Into<BigInt>, b: impl Into<BigInt>) -> BigRational {
    BigRational::new(a.into(), b.into())
}

pub fn fixed_point_ratio(g: &PermGroup, x: &Perm) -> Result<BigRational> {
    if !g.contains(x)? {
        return Err(Error::NotInGroup);
    }
    Ok(ratio(x.fixed_points() as u64, g.degree() as u64))
}

/// Exact Q(G,k): the proportion of k-tuples that are not bases.
pub fn q_exact(g: &PermGroup, k: usize) -> Result<BigRational> {
    let n = g.degree() as u64;
    let total = (n as u128).checked_pow(k as u32).filter(|&t| t <= EXACT_TUPLE_CAP as u128);
    let Some(total) = total else {
        return Err(Error::cap("tuples for exact Q (use the sampled estimate)", format!("{n}^{k}"), EXACT_TUPLE_CAP));
    };
    let count = bases::count_ordered_bases(g, k);
    let total = BigUint::from(total as u64);
    Ok(BigRational::one() - BigRational::new(BigInt::from(count), BigInt::from(total)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub k: usize,
    pub samples: u64,
    pub failures: u64,
    pub estimate: f64,
    /// Wilson score 95% interval.
    pub low: f64,
    pub high: f64,
    pub seed: u64,
}

impl McEstimate {
    pub fn half_width(&self) -> f64 {
        (self.high - self.low) / 2.0
    }
}

/// Sampled Q(G,k) with ChaCha8 seeded by `seed`.
pub fn q_mc(g: &PermGroup, k: usize, samples: u64, seed: u64) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    let n = g.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    if !g.order().is_one() {
        for _ in 0..samples {
            let t: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
            if !g.is_base(&t) {
                failures += 1;
            }
        }
    }
    let (lo, hi) = wilson(failures, samples);
    Ok(McEstimate { k, samples, failures, estimate: failures as f64 / samples as f64, low: lo, high: hi, seed })
}

fn wilson(x: u64, n: u64) -> (f64, f64) {
    let z = 1.959_963_984_540_054_f64;
    let n = n as f64;
    let p = x as f64 / n;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// True iff every cycle of x has length 1 or p for a single prime p and
/// x is not the identity.
pub fn has_prime_order(x: &Perm) -> bool {
    let mut p = 0;
    for l in x.cycle_type() {
        if l == 1 {
            continue;
        }
        if p == 0 {
            if !crate::field::is_prime(l) {
                return false;
            }
            p = l;
        } else if l != p {
            return false;
        }
    }
    p != 0
}

/// Number of prime-order elements of G with each fixed point count.
pub fn prime_order_fixed_point_histogram(g: &PermGroup) -> Result<BTreeMap<usize, u64>> {
    let order = g.order();
    if order > BigUint::from(QHAT_ORDER_CAP) {
        return Err(Error::cap("group order for prime-order element enumeration", order, QHAT_ORDER_CAP));
    }
    let mut hist = BTreeMap::new();
    g.for_each_element(|x| {
        if has_prime_order(x) {
            *hist.entry(x.fixed_points()).or_insert(0u64) += 1;
        }
    });
    Ok(hist)
}

/// Sum over prime-order x in G of fpr(x)^k.
pub fn qhat(g: &PermGroup, k: usize) -> Result<BigRational> {
    let hist = prime_order_fixed_point_histogram(g)?;
    Ok(qhat_from_histogram(&hist, g.degree(), k))
}

pub fn qhat_from_histogram(hist: &BTreeMap<usize, u64>, n: usize, k: usize) -> BigRational {
    let mut num = BigInt::zero();
    for (&f, &c) in hist {
        num += BigInt::from(c) * BigInt::from(f).pow(k as u32);
    }
    BigRational::new(num, BigInt::from(n).pow(k as u32))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    /// None when Q = 0 (every m qualifies).
    pub t: Option<u64>,
    pub r: Option<u64>,
    /// r >= 2: any r vertices have a common neighbour, diameter <= 2 and
    /// val > |Ω|(1 - 1/r). These are predictions to be checked.
    pub predicts_diameter_two: bool,
}

/// t = max{m : Q < 1/m} and r = max{t, (k-1)(t-1)}.
pub fn lemma24_thresholds(k: usize, q: &BigRational) -> Result<Thresholds> {
    if q.is_negative() || *q >= BigRational::one() {
        return Err(Error::invalid("Q must lie in [0, 1)"));
    }
    if q.is_zero() {
        return Ok(Thresholds { t: None, r: None, predicts_diameter_two: true });
    }
    // Q < 1/m  iff  m < 1/Q  iff  m <= ceil(1/Q) - 1
    let inv = q.recip();
    let c = inv.ceil().to_integer();
    let t = (c - BigInt::one()).to_u64().unwrap_or(u64::MAX);
    let r = t.max((k as u64).saturating_sub(1).saturating_mul(t.saturating_sub(1)));
    Ok(Thresholds { t: Some(t), r: Some(r), predicts_diameter_two: r >= 2 })
}

pub fn lemma24_from_f64(k: usize, q: f64) -> Result<Thresholds> {
    let r = BigRational::from_float(q).ok_or_else(|| Error::invalid("Q is not finite"))?;
    lemma24_thresholds(k, &r)
}

/// Checks 1 - Q(G,b) <= (val/n)^(b-1) exactly.
pub fn valency_bound_holds(q: &BigRational, val: usize, n: usize, b: usize) -> bool {
    let lhs = BigRational::one() - q;
    let rhs = BigRational::new(BigInt::from(val).pow(b as u32 - 1), BigInt::from(n).pow(b as u32 - 1));
    lhs <= rhs
}

/// val > n (1 - 1/r).
pub fn valency_prediction_holds(val: usize, n: usize, r: u64) -> bool {
    let lhs = BigRational::from_integer(BigInt::from(val));
    let rhs = BigRational::from_integer(BigInt::from(n)) * (BigRational::one() - ratio(1, r));
    lhs > rhs
}

pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        let g = q.numer().gcd(q.denom());
        debug_assert!(g.is_one());
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
