//! Small finite fields GF(p^f) with table arithmetic.
//!
//! Element `e` encodes the polynomial whose coefficient of x^i is the i-th
//! base-p digit of `e`. For f > 1 the modulus is the least primitive monic
//! polynomial of degree f, polynomials being ordered by their encoding
//! (so x^2+x+2 for GF(9)); for f = 1 arithmetic is modulo p.

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: usize = 1024;

#[derive(Clone, Debug)]
pub struct Field {
    p: usize,
    f: usize,
    q: usize,
    modulus: Vec<usize>,
    add: Vec<u16>,
    neg: Vec<u16>,
    exp: Vec<u16>,
    log: Vec<u32>,
    primitive: usize,
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Splits q = p^f, or None if q is not a prime power.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut f) = (q, 0);
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

fn digits(mut e: usize, p: usize, f: usize) -> Vec<usize> {
    let mut d = vec![0; f];
    for x in d.iter_mut() {
        *x = e % p;
        e /= p;
    }
    d
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Product of two encoded elements modulo the monic polynomial with low
/// coefficients `m` (x^f = -sum m_i x^i).
fn poly_mulmod(a: usize, b: usize, p: usize, f: usize, m: &[usize]) -> usize {
    let da = digits(a, p, f);
    let db = digits(b, p, f);
    let mut prod = vec![0usize; 2 * f];
    for i in 0..f {
        for j in 0..f {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for k in (f..2 * f).rev() {
        let c = prod[k];
        if c != 0 {
            prod[k] = 0;
            for i in 0..f {
                prod[k - f + i] = (prod[k - f + i] + (p - m[i]) * c) % p;
            }
        }
    }
    undigits(&prod[..f], p)
}

fn mult_order(a: usize, q: usize, mul: impl Fn(usize, usize) -> usize) -> usize {
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = mul(x, a);
        k += 1;
        if k > q {
            return 0;
        }
    }
    k
}

impl Field {
    pub fn new(p: usize, f: usize) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::invalid("field exponent must be at least 1"));
        }
        let q = p.checked_pow(f as u32).filter(|&q| q <= MAX_FIELD_ORDER).ok_or_else(|| Error::cap("field order", format!("{p}^{f}"), MAX_FIELD_ORDER))?;
        let modulus = if f == 1 {
            vec![0]
        } else {
            // x is primitive modulo m exactly when m is a primitive polynomial
            let x = p;
            (0..q)
                .map(|e| digits(e, p, f))
                .find(|m| m[0] != 0 && mult_order(x, q, |a, b| poly_mulmod(a, b, p, f, m)) == q - 1)
                .expect("a primitive polynomial exists")
        };
        let mul = |a: usize, b: usize| if f == 1 { a * b % p } else { poly_mulmod(a, b, p, f, &modulus) };
        let primitive = (1..q).find(|&a| mult_order(a, q, mul) == q - 1).expect("multiplicative group is cyclic");
        let mut exp = vec![0u16; q - 1];
        let mut log = vec![u32::MAX; q];
        let mut x = 1usize;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x as u16;
            log[x] = i as u32;
            x = mul(x, primitive);
        }
        let mut add = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        for a in 0..q {
            let da = digits(a, p, f);
            neg[a] = undigits(&da.iter().map(|&x| (p - x) % p).collect::<Vec<_>>(), p) as u16;
            for b in 0..q {
                let db = digits(b, p, f);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p) as u16;
            }
        }
        Ok(Field { p, f, q, modulus, add, neg, exp, log, primitive })
    }

    pub fn of_order(q: usize) -> Result<Field> {
        let (p, f) = prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        Field::new(p, f)
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }
    pub fn degree(&self) -> usize {
        self.f
    }
    pub fn order(&self) -> usize {
        self.q
    }
    pub fn primitive(&self) -> usize {
        self.primitive
    }

    /// Low coefficients c_0..c_{f-1} of the monic modulus.
    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }
    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a] as usize + self.log[b] as usize) % (self.q - 1);
        self.exp[e] as usize
    }
    pub fn inv(&self, a: usize) -> Option<usize> {
        if a == 0 {
            return None;
        }
        let e = (self.q - 1 - self.log[a] as usize) % (self.q - 1);
        Some(self.exp[e] as usize)
    }
    pub fn div(&self, a: usize, b: usize) -> Option<usize> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }
    /// primitive^k
    pub fn prim_pow(&self, k: usize) -> usize {
        self.exp[k % (self.q - 1)] as usize
    }
    pub fn log(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.log[a] as usize)
    }
    pub fn pow(&self, a: usize, k: usize) -> usize {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        self.prim_pow(self.log[a] as usize * k % (self.q - 1))
    }
    /// Frobenius a -> a^p.
    pub fn frobenius(&self, a: usize) -> usize {
        self.pow(a, self.p)
    }
    pub fn is_square(&self, a: usize) -> bool {
        a == 0 || self.p == 2 || self.log[a] % 2 == 0
    }
    /// Elements of the subfield of order p^d (d dividing f).
    pub fn subfield(&self, d: usize) -> Vec<usize> {
        let r = self.p.pow(d as u32);
        (0..self.q).filter(|&a| self.pow(a, r) == a).collect()
    }
    /// Additive basis x^0, ..., x^{f-1} as encoded elements.
    pub fn additive_basis(&self) -> Vec<usize> {
        (0..self.f).map(|i| self.p.pow(i as u32)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf9_modulus_and_primitive() {
        let f = Field::new(3, 2).unwrap();
        // x^2 + x + 2
        assert_eq!(f.modulus(), &[2, 1]);
        assert_eq!(f.order(), 9);
        assert_eq!(f.primitive(), 3);
    }

    #[test]
    fn prime_fields() {
        assert_eq!(Field::new(2, 1).unwrap().primitive(), 1);
        assert_eq!(Field::new(7, 1).unwrap().primitive(), 3);
        assert!(Field::new(6, 1).is_err());
    }

    #[test]
    fn field_axioms_small() {
        for q in [4, 8, 9, 16, 25, 27] {
            let f = Field::of_order(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    for c in [0, 1, q - 1] {
                        let lhs = f.mul(a, f.add(b, c));
                        assert_eq!(lhs, f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            assert_eq!(f.subfield(1).len(), f.characteristic());
        }
    }
}
