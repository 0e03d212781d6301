//! Permutations of {0, ..., n-1} stored as image vectors.
//!
//! Composition is left to right: `p.mul(&q)` maps `x` to `q(p(x))`, so
//! groups act on the right as in `x^(pq) = (x^p)^q`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { img: (0..n as u32).collect() }
    }

    /// Checked constructor from an image list.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::NotBijection(format!("image {x} out of range for degree {n}")));
            }
            if seen[x] {
                return Err(Error::NotBijection(format!("image {x} repeated")));
            }
            seen[x] = true;
        }
        Ok(Perm { img: images.into_iter().map(|x| x as u32).collect() })
    }

    /// Unchecked constructor; callers guarantee a bijection.
    pub(crate) fn from_vec_unchecked(img: Vec<u32>) -> Perm {
        debug_assert!(Perm::from_images(img.iter().map(|&x| x as usize).collect()).is_ok());
        Perm { img }
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for &x in c {
                if x >= n {
                    return Err(Error::PointOutOfRange { point: x, degree: n });
                }
                if used[x] {
                    return Err(Error::NotBijection(format!("point {x} appears twice in cycles")));
                }
                used[x] = true;
            }
            for i in 0..c.len() {
                img[c[i]] = c[(i + 1) % c.len()];
            }
        }
        Perm::from_images(img)
    }

    /// Parses "(0 1 2)(3 4)" style cycle notation; "()" is the identity.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Perm> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::NotBijection(format!("expected '(' in cycle notation: {s}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::NotBijection(format!("unclosed cycle: {s}")))?;
            let inner = &rest[1..close];
            let mut cyc = Vec::new();
            for tok in inner.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let x: usize = tok
                    .parse()
                    .map_err(|_| Error::NotBijection(format!("bad point '{tok}' in {s}")))?;
                cyc.push(x);
            }
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
            rest = rest[close + 1..].trim_start();
        }
        Perm::from_cycles(n, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.img
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.img.iter().map(|&x| x as usize).collect()
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { img: self.img.iter().map(|&x| other.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { img: inv }
    }

    /// `self * other^-1` without materialising the inverse twice.
    pub fn mul_inv(&self, other: &Perm) -> Perm {
        let inv = other.inverse();
        self.mul(&inv)
    }

    /// `g^-1 self g`
    pub fn conjugate(&self, g: &Perm) -> Perm {
        let mut out = vec![0u32; self.img.len()];
        for (x, &y) in self.img.iter().enumerate() {
            out[g.img[x] as usize] = g.img[y as usize];
        }
        Perm { img: out }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.img.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i)
    }

    pub fn fixed_points(&self) -> usize {
        self.img.iter().enumerate().filter(|(i, &x)| *i as u32 == x).count()
    }

    /// Cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.img.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.img[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.img.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.img[s] as usize == s {
                seen[s] = true;
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.img[x] as usize;
            }
            out.push(c);
        }
        out
    }

    /// Image of a point set as a sorted vector.
    pub fn image_set(&self, set: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().map(|&x| self.image(x)).collect();
        v.sort_unstable();
        v
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
