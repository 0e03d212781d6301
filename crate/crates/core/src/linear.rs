//! Matrices over small fields and the linear/projective actions built on
//! them. Vectors are rows and matrices act on the right.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub n: usize,
    pub e: Vec<usize>,
}

impl Mat {
    pub fn identity(n: usize) -> Mat {
        let mut e = vec![0; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        Mat { n, e }
    }

    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Mat> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix is not square"));
        }
        Ok(Mat { n, e: rows.into_iter().flatten().collect() })
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> usize {
        self.e[i * self.n + j]
    }

    pub fn mul(&self, other: &Mat, k: &Field) -> Mat {
        let n = self.n;
        let mut e = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for l in 0..n {
                    s = k.add(s, k.mul(self.at(i, l), other.at(l, j)));
                }
                e[i * n + j] = s;
            }
        }
        Mat { n, e }
    }

    pub fn det(&self, k: &Field) -> usize {
        let n = self.n;
        let mut a = self.e.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| a[r * n + c] != 0) else { return 0 };
            if r != c {
                for j in 0..n {
                    a.swap(r * n + j, c * n + j);
                }
                det = k.neg(det);
            }
            let piv = a[c * n + c];
            det = k.mul(det, piv);
            let pinv = k.inv(piv).unwrap();
            for r2 in c + 1..n {
                let fac = k.mul(a[r2 * n + c], pinv);
                if fac != 0 {
                    for j in c..n {
                        a[r2 * n + j] = k.sub(a[r2 * n + j], k.mul(fac, a[c * n + j]));
                    }
                }
            }
        }
        det
    }

    pub fn is_invertible(&self, k: &Field) -> bool {
        self.det(k) != 0
    }

    pub fn apply_field_map(&self, f: impl Fn(usize) -> usize) -> Mat {
        Mat { n: self.n, e: self.e.iter().map(|&x| f(x)).collect() }
    }

    /// Row vector times matrix.
    pub fn act(&self, v: &[usize], k: &Field) -> Vec<usize> {
        let n = self.n;
        (0..n)
            .map(|j| (0..n).fold(0, |s, i| k.add(s, k.mul(v[i], self.at(i, j)))))
            .collect()
    }
}

/// Elementary matrix I + c E_ij.
pub fn elementary(n: usize, i: usize, j: usize, c: usize) -> Mat {
    let mut m = Mat::identity(n);
    m.e[i * n + j] = c;
    m
}

pub fn diagonal(entries: &[usize]) -> Mat {
    let n = entries.len();
    let mut m = Mat { n, e: vec![0; n * n] };
    for (i, &d) in entries.iter().enumerate() {
        m.e[i * n + i] = d;
    }
    m
}

/// Generators of SL_n(q): elementary transvections over an additive basis.
pub fn sl_generators(n: usize, k: &Field) -> Vec<Mat> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for &c in &k.additive_basis() {
                    out.push(elementary(n, i, j, c));
                }
            }
        }
    }
    out
}

/// Generators of GL_n(q).
pub fn gl_generators(n: usize, k: &Field) -> Vec<Mat> {
    let mut out = sl_generators(n, k);
    let mut d = vec![1; n];
    d[0] = k.primitive();
    out.push(diagonal(&d));
    out
}

/// Vectors of length n in lexicographic order (first coordinate most
/// significant).
pub fn vector_index(v: &[usize], q: usize) -> usize {
    v.iter().fold(0, |acc, &x| acc * q + x)
}

pub fn index_vector(mut idx: usize, n: usize, q: usize) -> Vec<usize> {
    let mut v = vec![0; n];
    for i in (0..n).rev() {
        v[i] = idx % q;
        idx /= q;
    }
    v
}

/// Action of a matrix on all q^n vectors.
pub fn vector_perm(m: &Mat, k: &Field) -> Perm {
    let (n, q) = (m.n, k.order());
    let total = q.pow(n as u32);
    let img = (0..total).map(|i| vector_index(&m.act(&index_vector(i, n, q), k), q)).collect();
    Perm::from_images(img).expect("invertible matrix permutes vectors")
}

/// Action on the q^n - 1 nonzero vectors (vector index minus one).
pub fn nonzero_vector_perm(m: &Mat, k: &Field) -> Perm {
    let (n, q) = (m.n, k.order());
    let total = q.pow(n as u32);
    let img = (1..total).map(|i| vector_index(&m.act(&index_vector(i, n, q), k), q) - 1).collect();
    Perm::from_images(img).expect("invertible matrix permutes nonzero vectors")
}

/// Normalised representatives of the 1-spaces (first nonzero coordinate 1),
/// in lexicographic order.
pub fn projective_points(n: usize, k: &Field) -> Vec<Vec<usize>> {
    let q = k.order();
    (1..q.pow(n as u32))
        .map(|i| index_vector(i, n, q))
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

pub fn normalise(v: &[usize], k: &Field) -> Vec<usize> {
    match v.iter().find(|&&x| x != 0) {
        None => v.to_vec(),
        Some(&lead) => {
            let li = k.inv(lead).unwrap();
            v.iter().map(|&x| k.mul(x, li)).collect()
        }
    }
}

/// Permutation of projective points induced by a semilinear map
/// v -> (v^sigma) M, where sigma is given on field elements.
pub fn projective_perm(points: &[Vec<usize>], m: &Mat, sigma: Option<&dyn Fn(usize) -> usize>, k: &Field) -> Perm {
    let index: std::collections::HashMap<&[usize], usize> = points.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let img = points
        .iter()
        .map(|v| {
            let w: Vec<usize> = match sigma {
                Some(s) => v.iter().map(|&x| s(x)).collect(),
                None => v.clone(),
            };
            let u = normalise(&m.act(&w, k), k);
            index[u.as_slice()]
        })
        .collect();
    Perm::from_images(img).expect("invertible map permutes points")
}

/// Parses a matrix file: rows of field-element indices, blank lines
/// separating matrices, '#' comments.
pub fn parse_matrices(text: &str, n: usize, k: &Field) -> Result<Vec<Mat>> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let flush = |rows: &mut Vec<Vec<usize>>, out: &mut Vec<Mat>| -> Result<()> {
        if rows.is_empty() {
            return Ok(());
        }
        if rows.len() != n {
            return Err(Error::invalid(format!("matrix has {} rows, expected {n}", rows.len())));
        }
        let m = Mat::from_rows(std::mem::take(rows))?;
        if m.e.iter().any(|&x| x >= k.order()) {
            return Err(Error::invalid("matrix entry outside the field"));
        }
        if !m.is_invertible(k) {
            return Err(Error::invalid("singular matrix"));
        }
        out.push(m);
        Ok(())
    };
    for line in text.lines() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            flush(&mut rows, &mut out)?;
            continue;
        }
        let row: std::result::Result<Vec<usize>, _> = line.split_whitespace().map(|t| t.parse::<usize>()).collect();
        let row = row.map_err(|_| Error::invalid(format!("bad matrix row '{line}'")))?;
        if row.len() != n {
            return Err(Error::invalid(format!("matrix row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
        if rows.len() == n {
            flush(&mut rows, &mut out)?;
        }
    }
    flush(&mut rows, &mut out)?;
    Ok(out)
}

pub fn format_matrices(mats: &[Mat], comment: &str) -> String {
    let mut s = String::new();
    for line in comment.lines() {
        s.push_str(&format!("# {line}\n"));
    }
    for (i, m) in mats.iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        for r in 0..m.n {
            let row: Vec<String> = (0..m.n).map(|c| m.at(r, c).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
    }
    s
}
