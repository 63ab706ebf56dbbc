//! Dense max-times matrices and vectors.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MaxVector {
    entries: Vec<Scalar>,
}

impl MaxVector {
    pub fn new(entries: Vec<Scalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyDimension);
        }
        Ok(MaxVector { entries })
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        MaxVector {
            entries: vec![Scalar::zero(); n],
        }
    }

    pub fn filled(n: usize, value: Scalar) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        MaxVector {
            entries: vec![value; n],
        }
    }

    /// The `k`-th unit vector (0-based).
    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = Self::zero(n);
        v.entries[k] = Scalar::one();
        v
    }

    pub fn from_fracs(pairs: &[(u64, u64)]) -> Result<Self> {
        let entries = pairs
            .iter()
            .map(|&(p, q)| Scalar::ratio(p, q))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: Scalar) {
        self.entries[i] = value;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.entries.iter()
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> MaxVector {
        MaxVector {
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    /// Entrywise maximum.
    pub fn oplus(&self, other: &MaxVector) -> Result<MaxVector> {
        check_dim(self.dim(), other.dim())?;
        Ok(MaxVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.oplus(b))
                .collect(),
        })
    }

    /// Max-linear form `⊕_j coeffs_j · self_j`.
    pub fn dot(&self, coeffs: &MaxVector) -> Scalar {
        debug_assert_eq!(self.dim(), coeffs.dim());
        max_dot(coeffs.entries(), self.entries())
    }

    pub fn le(&self, other: &MaxVector) -> bool {
        self.dim() == other.dim() && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    pub fn max_entry(&self) -> Scalar {
        self.entries.iter().fold(Scalar::zero(), |acc, e| Scalar::oplus(&acc, e))
    }
}

impl fmt::Debug for MaxVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.entries).finish()
    }
}

impl fmt::Display for MaxVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn max_dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut best = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let p = x * y;
        if p > best {
            best = p;
        }
    }
    best
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Square `n × n` matrix over the max-times semiring, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MaxMatrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl MaxMatrix {
    pub fn new(n: usize, entries: Vec<Scalar>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        check_dim(n * n, entries.len())?;
        Ok(MaxMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            check_dim(n, row.len())?;
            entries.extend(row);
        }
        Ok(MaxMatrix { n, entries })
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        MaxMatrix {
            n,
            entries: vec![Scalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn row_vector(&self, i: usize) -> MaxVector {
        MaxVector {
            entries: self.row(i).to_vec(),
        }
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn max_entry(&self) -> Scalar {
        self.entries.iter().fold(Scalar::zero(), |acc, e| Scalar::oplus(&acc, e))
    }

    /// `(A ⊗ B)_{ik} = max_j A_{ij} · B_{jk}`.
    pub fn mat_mul(&self, other: &MaxMatrix) -> Result<MaxMatrix> {
        check_dim(self.n, other.n)?;
        let n = self.n;
        let mut out = vec![Scalar::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let b = other.get(j, k);
                    if b.is_zero() {
                        continue;
                    }
                    let p = a * b;
                    if p > out[i * n + k] {
                        out[i * n + k] = p;
                    }
                }
            }
        }
        Ok(MaxMatrix { n, entries: out })
    }

    /// Entrywise maximum `A ⊕ B`.
    pub fn oplus(&self, other: &MaxMatrix) -> Result<MaxMatrix> {
        check_dim(self.n, other.n)?;
        Ok(MaxMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.oplus(b))
                .collect(),
        })
    }

    /// Max-algebraic power by repeated squaring. `t = 0` gives the identity.
    pub fn power(&self, t: u64) -> MaxMatrix {
        let mut result: Option<MaxMatrix> = None;
        let mut base = self.clone();
        let mut e = t;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mat_mul(&base).expect("same dimension"),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mat_mul(&base).expect("same dimension");
            }
        }
        result.unwrap_or_else(|| MaxMatrix::identity(self.n))
    }

    pub fn mat_vec(&self, x: &MaxVector) -> Result<MaxVector> {
        check_dim(self.n, x.dim())?;
        Ok(MaxVector {
            entries: (0..self.n).map(|i| max_dot(self.row(i), x.entries())).collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> MaxMatrix {
        MaxMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn div_scalar(&self, s: &Scalar) -> Result<MaxMatrix> {
        let inv = s.recip()?;
        Ok(self.scale(&inv))
    }

    /// Entrywise `≤`.
    pub fn le(&self, other: &MaxMatrix) -> bool {
        self.n == other.n && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }
}

impl fmt::Debug for MaxMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Scalar]> = (0..self.n).map(|i| self.row(i)).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// `(x, A⊗x, …, A^horizon⊗x)`.
pub fn orbit(a: &MaxMatrix, x: &MaxVector, horizon: usize) -> Result<Vec<MaxVector>> {
    check_dim(a.dim(), x.dim())?;
    let mut out = Vec::with_capacity(horizon + 1);
    out.push(x.clone());
    for _ in 0..horizon {
        let next = a.mat_vec(out.last().expect("nonempty"))?;
        out.push(next);
    }
    Ok(out)
}
