//! Circulant matrices and their closed-form spectral data.

use std::fmt;

use num_integer::Integer;

use crate::digraph::critical_structure;
use crate::error::{Error, Result};
use crate::matrix::MaxMatrix;
use crate::scalar::{gcd_all, Scalar};

/// `Circ(a_0, …, a_{n-1})`, the matrix with `A[i, j] = a_{(j - i) mod n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Circulant {
    row: Vec<Scalar>,
}

impl Circulant {
    pub fn new(row: Vec<Scalar>) -> Result<Self> {
        if row.is_empty() {
            return Err(Error::EmptyDimension);
        }
        Ok(Circulant { row })
    }

    pub fn parse(row: &[&str]) -> Result<Self> {
        Self::new(row.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>()?)
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        Circulant {
            row: vec![Scalar::zero(); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut c = Self::zero(n);
        c.row[0] = Scalar::one();
        c
    }

    /// The circulant whose expansion is `a`, if `a` has circulant structure.
    pub fn from_matrix(a: &MaxMatrix) -> Option<Self> {
        let c = Circulant {
            row: a.row(0).to_vec(),
        };
        (c.expand() == *a).then_some(c)
    }

    pub fn dim(&self) -> usize {
        self.row.len()
    }

    pub fn row(&self) -> &[Scalar] {
        &self.row
    }

    pub fn entry(&self, k: usize) -> &Scalar {
        &self.row[k % self.row.len()]
    }

    pub fn is_zero(&self) -> bool {
        self.row.iter().all(Scalar::is_zero)
    }

    pub fn le(&self, other: &Circulant) -> bool {
        self.dim() == other.dim() && self.row.iter().zip(&other.row).all(|(a, b)| a <= b)
    }

    pub fn scale(&self, s: &Scalar) -> Circulant {
        Circulant {
            row: self.row.iter().map(|a| a * s).collect(),
        }
    }

    pub fn expand(&self) -> MaxMatrix {
        let n = self.dim();
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.row[(j + n - i) % n].clone())
            .collect();
        MaxMatrix::new(n, entries).expect("n >= 1")
    }

    /// Product on defining rows: `c_k = max_{i + j ≡ k} a_i · b_j`.
    pub fn circ_mul(&self, other: &Circulant) -> Result<Circulant> {
        let n = self.dim();
        if other.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: other.dim(),
            });
        }
        let mut row = vec![Scalar::zero(); n];
        for (i, a) in self.row.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.row.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                let k = (i + j) % n;
                if p > row[k] {
                    row[k] = p;
                }
            }
        }
        Ok(Circulant { row })
    }

    /// `t`-th power on defining rows; `t = 0` gives the identity.
    pub fn power(&self, t: u64) -> Circulant {
        let mut result = Circulant::identity(self.dim());
        let mut base = self.clone();
        let mut e = t;
        while e > 0 {
            if e & 1 == 1 {
                result = result.circ_mul(&base).expect("same dimension");
            }
            e >>= 1;
            if e > 0 {
                base = base.circ_mul(&base).expect("same dimension");
            }
        }
        result
    }

    /// `λ(A)` is the largest entry of the defining row.
    pub fn lambda(&self) -> Scalar {
        self.row.iter().fold(Scalar::zero(), |acc, a| Scalar::oplus(&acc, a))
    }

    /// Nonzero indices `p_1 > … > p_s` with `a_p = λ`. Empty for the zero
    /// circulant.
    pub fn p_indices(&self) -> Vec<usize> {
        let lambda = self.lambda();
        if lambda.is_zero() {
            return Vec::new();
        }
        (1..self.dim()).rev().filter(|&p| self.row[p] == lambda).collect()
    }

    /// `m = gcd(n, p_1, …, p_s)` and the node sets `{i, i+m, …}` (0-based).
    /// When only `a_0` attains `λ` the critical digraph is the `n` loops, so
    /// `m = n` with singleton components.
    pub fn critical_components(&self) -> Result<(usize, Vec<Vec<usize>>)> {
        if self.is_zero() {
            return Err(Error::ZeroCirculant);
        }
        let n = self.dim();
        let ps = self.p_indices();
        let m = gcd_all(ps.iter().copied().chain([n]));
        let sets = (0..m).map(|i| (0..n / m).map(|k| i + k * m).collect()).collect();
        Ok((m, sets))
    }

    /// The three gcd expressions for `per(A)`; `None` when `a_0 = λ`.
    pub fn period_formulas(&self) -> Result<Option<[usize; 3]>> {
        if self.is_zero() {
            return Err(Error::ZeroCirculant);
        }
        if self.row[0] == self.lambda() {
            return Ok(None);
        }
        let n = self.dim();
        let ps = self.p_indices();
        let p1 = ps[0];
        let head = n / n.gcd(&p1);
        let first = gcd_all(
            std::iter::once(head).chain(ps[1..].iter().map(|&pk| (p1 - pk) / p1.gcd(&pk))),
        );
        let second = gcd_all(
            std::iter::once(head)
                .chain(ps.windows(2).map(|w| (w[0] - w[1]) / w[0].gcd(&w[1]))),
        );
        let third = gcd_all(std::iter::once(head).chain((1..ps.len()).map(|k| {
            let g = gcd_all(ps[..=k].iter().copied().chain([n]));
            (p1 - ps[k]) / g
        })));
        Ok(Some([first, second, third]))
    }

    /// `per(A)`, checked against all three formulas and the cyclicity of the
    /// critical digraph computed from scratch.
    pub fn period(&self) -> Result<usize> {
        Ok(self.spectral()?.period)
    }

    pub fn spectral(&self) -> Result<CircSpectral> {
        let (m, sets) = self.critical_components()?;
        let formulas = self.period_formulas()?;
        let period = match formulas {
            None => 1,
            Some([a, b, c]) => {
                if a != b || b != c {
                    return Err(Error::InternalAssertion(format!(
                        "period formulas disagree for {self}: {a}, {b}, {c}"
                    )));
                }
                a
            }
        };
        let cs = critical_structure(&self.expand())?;
        if cs.components != sets {
            return Err(Error::InternalAssertion(format!(
                "critical components of {self} differ from the graph computation"
            )));
        }
        if cs.cyclicity_per_component.iter().any(|&c| c != period) {
            return Err(Error::InternalAssertion(format!(
                "period {period} of {self} differs from critical cyclicity {:?}",
                cs.cyclicity_per_component
            )));
        }
        Ok(CircSpectral {
            lambda: self.lambda(),
            p_indices: self.p_indices(),
            a0_is_lambda: self.row[0] == self.lambda(),
            component_count: m,
            component_node_sets: sets,
            period,
            period_formulas: formulas,
        })
    }

    /// The arithmetic-progression cycle `(i, i+t, i+2t, …)` with
    /// `t = (j - i) mod n`, every edge of which has weight `A[i, j]`.
    pub fn elementary_cycle(&self, i: usize, j: usize) -> Vec<usize> {
        let n = self.dim();
        let t = (j + n - i) % n;
        let len = if t == 0 { 1 } else { n / n.gcd(&t) };
        (0..len).map(|k| (i + k * t) % n).collect()
    }
}

impl fmt::Display for Circulant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Circ(")?;
        for (i, a) in self.row.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Circulant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircSpectral {
    pub lambda: Scalar,
    pub p_indices: Vec<usize>,
    pub a0_is_lambda: bool,
    pub component_count: usize,
    /// 0-based node sets.
    pub component_node_sets: Vec<Vec<usize>>,
    pub period: usize,
    pub period_formulas: Option<[usize; 3]>,
}
