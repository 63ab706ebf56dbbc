//! Attraction cones: defining systems, membership, Kleene stars and
//! sampling-based inclusion checks.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circulant::Circulant;
use crate::digraph::max_cycle_mean;
use crate::error::{Error, Result};
use crate::matrix::{MaxMatrix, MaxVector};
use crate::periodicity::{circulant_periodicity, periodicity_lambda, transient_and_period};
use crate::scalar::Scalar;
use crate::solver::{default_iteration_cap, greatest_solution_leq, GreatestSolution};

/// `lhs · x = rhs · x` for max-linear forms over `x_1, …, x_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: MaxVector,
    pub rhs: MaxVector,
}

impl Equation {
    pub fn new(lhs: MaxVector, rhs: MaxVector) -> Result<Self> {
        if lhs.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: lhs.dim(),
                found: rhs.dim(),
            });
        }
        Ok(Equation { lhs, rhs })
    }

    /// Builds an equation from `(variable, coefficient)` terms; repeated
    /// variables on one side are absorbed into their largest coefficient.
    pub fn from_terms(n: usize, lhs: &[(usize, Scalar)], rhs: &[(usize, Scalar)]) -> Result<Self> {
        let side = |terms: &[(usize, Scalar)]| -> Result<MaxVector> {
            let mut v = MaxVector::zero(n);
            for (j, c) in terms {
                if *j >= n {
                    return Err(Error::IndexOutOfRange { index: *j, n });
                }
                let merged = v.get(*j).oplus(c);
                v.set(*j, merged);
            }
            Ok(v)
        };
        Equation::new(side(lhs)?, side(rhs)?)
    }

    pub fn dim(&self) -> usize {
        self.lhs.dim()
    }

    pub fn holds(&self, x: &MaxVector) -> bool {
        x.dot(&self.lhs) == x.dot(&self.rhs)
    }

    pub fn swapped(&self) -> Equation {
        Equation {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
        }
    }

    /// Both sides identical, so every `x` satisfies it.
    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    fn same_up_to_swap(&self, other: &Equation) -> bool {
        self == other || (self.lhs == other.rhs && self.rhs == other.lhs)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(f: &mut fmt::Formatter<'_>, v: &MaxVector) -> fmt::Result {
            let mut first = true;
            for (j, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " ⊕ ")?;
                }
                first = false;
                if c.is_one() {
                    write!(f, "x{}", j + 1)?;
                } else {
                    write!(f, "{c}·x{}", j + 1)?;
                }
            }
            if first {
                write!(f, "0")?;
            }
            Ok(())
        }
        side(f, &self.lhs)?;
        write!(f, " = ")?;
        side(f, &self.rhs)
    }
}

impl fmt::Debug for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSidedSystem {
    n: usize,
    equations: Vec<Equation>,
}

impl TwoSidedSystem {
    pub fn new(n: usize, equations: Vec<Equation>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        for e in &equations {
            if e.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: e.dim(),
                });
            }
        }
        Ok(TwoSidedSystem { n, equations })
    }

    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        TwoSidedSystem {
            n,
            equations: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn satisfied_by(&self, x: &MaxVector) -> bool {
        x.dim() == self.n && self.equations.iter().all(|e| e.holds(x))
    }

    pub fn concat<'a, I>(n: usize, systems: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a TwoSidedSystem>,
    {
        let mut equations = Vec::new();
        for s in systems {
            if s.n != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.n,
                });
            }
            equations.extend(s.equations.iter().cloned());
        }
        Ok(TwoSidedSystem { n, equations })
    }

    /// Drops trivial equations and repeats (also repeats with swapped sides),
    /// keeping first occurrences in order.
    pub fn deduplicated(&self) -> TwoSidedSystem {
        let mut kept: Vec<Equation> = Vec::new();
        for e in &self.equations {
            if e.is_trivial() || kept.iter().any(|k| k.same_up_to_swap(e)) {
                continue;
            }
            kept.push(e.clone());
        }
        TwoSidedSystem {
            n: self.n,
            equations: kept,
        }
    }

    /// Same equations regardless of order and orientation.
    pub fn same_equations(&self, other: &TwoSidedSystem) -> bool {
        let a = self.deduplicated();
        let b = other.deduplicated();
        a.n == b.n
            && a.len() == b.len()
            && a.equations.iter().all(|e| b.equations.iter().any(|f| f.same_up_to_swap(e)))
    }

    /// Distinct nonzero coefficients.
    pub fn coefficient_values(&self) -> BTreeSet<Scalar> {
        self.equations
            .iter()
            .flat_map(|e| e.lhs.iter().chain(e.rhs.iter()))
            .filter(|c| !c.is_zero())
            .cloned()
            .collect()
    }
}

impl fmt::Display for TwoSidedSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.equations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Exponent used in `λ A^t x = A^{t+1} x`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AttractionMode {
    /// `t = n²`, valid for every circulant.
    ExactN2,
    /// `t = T(A)`, the smallest valid exponent.
    #[default]
    MinTransient,
}

fn power_system(lambda: &Scalar, p: &MaxMatrix, q: &MaxMatrix) -> TwoSidedSystem {
    let n = p.dim();
    let equations = (0..n)
        .map(|i| Equation {
            lhs: p.row_vector(i).scale(lambda),
            rhs: q.row_vector(i),
        })
        .collect();
    TwoSidedSystem { n, equations }
}

/// The `n` equations `λ (A^t)_i· x = (A^{t+1})_i· x`. The zero circulant
/// gives the empty system.
pub fn attraction_system(c: &Circulant, mode: AttractionMode) -> Result<TwoSidedSystem> {
    let n = c.dim();
    if c.is_zero() {
        return Ok(TwoSidedSystem::empty(n));
    }
    let t = match mode {
        AttractionMode::ExactN2 => (n * n) as u64,
        AttractionMode::MinTransient => circulant_periodicity(c)?.transient as u64,
    };
    let p = c.power(t);
    let q = p.circ_mul(c)?;
    Ok(power_system(&c.lambda(), &p.expand(), &q.expand()))
}

/// Attraction system of a general matrix with `t = T(A)`. Requires the
/// hypotheses under which the powers are ultimately periodic.
pub fn general_attraction_system(a: &MaxMatrix) -> Result<TwoSidedSystem> {
    if a.is_zero() {
        return Ok(TwoSidedSystem::empty(a.dim()));
    }
    let lambda = periodicity_lambda(a)?;
    let t = transient_and_period(a)?.transient as u64;
    let p = a.power(t);
    let q = p.mat_mul(a)?;
    Ok(power_system(&lambda, &p, &q))
}

/// Row equalities of `(A/λ)^{n²}` within each critical component, chained
/// over consecutive members, with trivial and repeated equations removed.
pub fn reduced_attraction_system(c: &Circulant) -> Result<TwoSidedSystem> {
    let n = c.dim();
    let (_, components) = c.critical_components()?;
    let normalized = c.scale(&c.lambda().recip()?);
    let p = normalized.power((n * n) as u64).expand();
    let mut equations = Vec::new();
    for comp in components {
        for w in comp.windows(2) {
            equations.push(Equation {
                lhs: p.row_vector(w[0]),
                rhs: p.row_vector(w[1]),
            });
        }
    }
    Ok(TwoSidedSystem { n, equations }.deduplicated())
}

pub fn in_attraction_cone(c: &Circulant, x: &MaxVector) -> Result<bool> {
    in_attraction_cone_with_mode(c, x, AttractionMode::default())
}

pub fn in_attraction_cone_with_mode(
    c: &Circulant,
    x: &MaxVector,
    mode: AttractionMode,
) -> Result<bool> {
    check_dim(c.dim(), x.dim())?;
    Ok(attraction_system(c, mode)?.satisfied_by(x))
}

pub fn in_attraction_cone_general(a: &MaxMatrix, x: &MaxVector) -> Result<bool> {
    check_dim(a.dim(), x.dim())?;
    Ok(general_attraction_system(a)?.satisfied_by(x))
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `A* = I ⊕ A ⊕ … ⊕ A^{n-1}`, defined when `λ(A) ≤ 1`.
pub fn kleene_star(a: &MaxMatrix) -> Result<MaxMatrix> {
    if let Some(cm) = max_cycle_mean(a) {
        if cm.cmp_scalar(&Scalar::one()) == Ordering::Greater {
            return Err(Error::KleeneStarUndefined);
        }
    }
    let n = a.dim();
    let mut acc = MaxMatrix::identity(n);
    let mut p = MaxMatrix::identity(n);
    for _ in 1..n {
        p = p.mat_mul(a)?;
        acc = acc.oplus(&p)?;
    }
    Ok(acc)
}

/// Whether `A` is a Kleene star. Both characterizations are evaluated:
/// `A² = A` with unit diagonal, and unit diagonal with
/// `A[i, j] · A[j, k] ≤ A[i, k]`.
pub fn is_kleene_star(a: &MaxMatrix) -> bool {
    let n = a.dim();
    let unit_diag = (0..n).all(|i| a.get(i, i).is_one());
    let idempotent = unit_diag && a.mat_mul(a).expect("square") == *a;
    let triangle = unit_diag
        && (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| &(a.get(i, j) * a.get(j, k)) <= a.get(i, k)))
        });
    assert_eq!(idempotent, triangle, "Kleene star characterizations disagree");
    idempotent
}

/// Removes every term whose coefficient is strictly smaller than the same
/// variable's coefficient on the other side. Such a term can never attain
/// the maximum when the equation holds, so the solution set is unchanged.
pub fn cancel_reduce(s: &TwoSidedSystem) -> TwoSidedSystem {
    let equations = s
        .equations
        .iter()
        .map(|e| {
            let mut lhs = e.lhs.clone();
            let mut rhs = e.rhs.clone();
            for j in 0..s.n {
                match e.lhs.get(j).cmp(e.rhs.get(j)) {
                    Ordering::Greater => rhs.set(j, Scalar::zero()),
                    Ordering::Less => lhs.set(j, Scalar::zero()),
                    Ordering::Equal => {}
                }
            }
            Equation { lhs, rhs }
        })
        .collect();
    TwoSidedSystem { n: s.n, equations }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InclusionVerdict {
    /// Every sampled member of `Attr(A)` lies in `Attr(B)`.
    Consistent { samples: usize },
    /// A member of `Attr(A)` outside `Attr(B)`, verified against both systems.
    Counterexample(MaxVector),
}

/// Samples `Attr(A)` and tests each member against `Attr(B)`. Members are
/// greatest solutions of the attraction system of `A` under random upper
/// bounds, random max-combinations of earlier members, and the all-ones
/// vector, which is an eigenvector of every circulant.
pub fn check_attraction_inclusion(
    a: &Circulant,
    b: &Circulant,
    trials: usize,
    seed: u64,
) -> Result<InclusionVerdict> {
    check_dim(a.dim(), b.dim())?;
    let sa = attraction_system(a, AttractionMode::default())?;
    let sb = attraction_system(b, AttractionMode::default())?;
    let pool = sampling_pool(a.row().iter().chain(b.row()));
    let ones = MaxVector::filled(a.dim(), Scalar::one());
    sample_inclusion(&sa, &sb, &pool, Some(ones), trials, seed)
}

/// [`check_attraction_inclusion`] for general matrices satisfying the
/// periodicity hypotheses.
pub fn check_attraction_inclusion_general(
    a: &MaxMatrix,
    b: &MaxMatrix,
    trials: usize,
    seed: u64,
) -> Result<InclusionVerdict> {
    check_dim(a.dim(), b.dim())?;
    let sa = general_attraction_system(a)?;
    let sb = general_attraction_system(b)?;
    let pool = sampling_pool(a.entries().iter().chain(b.entries()));
    sample_inclusion(&sa, &sb, &pool, None, trials, seed)
}

/// Nonzero entries, their reciprocals, and 1.
fn sampling_pool<'a, I: Iterator<Item = &'a Scalar>>(entries: I) -> Vec<Scalar> {
    let mut set = BTreeSet::from([Scalar::one()]);
    for e in entries.filter(|e| !e.is_zero()) {
        set.insert(e.clone());
        set.insert(e.recip().expect("nonzero"));
    }
    set.into_iter().collect()
}

fn sample_inclusion(
    sa: &TwoSidedSystem,
    sb: &TwoSidedSystem,
    pool: &[Scalar],
    seed_member: Option<MaxVector>,
    trials: usize,
    seed: u64,
) -> Result<InclusionVerdict> {
    let n = sa.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = default_iteration_cap(sa);
    let mut members: Vec<MaxVector> = Vec::new();
    let mut samples = 0usize;

    let test = |x: MaxVector, members: &mut Vec<MaxVector>| -> Result<Option<InclusionVerdict>> {
        if !sa.satisfied_by(&x) {
            return Err(Error::InternalAssertion(format!("sampled {x} is not a member")));
        }
        if !sb.satisfied_by(&x) {
            return Ok(Some(InclusionVerdict::Counterexample(x)));
        }
        members.push(x);
        Ok(None)
    };

    if let Some(x) = seed_member {
        if let Some(v) = test(x, &mut members)? {
            return Ok(v);
        }
        samples += 1;
    }
    while samples < trials {
        let x = if members.len() >= 2 && rng.gen_bool(0.3) {
            let u = members.choose(&mut rng).expect("nonempty");
            let v = members.choose(&mut rng).expect("nonempty");
            let alpha = pool.choose(&mut rng).expect("nonempty pool");
            let beta = pool.choose(&mut rng).expect("nonempty pool");
            u.scale(alpha).oplus(&v.scale(beta))?
        } else {
            let upper = MaxVector::new(
                (0..n)
                    .map(|_| pool.choose(&mut rng).expect("nonempty pool").clone())
                    .collect(),
            )?;
            match greatest_solution_leq(sa, &upper, cap)? {
                GreatestSolution::Solution(x) => x,
                GreatestSolution::CapExceeded { .. } => {
                    samples += 1;
                    continue;
                }
            }
        };
        samples += 1;
        if let Some(v) = test(x, &mut members)? {
            return Ok(v);
        }
    }
    Ok(InclusionVerdict::Consistent { samples })
}
