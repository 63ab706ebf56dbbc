//! Transient and ultimate period of normalized powers and orbits.

use std::collections::HashMap;
use std::hash::Hash;

use crate::circulant::Circulant;
use crate::digraph::{associated_digraph, max_cycle_mean};
use crate::error::{Error, Result};
use crate::matrix::{MaxMatrix, MaxVector};
use crate::scalar::Scalar;

/// Search horizon for matrices that are not circulant. No transient bound
/// independent of the entries exists there, so the search is cut off here.
pub const GENERAL_HORIZON: usize = 4096;

/// `(A/λ)^{T+period} = (A/λ)^T` with both values minimal; powers are counted
/// from `t = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeriodicityInfo {
    pub transient: usize,
    pub period: usize,
}

/// `(n - 1)² + 1`, the transient bound for circulants.
pub fn circulant_transient_bound(n: usize) -> usize {
    (n - 1) * (n - 1) + 1
}

fn circulant_horizon(n: usize) -> usize {
    circulant_transient_bound(n) + n
}

/// First repetition in `s_1, s_2, …`, as (transient, period).
fn first_repeat<S, F>(first: S, mut step: F, horizon: usize) -> Option<PeriodicityInfo>
where
    S: Clone + Eq + Hash,
    F: FnMut(&S) -> S,
{
    let mut seen: HashMap<S, usize> = HashMap::new();
    let mut cur = first;
    for t in 1..=horizon + 1 {
        if let Some(&s) = seen.get(&cur) {
            return Some(PeriodicityInfo {
                transient: s,
                period: t - s,
            });
        }
        let next = step(&cur);
        seen.insert(cur, t);
        cur = next;
    }
    None
}

/// Checks that ultimate periodicity is guaranteed and returns the rational
/// `λ(A)`: every nontrivial strongly connected component must attain the
/// same cycle mean, and every edge must lie on a cycle.
pub fn periodicity_lambda(a: &MaxMatrix) -> Result<Scalar> {
    let cm = max_cycle_mean(a)
        .ok_or_else(|| Error::PeriodicityNotGuaranteed("λ(A) = 0".into()))?;
    let lambda = cm
        .value()
        .ok_or_else(|| Error::PeriodicityNotGuaranteed("λ(A) is irrational".into()))?;
    let g = associated_digraph(a);
    if !g.is_completely_reducible() {
        return Err(Error::PeriodicityNotGuaranteed(
            "matrix is not completely reducible".into(),
        ));
    }
    for comp in g.strongly_connected_components() {
        let v = comp[0];
        if !g.edges().iter().any(|&(i, _)| i == v) {
            continue;
        }
        let sub = restrict(a, &comp);
        let mean = max_cycle_mean(&sub).expect("nontrivial component has a cycle");
        if mean.cmp_scalar(&lambda) != std::cmp::Ordering::Equal {
            return Err(Error::PeriodicityNotGuaranteed(
                "components have different maximum cycle means".into(),
            ));
        }
    }
    Ok(lambda)
}

fn restrict(a: &MaxMatrix, nodes: &[usize]) -> MaxMatrix {
    let rows = nodes
        .iter()
        .map(|&i| nodes.iter().map(|&j| a.get(i, j).clone()).collect())
        .collect();
    MaxMatrix::from_rows(rows).expect("nonempty component")
}

/// Transient and period of `(A/λ)^t`. Circulants use the exact transient
/// bound and are cross-checked against the closed-form period; other
/// matrices must satisfy [`periodicity_lambda`] and are searched up to
/// [`GENERAL_HORIZON`].
pub fn transient_and_period(a: &MaxMatrix) -> Result<PeriodicityInfo> {
    if let Some(c) = Circulant::from_matrix(a) {
        return circulant_periodicity(&c);
    }
    transient_and_period_with_horizon(a, GENERAL_HORIZON)
}

pub fn transient_and_period_with_horizon(
    a: &MaxMatrix,
    horizon: usize,
) -> Result<PeriodicityInfo> {
    let lambda = periodicity_lambda(a)?;
    let normalized = a.div_scalar(&lambda)?;
    first_repeat(
        normalized.clone(),
        |p| p.mat_mul(&normalized).expect("same dimension"),
        horizon,
    )
    .ok_or_else(|| {
        Error::PeriodicityNotGuaranteed(format!("no repetition among the first {horizon} powers"))
    })
}

pub fn circulant_periodicity(c: &Circulant) -> Result<PeriodicityInfo> {
    if c.is_zero() {
        return Err(Error::PeriodicityNotGuaranteed("λ(A) = 0".into()));
    }
    let n = c.dim();
    let normalized = c.scale(&c.lambda().recip()?);
    let info = first_repeat(
        normalized.clone(),
        |p| p.circ_mul(&normalized).expect("same dimension"),
        circulant_horizon(n),
    )
    .ok_or_else(|| {
        Error::InternalAssertion(format!("{c}: no repetition within the transient bound"))
    })?;
    let per = c.period()?;
    if info.period != per {
        return Err(Error::InternalAssertion(format!(
            "{c}: measured period {} differs from closed form {per}",
            info.period
        )));
    }
    if info.transient > circulant_transient_bound(n) {
        return Err(Error::InternalAssertion(format!(
            "{c}: transient {} exceeds the bound",
            info.transient
        )));
    }
    Ok(info)
}

/// Minimal eventual period of `{(A/λ)^t ⊗ x}_{t ≥ 1}`.
pub fn orbit_period(a: &MaxMatrix, x: &MaxVector) -> Result<usize> {
    if a.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: x.dim(),
        });
    }
    let (lambda, horizon) = match Circulant::from_matrix(a) {
        Some(c) if !c.is_zero() => (c.lambda(), circulant_horizon(c.dim())),
        Some(_) => return Err(Error::PeriodicityNotGuaranteed("λ(A) = 0".into())),
        None => (periodicity_lambda(a)?, GENERAL_HORIZON),
    };
    let normalized = a.div_scalar(&lambda)?;
    let first = normalized.mat_vec(x)?;
    let info = first_repeat(
        first,
        |v| normalized.mat_vec(v).expect("same dimension"),
        horizon,
    )
    .ok_or_else(|| Error::InternalAssertion("orbit did not repeat within the horizon".into()))?;
    Ok(info.period)
}
