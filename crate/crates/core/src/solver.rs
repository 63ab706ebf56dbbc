//! Greatest solutions and box feasibility of two-sided max-linear systems.
//!
//! The greatest solution below `u` is the greatest fixed point of
//! `x ↦ x ∧ min_{e_j > 0} (f·x)/e_j ∧ min_{f_j > 0} (e·x)/f_j`, reached by
//! iterating downwards from `u`. The iteration may converge only in the
//! limit (e.g. `x₁ ⊕ x₂ = 2x₁ ⊕ 2x₂`), so runs in which every coordinate
//! shrinks geometrically with a fixed pattern of active terms are jumped
//! ahead exactly: either to the last step on which that pattern provably
//! persists, or to the limit when it persists forever.

use crate::attraction::TwoSidedSystem;
use crate::error::{Error, Result};
use crate::interval::IntervalBox;
use crate::matrix::MaxVector;
use crate::scalar::Scalar;

/// Largest number of grid points the fallback search visits.
pub const GRID_LIMIT: usize = 250_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GreatestSolution {
    Solution(MaxVector),
    /// The iteration did not stabilize; `last` is an upper bound on the
    /// greatest solution.
    CapExceeded { last: MaxVector },
}

/// `10 · n · (number of distinct nonzero coefficients)`.
pub fn default_iteration_cap(s: &TwoSidedSystem) -> usize {
    10 * s.dim() * s.coefficient_values().len().max(1)
}

/// One bound on `x_j`: the maximum of `w · x_i` over its terms (zero when
/// there are none).
type Bound = Vec<(Scalar, usize)>;

struct Residuation {
    bounds: Vec<Vec<Bound>>,
}

impl Residuation {
    fn new(s: &TwoSidedSystem) -> Self {
        let n = s.dim();
        let mut bounds: Vec<Vec<Bound>> = (0..n).map(|j| vec![vec![(Scalar::one(), j)]]).collect();
        for e in s.equations() {
            for (this, other) in [(&e.lhs, &e.rhs), (&e.rhs, &e.lhs)] {
                for (j, bounds_j) in bounds.iter_mut().enumerate() {
                    let c = this.get(j);
                    if c.is_zero() {
                        continue;
                    }
                    let b: Bound = other
                        .iter()
                        .enumerate()
                        .filter(|(_, w)| !w.is_zero())
                        .map(|(i, w)| (w / c, i))
                        .collect();
                    if !bounds_j.contains(&b) {
                        bounds_j.push(b);
                    }
                }
            }
        }
        Residuation { bounds }
    }

    fn eval(b: &Bound, x: &MaxVector) -> Scalar {
        b.iter()
            .map(|(w, i)| w * x.get(*i))
            .max()
            .unwrap_or_else(Scalar::zero)
    }

    fn step(&self, x: &MaxVector) -> MaxVector {
        let entries = self
            .bounds
            .iter()
            .map(|bs| bs.iter().map(|b| Self::eval(b, x)).min().expect("x_j bounds itself"))
            .collect();
        MaxVector::new(entries).expect("n >= 1")
    }

    /// Exact jump along a trajectory window `xs = [x_k, …, x_{k+p}]` whose
    /// per-period ratios are `rho = x_{k+p} / x_k`. Returns the point reached
    /// and whether it is the limit.
    fn accelerate(&self, xs: &[MaxVector], rho: &[Scalar]) -> Option<(MaxVector, bool)> {
        let n = rho.len();
        let mut horizon: Option<u64> = None; // None = unbounded
        let mut tighten = |h: Option<u64>| {
            if let Some(h) = h {
                horizon = Some(horizon.map_or(h, |cur| cur.min(h)));
            }
        };
        for phase in xs.windows(2) {
            let (x, next) = (&phase[0], &phase[1]);
            for j in 0..n {
                if x.get(j).is_zero() {
                    continue;
                }
                let target = next.get(j);
                // Active term of each bound, preferring the fastest-growing
                // one among ties.
                let mut selected = false;
                for b in &self.bounds[j] {
                    let active = b
                        .iter()
                        .map(|(w, i)| (w * x.get(*i), *i))
                        .filter(|(v, _)| !v.is_zero())
                        .max_by(|(v1, i1), (v2, i2)| {
                            v1.cmp(v2).then_with(|| rho[*i1].cmp(&rho[*i2]))
                        });
                    let (value, i) = active?;
                    let is_selected = !selected && value == *target && rho[i] == rho[j];
                    if is_selected {
                        selected = true;
                        // Every other term of this bound stays at or below
                        // the active one.
                        for (w, k) in b {
                            let v = w * x.get(*k);
                            tighten(first_violation(&v, &rho[*k], &value, &rho[i]));
                        }
                    } else {
                        // The bound stays at or above x_j's trajectory.
                        tighten(first_violation(target, &rho[j], &value, &rho[i]));
                    }
                }
                if !selected {
                    return None;
                }
            }
        }
        let start = &xs[0];
        match horizon {
            None => {
                let limit = start
                    .iter()
                    .zip(rho)
                    .map(|(v, r)| if r.is_one() { v.clone() } else { Scalar::zero() })
                    .collect();
                Some((MaxVector::new(limit).expect("n >= 1"), true))
            }
            Some(m) if m >= 2 => {
                let m = u32::try_from(m).unwrap_or(u32::MAX);
                let jumped = start.iter().zip(rho).map(|(v, r)| v * &r.pow(m)).collect();
                Some((MaxVector::new(jumped).expect("n >= 1"), false))
            }
            Some(_) => None,
        }
    }
}

/// Smallest `m ≥ 0` with `α r^m > β s^m`, given that it fails at `m = 0`.
/// `None` when `α r^m ≤ β s^m` for every `m`.
fn first_violation(alpha: &Scalar, r: &Scalar, beta: &Scalar, s: &Scalar) -> Option<u64> {
    debug_assert!(alpha <= beta);
    if alpha.is_zero() || r <= s {
        return None;
    }
    if s.is_zero() {
        return Some(1);
    }
    let q = r / s;
    let bound = beta / alpha;
    let exceeds = |m: u64| q.pow(m as u32) > bound;
    let mut hi = 1u64;
    while !exceeds(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if exceeds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Greatest `x ≤ upper` satisfying `s`. An accelerated jump counts as one
/// iteration.
pub fn greatest_solution_leq(
    s: &TwoSidedSystem,
    upper: &MaxVector,
    iteration_cap: usize,
) -> Result<GreatestSolution> {
    if upper.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: upper.dim(),
        });
    }
    let res = Residuation::new(s);
    // Longest repeating pattern of active terms looked for.
    let max_pattern = 2 * s.dim();
    let mut history = vec![upper.clone()];
    for _ in 0..iteration_cap {
        let x = history.last().expect("nonempty");
        let y = res.step(x);
        if y == *x {
            debug_assert!(s.satisfied_by(x));
            return Ok(GreatestSolution::Solution(y));
        }
        history.push(y);
        let mut jump = None;
        for p in 1..=max_pattern.min(history.len() - 1) {
            let window = &history[history.len() - 1 - p..];
            let Some(rho) = ratios(&window[0], &window[p]) else {
                continue;
            };
            if let Some(j) = res.accelerate(window, &rho) {
                jump = Some(j);
                break;
            }
        }
        match jump {
            Some((limit, true)) => {
                if s.satisfied_by(&limit) {
                    return Ok(GreatestSolution::Solution(limit));
                }
                return Err(Error::InternalAssertion(
                    "limit of the residuation iteration is not a solution".into(),
                ));
            }
            Some((jumped, false)) => history = vec![jumped],
            None => {
                if history.len() > 2 * max_pattern + 2 {
                    history.remove(0);
                }
            }
        }
    }
    let last = history.pop().expect("nonempty");
    Ok(GreatestSolution::CapExceeded { last })
}

/// Coordinatewise `y / x`, with `1` where `x` vanishes; `None` when a
/// positive coordinate dropped to zero.
fn ratios(x: &MaxVector, y: &MaxVector) -> Option<Vec<Scalar>> {
    x.iter()
        .zip(y.iter())
        .map(|(a, b)| {
            if a.is_zero() {
                Some(Scalar::one())
            } else if b.is_zero() {
                None
            } else {
                Some(b / a)
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(MaxVector),
    Infeasible,
    /// The closure analysis cannot settle a strict bound and the grid search
    /// found no witness.
    UnknownStrictBoundary,
    /// The iteration cap was hit and the grid search found no witness.
    Undecided(String),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Whether `s` has a solution in `bx`, honoring strict bounds.
pub fn feasible_in_box(s: &TwoSidedSystem, bx: &IntervalBox) -> Result<Feasibility> {
    feasible_in_box_with_cap(s, bx, default_iteration_cap(s))
}

pub fn feasible_in_box_with_cap(
    s: &TwoSidedSystem,
    bx: &IntervalBox,
    iteration_cap: usize,
) -> Result<Feasibility> {
    if bx.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: bx.dim(),
        });
    }
    let verdict = match greatest_solution_leq(s, &bx.upper_corner(), iteration_cap)? {
        GreatestSolution::Solution(g) => closure_verdict(&g, bx),
        // The iterate bounds every solution in the box from above.
        GreatestSolution::CapExceeded { last } if below_lower_bound(&last, bx) => {
            Feasibility::Infeasible
        }
        GreatestSolution::CapExceeded { .. } => match grid_search(s, bx, GRID_LIMIT) {
            Some(Some(w)) => Feasibility::Feasible(w),
            _ => Feasibility::Undecided(format!(
                "greatest solution did not stabilize within {iteration_cap} iterations"
            )),
        },
    };
    let verdict = match verdict {
        Feasibility::UnknownStrictBoundary => match grid_search(s, bx, GRID_LIMIT) {
            Some(Some(w)) => Feasibility::Feasible(w),
            _ => Feasibility::UnknownStrictBoundary,
        },
        v => v,
    };
    if let Feasibility::Feasible(w) = &verdict {
        if !s.satisfied_by(w) || !bx.contains(w) {
            return Err(Error::InternalAssertion(format!("witness {w} fails verification")));
        }
    }
    Ok(verdict)
}

fn below_lower_bound(x: &MaxVector, bx: &IntervalBox) -> bool {
    bx.intervals()
        .iter()
        .zip(x.iter())
        .any(|(iv, v)| v < iv.lower() || (v == iv.lower() && !iv.lower_closed()))
}

/// Decision from the greatest solution `g` below the upper closure. Every
/// solution in the box lies below `g`, and solutions form a cone, so `α g`
/// with `α < 1` moves off strict upper bounds.
fn closure_verdict(g: &MaxVector, bx: &IntervalBox) -> Feasibility {
    if below_lower_bound(g, bx) {
        return Feasibility::Infeasible;
    }
    let blocked = bx
        .intervals()
        .iter()
        .enumerate()
        .any(|(j, iv)| !iv.upper_closed() && g.get(j) == iv.upper());
    if !blocked {
        return Feasibility::Feasible(g.clone());
    }
    // Smallest admissible scaling factor.
    let lo = bx
        .intervals()
        .iter()
        .enumerate()
        .filter(|(j, _)| !g.get(*j).is_zero())
        .map(|(j, iv)| iv.lower() / g.get(j))
        .max()
        .unwrap_or_else(Scalar::zero);
    if lo >= Scalar::one() {
        return Feasibility::UnknownStrictBoundary;
    }
    let alpha = lo.midpoint(&Scalar::one());
    Feasibility::Feasible(g.scale(&alpha))
}

/// A point of `bx` satisfying every system, or the verdict of
/// [`feasible_in_box`] on their union. No systems: any point of the box.
pub fn simultaneous_feasible(systems: &[TwoSidedSystem], bx: &IntervalBox) -> Result<Feasibility> {
    if systems.is_empty() {
        return Ok(Feasibility::Feasible(bx.some_point()));
    }
    let joined = TwoSidedSystem::concat(bx.dim(), systems)?;
    feasible_in_box(&joined, bx)
}

/// Exhaustive search over candidate coordinates built from the bounds and
/// the products and quotients of bounds with coefficients (plus interval
/// midpoints), restricted to the box. `None` when the grid exceeds `limit`
/// points; `Some(None)` when no grid point solves the system.
pub fn grid_search(s: &TwoSidedSystem, bx: &IntervalBox, limit: usize) -> Option<Option<MaxVector>> {
    let coeffs: Vec<Scalar> = s.coefficient_values().into_iter().collect();
    let mut bounds: Vec<Scalar> = bx
        .intervals()
        .iter()
        .flat_map(|iv| [iv.lower().clone(), iv.upper().clone()])
        .collect();
    bounds.sort();
    bounds.dedup();
    let mut base = std::collections::BTreeSet::new();
    for b in &bounds {
        base.insert(b.clone());
        for c in &coeffs {
            for d in &coeffs {
                base.insert(&(b * c) / d);
            }
        }
    }
    let axes: Vec<Vec<Scalar>> = bx
        .intervals()
        .iter()
        .map(|iv| {
            let mut vals: Vec<Scalar> = base
                .iter()
                .filter(|v| iv.contains(v))
                .cloned()
                .chain([iv.lower().midpoint(iv.upper())])
                .filter(|v| iv.contains(v))
                .collect();
            vals.sort();
            vals.dedup();
            vals
        })
        .collect();
    let total = axes
        .iter()
        .try_fold(1usize, |acc, a| acc.checked_mul(a.len()))
        .filter(|&t| t <= limit)?;
    if total == 0 {
        return Some(None);
    }
    let n = axes.len();
    let mut idx = vec![0usize; n];
    loop {
        let x = MaxVector::new(idx.iter().zip(&axes).map(|(&k, a)| a[k].clone()).collect())
            .expect("n >= 1");
        if s.satisfied_by(&x) {
            return Some(Some(x));
        }
        let mut d = 0;
        loop {
            if d == n {
                return Some(None);
            }
            idx[d] += 1;
            if idx[d] < axes[d].len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}
