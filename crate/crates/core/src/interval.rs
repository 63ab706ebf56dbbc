//! Intervals, interval circulants and the six robustness classifiers.

use std::fmt;

use crate::attraction::{attraction_system, in_attraction_cone_with_mode, AttractionMode, TwoSidedSystem};
use crate::circulant::Circulant;
use crate::error::{Error, Result};
use crate::matrix::MaxVector;
use crate::scalar::Scalar;
use crate::solver::{feasible_in_box, simultaneous_feasible, Feasibility};

/// One of `[l, u]`, `[l, u)`, `(l, u]`, `(l, u)`. Always nonempty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarInterval {
    lower: Scalar,
    upper: Scalar,
    lower_closed: bool,
    upper_closed: bool,
}

impl ScalarInterval {
    pub fn new(lower: Scalar, upper: Scalar, lower_closed: bool, upper_closed: bool) -> Result<Self> {
        let iv = ScalarInterval {
            lower,
            upper,
            lower_closed,
            upper_closed,
        };
        if iv.lower > iv.upper {
            return Err(Error::InvalidInterval(format!("{iv}: lower bound exceeds upper bound")));
        }
        if iv.lower == iv.upper && !(lower_closed && upper_closed) {
            return Err(Error::InvalidInterval(format!("{iv} is empty")));
        }
        Ok(iv)
    }

    pub fn closed(lower: Scalar, upper: Scalar) -> Result<Self> {
        Self::new(lower, upper, true, true)
    }

    pub fn point(v: Scalar) -> Self {
        ScalarInterval {
            lower: v.clone(),
            upper: v,
            lower_closed: true,
            upper_closed: true,
        }
    }

    /// `kind` is one of `"[]"`, `"[)"`, `"(]"`, `"()"`.
    pub fn with_kind(lower: Scalar, upper: Scalar, kind: &str) -> Result<Self> {
        let (lc, uc) = match kind {
            "[]" => (true, true),
            "[)" => (true, false),
            "(]" => (false, true),
            "()" => (false, false),
            other => return Err(Error::InvalidInterval(format!("unknown bracket kind {other:?}"))),
        };
        Self::new(lower, upper, lc, uc)
    }

    pub fn lower(&self) -> &Scalar {
        &self.lower
    }

    pub fn upper(&self) -> &Scalar {
        &self.upper
    }

    pub fn lower_closed(&self) -> bool {
        self.lower_closed
    }

    pub fn upper_closed(&self) -> bool {
        self.upper_closed
    }

    pub fn is_closed(&self) -> bool {
        self.lower_closed && self.upper_closed
    }

    pub fn kind(&self) -> &'static str {
        match (self.lower_closed, self.upper_closed) {
            (true, true) => "[]",
            (true, false) => "[)",
            (false, true) => "(]",
            (false, false) => "()",
        }
    }

    pub fn contains(&self, v: &Scalar) -> bool {
        let above = if self.lower_closed { v >= &self.lower } else { v > &self.lower };
        let below = if self.upper_closed { v <= &self.upper } else { v < &self.upper };
        above && below
    }

    /// A member: the lower bound if closed, else the midpoint.
    pub fn some_point(&self) -> Scalar {
        if self.lower_closed {
            self.lower.clone()
        } else {
            self.lower.midpoint(&self.upper)
        }
    }
}

impl fmt::Display for ScalarInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = self.kind().split_at(1);
        write!(f, "{l}{}, {}{r}", self.lower, self.upper)
    }
}

impl fmt::Debug for ScalarInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `X = X_1 × … × X_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalBox {
    intervals: Vec<ScalarInterval>,
}

impl IntervalBox {
    pub fn new(intervals: Vec<ScalarInterval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::EmptyDimension);
        }
        Ok(IntervalBox { intervals })
    }

    pub fn closed(lower: Vec<Scalar>, upper: Vec<Scalar>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        Self::new(
            lower
                .into_iter()
                .zip(upper)
                .map(|(l, u)| ScalarInterval::closed(l, u))
                .collect::<Result<_>>()?,
        )
    }

    pub fn point(x: MaxVector) -> Self {
        IntervalBox {
            intervals: x.into_entries().into_iter().map(ScalarInterval::point).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[ScalarInterval] {
        &self.intervals
    }

    pub fn is_closed(&self) -> bool {
        self.intervals.iter().all(ScalarInterval::is_closed)
    }

    pub fn lower_corner(&self) -> MaxVector {
        MaxVector::new(self.intervals.iter().map(|iv| iv.lower.clone()).collect()).expect("n >= 1")
    }

    pub fn upper_corner(&self) -> MaxVector {
        MaxVector::new(self.intervals.iter().map(|iv| iv.upper.clone()).collect()).expect("n >= 1")
    }

    pub fn some_point(&self) -> MaxVector {
        MaxVector::new(self.intervals.iter().map(ScalarInterval::some_point).collect())
            .expect("n >= 1")
    }

    pub fn contains(&self, x: &MaxVector) -> bool {
        x.dim() == self.dim() && self.intervals.iter().zip(x.iter()).all(|(iv, v)| iv.contains(v))
    }

    /// Membership in the closure.
    pub fn closure_contains(&self, x: &MaxVector) -> bool {
        x.dim() == self.dim()
            && self
                .intervals
                .iter()
                .zip(x.iter())
                .all(|(iv, v)| &iv.lower <= v && v <= &iv.upper)
    }
}

/// All `Circ(a_0, …, a_{n-1})` with `a_t ∈ 𝐚_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalCirculant {
    entries: Vec<ScalarInterval>,
}

impl IntervalCirculant {
    pub fn new(entries: Vec<ScalarInterval>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyDimension);
        }
        Ok(IntervalCirculant { entries })
    }

    /// The singleton interval circulant `{c}`.
    pub fn point(c: &Circulant) -> Self {
        IntervalCirculant {
            entries: c.row().iter().cloned().map(ScalarInterval::point).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[ScalarInterval] {
        &self.entries
    }

    pub fn contains(&self, c: &Circulant) -> bool {
        c.dim() == self.dim() && self.entries.iter().zip(c.row()).all(|(iv, a)| iv.contains(a))
    }

    pub fn is_closed(&self) -> bool {
        self.entries.iter().all(ScalarInterval::is_closed)
    }

    /// `a̲ = max_t a̲_t`.
    pub fn max_lower(&self) -> Scalar {
        self.entries.iter().fold(Scalar::zero(), |acc, iv| Scalar::oplus(&acc, &iv.lower))
    }
}

/// `x^(k)`: lower closure bounds, upper closure bound at `k` (0-based).
pub fn corner_vector(bx: &IntervalBox, k: usize) -> Result<MaxVector> {
    if k >= bx.dim() {
        return Err(Error::IndexOutOfRange { index: k, n: bx.dim() });
    }
    let mut x = bx.lower_corner();
    x.set(k, bx.intervals[k].upper.clone());
    Ok(x)
}

/// `A^(k)`: lower closure bounds, upper closure bound at position `k`.
pub fn corner_matrix(ic: &IntervalCirculant, k: usize) -> Result<Circulant> {
    if k >= ic.dim() {
        return Err(Error::IndexOutOfRange { index: k, n: ic.dim() });
    }
    let row = ic
        .entries
        .iter()
        .enumerate()
        .map(|(t, iv)| if t == k { iv.upper.clone() } else { iv.lower.clone() })
        .collect();
    Circulant::new(row)
}

/// `Â` with `â_i = min(a̲, ā_i)`.
pub fn hat_matrix(ic: &IntervalCirculant) -> Circulant {
    let lo = ic.max_lower();
    Circulant::new(ic.entries.iter().map(|iv| Scalar::meet(&lo, &iv.upper)).collect()).expect("n >= 1")
}

/// `Â ∈ IC`, via `(a̲ ≥ ā_i ⇒ ā_i ∈ 𝐚_i) & (a̲ ≤ ā_i ⇒ a̲ ∈ 𝐚_i)`.
pub fn hat_in_interval(ic: &IntervalCirculant) -> bool {
    let lo = ic.max_lower();
    ic.entries.iter().all(|iv| {
        (lo < iv.upper || iv.contains(&iv.upper)) && (lo > iv.upper || iv.contains(&lo))
    })
}

/// `β_k = x_k / x̄_k`, so that `x = ⊕_k β_k x^(k)` (checked).
pub fn decompose_in_box(x: &MaxVector, bx: &IntervalBox) -> Result<Vec<Scalar>> {
    if x.dim() != bx.dim() {
        return Err(Error::DimensionMismatch {
            expected: bx.dim(),
            found: x.dim(),
        });
    }
    if !bx.closure_contains(x) {
        return Err(Error::InvalidInterval(format!("{x} is outside the closure of the box")));
    }
    let betas = bx
        .intervals
        .iter()
        .enumerate()
        .map(|(k, iv)| x.get(k).checked_div(&iv.upper).map_err(|_| Error::ZeroUpperBound(k)))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = MaxVector::zero(x.dim());
    for (k, b) in betas.iter().enumerate() {
        acc = acc.oplus(&corner_vector(bx, k)?.scale(b))?;
    }
    if acc != *x {
        return Err(Error::InternalAssertion(format!(
            "reconstruction {acc} differs from {x}"
        )));
    }
    Ok(betas)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RobustnessStatus {
    Yes,
    No,
    UnknownStrictBoundary,
    /// The characterization's hypothesis fails; no verdict.
    HypothesisNotMet(String),
    /// The solver hit its iteration cap without a witness.
    Undecided(String),
}

impl RobustnessStatus {
    pub fn is_decided(&self) -> bool {
        matches!(self, RobustnessStatus::Yes | RobustnessStatus::No)
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            RobustnessStatus::Yes => Some(true),
            RobustnessStatus::No => Some(false),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            RobustnessStatus::Yes => "yes",
            RobustnessStatus::No => "no",
            RobustnessStatus::UnknownStrictBoundary => "unknown_strict_boundary",
            RobustnessStatus::HypothesisNotMet(_) => "hypothesis_not_met",
            RobustnessStatus::Undecided(_) => "undecided",
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            RobustnessStatus::HypothesisNotMet(r) | RobustnessStatus::Undecided(r) => Some(r),
            _ => None,
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            RobustnessStatus::Yes
        } else {
            RobustnessStatus::No
        }
    }
}

impl From<Feasibility> for RobustnessStatus {
    fn from(f: Feasibility) -> Self {
        match f {
            Feasibility::Feasible(_) => RobustnessStatus::Yes,
            Feasibility::Infeasible => RobustnessStatus::No,
            Feasibility::UnknownStrictBoundary => RobustnessStatus::UnknownStrictBoundary,
            Feasibility::Undecided(r) => RobustnessStatus::Undecided(r),
        }
    }
}

/// Conjunction: any `No` wins, then any undecided status, else `Yes`.
fn all_of<I: IntoIterator<Item = RobustnessStatus>>(statuses: I) -> RobustnessStatus {
    let mut pending = None;
    for s in statuses {
        match s {
            RobustnessStatus::No => return RobustnessStatus::No,
            RobustnessStatus::Yes => {}
            other => {
                pending.get_or_insert(other);
            }
        }
    }
    pending.unwrap_or(RobustnessStatus::Yes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobustnessReport {
    pub possibly_x: RobustnessStatus,
    pub universally_x: RobustnessStatus,
    pub tolerance_x: RobustnessStatus,
    pub weakly_tolerance_x: RobustnessStatus,
    pub x_possibly_circ: RobustnessStatus,
    pub x_tolerance_circ: RobustnessStatus,
}

impl RobustnessReport {
    pub fn entries(&self) -> [(&'static str, &RobustnessStatus); 6] {
        [
            ("possibly_X", &self.possibly_x),
            ("universally_X", &self.universally_x),
            ("tolerance_X", &self.tolerance_x),
            ("weakly_tolerance_X", &self.weakly_tolerance_x),
            ("X_possibly_Circ", &self.x_possibly_circ),
            ("X_tolerance_Circ", &self.x_tolerance_circ),
        ]
    }

    /// Implications that follow from the quantifier structure, as
    /// `(premise, conclusion)` names. Pairs where either side is undecided
    /// are not checked.
    pub const IMPLICATIONS: [(&'static str, &'static str); 11] = [
        ("universally_X", "possibly_X"),
        ("universally_X", "tolerance_X"),
        ("universally_X", "X_possibly_Circ"),
        ("universally_X", "X_tolerance_Circ"),
        ("possibly_X", "X_tolerance_Circ"),
        ("possibly_X", "weakly_tolerance_X"),
        ("tolerance_X", "weakly_tolerance_X"),
        ("X_possibly_Circ", "tolerance_X"),
        ("X_possibly_Circ", "weakly_tolerance_X"),
        ("X_tolerance_Circ", "weakly_tolerance_X"),
        ("universally_X", "weakly_tolerance_X"),
    ];

    pub fn status(&self, name: &str) -> Option<&RobustnessStatus> {
        self.entries().into_iter().find(|(k, _)| *k == name).map(|(_, s)| s)
    }

    /// Decided pairs that break one of `implications`.
    pub fn violations(&self, implications: &[(&str, &str)]) -> Vec<(String, String)> {
        implications
            .iter()
            .filter(|(p, c)| {
                let p = self.status(p).and_then(RobustnessStatus::as_bool);
                let c = self.status(c).and_then(RobustnessStatus::as_bool);
                p == Some(true) && c == Some(false)
            })
            .map(|(p, c)| (p.to_string(), c.to_string()))
            .collect()
    }

    pub fn any_hypothesis_not_met(&self) -> bool {
        self.entries()
            .iter()
            .any(|(_, s)| matches!(s, RobustnessStatus::HypothesisNotMet(_)))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub mode: AttractionMode,
}

/// Decides the six robustness types of `IC` with respect to `X` through
/// the corner matrices `A^(k)`, corner vectors `x^(k)` and `Â`.
pub fn classify(ic: &IntervalCirculant, bx: &IntervalBox, opts: ClassifyOptions) -> Result<RobustnessReport> {
    let n = ic.dim();
    if bx.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bx.dim(),
        });
    }
    let mode = opts.mode;
    let corners_x = (0..n).map(|k| corner_vector(bx, k)).collect::<Result<Vec<_>>>()?;
    let corners_a: Vec<Circulant> = (0..n)
        .map(|k| corner_matrix(ic, k))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    let hat = hat_matrix(ic);
    let hat_ok = hat_in_interval(ic);
    let hat_missing = || RobustnessStatus::HypothesisNotMet("Â is not in the interval circulant".into());

    let covers_corners = |c: &Circulant| -> Result<bool> {
        for x in &corners_x {
            if !in_attraction_cone_with_mode(c, x, mode)? {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let possibly_x = if !hat_ok {
        hat_missing()
    } else {
        RobustnessStatus::from_bool(covers_corners(&hat)?)
    };

    let mut universally = true;
    for c in &corners_a {
        if !covers_corners(c)? {
            universally = false;
            break;
        }
    }
    let universally_x = RobustnessStatus::from_bool(universally);

    let systems: Vec<TwoSidedSystem> = corners_a
        .iter()
        .map(|c| attraction_system(c, mode))
        .collect::<Result<_>>()?;

    let tolerance_x = if !bx.is_closed() {
        RobustnessStatus::HypothesisNotMet("X is not closed".into())
    } else {
        let mut statuses = Vec::with_capacity(systems.len());
        for s in &systems {
            let st = RobustnessStatus::from(feasible_in_box(s, bx)?);
            let stop = st == RobustnessStatus::No;
            statuses.push(st);
            if stop {
                break;
            }
        }
        all_of(statuses)
    };

    let weakly_tolerance_x = if !hat_ok {
        hat_missing()
    } else if hat.is_zero() {
        RobustnessStatus::Yes
    } else {
        feasible_in_box(&attraction_system(&hat, mode)?, bx)?.into()
    };

    let x_possibly_circ = simultaneous_feasible(&systems, bx)?.into();

    let x_tolerance_circ = if !hat_ok { hat_missing() } else { possibly_x.clone() };

    Ok(RobustnessReport {
        possibly_x,
        universally_x,
        tolerance_x,
        weakly_tolerance_x,
        x_possibly_circ,
        x_tolerance_circ,
    })
}
