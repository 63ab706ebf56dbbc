use maxcirc::{
    Circulant, IntervalBox, IntervalCirculant, MaxMatrix, MaxVector, Scalar, ScalarInterval,
};
use proptest::prelude::*;

use super::s;

pub const POOL: [&str; 6] = ["0", "1/3", "1/2", "1", "3/2", "2"];

pub fn scalar_from(pool: &'static [&'static str]) -> impl Strategy<Value = Scalar> {
    prop::sample::select(pool).prop_map(s)
}

pub fn scalar() -> impl Strategy<Value = Scalar> {
    scalar_from(&POOL)
}

pub fn row(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(scalar(), n)
}

pub fn matrix(n: usize) -> impl Strategy<Value = MaxMatrix> {
    prop::collection::vec(scalar(), n * n).prop_map(move |e| MaxMatrix::new(n, e).unwrap())
}

pub fn vector(n: usize) -> impl Strategy<Value = MaxVector> {
    row(n).prop_map(|e| MaxVector::new(e).unwrap())
}

pub fn circulant(n: usize) -> impl Strategy<Value = Circulant> {
    row(n).prop_map(|r| Circulant::new(r).unwrap())
}

pub fn nonzero_circulant(sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Circulant> {
    sizes.prop_flat_map(circulant).prop_filter("nonzero", |c| !c.is_zero())
}

/// `A ≤ B` with `λ(A) = λ(B)`: `B` raises entries of `A` but never above
/// its maximum.
pub fn dominated_pair(
    sizes: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (Circulant, Circulant)> {
    sizes
        .prop_flat_map(|n| (circulant(n), prop::collection::vec(0u8..3, n)))
        .prop_filter("nonzero", |(c, _)| !c.is_zero())
        .prop_map(|(a, raise)| {
            let lambda = a.row().iter().max().unwrap().clone();
            let b = a
                .row()
                .iter()
                .zip(raise)
                .map(|(v, r)| match r {
                    0 => v.clone(),
                    1 => v.midpoint(&lambda),
                    _ => lambda.clone(),
                })
                .collect();
            (a, Circulant::new(b).unwrap())
        })
}

pub fn interval_from(pool: &'static [&'static str], kinds: &'static [&'static str]) -> impl Strategy<Value = ScalarInterval> {
    (scalar_from(pool), scalar_from(pool), prop::sample::select(kinds)).prop_map(|(a, b, kind)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        ScalarInterval::with_kind(lo.clone(), hi, kind)
            .unwrap_or_else(|_| ScalarInterval::point(lo))
    })
}

pub const ALL_KINDS: [&str; 4] = ["[]", "[)", "(]", "()"];
pub const CLOSED: [&str; 1] = ["[]"];

pub fn interval_instance(
    sizes: std::ops::RangeInclusive<usize>,
    pool: &'static [&'static str],
    kinds: &'static [&'static str],
) -> impl Strategy<Value = (IntervalCirculant, IntervalBox)> {
    sizes.prop_flat_map(move |n| {
        (
            prop::collection::vec(interval_from(pool, kinds), n),
            prop::collection::vec(interval_from(pool, kinds), n),
        )
            .prop_map(|(a, x)| (IntervalCirculant::new(a).unwrap(), IntervalBox::new(x).unwrap()))
    })
}
