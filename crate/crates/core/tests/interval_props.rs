mod common;

use common::strategies::{interval_instance, ALL_KINDS, CLOSED, POOL};
use common::{grid_quantifiers, log2, log_circ_member, product, s, MATRIX_GRID, VECTOR_GRID};
use maxcirc::{
    classify, corner_matrix, hat_in_interval, hat_matrix, in_attraction_cone, Circulant,
    ClassifyOptions, IntervalCirculant, MaxVector, RobustnessReport, Scalar, ScalarInterval,
};
use proptest::prelude::*;

/// A member of `IC` choosing per entry among the closed endpoints and the
/// midpoint.
fn member(ic: &IntervalCirculant, choice: &[u8]) -> Circulant {
    let pick = |iv: &ScalarInterval, c: u8| -> Scalar {
        let options: Vec<Scalar> = [iv.lower().clone(), iv.upper().clone(), iv.lower().midpoint(iv.upper())]
            .into_iter()
            .filter(|v| iv.contains(v))
            .collect();
        options[c as usize % options.len()].clone()
    };
    Circulant::new(ic.entries().iter().zip(choice).map(|(iv, &c)| pick(iv, c)).collect()).unwrap()
}

fn normalized(c: &Circulant) -> Circulant {
    c.scale(&c.lambda().recip().unwrap())
}

const GRID_POOL: [&str; 3] = ["0", "1/2", "1"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hat_dominates_normalized_members(
        (ic, _) in interval_instance(1..=6, &POOL, &ALL_KINDS),
        choice in prop::collection::vec(any::<u8>(), 6),
    ) {
        let a = member(&ic, &choice);
        prop_assert!(ic.contains(&a));
        let hat = hat_matrix(&ic);
        if a.is_zero() || hat.is_zero() {
            return Ok(());
        }
        prop_assert_eq!(hat.lambda(), ic.max_lower());
        prop_assert!(normalized(&a).le(&normalized(&hat)));
    }

    #[test]
    fn some_corner_is_dominated(
        (ic, _) in interval_instance(1..=6, &POOL, &ALL_KINDS),
        choice in prop::collection::vec(any::<u8>(), 6),
    ) {
        let a = member(&ic, &choice);
        if a.is_zero() {
            return Ok(());
        }
        let na = normalized(&a);
        let found = (0..ic.dim()).any(|k| {
            let c = corner_matrix(&ic, k).unwrap();
            !c.is_zero() && normalized(&c).le(&na)
        });
        prop_assert!(found);
    }

    #[test]
    fn quantifier_implications_hold((ic, bx) in interval_instance(1..=4, &POOL, &ALL_KINDS)) {
        let report = classify(&ic, &bx, ClassifyOptions::default()).unwrap();
        prop_assert!(report.violations(&RobustnessReport::IMPLICATIONS).is_empty(), "{:?}", report);
    }

    #[test]
    fn possible_membership_is_decided_by_the_hat(
        (ic, _) in interval_instance(1..=4, &GRID_POOL, &CLOSED),
        choice in prop::collection::vec(0usize..VECTOR_GRID.len(), 4),
    ) {
        prop_assert!(hat_in_interval(&ic));
        let n = ic.dim();
        let x: Vec<Scalar> = choice[..n].iter().map(|&k| s(VECTOR_GRID[k])).collect();
        let lx: Vec<_> = x.iter().map(log2).collect();
        let axes: Vec<Vec<_>> = ic
            .entries()
            .iter()
            .map(|iv| MATRIX_GRID.iter().map(|v| s(v)).filter(|v| iv.contains(v)).map(|v| log2(&v)).collect())
            .collect();
        let exists = product(&axes).iter().any(|row| log_circ_member(row, &lx));
        let hat = hat_matrix(&ic);
        prop_assert_eq!(exists, in_attraction_cone(&hat, &MaxVector::new(x).unwrap()).unwrap());
    }

    #[test]
    fn classification_matches_quantifiers((ic, bx) in interval_instance(1..=3, &GRID_POOL, &CLOSED)) {
        let report = classify(&ic, &bx, ClassifyOptions::default()).unwrap();
        let oracle = grid_quantifiers(&ic, &bx);
        for ((name, status), (_, expected)) in report.entries().iter().zip(oracle.named()) {
            prop_assert_eq!(status.as_bool(), Some(expected), "{} on {:?} / {:?}", name, ic, bx);
        }
    }
}
