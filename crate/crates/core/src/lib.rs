//! Exact max-times algebra for circulant matrices: spectral data, ultimate
//! periodicity, attraction cones, two-sided systems and interval
//! robustness.
//!
//! All arithmetic is over nonnegative rationals, so every comparison is
//! exact. Nodes and coordinates are 0-based.

pub mod attraction;
pub mod circulant;
pub mod digraph;
pub mod error;
pub mod interval;
pub mod matrix;
pub mod periodicity;
pub mod scalar;
pub mod solver;

pub use attraction::{
    attraction_system, cancel_reduce, check_attraction_inclusion,
    check_attraction_inclusion_general, general_attraction_system, in_attraction_cone,
    in_attraction_cone_general, in_attraction_cone_with_mode, is_kleene_star, kleene_star,
    reduced_attraction_system, AttractionMode, Equation, InclusionVerdict, TwoSidedSystem,
};
pub use circulant::{CircSpectral, Circulant};
pub use digraph::{
    associated_digraph, critical_structure, max_cycle_mean, solvable_congruence,
    threshold_digraph, CriticalStructure, CycleMean, Digraph,
};
pub use error::{Error, Result};
pub use interval::{
    classify, corner_matrix, corner_vector, decompose_in_box, hat_in_interval, hat_matrix,
    ClassifyOptions, IntervalBox, IntervalCirculant, RobustnessReport, RobustnessStatus,
    ScalarInterval,
};
pub use matrix::{orbit, MaxMatrix, MaxVector};
pub use periodicity::{
    circulant_periodicity, orbit_period, transient_and_period, PeriodicityInfo,
};
pub use scalar::Scalar;
pub use solver::{
    default_iteration_cap, feasible_in_box, greatest_solution_leq, grid_search,
    simultaneous_feasible, Feasibility, GreatestSolution,
};
