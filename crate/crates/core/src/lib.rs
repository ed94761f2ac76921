//! Multi-strategy solver for the Pell equation `y^2 - A x^2 = 1` and its
//! companion `y^2 - A x^2 = -3`.
//!
//! The classical continued-fraction method walks the whole period of
//! `sqrt(A)` and reads the fundamental solution off a late convergent.
//! This crate also implements the step-reduced routes: patterns among the
//! expansion remainders (equal, doubled, tripled, summing to twice the
//! shift) surface a representation of `A` and a pair of small parameters
//! `(l, m)` at roughly half the walk, from which a closed formula produces
//! the same minimal solution. A quadratic-form reduction route recovers
//! the parameters without any expansion at all, and parametric families
//! turn one seed solution into infinitely many verified `(A_i, x_i)`
//! pairs.
//!
//! Modules:
//! - [`cf`]: expansion, convergents, the standard solver, shortcut
//!   scanning, and the combined fast solver.
//! - [`forms`]: sequential-differences reduction of binary quadratic
//!   forms, the five distinctive classes, inverse calculations.
//! - [`cases`]: closed-form solution formulas per representation class.
//! - [`relations`]: horizontal/vertical solution families.
//! - [`minus3`]: the right side `-3`.
//! - [`oracle`]: independent brute-force ground truth.
//! - [`scan`]: table building, maxima bookkeeping, benchmarking.

pub mod arith;
pub mod cases;
pub mod cf;
pub mod error;
pub mod forms;
pub mod minus3;
pub mod oracle;
pub mod relations;
pub mod scan;
pub mod solution;

pub use cases::{DistinctiveParams, RepKind, Representation, Route, SolverRoute};
pub use cf::{
    expand_sqrt, expand_step, scan_shortcuts, solve_fast, solve_standard, CfExpansion, CfStep,
    FastSolve, Rhs, ShortcutHit, ShortcutKind,
};
pub use error::{Error, Result};
pub use forms::{
    classify, inverse_solve, reduce_step, start_form, BQForm, FormClass, InverseSolve, Move,
    SubstitutionLog,
};
pub use minus3::{solve_minus3, Minus3Family, Minus3Params, Minus3Solve};
pub use relations::{
    identity_family, CompositeFamily, FamilyId, FamilyParams, FamilyPoint, FamilySeed,
    SolutionFamily,
};
pub use solution::{PellSolution, SolveMethod};
