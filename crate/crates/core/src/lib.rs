//! Finite- and infinite-dimensional phase / angular-momentum operator algebra.
//!
//! The library constructs the `(2l+1)`-dimensional phase-operator algebra
//! (phase grid, conjugate bases, the fractional-shift unitary, the shifted
//! angular momentum and the commutator surrogate `R`), mirrors the same
//! quantities as closed-form matrix elements on the infinite-dimensional
//! rotor, and provides the shift-to-zero extrapolation machinery that
//! recovers the canonical commutator elements `i delta` from both.
//!
//! Modules:
//! - [`linalg`]: dense complex vectors/matrices and algebraic predicates;
//! - [`finite`]: the `(2l+1)`-dimensional arena and its operators;
//! - [`infinite`]: closed-form rotor matrix elements plus quadrature oracle;
//! - [`limits`]: shift schedules and Richardson extrapolation.

pub mod finite;
pub mod infinite;
pub mod limits;
pub mod linalg;

pub use finite::{ClosedFormCommutator, FiniteError, FiniteSpace, OperatorSet, ShiftParam};
pub use infinite::{QuadratureSpec, WindingFunction};
pub use limits::{LimitEstimate, ScheduleError, ShiftSchedule};
pub use linalg::{commutator, max_abs_diff, Matrix, Tolerance, Vector};
