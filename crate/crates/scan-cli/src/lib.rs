//! Scan configuration, report rows, and the verification battery behind the
//! `rotor-scan` binary.
//!
//! Output is deterministic by construction: fixed row order (`l` ascending,
//! shift descending), fixed 17-significant-digit scientific formatting with
//! explicit exponent signs, and a seeded generator for the sampled checks.
//! Identical configuration yields byte-identical reports.

pub mod report;
pub mod verify;

use rotor_phase::limits::ScheduleError;
use rotor_phase::{FiniteError, ShiftSchedule};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ScanError {
    #[error(transparent)]
    Finite(#[from] FiniteError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

/// Parameters of one limit scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    /// Spaces to scan, finite route only; ignored on the infinite route.
    pub l_values: Vec<u32>,
    pub s_start: f64,
    pub s_factor: f64,
    pub s_steps: usize,
    /// Bra label (row).
    pub n: i64,
    /// Ket label (column); plays the role of the mode `m` on the infinite route.
    pub k: i64,
}

impl ScanConfig {
    pub fn schedule(&self) -> Result<ShiftSchedule, ScanError> {
        Ok(ShiftSchedule::geometric(
            self.s_start,
            self.s_factor,
            self.s_steps,
        )?)
    }
}

/// Which theory produced a report row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Finite,
    Infinite,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Finite => "finite",
            Route::Infinite => "infinite",
        }
    }
}
