//! Thermodynamics of a quantum Stirling engine whose working substance is a
//! single particle in a one-dimensional infinite potential well governed by
//! fractional quantum mechanics.
//!
//! The crate is organised bottom-up:
//!
//! - [`spectrum`]: closed-form energy levels `E_n = D_α (k/L)^α n^α`.
//! - [`thermo`]: canonical-ensemble sums with a rigorous truncation bound.
//! - [`cycle`]: the four-corner Stirling cycle, stage heats and efficiency.
//! - [`solver`]: parameter sweeps and bracketed root finding on the
//!   perfect-regeneration locus `Q_R = 0`.
//! - [`reference`]: published regeneration data used for regression checks.
//!
//! Natural units are used throughout: `ħ = k_B = 1`.

pub mod cycle;
pub mod error;
pub mod reference;
pub mod solver;
pub mod spectrum;
pub mod thermo;

pub use cycle::{carnot_efficiency, corners, evaluate, Corners, CycleParams, CycleReport, Regime};
pub use error::{Error, Result};
pub use solver::{
    find_brackets, solve, solve_alpha1, sweep, trace_curve, Parameter, RegenerationPoint,
    SweepAxis, SweepGrid, TraceNode, DEFAULT_ROOT_TOL,
};
pub use spectrum::{energy_level, energy_levels, scale_coefficient, WellSpec, WidthConvention};
pub use thermo::{
    entropy, internal_energy, summarize, EnsembleSummary, ThermalState, DEFAULT_REL_TOL,
};
