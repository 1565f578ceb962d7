//! Canonical-ensemble quantities of a particle in the fractional well.
//!
//! Boltzmann weights are accumulated relative to the ground state,
//! `w_n = exp(-β (E_n - E_1))`, so nothing underflows when `β E_1` is large.
//! With `E_n = E_1 n^α` and `α > 1` the level gaps grow with `n`, hence the
//! consecutive ratios `w_{n+1}/w_n` decrease and the neglected tail after
//! `N` terms is bounded by the geometric series `w_{N+1} / (1 - r_{N+1})`.
//! The same argument bounds the energy-weighted tail, which controls the
//! truncation error of `U` and `S`.

use crate::error::{Error, Result};
use crate::spectrum::{check_positive, WellSpec};

/// Default relative truncation tolerance.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// Largest admissible truncation index.
pub const MAX_LEVELS: usize = 1_000_000;

/// Occupations below this contribute nothing to the entropy.
const ENTROPY_FLOOR: f64 = 1e-300;

/// A [`WellSpec`] held at temperature `T` (`k_B = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    well: WellSpec,
    temperature: f64,
}

impl ThermalState {
    pub fn new(well: WellSpec, temperature: f64) -> Result<Self> {
        check_positive("temperature", temperature)?;
        Ok(Self { well, temperature })
    }

    pub fn well(&self) -> &WellSpec {
        &self.well
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.temperature
    }
}

/// Ensemble averages of one [`ThermalState`].
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSummary {
    /// `ln Z`; finite even when `Z` itself underflows.
    pub log_partition_function: f64,
    /// `Z = exp(ln Z)`.
    pub partition_function: f64,
    /// `P_1 ..= P_{n_cut}`.
    pub occupations: Vec<f64>,
    pub internal_energy: f64,
    pub entropy: f64,
    pub free_energy: f64,
    pub n_cut: usize,
    /// Upper bound on the neglected part of `Z`, relative to the retained part.
    pub tail_bound: f64,
}

fn check_rel_tol(rel_tol: f64) -> Result<()> {
    if rel_tol > 0.0 && rel_tol <= 1e-6 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "rel_tol",
            value: rel_tol,
            reason: "truncation tolerance must lie in (0, 1e-6]",
        })
    }
}

/// Partition function, occupations, `U`, `S` and `F` of `state`.
///
/// Levels are added until both the partition-function tail and the
/// energy-weighted tail are below `rel_tol` relative to the retained sums.
pub fn summarize(state: &ThermalState, rel_tol: f64) -> Result<EnsembleSummary> {
    check_rel_tol(rel_tol)?;
    let well = state.well();
    let alpha = well.alpha();
    let t = state.temperature();
    let e1 = well.ground_energy();
    // reduced energy x_n = β (E_n - E_1) = c (n^α - 1)
    let c = e1 / t;
    let reduced = |n: usize| c * ((n as f64).powf(alpha) - 1.0);

    let mut weights = vec![1.0];
    let mut reduced_energies = vec![0.0];
    let mut z = 1.0;
    let mut m1 = 0.0;
    let mut x_next = reduced(2);
    let tail_z = loop {
        let n = weights.len();
        let x_after = reduced(n + 2);
        let w_next = (-x_next).exp();
        // 1 - r with r = exp(-(x_after - x_next)) < 1
        let one_minus_r = -(-(x_after - x_next)).exp_m1();
        let tail_z = w_next / one_minus_r;
        let q = (1.0 - one_minus_r) * (x_after / x_next);
        let tail_m1 = if w_next == 0.0 {
            0.0
        } else if q < 1.0 {
            w_next * x_next / (1.0 - q)
        } else {
            f64::INFINITY
        };
        if tail_z <= rel_tol * z && tail_m1 <= rel_tol * m1 {
            break tail_z / z;
        }
        if n >= MAX_LEVELS {
            return Err(Error::TruncationCap {
                cap: MAX_LEVELS,
                width: well.width(),
                alpha,
                mass: well.mass(),
                temperature: t,
            });
        }
        weights.push(w_next);
        reduced_energies.push(x_next);
        z += w_next;
        m1 += w_next * x_next;
        x_next = x_after;
    };

    // smallest terms first for the final sums
    let z: f64 = weights.iter().rev().sum();
    let m1: f64 = weights
        .iter()
        .zip(&reduced_energies)
        .rev()
        .map(|(w, x)| w * x)
        .sum();
    let ln_z_shifted = z.ln();
    let occupations: Vec<f64> = weights.iter().map(|w| w / z).collect();
    let entropy = occupations
        .iter()
        .zip(&reduced_energies)
        .rev()
        .filter(|(p, _)| **p >= ENTROPY_FLOOR)
        // -P ln P with ln P = -x - ln z'
        .map(|(p, x)| p * (x + ln_z_shifted))
        .sum::<f64>()
        .max(0.0);

    let log_partition_function = ln_z_shifted - c;
    let internal_energy = e1 + t * m1 / z;
    let free_energy = e1 - t * ln_z_shifted;

    Ok(EnsembleSummary {
        log_partition_function,
        partition_function: log_partition_function.exp(),
        n_cut: occupations.len(),
        occupations,
        internal_energy,
        entropy,
        free_energy,
        tail_bound: tail_z,
    })
}

pub fn internal_energy(state: &ThermalState, rel_tol: f64) -> Result<f64> {
    summarize(state, rel_tol).map(|s| s.internal_energy)
}

pub fn entropy(state: &ThermalState, rel_tol: f64) -> Result<f64> {
    summarize(state, rel_tol).map(|s| s.entropy)
}
