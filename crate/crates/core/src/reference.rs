//! Published perfect-regeneration data at `T_h = 4`, `T_c = 3`, `m = 1`.
//!
//! Each row gives the regenerative heat of the standard cycle
//! (`α₁ = α₂ = 2`) for a pair of widths, and a fractional pair `(α₁, α₂)`
//! reported to reach `Q_R = 0` at those widths.

use crate::cycle::{evaluate, CycleParams};
use crate::error::Result;

pub const T_HOT: f64 = 4.0;
pub const T_COLD: f64 = 3.0;

/// Tolerance on the standard-cycle `Q_R` column.
pub const STANDARD_Q_R_TOL: f64 = 5e-4;
/// Tolerance on `|Q_R|` at the tabulated fractional pair.
pub const PAIR_Q_R_TOL: f64 = 5e-3;
/// Tolerance on `|η - η_C|` at the tabulated fractional pair.
pub const PAIR_ETA_TOL: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegenerationRow {
    pub width_a: f64,
    pub width_b: f64,
    /// `Q_R` at `α₁ = α₂ = 2`.
    pub standard_q_r: f64,
    pub alpha_1: f64,
    pub alpha_2: f64,
}

const fn row(
    width_a: f64,
    width_b: f64,
    standard_q_r: f64,
    alpha_1: f64,
    alpha_2: f64,
) -> RegenerationRow {
    RegenerationRow {
        width_a,
        width_b,
        standard_q_r,
        alpha_1,
        alpha_2,
    }
}

pub const ROWS: [RegenerationRow; 10] = [
    row(0.6, 0.9, -0.1291, 1.245, 1.282),
    row(0.6, 1.0, -0.1315, 1.279, 1.326),
    row(0.8, 1.1, -0.01223, 1.311, 1.409),
    row(0.8, 1.2, -0.01009, 1.382, 1.459),
    row(1.0, 1.3, 0.005565, 1.439, 1.520),
    row(1.0, 1.4, 0.008296, 1.502, 1.579),
    row(1.2, 1.5, 0.008021, 1.517, 1.621),
    row(1.2, 1.6, 0.01057, 1.565, 1.678),
    row(1.4, 1.7, 0.007634, 1.607, 1.719),
    row(1.4, 1.8, 0.009979, 1.660, 1.778),
];

impl RegenerationRow {
    /// Cycle at this row's widths with `α₁ = α₂ = 2`.
    pub fn standard_params(&self) -> CycleParams {
        CycleParams::new(self.width_a, self.width_b, 2.0, 2.0, T_HOT, T_COLD)
            .expect("tabulated parameters are valid")
    }

    /// Cycle at this row's widths and tabulated fractional pair.
    pub fn pair_params(&self) -> CycleParams {
        CycleParams::new(
            self.width_a,
            self.width_b,
            self.alpha_1,
            self.alpha_2,
            T_HOT,
            T_COLD,
        )
        .expect("tabulated parameters are valid")
    }

    pub fn check(&self, rel_tol: f64) -> Result<RowCheck> {
        let standard = evaluate(&self.standard_params(), rel_tol)?;
        let pair = evaluate(&self.pair_params(), rel_tol)?;
        Ok(RowCheck {
            row: *self,
            standard_q_r: standard.q_r,
            pair_q_r: pair.q_r,
            pair_efficiency: pair.efficiency,
            carnot: pair.carnot,
        })
    }
}

/// Outcome of recomputing one row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowCheck {
    pub row: RegenerationRow,
    pub standard_q_r: f64,
    pub pair_q_r: f64,
    pub pair_efficiency: f64,
    pub carnot: f64,
}

impl RowCheck {
    pub fn standard_ok(&self) -> bool {
        (self.standard_q_r - self.row.standard_q_r).abs() <= STANDARD_Q_R_TOL
    }

    pub fn pair_q_r_ok(&self) -> bool {
        self.pair_q_r.abs() <= PAIR_Q_R_TOL
    }

    pub fn pair_efficiency_ok(&self) -> bool {
        (self.pair_efficiency - self.carnot).abs() <= PAIR_ETA_TOL
    }

    pub fn passed(&self) -> bool {
        self.standard_ok() && self.pair_q_r_ok() && self.pair_efficiency_ok()
    }
}
