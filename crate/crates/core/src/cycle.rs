//! The four-corner Stirling cycle.
//!
//! ```text
//!   A (L_A, α₂, T_h) --isothermal--> B (L_B, α₁, T_h)
//!         ^                               |
//!     isochoric                       isochoric
//!         |                               v
//!   D (L_A, α₂, T_c) <--isothermal-- C (L_B, α₁, T_c)
//! ```
//!
//! Isothermal stages exchange `T ΔS` with a bath, isochoric stages exchange
//! `ΔU` with the regenerator. Only equilibrium corner states enter.

use crate::error::{Error, Result};
use crate::spectrum::{check_alpha, check_positive, WellSpec, WidthConvention};
use crate::thermo::{summarize, EnsembleSummary, ThermalState};

/// `|Q_h|` at or below this is treated as zero.
/// Heats within this many ulps of the corner energy scale count as zero.
const ROUNDOFF_ULPS: f64 = 64.0;

/// Parameters of one cycle.
///
/// Widths are interpreted with [`WidthConvention::HalfWidth`] unless
/// overridden with [`CycleParams::with_convention`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleParams {
    width_a: f64,
    width_b: f64,
    alpha_1: f64,
    alpha_2: f64,
    t_hot: f64,
    t_cold: f64,
    mass: f64,
    convention: WidthConvention,
}

impl CycleParams {
    /// Cycle with unit mass.
    pub fn new(
        width_a: f64,
        width_b: f64,
        alpha_1: f64,
        alpha_2: f64,
        t_hot: f64,
        t_cold: f64,
    ) -> Result<Self> {
        let params = Self {
            width_a,
            width_b,
            alpha_1,
            alpha_2,
            t_hot,
            t_cold,
            mass: 1.0,
            convention: WidthConvention::HalfWidth,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_mass(mut self, mass: f64) -> Result<Self> {
        self.mass = mass;
        self.validate()?;
        Ok(self)
    }

    pub fn with_convention(mut self, convention: WidthConvention) -> Result<Self> {
        self.convention = convention;
        self.validate()?;
        Ok(self)
    }

    pub fn with_width_a(mut self, v: f64) -> Result<Self> {
        self.width_a = v;
        self.validate()?;
        Ok(self)
    }

    pub fn with_width_b(mut self, v: f64) -> Result<Self> {
        self.width_b = v;
        self.validate()?;
        Ok(self)
    }

    pub fn with_alpha_1(mut self, v: f64) -> Result<Self> {
        self.alpha_1 = v;
        self.validate()?;
        Ok(self)
    }

    pub fn with_alpha_2(mut self, v: f64) -> Result<Self> {
        self.alpha_2 = v;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        check_positive("width_a", self.width_a)?;
        check_positive("width_b", self.width_b)?;
        check_alpha("alpha_1", self.alpha_1)?;
        check_alpha("alpha_2", self.alpha_2)?;
        check_positive("t_cold", self.t_cold)?;
        check_positive("t_hot", self.t_hot)?;
        if self.t_hot <= self.t_cold {
            return Err(Error::InvalidParameter {
                name: "t_hot",
                value: self.t_hot,
                reason: "hot bath must be strictly hotter than the cold bath",
            });
        }
        check_positive("mass", self.mass)
    }

    pub fn width_a(&self) -> f64 {
        self.width_a
    }
    pub fn width_b(&self) -> f64 {
        self.width_b
    }
    pub fn alpha_1(&self) -> f64 {
        self.alpha_1
    }
    pub fn alpha_2(&self) -> f64 {
        self.alpha_2
    }
    pub fn t_hot(&self) -> f64 {
        self.t_hot
    }
    pub fn t_cold(&self) -> f64 {
        self.t_cold
    }
    pub fn mass(&self) -> f64 {
        self.mass
    }
    pub fn convention(&self) -> WidthConvention {
        self.convention
    }

    /// Well of corners A and D.
    pub fn well_a(&self) -> WellSpec {
        WellSpec::with_convention(self.width_a, self.alpha_2, self.mass, self.convention)
            .expect("validated cycle parameters")
    }

    /// Well of corners B and C.
    pub fn well_b(&self) -> WellSpec {
        WellSpec::with_convention(self.width_b, self.alpha_1, self.mass, self.convention)
            .expect("validated cycle parameters")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Corners {
    pub a: ThermalState,
    pub b: ThermalState,
    pub c: ThermalState,
    pub d: ThermalState,
}

impl Corners {
    pub fn as_array(&self) -> [ThermalState; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

pub fn corners(params: &CycleParams) -> Corners {
    let state = |well, t| ThermalState::new(well, t).expect("validated cycle parameters");
    Corners {
        a: state(params.well_a(), params.t_hot),
        b: state(params.well_b(), params.t_hot),
        c: state(params.well_b(), params.t_cold),
        d: state(params.well_a(), params.t_cold),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Engine,
    NonEngine,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Engine => "engine",
            Regime::NonEngine => "non_engine",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleReport {
    pub q_ab: f64,
    pub q_bc: f64,
    pub q_cd: f64,
    pub q_da: f64,
    pub work: f64,
    /// Net heat exchanged with the regenerator, `Q_BC + Q_DA`.
    pub q_r: f64,
    /// Heat drawn from the hot bath, `Q_AB + H(Q_R) Q_R`.
    pub q_h: f64,
    pub efficiency: f64,
    pub carnot: f64,
    pub regime: Regime,
    /// `S(A), S(B), S(C), S(D)`.
    pub corner_entropies: [f64; 4],
    /// `U(A), U(B), U(C), U(D)`.
    pub corner_energies: [f64; 4],
    /// `F(A), F(B), F(C), F(D)`.
    pub corner_free_energies: [f64; 4],
}

impl CycleReport {
    /// No heat flows from the hot bath and no work is done: the corners coincide
    /// pairwise (`A = B`, `C = D`).
    pub fn is_collapsed(&self) -> bool {
        let floor = roundoff_floor(&self.corner_energies, &self.corner_free_energies);
        self.work.abs() <= floor && self.q_h.abs() <= floor
    }
}

/// Rounding noise of heats built from these corners. `T S = U - F`, so the
/// energies and free energies bound every stage heat.
fn roundoff_floor(u: &[f64; 4], f: &[f64; 4]) -> f64 {
    let scale = u.iter().chain(f).fold(0.0f64, |m, x| m.max(x.abs()));
    ROUNDOFF_ULPS * f64::EPSILON * scale
}

/// `H(x) x` with `H(0) = 0`.
fn heaviside_gate(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

pub fn carnot_efficiency(params: &CycleParams) -> f64 {
    1.0 - params.t_cold / params.t_hot
}

/// Stage heats, work, regenerative heat, hot-bath heat and efficiency.
///
/// A collapsed cycle (work and hot-bath heat both at rounding level) reports
/// efficiency 0 in the non-engine regime.
pub fn evaluate(params: &CycleParams, rel_tol: f64) -> Result<CycleReport> {
    let corners = corners(params);
    let sums = corners
        .as_array()
        .iter()
        .map(|st| summarize(st, rel_tol))
        .collect::<Result<Vec<EnsembleSummary>>>()?;
    let s = [
        sums[0].entropy,
        sums[1].entropy,
        sums[2].entropy,
        sums[3].entropy,
    ];
    let u = [
        sums[0].internal_energy,
        sums[1].internal_energy,
        sums[2].internal_energy,
        sums[3].internal_energy,
    ];
    let f = [
        sums[0].free_energy,
        sums[1].free_energy,
        sums[2].free_energy,
        sums[3].free_energy,
    ];
    let [s_a, s_b, s_c, s_d] = s;
    let [u_a, u_b, u_c, u_d] = u;

    let q_ab = params.t_hot * (s_b - s_a);
    let q_bc = u_c - u_b;
    let q_cd = params.t_cold * (s_d - s_c);
    let q_da = u_a - u_d;
    let q_r = q_bc + q_da;
    // isochoric pair first: it cancels exactly when the corners coincide
    let work = (q_ab + q_cd) + q_r;
    let q_h = q_ab + heaviside_gate(q_r);

    let floor = roundoff_floor(&u, &f);
    let efficiency = if q_h.abs() <= floor {
        if work.abs() > floor {
            return Err(Error::DegenerateCycle { q_h, work });
        }
        0.0
    } else {
        work / q_h
    };

    Ok(CycleReport {
        q_ab,
        q_bc,
        q_cd,
        q_da,
        work,
        q_r,
        q_h,
        efficiency,
        carnot: carnot_efficiency(params),
        regime: if work > floor {
            Regime::Engine
        } else {
            Regime::NonEngine
        },
        corner_entropies: s,
        corner_energies: u,
        corner_free_energies: f,
    })
}
