//! Energy levels of a particle in a fractional infinite potential well.
//!
//! With the fractional kinetic term `D_α |p|^α` and `D_α = (1/2m)^{α/2}`,
//! the levels are `E_n = D_α (k/L)^α n^α` where `k` depends on how the width
//! `L` is measured (see [`WidthConvention`]). `α = 2` recovers ordinary
//! quantum mechanics.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// How the width `L` enters the level formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WidthConvention {
    /// `E_n = D_α (2π/L)^α n^α`.
    #[default]
    FullPeriod,
    /// `E_n = D_α (π/(2L))^α n^α`, i.e. `L` is the half-width of the well.
    /// At `α = 2` this is `π² n² / (8 m L²)`.
    HalfWidth,
}

impl WidthConvention {
    /// Wavenumber numerator `k` in `(k/L)^α`.
    pub fn wavenumber(self) -> f64 {
        match self {
            WidthConvention::FullPeriod => 2.0 * PI,
            WidthConvention::HalfWidth => PI / 2.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WidthConvention::FullPeriod => "full-period",
            WidthConvention::HalfWidth => "half-width",
        }
    }
}

impl std::str::FromStr for WidthConvention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "full-period" => Ok(WidthConvention::FullPeriod),
            "half-width" => Ok(WidthConvention::HalfWidth),
            other => Err(format!(
                "unknown width convention '{other}' (expected full-period or half-width)"
            )),
        }
    }
}

/// Checks `1 < alpha <= 2`.
pub(crate) fn check_alpha(name: &'static str, alpha: f64) -> Result<()> {
    if alpha > 1.0 && alpha <= 2.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: alpha,
            reason: "fractional parameter must satisfy 1 < alpha <= 2",
        })
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and strictly positive",
        })
    }
}

/// Physical configuration of the well: width, fractional parameter and mass.
///
/// Invariants are checked at construction, so every `WellSpec` in circulation
/// is valid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellSpec {
    width: f64,
    alpha: f64,
    mass: f64,
    convention: WidthConvention,
}

impl WellSpec {
    /// A well using [`WidthConvention::FullPeriod`].
    pub fn new(width: f64, alpha: f64, mass: f64) -> Result<Self> {
        Self::with_convention(width, alpha, mass, WidthConvention::FullPeriod)
    }

    pub fn with_convention(
        width: f64,
        alpha: f64,
        mass: f64,
        convention: WidthConvention,
    ) -> Result<Self> {
        check_positive("width", width)?;
        check_alpha("alpha", alpha)?;
        check_positive("mass", mass)?;
        Ok(Self {
            width,
            alpha,
            mass,
            convention,
        })
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn convention(&self) -> WidthConvention {
        self.convention
    }

    /// Ground-state energy `E_1`; every level is `E_1 n^α`.
    pub fn ground_energy(&self) -> f64 {
        scale_coefficient(self) * (self.convention.wavenumber() / self.width).powf(self.alpha)
    }
}

/// `D_α = (1/(2m))^{α/2}`.
pub fn scale_coefficient(spec: &WellSpec) -> f64 {
    (0.5 / spec.mass).powf(0.5 * spec.alpha)
}

/// The `n`-th level, `n >= 1`.
pub fn energy_level(spec: &WellSpec, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::LevelIndex);
    }
    Ok(spec.ground_energy() * (n as f64).powf(spec.alpha))
}

/// Levels `E_1 ..= E_{n_max}`.
pub fn energy_levels(spec: &WellSpec, n_max: u64) -> Result<Vec<f64>> {
    if n_max == 0 {
        return Err(Error::LevelIndex);
    }
    let e1 = spec.ground_energy();
    Ok((1..=n_max)
        .map(|n| e1 * (n as f64).powf(spec.alpha))
        .collect())
}
