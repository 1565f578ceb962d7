//! Parameter sweeps and the perfect-regeneration locus `Q_R = 0`.
//!
//! Roots are found one scalar at a time: a 64-point scan exposes every sign
//! change of `Q_R` along the solve parameter (`Q_R` need not be monotone),
//! then each bracket is refined by bisection with secant acceleration.

use rayon::prelude::*;

use crate::cycle::{evaluate, CycleParams, CycleReport};
use crate::error::{Error, Result};

/// Default tolerance on `|Q_R|` in energy units.
pub const DEFAULT_ROOT_TOL: f64 = 1e-8;

/// Number of uniform scan points used to discover brackets.
pub const SCAN_POINTS: usize = 64;

/// Lowest fractional parameter the solver will evaluate.
pub const ALPHA_FLOOR: f64 = 1.0 + 1e-6;

const MAX_ITERATIONS: usize = 200;

/// A cycle parameter that can be swept or solved for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parameter {
    WidthA,
    WidthB,
    Alpha1,
    Alpha2,
}

impl Parameter {
    pub fn name(self) -> &'static str {
        match self {
            Parameter::WidthA => "width_a",
            Parameter::WidthB => "width_b",
            Parameter::Alpha1 => "alpha_1",
            Parameter::Alpha2 => "alpha_2",
        }
    }

    pub fn is_alpha(self) -> bool {
        matches!(self, Parameter::Alpha1 | Parameter::Alpha2)
    }

    pub fn get(self, params: &CycleParams) -> f64 {
        match self {
            Parameter::WidthA => params.width_a(),
            Parameter::WidthB => params.width_b(),
            Parameter::Alpha1 => params.alpha_1(),
            Parameter::Alpha2 => params.alpha_2(),
        }
    }

    pub fn set(self, params: &CycleParams, value: f64) -> Result<CycleParams> {
        match self {
            Parameter::WidthA => params.with_width_a(value),
            Parameter::WidthB => params.with_width_b(value),
            Parameter::Alpha1 => params.with_alpha_1(value),
            Parameter::Alpha2 => params.with_alpha_2(value),
        }
    }

    /// `[lo, hi]` intersected with the parameter's domain.
    fn clamp_bracket(self, lo: f64, hi: f64) -> (f64, f64) {
        if self.is_alpha() {
            (lo.max(ALPHA_FLOOR), hi.min(2.0))
        } else {
            (lo, hi)
        }
    }
}

impl std::str::FromStr for Parameter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "la" | "width_a" => Ok(Parameter::WidthA),
            "lb" | "width_b" => Ok(Parameter::WidthB),
            "a1" | "alpha1" | "alpha_1" => Ok(Parameter::Alpha1),
            "a2" | "alpha2" | "alpha_2" => Ok(Parameter::Alpha2),
            other => Err(format!(
                "unknown parameter '{other}' (expected la, lb, alpha1 or alpha2)"
            )),
        }
    }
}

impl std::fmt::Display for Parameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Uniform grid `lo, ..., hi` with `count` nodes over one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepAxis {
    parameter: Parameter,
    lo: f64,
    hi: f64,
    count: usize,
}

impl SweepAxis {
    pub fn new(parameter: Parameter, lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidAxis(format!(
                "{parameter} needs at least 2 nodes, got {count}"
            )));
        }
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::InvalidAxis(format!(
                "{parameter} range [{lo}, {hi}] must satisfy lo < hi"
            )));
        }
        let in_domain = if parameter.is_alpha() {
            lo > 1.0 && hi <= 2.0
        } else {
            lo > 0.0
        };
        if !in_domain {
            return Err(Error::InvalidAxis(format!(
                "{parameter} range [{lo}, {hi}] leaves the parameter's domain"
            )));
        }
        Ok(Self {
            parameter,
            lo,
            hi,
            count,
        })
    }

    pub fn parameter(&self) -> Parameter {
        self.parameter
    }
    pub fn lo(&self) -> f64 {
        self.lo
    }
    pub fn hi(&self) -> f64 {
        self.hi
    }
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.count - 1) as f64
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.node(i)).collect()
    }
}

/// Cycle reports over a rectangular grid; `reports[i][j]` is node `(x_i, y_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub axis_x: SweepAxis,
    pub axis_y: SweepAxis,
    pub base: CycleParams,
    pub reports: Vec<Vec<Result<CycleReport>>>,
}

impl SweepGrid {
    /// Rows in x-major order: `(x, y, report)`.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, &Result<CycleReport>)> + '_ {
        self.reports.iter().enumerate().flat_map(move |(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, r)| (self.axis_x.node(i), self.axis_y.node(j), r))
        })
    }
}

/// Evaluates every node of the grid in parallel. Node failures are stored in
/// place and do not abort the sweep.
pub fn sweep(
    base: &CycleParams,
    axis_x: SweepAxis,
    axis_y: SweepAxis,
    rel_tol: f64,
) -> Result<SweepGrid> {
    if axis_x.parameter == axis_y.parameter {
        return Err(Error::InvalidAxis(format!(
            "both axes sweep {}",
            axis_x.parameter
        )));
    }
    let (nx, ny) = (axis_x.count, axis_y.count);
    let flat: Vec<Result<CycleReport>> = (0..nx * ny)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / ny, k % ny);
            let p = axis_x.parameter.set(base, axis_x.node(i))?;
            let p = axis_y.parameter.set(&p, axis_y.node(j))?;
            evaluate(&p, rel_tol)
        })
        .collect();
    let mut it = flat.into_iter();
    let reports = (0..nx).map(|_| it.by_ref().take(ny).collect()).collect();
    Ok(SweepGrid {
        axis_x,
        axis_y,
        base: *base,
        reports,
    })
}

/// A cycle on the perfect-regeneration locus.
#[derive(Debug, Clone, PartialEq)]
pub struct RegenerationPoint {
    pub params: CycleParams,
    /// `|Q_R|` at `params`.
    pub residual: f64,
    pub report: CycleReport,
}

fn q_r_at(
    base: &CycleParams,
    parameter: Parameter,
    value: f64,
    rel_tol: f64,
) -> Result<(CycleParams, CycleReport)> {
    let p = parameter.set(base, value)?;
    let r = evaluate(&p, rel_tol)?;
    if !r.q_r.is_finite() {
        return Err(Error::NonFinite {
            parameter: parameter.name(),
            value,
        });
    }
    Ok((p, r))
}

/// Sign-change intervals of `Q_R` found by scanning [`SCAN_POINTS`] uniform
/// points of `parameter` over `[lo, hi]` (intersected with `(1, 2]` for the
/// fractional parameters). A scan node where `Q_R` is exactly zero yields a
/// zero-width interval.
pub fn find_brackets(
    base: &CycleParams,
    parameter: Parameter,
    lo: f64,
    hi: f64,
    rel_tol: f64,
) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = parameter.clamp_bracket(lo, hi);
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::InvalidAxis(format!(
            "empty bracket [{lo}, {hi}] for {parameter}"
        )));
    }
    let axis = SweepAxis::new(parameter, lo, hi, SCAN_POINTS)?;
    let values: Vec<(f64, f64)> = axis
        .nodes()
        .into_par_iter()
        .map(|x| q_r_at(base, parameter, x, rel_tol).map(|(_, r)| (x, r.q_r)))
        .collect::<Result<_>>()?;

    let mut brackets = Vec::new();
    for (k, &(x, f)) in values.iter().enumerate() {
        if f == 0.0 {
            brackets.push((x, x));
        } else if let Some(&(x1, f1)) = values.get(k + 1) {
            if f1 != 0.0 && (f < 0.0) != (f1 < 0.0) {
                brackets.push((x, x1));
            }
        }
    }
    Ok(brackets)
}

/// Bisection with secant acceleration on a sign-changing bracket.
///
/// `f` returns the function value together with a payload that is handed
/// back for the accepted point. The bracket is never left: secant steps that
/// fall outside it are replaced by bisection, and a bisection is forced
/// whenever two consecutive steps fail to halve the bracket.
fn bracketed_root<T>(
    mut f: impl FnMut(f64) -> Result<(f64, T)>,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<(f64, T)> {
    let (mut a, mut b) = (lo, hi);
    let (fa0, ta) = f(a)?;
    if fa0.abs() <= tol {
        return Ok((a, ta));
    }
    let (fb0, tb) = f(b)?;
    if fb0.abs() <= tol {
        return Ok((b, tb));
    }
    if (fa0 < 0.0) == (fb0 < 0.0) {
        return Err(Error::NoRoot {
            lo: a,
            hi: b,
            q_r_lo: fa0,
            q_r_hi: fb0,
        });
    }

    let mut fa = fa0;
    // last two iterates for the secant step
    let (mut x0, mut f0, mut x1, mut f1) = (a, fa0, b, fb0);
    let mut width_mark = b - a;
    let mut slow_steps = 0;
    for _ in 0..MAX_ITERATIONS {
        let secant = x1 - f1 * (x1 - x0) / (f1 - f0);
        let x = if slow_steps >= 2 || !(secant > a && secant < b) {
            slow_steps = 0;
            width_mark = b - a;
            0.5 * (a + b)
        } else {
            secant
        };
        if x <= a || x >= b {
            // bracket exhausted at floating-point resolution
            break;
        }

        let (fx, tx) = f(x)?;
        if fx.abs() <= tol {
            return Ok((x, tx));
        }
        if (fx < 0.0) == (fa < 0.0) {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        (x0, f0, x1, f1) = (x1, f1, x, fx);
        if b - a > 0.5 * width_mark {
            slow_steps += 1;
        } else {
            slow_steps = 0;
            width_mark = b - a;
        }
    }
    Err(Error::NotConverged {
        iterations: MAX_ITERATIONS,
        lo: a,
        hi: b,
    })
}

/// Solves `Q_R = 0` for `parameter` inside `[lo, hi]` (intersected with
/// `(1, 2]` for the fractional parameters) to `|Q_R| <= tol`.
pub fn solve(
    base: &CycleParams,
    parameter: Parameter,
    lo: f64,
    hi: f64,
    tol: f64,
    rel_tol: f64,
) -> Result<RegenerationPoint> {
    let (lo, hi) = parameter.clamp_bracket(lo, hi);
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(Error::InvalidAxis(format!(
            "empty bracket [{lo}, {hi}] for {parameter}"
        )));
    }
    let (_, (params, report)) = bracketed_root(
        |x| q_r_at(base, parameter, x, rel_tol).map(|(p, r)| (r.q_r, (p, r))),
        lo,
        hi,
        tol,
    )?;
    Ok(RegenerationPoint {
        params,
        residual: report.q_r.abs(),
        report,
    })
}

/// Solves for `α₁` at fixed `α₂`.
pub fn solve_alpha1(
    base: &CycleParams,
    alpha_2: f64,
    lo: f64,
    hi: f64,
    tol: f64,
    rel_tol: f64,
) -> Result<RegenerationPoint> {
    let base = base.with_alpha_2(alpha_2)?;
    solve(&base, Parameter::Alpha1, lo, hi, tol, rel_tol)
}

/// One node of a traced curve.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum TraceNode {
    Point(RegenerationPoint),
    /// No sign change of `Q_R` along the solve parameter at this sweep value.
    Gap {
        value: f64,
    },
}

impl TraceNode {
    pub fn point(&self) -> Option<&RegenerationPoint> {
        match self {
            TraceNode::Point(p) => Some(p),
            TraceNode::Gap { .. } => None,
        }
    }
}

fn distance_to(interval: (f64, f64), x: f64) -> f64 {
    if x < interval.0 {
        interval.0 - x
    } else if x > interval.1 {
        x - interval.1
    } else {
        0.0
    }
}

/// Follows the locus `Q_R = 0` along `grid` values of `sweep_parameter`,
/// solving for `solve_parameter` inside `bracket` at each node.
///
/// When several sign changes exist, the interval closest to the previous root
/// is used (the lowest one for the first node). Nodes without any sign change
/// become [`TraceNode::Gap`]s; an all-gap curve is not an error.
#[allow(clippy::too_many_arguments)]
pub fn trace_curve(
    base: &CycleParams,
    sweep_parameter: Parameter,
    solve_parameter: Parameter,
    grid: &[f64],
    bracket: (f64, f64),
    tol: f64,
    rel_tol: f64,
) -> Result<Vec<TraceNode>> {
    if sweep_parameter == solve_parameter {
        return Err(Error::InvalidAxis(format!(
            "cannot sweep and solve the same parameter {sweep_parameter}"
        )));
    }
    let increasing = grid.windows(2).all(|w| w[0] < w[1]);
    let decreasing = grid.windows(2).all(|w| w[0] > w[1]);
    if !(increasing || decreasing) {
        return Err(Error::InvalidAxis(
            "trace grid must be strictly monotone".into(),
        ));
    }
    // validate every node before any solve
    let bases = grid
        .iter()
        .map(|&v| sweep_parameter.set(base, v))
        .collect::<Result<Vec<_>>>()?;

    let mut previous: Option<f64> = None;
    let mut nodes = Vec::with_capacity(grid.len());
    for (&value, node_base) in grid.iter().zip(&bases) {
        let brackets = find_brackets(node_base, solve_parameter, bracket.0, bracket.1, rel_tol)?;
        let chosen = match previous {
            Some(prev) => brackets
                .iter()
                .copied()
                .min_by(|x, y| distance_to(*x, prev).total_cmp(&distance_to(*y, prev))),
            None => brackets.first().copied(),
        };
        let node = match chosen {
            None => TraceNode::Gap { value },
            Some((lo, hi)) => match solve(node_base, solve_parameter, lo, hi, tol, rel_tol) {
                Ok(p) => {
                    previous = Some(solve_parameter.get(&p.params));
                    TraceNode::Point(p)
                }
                Err(Error::NoRoot { .. }) => TraceNode::Gap { value },
                Err(e) => return Err(e),
            },
        };
        nodes.push(node);
    }
    Ok(nodes)
}
