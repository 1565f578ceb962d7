//! `frac-stirling`: evaluate, sweep and trace the fractional Stirling cycle.
//!
//! All commands write CSV to standard output (or `--out PATH`) and
//! diagnostics to standard error. Exit status is 0 on success, 1 when a
//! computation fails and 2 for usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use frac_stirling::reference::{self, ROWS};
use frac_stirling::{
    evaluate, sweep, trace_curve, CycleParams, CycleReport, Parameter, SweepAxis, TraceNode,
    WidthConvention, DEFAULT_REL_TOL, DEFAULT_ROOT_TOL,
};

/// Default bracket for a width solve.
const WIDTH_BRACKET: (f64, f64) = (0.1, 4.0);

#[derive(Parser, Debug)]
#[command(
    name = "frac-stirling",
    version,
    about = "Fractional quantum Stirling engine"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one cycle.
    Cycle {
        #[command(flatten)]
        cycle: CycleArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Evaluate the cycle on a two-parameter grid.
    Sweep {
        /// First axis, e.g. `alpha1=1.01:2:100`.
        #[arg(long)]
        x: AxisArg,
        /// Second axis.
        #[arg(long)]
        y: AxisArg,
        #[command(flatten)]
        cycle: CycleArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Follow the Q_R = 0 locus along one parameter, solving for another.
    Trace {
        /// Sweep grid, e.g. `alpha2=1.45:1.75:13`.
        #[arg(long)]
        sweep: AxisArg,
        /// Parameter solved at each node.
        #[arg(long)]
        solve: Parameter,
        /// Search interval `lo:hi` for the solved parameter.
        #[arg(long)]
        bracket: Option<Bracket>,
        /// Root tolerance on |Q_R|.
        #[arg(long, default_value_t = DEFAULT_ROOT_TOL)]
        tol: f64,
        #[command(flatten)]
        cycle: CycleArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Recompute the built-in perfect-regeneration table.
    Table1 {
        #[arg(long, default_value_t = DEFAULT_REL_TOL)]
        rel_tol: f64,
    },
}

#[derive(Args, Debug)]
struct CycleArgs {
    /// Width at corners A and D.
    #[arg(long)]
    la: Option<f64>,
    /// Width at corners B and C.
    #[arg(long)]
    lb: Option<f64>,
    /// Fractional parameter at B and C.
    #[arg(long)]
    a1: Option<f64>,
    /// Fractional parameter at A and D.
    #[arg(long)]
    a2: Option<f64>,
    #[arg(long, default_value_t = reference::T_HOT)]
    th: f64,
    #[arg(long, default_value_t = reference::T_COLD)]
    tc: f64,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, default_value = "half-width")]
    convention: WidthConvention,
    /// Relative truncation tolerance of the partition sums.
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    rel_tol: f64,
}

#[derive(Args, Debug)]
struct IoArgs {
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy)]
struct AxisArg {
    parameter: Parameter,
    lo: f64,
    hi: f64,
    count: usize,
}

impl std::str::FromStr for AxisArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, range) = s
            .split_once('=')
            .ok_or_else(|| format!("expected param=lo:hi:count, got '{s}'"))?;
        let parts: Vec<&str> = range.split(':').collect();
        let [lo, hi, count] = parts[..] else {
            return Err(format!("expected lo:hi:count, got '{range}'"));
        };
        Ok(AxisArg {
            parameter: name.parse()?,
            lo: lo
                .parse()
                .map_err(|e| format!("bad lower bound '{lo}': {e}"))?,
            hi: hi
                .parse()
                .map_err(|e| format!("bad upper bound '{hi}': {e}"))?,
            count: count
                .parse()
                .map_err(|e| format!("bad count '{count}': {e}"))?,
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct Bracket(f64, f64);

impl std::str::FromStr for Bracket {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| format!("expected lo:hi, got '{s}'"))?;
        let lo = lo
            .parse()
            .map_err(|e| format!("bad lower bound '{lo}': {e}"))?;
        let hi = hi
            .parse()
            .map_err(|e| format!("bad upper bound '{hi}': {e}"))?;
        Ok(Bracket(lo, hi))
    }
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<frac_stirling::Error> for Failure {
    fn from(e: frac_stirling::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// 17 significant digits, `nan` for missing values.
fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

const REPORT_HEADER: &str =
    "L_A,L_B,alpha1,alpha2,T_h,T_c,m,Q_AB,Q_BC,Q_CD,Q_DA,W,Q_R,Q_h,eta,eta_carnot,regime";

fn param_fields(p: &CycleParams) -> [f64; 7] {
    [
        p.width_a(),
        p.width_b(),
        p.alpha_1(),
        p.alpha_2(),
        p.t_hot(),
        p.t_cold(),
        p.mass(),
    ]
}

fn report_fields(r: &CycleReport) -> [f64; 9] {
    [
        r.q_ab,
        r.q_bc,
        r.q_cd,
        r.q_da,
        r.work,
        r.q_r,
        r.q_h,
        r.efficiency,
        r.carnot,
    ]
}

fn join(values: impl IntoIterator<Item = f64>) -> String {
    values.into_iter().map(num).collect::<Vec<_>>().join(",")
}

impl CycleArgs {
    /// Builds the base parameters. Flags named in `free` may be omitted and
    /// are then taken from the paired value.
    fn params(&self, free: &[(Parameter, f64)]) -> Result<CycleParams, Failure> {
        let pick = |value: Option<f64>, p: Parameter, flag: &str| -> Result<f64, Failure> {
            match (value, free.iter().find(|(q, _)| *q == p)) {
                (_, Some(&(_, v))) => Ok(v),
                (Some(v), None) => Ok(v),
                (None, None) => Err(Failure::Usage(format!("missing required flag --{flag}"))),
            }
        };
        let la = pick(self.la, Parameter::WidthA, "la")?;
        let lb = pick(self.lb, Parameter::WidthB, "lb")?;
        let a1 = pick(self.a1, Parameter::Alpha1, "a1")?;
        let a2 = pick(self.a2, Parameter::Alpha2, "a2")?;
        let p = CycleParams::new(la, lb, a1, a2, self.th, self.tc)
            .and_then(|p| p.with_mass(self.mass))
            .and_then(|p| p.with_convention(self.convention))
            .map_err(usage)?;
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-6) {
            return Err(Failure::Usage(format!(
                "--rel-tol must lie in (0, 1e-6], got {}",
                self.rel_tol
            )));
        }
        Ok(p)
    }
}

fn warn_direction(p: &CycleParams) {
    if p.alpha_1() >= p.alpha_2() {
        eprintln!(
            "warning: alpha1 = {} >= alpha2 = {}; the forward cycle has alpha1 < alpha2",
            p.alpha_1(),
            p.alpha_2()
        );
    }
}

fn emit(io: &IoArgs, text: &str) -> Result<(), Failure> {
    match &io.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Compute(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_cycle(cycle: &CycleArgs, io: &IoArgs) -> Result<(), Failure> {
    let p = cycle.params(&[])?;
    warn_direction(&p);
    let r = evaluate(&p, cycle.rel_tol)?;
    let text = format!(
        "{REPORT_HEADER}\n{},{},{}\n",
        join(param_fields(&p)),
        join(report_fields(&r)),
        r.regime
    );
    emit(io, &text)
}

fn axis(a: AxisArg) -> Result<SweepAxis, Failure> {
    SweepAxis::new(a.parameter, a.lo, a.hi, a.count).map_err(usage)
}

fn cmd_sweep(x: AxisArg, y: AxisArg, cycle: &CycleArgs, io: &IoArgs) -> Result<(), Failure> {
    if x.parameter == y.parameter {
        return Err(Failure::Usage(format!("both axes sweep {}", x.parameter)));
    }
    let (ax, ay) = (axis(x)?, axis(y)?);
    let base = cycle.params(&[(x.parameter, x.lo), (y.parameter, y.lo)])?;
    let grid = sweep(&base, ax, ay, cycle.rel_tol)?;

    let mut text = format!("x,y,{REPORT_HEADER},error\n");
    for (xv, yv, result) in grid.iter() {
        let p = x
            .parameter
            .set(&base, xv)
            .and_then(|p| y.parameter.set(&p, yv))
            .ok();
        let fields = p.as_ref().map_or([f64::NAN; 7], param_fields);
        let _ = match result {
            Ok(r) => writeln!(
                text,
                "{},{},{},{},{},",
                num(xv),
                num(yv),
                join(fields),
                join(report_fields(r)),
                r.regime
            ),
            Err(e) => writeln!(
                text,
                "{},{},{},{},nan,\"{}\"",
                num(xv),
                num(yv),
                join(fields),
                join([f64::NAN; 9]),
                e.to_string().replace('"', "\"\"")
            ),
        };
    }
    emit(io, &text)
}

fn cmd_trace(
    sweep_axis: AxisArg,
    solve: Parameter,
    bracket: Option<Bracket>,
    tol: f64,
    cycle: &CycleArgs,
    io: &IoArgs,
) -> Result<(), Failure> {
    if sweep_axis.parameter == solve {
        return Err(Failure::Usage(format!("cannot sweep and solve {solve}")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::Usage(format!("--tol must be positive, got {tol}")));
    }
    let grid = axis(sweep_axis)?.nodes();
    let (lo, hi) = match bracket {
        Some(Bracket(lo, hi)) => (lo, hi),
        None if solve.is_alpha() => (1.0, 2.0),
        None => WIDTH_BRACKET,
    };
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Failure::Usage(format!("empty bracket {lo}:{hi}")));
    }
    let seed = if solve.is_alpha() { hi } else { lo };
    let base = cycle.params(&[(sweep_axis.parameter, grid[0]), (solve, seed)])?;
    let nodes = trace_curve(
        &base,
        sweep_axis.parameter,
        solve,
        &grid,
        (lo, hi),
        tol,
        cycle.rel_tol,
    )?;

    if nodes.iter().all(|n| n.point().is_none()) {
        eprintln!("warning: no sign change of Q_R found at any node");
    }
    let mut text = format!(
        "{},{},residual,Q_R,eta,eta_carnot,status\n",
        sweep_axis.parameter, solve
    );
    for node in &nodes {
        let _ = match node {
            TraceNode::Point(p) => writeln!(
                text,
                "{},{},{},{},{},{},ok",
                num(sweep_axis.parameter.get(&p.params)),
                num(solve.get(&p.params)),
                num(p.residual),
                num(p.report.q_r),
                num(p.report.efficiency),
                num(p.report.carnot)
            ),
            TraceNode::Gap { value } => writeln!(text, "{},nan,nan,nan,nan,nan,gap", num(*value)),
        };
    }
    emit(io, &text)
}

fn cmd_table1(rel_tol: f64) -> Result<(), Failure> {
    if !(rel_tol > 0.0 && rel_tol <= 1e-6) {
        return Err(Failure::Usage(format!(
            "--rel-tol must lie in (0, 1e-6], got {rel_tol}"
        )));
    }
    println!(
        "{:>5} {:>5} {:>11} {:>11} {:>6} {:>6} {:>11} {:>8} std pair eta",
        "L_A", "L_B", "Q_R(2,2)", "expected", "a1", "a2", "Q_R(a1,a2)", "eta"
    );
    let mut failed = 0;
    for row in ROWS {
        let c = row.check(rel_tol)?;
        let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
        println!(
            "{:>5.2} {:>5.2} {:>11.6} {:>11.6} {:>6.3} {:>6.3} {:>11.3e} {:>8.5} {} {} {}",
            row.width_a,
            row.width_b,
            c.standard_q_r,
            row.standard_q_r,
            row.alpha_1,
            row.alpha_2,
            c.pair_q_r,
            c.pair_efficiency,
            mark(c.standard_ok()),
            mark(c.pair_q_r_ok()),
            mark(c.pair_efficiency_ok()),
        );
        if !c.passed() {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("all {} rows pass", ROWS.len());
        Ok(())
    } else {
        Err(Failure::Compute(format!(
            "{failed} of {} rows failed",
            ROWS.len()
        )))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Cycle { cycle, io } => cmd_cycle(&cycle, &io),
        Command::Sweep { x, y, cycle, io } => cmd_sweep(x, y, &cycle, &io),
        Command::Trace {
            sweep,
            solve,
            bracket,
            tol,
            cycle,
            io,
        } => cmd_trace(sweep, solve, bracket, tol, &cycle, &io),
        Command::Table1 { rel_tol } => cmd_table1(rel_tol),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
