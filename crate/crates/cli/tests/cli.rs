use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_frac-stirling"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Column `name` of a CSV body, one entry per data row.
fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = header.iter().position(|h| *h == name).unwrap();
    lines
        .map(|l| l.split(',').nth(k).unwrap().to_string())
        .collect()
}

fn floats(csv: &str, name: &str) -> Vec<f64> {
    column(csv, name)
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

#[test]
fn cycle_standard_row() {
    let o = run(&[
        "cycle", "--la", "0.6", "--lb", "0.9", "--a1", "2", "--a2", "2", "--th", "4", "--tc", "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with(
        "L_A,L_B,alpha1,alpha2,T_h,T_c,m,Q_AB,Q_BC,Q_CD,Q_DA,W,Q_R,Q_h,eta,eta_carnot,regime\n"
    ));
    assert_eq!(out.lines().count(), 2);
    let q_r = floats(&out, "Q_R")[0];
    assert!((q_r + 0.1291).abs() < 5e-4, "{q_r}");
    assert_eq!(floats(&out, "eta_carnot")[0], 0.25);
    // α₁ = α₂ triggers the direction warning only
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn cycle_degenerate_widths() {
    let o = run(&[
        "cycle", "--la", "1", "--lb", "1", "--a1", "1.8", "--a2", "1.8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(floats(&out, "W")[0], 0.0);
    assert_eq!(floats(&out, "Q_R")[0], 0.0);
    assert_eq!(column(&out, "regime")[0], "non_engine");
}

#[test]
fn mismatched_widths_do_not_regenerate() {
    let o = run(&[
        "cycle", "--la", "1", "--lb", "1.5", "--a1", "1.439", "--a2", "1.520",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let q_r = floats(&stdout(&o), "Q_R")[0];
    assert!(q_r.abs() > 1e-3, "{q_r}");
}

#[test]
fn floats_round_trip_with_17_digits() {
    let o = run(&[
        "cycle", "--la", "0.7", "--lb", "1.3", "--a1", "1.3", "--a2", "1.7",
    ]);
    let out = stdout(&o);
    let row = out.lines().nth(1).unwrap();
    for field in row.split(',').take(16) {
        let mantissa = field.split('e').next().unwrap();
        let digits = mantissa.chars().filter(|c| c.is_ascii_digit()).count();
        assert_eq!(digits, 17, "{field}");
        assert!(!field.contains(' '));
    }
    assert_eq!(floats(&out, "L_A")[0], 0.7);
    assert_eq!(floats(&out, "alpha1")[0], 1.3);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["cycle", "--la", "1", "--lb", "2", "--a1", "1.5"],
        vec![
            "cycle", "--la", "1", "--lb", "2", "--a1", "0.5", "--a2", "2",
        ],
        vec![
            "cycle", "--la", "-1", "--lb", "2", "--a1", "1.5", "--a2", "2",
        ],
        vec![
            "cycle", "--la", "1", "--lb", "2", "--a1", "1.5", "--a2", "2", "--th", "2", "--tc", "3",
        ],
        vec!["cycle", "--la", "x"],
        vec![
            "sweep",
            "--x",
            "alpha1=1.5:2",
            "--y",
            "alpha2=1.5:2:3",
            "--la",
            "1",
            "--lb",
            "2",
        ],
        vec![
            "sweep",
            "--x",
            "alpha1=1.5:2:2",
            "--y",
            "alpha1=1.5:2:3",
            "--la",
            "1",
            "--lb",
            "2",
            "--a2",
            "2",
        ],
        vec![
            "sweep",
            "--x",
            "alpha1=0.5:2:2",
            "--y",
            "alpha2=1.5:2:3",
            "--la",
            "1",
            "--lb",
            "2",
        ],
        vec![
            "trace",
            "--sweep",
            "alpha2=1.5:1.7:3",
            "--solve",
            "alpha2",
            "--la",
            "1",
            "--lb",
            "1.4",
            "--a1",
            "1.5",
        ],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(stdout(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn computation_error_exits_1() {
    // the level sum cannot converge within the cap
    let o = run(&[
        "cycle", "--la", "1e6", "--lb", "2e6", "--a1", "1.01", "--a2", "1.02", "--th", "1e3",
        "--tc", "1",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stderr(&o).contains("error"));
}

#[test]
fn sweep_two_by_two() {
    let o = run(&[
        "sweep",
        "--x",
        "alpha1=1.5:2:2",
        "--y",
        "alpha2=1.5:2:2",
        "--la",
        "1",
        "--lb",
        "1.5",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("x,y,L_A,"));
    assert!(out.lines().next().unwrap().ends_with(",regime,error"));
    assert_eq!(out.lines().count(), 5);
    // x-major order
    assert_eq!(floats(&out, "x"), vec![1.5, 1.5, 2.0, 2.0]);
    assert_eq!(floats(&out, "y"), vec![1.5, 2.0, 1.5, 2.0]);
    assert_eq!(floats(&out, "alpha1"), floats(&out, "x"));
}

#[test]
fn sweep_finds_regeneration_line() {
    let o = run(&[
        "sweep",
        "--x",
        "alpha1=1.01:2:30",
        "--y",
        "alpha2=1.01:2:30",
        "--la",
        "1",
        "--lb",
        "1.5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let q_r = floats(&stdout(&o), "Q_R");
    assert_eq!(q_r.len(), 900);
    assert!(q_r.iter().any(|q| *q > 0.0) && q_r.iter().any(|q| *q < 0.0));
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2)
        .map(|i| dir.path().join(format!("s{i}.csv")))
        .collect();
    for p in &paths {
        let o = run(&[
            "sweep",
            "--x",
            "la=0.5:2:12",
            "--y",
            "lb=0.5:2:12",
            "--a1",
            "1.6",
            "--a2",
            "1.8",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).is_empty());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    let b = std::fs::read(&paths[1]).unwrap();
    assert_eq!(a.len(), b.len());
    assert!(a == b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 145);
}

#[test]
fn sweep_error_nodes_carry_nan() {
    // L_A = L_B on the diagonal gives collapsed cycles, which are fine; the
    // cap failure at huge widths is stored per node
    let o = run(&[
        "sweep",
        "--x",
        "la=1e5:1e6:2",
        "--y",
        "lb=1:2e6:2",
        "--a1",
        "1.01",
        "--a2",
        "1.02",
        "--th",
        "1e3",
        "--tc",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let errs = column(&out, "error");
    assert!(errs.iter().any(|e| e.contains("partition sum")), "{out}");
    let line = out.lines().find(|l| l.contains("partition sum")).unwrap();
    assert!(line.contains(",nan,"));
}

#[test]
fn trace_passes_near_tabulated_pair() {
    let o = run(&[
        "trace",
        "--la",
        "1.0",
        "--lb",
        "1.4",
        "--sweep",
        "alpha2=1.45:1.75:13",
        "--solve",
        "alpha1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("alpha_2,alpha_1,residual,"));
    assert_eq!(out.lines().count(), 14);
    assert!(column(&out, "status").iter().all(|s| s == "ok"));
    assert!(floats(&out, "residual").iter().all(|r| *r <= 1e-8));
    let a1 = floats(&out, "alpha_1");
    assert!(a1.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn trace_single_node() {
    let o = run(&[
        "trace",
        "--la",
        "1.0",
        "--lb",
        "1.4",
        "--sweep",
        "alpha2=1.579:1.58:2",
        "--solve",
        "alpha1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn trace_gaps_are_marked() {
    // the locus sits just below α₂, so a low bracket misses it
    let o = run(&[
        "trace",
        "--la",
        "1.0",
        "--lb",
        "1.4",
        "--sweep",
        "alpha2=1.99:2:2",
        "--solve",
        "alpha1",
        "--bracket",
        "1.01:1.3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(column(&out, "status").iter().all(|s| s == "gap"));
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn trace_standard_width_locus_matches_table_signs() {
    // solve L_A along L_B at α₁ = α₂ = 2
    let o = run(&[
        "trace",
        "--a1",
        "2",
        "--a2",
        "2",
        "--sweep",
        "lb=0.9:1.8:4",
        "--solve",
        "la",
        "--bracket",
        "0.3:1.7",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    for (lb, la) in floats(&out, "width_b")
        .into_iter()
        .zip(floats(&out, "width_a"))
    {
        assert!(la < lb, "{la} {lb}");
    }
}

#[test]
fn table1_reports_every_row() {
    let o = run(&["table1"]);
    let out = stdout(&o);
    assert!(out.lines().count() >= 11);
    for needle in ["-0.1291", "0.01057", "1.565", "1.678"] {
        assert!(out.contains(needle), "{needle}\n{out}");
    }
    // exit status mirrors the row verdicts
    let all_ok = !out.contains("FAIL");
    assert_eq!(o.status.code(), Some(if all_ok { 0 } else { 1 }));
}
