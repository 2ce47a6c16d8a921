use std::path::PathBuf;
use std::process::{Command, Output};

use tzrank_cli::record::{ExperimentRecord, HEADER};
use tzrank_cli::violations;

fn tzrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tzrank")).args(args).output().expect("binary runs")
}

fn parse_rows(out: &Output) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), HEADER);
    r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()).collect()
}

#[test]
fn bound_calc_rows() {
    let out = tzrank(&["bound-calc", "--problem", "hilbert", "--n", "10", "--eps-sweep", "1e-10"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = parse_rows(&out);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "bound-hilbert");
    assert_eq!(rows[0][1], "10");
    assert_eq!(rows[0][2].parse::<f64>().unwrap(), 1e-10);
    assert_eq!(rows[0][7], "12");
    assert_eq!(rows[0][9], "1680");
    // time_ms empty without --timings
    assert_eq!(rows[0][11], "");

    let out = tzrank(&["bound-calc", "--problem", "interval", "--n", "10", "--lo", "1", "--hi", "100", "--eps-sweep", "1e-2:1e-4"]);
    assert!(out.status.success());
    let rows = parse_rows(&out);
    assert_eq!(rows.len(), 3);
    let s1: Vec<usize> = rows.iter().map(|r| r[7].parse().unwrap()).collect();
    assert!(s1.windows(2).all(|w| w[0] <= w[1]), "{s1:?}");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["hilbert", "--n", "8,12", "--eps-sweep", "1e-2:1e-6"];
    let one = Command::new(env!("CARGO_BIN_EXE_tzrank")).args(args).env("TZ_THREADS", "1").output().unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_tzrank")).args(args).env("TZ_THREADS", "4").output().unwrap();
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
    let rows = parse_rows(&one);
    assert_eq!(rows.len(), 10);
    assert_eq!(rows.iter().map(|r| r[1].as_str()).collect::<Vec<_>>()[..6], ["8", "8", "8", "8", "8", "12"]);
    for r in &rows {
        let (obs, bound): (usize, usize) = (r[6].parse().unwrap(), r[7].parse().unwrap());
        assert!(obs <= bound);
        assert!(r[10].parse::<f64>().unwrap() < 1e-2);
    }
}

#[test]
fn output_flag_writes_file() {
    let path: PathBuf = std::env::temp_dir().join(format!("tzrank-cli-test-{}.csv", std::process::id()));
    let out = tzrank(&["bound-calc", "--problem", "poisson-fd", "--n", "20", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), HEADER.join(","));
    assert!(lines.next().unwrap().starts_with("bound-poisson-fd,20,"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["no-such-command"],
        vec!["hilbert", "--eps-sweep", "2:1e-3"],
        vec!["hilbert", "--n", "0"],
        vec!["bound-calc", "--problem", "interval", "--n", "10"],
        vec!["bench-solvers", "--solvers", "magic"],
    ] {
        assert_eq!(tzrank(&args).status.code(), Some(2), "{args:?}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_tzrank"))
        .args(["bound-calc", "--problem", "hilbert", "--n", "10"])
        .env("TZ_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn violations_are_listed() {
    let mut ok = ExperimentRecord::new("hilbert", 10);
    ok.s1_observed = Some(5);
    ok.s1_bound = Some(5);
    let mut bad = ExperimentRecord::new("gauss-bumps", 10);
    bad.s1_observed = Some(9);
    bad.s1_bound = Some(4);
    let v = violations(&[ok, bad]);
    assert_eq!(v.len(), 1);
    assert!(v[0].starts_with("gauss-bumps n=10") && v[0].ends_with("9 > 4"), "{}", v[0]);
}
