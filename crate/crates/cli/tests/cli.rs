use std::path::PathBuf;
use std::process::{Command, Output};

fn project(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../projects")
        .join(name)
}

fn ppsort(args: &[&str], cache_dir: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ppsort"));
    cmd.args(args).env_remove("PPSORT_CACHE_DIR");
    if let Some(d) = cache_dir {
        cmd.env("PPSORT_CACHE_DIR", d);
    }
    cmd.output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = ppsort(args, None);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(name: &str) -> String {
    project(name).to_string_lossy().into_owned()
}

#[test]
fn decompose_reports() {
    let a3 = path("a3.toml");
    let out = run_ok(&["decompose", &a3, "regular"]);
    assert_eq!(out.lines().last(), Some("P(1) + P(2) + P(3)"));
    assert!(out.contains("certificate ok"));
    let zero = run_ok(&["decompose", &a3, "zero"]);
    assert_eq!(zero.lines().last(), Some("0"));
    let rk = run_ok(&["decompose", &path("dual_numbers.toml"), "RK"]);
    assert_eq!(rk.lines().filter(|l| l.contains('\t')).count(), 2);
}

#[test]
fn ar_quiver_summaries() {
    let a3 = run_ok(&["ar-quiver", &path("a3.toml")]);
    assert_eq!(
        a3.lines().last(),
        Some("6 indecomposables, 6 arrows, 3 AR sequences")
    );
    assert!(a3.starts_with("digraph"));
    let k = run_ok(&["ar-quiver", &path("dual_numbers.toml")]);
    assert!(k.lines().last().unwrap().starts_with("2 indecomposables"));
    let aus = run_ok(&["ar-quiver", "--auslander", &path("a3.toml")]);
    assert!(aus
        .lines()
        .last()
        .unwrap()
        .starts_with("17 indecomposables"));
}

#[test]
fn pp_eval_and_exit_codes() {
    let k = path("dual_numbers.toml");
    assert!(run_ok(&["pp-eval", &k, "div", "R"]).starts_with("dim 1\n"));
    assert!(run_ok(&["pp-eval", &k, "ann", "R"]).starts_with("dim 1\n"));
    assert!(run_ok(&["pp-eval", &k, "x = x", "R"]).starts_with("dim 2\n"));
    assert!(run_ok(&["pp-eval", &k, "T", "K"]).starts_with("dim 1\n"));
    assert!(run_ok(&["pp-eval", &k, "T", "R"]).starts_with("dim 0\n"));
    assert!(run_ok(&["pp-eval", &path("a3.toml"), "f11", "p2"]).starts_with("dim 1\n"));
    assert_eq!(
        ppsort(&["pp-eval", &k, "e*x = = 0", "R"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ppsort(&["pp-eval", &path("a3.toml"), "a*x:2 = 0", "p1"], None)
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        ppsort(&["pp-eval", &k, "div", "nope"], None).status.code(),
        Some(2)
    );
}

#[test]
fn functor_listings() {
    let k = run_ok(&["functors", &path("dual_numbers.toml")]);
    let mut series: Vec<&str> = k
        .lines()
        .filter(|l| l.starts_with('F'))
        .map(|l| l.split('\t').nth(1).unwrap())
        .collect();
    series.sort_unstable();
    assert_eq!(series, ["S", "S/T", "S/T/S", "T", "T/S"]);
    let a3 = run_ok(&["functors", &path("a3.toml")]);
    assert_eq!(a3.lines().filter(|l| l.starts_with('F')).count(), 17);
    let pt = run_ok(&["functors", &path("point.toml")]);
    assert_eq!(pt.lines().filter(|l| l.starts_with('F')).count(), 1);
}

#[test]
fn localisations() {
    let a3 = path("a3.toml");
    let out = run_ok(&["localize", &a3, "--exclude", "p3"]);
    assert!(out.contains("serre 1\n"));
    assert!(out.contains("quotient 14 indecomposables"));
    assert_eq!(out.lines().filter(|l| l.starts_with("merged")).count(), 2);
    let tilt = run_ok(&["localize", &a3, "--keep", "p1", "p2", "s2"]);
    assert!(tilt.contains("quotient 6 indecomposables"));
    assert!(tilt.contains("gabriel quiver (0,1,1) -> (0,1,0); (0,1,1) -> (1,1,1)"));
    let k = run_ok(&["localize", &path("dual_numbers.toml"), "--keep", "R"]);
    assert!(k.contains("serre 1\n"));
    assert!(k.contains("quotient 2 indecomposables"));
}

#[test]
fn tensor_tables() {
    let r = run_ok(&["tensor-table", &path("dual_numbers.toml")]);
    let rows: Vec<&str> = r.lines().collect();
    assert_eq!(rows[0], "⊗\tS\tT\tT/S\tS/T\tS/T/S");
    assert_eq!(rows[5], "S/T/S\tS\tT\tT/S\tS/T\tS/T/S");
    let k = run_ok(&["tensor-table", &path("dual_numbers_f2.toml")]);
    assert_eq!(k.lines().nth(1), Some("S\tS/T\t0\tS\tS/T\tS/T/S"));
    let forced = ppsort(
        &[
            "tensor-table",
            "--structure",
            "diagonal",
            &path("dual_numbers.toml"),
        ],
        None,
    );
    assert_eq!(forced.status.code(), Some(3));
}

#[test]
fn reports_are_deterministic() {
    let a = run_ok(&["functors", &path("a3.toml")]);
    let b = run_ok(&["functors", &path("a3.toml")]);
    assert_eq!(a, b);
}

#[test]
fn cache_round_trip_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let a3 = path("a3.toml");
    let save = ppsort(&["cache", "save", &a3], Some(dir.path()));
    assert!(
        save.status.success(),
        "{}",
        String::from_utf8_lossy(&save.stderr)
    );
    let file = dir.path().join("a3.json");
    let first = std::fs::read(&file).unwrap();
    assert!(ppsort(&["cache", "save", &a3], Some(dir.path()))
        .status
        .success());
    assert_eq!(first, std::fs::read(&file).unwrap());

    let fresh = run_ok(&["localize", &a3, "--exclude", "p3"]);
    let cached = ppsort(&["localize", &a3, "--exclude", "p3"], Some(dir.path()));
    assert_eq!(String::from_utf8(cached.stdout).unwrap(), fresh);
    let cached_functors = ppsort(&["functors", &a3], Some(dir.path()));
    assert_eq!(
        String::from_utf8(cached_functors.stdout).unwrap(),
        run_ok(&["functors", &a3])
    );

    let report = run_ok(&["cache", "load", &file.to_string_lossy()]);
    assert!(report.contains("modules 6") && report.contains("functors 17"));

    let text = String::from_utf8(first).unwrap();
    std::fs::write(&file, text.replacen("\"version\": 1", "\"version\": 7", 1)).unwrap();
    assert_eq!(
        ppsort(&["functors", &a3], Some(dir.path())).status.code(),
        Some(4)
    );
    std::fs::write(&file, &text[..text.len() / 3]).unwrap();
    assert_eq!(
        ppsort(&["cache", "load", &file.to_string_lossy()], None)
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn project_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(
        &bad,
        "field = \"Q\"\nshape = 1\n[quiver]\nvertices = [\"1\"]\n",
    )
    .unwrap();
    assert_eq!(
        ppsort(&["functors", &bad.to_string_lossy()], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ppsort(&["functors", "--field", "F4", &path("point.toml")], None)
            .status
            .code(),
        Some(2)
    );
}
