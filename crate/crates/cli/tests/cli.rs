use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn twobar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twobar"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("twobar-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn solve_exact_reports_status_line() {
    let o = twobar(&["solve", &fixture("three.txt"), "-a", "exact"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].contains("length=4"), "{out}");
    let fields: Vec<&str> = lines[1].split(' ').collect();
    assert_eq!(&fields[..3], ["optimal", "4", "4"]);
}

#[test]
fn solve_exports_lp_and_placement() {
    let dir = scratch("solve");
    let lp = dir.join("m.lp");
    let pl = dir.join("p.txt");
    let o = twobar(&[
        "solve",
        &fixture("single.txt"),
        "--lp-export",
        lp.to_str().unwrap(),
        "--placement",
        pl.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(
        fs::read_to_string(&lp).unwrap(),
        fs::read_to_string(fixture("single.lp")).unwrap()
    );
    assert_eq!(fs::read_to_string(&pl).unwrap().lines().count(), 1);
}

#[test]
fn gen_then_bench() {
    let dir = scratch("bench");
    let o = twobar(&[
        "gen",
        "-n",
        "6",
        "--count",
        "3",
        "--seed",
        "5",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 3);
    let cfg = dir.join("b.toml");
    fs::write(
        &cfg,
        format!(
            "instances = [\"{}/*.txt\"]\nalgorithms = [\"GA_LO\", \"Mw\"]\n",
            dir.display()
        ),
    )
    .unwrap();
    let par = twobar(&["bench", cfg.to_str().unwrap()]);
    let seq = twobar(&["--strict", "bench", "--sequential", cfg.to_str().unwrap()]);
    assert!(par.status.success() && seq.status.success());
    assert_eq!(stdout(&par), stdout(&seq));
    // header plus two algorithms per instance
    assert_eq!(stdout(&par).lines().count(), 7);
}

#[test]
fn strict_bench_fails_on_bad_instance() {
    let dir = scratch("strict");
    fs::write(dir.join("bad.txt"), "2 10\n3 4\n").unwrap();
    let cfg = dir.join("b.toml");
    fs::write(&cfg, format!("instances = [\"{}/*.txt\"]\n", dir.display())).unwrap();
    let lenient = twobar(&["bench", cfg.to_str().unwrap()]);
    assert!(lenient.status.success());
    assert!(!lenient.stderr.is_empty());
    let strict = twobar(&["--strict", "bench", cfg.to_str().unwrap()]);
    assert!(!strict.status.success());
}

#[test]
fn bpp_import_with_solution() {
    let dir = scratch("bpp");
    let inst = dir.join("i.txt");
    let sol = dir.join("s.txt");
    let out = dir.join("charts.txt");
    fs::write(&inst, "4\n10\n6\n4\n7\n3\n").unwrap();
    fs::write(&sol, "2\n0 1\n2 3\n").unwrap();
    let o = twobar(&[
        "bpp-import",
        inst.to_str().unwrap(),
        "--solution",
        sol.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("bins=2 "), "{}", stdout(&o));
    let solved = twobar(&["solve", out.to_str().unwrap()]);
    assert!(solved.status.success());
}

#[test]
fn unknown_digraph_variant_is_an_error() {
    let o = twobar(&["digraph", &fixture("three.txt"), "--variant", "a3"]);
    assert!(!o.status.success());
}
