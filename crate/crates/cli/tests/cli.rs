use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(format!("{name}.toml"))
}

fn ilat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ilat"))
        .args(args)
        .env_remove("ILAT_THREADS")
        .output()
        .expect("run ilat")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn compute(name: &str, out: &Path) -> Output {
    let o = ilat(&[
        "compute",
        config(name).to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    o
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

/// Scale column and value of every data row.
fn rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split('\t').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn rerun_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    compute("anderson-localized", &a);
    compute("anderson-localized", &b);
    for f in ["lattice.tsv", "table.tsv", "per_scale.tsv", "fit.tsv"] {
        assert_eq!(read(&a.join(f)), read(&b.join(f)), "{f}");
    }
    let first = read(&a.join("lattice.tsv"));
    let o = compute("anderson-localized", &a);
    assert!(stdout(&o).contains("6084 from cache"), "{}", stdout(&o));
    assert_eq!(read(&a.join("lattice.tsv")), first);
}

#[test]
fn threads_do_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let run = |out: &Path, threads: &str| {
        let o = ilat(&[
            "compute",
            config("cat").to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--threads",
            threads,
        ]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    };
    run(&a, "1");
    run(&b, "3");
    assert_eq!(read(&a.join("lattice.tsv")), read(&b.join("lattice.tsv")));
}

#[test]
fn manifest_records_the_run() {
    let dir = tempfile::tempdir().unwrap();
    compute("singlets", dir.path());
    let m = read(&dir.path().join("manifest.toml"));
    for key in [
        "config_hash",
        "ilat_version",
        "infolattice_version",
        "fingerprint",
        "[timings]",
    ] {
        assert!(m.contains(key), "{key} missing from\n{m}");
    }
}

#[test]
fn bulk_touching_the_edge_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(
        &cfg,
        "[model]\nkind = \"cat\"\nnx = 4\nny = 4\nphase = 0.0\n\n[plan]\nkind = \"bulk\"\nregion = [0, 1, 2, 2]\n",
    )
    .unwrap();
    let o = ilat(&["compute", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("nx >= 1"), "{}", stderr(&o));
}

#[test]
fn unknown_config_field_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(
        &cfg,
        "[model]\nkind = \"cat\"\nnx = 4\nny = 4\nphase = 0.0\nspin = 2\n",
    )
    .unwrap();
    let o = ilat(&["compute", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let e = stderr(&o);
    assert!(e.contains("spin") && e.contains("line 6"), "{e}");
}

#[test]
fn compute_failure_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.toml");
    let text = read(&config("twist-reference")) + "\n[compute]\ndense_limit = 2\n";
    std::fs::write(&cfg, text).unwrap();
    let o = ilat(&[
        "compute",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
}

#[test]
fn malformed_lattice_is_rejected_with_its_line() {
    let dir = tempfile::tempdir().unwrap();
    compute("cat", dir.path());
    let path = dir.path().join("lattice.tsv");
    let mut lines: Vec<String> = read(&path).lines().map(String::from).collect();
    lines[9] = "0\t0\tx\t0\t1".into();
    std::fs::write(&path, lines.join("\n")).unwrap();
    let o = ilat(&[
        "reduce",
        path.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 10"), "{}", stderr(&o));
}

#[test]
fn cat_per_scale_has_one_bit_at_the_top() {
    let dir = tempfile::tempdir().unwrap();
    compute("cat", dir.path());
    let o = ilat(&[
        "reduce",
        dir.path().join("lattice.tsv").to_str().unwrap(),
        "--kind",
        "per-scale",
        "--axis",
        "x",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let per = rows(&read(&dir.path().join("per_scale.tsv")));
    let top = per.iter().find(|r| r[0] == 5.0).unwrap()[1];
    assert!((top - 1.0).abs() < 1e-10);
}

#[test]
fn per_scale_matches_multiscale_sums() {
    let dir = tempfile::tempdir().unwrap();
    compute("anderson-localized", dir.path());
    for axis in ["x", "y"] {
        let o = ilat(&[
            "reduce",
            dir.path().join("lattice.tsv").to_str().unwrap(),
            "--axis",
            axis,
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let multi = rows(&read(&dir.path().join("multiscale.tsv")));
        for r in rows(&read(&dir.path().join("per_scale.tsv"))) {
            let col = if axis == "x" { 0 } else { 1 };
            let sum: f64 = multi.iter().filter(|m| m[col] == r[0]).map(|m| m[2]).sum();
            assert!(
                (sum - r[1]).abs() < 1e-9,
                "{axis} l={}: {sum} vs {}",
                r[0],
                r[1]
            );
        }
    }
}

#[test]
fn toric_patch_boundary_sum_is_minus_one_bit() {
    let dir = tempfile::tempdir().unwrap();
    compute("toric-open", dir.path());
    let o = ilat(&[
        "reduce",
        dir.path().join("lattice.tsv").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("gamma_top  1.00000000000e0"), "{s}");
    assert!(s.contains("gamma_sum  1.00000000000e0"), "{s}");
}

#[test]
fn lattice_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    compute("toric-plane", dir.path());
    let text = read(&dir.path().join("lattice.tsv"));
    let lattice = infolattice::tsv::lattice_from_str(&text).unwrap();
    assert_eq!(infolattice::tsv::lattice_to_string(&lattice), text);
}

#[test]
fn oracle_examples_agree() {
    for name in [
        "oracle-anderson",
        "oracle-toric",
        "oracle-pip",
        "singlets",
        "cat",
        "twist-reference",
    ] {
        let o = ilat(&["oracle", config(name).to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{name}: {}", stderr(&o));
    }
}

#[test]
fn oracle_mismatch_exits_3() {
    let o = ilat(&[
        "oracle",
        config("oracle-anderson").to_str().unwrap(),
        "--tolerance",
        "0",
    ]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
}

#[test]
fn oversized_oracle_is_rejected() {
    let o = ilat(&["oracle", config("anderson-critical").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("smaller instance"), "{}", stderr(&o));
}

#[test]
fn seed_override_changes_the_state() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let cfg = config("oracle-anderson");
    for (out, seed) in [(&a, "1"), (&b, "2")] {
        let o = ilat(&[
            "compute",
            cfg.to_str().unwrap(),
            "--seed",
            seed,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
    }
    assert_ne!(read(&a.join("lattice.tsv")), read(&b.join("lattice.tsv")));
    let o = ilat(&["compute", config("cat").to_str().unwrap(), "--seed", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn thread_variable_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_ilat"))
        .args(["compute", config("triangle").to_str().unwrap(), "--out"])
        .arg(tempfile::tempdir().unwrap().path())
        .env("ILAT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("ILAT_THREADS"));
}

#[test]
fn fits_from_files() {
    let dir = tempfile::tempdir().unwrap();
    compute("anderson-critical", dir.path());
    let out = dir.path().join("fit.tsv");
    let o = ilat(&[
        "fit",
        dir.path().join("per_scale.tsv").to_str().unwrap(),
        "--kind",
        "power-law",
        "--window",
        "3,8",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(read(&out).contains("# fit power-law"));
    let o = ilat(&[
        "reduce",
        dir.path().join("lattice.tsv").to_str().unwrap(),
        "--kind",
        "multiscale",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let o = ilat(&[
        "fit",
        dir.path().join("multiscale.tsv").to_str().unwrap(),
        "--kind",
        "direction",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(
        stdout(&o).contains("(0.707107, 0.707107)"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn plot_export() {
    let dir = tempfile::tempdir().unwrap();
    compute("singlets", dir.path());
    let lattice = dir.path().join("lattice.tsv");
    for fig in ["lattice", "multiscale", "quasi1d", "per-scale"] {
        let o = ilat(&["export-plot", lattice.to_str().unwrap(), "--figure", fig]);
        assert_eq!(code(&o), 0, "{fig}: {}", stderr(&o));
        let s = stdout(&o);
        assert!(
            s.starts_with("# ilat v1") && s.contains("x\ty\tweight"),
            "{fig}"
        );
    }
    let o = ilat(&[
        "export-plot",
        "--figure",
        "sites",
        "--config",
        config("toric-open").to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o).lines().filter(|l| !l.starts_with('#')).count(),
        1 + 84
    );
}
