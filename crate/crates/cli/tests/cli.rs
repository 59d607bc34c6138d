use level2coh::modspaces::{GradedRep, ReferenceTables};
use std::path::Path;
use std::process::{Command, Output};

const HYP3_POLY: &str = "36+720t+5580t^2+20880t^3+37584t^4+25920t^5";

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_level2coh"));
    cmd.args(args);
    for var in ["LEVEL2COH_CACHE_DIR", "LEVEL2COH_THREADS", "LEVEL2COH_FORMAT", "LEVEL2COH_REFERENCE_DIR"] {
        cmd.env_remove(var);
    }
    cmd.envs(envs.iter().copied());
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn unknown_space_is_a_usage_error() {
    let o = run(&["compute", "bogus"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "bogus"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["export", "hyp3", "--format", "xml"], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exports_are_byte_stable_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = run(&["export", "q-flx", "--threads", "2"], &[]);
    assert!(first.status.success());
    let csv = stdout(&first);
    assert_eq!(csv.lines().count(), 8, "header plus degrees 0..6");
    let rep = GradedRep::from_csv(&csv).unwrap();
    assert_eq!(rep.to_csv(), csv);

    let poly = run(&["export", "hyp3"], &[("LEVEL2COH_FORMAT", "poly")]);
    assert_eq!(stdout(&poly), format!("{HYP3_POLY}\n"));

    // Written files equal stdout, across a cold and a warm run.
    for _ in 0..2 {
        let o = run(&["--cache-dir", d, "export", "q-flx", "--out", d], &[]);
        assert!(o.status.success());
        assert_eq!(std::fs::read_to_string(dir.path().join("q-flx.csv")).unwrap(), csv);
    }
}

#[test]
fn verify_hyp3_passes_and_a_corrupted_cache_fails() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cold = run(&["verify", "hyp3"], &[("LEVEL2COH_CACHE_DIR", d)]);
    assert_eq!(cold.status.code(), Some(0), "{}", stdout(&cold));
    assert!(stdout(&cold).contains("PASS hyp3 table"));
    assert!(stdout(&cold).contains(&format!("PASS hyp3 Poincare vs stated: {HYP3_POLY}")));
    let warm = run(&["verify", "hyp3"], &[("LEVEL2COH_CACHE_DIR", d)]);
    assert_eq!(stdout(&warm), stdout(&cold));

    let entry = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.file_name().unwrap().to_str().unwrap().starts_with("m0n-8-"))
        .expect("cache entry written");
    let text = std::fs::read_to_string(&entry).unwrap();
    let corrupted = text.replacen("[[\\\"1\\\"", "[[\\\"2\\\"", 1);
    assert_ne!(corrupted, text);
    std::fs::write(&entry, corrupted).unwrap();
    let o = run(&["verify", "hyp3"], &[("LEVEL2COH_CACHE_DIR", d)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("checksum"));
}

fn write_references(dir: &Path, corrupt: bool) {
    let refs = ReferenceTables::shipped().unwrap();
    for (name, table) in &refs.tables {
        let mut t = table.clone();
        if corrupt && name == "hyp3" {
            t.rows[0][0] += 1;
        }
        std::fs::write(dir.join(format!("{name}.csv")), t.to_csv()).unwrap();
    }
}

#[test]
fn reference_directory_overrides_the_shipped_tables() {
    let dir = tempfile::tempdir().unwrap();
    write_references(dir.path(), true);
    let d = dir.path().to_str().unwrap();
    let o = run(&["--reference-dir", d, "verify", "hyp3"], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL hyp3 table: 1 mismatching cells, first hyp3 H^0 phi_1a: reference 2, computed 1"), "{}", stdout(&o));
}

#[test]
fn compute_prints_headed_tables() {
    let o = run(&["compute", "hyp3", "hyp31", "--format", "poly"], &[]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# hyp3");
    assert_eq!(lines[1], HYP3_POLY);
    assert_eq!(lines[2], "# hyp31");
    assert!(lines[3].starts_with("36+720t+5616t^2"));
}
