use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ramanujan::derive::CertificateFile;

fn run(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramanujan"))
        .args(args)
        .current_dir(cwd)
        .env_remove("RAMANUJAN_REGISTRY")
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn derive_writes_a_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["derive", "chan-liaw-3-23", "--class", "alternating", "--out", "c.json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "(14151 n + 827)(−1)^n/500^{2n} = 1500√3/π");
    let file = CertificateFile::from_json(&fs::read_to_string(dir.path().join("c.json")).unwrap()).unwrap();
    assert_eq!(file.provenance.timestamp, 1_700_000_000);
    assert_eq!(file.certificate.z.to_string(), "-1/250000");
}

#[test]
fn derive_defaults_the_output_name() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["derive", "berndt-3-5", "--class", "positive"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let file = CertificateFile::from_json(&fs::read_to_string(dir.path().join("berndt-3-5-positive.json")).unwrap()).unwrap();
    assert_eq!(file.certificate.z.to_string(), "4/125");
}

#[test]
fn derivation_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    run(&["derive", "berndt-2-7", "--out", "a.json"], dir.path());
    run(&["derive", "berndt-2-7", "--out", "b.json"], dir.path());
    let a = fs::read(dir.path().join("a.json")).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, fs::read(dir.path().join("b.json")).unwrap());
}

#[test]
fn unknown_equation_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["derive", "unknown-name"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("equation not found"));
}

#[test]
fn missing_class_reports_the_error_name() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["derive", "chan-liaw-3-23", "--class", "positive"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("UnrecognizedMultiplier"), "{}", stderr(&o));
}

#[test]
fn irrational_series_are_flagged_and_still_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["derive", "berndt-3-11", "--class", "positive", "--out", "c.json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("NonRationalSeries"));
    assert!(stdout(&o).contains("sqrt(3)"));
    let o = run(&["verify", "c.json", "--digits", "200"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["pi", "c.json", "--digits", "40"], dir.path());
    assert_eq!(stdout(&o), "3.1415926535897932384626433832795028841971\n");
}

#[test]
fn verify_passes_and_fails() {
    let dir = tempfile::tempdir().unwrap();
    run(&["derive", "berndt-3-11", "--out", "c.json"], dir.path());
    let o = run(&["verify", "c.json", "--digits", "300"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all 14 checks passed"));

    let path = dir.path().join("c.json");
    let mut file = CertificateFile::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
    file.certificate.z = file.certificate.z.scale(&ramanujan::exactnum::Rational::from_integer(2.into()));
    fs::write(dir.path().join("bad.json"), file.to_json()).unwrap();
    let o = run(&["verify", "bad.json", "--digits", "100"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL exact    z "), "{}", stdout(&o));
}

#[test]
fn malformed_certificates_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("junk.json"), "{\"schema_version\": 1}").unwrap();
    assert_eq!(run(&["verify", "junk.json"], dir.path()).status.code(), Some(2));
    fs::write(dir.path().join("v9.json"), "{\"schema_version\": 9}").unwrap();
    let o = run(&["verify", "v9.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("schema version 9"));
    assert_eq!(run(&["verify", "absent.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn pi_digits_to_stdout_and_file() {
    let dir = tempfile::tempdir().unwrap();
    run(&["derive", "chan-liaw-3-23", "--out", "c.json"], dir.path());
    let o = run(&["pi", "c.json", "--digits", "1"], dir.path());
    assert_eq!(stdout(&o), "3.1\n");
    let o = run(&["pi", "c.json", "--digits", "200", "--out", "pi.txt"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text: String = fs::read_to_string(dir.path().join("pi.txt")).unwrap().lines().collect();
    assert_eq!(text.len(), 202);
    assert!(text.starts_with("3.14159265358979323846264338327950288419716939937510"));
    assert!(text.ends_with("2848111745028410270193852110555964462294895493038196"));
}

#[test]
fn pi_refuses_a_failing_certificate_unless_forced() {
    let dir = tempfile::tempdir().unwrap();
    run(&["derive", "berndt-3-5", "--out", "c.json"], dir.path());
    let path = dir.path().join("c.json");
    let mut file = CertificateFile::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
    file.certificate.point.alpha0 = file.certificate.point.beta0.clone();
    fs::write(&path, file.to_json()).unwrap();
    let o = run(&["pi", "c.json", "--digits", "20"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--force"));
    let o = run(&["pi", "c.json", "--digits", "20", "--force"], dir.path());
    assert_eq!(stdout(&o), "3.14159265358979323846\n");
}

#[test]
fn identify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["identify", "--re", "0.5", "--im", "0"], dir.path());
    assert_eq!(stdout(&o).trim(), "1/2");
    let o = run(&["identify", "--re", "0.4714045207910317", "--im", "0", "--radicands", "2"], dir.path());
    assert_eq!(stdout(&o).trim(), "1/3*sqrt(2)");
    let o = run(&["identify", "--re", "3.14159265358979323846", "--radicands", "2,3"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "no match");
    let o = run(&["identify", "--re", "zero"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn list_builtin_and_directories() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["list"], dir.path());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5);
    let row = out.lines().find(|l| l.starts_with("chan-liaw-3-23")).unwrap();
    assert_eq!(row.split_whitespace().collect::<Vec<_>>(), ["chan-liaw-3-23", "3", "3", "23", "12", "15"]);

    let reg = dir.path().join("reg");
    fs::create_dir(&reg).unwrap();
    let o = run(&["list", "--registry", reg.to_str().unwrap()], dir.path());
    assert_eq!(stdout(&o).lines().count(), 1);

    fs::write(reg.join("mine.modeq"), "name = mine\nlevel = 3\ndegree = 5\nk = 6\npoly = \"u^2 + 3*u*v + v^2 - 1\"\n").unwrap();
    fs::write(reg.join("broken.modeq"), "name = broken\nlevel = 3\ndegree = 5\nk = 6\npoly = \"u^2 + * v\"\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ramanujan")).arg("list").env("RAMANUJAN_REGISTRY", &reg).output().unwrap();
    let out = stdout(&o);
    assert!(out.lines().nth(1).unwrap().starts_with("mine "));
    let errors = out.split_once("errors:").expect("errors section").1;
    assert!(errors.contains("broken.modeq") && errors.contains("line 5"), "{out}");
}

#[test]
fn derive_from_a_custom_registry() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("mine.modeq"), "name = mine\nlevel = 3\ndegree = 5\nk = 6\npoly = \"u^2 + 3*u*v + v^2 - 1\"\n").unwrap();
    let o = run(&["derive", "mine", "--class", "positive", "--registry", "."], dir.path());
    assert_eq!(stdout(&o).trim(), "(33 n + 4)·4^n/125^n = 15√3/(2π)");
}

#[test]
fn report_ranks_level_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["report"], dir.path());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 8, "{out}");
    assert!(out.contains("level 3 ranking: chan-liaw-3-23 (alternating) > "));
    let o = run(&["report", "--json"], dir.path());
    assert!(stdout(&o).contains("\"level3_ranking\""));
}
