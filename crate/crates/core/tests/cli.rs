use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn twistlab(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_twistlab")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn check_exit_codes() {
    assert_eq!(twistlab(&["check", &path("example1.struct")]).0, 0);
    assert_eq!(twistlab(&["check", &path("chain3.struct")]).0, 0);
    assert_eq!(twistlab(&["check", &path("two_operators.struct")]).0, 0);
    let (code, out) = twistlab(&["check", &path("example1_drawn.struct")]);
    assert_eq!(code, 1);
    assert!(out.contains("CHECK (3) FAIL witness"));
    assert!(out.contains("CLASS (lattice) NO witness x=b y=c side=upper minimal-upper-bounds={e,f}"));
}

#[test]
fn output_is_byte_stable() {
    for args in [
        vec!["check".to_string(), path("example1.struct")],
        vec!["pa".into(), path("chain3.struct"), "--a".into(), "a".into()],
        vec!["optwist".into(), path("two.struct"), "--style".into(), "compressed".into()],
        vec!["enumerate".into(), "--size".into(), "2".into(), "--filter".into(), "bcrm".into(), "--list".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(twistlab(&args), twistlab(&args));
    }
}

#[test]
fn twist_uses_file_pair_maps_and_flags() {
    let (code, out) = twistlab(&["twist", &path("two.struct")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("twist elements=4 unit=11 f=proj1 g=proj2"));
    let (code, out) = twistlab(&["twist", &path("example1.struct"), "--f", "proj2", "--g", "proj1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("CHECK (groupoid-biconditional) PASS"));
    // the unit must be sent to 1 by both maps
    assert_eq!(twistlab(&["twist", &path("example1.struct"), "--f", "proj1", "--g", "proj2", "--const", "0,1"]).0, 2);
    assert_eq!(twistlab(&["twist", &path("example1.struct")]).0, 2);
}

#[test]
fn optwist_requires_a_bounded_commutative_monoid() {
    assert_eq!(twistlab(&["optwist", &path("example1_drawn.struct")]).0, 2);
    let (code, out) = twistlab(&["optwist", &path("chain3.struct"), "--a0", "a"]);
    assert_eq!(code, 0);
    assert!(out.contains("CHECK (embedding a0=a) PASS"));
}

#[test]
fn out_flag_writes_tables() {
    let dir = std::env::temp_dir().join(format!("twistlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("tables.txt");
    let t = target.to_string_lossy().into_owned();
    let (code, out) = twistlab(&["pa", &path("chain3.struct"), "--a", "a", "--out", &t]);
    assert_eq!(code, 0);
    assert!(!out.contains("odot"));
    let written = std::fs::read_to_string(&target).unwrap();
    assert!(written.starts_with("odot"));
    let twisted = dir.join("twist.struct");
    let tw = twisted.to_string_lossy().into_owned();
    assert_eq!(twistlab(&["twist", &path("two.struct"), "--out", &tw]).0, 0);
    assert_eq!(twistlab(&["check", &tw]).0, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn restricted_twist_assumption_failure_is_distinct() {
    let (code, out) = twistlab(&["pa", &path("example1.struct"), "--a", "b"]);
    assert_eq!(code, 2);
    assert!(out.contains("STATUS ASSUMPTION-FAIL"));
    assert!(!out.contains("CHECK (closure)"));
}

#[test]
fn parse_errors_name_the_file_and_line() {
    let dir = std::env::temp_dir().join(format!("twistlab-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.struct");
    std::fs::write(&bad, "elements a b\ntable mul\na a\nb\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_twistlab")).args(["check", &bad.to_string_lossy()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.struct:4:"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}
