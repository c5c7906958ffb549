use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .display()
        .to_string()
}

fn grpd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grpd"))
        .args(args)
        .env_remove("GRPD_BOUND")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("grpd-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        TempDir(dir)
    }

    fn file(&self, name: &str, body: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, body).unwrap();
        p.display().to_string()
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).display().to_string()
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

#[test]
fn validate_accepts_fixtures() {
    for name in ["p2", "pair3", "b22", "s3", "t6", "z1"] {
        let o = grpd(&["validate", &fixture(&format!("{name}.grpd"))]);
        assert_eq!(code(&o), 0, "{name}: {}", stderr(&o));
        assert!(stdout(&o).starts_with("ok "));
    }
}

#[test]
fn validate_reports_axiom_witness() {
    let o = grpd(&["validate", &fixture("p2_mutated.grpd")]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("axiom A1 fails at ((1,1),(1,2),(2,1))"));
}

#[test]
fn parse_errors_are_positioned() {
    let o = grpd(&["validate", &fixture("p2_bad_token.grpd")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("4:18: undeclared token `(9,9)`"));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&grpd(&["frobnicate"])), 4);
    assert_eq!(code(&grpd(&["validate"])), 4);
    assert_eq!(code(&grpd(&["validate", "/no/such/file.grpd"])), 4);
    assert_eq!(code(&grpd(&["build", "pair", "x"])), 4);
    assert_eq!(
        code(&grpd(&["verify", &fixture("s3.grpd"), "--format", "xml"])),
        4
    );
    assert_eq!(code(&grpd(&["--help"])), 0);
}

#[test]
fn info_summarizes() {
    let o = grpd(&["info", &fixture("bundle_z4_s3.grpd")]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "name bundle_Z4_S3\nelements 10\nidentities 2\nisotropy 1:0=4 2:e=6\nabelian false\n"
    );
}

#[test]
fn build_matches_fixtures() {
    let tmp = TempDir::new("build");
    let out = tmp.path("t6.grpd");
    let o = grpd(&["build", "product", "2", "S3", "-o", &out]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        std::fs::read_to_string(fixture("t6.grpd")).unwrap()
    );
    let o = grpd(&["build", "bundle", "Z2", "Z3"]);
    assert_eq!(
        stdout(&o),
        std::fs::read_to_string(fixture("bundle_z2_z3.grpd")).unwrap()
    );
}

#[test]
fn center_and_commutator() {
    let o = grpd(&["center", &fixture("s3.grpd")]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "e\n"));
    let o = grpd(&["commutator", &fixture("s3.grpd")]);
    assert_eq!(stdout(&o), "e\n(123)\n(132)\n");
    let o = grpd(&["center", &fixture("bundle_z4_s3.grpd")]);
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn subgroupoid_generation() {
    let s3 = fixture("s3.grpd");
    let o = grpd(&["subgroupoid", &s3, "--generate", &fixture("s3_gen.sub")]);
    assert_eq!(stdout(&o), "e\n(12)\n");
    let tmp = TempDir::new("gen");
    let set = tmp.file("b.sub", "(1,2)\n");
    let o = grpd(&["subgroupoid", &fixture("pair3.grpd"), "--generate", &set]);
    assert_eq!(stdout(&o), "(1,1)\n(1,2)\n(2,1)\n(2,2)\n");
    let o = grpd(&[
        "subgroupoid",
        &fixture("pair3.grpd"),
        "--generate",
        &set,
        "-w",
    ]);
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = grpd(&[
        "subgroupoid",
        &fixture("p2.grpd"),
        "--generate",
        &fixture("s3_gen.sub"),
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("unknown element `(12)`"));
}

#[test]
fn normality_commands() {
    let s3 = fixture("s3.grpd");
    assert_eq!(
        code(&grpd(&["normal", &s3, "--sub", &fixture("s3_a3.sub")])),
        0
    );
    let o = grpd(&["normal", &s3, "--sub", &fixture("s3_h.sub")]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "not normal\n"));
    let o = grpd(&["normalizer", &s3, "--sub", &fixture("s3_h.sub")]);
    assert_eq!(stdout(&o), "e\n(12)\n");
    let o = grpd(&["closure", &s3, "--set", &fixture("s3_gen.sub")]);
    assert_eq!(stdout(&o).lines().count(), 6);
    let tmp = TempDir::new("normal");
    let not_sub = tmp.file("x.sub", "(12)\n(13)\n");
    let o = grpd(&["normal", &s3, "--sub", &not_sub]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("not a subgroupoid"));
    let narrow = tmp.file("n.sub", "(1,1)\n");
    let o = grpd(&["normal", &fixture("p2.grpd"), "--sub", &narrow]);
    assert_eq!(
        (code(&o), stdout(&o).as_str()),
        (1, "not normal (not wide)\n")
    );
}

#[test]
fn quotients() {
    let tmp = TempDir::new("quotient");
    let q = tmp.path("q.grpd");
    let o = grpd(&[
        "quotient",
        &fixture("s3.grpd"),
        "--sub",
        &fixture("s3_a3.sub"),
        "-o",
        &q,
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "[e] = {e (123) (132)}\n[(12)] = {(12) (13) (23)}\n"
    );
    assert_eq!(code(&grpd(&["validate", &q])), 0);

    let o = grpd(&["abelianize", &fixture("t6.grpd")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("groupoid pair2xS3_mod\n"));

    let whole = tmp.file("all.sub", "(1,1)\n(1,2)\n(2,1)\n(2,2)\n");
    let o = grpd(&["quotient", &fixture("p2.grpd"), "--sub", &whole]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("coset product is not well defined"));
    let o = grpd(&[
        "quotient",
        &fixture("s3.grpd"),
        "--sub",
        &fixture("s3_h.sub"),
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn inner_and_bound() {
    let s3 = fixture("s3.grpd");
    let o = grpd(&["inner", &s3]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("inner 6\n"));
    assert!(out.contains("I[(123)] e -> e: e->e (12)->(23)"));
    assert!(out.contains("partial-isos 6\ninner-normal true\n"));

    let low = Command::new(env!("CARGO_BIN_EXE_grpd"))
        .args(["inner", &s3])
        .env("GRPD_BOUND", "4")
        .output()
        .unwrap();
    assert!(stdout(&low).contains("partial-isos skipped (isotropy order 6 exceeds bound 4)"));
    let bad = Command::new(env!("CARGO_BIN_EXE_grpd"))
        .args(["inner", &s3])
        .env("GRPD_BOUND", "many")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 4);
}

#[test]
fn checkmap_classifies() {
    let (s3, z2) = (fixture("s3.grpd"), fixture("z2.grpd"));
    let o = grpd(&["checkmap", &s3, &z2, "--map", &fixture("s3_sign.map")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("homomorphism true\nstrong true\n"));
    assert!(stdout(&o).ends_with("kernel e (123) (132)\n"));
    let o = grpd(&["checkmap", &s3, &z2, "--map", &fixture("s3_bad.map")]);
    assert_eq!(code(&o), 1);
    let tmp = TempDir::new("map");
    let partial = tmp.file("p.map", "e -> 0\n");
    let o = grpd(&["checkmap", &s3, &z2, "--map", &partial]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("unmapped"));
    let garbled = tmp.file("g.map", "e => 0\n");
    let o = grpd(&["checkmap", &s3, &z2, "--map", &garbled]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("1:3:"));
}

#[test]
fn verify_reports() {
    let o = grpd(&["verify", &fixture("t6.grpd")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.starts_with("groupoid pair2xS3 (24 elements), sampled family"));
    assert!(text.ends_with("32/32 checks passed\n"));

    let o = grpd(&["verify", &fixture("s3.grpd"), "--format", "lines"]);
    let lines = stdout(&o);
    assert!(lines.starts_with("# groupoid S3 size=6 mode=enumerated family=6\n"));
    assert!(lines.lines().any(|l| l == "CHECK P5.2.4 PASS"));
    assert!(lines
        .lines()
        .all(|l| l.starts_with('#') || l.ends_with(" PASS")));

    let o = grpd(&[
        "verify",
        &fixture("s3.grpd"),
        "--format",
        "lines",
        "--sub",
        &fixture("s3_h.sub"),
        "--sub2",
        &fixture("s3_k.sub"),
    ]);
    assert_eq!(stdout(&o).lines().last(), Some("CHECK P2.7 PASS"));

    let o = grpd(&["verify", &fixture("p2_mutated.grpd"), "--format", "lines"]);
    assert_eq!(code(&o), 3);
    assert_eq!(stdout(&o), "CHECK AXIOMS FAIL A1 ((1,1),(1,2),(2,1))\n");
}

#[test]
fn verify_discloses_skips() {
    let o = Command::new(env!("CARGO_BIN_EXE_grpd"))
        .args(["verify", &fixture("d4.grpd"), "--format", "lines"])
        .env("GRPD_BOUND", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("# skipped P5.2.1: isotropy order 8 exceeds bound 2\n"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec![
            "verify".to_string(),
            fixture("t6.grpd"),
            "--format".into(),
            "lines".into(),
        ],
        vec!["inner".to_string(), fixture("bundle_z4_s3.grpd")],
        vec!["abelianize".to_string(), fixture("d4.grpd")],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (grpd(&args), grpd(&args));
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stderr, b.stderr);
    }
}

#[test]
fn fixtures_round_trip_through_cli() {
    let tmp = TempDir::new("roundtrip");
    for name in ["p2", "b22", "d4"] {
        let src = fixture(&format!("{name}.grpd"));
        let text = std::fs::read_to_string(&src).unwrap();
        let copy = tmp.file(&format!("{name}.grpd"), &text);
        assert!(Path::new(&copy).exists());
        assert_eq!(code(&grpd(&["validate", &copy])), 0);
    }
}
