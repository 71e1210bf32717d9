use std::process::Command;

fn fixtures() -> String {
    format!("{}/../../fixtures", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ntors"))
        .current_dir(fixtures())
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn lines_with(text: &str, head: &str) -> Vec<String> {
    text.lines().filter(|l| l.starts_with(head)).map(String::from).collect()
}

#[test]
fn model_listings() {
    let (code, out, _) = run(&["model", "A.alg"]);
    assert_eq!(code, 0);
    assert_eq!(lines_with(&out, "indec").len(), 5);
    assert_eq!(lines_with(&run(&["model", "trivial.alg"]).1, "indec").len(), 1);
    assert_eq!(lines_with(&run(&["model", "B.alg"]).1, "indec").len(), 16);
}

#[test]
fn n_torsion_listing() {
    let (code, out, _) = run(&["ntors", "A.alg", "--load", "A.cluster", "--format", "tsv"]);
    assert_eq!(code, 0);
    let classes = lines_with(&out, "ntors\t");
    for expected in ["ntors\t{3}", "ntors\t{1,1\\2}", "ntors\t{1,1\\2,2\\3}"] {
        assert!(classes.iter().any(|l| l == expected), "{expected}");
    }
    // n = 1 on the whole model lists the classical torsion classes
    let (_, one, _) = run(&["ntors", "A.alg", "--n", "1"]);
    let (_, tors, _) = run(&["tors", "A.alg"]);
    assert_eq!(lines_with(&one, "ntors").len(), lines_with(&tors, "tors").len());
}

#[test]
fn equivariant_listing() {
    let (code, out, _) = run(&[
        "ntors",
        "B.alg",
        "--load",
        "B.cluster",
        "--load",
        "B.action",
        "--equivariant",
        "Z2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(lines_with(&out, "ntors").len(), 8);
    assert!(out.contains("{1,5}  {1}  pass"));
}

#[test]
fn hn_commands() {
    let base = [
        "hn",
        "A.alg",
        "--load",
        "A.cluster",
        "--load",
        "delta.chain",
        "--chain",
        "delta",
    ];
    let (code, out, _) = run(&[&base[..], &["--object", "2\\3"]].concat());
    assert_eq!(code, 0);
    assert!(out.contains("hn  0 ⊂ 3 ⊂ 2\\3  s=2/3,1/3"));
    let (code, out, _) = run(&[&base[..], &["--object", "3", "--compare"]].concat());
    assert_eq!(code, 0);
    assert!(out.contains("compare  match"));
    let (code, out, _) = run(&[
        "hn",
        "B.alg",
        "--load",
        "B.cluster",
        "--load",
        "delta6.chain",
        "--load",
        "B.action",
        "--object",
        "8\\1+4\\5",
        "--chain",
        "delta6",
        "--pushdown",
        "Z2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("orbit  0 ⊂ 1^2 ⊂ 4\\1^2  s=2/3,1/3"));
    assert!(out.contains("multiplicity"));
}

#[test]
fn pushdown_command() {
    let (code, out, _) = run(&[
        "pushdown",
        "B.alg",
        "--load",
        "B.action",
        "--load",
        "B.cluster",
        "--object",
        "8\\1",
        "--cluster",
        "M",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("vertices 4"));
    assert!(out.contains("object  8\\1  4\\1"));
    assert!(out.contains("subcategory"));
}

#[test]
fn suites_pass() {
    let a = [
        "A.alg",
        "--load",
        "A.cluster",
        "--load",
        "delta.chain",
        "--load",
        "delta5.chain",
    ];
    for suite in ["torsion-axioms", "ntors-equivalence", "embed-poset", "hn-comparison"] {
        let (code, out, err) = run(&[&["verify"][..], &a, &["--suite", suite]].concat());
        assert_eq!(code, 0, "{suite}: {out}{err}");
        assert!(out.ends_with("suite  pass\n"));
    }
    let (code, out, _) = run(&[
        "verify",
        "B.alg",
        "--load",
        "B.cluster",
        "--load",
        "B.action",
        "--load",
        "delta6.chain",
        "--suite",
        "covering",
    ]);
    assert_eq!(code, 0);
    assert_eq!(lines_with(&out, "pass  row").len(), 8);
    assert_eq!(run(&["verify", "trivial.alg", "--suite", "torsion-axioms"]).0, 0);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["model", "missing.alg"]).0, 2);
    let (code, _, err) = run(&[
        "hn",
        "A.alg",
        "--load",
        "delta.chain",
        "--object",
        "7",
        "--chain",
        "delta",
    ]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    assert_eq!(
        run(&[
            "hn",
            "A.alg",
            "--load",
            "A.cluster",
            "--load",
            "delta.chain",
            "--object",
            "0",
            "--chain",
            "delta"
        ])
        .0,
        2
    );
    assert_eq!(run(&["ntors", "B.alg", "--load", "B.cluster", "--equivariant"]).0, 2);
    assert_eq!(run(&["tors", "B.alg", "--bound", "4"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify",
        "A.alg",
        "--load",
        "A.cluster",
        "--load",
        "delta.chain",
        "--suite",
        "hn-comparison",
        "--format",
        "tsv",
    ];
    assert_eq!(run(&args).1, run(&args).1);
    assert_eq!(run(&["tors", "B.alg"]).1, run(&["tors", "B.alg"]).1);
}
