use spatial_quandle::cli::{run, EXIT_BUDGET, EXIT_INPUT, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("spatial-quandle").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn trefoil_has_nine_colorings() {
    let out = ok(&["colorings", "count", "--diagram", "trefoil", "--quandle", "dihedral:3"]);
    assert!(out.contains("total: 9"), "{out}");
    let out = ok(&["--format", "structured", "colorings", "count", "--diagram", "trefoil", "--quandle", "dihedral:3"]);
    assert!(out.lines().any(|l| l == "total=9"), "{out}");
}

#[test]
fn classify_finds_eight_nontrivial_classes() {
    let out = ok(&["cocycle", "classify", "--quandle", "paper5", "--group", "sym:3", "--stability"]);
    assert!(out.contains("nontrivial classes: 8"), "{out}");
}

#[test]
fn fuzzing_theta_trefoil_is_clean() {
    ok(&[
        "moves",
        "fuzz",
        "--diagram",
        "theta-trefoil",
        "--invariant",
        "special-colorings:alexander:2:t2+t+1",
        "--seed",
        "7",
        "--steps",
        "8",
    ]);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&[]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["validate", "--diagram", "/nonexistent/file.sgd"]).0, EXIT_INPUT);
    // malformed spec strings are usage errors; bad file contents are input errors
    let (code, _, err) = call(&["colorings", "count", "--diagram", "trefoil", "--quandle", "dihedral:x"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("bad size `x`"), "{err}");
    let dir = std::env::temp_dir().join(format!("sq-exit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let table = dir.join("bad.json");
    std::fs::write(&table, "[[1, 1], [1, 2]]").unwrap();
    let spec = format!("table:{}", table.display());
    let (code, _, err) = call(&["quandle", "check", "--quandle", &spec]);
    assert_eq!(code, EXIT_INPUT, "{err}");
    std::fs::remove_dir_all(dir).unwrap();
    let (code, _, err) =
        call(&["colorings", "count", "--diagram", "theta-trefoil", "--quandle", "paper5", "--budget", "5"]);
    assert_eq!(code, EXIT_BUDGET, "{err}");
    // psi needs a tangle
    let (code, _, _) =
        call(&["psi", "--diagram", "trefoil", "--cocycle", "paper5-s3", "--from", "a", "--to", "b", "--max-len", "1"]);
    assert_eq!(code, EXIT_INPUT);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn structured_output_is_reproducible() {
    let runs: [&[&str]; 3] = [
        &[
            "--format",
            "structured",
            "moves",
            "fuzz",
            "--diagram",
            "t9",
            "--invariant",
            "psi",
            "--seed",
            "3",
            "--steps",
            "6",
        ],
        &[
            "--format",
            "structured",
            "psi",
            "--diagram",
            "t9",
            "--cocycle",
            "paper5-s3",
            "--all-pairs",
            "--max-len",
            "1",
        ],
        &["--format", "structured", "colorings", "list", "--diagram", "theta", "--quandle", "alexander:2:t2+t+1"],
    ];
    for args in runs {
        let first = ok(args);
        assert!(!first.is_empty());
        assert!(first.lines().all(|l| l.contains('=')), "{first}");
        assert_eq!(first, ok(args), "{args:?}");
    }
    let seed = |s: &str| {
        ok(&[
            "--format",
            "structured",
            "moves",
            "fuzz",
            "--diagram",
            "theta",
            "--invariant",
            "colorings:dihedral:3",
            "--seed",
            s,
            "--steps",
            "8",
        ])
    };
    assert_ne!(seed("1"), seed("2"));
}

#[test]
fn psi_separates_t9_from_its_mirror() {
    let psi = |d: &str| {
        ok(&[
            "psi",
            "--diagram",
            d,
            "--cocycle",
            "paper5-s3",
            "--from",
            "lr",
            "--to",
            "ul",
            "--max-len",
            "0",
            "--q",
            "1",
        ])
    };
    let dir = std::env::temp_dir().join(format!("sq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mirror = dir.join("t9m.sgd");
    std::fs::write(&mirror, ok(&["mirror", "--diagram", "t9"])).unwrap();
    let (a, b) = (psi("t9"), psi(mirror.to_str().unwrap()));
    assert!(a.contains("{(), (1,2,3), (1,2,3), (1,2,3), (1,2,3)}"), "{a}");
    assert!(b.contains("{(), (1,2), (1,2,3), (1,3), (2,3)}"), "{b}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn presentations_render() {
    let out = ok(&["presentation", "quandle", "--diagram", "theta"]);
    assert!(out.contains("a^{b c\u{0304}} = a"), "{out}");
    let out = ok(&["presentation", "abelianization", "--diagram", "unknot2"]);
    assert!(out.contains("Z^2") && out.contains("Z"), "{out}");
}
