use std::path::PathBuf;
use std::process::Command;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tropsurf"))
        .args(args)
        .current_dir(data_dir())
        .env("TROPSURF_COLOR", "0")
        .output()
        .expect("run tropsurf");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

/// Compares stdout with `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "{args:?}: {stderr}");
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var("UPDATE_GOLDEN").is_ok_and(|v| v == "1") {
        std::fs::write(&path, &stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(stdout, expected, "{args:?}");
}

#[test]
fn fan_build_braid() {
    golden("fan_build_braid.txt", &["fan", "build", "--matroid", "braid.json"]);
}

#[test]
fn fan_reconstruct_braid() {
    golden("fan_reconstruct_braid.txt", &["fan", "reconstruct", "--fan", "braid_fan.json"]);
}

#[test]
fn matroid_info_braid() {
    golden("matroid_info_braid.txt", &["matroid", "info", "--matroid", "braid.json"]);
    golden("matroid_info_braid.json", &["matroid", "info", "--matroid", "braid.json", "--json"]);
}

#[test]
fn matroid_library_counts() {
    golden("matroid_library.txt", &["matroid", "library"]);
}

#[test]
fn conic_degree_and_bezout() {
    golden("cycle_degree_conic.txt", &["cycle", "degree", "--cycle", "conic.json", "--matroid", "u34.json"]);
    golden("bezout_conic.txt", &["intersect", "bezout", "--cycle", "conic.json", "--cycle", "conic.json", "--matroid", "u34.json"]);
    golden("bezout_conic.json", &["intersect", "bezout", "--cycle", "conic.json", "--cycle", "line_u34.json", "--matroid", "u34.json", "--json"]);
}

#[test]
fn canonical_cycle_u34() {
    golden("cycle_canonical_u34.txt", &["cycle", "canonical", "--matroid", "u34.json"]);
}

#[test]
fn braid_invariants() {
    golden("intersect_invariants_braid.txt", &["intersect", "invariants", "--matroid", "braid.json"]);
}

#[test]
fn hirzebruch_self_sum() {
    golden("noether_selfsum.txt", &["surface", "noether", "--expr", "selfsum_hirzebruch.json"]);
    golden("noether_selfsum.json", &["surface", "noether", "--expr", "selfsum_hirzebruch.json", "--json"]);
    golden("signature_selfsum.txt", &["surface", "signature", "--expr", "selfsum_hirzebruch.json"]);
}

#[test]
fn blow_down_and_modification() {
    golden("eval_blowdown.txt", &["surface", "eval", "--expr", "blowdown.json"]);
    golden("adjunction_modified.txt", &["surface", "adjunction", "--expr", "modified_plane.json"]);
}

#[test]
fn klein_bottle() {
    golden("diamond_klein.txt", &["homology", "diamond", "--complex", "klein_bottle.json"]);
    golden("diamond_klein.json", &["homology", "diamond", "--complex", "klein_bottle.json", "--json"]);
    golden("group_klein_1_1.txt", &["homology", "group", "--complex", "klein_bottle.json", "-p", "1", "-q", "1"]);
    golden("pairing_klein.txt", &["homology", "pairing", "--complex", "klein_bottle.json", "--cycle", "klein_cycles.json"]);
}

#[test]
fn torus_pairing() {
    golden("pairing_torus.txt", &["homology", "pairing", "--complex", "torus.json", "--cycle", "torus_cycles.json"]);
}

#[test]
fn reports_are_deterministic() {
    let args = ["surface", "eval", "--expr", "blowdown.json", "--json"];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn out_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("tropsurf-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("diamond.txt");
    let (code, stdout, _) = run(&["homology", "diamond", "--complex", "klein_bottle.json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let (_, direct, _) = run(&["homology", "diamond", "--complex", "klein_bottle.json"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["fan", "explode"]).0, 2);
    assert_eq!(run(&["fan", "build"]).0, 2);
    let (code, _, err) = run(&["fan", "build", "--matroid", "missing.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("missing.json"));
    assert_eq!(run(&["intersect", "bezout", "--cycle", "conic.json", "--matroid", "u34.json"]).0, 2);
}

#[test]
fn domain_errors_exit_1() {
    let dir = std::env::temp_dir().join(format!("tropsurf-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let overlap = write("overlap.json", r#"{"n": 5, "lines": [[0, 1, 2], [1, 2, 3]]}"#);
    let (code, stdout, err) = run(&["matroid", "info", "--matroid", &overlap]);
    assert_eq!(code, 1);
    assert!(stdout.is_empty());
    assert!(err.starts_with("error: "), "{err}");

    let garbage = write("garbage.json", "{ not json");
    assert_eq!(run(&["fan", "build", "--matroid", &garbage]).0, 1);

    let p2_curve = write("p2.json", r#"{"toric": {"rays": [[1, 0], [0, 1], [-1, -1]]}}"#);
    assert_eq!(run(&["surface", "eval", "--expr", &p2_curve]).0, 0);
    let bad_sum = write("sum.json", r#"{"sum": {"left": {"toric": {"rays": [[1, 0], [0, 1], [-1, -1]]}}, "left_curve": "D1", "right": {"toric": {"rays": [[1, 0], [0, 1], [-1, -1]]}}, "right_curve": "D1"}}"#);
    assert_eq!(run(&["surface", "noether", "--expr", &bad_sum]).0, 1);

    assert_eq!(run(&["intersect", "bezout", "--cycle", "conic.json", "--cycle", "line_u34.json", "--matroid", "braid.json"]).0, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn color_only_when_enabled() {
    // stdout is a pipe here, so color stays off whatever the variable says
    let out = Command::new(env!("CARGO_BIN_EXE_tropsurf"))
        .args(["surface", "noether", "--expr", "selfsum_hirzebruch.json"])
        .current_dir(data_dir())
        .env_remove("TROPSURF_COLOR")
        .output()
        .unwrap();
    assert!(!String::from_utf8(out.stdout).unwrap().contains('\x1b'));
}
