use level_lab_cli::run_with;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("level-lab").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, out, _) = run(args);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn envelope_schema() {
    let (code, v) = report(&["charp", "pairing-eq", "-N", "2"]);
    assert_eq!(code, 0);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "config", "details", "verdict", "version"]);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["command"], "charp pairing-eq");
    assert_eq!(v["details"]["q"], 3);
    assert_eq!(v["details"]["pairs_checked"], 4);
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["frobnicate"][..], &["congruence", "--e1", "KO-A"], &["charp", "endos", "-N", "x", "-q", "5"]] {
        let (code, out, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty());
        assert!(err.contains("Usage"), "{err}");
    }
}

#[test]
fn input_errors_are_reported_as_error() {
    let (code, v) = report(&["congruence", "--e1", "KO-A", "--e2", "1,2,3", "-N", "7"]);
    assert_eq!(code, 2);
    assert_eq!(v["verdict"], "ERROR");
    assert!(v["details"]["error"].as_str().unwrap().contains("coefficients"));
    let (code, v) = report(&["charp", "endos", "-N", "4", "-q", "7"]);
    assert_eq!((code, v["verdict"].as_str()), (2, Some("ERROR")));
    let (code, _) = report(&["charp", "quaternion", "-p", "59"]);
    assert_eq!(code, 2);
}

#[test]
fn congruence_of_named_curves_passes() {
    let (code, v) = report(&["congruence", "--e1", "KO-A", "--e2", "KO-B", "-N", "7", "--pmax", "200"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["disagree"], 0);
}

#[test]
fn congruence_failure_carries_a_witness() {
    let (code, v) = report(&["congruence", "--e1", "KO-A", "--e2", "0,0,0,1,1", "-N", "5", "--pmax", "60"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "FAIL");
    let w = &v["details"]["witness"];
    assert_eq!(w["verdict"], "disagree");
    let (a1, a2) = (w["ap1"].as_i64().unwrap(), w["ap2"].as_i64().unwrap());
    assert_ne!((a1 - a2).rem_euclid(5), 0);
}

#[test]
fn quartic_check_reductions() {
    let args = [
        "quartic-check", "--name", "hk-105a2-min", "--expect-smooth", "2,11,13", "--expect-singular", "3,5,7",
    ];
    let (code, v) = report(&args);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["smooth_over_q"], true);
    assert_eq!(v["details"]["singular_at"], serde_json::json!([3, 5, 7]));
    // a wrong expectation turns into FAIL
    let (code, v) = report(&["quartic-check", "--name", "hk-105a2-min", "--expect-smooth", "3"]);
    assert_eq!((code, v["verdict"].as_str()), (1, Some("FAIL")));
}

#[test]
fn radical_check_from_flags_and_file() {
    let (code, v) = report(&["radical-check", "--gens", "x^2;y^3;z", "--vars", "x,y,z"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["contains_all"], true);
    let (code, _) = report(&["radical-check", "--gens", "x*y;z", "--vars", "x,y,z"]);
    assert_eq!(code, 1);
    let dir = std::env::temp_dir().join(format!("level-lab-radical-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ideal.json");
    std::fs::write(&path, r#"{"vars": ["a", "b"], "gens": ["a^2 - b", "b^2"], "field": 7}"#).unwrap();
    let (code, v) = report(&["radical-check", "--ideal", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_deterministic_and_out_matches_stdout() {
    let args = ["moduli-props", "-N", "3", "-m", "4", "-q", "13", "--trials", "12", "--seed", "42", "--pool", "3"];
    let (c1, o1, _) = run(&args);
    let (c2, o2, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(o1, o2);
    let dir = std::env::temp_dir().join(format!("level-lab-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let mut with_out: Vec<&str> = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let (c3, o3, _) = run(&with_out);
    assert_eq!(c3, 0);
    assert!(o3.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), o1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fibres_and_moduli_point_round_trip() {
    let (code, v) = report(&["fibres", "-N", "3", "-q", "7", "--points"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["det_surjective"], true);
    let pts = v["details"]["moduli_points"].as_array().unwrap();
    assert_eq!(pts.len() as u64, v["details"]["points"].as_u64().unwrap());
    let dir = std::env::temp_dir().join(format!("level-lab-point-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("point.json");
    std::fs::write(&path, pts[0].to_string()).unwrap();
    let (code, w) = report(&["moduli-point", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(w["details"]["point"], pts[0]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn charp_subcommands() {
    let (code, v) = report(&["charp", "endos", "-N", "3", "-q", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["endomorphisms"], 81);
    let (code, v) = report(&["charp", "quaternion", "-p", "3", "-r", "1", "--alternative"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["default"]["quotient"], 8);
    let (code, v) = report(&["charp", "ss-count", "-p", "13"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["count"], 1);
    let (code, v) = report(&["charp", "census", "-p", "2", "-r", "1", "--structure-size", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["upper_bound"], 18);
    let (code, v) = report(&["charp", "ordinary-aut", "-p", "2", "-r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["count"], 16);
}

#[test]
fn invariants_and_traces() {
    let (code, v) = report(&["invariants", "--curve", "105a2-min"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["discriminant"], "11025");
    let (_, w) = report(&["invariants", "--curve", "105a2-red"]);
    assert_eq!(v["details"]["j"], w["details"]["j"]);
    let (code, v) = report(&["invariants", "--curve", "1,1", "--field", "Fp:5"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["points"], "9");
    let (code, v) = report(&["ap", "--curve", "KO-B", "--pmax", "20"]);
    assert_eq!(code, 0);
    let ps: Vec<u64> = v["details"]["traces"].as_array().unwrap().iter().map(|t| t["p"].as_u64().unwrap()).collect();
    // Δ(KO-B) = -4864 = -2^8·19
    assert_eq!(ps, [3, 5, 7, 11, 13, 17]);
}

#[test]
fn smooth_census_matches_closed_form() {
    let (code, v) = report(&["smooth-census", "-p", "2", "-d", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["smooth_forms"], 336);
    assert!(v["details"].get("entries").is_none());
}
