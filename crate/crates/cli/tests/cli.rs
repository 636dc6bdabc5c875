//! End-to-end tests of the command-line surface: exit codes, JSON
//! output, certificate independence and byte determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quivdeg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn decide_yes_and_witness_verifies_in_fresh_process() {
    let dir = std::env::temp_dir().join("quivdeg-cli-test-decide");
    std::fs::create_dir_all(&dir).unwrap();
    let verdict_path = dir.join("verdict.json");

    let out = run(&[
        "decide",
        "--quiver", &fixture("a2.json"),
        "--m", &fixture("a2_p.json"),
        "--n", &fixture("a2_s1s2.json"),
        "--bound", "4",
        "--seed", "0",
        "--json", verdict_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let verdict: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(verdict["status"], "yes");
    assert!(verdict["witness"].is_object());

    // extract the witness and re-check it with an independent invocation
    let witness_path = dir.join("witness.json");
    std::fs::write(&witness_path, serde_json::to_string_pretty(&verdict["witness"]).unwrap())
        .unwrap();
    let check = run(&[
        "verify-witness",
        "--quiver", &fixture("a2.json"),
        "--witness", witness_path.to_str().unwrap(),
        "--m", &fixture("a2_p.json"),
        "--n", &fixture("a2_s1s2.json"),
    ]);
    assert_eq!(exit_code(&check), 0, "stderr: {}", String::from_utf8_lossy(&check.stderr));
}

#[test]
fn decide_no_reports_covariant_obstruction() {
    let out = run(&[
        "decide",
        "--quiver", &fixture("a2.json"),
        "--m", &fixture("a2_s1s2.json"),
        "--n", &fixture("a2_p.json"),
    ]);
    assert_eq!(exit_code(&out), 1);
    let verdict: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(verdict["status"], "no");
    assert_eq!(verdict["obstruction"]["kind"], "hom_order");
    assert_eq!(verdict["obstruction"]["direction"], "covariant");
    assert_eq!(verdict["obstruction"]["dim_m"], 1);
    assert_eq!(verdict["obstruction"]["dim_n"], 0);
}

#[test]
fn decide_dimension_mismatch_is_no() {
    let out = run(&[
        "decide",
        "--quiver", &fixture("a2.json"),
        "--m", &fixture("a2_p.json"),
        "--n", &fixture("a2_2p.json"),
    ]);
    assert_eq!(exit_code(&out), 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("dimension vector mismatch"), "stderr: {}", stderr);
}

#[test]
fn decide_unknown_exit_code() {
    let out = run(&[
        "decide",
        "--quiver", &fixture("a2.json"),
        "--m", &fixture("a2_p.json"),
        "--n", &fixture("a2_s1s2.json"),
        "--bound", "0",
    ]);
    assert_eq!(exit_code(&out), 2);
    let verdict: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(verdict["status"], "unknown");
}

#[test]
fn dvr_check_passes_on_the_t_family() {
    let out = run(&[
        "dvr-check",
        "--quiver", &fixture("a2.json"),
        "--m", &fixture("a2_p.json"),
        "--n", &fixture("a2_s1s2.json"),
        "--family", &fixture("a2_family_t.json"),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], true);

    // and fails in the reverse direction
    let out = run(&[
        "dvr-check",
        "--quiver", &fixture("a2.json"),
        "--m", &fixture("a2_s1s2.json"),
        "--n", &fixture("a2_p.json"),
        "--family", &fixture("a2_family_t.json"),
    ]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn zwara_search_then_rz_to_family_round_trip() {
    let dir = std::env::temp_dir().join("quivdeg-cli-test-family");
    std::fs::create_dir_all(&dir).unwrap();
    let witness_path = dir.join("witness.json");
    let family_path = dir.join("family.json");

    let out = run(&[
        "zwara-search",
        "--quiver", &fixture("a2.json"),
        "--m", &fixture("a2_p.json"),
        "--n", &fixture("a2_s1s2.json"),
        "--json", witness_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);

    let out = run(&[
        "rz-to-family",
        "--quiver", &fixture("a2.json"),
        "--m", &fixture("a2_p.json"),
        "--n", &fixture("a2_s1s2.json"),
        "--witness", witness_path.to_str().unwrap(),
        "--json", family_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));

    // the produced family passes dvr-check for the same pair
    let out = run(&[
        "dvr-check",
        "--quiver", &fixture("a2.json"),
        "--m", &fixture("a2_p.json"),
        "--n", &fixture("a2_s1s2.json"),
        "--family", family_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn delta_check_on_stalk_complexes() {
    let out = run(&[
        "delta-check",
        "--quiver", &fixture("a2.json"),
        "--complex-m", &fixture("a2_complex_p.json"),
        "--complex-n", &fixture("a2_complex_s1s2.json"),
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let out = run(&[
        "delta-check",
        "--quiver", &fixture("a2.json"),
        "--complex-m", &fixture("a2_complex_s1s2.json"),
        "--complex-n", &fixture("a2_complex_p.json"),
    ]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn hasse_emits_poset_and_dot() {
    let dir = std::env::temp_dir().join("quivdeg-cli-test-hasse");
    std::fs::create_dir_all(&dir).unwrap();
    let dot_path = dir.join("hasse.dot");
    let out = run(&[
        "hasse",
        "--quiver", &fixture("a2.json"),
        "--field", "p=5",
        "--dimvec", "1,1",
        "--dot", dot_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let poset: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(poset["nodes"].as_array().unwrap().len(), 2);
    assert_eq!(poset["hasse"].as_array().unwrap().len(), 1);
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    assert!(dot.contains("->"));
    assert!(dot.starts_with("digraph"));
}

#[test]
fn enumerate_and_hom_table() {
    let out = run(&[
        "enumerate",
        "--quiver", &fixture("a2.json"),
        "--field", "p=2",
        "--max-dim", "1,1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let e: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(e["count"], 3);

    let out = run(&[
        "hom-table",
        "--quiver", &fixture("a2.json"),
        "--field", "p=5",
        "--max-dim", "1,1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let t: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(t["hom"].is_array());
    assert!(t["ext1"].is_array());
}

#[test]
fn decompose_and_orbit_dim() {
    let out = run(&[
        "decompose",
        "--quiver", &fixture("a2.json"),
        "--m", &fixture("a2_s1s2.json"),
    ]);
    assert_eq!(exit_code(&out), 0);
    let d: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(d["summands"].as_array().unwrap().len(), 2);

    let out = run(&[
        "orbit-dim",
        "--quiver", &fixture("a2.json"),
        "--m", &fixture("a2_p.json"),
    ]);
    assert_eq!(exit_code(&out), 0);
    let o: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(o["orbit_dimension"], 1);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "decide",
        "--quiver", &fixture("a2.json"),
        "--m", &fixture("a2_p.json"),
        "--n", &fixture("a2_s1s2.json"),
        "--seed", "7",
    ];
    let a = run(&args.iter().map(|s| s as &str).collect::<Vec<_>>());
    let b = run(&args.iter().map(|s| s as &str).collect::<Vec<_>>());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(exit_code(&a), exit_code(&b));
}

#[test]
fn malformed_inputs_exit_3_with_named_invariant() {
    let dir = std::env::temp_dir().join("quivdeg-cli-test-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = run(&[
        "decide",
        "--quiver", bad.to_str().unwrap(),
        "--m", &fixture("a2_p.json"),
        "--n", &fixture("a2_s1s2.json"),
    ]);
    assert_eq!(exit_code(&out), 3);

    // structurally valid JSON violating a representation invariant: a
    // relation that the matrices do not satisfy
    let bad_rep = dir.join("bad_rep.json");
    std::fs::write(
        &bad_rep,
        r#"{ "field": {"kind":"Fp","p":5}, "dims": {"1":1,"2":1,"3":1},
             "matrices": {"a1": [["1"]], "a2": [["1"]]} }"#,
    )
    .unwrap();
    let out = run(&[
        "decide",
        "--quiver", &fixture("a3_rel.json"),
        "--m", bad_rep.to_str().unwrap(),
        "--n", bad_rep.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 3);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("relation"), "stderr: {}", stderr);
}

#[test]
fn verify_witness_rejects_tampering() {
    let dir = std::env::temp_dir().join("quivdeg-cli-test-tamper");
    std::fs::create_dir_all(&dir).unwrap();
    let witness_path = dir.join("witness.json");
    let out = run(&[
        "zwara-search",
        "--quiver", &fixture("a2.json"),
        "--m", &fixture("a2_p.json"),
        "--n", &fixture("a2_s1s2.json"),
        "--json", witness_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);

    // flip the cokernel comparison map to zero matrices
    let mut w: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&witness_path).unwrap()).unwrap();
    let coker = w["coker_iso"].as_object_mut().unwrap();
    for (_, m) in coker.iter_mut() {
        for row in m.as_array_mut().unwrap() {
            for entry in row.as_array_mut().unwrap() {
                *entry = serde_json::Value::String("0".into());
            }
        }
    }
    std::fs::write(&witness_path, serde_json::to_string(&w).unwrap()).unwrap();
    let check = run(&[
        "verify-witness",
        "--quiver", &fixture("a2.json"),
        "--witness", witness_path.to_str().unwrap(),
        "--m", &fixture("a2_p.json"),
        "--n", &fixture("a2_s1s2.json"),
    ]);
    assert_eq!(exit_code(&check), 1);
}
