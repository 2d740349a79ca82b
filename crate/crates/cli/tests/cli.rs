//! End-to-end runs of the `scatlin` binary.

use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_scatlin"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    let stderr = String::from_utf8(out.stderr).unwrap();
    (out.status.code().unwrap_or(-1), json, stderr)
}

/// Drops every `elapsed_ms` so reports can be compared.
fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn check_pseudoregulus_is_scattered() {
    let (code, r, _) = run(&[
        "check",
        "--field",
        "3^1",
        "--poly",
        r#"{"coeffs":["0","g^0","0","0","0","0"]}"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["scattered"], true);
    assert_eq!(r["result"]["spectrum"]["counts"]["1"], 364);
    assert_eq!(r["field"]["q"], 3);
    assert!(r["field"]["fingerprint"].is_string());
}

#[test]
fn check_family_flags_and_witness() {
    let (code, r, _) = run(&[
        "check",
        "--field",
        "3^1",
        "--family",
        "case1",
        "--exhaustive",
    ]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["scattered"], false);
    assert_eq!(res["methods_agree"], true);
    assert_eq!(
        res["methods"]["dickson"]["violations"]
            .as_array()
            .unwrap()
            .len(),
        2
    );
    // The oracle witness and the converted Dickson witness name the same point.
    assert_eq!(res["witness"], res["methods"]["oracle"]["witness"]);
}

#[test]
fn unverified_family_gets_checked() {
    let (code, r, _) = run(&[
        "check",
        "--field",
        "3^1",
        "--family",
        "csajbok_mp",
        "--delta",
        "g^1",
    ]);
    assert_eq!(code, 0);
    let status = r["result"]["baseline_status"].as_str().unwrap();
    assert!(status == "verified-scattered" || status == "not-scattered");
}

#[test]
fn reproduce_case1_q5() {
    let (code, r, _) = run(&["reproduce", "case1-q5"]);
    assert_eq!(code, 0);
    assert_eq!(r["ok"], true);
    assert_eq!(r["result"]["failed"], 0);
    assert_eq!(r["result"]["details"]["spectrum"]["1"], 3906);
}

#[test]
fn reproduce_even_q4_finds_m_bar() {
    let (code, r, _) = run(&["reproduce", "even-q4-negative"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = r["result"]["assertions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["name"].as_str().unwrap())
        .collect();
    assert_eq!(names.len(), 66);
    assert!(names[1].contains("h^(q^2) + h^q"));
}

#[test]
fn every_reproduce_tag_passes() {
    for tag in [
        "case1-q5",
        "case1-q7-negative",
        "case2-q3",
        "even-q4-negative",
        "intn-q3",
        "trinomial-q3",
        "l4-q5-power5",
        "mrd-q3",
    ] {
        let (code, r, err) = run(&["reproduce", tag]);
        assert_eq!(code, 0, "{tag}: {err}");
        assert_eq!(r["result"]["failed"], 0, "{tag}");
        assert!(r["result"]["passed"].as_u64().unwrap() > 0, "{tag}");
    }
}

#[test]
fn report_round_trips_from_echoed_argv() {
    let (_, first, _) = run(&[
        "linset", "--field", "3^1", "--family", "new_fh", "--h", "g^13",
    ]);
    let argv: Vec<String> = first["argv"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect();
    let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
    let (_, second, _) = run(&argv);
    let (mut a, mut b) = (first, second);
    strip_timing(&mut a);
    strip_timing(&mut b);
    assert_eq!(a, b);
}

#[test]
fn worker_count_does_not_change_results() {
    let args = ["check", "--field", "5^1", "--family", "case1"];
    let (_, mut one, _) = run(&[&args[..], &["--workers", "1"]].concat());
    let (_, mut three, _) = run(&[&args[..], &["--workers", "3"]].concat());
    strip_timing(&mut one);
    strip_timing(&mut three);
    assert_eq!(one["result"], three["result"]);
    assert_eq!(one["workers"], 1);
    assert_eq!(three["workers"], 3);
}

#[test]
fn enumerate_and_intn() {
    let (code, r, _) = run(&["enumerate-h", "--field", "3^1"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"].as_array().unwrap().len(), 28);
    let (code, r, _) = run(&["intn", "--field", "3^1", "--h", "g^13"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["intn"], 3);
    assert_eq!(
        r["result"]["dims_chain"].as_array().unwrap()[..3],
        [3, 1, -1]
    );
}

#[test]
fn equiv_checkpoint_and_resume() {
    let dir = std::env::temp_dir().join(format!("scatlin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cp = dir.join("cp.json");
    let cp_s = cp.to_str().unwrap();
    let base = [
        "equiv",
        "--field",
        "3^1",
        "--left",
        "new_fh:g^13",
        "--right",
        "pseudoregulus",
        "--method",
        "exhaustive",
    ];
    let (code, r, _) = run(&[&base[..], &["--budget", "500000", "--checkpoint", cp_s]].concat());
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verdict"], "budget-exceeded");
    assert_eq!(r["result"]["searched"], 500000);
    let (code, r, _) = run(&[&base[..], &["--resume", cp_s]].concat());
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verdict"], "not-equivalent");
    // A checkpoint for a different pair is refused.
    let (code, _, err) = run(&[
        "equiv",
        "--field",
        "3^1",
        "--left",
        "new_fh:g^39",
        "--right",
        "pseudoregulus",
        "--method",
        "exhaustive",
        "--resume",
        cp_s,
    ]);
    assert_eq!(code, 2, "{err}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn equiv_finds_trinomial_witness() {
    let (code, r, _) = run(&[
        "equiv",
        "--field",
        "3^1",
        "--left",
        "new_fh:g^91",
        "--right",
        "trinomial:g^91",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verdict"], "equivalent");
    assert!(r["result"]["witness"]["a"].is_string());
}

#[test]
fn mrd_full_distribution() {
    let (code, r, _) = run(&[
        "mrd",
        "--field",
        "2^1",
        "--family",
        "pseudoregulus",
        "--full-distribution",
        "--idealiser",
        "4",
    ]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["min_distance"], 5);
    assert_eq!(res["mrd"], true);
    assert_eq!(res["orbit_count_agrees"], true);
    assert_eq!(res["idealiser"]["holds"], true);
}

#[test]
fn lemmas_at_q3_are_clean() {
    let (code, r, _) = run(&["lemmas", "--field", "3^1"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"].as_array().unwrap().len(), 28);
}

#[test]
fn lemma_gap_at_q5_exits_one() {
    let (code, r, _) = run(&["lemmas", "--field", "5^1", "--h", "g^186"]);
    assert_eq!(code, 1);
    assert!(r["result"]["lemma2"]["unclassified_root"].is_string());
}

#[test]
fn table_output() {
    let out = Command::new(env!("CARGO_BIN_EXE_scatlin"))
        .args([
            "check",
            "--field",
            "2^1",
            "--family",
            "pseudoregulus",
            "--table",
        ])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("result.scattered") && l.ends_with("true")));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["check", "--field", "4^1", "--family", "case1"],
        &["check", "--field", "3^1", "--family", "lp"],
        &[
            "check", "--field", "3^1", "--family", "new_fh", "--h", "g^1",
        ],
        &["check", "--field", "3^1", "--poly", "{\"coeffs\": [\"0\"]}"],
        &["check", "--field", "3^1"],
        &["intn", "--field", "3^1", "--power", "2"],
        &["enumerate-h", "--field", "3^1", "--variant", "even"],
        &["reproduce", "nope"],
        &["--workers", "0", "enumerate-h", "--field", "3^1"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let (code, _, _) = run(&["--help"]);
    assert_eq!(code, 0);
}
