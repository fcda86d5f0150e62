use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nt")).args(args).output().expect("run nt");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out) = run(&a);
    assert_eq!(code, 0, "{args:?}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "nt/1");
    v
}

#[test]
fn classify_examples() {
    let v = json(&["classify", "--genus", "2", "--word", "T1", "--levels", "3..8"]);
    assert_eq!(v["kind"], "Reducible");
    assert_eq!(v["curve"]["spec"], "c1");

    let v = json(&["classify", "--genus", "2", "--word", ""]);
    assert_eq!(v["kind"], "FiniteOrder");
    assert_eq!(v["M"], 1);

    let v = json(&["classify", "--genus", "1", "--word", "Ta Tb^-1", "--levels", "3..12"]);
    assert_eq!(v["homology"]["trace"], "3");
    assert_eq!(v["homology"]["status"], "certified-pa");
}

#[test]
fn output_is_deterministic() {
    let args = ["classify", "--word", "T2 T1 T2^-1", "--levels", "3,5,7", "--json"];
    assert_eq!(run(&args), run(&args));
    let args = ["holonomy-separate", "--c1", "c1", "--c2", "c3", "--seed", "9", "--json"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["classify", "--word", "T9"]).0, 2);
    assert_eq!(run(&["classify", "--word", "T1", "--levels", "2..4"]).0, 2);
    assert_eq!(run(&["classify", "--genus", "3", "--word", "T1"]).0, 2);
    assert_eq!(run(&["commutator", "--word", "T1", "--curve", "q"]).0, 2);
    assert_eq!(run(&["nope"]).0, 2);
}

#[test]
fn certificates_recheck() {
    let v = json(&["classify", "--word", "T2 T1 T2^-1", "--levels", "3..6"]);
    let spec = v["curve"]["spec"].as_str().unwrap();
    assert_eq!(spec, "T2:c1");
    let c = json(&["commutator", "--word", "T2 T1 T2^-1", "--curve", spec, "--levels", "3..6"]);
    for row in c["levels"].as_array().unwrap() {
        assert_eq!(row["exact_zero"], true);
        assert!(row["norm"].as_f64().unwrap() < 1e-9);
    }
}

#[test]
fn other_subcommands() {
    let v = json(&["dims", "--genus", "2", "--levels", "3..12"]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["rows"][0]["dim"], 4);

    let (code, out) = run(&["verify-relations", "--genus", "1", "--levels", "3..9"]);
    assert_eq!(code, 0);
    assert!(out.contains("all relations hold"));

    let v = json(&["norm-sweep", "--genus", "2", "--curve", "c3", "--levels", "3..6"]);
    for row in v["rows"].as_array().unwrap() {
        assert!((row["norm"].as_f64().unwrap() - row["two_cos"].as_f64().unwrap()).abs() < 1e-9);
    }

    let v = json(&["holonomy-separate", "--c1", "c1", "--c2", "c1"]);
    assert_eq!(v["status"], "identical-word");

    let v = json(&["dump-tables", "--levels", "4", "--tets"]);
    let l = &v["levels"][0];
    assert_eq!(l["r"], 4);
    // δ = −A² − A⁻² with A⁸ = −1
    assert_eq!(l["Delta"][1], "-A^2 + A^6");
    assert!(!l["tet"].as_array().unwrap().is_empty());
}
