use std::path::PathBuf;

use serde_json::Value;

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn qlab(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = qlab::cli::run(std::iter::once("qlab").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, _) = qlab(&full);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

#[test]
fn valid_corpus_files_pass() {
    for f in ["catalog.qlab", "categories.qlab", "modules.qlab", "lists.qlab"] {
        let (code, out, _) = qlab(&["check", &corpus(f)]);
        assert_eq!(code, 0, "{f}\n{out}");
    }
}

#[test]
fn law_failures_exit_one_with_witnesses() {
    let (code, j) = json(&["check", &corpus("failing.qlab")]);
    assert_eq!(code, 1);
    let checks = j["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    for c in checks {
        assert_eq!(c["status"], "fail");
        assert!(!c["witness"]["law"].as_str().unwrap().is_empty());
    }
    let (code, j) = json(&["check", &corpus("failing.qlab"), "NoTriangle"]);
    assert_eq!(code, 1);
    assert_eq!(j["checks"][0]["witness"]["law"], "transitivity");
    assert_eq!(j["checks"][0]["witness"]["witness"], serde_json::json!([0, 1, 2]));
}

#[test]
fn malformed_inputs_exit_two_with_positions() {
    for f in ["malformed/unclosed.qlab", "malformed/missing_unit.qlab", "malformed/unknown_object.qlab"] {
        let (code, _, err) = qlab(&["check", &corpus(f)]);
        assert_eq!(code, 2, "{f}");
        assert!(err.lines().next().unwrap().split(':').next().unwrap().parse::<usize>().is_ok(), "{err}");
    }
    let (code, j) = json(&["check", &corpus("malformed/unknown_object.qlab")]);
    assert_eq!(code, 2);
    assert_eq!(j["diagnostics"][0]["line"], 3);
}

#[test]
fn non_cocomplete_sup_is_a_law_failure() {
    let (code, j) = json(&["derive", "sup", &corpus("categories.qlab"), "Discrete"]);
    assert_eq!(code, 1);
    assert_eq!(j["checks"][0]["witness"]["witness"], serde_json::json!([0, 0]));
    let (code, _) = json(&["derive", "sup", &corpus("categories.qlab"), "Interval"]);
    assert_eq!(code, 0);
}

#[test]
fn derivations_and_equivalences() {
    let cats = corpus("categories.qlab");
    let mods = corpus("modules.qlab");
    let (code, j) = json(&["derive", "order", &cats, "Chain3"]);
    assert_eq!(code, 0);
    assert_eq!(j["artifact"]["leq"][0], serde_json::json!([true, true, true]));
    assert_eq!(json(&["derive", "presheaf", &cats, "Base"]).0, 0);
    assert_eq!(json(&["derive", "copower", &cats, "Interval"]).0, 0);
    assert_eq!(json(&["equiv", "mod-to-vcat", &mods, "Subsets", "--roundtrip"]).0, 0);
    assert_eq!(json(&["equiv", "vcat-mod", &cats, "Interval", "--roundtrip"]).0, 0);
    assert_eq!(json(&["equiv", "monoid-quant", &mods, "Z2", "--roundtrip"]).0, 0);
    assert_eq!(json(&["equiv", "quant-acted", &mods, "Diag", "--roundtrip"]).0, 0);
    assert_eq!(json(&["check", "bimorphism", &mods, "Frame3"]).0, 0);
}

#[test]
fn station_chain_marks_the_representable_station() {
    let (code, j) = json(&["equiv", "chain", &corpus("modules.qlab"), "Z2"]);
    assert_eq!(code, 0);
    let checks = j["checks"].as_array().unwrap();
    let rep = checks.iter().find(|c| c["id"] == "station 5 representable").unwrap();
    assert_eq!(rep["verified"], "truncated");
    assert_eq!(checks.iter().filter(|c| c["verified"] == "full").count(), 4);
}

#[test]
fn tensors_with_universal_check() {
    let (code, j) = json(&["--verify-universal", "tensor", "sup", &corpus("catalog.qlab"), "Two", "Diamond"]);
    assert_eq!(code, 0);
    assert!(j["checks"].as_array().unwrap().iter().any(|c| c["id"] == "Two ⊗ Diamond universal"));
    assert_eq!(json(&["--verify-universal", "tensor", "mod", &corpus("modules.qlab"), "chain_min(3)", "Self3"]).0, 0);
    assert_eq!(json(&["--verify-universal", "tensor", "alg", &corpus("modules.qlab"), "Point", "Self3"]).0, 0);
}

#[test]
fn lv_commands() {
    let lists = corpus("lists.qlab");
    for args in [["lv", "check", &lists, "Pairs"], ["lv", "yoneda", &lists, "Discrete"], ["lv", "station", &lists, "Frame"]] {
        let (code, j) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        assert!(j["checks"].as_array().unwrap().iter().any(|c| c["verified"] == "truncated"));
    }
}

#[test]
fn suite_scope_is_reproducible() {
    let a = qlab(&["suite", "order", "--seed", "7"]);
    let b = qlab(&["suite", "order", "--seed", "7"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    assert!(a.1.contains("c01 quantale laws") && a.1.contains("seed: 7"));
}
