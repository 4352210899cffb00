use std::path::PathBuf;
use std::process::Command;

use surgcalc::report::{Body, StatusJson, EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use surgcalc::{dump_catalog, load_catalog, run, Report};
use surgcalc_core::surgery::Catalog;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn schema() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    let text = std::fs::read_to_string(path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn json(args: &[&str]) -> (Report, i32) {
    let mut argv = vec!["surgcalc", "--json"];
    argv.extend_from_slice(args);
    let out = run(argv);
    let report = Report::from_json(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", out.stdout));
    (report, out.code)
}

#[test]
fn shipped_catalog_matches_builtin() {
    let shipped = std::fs::read_to_string(data("catalog.json")).unwrap();
    assert_eq!(shipped, dump_catalog(&Catalog::builtin()));
    let loaded = load_catalog(&data("catalog.json")).unwrap();
    assert!(loaded.self_check().is_ok());
    assert_eq!(dump_catalog(&loaded), shipped);
}

const MATRIX: &[&[&str]] = &[
    &["abelianize", "<x, y | x^2, y^3>"],
    &["dft", "<x, y | x^2 y^3>"],
    &["enumerate", "<x | x^5>"],
    &["enumerate", "<x, y | >", "--max-cosets", "50"],
    &["monodromy", "verify", "(a b)^6"],
    &["monodromy", "verify", "a b"],
    &["monodromy", "fiber", "a b (b)^a a^5 (b)^(a^-1) b (a)^b^-1 b"],
    &["construct", "xg", "--genus", "2"],
    &["construct", "xg", "--genus", "1", "--p", "1", "--q", "0"],
    &["construct", "xG", "<x | x^3>"],
    &["construct", "xG", "<x, y | x^3>", "--moregen"],
    &["construct", "xG-plus", "--free", "3"],
    &["construct", "xpq1", "3", "2"],
    &["construct", "xpq1", "2", "2"],
    &["construct", "xpq23", "--h", "3", "1", "1"],
    &["construct", "xpq23", "4", "1", "--torus-z"],
    &["construct", "rbd", "z5_c2"],
    &["construct", "rbd", "nope"],
    &["bounds", "<x, y | >"],
    &["catalog", "list"],
    &["catalog", "check"],
    &["selftest", "--cases", "20"],
    &["abelianize", "<x | x^>"],
];

#[test]
fn reports_follow_schema_and_exit_codes() {
    let v = schema();
    for args in MATRIX {
        let (report, code) = json(args);
        let value: serde_json::Value = serde_json::to_value(&report).unwrap();
        if let Err(e) = v.validate(&value) {
            panic!("{args:?}: {e}");
        }
        assert_eq!(report.exit_code, code, "{args:?}");
        assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
        let fails = report.body.claims().iter().any(|c| c.status == StatusJson::Fail);
        let expected = match &report.body {
            Body::Error { .. } => EXIT_USAGE,
            _ if fails => EXIT_FAIL,
            Body::Outcome(o) if o.budget_exceeded => EXIT_BUDGET,
            _ => EXIT_OK,
        };
        assert_eq!(code, expected, "{args:?}");
    }
}

#[test]
fn human_output_is_rendered_from_json() {
    for args in MATRIX {
        let (report, code) = json(args);
        let mut argv = vec!["surgcalc"];
        argv.extend_from_slice(args);
        let out = run(argv);
        assert_eq!(out.code, code);
        assert_eq!(out.stdout + &out.stderr, report.render(), "{args:?}");
    }
}

#[test]
fn documented_examples() {
    let (r, code) = json(&["enumerate", "<x|x^5>"]);
    let Body::Outcome(o) = r.body else { panic!() };
    assert_eq!((o.data["order"].as_u64(), code), (Some(5), 0));

    let out = run(["surgcalc", "construct", "rbd", "z5_c2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((v["e"].as_i64(), v["sigma"].as_i64()), (Some(10), Some(-6)));
    assert_eq!((v["c1sq"].as_i64(), v["pi1_order"].as_u64()), (Some(2), Some(5)));
    assert_eq!(out.code, 0);

    let (r, code) = json(&["monodromy", "verify", "(a b)^6"]);
    let Body::Outcome(o) = r.body else { panic!() };
    assert_eq!((o.data["identity"].as_bool(), o.data["twist_count"].as_u64(), code), (Some(true), Some(12), 0));

    let (r, _) = json(&["enumerate", "<x, y, z | x^2, y^3, z^5, x y z>"]);
    let Body::Outcome(o) = r.body else { panic!() };
    assert_eq!(o.data["order"].as_u64(), Some(60));
    assert!(o.notes.iter().any(|n| n.contains("S5")));
}

#[test]
fn exit_statuses() {
    assert_eq!(run(["surgcalc", "monodromy", "verify", "a b"]).code, EXIT_FAIL);
    assert_eq!(run(["surgcalc", "enumerate", "<x, y | >", "--max-cosets", "10"]).code, EXIT_BUDGET);
    assert_eq!(run(["surgcalc", "no-such-command"]).code, EXIT_USAGE);
    assert_eq!(run(["surgcalc", "abelianize", "<x | y>"]).code, EXIT_USAGE);
    assert_eq!(run(["surgcalc", "construct", "xpq1", "2", "2"]).code, EXIT_USAGE);
    let help = run(["surgcalc", "--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("construct"));
}

#[test]
fn selftest_is_reproducible_across_jobs() {
    let a = run(["surgcalc", "--json", "selftest", "--seed", "7", "--cases", "40"]);
    let b = run(["surgcalc", "--json", "--jobs", "4", "selftest", "--seed", "7", "--cases", "40"]);
    assert_eq!(a.code, 0, "{}", a.stdout);
    let strip = |s: &str| {
        let mut r = Report::from_json(s).unwrap();
        r.command.clear();
        r
    };
    assert_eq!(strip(&a.stdout), strip(&b.stdout));
}

#[test]
fn catalog_from_file_and_environment() {
    let path = data("catalog.json");
    let out = run(["surgcalc", "--catalog", path.to_str().unwrap(), "catalog", "check"]);
    assert_eq!(out.code, 0, "{}", out.stdout);

    let bin = env!("CARGO_BIN_EXE_surgcalc");
    let ok = Command::new(bin)
        .args(["catalog", "list"])
        .env("SURGCALC_CATALOG", &path)
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let missing = Command::new(bin)
        .args(["catalog", "list"])
        .env("SURGCALC_CATALOG", "/nonexistent/catalog.json")
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(EXIT_USAGE));

    let dir = std::env::temp_dir().join(format!("surgcalc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.json");
    let mut j: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    j["entries"][0]["block"]["sigma"] = serde_json::json!(-7);
    std::fs::write(&broken, serde_json::to_string(&j).unwrap()).unwrap();
    let out = run(["surgcalc", "--catalog", broken.to_str().unwrap(), "catalog", "check"]);
    assert_eq!(out.code, EXIT_FAIL, "{}", out.stdout);
    let out = run(["surgcalc", "--catalog", broken.to_str().unwrap(), "construct", "rbd", "z5_c2"]);
    assert!(out.stdout.contains("loaded catalog differs"));
    std::fs::remove_dir_all(&dir).unwrap();
}
