use std::process::Command;

use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_qwitt")).args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("bad JSON {text:?}: {e}"));
    (out.status.code().unwrap(), v)
}

fn ok(args: &[&str]) -> Value {
    let (code, v) = run(args);
    assert_eq!(code, 0, "{args:?} -> {v}");
    v
}

/// Compare polynomial strings by value, via a Witt round trip through the
/// CLI's own parser: (x) − (y) must print as 0.
fn same_poly(a: &str, b: &str) -> bool {
    let doc = json!({"ring": "Zq", "g": "q", "coords": [format!("({a})-({b})")]}).to_string();
    ok(&["witt", "neg", "--in", &doc])["coords"] == json!(["0"])
}

#[test]
fn witt_mul_example() {
    let dir = std::env::temp_dir().join(format!("qwitt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    std::fs::write(&a, r#"{"coords": ["1", "0"]}"#).unwrap();
    let a = a.to_str().unwrap();
    let v = ok(&["witt", "mul", "--ring", "Zq", "--g", "q", "--trunc", "2", "--in", a, "--in2", a]);
    assert_eq!(v["coords"], json!(["1-q", "q-q^3"]));
    assert_eq!(v["ring"], "Zq");
    assert_eq!(v["g"], "q");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn mobius_example() {
    let v = ok(&["neck", "mobius", "--m", "0", "--n", "12"]);
    assert_eq!(v, json!([1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]));
}

#[test]
fn kimlee_example() {
    let v = ok(&["series", "kimlee", "--trunc", "3", "--in", "[1,0,0]"]);
    let got: Vec<&str> = v.as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    for (g, e) in got.iter().zip(["-(1-q)", "-q*(1-q)", "-q^2*(1-q)"]) {
        assert!(same_poly(g, e), "{g} vs {e}");
    }
    assert_eq!(got.len(), 3);
}

#[test]
fn outputs_reparse() {
    let a = json!({"ring": "Zq", "g": "1-2*q", "trunc": 4, "coords": ["1", "q", "-2", "q^2"]}).to_string();
    let b = json!({"ring": "Zq", "g": "1-2*q", "trunc": 4, "coords": ["3", "0", "1-q", "2"]}).to_string();
    let prod = ok(&["witt", "mul", "--in", &a, "--in2", &b]);
    // feeding the output back in reproduces it
    let neg = ok(&["witt", "neg", "--in", &prod.to_string()]);
    let back = ok(&["witt", "neg", "--in", &neg.to_string()]);
    assert_eq!(back, prod);
    let ghost = ok(&["witt", "ghost", "--in", &prod.to_string()]);
    assert_eq!(ghost["kind"], "ghost");
    let un = ok(&["witt", "unghost", "--in", &ghost.to_string()]);
    assert_eq!(un, prod);
    let s = ok(&["series", "theta", "--in", &a]);
    assert_eq!(s["series"].as_array().unwrap().len(), 5);
    let w = ok(&["series", "theta-inv", "--in", &s.to_string()]);
    assert_eq!(w["coords"], json!(["1", "q", "-2", "q^2"]));
}

#[test]
fn bridges_and_necklaces() {
    assert_eq!(ok(&["bridge", "teich", "--m", "0", "--trunc", "8", "--in", "2"]), json!(["2", "1", "2", "3", "6", "9", "18", "30"]));
    let t = ok(&["bridge", "tau", "--m", "0", "--in", "[2,0,0,0,0,0]"]);
    assert_eq!(t["coords"], json!(["2", "1", "2", "3", "6", "9"]));
    assert_eq!(t["kind"], "necklace");
    let back = ok(&["bridge", "tau-inv", "--in", &t.to_string()]);
    assert_eq!(back["coords"], json!(["2", "0", "0", "0", "0", "0"]));
    let u = ok(&["neck", "unity", "--m", "0", "--trunc", "3"]);
    let x = json!({"m": 0, "coords": ["2", "-1", "5"]}).to_string();
    let p = ok(&["neck", "mul", "--in", &x, "--in2", &u.to_string()]);
    assert_eq!(p["coords"], json!(["2", "-1", "5"]));
    let c = ok(&["neck", "coeff", "--m", "0", "--n", "6", "--i", "2", "--j", "3"]);
    assert_eq!(c, json!("1"));
}

#[test]
fn transports_and_restriction() {
    let a = json!({"ring": "Zq", "g": "q", "coords": ["1", "q", "0"]}).to_string();
    let t = ok(&["witt", "transport", "--in", &a]);
    assert_eq!(t["g"], "2-q");
    let back = ok(&["witt", "transport", "--in", &t.to_string()]);
    assert_eq!(back["coords"], json!(["1", "q", "0"]));
    let r = ok(&["witt", "restrict", "--m", "0", "--r", "2", "--in", "[1,2,3,4]"]);
    assert_eq!(r["coords"], json!(["5", "0"]));
    let i = ok(&["witt", "induce", "--m", "0", "--r", "2", "--in", "[1,2,3,4]"]);
    assert_eq!(i["coords"], json!(["0", "1", "0", "2"]));
}

#[test]
fn symfun_output() {
    let v = ok(&["symfun", "u", "--vars", "2", "--n", "2"]);
    assert_eq!(
        v,
        json!([
            {"exponents": [2, 0], "coeff": "-1/2*q"},
            {"exponents": [1, 1], "coeff": "-1-q"},
            {"exponents": [0, 2], "coeff": "-1/2*q"},
        ])
    );
}

#[test]
fn error_codes() {
    let (code, v) = run(&["witt", "bogus"]);
    assert_eq!((code, v["error"].as_str()), (2, Some("ParseError")));
    let (code, v) = run(&["witt", "neg", "--g", "q", "--in", r#"["1+"]"#]);
    assert_eq!((code, v["error"].as_str()), (2, Some("ParseError")));
    let (code, v) = run(&["witt", "unity", "--g", "q", "--trunc", "3"]);
    assert_eq!((code, v["error"].as_str()), (3, Some("NotUnital")));
    let (code, v) = run(&["symfun", "u", "--vars", "1", "--n", "2"]);
    assert_eq!((code, v["error"].as_str()), (3, Some("DegreeExceedsAlphabet")));
    let (code, v) = run(&["witt", "restrict", "--m", "0", "--r", "2", "--n", "3", "--in", "[1,2,3,4]"]);
    assert_eq!((code, v["error"].as_str()), (3, Some("TruncationTooShort")));
    assert!(v["detail"].is_string());
}
