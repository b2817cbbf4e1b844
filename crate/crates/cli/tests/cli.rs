use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_formal-pbw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(
        code(&o),
        0,
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn config(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("{name}.toml"));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn validate_heisenberg() {
    assert_eq!(
        ok(&["validate", "--builtin", "heisenberg"]).trim(),
        "dim 3, LCS dims [3,1,0], k=2"
    );
}

#[test]
fn validate_reports_jacobi_triple() {
    // [z, [x, y]] = w while [x, [y, z]] = [y, [z, x]] = 0
    let path = config(
        "jacobi",
        r#"
name = "broken"
generators = [{ name = "x" }, { name = "y" }, { name = "z" }, { name = "u" }, { name = "w" }]
brackets = ["[x, y] = u", "[z, u] = w"]
"#,
    );
    let o = run(&["validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(
        stdout(&o).contains("Jacobi identity fails on triple (x, y, z)"),
        "{}",
        stdout(&o)
    );
    assert!(!stdout(&o).contains("nilpotency"));
}

#[test]
fn validate_reports_non_nilpotent() {
    let path = config(
        "stalls",
        r#"
generators = [{ name = "x" }, { name = "y" }, { name = "z" }]
brackets = ["[x, y] = z", "[x, z] = x"]
"#,
    );
    let o = run(&["validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("nilpotency"), "{}", stdout(&o));
}

#[test]
fn validate_abelian_from_config() {
    let path = config(
        "flat",
        "generators = [{ name = \"u\" }, { name = \"v\", degree = 2 }]\n",
    );
    assert_eq!(
        ok(&["validate", "--algebra", path.to_str().unwrap()]).trim(),
        "dim 2, LCS dims [2,0], k=1"
    );
}

#[test]
fn config_errors_exit_two() {
    let bad = config(
        "bad",
        "generators = [{ name = \"x\" }]\nbrackets = [\"[x, q] = x\"]\n",
    );
    let both = config(
        "both",
        "builtin = \"heisenberg\"\ngenerators = [{ name = \"x\" }]\n",
    );
    let syntax = config("syntax", "generators = [\n");
    for path in [bad, both, syntax] {
        assert_eq!(
            code(&run(&["validate", "--algebra", path.to_str().unwrap()])),
            2,
            "{path:?}"
        );
    }
    assert_eq!(
        code(&run(&[
            "validate",
            "--algebra",
            "/nonexistent/algebra.toml"
        ])),
        2
    );
    assert_eq!(code(&run(&["validate", "--builtin", "klein_bottle"])), 2);
    assert_eq!(code(&run(&["validate"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn builtin_in_config_file() {
    let path = config("named", "name = \"n4\"\nbuiltin = \"upper_triangular:4\"\n");
    assert_eq!(
        ok(&["validate", "--algebra", path.to_str().unwrap()]).trim(),
        "dim 6, LCS dims [6,3,1,0], k=3"
    );
}

#[test]
fn normal_forms() {
    let h = ["normal-form", "--builtin", "heisenberg", "--trunc", "3"];
    let nf = |e: &str| ok(&[&h[..], &[e]].concat()).trim().to_string();
    assert_eq!(nf("y ox x"), "x·y - z");
    assert_eq!(nf("x ox y - y ox x - [x,y]"), "0");
    assert_eq!(nf("1"), "1");
    assert_eq!(nf("-z + 1/3 z⊗x"), "1/3 x·z - z");
    assert_eq!(nf("x·y − z"), "x·y - z");
}

#[test]
fn normal_form_input_errors() {
    let o = run(&["normal-form", "--builtin", "heisenberg", "x + * y"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("character"));
    assert_eq!(
        code(&run(&[
            "normal-form",
            "--builtin",
            "heisenberg",
            "[x ox y, z]"
        ])),
        2
    );
    assert_eq!(
        code(&run(&["normal-form", "--builtin", "heisenberg", "w"])),
        2
    );
}

#[test]
fn normal_form_json_matches_text() {
    let out = ok(&[
        "normal-form",
        "--builtin",
        "heisenberg",
        "--trunc",
        "3",
        "--json",
        "y ox x",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["algebra"], "heisenberg");
    assert_eq!(v["truncation"], 3);
    assert_eq!(v["certified_order"], 3);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["monomial"], serde_json::json!([1, 2]));
    assert_eq!(terms[0]["coeff"], "1/1");
    assert_eq!(terms[1]["monomial"], serde_json::json!([3]));
    assert_eq!(terms[1]["coeff"], "-1/1");
}

#[test]
fn decompose_heisenberg() {
    let out = ok(&[
        "decompose",
        "--builtin",
        "heisenberg",
        "--trunc",
        "4",
        "x ox y",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines,
        [
            "sigma: 1/2 x⊗y + 1/2 y⊗x + 1/2 z",
            "j: 1/2 x⊗y - 1/2 y⊗x - 1/2 z",
            "certified order: 2"
        ]
    );
    let out = ok(&["decompose", "--builtin", "heisenberg", "z"]);
    assert!(out.starts_with("sigma: z\nj: 0\n"), "{out}");
}

#[test]
fn decompose_output_reparses_to_the_input() {
    let h = ["--builtin", "heisenberg", "--trunc", "4"];
    let input = "x ox y ox x - 2 z ox y + 1/3";
    let out = ok(&[&["decompose"], &h[..], &[input]].concat());
    let sigma = out.lines().next().unwrap().strip_prefix("sigma: ").unwrap();
    let j = out.lines().nth(1).unwrap().strip_prefix("j: ").unwrap();
    // sigma is a fixed point of the projection and j lies in the ideal
    let again = ok(&[&["decompose"], &h[..], &[sigma]].concat());
    assert!(
        again.starts_with(&format!("sigma: {sigma}\nj: 0\n")),
        "{again}"
    );
    assert_eq!(ok(&[&["normal-form"], &h[..], &[j]].concat()).trim(), "0");
    let sum = format!("({sigma}) + ({j}) - ({input})");
    assert_eq!(ok(&[&["symmetrize"], &h[..], &[&sum]].concat()).trim(), "0");
}

#[test]
fn decompose_abelian() {
    // one generator: J vanishes
    let out = ok(&["decompose", "--builtin", "abelian:1", "a1 a1 a1 + 2 a1"]);
    assert!(out.starts_with("sigma: 2 a1 + a1⊗a1⊗a1\nj: 0\n"), "{out}");
    // two generators: the antisymmetric part is in J
    let out = ok(&["decompose", "--builtin", "abelian:2", "a1 a2"]);
    assert!(
        out.starts_with("sigma: 1/2 a1⊗a2 + 1/2 a2⊗a1\nj: 1/2 a1⊗a2 - 1/2 a2⊗a1\n"),
        "{out}"
    );
}

#[test]
fn decompose_json_has_both_parts() {
    let out = ok(&["decompose", "--builtin", "heisenberg", "--json", "x ox y"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["certified_order"], 2);
    let coeffs = |key: &str| -> Vec<String> {
        v[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["coeff"].as_str().unwrap().to_string())
            .collect()
    };
    assert_eq!(coeffs("sigma"), ["1/2", "1/2", "1/2"]);
    assert_eq!(coeffs("j"), ["1/2", "-1/2", "-1/2"]);
}

#[test]
fn symmetrize_odd_square_vanishes() {
    let path = config(
        "super",
        r#"
generators = [{ name = "a", degree = 1 }, { name = "c", degree = 2 }]
brackets = ["[a, a] = c"]
"#,
    );
    let p = path.to_str().unwrap();
    assert_eq!(ok(&["symmetrize", "--algebra", p, "a ox a"]).trim(), "0");
    assert_eq!(
        ok(&["symmetrize", "--algebra", p, "a ox c"]).trim(),
        "a⊗c + c⊗a"
    );
    assert_eq!(
        ok(&["normal-form", "--algebra", p, "a ox a"]).trim(),
        "1/2 c"
    );
}

#[test]
fn checks_pass_on_builtins() {
    let out = ok(&[
        "check",
        "--builtin",
        "heisenberg",
        "--trunc",
        "4",
        "splitting",
    ]);
    assert!(
        out.starts_with("splitting on heisenberg, N=4: PASS (121 words, invariant rank 10/10"),
        "{out}"
    );
    let out = ok(&[
        "check",
        "--builtin",
        "heisenberg",
        "--trunc",
        "5",
        "continuity",
    ]);
    assert!(
        out.contains("PASS (4 cases)") && out.contains("n=2 r=1 order 5: PASS"),
        "{out}"
    );
    let out = ok(&[
        "check",
        "--builtin",
        "upper_triangular:4",
        "--levels",
        "2,3,4",
        "tower",
    ]);
    assert!(
        out.contains("PASS (g/F_4: dim 6, g/F_3: dim 5, g/F_2: dim 3"),
        "{out}"
    );
    let out = ok(&["check", "--builtin", "free_nilpotent:2:3", "bijection"]);
    assert!(out.contains("PASS"), "{out}");
    let out = ok(&["check", "--builtin", "heisenberg", "--json", "splitting"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["failures"], serde_json::json!([]));
}

#[test]
fn checks_on_invalid_algebra_fail() {
    let path = config(
        "broken_check",
        "generators = [{ name = \"x\" }, { name = \"y\" }]\nbrackets = [\"[x, y] = x\"]\n",
    );
    assert_eq!(
        code(&run(&[
            "check",
            "--algebra",
            path.to_str().unwrap(),
            "splitting"
        ])),
        1
    );
    assert_eq!(
        code(&run(&["check", "--builtin", "heisenberg", "sideways"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "check",
            "--builtin",
            "heisenberg",
            "--levels",
            "0,2",
            "tower"
        ])),
        2
    );
}

#[test]
fn dims_tables() {
    let out = ok(&["dims", "--free", "2", "--trunc", "4"]);
    assert!(out.contains("Lyndon counts (2,1,2,3)"), "{out}");
    assert!(
        out.contains("PBW-over-Lyndon cumulative counts (1,3,7,15,31)"),
        "{out}"
    );
    assert!(out.contains("identity holds"), "{out}");
    let out = ok(&["dims", "--builtin", "heisenberg", "--trunc", "2"]);
    assert!(
        out.contains("T dims (1,3,9)") && out.contains("S monomial counts (1,3,6)"),
        "{out}"
    );
    let out = ok(&["dims", "--free", "1", "--trunc", "3"]);
    assert!(
        out.contains("T dims (1,1,1,1)") && out.contains("identity holds"),
        "{out}"
    );
    let out = ok(&["dims", "--free", "2", "--trunc", "6", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["lyndon"], serde_json::json!([2, 1, 2, 3, 6, 9]));
    assert_eq!(v["pbw_cumulative"].as_array().unwrap().last().unwrap(), 127);
}

#[test]
fn extend_into_heisenberg() {
    let e = |expr: &str| {
        ok(&[
            "extend",
            "--builtin",
            "heisenberg",
            "--map",
            "a=x,b=y",
            expr,
        ])
        .trim()
        .to_string()
    };
    assert_eq!(e("a"), "x");
    assert_eq!(e("[a,b]"), "z");
    assert_eq!(e("[b,a] + 3 b"), "3 y - z");
    assert_eq!(e("[a,[a,b]]"), "0");
    assert_eq!(e("a ox b - b ox a"), "z");
    let o = ok(&[
        "extend",
        "--builtin",
        "heisenberg",
        "--map",
        "a=x+y,b=[x,y]",
        "--json",
        "[a,b] + a",
    ]);
    let v: Value = serde_json::from_str(&o).unwrap();
    assert_eq!(v["dynkin_agrees"], true);
    assert_eq!(
        v["terms"],
        serde_json::json!([{ "monomial": [1], "coeff": "1/1" }, { "monomial": [2], "coeff": "1/1" }])
    );
}

#[test]
fn extend_rejects_bad_input() {
    let base = ["extend", "--builtin", "heisenberg"];
    // not a Lie element
    assert_eq!(
        code(&run(&[&base[..], &["--map", "a=x,b=y", "a ox b"]].concat())),
        2
    );
    assert_eq!(
        code(&run(&[&base[..], &["--map", "a=x,b", "a"]].concat())),
        2
    );
    assert_eq!(
        code(&run(&[&base[..], &["--map", "a=x ox y", "a"]].concat())),
        2
    );
    assert_eq!(
        code(&run(&[&base[..], &["--map", "a=x,b=y", "c"]].concat())),
        2
    );
}
