use std::process::{Command, Output};

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_posetbocs"));
    c.args(args).env_remove("POSETBOCS_SEED");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn poset_file(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("posetbocs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn build_dims_for_p_b() {
    let f = poset_file("pb.txt", "n=3\n1<3\n2<3\n");
    let o = run(&["build", "--poset", f.to_str().unwrap(), "--emit", "dims"], &[]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "R: 9\nL: 15\nL': 9\nA: 7\n");
}

#[test]
fn antichain_dims_collapse_to_a() {
    let o = run(&["build", "--example", "antichain2", "--emit", "dims", "--format", "json"], &[]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for k in ["R", "L", "L'", "A"] {
        assert_eq!(v[k], 5, "{k}");
    }
}

#[test]
fn left_quiver_of_p_e_as_dot() {
    let o = run(&["build", "--example", "p_e", "--emit", "quiver=left", "--format", "dot"], &[]);
    let s = stdout(&o);
    let mut arrows: Vec<&str> = s.lines().filter_map(|l| l.split("label=\"").nth(1)).map(|l| l.trim_end_matches("\"];")).collect();
    arrows.sort();
    assert_eq!(arrows, ["a1", "a2", "b3_2", "nu4_3", "nu5_3"]);
}

#[test]
fn right_quiver_of_p_c_has_the_commutativity_relation() {
    let o = run(&["build", "--example", "p_c", "--emit", "quiver=right"], &[]);
    assert!(stdout(&o).contains("  a3 nu3_2 - a4 nu4_2 = 0\n"), "{}", stdout(&o));
}

#[test]
fn examples_match_fixtures() {
    let o = run(&["examples"], &[]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn verify_examples_passes_and_is_deterministic() {
    let a = run(&["verify", "--examples", "--modules", "3", "--format", "json"], &[]);
    assert!(a.status.success());
    let b = run(&["verify", "--examples", "--modules", "3", "--format", "json"], &[]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    let recs = v["records"].as_array().unwrap();
    assert!(recs.iter().all(|r| r["status"] == "pass" && r["anchor"].as_str().is_some_and(|s| !s.is_empty())));
}

#[test]
fn seed_variable_overrides_flag() {
    let o = run(&["verify", "--example", "p_b", "--modules", "1", "--seed", "9"], &[("POSETBOCS_SEED", "3")]);
    assert!(stdout(&o).ends_with("verify over Q, seed 3: 45 checks, 0 failed\n"), "{}", stdout(&o));
}

#[test]
fn field_independent_dimensions() {
    let f = poset_file("pd.txt", "n=4;1<3;2<3;1<4;2<4");
    let q = run(&["build", "--poset", f.to_str().unwrap()], &[]);
    let p = run(&["build", "--poset", f.to_str().unwrap(), "--field", "F101"], &[]);
    assert_eq!(q.stdout, p.stdout);
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(run(&["verify", "--example", "p_b", "--field", "F4"], &[]).status.code(), Some(2));
    assert_eq!(run(&["build", "--example", "nope"], &[]).status.code(), Some(2));
    let f = poset_file("cyc.txt", "n=2;1<2;2<1");
    assert_eq!(run(&["build", "--poset", f.to_str().unwrap()], &[]).status.code(), Some(2));
}
