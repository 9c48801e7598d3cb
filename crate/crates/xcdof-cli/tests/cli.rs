use std::process::{Command, Output};

fn xcdof(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xcdof"))
        .args(args)
        .env_remove("XCDOF_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn params_reports_gamma_and_sum_dof() {
    let o = xcdof(&["params", "3", "3", "2", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("gamma = 9/5 9/5"), "{s}");
    assert!(s.contains("sum_dof = 18/7"), "{s}");
    assert!(s.contains("T = 14"), "{s}");
}

#[test]
fn params_relabels_unnormalized_input() {
    let s = stdout(&xcdof(&["params", "2", "3", "2", "2"]));
    assert!(s.contains("config = (3,2,2,2)"), "{s}");
    assert!(s.contains("relabeled"), "{s}");
}

#[test]
fn simulate_summary_line() {
    let o = xcdof(&["simulate", "3", "3", "2", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "T=14 symbols=36 dof=18/7 decodable=yes");
}

#[test]
fn dump_and_replay_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let p = path.to_str().unwrap();
    let a = xcdof(&["--seed", "7", "simulate", "2", "2", "3", "3", "--dump", p]);
    assert!(a.status.success());
    let b = xcdof(&["replay", p]);
    assert!(b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn same_seed_same_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = xcdof(&["--seed", "11", "simulate", "3", "3", "2", "2", "--dump"]
            .iter()
            .copied()
            .chain([path.to_str().unwrap()])
            .collect::<Vec<_>>());
        assert!(o.status.success());
        std::fs::read_to_string(path).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn verify_lemma_passes() {
    let o = xcdof(&["verify", "lemma1", "1", "1", "1", "1", "--trials", "20", "--T", "4"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("violations = 0"));
}

#[test]
fn verify_broadcast_form() {
    let o = xcdof(&["verify", "lemma2", "--bc", "3", "2", "2", "--trials", "10"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("config = (3,0,2,2)"));
}

#[test]
fn region_lists_published_corner_count() {
    let o = xcdof(&["region", "3", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("corners = 12 (published 12, listed 12)"), "{s}");
    assert!(s.contains("corners_verified = yes"), "{s}");
}

#[test]
fn fig4_csv_header() {
    let o = xcdof(&["fig4", "--max", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("ratio,xc_normalized,bc_normalized"));
    assert!(s.contains("1,6/5,4/3"), "{s}");
}

#[test]
fn lossmap_csv() {
    let o = xcdof(&["lossmap", "m1_eq_m2:2", "--max", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("x,y,m1,m2,n1,n2,loss,"));
}

#[test]
fn json_output_parses() {
    let o = xcdof(&["--format", "json", "params", "1", "1", "1", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sum_dof"], "6/5");
}

#[test]
fn exit_codes() {
    assert_eq!(xcdof(&["params", "0", "0", "1", "1"]).status.code(), Some(1));
    assert_eq!(xcdof(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(xcdof(&["--help"]).status.code(), Some(0));
    assert_eq!(xcdof(&["region", "3", "0"]).status.code(), Some(1));
    assert_eq!(xcdof(&["replay", "/nonexistent/t.json"]).status.code(), Some(3));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let o = xcdof(&["-o", path.to_str().unwrap(), "table1", "--max", "2"]);
    assert!(o.status.success());
    let s = std::fs::read_to_string(path).unwrap();
    assert!(s.contains("m,n,regime,gamma"));
}
