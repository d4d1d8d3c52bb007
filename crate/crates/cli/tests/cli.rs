use std::process::{Command, Output};

use hypertrees::{HyperTree, ParkingFn, PruferCode, RMatching};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypertrees"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn count_both_methods() {
    assert_eq!(stdout(&["count", "--r", "3", "--n", "7", "--method", "both"]), "formula=735 brute=735 agree=true\n");
    assert_eq!(stdout(&["count", "--r", "4", "--n", "7"]), "70\n");
}

#[test]
fn decode_example() {
    let out = stdout(&["prufer", "decode", "--n", "9", "--r", "3", "--matching", "1,2|3,4|5,6|7,8", "--code", "3,3,4"]);
    assert_eq!(out, "1,2,3;3,4,9;3,5,6;4,7,8\n");
    let back = stdout(&[
        "prufer", "encode", "--n", "9", "--r", "3", "--tree", out.trim(), "--matching", "1,2|3,4|5,6|7,8",
    ]);
    assert_eq!(back, "3,3,4\n");
}

#[test]
fn extraction_in_discovery_order() {
    let args = ["matching", "extract", "--n", "7", "--r", "3", "--tree", "1,2,3;3,4,7;3,5,6"];
    let mut disc = args.to_vec();
    disc.push("--discovery-order");
    assert_eq!(stdout(&disc), "{{3,4},{1,2},{5,6}}\n");
    assert_eq!(stdout(&args), "1,2|3,4|5,6\n");
}

#[test]
fn bijection_example() {
    let tree = "1,2,3;3,4,7;5,6,7";
    assert_eq!(stdout(&["bij", "to-park", "--r", "2", "--tree", tree]), "1,0,0\n");
    assert_eq!(stdout(&["bij", "to-tree", "--r", "2", "--seq", "1,0,0"]), format!("{tree}\n"));
}

#[test]
fn parking_commands() {
    assert_eq!(stdout(&["park", "check", "--seq", "0,2,1", "--r", "1"]), "true\n");
    assert_eq!(stdout(&["park", "check", "--seq", "0,2,2", "--r", "1"]), "false\n");
    assert_eq!(stdout(&["park", "simulate", "--seq", "1,0,0"]), "true\n");
    assert_eq!(stdout(&["park", "count", "--k", "3", "--r", "2", "--method", "both"]), "formula=49 brute=49 agree=true\n");
    assert_eq!(stdout(&["park", "enumerate", "--k", "2", "--r", "1"]), "0,0\n0,1\n1,0\n");
}

#[test]
fn egf_lists_exact_coefficients() {
    let out = stdout(&["egf", "--r", "3", "--order", "5", "--verify"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "0: 0/1 t_0=0");
    assert_eq!(lines[1], "1: 1/1 t_1=1");
    assert_eq!(lines[3], "3: 1/2 t_3=3");
    assert_eq!(lines[5], "5: 5/8 t_5=75");
    assert!(out.ends_with("functional equation holds through order 5\n"));
}

#[test]
fn shi_regions_with_witnesses() {
    let out = stdout(&["shi", "regions", "--k", "2", "--r", "2", "--witnesses"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "regions=5");
    assert_eq!(lines.len(), 6);
    assert_eq!(stdout(&["shi", "regions", "--k", "3", "--r", "1"]), "regions=16\n");
}

#[test]
fn exit_codes_are_distinct() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["nonsense"]), 2);
    assert_eq!(code(&["park", "check", "--seq", "1,x", "--r", "1"]), 3);
    assert_eq!(code(&["count", "--n", "9", "--r", "3", "--method", "brute", "--cap", "10"]), 4);
    assert_eq!(
        code(&["prufer", "encode", "--n", "5", "--r", "3", "--tree", "1,2,3;3,4,5", "--matching", "1,3|2,4"]),
        5
    );
    let err = run(&["park", "check", "--seq", "1,x", "--r", "1"]);
    assert!(String::from_utf8_lossy(&err.stderr).starts_with("error[parse]: "));
    let err = run(&["--json", "park", "check", "--seq", "1,x", "--r", "1"]);
    let v: Value = serde_json::from_slice(&err.stderr).unwrap();
    assert_eq!(v["error"], "parse");
}

#[test]
fn json_round_trips_through_text_parsers() {
    let trees = json(&["enumerate", "--n", "5", "--r", "3"]);
    let trees = trees.as_array().unwrap();
    assert_eq!(trees.len(), 15);
    for v in trees {
        let t: HyperTree = serde_json::from_value(v.clone()).unwrap();
        assert_eq!(HyperTree::parse(&t.to_string(), t.n(), t.r()).unwrap(), t);
    }

    let m: RMatching = serde_json::from_value(json(&["matching", "extract", "--n", "7", "--r", "3", "--tree", "1,2,3;3,4,7;3,5,6"]))
        .unwrap();
    assert_eq!(RMatching::parse(&m.to_string()).unwrap(), m);

    let code = json(&["prufer", "encode", "--n", "7", "--r", "3", "--tree", "1,2,3;3,4,7;3,5,6", "--matching", "1,2|3,4|5,6"]);
    let entries: Vec<String> = code.as_array().unwrap().iter().map(|v| v.to_string()).collect();
    let parsed = PruferCode::parse(&entries.join(","), 7).unwrap();
    assert_eq!(parsed.to_string(), entries.join(","));

    for v in json(&["park", "enumerate", "--k", "2", "--r", "2"]).as_array().unwrap() {
        let entries: Vec<String> = v.as_array().unwrap().iter().map(|x| x.to_string()).collect();
        let a = ParkingFn::parse(&entries.join(","), 2).unwrap();
        assert_eq!(a.to_string(), entries.join(","));
    }

    let t: HyperTree = serde_json::from_value(json(&["bij", "to-tree", "--r", "2", "--seq", "1,0,0"])).unwrap();
    assert_eq!(t.to_string(), "1,2,3;3,4,7;5,6,7");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["enumerate", "--n", "7", "--r", "4"][..],
        &["shi", "regions", "--k", "3", "--r", "1", "--witnesses"][..],
        &["--json", "egf", "--r", "4", "--order", "7"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}
