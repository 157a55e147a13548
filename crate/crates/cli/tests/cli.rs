use std::io::Write as _;
use std::process::{Command, Stdio};

use hhadic_cli::{emit, parse_outputs, Format, Output};
use serde_json::{json, Value};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hhadic(args: &[&str], job: Option<&Value>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hhadic"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).env_remove("HHADIC_WORKERS");
    let mut child = cmd.spawn().unwrap();
    let body = job.map(|j| j.to_string()).unwrap_or_default();
    child.stdin.take().unwrap().write_all(body.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run { code: out.status.code().unwrap(), stdout: String::from_utf8(out.stdout).unwrap(), stderr: String::from_utf8(out.stderr).unwrap() }
}

fn with_job(args: &[&str], job: Value) -> Run {
    let mut a = args.to_vec();
    a.extend(["--job", "-", "--format", "json"]);
    hhadic(&a, Some(&job))
}

fn node_wpr(offset: u32) -> Value {
    json!({
        "command": "wpr-example",
        "ring": { "field": "QQ", "vars": ["x", "y"], "quotient": ["x*y"] },
        "sequence": ["x"],
        "params": { "J": 3, "expected_offset": offset },
    })
}

fn short_tower() -> Value {
    json!({
        "command": "localcoh",
        "ring": { "field": "QQ", "vars": ["x"] },
        "ideal": ["x"],
        "params": { "i": 1, "J": 4, "window": [-10, 0] },
    })
}

#[test]
fn hkr_job_passes_with_rank_table() {
    let r = with_job(&["verify", "hkr"], json!({ "params": { "n": 1, "N": 5 } }));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let outs = parse_outputs(&r.stdout).unwrap();
    assert_eq!(outs.len(), 2);
    for o in &outs {
        let Output::Report(rep) = o else { panic!("expected a report") };
        assert!(rep.passed());
        let t = &rep.tables[0];
        assert_eq!(t.values("computed").unwrap(), vec![Some(1); 5]);
    }
}

#[test]
fn main_theorem_job_passes() {
    let job = json!({
        "ring": { "field": "QQ", "vars": ["x"] },
        "ideal": ["x"],
        "bimodule": "free",
        "params": { "i": 1, "N": 6 },
    });
    let r = with_job(&["verify", "main-theorem"], job);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(parse_outputs(&r.stdout).unwrap()[0].verdict(), hhadic::Verdict::Pass);
}

#[test]
fn malformed_field_is_an_input_error() {
    let job = json!({ "command": "gb", "ring": { "field": "Fp(4)", "vars": ["x"] }, "ideal": ["x"] });
    let r = with_job(&["run"], job);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("p must be prime"), "{}", r.stderr);
    assert!(r.stderr.contains("/ring/field"), "{}", r.stderr);
}

#[test]
fn schema_errors_carry_json_pointers() {
    let cases = [
        (json!({ "command": "gb", "ring": { "field": "QQ", "vars": ["x"] }, "ideal": ["x"], "params": { "N": "five" } }), "/params/N"),
        (json!({ "command": "gb", "ring": { "field": "QQ", "vars": ["x"], "colour": 1 }, "ideal": ["x"] }), "/ring"),
        (json!({ "command": "gb", "ring": { "field": "QQ", "vars": ["x"] }, "ideal": ["x", "x +* 1"] }), "/ideal/1"),
        (json!({ "command": "complete", "ring": { "field": "QQ", "vars": ["x"] }, "ideal": ["x"], "params": { "N": 17 } }), "/params/N"),
        (json!({ "command": "localcoh", "ring": { "field": "QQ", "vars": ["x"] }, "ideal": ["x"], "params": { "J": 13 } }), "/params/J"),
        (json!({ "command": "gb", "ring": { "field": "QQ", "vars": ["a", "b", "c", "d", "e"] }, "ideal": ["a"] }), "/ring/vars"),
        (json!({ "command": "hochschild", "ring": { "field": "QQ", "vars": ["a", "b", "c", "d"] }, "bimodule": "free" }), "/ring/vars"),
        (
            json!({ "command": "torsion", "ring": { "field": "QQ", "vars": ["x"] }, "ideal": ["x"], "module": { "relations": [["y"]] } }),
            "/module/relations/0/0",
        ),
        (json!({ "jobs": [{ "command": "gb" }, { "command": "nope" }] }), "/jobs/1/command"),
    ];
    for (job, at) in cases {
        let r = with_job(&["run"], job.clone());
        assert_eq!(r.code, 1, "{job}");
        assert!(r.stderr.contains(at), "{job}: {}", r.stderr);
    }
}

#[test]
fn subcommand_and_job_must_agree() {
    let r = with_job(&["torsion"], json!({ "command": "gb", "ring": { "field": "QQ", "vars": ["x"] }, "ideal": ["x"] }));
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("/command"));
}

#[test]
fn exit_codes_follow_verdicts() {
    assert_eq!(with_job(&["run"], node_wpr(1)).code, 0);
    assert_eq!(with_job(&["run"], node_wpr(0)).code, 2);
    assert_eq!(with_job(&["run"], short_tower()).code, 3);
    assert_eq!(hhadic(&["verify"], None).code, 1);
    assert_eq!(hhadic(&["frobnicate"], None).code, 1);
    assert_eq!(hhadic(&["--help"], None).code, 0);
}

#[test]
fn batch_priority_is_error_then_fail_then_inconclusive() {
    let bad = json!({ "command": "padic", "params": { "p": 4 } });
    let batch = |jobs: Vec<Value>| with_job(&["run"], json!({ "jobs": jobs }));
    assert_eq!(batch(vec![node_wpr(1), short_tower()]).code, 3);
    assert_eq!(batch(vec![short_tower(), node_wpr(0), node_wpr(1)]).code, 2);
    let r = batch(vec![node_wpr(0), bad, short_tower()]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("/jobs/1/params/p"), "{}", r.stderr);
    // Surviving jobs still report, in order.
    let outs = parse_outputs(&r.stdout).unwrap();
    assert_eq!(outs.iter().map(|o| o.name().to_string()).collect::<Vec<_>>(), ["wpr", "localcoh"]);
}

#[test]
fn markdown_rendering() {
    let args = ["run", "--job", "-", "--format", "markdown"];
    let r = hhadic(&args, Some(&node_wpr(1)));
    assert!(r.stdout.contains("| verdict | ✓ pass |"), "{}", r.stdout);
    assert!(r.stdout.contains("| j' - j | 1 | 1 | 1 | |"), "{}", r.stdout);
    let r = hhadic(&args, Some(&short_tower()));
    assert!(r.stdout.contains("unstable at -10"), "{}", r.stdout);
    assert!(r.stdout.contains("? inconclusive"));
}

#[test]
fn json_round_trips_byte_for_byte() {
    for job in [node_wpr(1), short_tower(), json!({ "jobs": [node_wpr(1), short_tower()] })] {
        let r = with_job(&["run"], job);
        let outs = parse_outputs(&r.stdout).unwrap();
        assert_eq!(emit(&outs, Format::Json), r.stdout);
    }
}

#[test]
fn seeds_and_workers_are_honoured() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hhadic"));
    let out = cmd
        .args(["run", "--job", "-", "--format", "json", "--seed", "99"])
        .env("HHADIC_WORKERS", "2")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            c.stdin.take().unwrap().write_all(node_wpr(1).to_string().as_bytes())?;
            c.wait_with_output()
        })
        .unwrap();
    assert!(out.status.success());
    let Output::Report(rep) = &parse_outputs(std::str::from_utf8(&out.stdout).unwrap()).unwrap()[0] else { panic!() };
    assert_eq!(rep.seed, Some(99));
    assert_eq!(hhadic(&["--workers", "1", "verify", "padic"], None).code, 0);
}

#[test]
fn computations() {
    let cubic = json!({
        "ring": { "field": "QQ", "vars": ["x", "y", "z"], "order": "lex" },
        "ideal": ["y-x^2", "z-x^3"],
    });
    let r = with_job(&["gb"], cubic);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    let basis: Vec<String> = v["data"]["basis"].as_array().unwrap().iter().map(|c| c[0].as_str().unwrap().to_string()).collect();
    assert!(basis.contains(&"y^3-z^2".to_string()) || basis.contains(&"-y^3+z^2".to_string()), "{basis:?}");

    let koszul = json!({
        "ring": { "field": "QQ", "vars": ["x", "y"] },
        "complex": { "lo": 0, "twists": [[0], [1, 1], [2]], "diffs": [[["x"], ["y"]], [["-y", "x"]]] },
        "params": { "window": [0, 3] },
    });
    let r = with_job(&["homology"], koszul);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    let rows = &v["tables"][0]["rows"];
    let dims = |k: usize| -> Vec<u64> { rows[k]["cells"].as_array().unwrap().iter().map(|c| c["value"].as_u64().unwrap()).collect() };
    assert_eq!(dims(0), vec![1, 0, 0, 0]);
    assert_eq!(dims(1), vec![0; 4]);

    let tors = json!({ "ring": { "field": "QQ", "vars": ["x", "y"] }, "ideal": ["x"], "module": { "relations": [["x^2*y"]] } });
    let v: Value = serde_json::from_str(&with_job(&["torsion"], tors).stdout).unwrap();
    assert_eq!(v["data"]["killed_by_power"], 2);
    assert_eq!(v["data"]["generators"], json!([["y"]]));

    let comp = json!({ "ring": { "field": "QQ", "vars": ["x"] }, "ideal": ["x"], "params": { "N": 4 } });
    let v: Value = serde_json::from_str(&with_job(&["complete"], comp).stdout).unwrap();
    let cells: Vec<u64> = v["tables"][0]["rows"][0]["cells"].as_array().unwrap().iter().map(|c| c["value"].as_u64().unwrap()).collect();
    assert_eq!(cells, vec![1, 1, 1, 1, 0, 0, 0]);

    let hh = json!({ "ring": { "field": "QQ", "vars": ["x"] }, "bimodule": "diagonal", "ideal": ["x"], "params": { "N": 3, "window": [-1, 2] } });
    let r = with_job(&["hochschild"], hh);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["tables"].as_array().unwrap().len(), 3);

    let w = json!({ "ring": { "field": "QQ", "vars": ["x", "y"], "quotient": ["x*y"] }, "sequence": ["x"], "params": { "J": 2 } });
    let v: Value = serde_json::from_str(&with_job(&["wpr"], w).stdout).unwrap();
    assert_eq!(v["data"]["entries"][0]["witness"], 2);
}
