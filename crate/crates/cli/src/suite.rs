//! The default corpus behind `verify <check>` and `verify --all`.

use serde_json::{json, Value};

use crate::job::{Command, JobSpec};

fn job(v: Value) -> JobSpec {
    serde_json::from_value(v).expect("corpus jobs are well formed")
}

fn ring(field: &str, vars: &[&str]) -> Value {
    json!({ "field": field, "vars": vars })
}

fn main_theorem() -> Vec<JobSpec> {
    let mut out = Vec::new();
    for field in ["QQ", "Fp(5)"] {
        // Bimodules over Q[x] ⊗ Q[x] = Q[x, y].
        let line = [
            json!("free"),
            json!({ "presentation": { "relations": [["x^2-2*x*y+y^2"]] } }),
            json!("diagonal"),
            json!({ "presentation": { "relations": [["x^2-2*x*y+y^2"], ["x^3+3*x^2*y+3*x*y^2+y^3"]] } }),
        ];
        for m in line {
            for i in 0..=1 {
                out.push(job(json!({
                    "command": "main-theorem",
                    "ring": ring(field, &["x"]),
                    "ideal": ["x"],
                    "bimodule": m,
                    "params": { "i": i, "N": 8 },
                })));
            }
        }
        for m in ["free", "diagonal"] {
            for i in 0..=2 {
                out.push(job(json!({
                    "command": "main-theorem",
                    "ring": ring(field, &["x1", "x2"]),
                    "ideal": ["x1", "x2"],
                    "bimodule": m,
                    "params": { "i": i, "N": 4 },
                })));
            }
        }
    }
    out
}

fn hkr() -> Vec<JobSpec> {
    (1..=3).map(|n| job(json!({ "command": "hkr", "params": { "n": n, "N": if n == 3 { 4 } else { 5 } } }))).collect()
}

/// Module pairs `(M, N)`; `k` is the residue field.
fn gm_duality() -> Vec<JobSpec> {
    let line = ring("QQ", &["x"]);
    let plane = ring("QQ", &["x", "y"]);
    let k1 = json!({ "relations": [["x"]] });
    let t1 = json!({ "relations": [["x^2"]] });
    let k2 = json!({ "relations": [["x", "y"]] });
    let pairs = [
        (&line, json!(["x"]), Some(&k1), None),
        (&line, json!(["x"]), None, None),
        (&line, json!(["x"]), Some(&t1), None),
        (&line, json!(["x"]), Some(&t1), Some(&t1)),
        (&plane, json!(["x", "y"]), Some(&k2), None),
        (&plane, json!(["x", "y"]), None, None),
    ];
    pairs
        .into_iter()
        .map(|(r, a, m, n)| {
            let mut v = json!({ "command": "gm-duality", "ring": r, "ideal": a, "params": { "i_max": 3, "window": [-10, 10] } });
            if let Some(m) = m {
                v["module"] = m.clone();
            }
            if let Some(n) = n {
                v["target"] = n.clone();
            }
            job(v)
        })
        .collect()
}

fn cofinality() -> Vec<JobSpec> {
    vec![
        job(json!({ "command": "cofinality", "ring": ring("QQ", &["x"]), "ideal": ["x"] })),
        job(json!({ "command": "cofinality", "ring": ring("QQ", &["x1", "x2"]), "ideal": ["x1", "x2"] })),
    ]
}

fn padic() -> Vec<JobSpec> {
    [2, 3, 5].into_iter().map(|p| job(json!({ "command": "padic", "params": { "p": p, "N": 6 } }))).collect()
}

fn wpr_example() -> Vec<JobSpec> {
    vec![
        job(json!({
            "command": "wpr-example",
            "ring": { "field": "QQ", "vars": ["x", "y"], "quotient": ["x*y"] },
            "sequence": ["x"],
            "params": { "J": 8, "expected_offset": 1 },
        })),
        job(json!({ "command": "wpr-example", "ring": ring("QQ", &["x"]), "sequence": ["x"], "params": { "J": 8, "expected_offset": 0 } })),
        job(
            json!({ "command": "wpr-example", "ring": ring("QQ", &["x", "y"]), "sequence": ["x", "y"], "params": { "J": 4, "expected_offset": 0 } }),
        ),
        job(
            json!({ "command": "wpr-example", "ring": ring("QQ", &["x", "y", "z"]), "sequence": ["x^2", "y*z"], "params": { "J": 3, "expected_offset": 0 } }),
        ),
    ]
}

pub fn corpus(check: Command) -> Vec<JobSpec> {
    match check {
        Command::MainTheorem => main_theorem(),
        Command::Hkr => hkr(),
        Command::GmDuality => gm_duality(),
        Command::Cofinality => cofinality(),
        Command::Padic => padic(),
        Command::WprExample => wpr_example(),
        _ => Vec::new(),
    }
}

pub fn full() -> Vec<JobSpec> {
    Command::CHECKS.iter().flat_map(|&c| corpus(c)).collect()
}
