#![allow(dead_code)]

use std::collections::VecDeque;
use std::path::{Path, PathBuf};

use forge::builder::FPoly;
use forge::cli::run_with;
use forge::topo_bounds::Window;
use serde_json::Value;

/// Runs the CLI in-process and returns `(exit code, stdout, stderr)`.
pub fn forge(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["forge"];
    full.extend_from_slice(args);
    let code = run_with(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

pub fn write_json(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(value).unwrap()).unwrap();
    p
}

pub fn schema_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/systemdoc.json")
}

/// Validates `instance` against the shipped schema, either the root
/// (`def = None`) or one of its `$defs`.
pub fn validate(instance: &Value, def: Option<&str>) -> Result<(), Vec<String>> {
    let mut schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path()).unwrap()).unwrap();
    if let Some(d) = def {
        let defs = schema["$defs"].clone();
        assert!(defs.get(d).is_some(), "no $defs/{d}");
        schema = serde_json::json!({
            "$schema": "https://json-schema.org/draft/2020-12/schema",
            "$ref": format!("#/$defs/{d}"),
            "$defs": defs,
        });
    }
    let compiled = jsonschema::JSONSchema::options()
        .with_draft(jsonschema::Draft::Draft202012)
        .compile(&schema)
        .expect("schema compiles");
    let result = compiled.validate(instance);
    result.map_err(|errs| {
        errs.map(|e| format!("{} at {}", e, e.instance_path))
            .collect()
    })
}

/// Independent oval count: connected regions of constant sign (4-connected
/// on an `n × n` grid of samples) that do not reach the border. For a
/// nonsingular curve whose zero set lies inside the window, each such
/// region is bounded by exactly one oval, so the counts agree.
pub fn sign_region_oracle(g: &FPoly, w: &Window, n: usize) -> usize {
    let sx = (w.x_max - w.x_min) / (n - 1) as f64;
    let sy = (w.y_max - w.y_min) / (n - 1) as f64;
    let sign: Vec<bool> = (0..n * n)
        .map(|k| {
            let (i, j) = (k % n, k / n);
            g.eval(w.x_min + i as f64 * sx, w.y_min + j as f64 * sy) > 0.0
        })
        .collect();
    let mut label = vec![usize::MAX; n * n];
    let mut interior = 0;
    let mut queue = VecDeque::new();
    for start in 0..n * n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = start;
        queue.push_back(start);
        let mut touches = false;
        while let Some(k) = queue.pop_front() {
            let (i, j) = (k % n, k / n);
            if i == 0 || j == 0 || i == n - 1 || j == n - 1 {
                touches = true;
            }
            let mut visit = |m: usize| {
                if label[m] == usize::MAX && sign[m] == sign[start] {
                    label[m] = start;
                    queue.push_back(m);
                }
            };
            if i > 0 {
                visit(k - 1);
            }
            if i + 1 < n {
                visit(k + 1);
            }
            if j > 0 {
                visit(k - n);
            }
            if j + 1 < n {
                visit(k + n);
            }
        }
        if !touches {
            interior += 1;
        }
    }
    interior
}
