//! Browser bindings: run a command on a JSON configuration, tabulate tube
//! dimensions, and evaluate the spread bound.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use fusion_qca::cli::build_report;
use fusion_qca::cli::config::RunConfig;
use fusion_qca::obstruct::{spread_bound, SpreadBound};

const COMMANDS: [&str; 4] = ["scan", "find-generator", "center", "chartable"];

/// Report JSON for `command` run on the configuration text `config`.
pub fn run_command(command: &str, config: &str) -> Result<String, String> {
    if !COMMANDS.contains(&command) {
        return Err(format!("unsupported command {command:?}"));
    }
    let cfg = RunConfig::parse(config).map_err(|e| e.to_string())?;
    let report = build_report(command, &cfg, None).map_err(|e| e.to_string())?;
    Ok(report.to_json().to_string())
}

/// Tube dimensions of `X^k` for `k = 1..=k_max`, with `X` the configured generator.
pub fn tube_series(config: &str, k_max: usize) -> Result<String, String> {
    let mut cfg = RunConfig::parse(config).map_err(|e| e.to_string())?;
    cfg.k_min = Some(1);
    cfg.k_max = Some(k_max);
    let report = build_report("tube-dim", &cfg, None).map_err(|e| e.to_string())?;
    Ok(Value::Array(report.rows.into_iter().map(Value::Object).collect()).to_string())
}

/// `[{k, s_max}]` for `k = 1..=k_max`; `s_max` is null where the bound is vacuous.
pub fn spread_series(n: usize, k_max: usize) -> String {
    let rows: Vec<Value> = (1..=k_max)
        .map(|k| match spread_bound(n, k) {
            SpreadBound::Vacuous => json!({"k": k, "s_max": null}),
            SpreadBound::Max(s) => json!({"k": k, "s_max": s}),
        })
        .collect();
    Value::Array(rows).to_string()
}

#[wasm_bindgen(js_name = runCommand)]
pub fn run_command_js(command: &str, config: &str) -> Result<String, JsError> {
    run_command(command, config).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = tubeSeries)]
pub fn tube_series_js(config: &str, k_max: usize) -> Result<String, JsError> {
    tube_series(config, k_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = spreadSeries)]
pub fn spread_series_js(n: usize, k_max: usize) -> String {
    spread_series(n, k_max)
}
