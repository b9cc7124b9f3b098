//! Running commands on files and directories, and writing results.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::commands::{exit, run, Body, Command, Names, Outcome};
use crate::problem::{parse_problem, InputError};
use crate::render::{json_text, pretty};

pub fn run_file(cmd: &Command, names: &Names, path: &Path) -> Outcome {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::input_error(&InputError::new(path.display().to_string(), e.to_string())),
    };
    match parse_problem(&text) {
        Ok(pf) => run(cmd, names, &pf),
        Err(e) => Outcome::input_error(&e),
    }
}

/// Every `*.json` directly inside `dir`, in name order.
pub fn suite_files(dir: &Path) -> Result<Vec<PathBuf>, InputError> {
    let entries = fs::read_dir(dir).map_err(|e| InputError::new(dir.display().to_string(), e.to_string()))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs `cmd` on every file of a directory in parallel. Results keep the
/// file order; the status is the largest individual status.
pub fn run_suite(cmd: &Command, names: &Names, dir: &Path) -> Outcome {
    if matches!(cmd, Command::OrbitProbe { csv: true }) {
        return Outcome::input_error(&InputError::new("--csv", "CSV output is not available in suite mode"));
    }
    let files = match suite_files(dir) {
        Ok(f) => f,
        Err(e) => return Outcome::input_error(&e),
    };
    let outcomes: Vec<(String, Outcome)> = files
        .par_iter()
        .map(|p| {
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            (name, run_file(cmd, names, p))
        })
        .collect();
    let code = outcomes.iter().map(|(_, o)| o.code).max().unwrap_or(exit::OK);
    let results: Vec<Value> = outcomes
        .iter()
        .map(|(name, o)| {
            let result = match &o.body {
                Body::Json(v) => v.clone(),
                Body::Csv(s) => Value::String(s.clone()),
            };
            json!({ "file": name, "exit_code": o.code, "result": result })
        })
        .collect();
    Outcome { body: Body::Json(json!({ "suite": results })), code, diagnostic: None }
}

pub fn format(body: &Body, pretty_text: bool) -> String {
    match body {
        Body::Csv(s) => s.clone(),
        Body::Json(v) if pretty_text => pretty(v),
        Body::Json(v) => json_text(v),
    }
}
