//! Parameter-file ingestion.
//!
//! A parameter file is a flat JSON document with an explicit model
//! discriminator:
//!
//! ```json
//! {
//!   "model": "relaxed",
//!   "parameters": { "mu_e": 1.0, "lambda_e": 1.0, "mu_micro": 1.0,
//!                   "lambda_micro": 1.0, "mu_c": 1.0, "l_c": 1.0,
//!                   "rho": 1.0, "eta": 1.0 },
//!   "sweep": { "k_max": 10.0, "samples": 200 },
//!   "seed": 42
//! }
//! ```
//!
//! The key set must match the declared model exactly; unknown or missing
//! keys are rejected.

use mmwave_core::params::{CauchyParams, CosseratParams, MaterialParams, ModelParams};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParamFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed parameter file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown model {0:?} (expected \"relaxed\", \"cosserat\" or \"cauchy\")")]
    UnknownModel(String),
    #[error("missing parameter keys for the {model} model: {keys:?}")]
    MissingKeys { model: &'static str, keys: Vec<String> },
    #[error("unknown parameter keys for the {model} model: {keys:?}")]
    UnknownKeys { model: &'static str, keys: Vec<String> },
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub k_max: f64,
    pub samples: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParamFile {
    model: String,
    parameters: BTreeMap<String, f64>,
    #[serde(default)]
    sweep: Option<SweepSpec>,
    #[serde(default)]
    seed: Option<u64>,
}

/// A validated parameter file.
#[derive(Debug)]
pub struct ParamFile {
    pub params: ModelParams,
    pub sweep: Option<SweepSpec>,
    /// Accepted for seeded subcommands; flag values take precedence.
    pub seed: Option<u64>,
}

const RELAXED_KEYS: [&str; 8] = [
    "eta", "l_c", "lambda_e", "lambda_micro", "mu_c", "mu_e", "mu_micro", "rho",
];
const COSSERAT_KEYS: [&str; 6] = ["eta", "l_c", "lambda_macro", "mu_c", "mu_macro", "rho"];
const CAUCHY_KEYS: [&str; 3] = ["lambda_macro", "mu_macro", "rho"];

fn validate_keys(
    model: &'static str,
    required: &[&str],
    map: &BTreeMap<String, f64>,
) -> Result<(), ParamFileError> {
    let missing: Vec<String> = required
        .iter()
        .filter(|k| !map.contains_key(**k))
        .map(|k| k.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(ParamFileError::MissingKeys { model, keys: missing });
    }
    let unknown: Vec<String> = map
        .keys()
        .filter(|k| !required.contains(&k.as_str()))
        .cloned()
        .collect();
    if !unknown.is_empty() {
        return Err(ParamFileError::UnknownKeys { model, keys: unknown });
    }
    Ok(())
}

pub fn parse(text: &str) -> Result<ParamFile, ParamFileError> {
    let raw: RawParamFile = serde_json::from_str(text)?;
    let get = |map: &BTreeMap<String, f64>, key: &str| -> f64 { map[key] };
    let params = match raw.model.as_str() {
        "relaxed" => {
            validate_keys("relaxed", &RELAXED_KEYS, &raw.parameters)?;
            let m = &raw.parameters;
            ModelParams::Relaxed(MaterialParams {
                mu_e: get(m, "mu_e"),
                lambda_e: get(m, "lambda_e"),
                mu_micro: get(m, "mu_micro"),
                lambda_micro: get(m, "lambda_micro"),
                mu_c: get(m, "mu_c"),
                l_c: get(m, "l_c"),
                rho: get(m, "rho"),
                eta: get(m, "eta"),
            })
        }
        "cosserat" => {
            validate_keys("cosserat", &COSSERAT_KEYS, &raw.parameters)?;
            let m = &raw.parameters;
            ModelParams::Cosserat(CosseratParams {
                mu_macro: get(m, "mu_macro"),
                lambda_macro: get(m, "lambda_macro"),
                mu_c: get(m, "mu_c"),
                l_c: get(m, "l_c"),
                rho: get(m, "rho"),
                eta: get(m, "eta"),
            })
        }
        "cauchy" => {
            validate_keys("cauchy", &CAUCHY_KEYS, &raw.parameters)?;
            let m = &raw.parameters;
            ModelParams::Cauchy(CauchyParams {
                mu_macro: get(m, "mu_macro"),
                lambda_macro: get(m, "lambda_macro"),
                rho: get(m, "rho"),
            })
        }
        other => return Err(ParamFileError::UnknownModel(other.to_string())),
    };
    Ok(ParamFile {
        params,
        sweep: raw.sweep,
        seed: raw.seed,
    })
}

pub fn load(path: &Path) -> Result<ParamFile, ParamFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParamFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}
