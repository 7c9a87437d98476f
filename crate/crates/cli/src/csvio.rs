//! Branch CSV emission and parsing.
//!
//! Layout: header `k,branch_label,omega,status`, one row per (wavenumber,
//! branch instance), rows sorted by `(branch_label, k)`. Branches with
//! multiplicity m contribute m identical rows per wavenumber, so a relaxed
//! sweep carries its full 12 degrees of freedom. Numbers are printed with 17
//! significant digits, which round-trips every f64 bit-exactly.

use mmwave_core::blocks::Model;
use mmwave_core::dispersion::{BranchFamily, BranchLabel, BranchSample, DispersionBranch, WaveOmega};
use std::collections::BTreeMap;
use thiserror::Error;

pub const HEADER: &str = "k,branch_label,omega,status";

#[derive(Debug, Error, PartialEq)]
pub enum CsvError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("branch {label} has inconsistent duplicate rows at k = {k}")]
    InconsistentDuplicates { label: String, k: f64 },
}

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Serializes branches to CSV text, rows sorted by `(branch_label, k)`.
pub fn emit(branches: &[DispersionBranch]) -> String {
    let mut ordered: Vec<&DispersionBranch> = branches.iter().collect();
    ordered.sort_by_key(|b| b.label.id());
    let mut out = String::with_capacity(64 * branches.len() * 8);
    out.push_str(HEADER);
    out.push('\n');
    for b in ordered {
        for s in &b.samples {
            let (omega, status) = match s.omega {
                WaveOmega::Real(w) => (w, "real"),
                WaveOmega::Imaginary(w) => (w, "imaginary"),
            };
            for _ in 0..b.multiplicity {
                out.push_str(&fmt_f64(s.k));
                out.push(',');
                out.push_str(b.label.id());
                out.push(',');
                out.push_str(&fmt_f64(omega));
                out.push(',');
                out.push_str(status);
                out.push('\n');
            }
        }
    }
    out
}

fn family_of(label: BranchLabel) -> BranchFamily {
    use BranchLabel::*;
    match label {
        LA | LO1 | LO2 | CosseratAcousticLong | CosseratOpticLong | CauchyP => {
            BranchFamily::Longitudinal
        }
        TA | TO1 | TO2 | CosseratAcousticTrans | CosseratOpticTrans | CauchyS => {
            BranchFamily::Transverse
        }
        TSO | TRO | TCVO => BranchFamily::Uncoupled,
    }
}

fn model_of(label: BranchLabel) -> Model {
    use BranchLabel::*;
    match label {
        LA | LO1 | LO2 | TA | TO1 | TO2 | TSO | TRO | TCVO => Model::Relaxed,
        CosseratAcousticLong | CosseratOpticLong | CosseratAcousticTrans | CosseratOpticTrans => {
            Model::Cosserat
        }
        CauchyP | CauchyS => Model::Cauchy,
    }
}

/// Parses CSV text back into branches. Duplicate rows per `(label, k)`
/// reconstruct the multiplicity; tangents are not serialized.
pub fn parse(text: &str) -> Result<Vec<DispersionBranch>, CsvError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == HEADER => {}
        other => {
            return Err(CsvError::Malformed {
                line: 1,
                message: format!("expected header {HEADER:?}, got {other:?}"),
            })
        }
    }
    // label -> (multiplicity seen per k, samples)
    let mut acc: BTreeMap<&str, Vec<(BranchSample, u32)>> = BTreeMap::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let mut fields = line.split(',');
        let mut next = |what: &str| {
            fields.next().ok_or_else(|| CsvError::Malformed {
                line: line_no,
                message: format!("missing field {what}"),
            })
        };
        let k: f64 = next("k")?.parse().map_err(|e| CsvError::Malformed {
            line: line_no,
            message: format!("bad k: {e}"),
        })?;
        let label = next("branch_label")?;
        let omega: f64 = next("omega")?.parse().map_err(|e| CsvError::Malformed {
            line: line_no,
            message: format!("bad omega: {e}"),
        })?;
        let status = next("status")?;
        let omega = match status {
            "real" => WaveOmega::Real(omega),
            "imaginary" => WaveOmega::Imaginary(omega),
            other => {
                return Err(CsvError::Malformed {
                    line: line_no,
                    message: format!("unknown status {other:?}"),
                })
            }
        };
        let sample = BranchSample { k, omega };
        let entries = acc.entry(label).or_default();
        match entries.last_mut() {
            Some((prev, count)) if prev.k == k => {
                if prev.omega != omega {
                    return Err(CsvError::InconsistentDuplicates {
                        label: label.to_string(),
                        k,
                    });
                }
                *count += 1;
            }
            _ => entries.push((sample, 1)),
        }
    }

    let mut branches = Vec::with_capacity(acc.len());
    for (label_id, rows) in acc {
        let label = BranchLabel::from_id(label_id).ok_or_else(|| CsvError::Malformed {
            line: 0,
            message: format!("unknown branch label {label_id:?}"),
        })?;
        let multiplicity = rows.first().map(|(_, c)| *c).unwrap_or(1);
        if let Some((s, _)) = rows.iter().find(|(_, c)| *c != multiplicity) {
            return Err(CsvError::InconsistentDuplicates {
                label: label_id.to_string(),
                k: s.k,
            });
        }
        branches.push(DispersionBranch {
            model: model_of(label),
            family: family_of(label),
            label,
            multiplicity,
            samples: rows.into_iter().map(|(s, _)| s).collect(),
            tangent_at_zero: None,
        });
    }
    Ok(branches)
}
