//! Rendering of command results in the three output formats.
//!
//! The JSON document types are public so callers and tests can round-trip
//! the machine-readable output through serde.

use clap::ValueEnum;
use num::bigint::BigUint;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::weyl::SignedDominantTerm;

/// Output format selected with `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable text.
    Plain,
    /// A LaTeX fragment.
    Latex,
    /// One JSON document.
    Json,
}

/// Machine-readable result of `dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimJson {
    pub n: usize,
    pub d: u32,
    pub k: u32,
    /// Decimal string; the value may exceed any fixed-width integer.
    pub nu: String,
}

pub fn render_dim(format: Format, n: usize, d: u32, k: u32, value: &BigUint) -> String {
    match format {
        Format::Plain => format!("{value}\n"),
        Format::Latex => format!("\\nu_{{{n},{d}}}({k}) = {value}\n"),
        Format::Json => {
            let doc = DimJson {
                n,
                d,
                k,
                nu: value.to_string(),
            };
            format!("{}\n", serde_json::to_string(&doc).expect("serializable"))
        }
    }
}

/// Machine-readable result of `series`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub n: usize,
    pub d: u32,
    pub max_degree: u32,
    /// Decimal strings, index = degree.
    pub coefficients: Vec<String>,
}

pub fn render_series(format: Format, n: usize, d: u32, coefficients: &[BigUint]) -> String {
    match format {
        Format::Plain => format!("{}\n", polynomial(coefficients, false)),
        Format::Latex => format!("{}\n", polynomial(coefficients, true)),
        Format::Json => {
            let doc = SeriesJson {
                n,
                d,
                max_degree: (coefficients.len() - 1) as u32,
                coefficients: coefficients.iter().map(|c| c.to_string()).collect(),
            };
            format!("{}\n", serde_json::to_string(&doc).expect("serializable"))
        }
    }
}

/// `1 + t^4 + 2 t^12` (plain) or `1 + t^{4} + 2\,t^{12}` (latex); zero terms
/// are omitted and an identically-zero truncation renders as `0`.
fn polynomial(coefficients: &[BigUint], latex: bool) -> String {
    let mut pieces = Vec::new();
    for (k, coefficient) in coefficients.iter().enumerate() {
        if coefficient.is_zero() {
            continue;
        }
        let piece = if k == 0 {
            coefficient.to_string()
        } else {
            let power = match (k, latex) {
                (1, _) => "t".to_string(),
                (_, false) => format!("t^{k}"),
                (_, true) => format!("t^{{{k}}}"),
            };
            if coefficient.is_one() {
                power
            } else if latex {
                format!("{coefficient}\\,{power}")
            } else {
                format!("{coefficient} {power}")
            }
        };
        pieces.push(piece);
    }
    if pieces.is_empty() {
        "0".to_string()
    } else {
        pieces.join(" + ")
    }
}

/// One aggregated orbit term in the machine-readable `orbit` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitTermJson {
    /// Fundamental coordinates of the dominant weight.
    pub weight: Vec<i64>,
    pub multiplicity: i64,
}

/// Machine-readable result of `orbit`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub n: usize,
    pub terms: Vec<OrbitTermJson>,
}

pub fn render_orbit(format: Format, n: usize, terms: &[SignedDominantTerm]) -> String {
    match format {
        Format::Plain => {
            let pieces: Vec<String> = terms
                .iter()
                .map(|t| format!("{}:{:+}", t.dominant, t.multiplicity))
                .collect();
            format!("{}\n", pieces.join(" "))
        }
        Format::Latex => {
            let mut out = format!("\\nu_{{{n},d}}(k) = ");
            for (i, term) in terms.iter().enumerate() {
                let negative = term.multiplicity < 0;
                if i == 0 {
                    if negative {
                        out.push('-');
                    }
                } else {
                    out.push_str(if negative { " - " } else { " + " });
                }
                let magnitude = term.multiplicity.unsigned_abs();
                if magnitude != 1 {
                    out.push_str(&format!("{magnitude}\\,"));
                }
                out.push_str(&format!("c_{{{n},d}}(k,{})", term.dominant));
            }
            out.push('\n');
            out
        }
        Format::Json => {
            let doc = OrbitJson {
                n,
                terms: terms
                    .iter()
                    .map(|t| OrbitTermJson {
                        weight: t.dominant.coords().to_vec(),
                        multiplicity: t.multiplicity,
                    })
                    .collect(),
            };
            format!("{}\n", serde_json::to_string(&doc).expect("serializable"))
        }
    }
}

/// One degree of a `check` run: the values produced by each method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRow {
    pub k: u32,
    pub dp: BigUint,
    pub bruteforce: BigUint,
    /// Partition-difference value; only available for n = 2.
    pub sylvester: Option<BigUint>,
    pub pass: bool,
}

/// Full result of a `check` run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub n: usize,
    pub d: u32,
    pub max_degree: u32,
    pub rows: Vec<CheckRow>,
    pub pass: bool,
}

impl CheckReport {
    /// Smallest degree whose methods disagree, if any.
    pub fn first_failure(&self) -> Option<u32> {
        self.rows.iter().find(|r| !r.pass).map(|r| r.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRowJson {
    pub k: u32,
    pub dp: String,
    pub bruteforce: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sylvester: Option<String>,
    pub pass: bool,
}

/// Machine-readable result of `check`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub n: usize,
    pub d: u32,
    pub max_degree: u32,
    pub rows: Vec<CheckRowJson>,
    pub pass: bool,
}

/// `check` has no natural LaTeX form; latex falls back to the plain table.
pub fn render_check(format: Format, report: &CheckReport) -> String {
    match format {
        Format::Json => {
            let doc = CheckJson {
                n: report.n,
                d: report.d,
                max_degree: report.max_degree,
                rows: report
                    .rows
                    .iter()
                    .map(|r| CheckRowJson {
                        k: r.k,
                        dp: r.dp.to_string(),
                        bruteforce: r.bruteforce.to_string(),
                        sylvester: r.sylvester.as_ref().map(|s| s.to_string()),
                        pass: r.pass,
                    })
                    .collect(),
                pass: report.pass,
            };
            format!("{}\n", serde_json::to_string(&doc).expect("serializable"))
        }
        Format::Plain | Format::Latex => {
            let mut out = String::new();
            for row in &report.rows {
                let verdict = if row.pass { "PASS" } else { "FAIL" };
                match &row.sylvester {
                    Some(s) => out.push_str(&format!(
                        "k={} dp={} bruteforce={} sylvester={} {}\n",
                        row.k, row.dp, row.bruteforce, s, verdict
                    )),
                    None => out.push_str(&format!(
                        "k={} dp={} bruteforce={} {}\n",
                        row.k, row.dp, row.bruteforce, verdict
                    )),
                }
            }
            match report.first_failure() {
                None => out.push_str("PASS\n"),
                Some(k) => out.push_str(&format!("FAIL: first mismatch at k={k}\n")),
            }
            out
        }
    }
}
