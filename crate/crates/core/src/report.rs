//! JSON and CSV documents for metrics, spectra, construction reports and
//! search results.
//!
//! Every document carries `schema_version`. Exact values are written as
//! `"num/den"` strings (`"4"` for integers); values known only in floating
//! point are written as JSON numbers in shortest round-trip form.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::format_rational;
use crate::metrics::MetricsReport;
use crate::walsh::Spectrum;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::InvalidJob(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Versioned<T> {
    schema_version: u32,
    #[serde(flatten)]
    body: T,
}

/// Serializes `value` as a JSON object with `schema_version` as its first field.
pub fn to_versioned_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(&Versioned {
        schema_version: SCHEMA_VERSION,
        body: value,
    })?)
}

/// Inverse of [`to_versioned_json`]; rejects unknown schema versions.
pub fn from_versioned_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let v: Versioned<T> = serde_json::from_str(text)?;
    if v.schema_version != SCHEMA_VERSION {
        return Err(Error::InvalidJob(format!(
            "unsupported schema_version {}",
            v.schema_version
        )));
    }
    Ok(v.body)
}

const METRICS_COLUMNS: [&str; 14] = [
    "schema_version",
    "n",
    "weight",
    "balanced",
    "resilience_order",
    "plateaued",
    "plateau_level",
    "bent",
    "max_corr_sq",
    "entropy",
    "min_entropy",
    "influence",
    "ei_ratio",
    "mei_ratio",
];

pub fn emit_metrics(report: &MetricsReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_versioned_json(report),
        Format::Csv => {
            let opt = |v: &Option<crate::exact::ExactValue>| {
                v.as_ref().map(|x| x.to_repr()).unwrap_or_default()
            };
            let row = [
                SCHEMA_VERSION.to_string(),
                report.n.to_string(),
                report.weight.to_string(),
                report.balanced.to_string(),
                report.resilience_order.to_string(),
                report.plateaued.to_string(),
                report
                    .plateau_level
                    .map(|p| p.to_string())
                    .unwrap_or_default(),
                report.bent.to_string(),
                report.max_corr_sq.to_string(),
                report.entropy.to_repr(),
                report.min_entropy.to_repr(),
                report.influence.to_repr(),
                opt(&report.ei_ratio),
                opt(&report.mei_ratio),
            ];
            Ok(format!(
                "{}\n{}\n",
                METRICS_COLUMNS.join(","),
                row.join(",")
            ))
        }
    }
}

pub fn parse_metrics(text: &str) -> Result<MetricsReport> {
    from_versioned_json(text)
}

/// One row per `α`: the point as an `n`-bit string (`X_n` first), its
/// weight, `corr[α]` and `corr[α]²/4^n`, followed by a Parseval footer
/// with the column sums.
pub fn emit_spectrum_csv(s: &Spectrum) -> String {
    let n = s.n();
    let den = BigInt::from(1) << (2 * n);
    let mut out = format!("# schema_version={SCHEMA_VERSION}\nalpha,weight,corr,probability\n");
    for (alpha, &c) in s.correlations().iter().enumerate() {
        let p = BigRational::new(BigInt::from(c) * BigInt::from(c), den.clone());
        let _ = writeln!(
            out,
            "{alpha:0n$b},{},{c},{}",
            (alpha as u64).count_ones(),
            format_rational(&p)
        );
    }
    let total = BigRational::new(BigInt::from(s.sum_of_squares()), den);
    let _ = writeln!(
        out,
        "parseval,,{},{}",
        s.sum_of_squares(),
        format_rational(&total)
    );
    out
}
