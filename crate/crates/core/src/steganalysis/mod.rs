//! Steganalysis bench: chi-square pairs-of-values test, RS analysis and a
//! co-occurrence distortion diagnostic.

mod gamma;
mod rs;

pub use gamma::{ln_gamma, regularized_lower_gamma, regularized_upper_gamma};
pub use rs::{rs_attack, rs_statistics, RsStatistics};

use crate::pixmap::Image;
use crate::stats::{cooc_l1_distance, cooccurrence, histogram, Histogram, Offset, StatsError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("not enough populated histogram pairs ({0}) for a chi-square test")]
    NotEnoughData(usize),
    #[error("incomplete gamma did not converge for a={a}, x={x}")]
    NoConvergence { a: f64, x: f64 },
    #[error("{0}")]
    Domain(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("image must be at least {min} pixels wide, got {width}")]
    TooNarrow { width: usize, min: usize },
    #[error(transparent)]
    Stats(#[from] StatsError),
}

/// Outcome of one attack.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttackReport {
    pub method: String,
    pub statistic: f64,
    pub estimate: f64,
    pub verdict_threshold: f64,
    pub details: BTreeMap<String, f64>,
}

impl AttackReport {
    /// Whether the estimate reaches the method's detection threshold.
    pub fn detected(&self) -> bool {
        self.estimate >= self.verdict_threshold
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Pair sums at or below this are left out of the chi-square statistic.
pub const CHI_MIN_PAIR_SUM: u64 = 4;

/// Chi-square pairs-of-values test on a histogram. The estimate is the
/// probability of embedding, `1 - P(dof/2, chi2/2)`.
pub fn chi_square_histogram(h: &Histogram) -> Result<AttackReport, AnalysisError> {
    let mut chi2 = 0.0;
    let mut categories = 0usize;
    for k in 0..128 {
        let (even, odd) = (h.counts[2 * k], h.counts[2 * k + 1]);
        let sum = even + odd;
        if sum <= CHI_MIN_PAIR_SUM {
            continue;
        }
        let expected = sum as f64 / 2.0;
        let d = even as f64 - expected;
        chi2 += d * d / expected;
        categories += 1;
    }
    if categories < 2 {
        return Err(AnalysisError::NotEnoughData(categories));
    }
    let dof = (categories - 1) as f64;
    let p = regularized_upper_gamma(dof / 2.0, chi2 / 2.0)?;
    let details = BTreeMap::from([
        ("chi2".to_string(), chi2),
        ("dof".to_string(), dof),
        ("categories".to_string(), categories as f64),
    ]);
    Ok(AttackReport {
        method: "chisq".to_string(),
        statistic: chi2,
        estimate: p,
        verdict_threshold: 0.5,
        details,
    })
}

pub fn chi_square_attack(img: &Image) -> Result<AttackReport, AnalysisError> {
    chi_square_histogram(&histogram(img))
}

/// L1 distance between the cover and stego co-occurrence matrices divided
/// by the number of pixel pairs.
pub fn cooc_distortion(cover: &Image, stego: &Image, off: Offset) -> Result<f64, AnalysisError> {
    if cover.dims() != stego.dims() {
        return Err(StatsError::DimensionMismatch(cover.dims(), stego.dims()).into());
    }
    let a = cooccurrence(cover, off)?;
    let b = cooccurrence(stego, off)?;
    Ok(cooc_l1_distance(&a, &b)? / a.total() as f64)
}

pub fn cooc_attack(
    cover: &Image,
    stego: &Image,
    off: Offset,
) -> Result<AttackReport, AnalysisError> {
    let dist = cooc_distortion(cover, stego, off)?;
    Ok(AttackReport {
        method: "cooc".to_string(),
        statistic: dist,
        estimate: dist,
        verdict_threshold: 0.0,
        details: BTreeMap::from([
            ("dx".to_string(), off.dx() as f64),
            ("dy".to_string(), off.dy() as f64),
        ]),
    })
}
