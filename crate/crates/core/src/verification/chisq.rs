//! Chi-square goodness-of-fit against the uniform distribution.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

/// Smallest expected count per cell for which the test is run.
pub const MIN_EXPECTED: f64 = 5.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiSquareReport {
    pub observed: Vec<u64>,
    pub expected: f64,
    pub statistic: f64,
    pub df: u64,
    pub alpha: f64,
    pub critical: f64,
    pub pass: bool,
}

/// Upper `alpha` quantile of the chi-square distribution with `df` degrees
/// of freedom.
pub fn critical_value(df: u64, alpha: f64) -> f64 {
    if df == 0 {
        return 0.0;
    }
    ChiSquared::new(df as f64)
        .expect("positive degrees of freedom")
        .inverse_cdf(1.0 - alpha)
}

/// Tests `observed` against equal expected counts in every cell.
pub fn chi_square_uniformity(observed: &[u64], alpha: f64) -> Result<ChiSquareReport> {
    let cells = observed.len().max(1) as f64;
    let total: u64 = observed.iter().sum();
    let expected = total as f64 / cells;
    if expected < MIN_EXPECTED {
        return Err(Error::InsufficientSamples {
            expected,
            required: MIN_EXPECTED,
        });
    }
    let statistic = observed
        .iter()
        .map(|&o| {
            let d = o as f64 - expected;
            d * d / expected
        })
        .sum();
    let df = observed.len().saturating_sub(1) as u64;
    let critical = critical_value(df, alpha);
    Ok(ChiSquareReport {
        observed: observed.to_vec(),
        expected,
        statistic,
        df,
        alpha,
        critical,
        pass: df == 0 || statistic < critical,
    })
}
