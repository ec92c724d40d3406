//! Least-squares power-law fitting on `log(1+t)` / `log(value)` axes.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("fit window [{lo}, {hi}] is invalid (need hi > lo and lo >= {min_lo})")]
    InvalidWindow { lo: f64, hi: f64, min_lo: f64 },
    #[error("fit window contains {got} samples, need at least {need}")]
    TooFewSamples { got: usize, need: usize },
    #[error("fit window contains a nonpositive value at t = {t}")]
    NonpositiveValue { t: f64 },
}

/// Result of a log-log regression: `value ≈ c (1+t)^slope`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub r_squared: f64,
    pub samples: usize,
}

/// Least-squares slope of `log(value)` against `log(1+t)` over the window
/// `t ∈ [lo, hi]`. Requires at least `min_samples` points inside the window,
/// `lo >= min_lo`, and strictly positive values throughout.
pub fn log_log_slope(
    times: &[f64],
    values: &[f64],
    window: (f64, f64),
    min_lo: f64,
    min_samples: usize,
) -> Result<SlopeFit, FitError> {
    let (lo, hi) = window;
    if !(hi > lo) || lo < min_lo {
        return Err(FitError::InvalidWindow { lo, hi, min_lo });
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&t, &v) in times.iter().zip(values) {
        if t < lo || t > hi {
            continue;
        }
        if v <= 0.0 {
            return Err(FitError::NonpositiveValue { t });
        }
        xs.push((1.0 + t).ln());
        ys.push(v.ln());
    }
    if xs.len() < min_samples {
        return Err(FitError::TooFewSamples {
            got: xs.len(),
            need: min_samples,
        });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy) / (sxx * syy)
    };
    Ok(SlopeFit {
        slope,
        r_squared,
        samples: xs.len(),
    })
}
