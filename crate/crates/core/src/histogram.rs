//! Discrete probability distributions over shared indicator-value intervals.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Indicator};
use crate::error::{Error, Result};

pub const DEFAULT_BIN_COUNT: usize = 20;
pub const DEFAULT_ALPHA: f64 = 0.5;
/// Relative widening of the pooled upper bound so the maximum lies inside the last bin.
pub const UPPER_MARGIN: f64 = 1e-9;
/// Floor for the lower edge of logarithmic bins.
pub const LOG_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    #[serde(rename = "log")]
    Logarithmic,
}

impl Scale {
    /// Default scale per indicator: Eigenfactor values span orders of magnitude near zero.
    pub fn default_for(indicator: Indicator) -> Scale {
        match indicator {
            Indicator::Eigenfactor => Scale::Logarithmic,
            Indicator::ImpactFactor | Indicator::Immediacy => Scale::Linear,
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Linear => "linear",
            Scale::Logarithmic => "log",
        })
    }
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "linear" | "lin" => Ok(Scale::Linear),
            "log" | "logarithmic" => Ok(Scale::Logarithmic),
            other => Err(Error::InvalidInput(format!("unknown scale {other:?}"))),
        }
    }
}

/// Half-open intervals `[edge_i, edge_{i+1})` covering `[lower, upper)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinSpec {
    lower: f64,
    upper: f64,
    bin_count: usize,
    scale: Scale,
    edges: Vec<f64>,
}

impl BinSpec {
    pub fn new(lower: f64, upper: f64, bin_count: usize, scale: Scale) -> Result<Self> {
        if !(lower.is_finite() && lower >= 0.0) {
            return Err(Error::InvalidInput(format!("lower bound must be finite and >= 0, got {lower}")));
        }
        if !(upper.is_finite() && upper > lower) {
            return Err(Error::InvalidInput(format!("upper bound {upper} must be finite and > lower {lower}")));
        }
        if bin_count < 2 {
            return Err(Error::InvalidInput(format!("bin count must be >= 2, got {bin_count}")));
        }
        let edges = match scale {
            Scale::Linear => {
                let width = (upper - lower) / bin_count as f64;
                let mut edges: Vec<f64> = (0..=bin_count).map(|i| lower + i as f64 * width).collect();
                edges[bin_count] = upper;
                edges
            }
            Scale::Logarithmic => {
                let lo = lower.max(LOG_EPSILON);
                if upper <= lo {
                    return Err(Error::InvalidInput(format!(
                        "logarithmic upper bound {upper} must exceed {lo}"
                    )));
                }
                let (ln_lo, ln_hi) = (lo.ln(), upper.ln());
                let step = (ln_hi - ln_lo) / bin_count as f64;
                let mut edges: Vec<f64> = (0..=bin_count).map(|i| (ln_lo + i as f64 * step).exp()).collect();
                edges[0] = lo;
                edges[bin_count] = upper;
                edges
            }
        };
        Ok(BinSpec { lower, upper, bin_count, scale, edges })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn bin_count(&self) -> usize {
        self.bin_count
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    /// `bin_count + 1` monotone edges.
    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    /// Interval holding `value`, and whether the value had to be clamped into range.
    pub fn locate(&self, value: f64) -> (usize, bool) {
        let n = self.bin_count;
        if value < self.edges[0] {
            return (0, true);
        }
        if value >= self.edges[n] {
            return (n - 1, true);
        }
        let guess = match self.scale {
            Scale::Linear => (value - self.edges[0]) / (self.edges[n] - self.edges[0]) * n as f64,
            Scale::Logarithmic => {
                (value.ln() - self.edges[0].ln()) / (self.edges[n].ln() - self.edges[0].ln()) * n as f64
            }
        };
        let mut i = (guess.floor().max(0.0) as usize).min(n - 1);
        // the closed-form guess can land one bin off near an edge
        while i > 0 && value < self.edges[i] {
            i -= 1;
        }
        while i + 1 < n && value >= self.edges[i + 1] {
            i += 1;
        }
        (i, false)
    }
}

/// Shared bin spec for one indicator across every category of the corpus.
///
/// Linear bins start at 0; logarithmic bins start at the smallest positive
/// value. The upper bound is the pooled maximum widened by [`UPPER_MARGIN`].
pub fn pooled_bin_spec(corpus: &Corpus, indicator: Indicator, bin_count: usize, scale: Scale) -> Result<BinSpec> {
    let mut max = f64::NEG_INFINITY;
    let mut min_positive = f64::INFINITY;
    let mut any = false;
    for v in corpus.all_values(indicator) {
        any = true;
        max = max.max(v);
        if v > 0.0 {
            min_positive = min_positive.min(v);
        }
    }
    if !any {
        return Err(Error::EmptyData(format!("no {} values in corpus", indicator.column())));
    }
    match scale {
        Scale::Linear => {
            let upper = if max > 0.0 { max * (1.0 + UPPER_MARGIN) } else { 1.0 };
            BinSpec::new(0.0, upper, bin_count, scale)
        }
        Scale::Logarithmic => {
            if !min_positive.is_finite() {
                return Err(Error::EmptyData(format!(
                    "no positive {} values for logarithmic bins",
                    indicator.column()
                )));
            }
            BinSpec::new(min_positive, max * (1.0 + UPPER_MARGIN), bin_count, scale)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    spec: BinSpec,
    counts: Vec<u64>,
    probabilities: Vec<f64>,
    sample_count: usize,
    smoothing: f64,
    clamped: usize,
}

impl Histogram {
    pub fn spec(&self) -> &BinSpec {
        &self.spec
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    /// Pseudo-count added to every bin.
    pub fn smoothing(&self) -> f64 {
        self.smoothing
    }

    /// Values that fell outside `[lower, upper)` and were clamped to an edge bin.
    pub fn clamped(&self) -> usize {
        self.clamped
    }

    /// Builds a histogram directly from a probability vector, for callers that
    /// already hold a distribution. The vector must be non-negative and sum to 1.
    pub fn from_probabilities(spec: BinSpec, probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.len() != spec.bin_count() {
            return Err(Error::InvalidInput(format!(
                "expected {} probabilities, got {}",
                spec.bin_count(),
                probabilities.len()
            )));
        }
        if probabilities.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidInput("probabilities must be finite and >= 0".into()));
        }
        let total = crate::sum::compensated_sum(probabilities.iter().copied());
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!("probabilities sum to {total}, not 1")));
        }
        let n = probabilities.len();
        Ok(Histogram { spec, counts: vec![0; n], probabilities, sample_count: 0, smoothing: 0.0, clamped: 0 })
    }

    pub fn export(&self) -> HistogramExport {
        HistogramExport {
            scale: self.spec.scale,
            edges: self.spec.edges.clone(),
            counts: self.counts.clone(),
            probabilities: self.probabilities.clone(),
            sample_count: self.sample_count,
            alpha: self.smoothing,
            clamped: self.clamped,
        }
    }
}

/// Flat JSON view of a histogram.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramExport {
    pub scale: Scale,
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub probabilities: Vec<f64>,
    pub sample_count: usize,
    pub alpha: f64,
    pub clamped: usize,
}

/// Counts `values` into `spec` and applies additive smoothing:
/// `p_i = (c_i + alpha) / (N + alpha * bins)`.
pub fn build_histogram(values: &[f64], spec: &BinSpec, alpha: f64) -> Result<Histogram> {
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(Error::InvalidInput(format!("smoothing must be finite and >= 0, got {alpha}")));
    }
    if alpha == 0.0 && values.is_empty() {
        return Err(Error::EmptyData("no values and no smoothing: distribution undefined".into()));
    }
    let n = spec.bin_count();
    let mut counts = vec![0u64; n];
    let mut clamped = 0;
    for &v in values {
        if !v.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite value {v}")));
        }
        let (i, was_clamped) = spec.locate(v);
        counts[i] += 1;
        clamped += usize::from(was_clamped);
    }
    let denom = values.len() as f64 + alpha * n as f64;
    let probabilities = counts.iter().map(|&c| (c as f64 + alpha) / denom).collect();
    Ok(Histogram {
        spec: spec.clone(),
        counts,
        probabilities,
        sample_count: values.len(),
        smoothing: alpha,
        clamped,
    })
}
