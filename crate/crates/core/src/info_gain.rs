//! Unexpectedness, expected unexpectedness and the information gain of a
//! reference histogram `P` from an input histogram `Q`.
//!
//! With `h(p) = -log p`, the expected unexpectedness of the reference under
//! `Q` is `U_P(Q) = sum_i p_i h(q_i)`. The information gain is
//! `a * (U_P(Q) - U_P(P))`, which equals `a * sum_i p_i log(p_i / q_i)`,
//! the Kullback–Leibler divergence scaled by `a >= 0`. Terms with `p_i = 0`
//! contribute nothing.

use std::collections::BTreeMap;
use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::histogram::Histogram;
use crate::sum::NeumaierSum;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Natural,
    Base2,
}

impl LogBase {
    fn convert_nats(self, nats: f64) -> f64 {
        match self {
            LogBase::Natural => nats,
            LogBase::Base2 => nats / LN_2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DivergenceConfig {
    /// Non-negative multiplicative constant `a`.
    pub scale_constant: f64,
    pub log_base: LogBase,
}

impl Default for DivergenceConfig {
    fn default() -> Self {
        DivergenceConfig { scale_constant: 1.0, log_base: LogBase::Natural }
    }
}

impl DivergenceConfig {
    pub fn new(scale_constant: f64, log_base: LogBase) -> Result<Self> {
        if !(scale_constant.is_finite() && scale_constant >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "scale constant must be finite and >= 0, got {scale_constant}"
            )));
        }
        Ok(DivergenceConfig { scale_constant, log_base })
    }

    /// Converts a divergence in nats to the configured base and scale.
    pub fn apply(&self, nats: f64) -> f64 {
        self.scale_constant * self.log_base.convert_nats(nats)
    }
}

/// Information gain of `reference` from `input`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainValue {
    pub reference: String,
    pub input: String,
    pub value: f64,
}

/// `-log p` in the given base.
pub fn unexpectedness(p: f64, base: LogBase) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Domain(p));
    }
    Ok(base.convert_nats(-p.ln()))
}

fn check_pair(p: &[f64], q: &[f64]) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::IncompatibleSupport);
    }
    if let Some(bin) = p.iter().zip(q).position(|(&pi, &qi)| pi > 0.0 && qi <= 0.0) {
        return Err(Error::AbsoluteContinuity { bin, p: p[bin] });
    }
    Ok(())
}

/// `sum_i p_i * -ln q_i` over raw probability vectors, in nats.
pub fn cross_entropy(p: &[f64], q: &[f64]) -> Result<f64> {
    check_pair(p, q)?;
    let mut acc = NeumaierSum::new();
    for (&pi, &qi) in p.iter().zip(q) {
        if pi > 0.0 {
            acc += -pi * qi.ln();
        }
    }
    Ok(acc.value())
}

/// `sum_i p_i ln(p_i / q_i)` over raw probability vectors, in nats.
pub fn relative_entropy(p: &[f64], q: &[f64]) -> Result<f64> {
    check_pair(p, q)?;
    let mut acc = NeumaierSum::new();
    for (&pi, &qi) in p.iter().zip(q) {
        if pi > 0.0 {
            acc += pi * (pi / qi).ln();
        }
    }
    Ok(acc.value())
}

fn same_support(p: &Histogram, q: &Histogram) -> Result<()> {
    if p.spec() != q.spec() {
        return Err(Error::IncompatibleSupport);
    }
    Ok(())
}

/// `U_P(Q)` in nats.
pub fn expected_unexpectedness(p: &Histogram, q: &Histogram) -> Result<f64> {
    same_support(p, q)?;
    cross_entropy(p.probabilities(), q.probabilities())
}

/// Information gain computed through the log-ratio form `a * sum p log(p/q)`.
pub fn information_gain(p: &Histogram, q: &Histogram, cfg: &DivergenceConfig) -> Result<f64> {
    same_support(p, q)?;
    let nats = relative_entropy(p.probabilities(), q.probabilities())?;
    Ok(cfg.apply(nats))
}

/// Information gain computed as the difference of expected unexpectedness,
/// `a * (U_P(Q) - U_P(P))`. Agrees with [`information_gain`] up to rounding.
pub fn information_gain_by_difference(p: &Histogram, q: &Histogram, cfg: &DivergenceConfig) -> Result<f64> {
    let from_q = expected_unexpectedness(p, q)?;
    let from_p = expected_unexpectedness(p, p)?;
    Ok(cfg.apply(from_q - from_p))
}

/// Gains of `reference` from every candidate, in candidate-name order.
/// A candidate named like the reference is skipped.
pub fn gains_against_reference(
    reference_name: &str,
    reference: &Histogram,
    candidates: &BTreeMap<String, Histogram>,
    cfg: &DivergenceConfig,
) -> Result<Vec<GainValue>> {
    candidates
        .iter()
        .filter(|(name, _)| name.as_str() != reference_name)
        .map(|(name, hist)| {
            let value = information_gain(reference, hist, cfg).map_err(|e| Error::Candidate {
                candidate: name.clone(),
                source: Box::new(e),
            })?;
            // rounding can leave a -1e-17 residue on identical inputs
            let value = if value <= 0.0 { 0.0 } else { value };
            Ok(GainValue { reference: reference_name.to_string(), input: name.clone(), value })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::histogram::{BinSpec, Scale};

    fn hist(p: &[f64]) -> Histogram {
        let spec = BinSpec::new(0.0, 1.0, p.len().max(2), Scale::Linear).unwrap();
        Histogram::from_probabilities(spec, p.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn unexpectedness_values() {
        assert_eq!(unexpectedness(1.0, LogBase::Natural).unwrap(), 0.0);
        close(unexpectedness(0.5, LogBase::Natural).unwrap(), std::f64::consts::LN_2, 1e-15);
        close(unexpectedness(0.25, LogBase::Natural).unwrap(), 1.386_294_361_119_890_6, 1e-15);
        close(unexpectedness(0.25, LogBase::Base2).unwrap(), 2.0, 1e-15);
        for bad in [0.0, -0.1, 1.0000001, f64::NAN] {
            assert!(matches!(unexpectedness(bad, LogBase::Natural), Err(Error::Domain(_))), "{bad}");
        }
    }

    #[test]
    fn expected_unexpectedness_examples() {
        close(expected_unexpectedness(&hist(&[0.5, 0.5]), &hist(&[0.5, 0.5])).unwrap(), std::f64::consts::LN_2, 1e-15);
        close(expected_unexpectedness(&hist(&[1.0, 0.0]), &hist(&[0.5, 0.5])).unwrap(), std::f64::consts::LN_2, 1e-15);
    }

    #[test]
    fn one_bin_certain_event() {
        assert_eq!(cross_entropy(&[1.0], &[1.0]).unwrap(), 0.0);
    }

    #[test]
    fn gain_examples() {
        let cfg = DivergenceConfig::default();
        close(information_gain(&hist(&[0.5, 0.5]), &hist(&[0.25, 0.75]), &cfg).unwrap(), 0.143_841_036_225_890_46, 1e-12);
        close(information_gain(&hist(&[0.9, 0.1]), &hist(&[0.1, 0.9]), &cfg).unwrap(), 1.757_779_661_868_975_5, 1e-12);
        let p = hist(&[0.2, 0.3, 0.5]);
        assert_eq!(information_gain(&p, &p, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn absolute_continuity_names_bin() {
        let err = information_gain(&hist(&[0.5, 0.5]), &hist(&[1.0, 0.0]), &DivergenceConfig::default()).unwrap_err();
        assert!(matches!(err, Error::AbsoluteContinuity { bin: 1, .. }), "{err:?}");
        // zero in P where Q is zero is fine
        assert!(relative_entropy(&[1.0, 0.0], &[1.0, 0.0]).is_ok());
    }

    #[test]
    fn mismatched_support_rejected() {
        let a = hist(&[0.5, 0.5]);
        let spec = BinSpec::new(0.0, 2.0, 2, Scale::Linear).unwrap();
        let b = Histogram::from_probabilities(spec, vec![0.5, 0.5]).unwrap();
        assert!(matches!(expected_unexpectedness(&a, &b), Err(Error::IncompatibleSupport)));
        assert!(matches!(information_gain(&a, &b, &DivergenceConfig::default()), Err(Error::IncompatibleSupport)));
    }

    #[test]
    fn negative_scale_constant_rejected() {
        assert!(DivergenceConfig::new(-1.0, LogBase::Natural).is_err());
        assert!(DivergenceConfig::new(0.0, LogBase::Base2).is_ok());
    }

    #[test]
    fn asymmetry_witness() {
        let cfg = DivergenceConfig::default();
        let p = hist(&[0.8, 0.2]);
        let q = hist(&[0.5, 0.5]);
        let forward = information_gain(&p, &q, &cfg).unwrap();
        let backward = information_gain(&q, &p, &cfg).unwrap();
        assert!(forward > 0.0 && backward > 0.0);
        assert!((forward - backward).abs() > 1e-3);
        assert_ne!(forward, backward);
    }

    #[test]
    fn gains_in_name_order_and_reference_excluded() {
        let cfg = DivergenceConfig::default();
        let r = hist(&[0.5, 0.5]);
        let mut cands = BTreeMap::new();
        cands.insert("Z".to_string(), hist(&[0.25, 0.75]));
        cands.insert("R".to_string(), r.clone());
        cands.insert("A".to_string(), hist(&[0.5, 0.5]));
        let gains = gains_against_reference("R", &r, &cands, &cfg).unwrap();
        assert_eq!(gains.iter().map(|g| g.input.as_str()).collect::<Vec<_>>(), ["A", "Z"]);
        assert_eq!(gains[0].value, 0.0);
        close(gains[1].value, 0.143_841_036_225_890_46, 1e-12);
        assert!(gains.iter().all(|g| g.reference == "R"));

        assert!(gains_against_reference("R", &r, &BTreeMap::new(), &cfg).unwrap().is_empty());
    }

    #[test]
    fn candidate_errors_are_annotated() {
        let r = hist(&[0.5, 0.5]);
        let mut cands = BTreeMap::new();
        cands.insert("Bad".to_string(), hist(&[1.0, 0.0]));
        let err = gains_against_reference("R", &r, &cands, &DivergenceConfig::default()).unwrap_err();
        match err {
            Error::Candidate { candidate, source } => {
                assert_eq!(candidate, "Bad");
                assert!(matches!(*source, Error::AbsoluteContinuity { bin: 1, .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
