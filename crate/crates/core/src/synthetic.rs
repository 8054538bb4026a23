//! Fixed-seed synthetic corpora for demos and tests.
//!
//! A reference category and a handful of "twin" categories draw their
//! indicators from one shared generating distribution; every other category
//! uses a shifted one.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Normal};

use crate::corpus::{Corpus, JournalRecord};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    pub seed: u64,
    /// Total categories, reference and twins included.
    pub categories: usize,
    pub journals_per_category: usize,
    /// Categories sharing the reference's generating distribution.
    pub twins: usize,
    /// Probability that any single indicator cell is left empty.
    pub missing_rate: f64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig { seed: 2010, categories: 174, journals_per_category: 100, twins: 5, missing_rate: 0.01 }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticCorpus {
    pub corpus: Corpus,
    pub reference: String,
    pub twins: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
struct Profile {
    /// Gamma shape and mean of the impact factor
    shape: f64,
    mean: f64,
    /// log of the Eigenfactor-to-IF ratio
    es_shift: f64,
    /// Immediacy-to-IF ratio
    ii_ratio: f64,
}

const REFERENCE_PROFILE: Profile = Profile { shape: 4.0, mean: 4.0, es_shift: -6.5, ii_ratio: 0.2 };

pub fn reference_name() -> String {
    "Reference Category".to_string()
}

fn twin_name(i: usize) -> String {
    format!("Twin Category {:02}", i + 1)
}

fn other_name(i: usize) -> String {
    format!("Category {:03}", i + 1)
}

fn draw_records(rng: &mut ChaCha8Rng, category: &str, prefix: &str, count: usize, profile: Profile, missing: f64) -> Vec<JournalRecord> {
    let impact = Gamma::new(profile.shape, profile.mean / profile.shape).expect("valid gamma");
    let es_noise = Normal::<f64>::new(profile.es_shift, 0.4).expect("valid normal");
    let ii_noise = Normal::<f64>::new(0.0, 0.3).expect("valid normal");
    (0..count)
        .map(|j| {
            let if_value: f64 = impact.sample(rng);
            let es = if_value * es_noise.sample(rng).exp();
            let ii = if_value * profile.ii_ratio * ii_noise.sample(rng).exp();
            let mut cell = |v: f64| {
                let keep = rng.gen::<f64>() >= missing;
                keep.then(|| round_to(v, decimals_for(v)))
            };
            JournalRecord {
                journal_id: format!("{prefix}-J{j:03}"),
                category: category.to_string(),
                impact_factor: cell(if_value),
                eigenfactor: cell(es),
                immediacy: cell(ii),
            }
        })
        .collect()
}

/// Decimal places that keep five significant digits.
fn decimals_for(v: f64) -> i32 {
    if v <= 0.0 {
        return 0;
    }
    (4 - v.log10().floor() as i32).max(0)
}

fn round_to(v: f64, decimals: i32) -> f64 {
    let f = 10f64.powi(decimals);
    (v * f).round() / f
}

pub fn generate(cfg: &SyntheticConfig) -> Result<SyntheticCorpus> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let reference = reference_name();
    let twins: Vec<String> = (0..cfg.twins).map(twin_name).collect();
    let others = cfg.categories.saturating_sub(1 + cfg.twins);

    let mut records = draw_records(&mut rng, &reference, "REF", cfg.journals_per_category, REFERENCE_PROFILE, cfg.missing_rate);
    for (i, name) in twins.iter().enumerate() {
        records.extend(draw_records(
            &mut rng,
            name,
            &format!("TW{:02}", i + 1),
            cfg.journals_per_category,
            REFERENCE_PROFILE,
            cfg.missing_rate,
        ));
    }
    for i in 0..others {
        let factor: f64 = rng.gen_range(1.5..3.0);
        let mean = if rng.gen::<bool>() { REFERENCE_PROFILE.mean * factor } else { REFERENCE_PROFILE.mean / factor };
        let profile = Profile {
            shape: rng.gen_range(2.5..6.0),
            mean,
            es_shift: REFERENCE_PROFILE.es_shift + rng.gen_range(-1.5..1.5),
            ii_ratio: rng.gen_range(0.12..0.35),
        };
        let spread = cfg.journals_per_category / 5;
        let count = cfg.journals_per_category - spread + rng.gen_range(0..=2 * spread);
        records.extend(draw_records(&mut rng, &other_name(i), &format!("C{:03}", i + 1), count.max(1), profile, cfg.missing_rate));
    }
    Ok(SyntheticCorpus { corpus: Corpus::from_records(records)?, reference, twins })
}
