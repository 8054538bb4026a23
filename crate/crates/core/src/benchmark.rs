//! Reference-vs-all benchmarking: per indicator, rank every other category
//! by ascending information gain.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use crate::corpus::{category_values, Corpus, Indicator};
use crate::error::{Error, Result};
use crate::histogram::{build_histogram, pooled_bin_spec, BinSpec, Histogram, Scale, DEFAULT_ALPHA, DEFAULT_BIN_COUNT};
use crate::info_gain::{gains_against_reference, DivergenceConfig};

pub const DEFAULT_TOP_K: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRequest {
    pub reference: String,
    pub indicators: Vec<Indicator>,
    pub bin_count: usize,
    /// Per-indicator scale; indicators not listed use [`Scale::default_for`].
    pub scales: BTreeMap<Indicator, Scale>,
    pub alpha: f64,
    pub k: usize,
    pub divergence: DivergenceConfig,
    /// Optional prestige ordering consumed by the map layout.
    pub prestige_file: Option<PathBuf>,
}

impl BenchmarkRequest {
    pub fn new(reference: impl Into<String>) -> Self {
        BenchmarkRequest {
            reference: reference.into(),
            indicators: Indicator::ALL.to_vec(),
            bin_count: DEFAULT_BIN_COUNT,
            scales: BTreeMap::new(),
            alpha: DEFAULT_ALPHA,
            k: DEFAULT_TOP_K,
            divergence: DivergenceConfig::default(),
            prestige_file: None,
        }
    }

    pub fn scale_for(&self, indicator: Indicator) -> Scale {
        self.scales.get(&indicator).copied().unwrap_or_else(|| Scale::default_for(indicator))
    }

    fn check(&self) -> Result<()> {
        if self.indicators.is_empty() {
            return Err(Error::InvalidInput("at least one indicator is required".into()));
        }
        if self.k == 0 {
            return Err(Error::InvalidInput("k must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankEntry {
    /// 1-based position in the full ranking.
    pub rank: usize,
    pub category: String,
    pub gain: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkResult {
    pub reference: String,
    pub indicator: Indicator,
    pub spec: BinSpec,
    pub alpha: f64,
    pub ranking: Vec<RankEntry>,
    /// Categories left out because they have no value for this indicator.
    pub excluded: Vec<String>,
}

/// Histograms of every category with at least one value, on the pooled spec.
/// Categories without values are returned separately.
pub fn category_histograms(
    corpus: &Corpus,
    indicator: Indicator,
    spec: &BinSpec,
    alpha: f64,
) -> Result<(BTreeMap<String, Histogram>, Vec<String>)> {
    let mut hists = BTreeMap::new();
    let mut empty = Vec::new();
    for category in corpus.categories() {
        let values = category_values(corpus, category, indicator)?;
        if values.values.is_empty() {
            empty.push(category.to_string());
            continue;
        }
        hists.insert(category.to_string(), build_histogram(&values.values, spec, alpha)?);
    }
    Ok((hists, empty))
}

fn run_indicator(corpus: &Corpus, request: &BenchmarkRequest, indicator: Indicator) -> Result<BenchmarkResult> {
    let reference = request.reference.as_str();
    let ref_values = category_values(corpus, reference, indicator)?;
    if ref_values.values.is_empty() {
        return Err(Error::EmptyData(format!(
            "reference {reference:?} has no {} values",
            indicator.column()
        )));
    }
    let spec = pooled_bin_spec(corpus, indicator, request.bin_count, request.scale_for(indicator))?;
    let (hists, excluded) = category_histograms(corpus, indicator, &spec, request.alpha)?;
    let ref_hist = &hists[reference];
    let mut gains = gains_against_reference(reference, ref_hist, &hists, &request.divergence)?;
    gains.sort_by(|a, b| a.value.total_cmp(&b.value).then_with(|| a.input.cmp(&b.input)));
    let ranking = gains
        .into_iter()
        .enumerate()
        .map(|(i, g)| RankEntry { rank: i + 1, category: g.input, gain: g.value })
        .collect();
    Ok(BenchmarkResult {
        reference: reference.to_string(),
        indicator,
        spec,
        alpha: request.alpha,
        ranking,
        excluded,
    })
}

/// Full rankings, one per requested indicator, in request order.
pub fn run_benchmark(corpus: &Corpus, request: &BenchmarkRequest) -> Result<Vec<BenchmarkResult>> {
    request.check()?;
    if !corpus.contains_category(&request.reference) {
        return Err(Error::NotFound(request.reference.clone()));
    }
    // indicators are independent; run them side by side and keep request order
    std::thread::scope(|scope| {
        let handles: Vec<_> = request
            .indicators
            .iter()
            .map(|&ind| scope.spawn(move || run_indicator(corpus, request, ind)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("benchmark worker panicked"))
            .collect()
    })
}

/// Keeps the `k` most similar categories.
pub fn top_k(result: &BenchmarkResult, k: usize) -> BenchmarkResult {
    let mut out = result.clone();
    out.ranking.truncate(k);
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub category: String,
    /// Rank under each indicator of [`SummaryTable::indicators`], if listed.
    pub ranks: Vec<Option<usize>>,
    pub appearances: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryTable {
    pub reference: String,
    pub indicators: Vec<Indicator>,
    pub rows: Vec<SummaryRow>,
}

/// Union of the categories listed in `results`, with per-indicator ranks.
/// Rows are ordered by appearance count (descending), best rank, then name.
pub fn cross_indicator_summary(results: &[BenchmarkResult]) -> Result<SummaryTable> {
    let reference = match results.first() {
        Some(r) => r.reference.clone(),
        None => return Err(Error::InvalidInput("no results to summarize".into())),
    };
    if let Some(other) = results.iter().find(|r| r.reference != reference) {
        return Err(Error::InvalidInput(format!(
            "mixed references {reference:?} and {:?}",
            other.reference
        )));
    }
    let indicators: Vec<Indicator> = results.iter().map(|r| r.indicator).collect();
    let mut ranks: BTreeMap<&str, Vec<Option<usize>>> = BTreeMap::new();
    for (col, result) in results.iter().enumerate() {
        for entry in &result.ranking {
            ranks.entry(&entry.category).or_insert_with(|| vec![None; results.len()])[col] = Some(entry.rank);
        }
    }
    let mut rows: Vec<SummaryRow> = ranks
        .into_iter()
        .map(|(category, ranks)| SummaryRow {
            category: category.to_string(),
            appearances: ranks.iter().flatten().count(),
            ranks,
        })
        .collect();
    rows.sort_by(|a, b| {
        let best = |r: &SummaryRow| r.ranks.iter().flatten().min().copied().unwrap_or(usize::MAX);
        b.appearances
            .cmp(&a.appearances)
            .then_with(|| best(a).cmp(&best(b)))
            .then_with(|| a.category.cmp(&b.category))
    });
    Ok(SummaryTable { reference, indicators, rows })
}

/// `rank,category,gain,indicator` rows for each result in turn.
pub fn write_ranking_csv<W: Write>(results: &[BenchmarkResult], sink: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["rank", "category", "gain", "indicator"])?;
    for result in results {
        for e in &result.ranking {
            w.write_record([e.rank.to_string(), e.category.clone(), e.gain.to_string(), result.indicator.code().to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `category,<indicator>_rank...,appearances`; absent ranks are empty cells.
pub fn write_summary_csv<W: Write>(table: &SummaryTable, sink: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    let mut header = vec!["category".to_string()];
    header.extend(table.indicators.iter().map(|i| format!("{}_rank", i.code())));
    header.push("appearances".into());
    w.write_record(&header)?;
    for row in &table.rows {
        let mut rec = vec![row.category.clone()];
        rec.extend(row.ranks.iter().map(|r| r.map(|x| x.to_string()).unwrap_or_default()));
        rec.push(row.appearances.to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
