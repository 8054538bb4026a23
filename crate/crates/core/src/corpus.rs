//! Journal-indicator tables: parsing, validation and per-category lookup.
//!
//! The input is a UTF-8 CSV with the header
//! `journal,category,impact_factor,eigenfactor,immediacy`, one row per
//! (journal, category) pair. Empty indicator cells are missing values.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const HEADER: [&str; 5] = ["journal", "category", "impact_factor", "eigenfactor", "immediacy"];

/// Minimum records per category below which [`validate_corpus`] flags a category.
pub const DEFAULT_MIN_RECORDS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Indicator {
    #[serde(rename = "if")]
    ImpactFactor,
    #[serde(rename = "es")]
    Eigenfactor,
    #[serde(rename = "ii")]
    Immediacy,
}

impl Indicator {
    pub const ALL: [Indicator; 3] = [Indicator::ImpactFactor, Indicator::Eigenfactor, Indicator::Immediacy];

    /// Short code used on the command line and in file names.
    pub fn code(self) -> &'static str {
        match self {
            Indicator::ImpactFactor => "if",
            Indicator::Eigenfactor => "es",
            Indicator::Immediacy => "ii",
        }
    }

    pub fn column(self) -> &'static str {
        match self {
            Indicator::ImpactFactor => "impact_factor",
            Indicator::Eigenfactor => "eigenfactor",
            Indicator::Immediacy => "immediacy",
        }
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Indicator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "if" | "impact_factor" => Ok(Indicator::ImpactFactor),
            "es" | "eigenfactor" => Ok(Indicator::Eigenfactor),
            "ii" | "immediacy" => Ok(Indicator::Immediacy),
            other => Err(Error::InvalidInput(format!("unknown indicator {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JournalRecord {
    pub journal_id: String,
    pub category: String,
    pub impact_factor: Option<f64>,
    pub eigenfactor: Option<f64>,
    pub immediacy: Option<f64>,
}

impl JournalRecord {
    pub fn value(&self, indicator: Indicator) -> Option<f64> {
        match indicator {
            Indicator::ImpactFactor => self.impact_factor,
            Indicator::Eigenfactor => self.eigenfactor,
            Indicator::Immediacy => self.immediacy,
        }
    }
}

/// Immutable, validated collection of journal records indexed by category.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    records: Vec<JournalRecord>,
    index: BTreeMap<String, Vec<usize>>,
}

impl Corpus {
    /// Builds a corpus from already-typed records, enforcing the same
    /// invariants as [`parse_corpus`]. Line numbers in errors assume the
    /// records came from data rows following a header line.
    pub fn from_records(records: Vec<JournalRecord>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(records.len());
        let mut index: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (i, rec) in records.iter().enumerate() {
            let line = i as u64 + 2;
            check_record(rec, line)?;
            if !seen.insert((rec.journal_id.as_str(), rec.category.as_str())) {
                return Err(Error::Duplicate {
                    line,
                    journal: rec.journal_id.clone(),
                    category: rec.category.clone(),
                });
            }
            index.entry(rec.category.clone()).or_default().push(i);
        }
        Ok(Corpus { records, index })
    }

    pub fn records(&self) -> &[JournalRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Category names in lexicographic order.
    pub fn categories(&self) -> impl Iterator<Item = &str> {
        self.index.keys().map(String::as_str)
    }

    pub fn category_count(&self) -> usize {
        self.index.len()
    }

    pub fn contains_category(&self, category: &str) -> bool {
        self.index.contains_key(category)
    }

    /// Records of one category, in input order.
    pub fn category_records<'a>(&'a self, category: &str) -> Result<impl Iterator<Item = &'a JournalRecord> + 'a> {
        let rows = self
            .index
            .get(category)
            .ok_or_else(|| Error::NotFound(category.to_string()))?;
        Ok(rows.iter().map(move |&i| &self.records[i]))
    }

    /// Every present value of `indicator` across all categories.
    pub fn all_values(&self, indicator: Indicator) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().filter_map(move |r| r.value(indicator))
    }
}

fn check_record(rec: &JournalRecord, line: u64) -> Result<()> {
    if rec.journal_id.trim().is_empty() {
        return Err(Error::Value { line, message: "empty journal id".into() });
    }
    if rec.category.trim().is_empty() {
        return Err(Error::Value { line, message: "empty category".into() });
    }
    for ind in Indicator::ALL {
        if let Some(v) = rec.value(ind) {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Value {
                    line,
                    message: format!("{} must be a finite non-negative number, got {v}", ind.column()),
                });
            }
        }
    }
    Ok(())
}

fn parse_cell(cell: &str, column: &str, line: u64) -> Result<Option<f64>> {
    if cell.is_empty() {
        return Ok(None);
    }
    let v: f64 = cell.parse().map_err(|_| Error::Value {
        line,
        message: format!("{column}: not a number: {cell:?}"),
    })?;
    if !v.is_finite() || v < 0.0 {
        return Err(Error::Value {
            line,
            message: format!("{column} must be a finite non-negative number, got {cell:?}"),
        });
    }
    Ok(Some(v))
}

/// Parses the corpus CSV format. Missing indicator cells become `None`.
pub fn parse_corpus<R: Read>(source: R) -> Result<Corpus> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);

    let mut rows = reader.records();
    let header = match rows.next() {
        Some(h) => h?,
        None => return Err(Error::Parse { line: 1, message: "missing header".into() }),
    };
    let header_fields: Vec<&str> = header.iter().map(|h| h.trim_start_matches('\u{feff}')).collect();
    if header_fields != HEADER {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header {:?}, got {:?}", HEADER.join(","), header_fields.join(",")),
        });
    }

    let mut records = Vec::new();
    let mut seen: HashSet<(String, String)> = HashSet::new();
    let mut index: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for row in rows {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() == 1 && row[0].is_empty() {
            continue;
        }
        if row.len() != HEADER.len() {
            return Err(Error::Parse {
                line,
                message: format!("expected {} columns, found {}", HEADER.len(), row.len()),
            });
        }
        let rec = JournalRecord {
            journal_id: row[0].to_string(),
            category: row[1].to_string(),
            impact_factor: parse_cell(&row[2], HEADER[2], line)?,
            eigenfactor: parse_cell(&row[3], HEADER[3], line)?,
            immediacy: parse_cell(&row[4], HEADER[4], line)?,
        };
        check_record(&rec, line)?;
        if !seen.insert((rec.journal_id.clone(), rec.category.clone())) {
            return Err(Error::Duplicate { line, journal: rec.journal_id, category: rec.category });
        }
        index.entry(rec.category.clone()).or_default().push(records.len());
        records.push(rec);
    }
    Ok(Corpus { records, index })
}

/// Writes a corpus back out in the input CSV format.
pub fn write_corpus<W: Write>(corpus: &Corpus, sink: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(HEADER)?;
    let cell = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in &corpus.records {
        writer.write_record([
            r.journal_id.clone(),
            r.category.clone(),
            cell(r.impact_factor),
            cell(r.eigenfactor),
            cell(r.immediacy),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CategoryValues {
    pub values: Vec<f64>,
    /// Records whose value for the indicator was missing.
    pub skipped: usize,
}

/// Present values of `indicator` for one category, in input order.
pub fn category_values(corpus: &Corpus, category: &str, indicator: Indicator) -> Result<CategoryValues> {
    let mut values = Vec::new();
    let mut skipped = 0;
    for rec in corpus.category_records(category)? {
        match rec.value(indicator) {
            Some(v) => values.push(v),
            None => skipped += 1,
        }
    }
    Ok(CategoryValues { values, skipped })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingCounts {
    pub impact_factor: usize,
    pub eigenfactor: usize,
    pub immediacy: usize,
}

impl MissingCounts {
    fn tally(&mut self, rec: &JournalRecord) {
        self.impact_factor += usize::from(rec.impact_factor.is_none());
        self.eigenfactor += usize::from(rec.eigenfactor.is_none());
        self.immediacy += usize::from(rec.immediacy.is_none());
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryEntry {
    pub category: String,
    pub records: usize,
    pub missing: MissingCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub record_count: usize,
    pub category_count: usize,
    pub min_records: usize,
    pub missing: MissingCounts,
    pub categories: Vec<CategoryEntry>,
    pub under_populated: Vec<String>,
}

pub fn validate_corpus(corpus: &Corpus, min_records: usize) -> ValidationReport {
    let mut missing = MissingCounts::default();
    let mut categories = Vec::with_capacity(corpus.index.len());
    let mut under_populated = Vec::new();
    for (name, rows) in &corpus.index {
        let mut cat_missing = MissingCounts::default();
        for &i in rows {
            cat_missing.tally(&corpus.records[i]);
            missing.tally(&corpus.records[i]);
        }
        if rows.len() < min_records {
            under_populated.push(name.clone());
        }
        categories.push(CategoryEntry { category: name.clone(), records: rows.len(), missing: cat_missing });
    }
    ValidationReport {
        record_count: corpus.records.len(),
        category_count: corpus.index.len(),
        min_records,
        missing,
        categories,
        under_populated,
    }
}
