//! Option resolution: command-line flags override a key=value config file,
//! which overrides built-in defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};

use catbench::benchmark::DEFAULT_TOP_K;
use catbench::corpus::DEFAULT_MIN_RECORDS;
use catbench::histogram::{DEFAULT_ALPHA, DEFAULT_BIN_COUNT};
use catbench::{Indicator, Scale};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IndicatorArg {
    If,
    Es,
    Ii,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScaleArg {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct SharedArgs {
    /// Corpus CSV (journal,category,impact_factor,eigenfactor,immediacy)
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Indicator to analyze [default: all]
    #[arg(long, value_enum)]
    pub indicator: Option<IndicatorArg>,
    /// Number of histogram bins [default: 20]
    #[arg(long)]
    pub bins: Option<usize>,
    /// Bin scale for every indicator [default: linear for if/ii, log for es]
    #[arg(long, value_enum)]
    pub scale: Option<ScaleArg>,
    /// Additive smoothing pseudo-count [default: 0.5]
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Number of most similar categories kept [default: 30]
    #[arg(long)]
    pub k: Option<usize>,
    /// Reference category
    #[arg(long)]
    pub reference: Option<String>,
    /// Prestige order file, one category per line, best first
    #[arg(long)]
    pub prestige: Option<PathBuf>,
    /// Output directory [default: stdout; "." for map]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format [default: json]
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// key=value file supplying defaults for any of these options
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub indicators: Vec<Indicator>,
    pub bins: usize,
    /// `None` means each indicator's default scale.
    pub scale: Option<Scale>,
    pub alpha: f64,
    pub k: usize,
    pub reference: Option<String>,
    pub prestige: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub min_records: usize,
}

impl RunConfig {
    pub fn scale_for(&self, indicator: Indicator) -> Scale {
        self.scale.unwrap_or_else(|| Scale::default_for(indicator))
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inds: Vec<&str> = self.indicators.iter().map(|i| i.code()).collect();
        let scales: Vec<String> = self.indicators.iter().map(|&i| format!("{}:{}", i.code(), self.scale_for(i))).collect();
        write!(
            f,
            "input={} indicators={} bins={} scales={} alpha={} k={} reference={} prestige={} out={} format={} min_records={}",
            self.input.display(),
            inds.join(","),
            self.bins,
            scales.join(","),
            self.alpha,
            self.k,
            self.reference.as_deref().unwrap_or("-"),
            self.prestige.as_ref().map_or("-".into(), |p| p.display().to_string()),
            self.out.as_ref().map_or("-".into(), |p| p.display().to_string()),
            self.format,
            self.min_records,
        )
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
        let key = key.trim().replace('-', "_");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(format!("config line {}: unknown key {key:?}", i + 1));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

const KNOWN_KEYS: [&str; 11] =
    ["input", "indicator", "bins", "scale", "alpha", "k", "reference", "prestige", "out", "format", "min_records"];

fn from_file<T: std::str::FromStr>(file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, String> {
    file.get(key)
        .map(|v| v.parse::<T>().map_err(|_| format!("config: invalid value {v:?} for {key}")))
        .transpose()
}

fn enum_from_file<T: ValueEnum>(file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, String> {
    file.get(key)
        .map(|v| T::from_str(v, true).map_err(|_| format!("config: invalid value {v:?} for {key}")))
        .transpose()
}

pub fn resolve(args: &SharedArgs, min_records: Option<usize>) -> Result<RunConfig, String> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_config_file(&text)?
        }
        None => BTreeMap::new(),
    };

    let input = args
        .input
        .clone()
        .or(from_file::<PathBuf>(&file, "input")?)
        .ok_or("no input corpus given (use --input)")?;
    let indicator = args.indicator.or(enum_from_file(&file, "indicator")?).unwrap_or(IndicatorArg::All);
    let indicators = match indicator {
        IndicatorArg::If => vec![Indicator::ImpactFactor],
        IndicatorArg::Es => vec![Indicator::Eigenfactor],
        IndicatorArg::Ii => vec![Indicator::Immediacy],
        IndicatorArg::All => Indicator::ALL.to_vec(),
    };
    let scale = args.scale.or(enum_from_file(&file, "scale")?).map(|s| match s {
        ScaleArg::Linear => Scale::Linear,
        ScaleArg::Log => Scale::Logarithmic,
    });
    let config = RunConfig {
        input,
        indicators,
        bins: args.bins.or(from_file(&file, "bins")?).unwrap_or(DEFAULT_BIN_COUNT),
        scale,
        alpha: args.alpha.or(from_file(&file, "alpha")?).unwrap_or(DEFAULT_ALPHA),
        k: args.k.or(from_file(&file, "k")?).unwrap_or(DEFAULT_TOP_K),
        reference: args.reference.clone().or(from_file(&file, "reference")?),
        prestige: args.prestige.clone().or(from_file(&file, "prestige")?),
        out: args.out.clone().or(from_file(&file, "out")?),
        format: args.format.or(enum_from_file(&file, "format")?).unwrap_or(Format::Json),
        min_records: min_records.or(from_file(&file, "min_records")?).unwrap_or(DEFAULT_MIN_RECORDS),
    };
    if config.bins < 2 {
        return Err(format!("--bins must be >= 2, got {}", config.bins));
    }
    if !(config.alpha.is_finite() && config.alpha >= 0.0) {
        return Err(format!("--alpha must be finite and >= 0, got {}", config.alpha));
    }
    if config.k == 0 {
        return Err("--k must be >= 1".into());
    }
    Ok(config)
}

pub fn file_stem_for(name: &str) -> String {
    let mut s: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '_' })
        .collect();
    while s.contains("__") {
        s = s.replace("__", "_");
    }
    s.trim_matches('_').to_string()
}

pub fn ensure_dir(dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_file_beat_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.cfg");
        std::fs::write(&cfg, "# demo\ninput = corpus.csv\nbins = 12\nalpha=0\nk = 5 # trailing\n").unwrap();
        let args = SharedArgs { config: Some(cfg), k: Some(7), ..SharedArgs::default() };
        let rc = resolve(&args, None).unwrap();
        assert_eq!(rc.input, PathBuf::from("corpus.csv"));
        assert_eq!(rc.bins, 12);
        assert_eq!(rc.alpha, 0.0);
        assert_eq!(rc.k, 7);
        assert_eq!(rc.format, Format::Json);
        assert_eq!(rc.indicators.len(), 3);
        assert_eq!(rc.min_records, DEFAULT_MIN_RECORDS);
        assert_eq!(rc.scale_for(Indicator::Eigenfactor), Scale::Logarithmic);
    }

    #[test]
    fn bad_config_lines_rejected() {
        assert!(parse_config_file("bins\n").is_err());
        assert!(parse_config_file("colour = red\n").is_err());
        assert_eq!(parse_config_file("min-records = 3").unwrap()["min_records"], "3");
    }

    #[test]
    fn missing_input_rejected() {
        assert!(resolve(&SharedArgs::default(), None).is_err());
    }

    #[test]
    fn stems() {
        assert_eq!(file_stem_for("Cell Biology"), "cell_biology");
        assert_eq!(file_stem_for("Computer Science, Information Systems"), "computer_science_information_systems");
    }
}
