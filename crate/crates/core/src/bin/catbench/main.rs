//! `catbench` command-line interface.
//!
//! Exit codes: 0 success, 2 input or usage errors, 3 domain errors
//! (unknown category, empty data), 4 internal or output errors.

mod config;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use catbench::{
    category_values, cross_indicator_summary, layout_map, parse_corpus, pooled_bin_spec, render_svg, run_benchmark,
    top_k, validate_corpus, write_ranking_csv, write_summary_csv, BenchmarkRequest, BenchmarkResult, Corpus, Error,
    ErrorKind, LayoutOptions, PrestigeOrder, SvgStyle,
};

use config::{ensure_dir, file_stem_for, resolve, Format, RunConfig, SharedArgs};

#[derive(Debug, Parser)]
#[command(name = "catbench", version, about = "Benchmark journal subject categories by information gain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a corpus file and print a JSON validation report
    Validate {
        #[command(flatten)]
        shared: SharedArgs,
        /// Flag categories with fewer records than this [default: 5]
        #[arg(long)]
        min_records: Option<usize>,
    },
    /// Export per-category histograms
    Hist {
        #[command(flatten)]
        shared: SharedArgs,
        /// Category to export (repeatable) [default: --reference, else all]
        #[arg(long = "category")]
        categories: Vec<String>,
    },
    /// Rank categories by information gain against a reference
    Bench {
        #[command(flatten)]
        shared: SharedArgs,
        /// Also write the cross-indicator summary table
        #[arg(long)]
        summary: bool,
    },
    /// Render heliocentric clockwise maps as SVG
    Map {
        #[command(flatten)]
        shared: SharedArgs,
        /// Leave out the concentric guide rings
        #[arg(long)]
        no_rings: bool,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn output(path: &Path, err: impl std::fmt::Display) -> Self {
        Failure { code: 4, message: format!("writing {}: {err}", path.display()) }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err.kind() {
            ErrorKind::Input => 2,
            ErrorKind::Domain => 3,
        };
        Failure { code, message: err.to_string() }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Validate { shared, min_records } => configure(&shared, min_records).and_then(|c| cmd_validate(&c)),
        Command::Hist { shared, categories } => configure(&shared, None).and_then(|c| cmd_hist(&c, &categories)),
        Command::Bench { shared, summary } => configure(&shared, None).and_then(|c| cmd_bench(&c, summary)),
        Command::Map { shared, no_rings } => configure(&shared, None).and_then(|c| cmd_map(&c, !no_rings)),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("catbench: error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn configure(shared: &SharedArgs, min_records: Option<usize>) -> Result<RunConfig, Failure> {
    let config = resolve(shared, min_records).map_err(Failure::usage)?;
    eprintln!("catbench: config: {config}");
    Ok(config)
}

fn load_corpus(config: &RunConfig) -> Result<Corpus, Failure> {
    let file = File::open(&config.input)
        .map_err(|e| Failure::usage(format!("{}: {e}", config.input.display())))?;
    parse_corpus(io::BufReader::new(file)).map_err(|e| {
        let f = Failure::from(e);
        Failure { message: format!("{}: {}", config.input.display(), f.message), ..f }
    })
}

/// Writes to `dir/name` when an output directory is set, else to stdout.
fn emit(dir: Option<&Path>, name: &str, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> CmdResult {
    match dir {
        Some(dir) => {
            ensure_dir(dir).map_err(|e| Failure::output(dir, e))?;
            let path = dir.join(name);
            let file = File::create(&path).map_err(|e| Failure::output(&path, e))?;
            let mut w = BufWriter::new(file);
            body(&mut w).and_then(|_| w.flush()).map_err(|e| Failure::output(&path, e))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w).and_then(|_| w.flush()).map_err(|e| Failure::output(Path::new("<stdout>"), e))
        }
    }
}

fn to_io(err: Error) -> io::Error {
    io::Error::other(err.to_string())
}

fn cmd_validate(config: &RunConfig) -> CmdResult {
    let corpus = load_corpus(config)?;
    let report = validate_corpus(&corpus, config.min_records);
    emit(config.out.as_deref(), "validation.json", |w| {
        serde_json::to_writer_pretty(&mut *w, &report)?;
        writeln!(w)
    })
}

#[derive(serde::Serialize)]
struct HistDocument<'a> {
    category: &'a str,
    indicator: catbench::Indicator,
    skipped: usize,
    histogram: catbench::histogram::HistogramExport,
}

fn cmd_hist(config: &RunConfig, requested: &[String]) -> CmdResult {
    let corpus = load_corpus(config)?;
    let categories: Vec<String> = if !requested.is_empty() {
        requested.to_vec()
    } else if let Some(r) = &config.reference {
        vec![r.clone()]
    } else {
        corpus.categories().map(str::to_string).collect()
    };
    for c in &categories {
        if !corpus.contains_category(c) {
            return Err(Error::NotFound(c.clone()).into());
        }
    }

    let mut docs = Vec::new();
    for &indicator in &config.indicators {
        let spec = pooled_bin_spec(&corpus, indicator, config.bins, config.scale_for(indicator))?;
        for category in &categories {
            let values = category_values(&corpus, category, indicator)?;
            let hist = catbench::build_histogram(&values.values, &spec, config.alpha).map_err(|e| match e {
                Error::EmptyData(m) => Error::EmptyData(format!("{category} ({indicator}): {m}")),
                other => other,
            })?;
            docs.push(HistDocument { category, indicator, skipped: values.skipped, histogram: hist.export() });
        }
    }

    match config.format {
        Format::Json => match config.out.as_deref() {
            Some(dir) => {
                for d in &docs {
                    let name = format!("hist_{}_{}.json", file_stem_for(d.category), d.indicator.code());
                    emit(Some(dir), &name, |w| {
                        serde_json::to_writer_pretty(&mut *w, d)?;
                        writeln!(w)
                    })?;
                }
                Ok(())
            }
            None => emit(None, "", |w| {
                for d in &docs {
                    serde_json::to_writer(&mut *w, d)?;
                    writeln!(w)?;
                }
                Ok(())
            }),
        },
        Format::Csv => emit(config.out.as_deref(), "histograms.csv", |w| {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(["category", "indicator", "bin", "lower", "upper", "count", "probability"])
                .map_err(io::Error::from)?;
            for d in &docs {
                let h = &d.histogram;
                for i in 0..h.counts.len() {
                    csv.write_record([
                        d.category.to_string(),
                        d.indicator.code().to_string(),
                        i.to_string(),
                        h.edges[i].to_string(),
                        h.edges[i + 1].to_string(),
                        h.counts[i].to_string(),
                        h.probabilities[i].to_string(),
                    ])
                    .map_err(io::Error::from)?;
                }
            }
            csv.flush()
        }),
    }
}

fn benchmark(config: &RunConfig, corpus: &Corpus) -> Result<Vec<BenchmarkResult>, Failure> {
    let reference = config.reference.clone().ok_or_else(|| Failure::usage("--reference is required"))?;
    let mut request = BenchmarkRequest::new(reference);
    request.indicators = config.indicators.clone();
    request.bin_count = config.bins;
    request.scales = config.indicators.iter().map(|&i| (i, config.scale_for(i))).collect();
    request.alpha = config.alpha;
    request.k = config.k;
    request.prestige_file = config.prestige.clone();
    let results = run_benchmark(corpus, &request)?;
    Ok(results.iter().map(|r| top_k(r, config.k)).collect())
}

fn cmd_bench(config: &RunConfig, summary: bool) -> CmdResult {
    let corpus = load_corpus(config)?;
    let results = benchmark(config, &corpus)?;
    let out = config.out.as_deref();

    match (config.format, out) {
        (Format::Json, Some(_)) => {
            for r in &results {
                emit(out, &format!("ranking_{}.json", r.indicator.code()), |w| {
                    serde_json::to_writer_pretty(&mut *w, r)?;
                    writeln!(w)
                })?;
            }
        }
        (Format::Json, None) => emit(None, "", |w| {
            serde_json::to_writer_pretty(&mut *w, &results)?;
            writeln!(w)
        })?,
        (Format::Csv, Some(_)) => {
            for r in &results {
                emit(out, &format!("ranking_{}.csv", r.indicator.code()), |w| {
                    write_ranking_csv(std::slice::from_ref(r), w).map_err(to_io)
                })?;
            }
        }
        (Format::Csv, None) => emit(None, "", |w| write_ranking_csv(&results, w).map_err(to_io))?,
    }

    if summary {
        let table = cross_indicator_summary(&results)?;
        emit(out, "summary.csv", |w| {
            if out.is_none() {
                writeln!(w)?;
            }
            write_summary_csv(&table, w).map_err(to_io)
        })?;
    }
    Ok(())
}

fn cmd_map(config: &RunConfig, rings: bool) -> CmdResult {
    let corpus = load_corpus(config)?;
    let prestige = match &config.prestige {
        Some(path) => Some(PrestigeOrder::from_file(path).map_err(|e| {
            let f = Failure::from(e);
            Failure { code: 2, message: format!("{}: {}", path.display(), f.message) }
        })?),
        None => None,
    };
    let results = benchmark(config, &corpus)?;
    let dir = config.out.clone().unwrap_or_else(|| PathBuf::from("."));
    for r in &results {
        let layout = layout_map(r, prestige.as_ref(), LayoutOptions::default())?;
        let style = SvgStyle {
            rings,
            title: Some(format!("{} ({})", r.reference, r.indicator.column())),
            ..SvgStyle::default()
        };
        let svg = render_svg(&layout, &style);
        let name = format!("map_{}_{}.svg", file_stem_for(&r.reference), r.indicator.code());
        emit(Some(&dir), &name, |w| w.write_all(svg.as_bytes()))?;
    }
    Ok(())
}
