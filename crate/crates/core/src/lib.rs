//! Benchmark journal subject categories against each other.
//!
//! Each category is summarized, per indicator (impact factor, Eigenfactor
//! score, immediacy index), by a histogram over intervals shared by the whole
//! corpus. A reference category is compared with every other category using
//! the Kullback–Leibler information gain; the lowest gains mark the most
//! similar categories, which can be drawn as a heliocentric clockwise map.
//!
//! ```
//! use catbench::{parse_corpus, run_benchmark, top_k, BenchmarkRequest, Indicator};
//!
//! let csv = "journal,category,impact_factor,eigenfactor,immediacy\n\
//!            j1,A,1.0,0.01,0.1\nj2,A,2.5,0.02,0.3\n\
//!            j3,B,1.1,0.01,0.1\nj4,B,2.4,0.02,0.2\n\
//!            j5,C,9.0,0.30,2.0\nj6,C,7.5,0.25,1.0\n";
//! let corpus = parse_corpus(csv.as_bytes()).unwrap();
//! let mut request = BenchmarkRequest::new("A");
//! request.indicators = vec![Indicator::ImpactFactor];
//! let results = run_benchmark(&corpus, &request).unwrap();
//! let best = top_k(&results[0], 1);
//! assert_eq!(best.ranking[0].category, "B");
//! ```

pub mod benchmark;
pub mod corpus;
pub mod error;
pub mod heliomap;
pub mod histogram;
pub mod info_gain;
pub mod sum;
pub mod synthetic;

pub use benchmark::{
    cross_indicator_summary, run_benchmark, top_k, write_ranking_csv, write_summary_csv, BenchmarkRequest,
    BenchmarkResult, RankEntry, SummaryTable,
};
pub use corpus::{category_values, parse_corpus, validate_corpus, write_corpus, Corpus, Indicator, JournalRecord, ValidationReport};
pub use error::{Error, ErrorKind, Result};
pub use heliomap::{layout_map, render_svg, HelioLayout, LayoutOptions, PrestigeOrder, SvgStyle};
pub use histogram::{build_histogram, pooled_bin_spec, BinSpec, Histogram, Scale};
pub use info_gain::{
    expected_unexpectedness, gains_against_reference, information_gain, information_gain_by_difference, unexpectedness,
    DivergenceConfig, GainValue, LogBase,
};
