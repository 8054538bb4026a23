mod common;

use std::collections::BTreeSet;

use catbench::benchmark::RankEntry;
use catbench::histogram::{BinSpec, Histogram, Scale};
use catbench::info_gain::{information_gain_by_difference, relative_entropy};
use catbench::synthetic::{generate, SyntheticConfig};
use catbench::{
    build_histogram, category_values, information_gain, layout_map, parse_corpus, render_svg, run_benchmark, top_k,
    write_corpus, BenchmarkRequest, BenchmarkResult, Corpus, DivergenceConfig, Indicator, JournalRecord,
    LayoutOptions, LogBase, SvgStyle,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn hist(p: &[f64]) -> Histogram {
    let spec = BinSpec::new(0.0, 1.0, p.len(), Scale::Linear).unwrap();
    Histogram::from_probabilities(spec, p.to_vec()).unwrap()
}

fn pair(seed: u64, dim: usize) -> (Histogram, Histogram) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = common::random_distribution(&mut rng, dim);
    let q = common::random_distribution(&mut rng, dim);
    (hist(&p), hist(&q))
}

fn value() -> impl Strategy<Value = Option<f64>> {
    prop_oneof![1 => Just(None), 4 => (0.0f64..1e4).prop_map(Some)]
}

fn record() -> impl Strategy<Value = JournalRecord> {
    ("[A-Za-z][A-Za-z0-9,\" ]{0,6}[A-Za-z0-9]", "[A-C]", value(), value(), value()).prop_map(|(j, c, i, e, m)| {
        JournalRecord { journal_id: j, category: c, impact_factor: i, eigenfactor: e, immediacy: m }
    })
}

fn records() -> impl Strategy<Value = Vec<JournalRecord>> {
    prop::collection::vec(record(), 1..40).prop_map(|rs| {
        let mut seen = BTreeSet::new();
        rs.into_iter().filter(|r| seen.insert((r.journal_id.clone(), r.category.clone()))).collect()
    })
}

fn small_corpus(seed: u64) -> (Corpus, String) {
    let s = generate(&SyntheticConfig { seed, categories: 12, journals_per_category: 30, twins: 2, missing_rate: 0.05 })
        .unwrap();
    (s.corpus, s.reference)
}

fn ranking(gains: &[f64]) -> BenchmarkResult {
    BenchmarkResult {
        reference: "R".into(),
        indicator: Indicator::ImpactFactor,
        spec: BinSpec::new(0.0, 1.0, 2, Scale::Linear).unwrap(),
        alpha: 0.5,
        ranking: gains
            .iter()
            .enumerate()
            .map(|(i, &g)| RankEntry { rank: i + 1, category: format!("Cat {i:02}"), gain: g })
            .collect(),
        excluded: vec![],
    }
}

proptest! {
    #[test]
    fn corpus_round_trips_through_csv(rs in records()) {
        let corpus = Corpus::from_records(rs).unwrap();
        let mut buf = Vec::new();
        write_corpus(&corpus, &mut buf).unwrap();
        let again = parse_corpus(buf.as_slice()).unwrap();
        prop_assert_eq!(again, corpus);
    }

    #[test]
    fn values_plus_skipped_is_record_count(rs in records()) {
        let corpus = Corpus::from_records(rs).unwrap();
        for cat in corpus.categories() {
            let n = corpus.category_records(cat).unwrap().count();
            for ind in Indicator::ALL {
                let v = category_values(&corpus, cat, ind).unwrap();
                prop_assert_eq!(v.values.len() + v.skipped, n);
            }
        }
    }

    #[test]
    fn probabilities_sum_to_one(
        values in prop::collection::vec(0.0f64..100.0, 0..200),
        bins in 2usize..60,
        alpha in prop_oneof![Just(0.0), 1e-6f64..1e6],
    ) {
        prop_assume!(alpha > 0.0 || !values.is_empty());
        let spec = BinSpec::new(0.0, 100.0, bins, Scale::Linear).unwrap();
        let h = build_histogram(&values, &spec, alpha).unwrap();
        let total: f64 = h.probabilities().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12, "sum {}", total);
        prop_assert!(h.probabilities().iter().all(|&p| p >= 0.0));
        if alpha > 0.0 {
            prop_assert!(h.probabilities().iter().all(|&p| p > 0.0));
        }
    }

    #[test]
    fn linear_binning_is_scale_equivariant(
        cells in prop::collection::vec((0usize..10, 0.05f64..0.95), 1..50),
        c in 1e-3f64..1e3,
        alpha in 0.0f64..2.0,
    ) {
        let (lo, hi, bins) = (2.0, 12.0, 10);
        // values sit strictly inside a bin, away from any edge
        let values: Vec<f64> = cells.iter().map(|&(b, f)| lo + b as f64 + f).collect();
        let scaled: Vec<f64> = values.iter().map(|v| v * c).collect();
        let a = build_histogram(&values, &BinSpec::new(lo, hi, bins, Scale::Linear).unwrap(), alpha).unwrap();
        let b = build_histogram(&scaled, &BinSpec::new(lo * c, hi * c, bins, Scale::Linear).unwrap(), alpha).unwrap();
        prop_assert_eq!(a.probabilities(), b.probabilities());
    }

    #[test]
    fn gibbs_and_identity(seed in any::<u64>(), dim in 2usize..=50) {
        let (p, q) = pair(seed, dim);
        let cfg = DivergenceConfig::default();
        let by_ratio = information_gain(&p, &q, &cfg).unwrap();
        let by_difference = information_gain_by_difference(&p, &q, &cfg).unwrap();
        prop_assert!(by_ratio >= -1e-12);
        prop_assert!(by_difference >= -1e-12);
        prop_assert!((by_ratio - by_difference).abs() < 1e-12);
        prop_assert!(information_gain(&p, &p, &cfg).unwrap() < 1e-12);
    }

    #[test]
    fn scale_constant_is_linear(seed in any::<u64>(), dim in 2usize..=50, a in 0.0f64..100.0) {
        let (p, q) = pair(seed, dim);
        let unit = information_gain(&p, &q, &DivergenceConfig::default()).unwrap();
        let scaled = information_gain(&p, &q, &DivergenceConfig::new(a, LogBase::Natural).unwrap()).unwrap();
        prop_assert!((scaled - a * unit).abs() < 1e-12 * a.max(1.0));
    }

    #[test]
    fn base_two_is_nats_over_ln2(seed in any::<u64>(), dim in 2usize..=50) {
        let (p, q) = pair(seed, dim);
        let nats = information_gain(&p, &q, &DivergenceConfig::default()).unwrap();
        let bits = information_gain(&p, &q, &DivergenceConfig::new(1.0, LogBase::Base2).unwrap()).unwrap();
        prop_assert!((bits - nats / std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn top_k_is_a_prefix(n in 1usize..60, k1 in 1usize..40, extra in 0usize..40) {
        let gains: Vec<f64> = (0..n).map(|i| i as f64 * 0.01).collect();
        let r = ranking(&gains);
        let small = top_k(&r, k1);
        let large = top_k(&r, k1 + extra);
        prop_assert_eq!(small.ranking.len(), k1.min(n));
        prop_assert_eq!(&large.ranking[..small.ranking.len()], small.ranking.as_slice());
    }

    #[test]
    fn layout_geometry(gains in prop::collection::vec(0.0f64..5.0, 1..60)) {
        let mut sorted = gains.clone();
        sorted.sort_by(f64::total_cmp);
        let l = layout_map(&ranking(&sorted), None, LayoutOptions::default()).unwrap();
        let step = 360.0 / l.dots.len() as f64;
        prop_assert_eq!(l.dots[0].angle_degrees, 90.0);
        for w in l.dots.windows(2) {
            prop_assert!((w[0].angle_degrees - w[1].angle_degrees - step).abs() < 1e-9);
        }
        for d in &l.dots {
            prop_assert!(l.r_min <= d.radius_fraction && d.radius_fraction <= l.r_max);
        }
        let mut by_radius = l.dots.clone();
        by_radius.sort_by(|a, b| a.radius_fraction.total_cmp(&b.radius_fraction));
        let mut by_gain = l.dots.clone();
        by_gain.sort_by(|a, b| a.gain.total_cmp(&b.gain));
        prop_assert_eq!(by_radius, by_gain);
        for a in &l.dots {
            for b in &l.dots {
                if a.gain < b.gain {
                    prop_assert!(a.radius_fraction < b.radius_fraction);
                }
            }
        }
    }

    #[test]
    fn svg_labels_once_and_stable(n in 1usize..40, rings in any::<bool>()) {
        let gains: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let r = ranking(&gains);
        let l = layout_map(&r, None, LayoutOptions::default()).unwrap();
        let style = SvgStyle { rings, ..SvgStyle::default() };
        let svg = render_svg(&l, &style);
        prop_assert_eq!(&svg, &render_svg(&l, &style));
        for e in &r.ranking {
            let needle = format!(">{}</text>", e.category);
            prop_assert_eq!(svg.matches(&needle).count(), 1);
        }
        prop_assert_eq!(svg.matches(r#"class="label""#).count(), n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn row_order_does_not_change_results(seed in 0u64..1000, shuffle in any::<u64>()) {
        let (corpus, reference) = small_corpus(seed);
        let mut rows = corpus.records().to_vec();
        rows.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle));
        let permuted = Corpus::from_records(rows).unwrap();
        let request = BenchmarkRequest::new(reference);
        let a = serde_json::to_string(&run_benchmark(&corpus, &request).unwrap()).unwrap();
        let b = serde_json::to_string(&run_benchmark(&permuted, &request).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn duplicated_reference_ranks_first(seed in 0u64..1000) {
        let (corpus, reference) = small_corpus(seed);
        let mut rows = corpus.records().to_vec();
        let copies: Vec<JournalRecord> = rows
            .iter()
            .filter(|r| r.category == reference)
            .map(|r| JournalRecord { category: "Copy of reference".into(), ..r.clone() })
            .collect();
        rows.extend(copies);
        let corpus = Corpus::from_records(rows).unwrap();
        for r in run_benchmark(&corpus, &BenchmarkRequest::new(reference)).unwrap() {
            prop_assert_eq!(&r.ranking[0].category, "Copy of reference");
            prop_assert!(r.ranking[0].gain < 1e-12);
        }
    }
}

#[test]
fn huge_smoothing_approaches_uniform() {
    let spec = BinSpec::new(0.0, 3.0, 6, Scale::Linear).unwrap();
    let h = build_histogram(&[0.1, 0.2, 2.9], &spec, 1e9).unwrap();
    let dev = h.probabilities().iter().map(|p| (p - 1.0 / 6.0).abs()).fold(0.0, f64::max);
    assert!(dev < 1e-6, "{dev}");
}

#[test]
fn repeated_runs_are_identical() {
    let (corpus, reference) = small_corpus(3);
    let request = BenchmarkRequest::new(reference);
    let a = run_benchmark(&corpus, &request).unwrap();
    let b = run_benchmark(&corpus, &request).unwrap();
    assert_eq!(a, b);
}

#[test]
fn relative_entropy_handles_zero_reference_mass() {
    assert_eq!(relative_entropy(&[0.0, 1.0], &[0.5, 0.5]).unwrap(), std::f64::consts::LN_2);
}
