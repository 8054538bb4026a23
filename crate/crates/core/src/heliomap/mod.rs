//! Heliocentric clockwise maps: the reference category sits at the centre,
//! each ranked category is a dot whose distance from the centre grows with
//! its information gain and whose clockwise position (starting at the top)
//! follows an external prestige order, or ascending gain when none is given.

mod svg;

use std::collections::HashMap;
use std::path::Path;

use serde::Serialize;

use crate::benchmark::BenchmarkResult;
use crate::error::{Error, Result};

pub use svg::{render_svg, SvgStyle};

pub const DEFAULT_R_MIN: f64 = 0.15;
pub const DEFAULT_R_MAX: f64 = 1.0;

/// Category names, highest prestige first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrestigeOrder {
    names: Vec<String>,
}

impl PrestigeOrder {
    pub fn new(names: Vec<String>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if let Some(prev) = seen.insert(n.as_str(), i) {
                return Err(Error::InvalidInput(format!(
                    "duplicate prestige entry {n:?} at positions {} and {}",
                    prev + 1,
                    i + 1
                )));
            }
        }
        Ok(PrestigeOrder { names })
    }

    /// One category per line; blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names = Vec::new();
        let mut lines: HashMap<String, usize> = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim().trim_start_matches('\u{feff}');
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(first) = lines.insert(line.to_string(), i + 1) {
                return Err(Error::Parse {
                    line: i as u64 + 1,
                    message: format!("{line:?} already listed on line {first}"),
                });
            }
            names.push(line.to_string());
        }
        Ok(PrestigeOrder { names })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayoutOptions {
    pub r_min: f64,
    pub r_max: f64,
}

impl Default for LayoutOptions {
    fn default() -> Self {
        LayoutOptions { r_min: DEFAULT_R_MIN, r_max: DEFAULT_R_MAX }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dot {
    pub label: String,
    /// Degrees, counter-clockwise from the positive x axis; 90 is the top.
    pub angle_degrees: f64,
    pub radius_fraction: f64,
    pub gain: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HelioLayout {
    pub center_label: String,
    pub dots: Vec<Dot>,
    pub r_min: f64,
    pub r_max: f64,
}

/// Places every ranking entry of `result` (truncate it first with
/// [`crate::benchmark::top_k`]). Dot `i` sits at `90 - i * 360 / count`
/// degrees; the radius maps gain affinely onto `[r_min, r_max]`.
pub fn layout_map(result: &BenchmarkResult, order: Option<&PrestigeOrder>, opts: LayoutOptions) -> Result<HelioLayout> {
    if result.ranking.is_empty() {
        return Err(Error::InvalidInput("cannot lay out an empty ranking".into()));
    }
    if !(opts.r_min.is_finite() && opts.r_max.is_finite() && 0.0 <= opts.r_min && opts.r_min <= opts.r_max) {
        return Err(Error::InvalidInput(format!(
            "radius bounds must satisfy 0 <= r_min <= r_max, got {} and {}",
            opts.r_min, opts.r_max
        )));
    }

    let mut entries: Vec<_> = result.ranking.iter().collect();
    let by_gain = |a: &&crate::benchmark::RankEntry, b: &&crate::benchmark::RankEntry| {
        a.gain.total_cmp(&b.gain).then_with(|| a.category.cmp(&b.category))
    };
    match order {
        Some(order) => {
            let position: HashMap<&str, usize> =
                order.names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
            entries.sort_by(|a, b| {
                match (position.get(a.category.as_str()), position.get(b.category.as_str())) {
                    (Some(x), Some(y)) => x.cmp(y),
                    (Some(_), None) => std::cmp::Ordering::Less,
                    (None, Some(_)) => std::cmp::Ordering::Greater,
                    (None, None) => by_gain(a, b),
                }
            });
        }
        None => entries.sort_by(by_gain),
    }

    let (g_min, g_max) = entries
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| (lo.min(e.gain), hi.max(e.gain)));
    let span = g_max - g_min;
    let step = 360.0 / entries.len() as f64;
    let dots = entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let radius_fraction = if span > 0.0 {
                (opts.r_min + (opts.r_max - opts.r_min) * (e.gain - g_min) / span).min(opts.r_max)
            } else {
                opts.r_min
            };
            Dot {
                label: e.category.clone(),
                angle_degrees: 90.0 - i as f64 * step,
                radius_fraction,
                gain: e.gain,
            }
        })
        .collect();
    Ok(HelioLayout { center_label: result.reference.clone(), dots, r_min: opts.r_min, r_max: opts.r_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmark::RankEntry;
    use crate::corpus::Indicator;
    use crate::histogram::{BinSpec, Scale};

    fn result(gains: &[(&str, f64)]) -> BenchmarkResult {
        BenchmarkResult {
            reference: "Ref".into(),
            indicator: Indicator::ImpactFactor,
            spec: BinSpec::new(0.0, 1.0, 2, Scale::Linear).unwrap(),
            alpha: 0.5,
            ranking: gains
                .iter()
                .enumerate()
                .map(|(i, (n, g))| RankEntry { rank: i + 1, category: n.to_string(), gain: *g })
                .collect(),
            excluded: vec![],
        }
    }

    #[test]
    fn four_dots_quarter_turns() {
        let r = result(&[("A", 0.1), ("B", 0.2), ("C", 0.3), ("D", 0.4)]);
        let l = layout_map(&r, None, LayoutOptions::default()).unwrap();
        let angles: Vec<f64> = l.dots.iter().map(|d| d.angle_degrees).collect();
        assert_eq!(angles, [90.0, 0.0, -90.0, -180.0]);
        assert_eq!(l.center_label, "Ref");
    }

    #[test]
    fn equal_gains_collapse_to_r_min() {
        let r = result(&[("A", 0.1), ("B", 0.1), ("C", 0.1)]);
        let l = layout_map(&r, None, LayoutOptions::default()).unwrap();
        assert!(l.dots.iter().all(|d| d.radius_fraction == DEFAULT_R_MIN));
    }

    #[test]
    fn affine_radii() {
        let r = result(&[("A", 0.0), ("B", 0.5), ("C", 1.0)]);
        let l = layout_map(&r, None, LayoutOptions::default()).unwrap();
        let radii: Vec<f64> = l.dots.iter().map(|d| d.radius_fraction).collect();
        assert_eq!(radii[0], 0.15);
        assert!((radii[1] - 0.575).abs() < 1e-15);
        assert_eq!(radii[2], 1.0);
    }

    #[test]
    fn prestige_order_then_unranked_by_gain() {
        let r = result(&[("A", 0.1), ("B", 0.2), ("C", 0.3), ("D", 0.4)]);
        let order = PrestigeOrder::parse("# best first\nC\n\nA\nUnrelated\n").unwrap();
        let l = layout_map(&r, Some(&order), LayoutOptions::default()).unwrap();
        let labels: Vec<&str> = l.dots.iter().map(|d| d.label.as_str()).collect();
        assert_eq!(labels, ["C", "A", "B", "D"]);
        assert_eq!(l.dots[0].angle_degrees, 90.0);
    }

    #[test]
    fn empty_ranking_rejected() {
        assert!(matches!(layout_map(&result(&[]), None, LayoutOptions::default()), Err(Error::InvalidInput(_))));
        let bad = LayoutOptions { r_min: 0.9, r_max: 0.5 };
        assert!(layout_map(&result(&[("A", 0.0)]), None, bad).is_err());
    }

    #[test]
    fn prestige_duplicates_rejected() {
        let err = PrestigeOrder::parse("A\nB\nA\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        assert!(PrestigeOrder::new(vec!["A".into(), "A".into()]).is_err());
    }
}
