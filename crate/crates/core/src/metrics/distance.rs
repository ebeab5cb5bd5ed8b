//! Normalized collaboration strength and its profile over distance bins.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::MetricsError;
use crate::geo::{distance_bin, great_circle_distance, DistanceBin};
use crate::netbuild::{PaperIndex, WeightedGraph};
use crate::resolve::CategoryCode;

/// `C_ij / (w_i * w_j)` where `C_ij` counts papers shared by `i` and `j` and
/// `w` counts each institution's papers. For `i == j`, `C_ii` counts papers
/// with at least two authors at `i`.
pub fn collaboration_strength(i: &str, j: &str, index: &PaperIndex) -> Result<f64, MetricsError> {
    let wi = index.paper_count(i);
    if wi == 0 {
        return Err(MetricsError::ZeroProductivity(i.to_string()));
    }
    let wj = index.paper_count(j);
    if wj == 0 {
        return Err(MetricsError::ZeroProductivity(j.to_string()));
    }
    let common = index.common_papers(i, j);
    Ok(common as f64 / (wi as f64 * wj as f64))
}

/// Which institution pairs enter a distance profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CategoryFilter {
    /// Pairs with at least one endpoint in the category (`Y-X`).
    AnyPartner(CategoryCode),
    /// Pairs joining exactly these two categories, in either order.
    Between(CategoryCode, CategoryCode),
}

impl CategoryFilter {
    pub fn keeps(&self, a: CategoryCode, b: CategoryCode) -> bool {
        match *self {
            Self::AnyPartner(y) => a == y || b == y,
            Self::Between(y, x) => (a == y && b == x) || (a == x && b == y),
        }
    }
}

impl FromStr for CategoryFilter {
    type Err = MetricsError;

    /// `Y`, `Y,ALL`, `Y,X` or `Y-X`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MetricsError::InvalidFilter(s.to_string());
        let mut parts = s.split([',', '-']).map(str::trim);
        let y: CategoryCode = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let filter = match parts.next() {
            None => Self::AnyPartner(y),
            Some(x) if x.eq_ignore_ascii_case("all") || x.eq_ignore_ascii_case("x") => {
                Self::AnyPartner(y)
            }
            Some(x) => Self::Between(y, x.parse().map_err(|_| bad())?),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(filter)
    }
}

impl fmt::Display for CategoryFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AnyPartner(y) => write!(f, "{y}-ALL"),
            Self::Between(y, x) => write!(f, "{y}-{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinStats {
    pub bin: DistanceBin,
    pub pair_count: usize,
    /// Summed collaboration edge weight over the bin's pairs.
    pub event_weight: u64,
    pub mean: Option<f64>,
    pub median: Option<f64>,
    pub q1: Option<f64>,
    pub q3: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceProfile {
    /// Every bin from 1 up to the farthest occupied one.
    pub bins: Vec<BinStats>,
    /// Pairs dropped because an endpoint has no coordinates.
    pub excluded_unlocated: usize,
    /// Collaborating pairs that passed the category filter.
    pub total_pairs: usize,
}

/// Linear-interpolation quantile of ascending `sorted`.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

/// Bins every collaborating pair (graph edge, self-loops included at 0 km)
/// by distance and summarizes `N_ij` per bin.
pub fn distance_profile(
    collab: &WeightedGraph,
    index: &PaperIndex,
    filter: Option<CategoryFilter>,
) -> Result<DistanceProfile, MetricsError> {
    let mut per_bin: BTreeMap<DistanceBin, (Vec<f64>, u64)> = BTreeMap::new();
    let mut excluded_unlocated = 0;
    let mut total_pairs = 0;
    for (u, v, weight) in collab.edges() {
        let (a, b) = (
            collab.node(u).expect("endpoint exists"),
            collab.node(v).expect("endpoint exists"),
        );
        if filter.is_some_and(|f| !f.keeps(a.category, b.category)) {
            continue;
        }
        total_pairs += 1;
        let (Some(p), Some(q)) = (a.location, b.location) else {
            excluded_unlocated += 1;
            continue;
        };
        let km = if u == v {
            0.0
        } else {
            great_circle_distance(p, q)
        };
        let bin = distance_bin(km)?;
        let strength = collaboration_strength(u, v, index)?;
        let entry = per_bin.entry(bin).or_default();
        entry.0.push(strength);
        entry.1 += weight;
    }
    let Some(&last) = per_bin.keys().next_back() else {
        return Err(MetricsError::NoLocatedPairs);
    };
    let bins = (1..=last.index())
        .map(|k| {
            let bin = DistanceBin::new(k).expect("k >= 1");
            match per_bin.get_mut(&bin) {
                None => BinStats {
                    bin,
                    pair_count: 0,
                    event_weight: 0,
                    mean: None,
                    median: None,
                    q1: None,
                    q3: None,
                },
                Some((values, event_weight)) => {
                    values.sort_by(f64::total_cmp);
                    BinStats {
                        bin,
                        pair_count: values.len(),
                        event_weight: *event_weight,
                        mean: Some(values.iter().sum::<f64>() / values.len() as f64),
                        median: Some(quantile(values, 0.5)),
                        q1: Some(quantile(values, 0.25)),
                        q3: Some(quantile(values, 0.75)),
                    }
                }
            }
        })
        .collect();
    Ok(DistanceProfile {
        bins,
        excluded_unlocated,
        total_pairs,
    })
}
