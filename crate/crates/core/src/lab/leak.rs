use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_enumerable, LabError};
use crate::instance::Instance;
use crate::route::{enumerate_routes, RouteEncoder};
use crate::stats::{midranks, rank_correlation_test};

/// Null-distribution size for the permutation test.
pub const DEFAULT_SHUFFLES: usize = 1000;

/// A per-route value computed from part of the route only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeakFeature {
    /// First byte of the hash of the first half of the route string.
    PrefixDigestFirstByte,
    /// Which directed edge the route starts with, as `from * V + to`.
    FirstEdge,
    /// Cost of the first edge.
    FirstEdgeCost,
}

impl LeakFeature {
    pub const ALL: [LeakFeature; 3] =
        [LeakFeature::PrefixDigestFirstByte, LeakFeature::FirstEdge, LeakFeature::FirstEdgeCost];

    pub fn name(self) -> &'static str {
        match self {
            LeakFeature::PrefixDigestFirstByte => "prefix-digest-first-byte",
            LeakFeature::FirstEdge => "first-edge",
            LeakFeature::FirstEdgeCost => "first-edge-cost",
        }
    }
}

impl fmt::Display for LeakFeature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LeakFeature {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        LeakFeature::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| LabError::UnsupportedFeature(s.to_string()))
    }
}

/// What the feature is correlated against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeakTarget {
    /// Position of the route in ascending digest order (ties by route rank).
    Digest,
    /// Classic tour cost, ranked with midranks for ties. The control.
    TourCost,
}

impl fmt::Display for LeakTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LeakTarget::Digest => "digest",
            LeakTarget::TourCost => "tour-cost",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeakReport {
    pub v: usize,
    pub feature_name: String,
    pub target: LeakTarget,
    /// Spearman rank correlation.
    pub correlation: f64,
    /// Two-sided permutation-test p-value under "no association".
    pub p_value_chance: f64,
    pub sample_size: usize,
}

/// Rank correlation between a partial-information feature and the final
/// digest order over all `V!` routes.
pub fn leak_test(instance: &Instance, feature: &str, seed: u64) -> Result<LeakReport, LabError> {
    leak_test_against(instance, feature.parse()?, LeakTarget::Digest, seed, DEFAULT_SHUFFLES)
}

pub fn leak_test_against(
    instance: &Instance,
    feature: LeakFeature,
    target: LeakTarget,
    seed: u64,
    shuffles: usize,
) -> Result<LeakReport, LabError> {
    let v = instance.v();
    check_enumerable(v)?;
    let h = instance.hash_function();
    let encoder = RouteEncoder::new(instance);

    let mut features = Vec::new();
    let mut digests = Vec::new();
    let mut costs = Vec::new();
    let mut buf = Vec::new();
    enumerate_routes(v)?.for_each_order(|_, order| {
        encoder.encode_into(order, &mut buf);
        let f = match feature {
            LeakFeature::PrefixDigestFirstByte => h.digest(&buf[..buf.len() / 2]).as_bytes()[0] as f64,
            LeakFeature::FirstEdge => (order[0] * v + order[1]) as f64,
            LeakFeature::FirstEdgeCost => instance.cost(order[0], order[1]) as f64,
        };
        features.push(f);
        match target {
            LeakTarget::Digest => digests.push(h.digest(&buf)),
            LeakTarget::TourCost => costs.push(instance.tour_cost(order) as f64),
        }
    });

    let n = features.len();
    let target_ranks = match target {
        LeakTarget::Digest => {
            // Routes are enumerated in rank order, so a stable sort breaks
            // digest ties by route rank.
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by(|&a, &b| digests[a].cmp(&digests[b]));
            let mut ranks = vec![0.0; n];
            for (pos, &i) in idx.iter().enumerate() {
                ranks[i] = (pos + 1) as f64;
            }
            ranks
        }
        LeakTarget::TourCost => midranks(&costs),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (correlation, p_value_chance) = rank_correlation_test(&midranks(&features), &target_ranks, shuffles, &mut rng);

    Ok(LeakReport { v, feature_name: feature.name().to_string(), target, correlation, p_value_chance, sample_size: n })
}
