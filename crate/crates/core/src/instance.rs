//! Problem instances: a complete weighted graph, the hash that scores its
//! routes, and the lexicographic threshold `m` for the decision form.

use std::fmt;
use std::fs;
use std::ops::RangeInclusive;
use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digest::{is_lower_hex, Digest};
use crate::hash::{self, HashError, HashFunction};

pub const MAX_WEIGHT: u64 = 1_000_000_000;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("an instance needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("label {0:?} is empty or contains a decimal digit")]
    BadLabel(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("costs must be a {expected}x{expected} matrix (row {row} has {found} entries)")]
    CostShape { expected: usize, row: usize, found: usize },
    #[error("costs has {found} rows, expected {expected}")]
    CostRows { expected: usize, found: usize },
    #[error("diagonal cost costs[{0}][{0}] must be 0")]
    NonZeroDiagonal(usize),
    #[error("undirected instance has costs[{i}][{j}] != costs[{j}][{i}]")]
    Asymmetric { i: usize, j: usize },
    #[error("weight range {lo}..={hi} is empty or exceeds {MAX_WEIGHT}")]
    WeightRange { lo: u64, hi: u64 },
    #[error("m must be {expected} lowercase hex characters, got {found:?}")]
    BadThreshold { expected: usize, found: String },
    #[error("TSP bound k must be non-negative, got {0}")]
    NegativeBound(i64),
    #[error(transparent)]
    Hash(#[from] HashError),
    #[error("malformed instance file: {0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// On-disk layout of an instance. Unknown fields are rejected.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    labels: Vec<String>,
    costs: Vec<Vec<u64>>,
    hash: String,
    m: String,
    directed: bool,
}

/// A validated HPTSP instance. Immutable once built.
#[derive(Clone)]
pub struct Instance {
    labels: Vec<String>,
    costs: Vec<Vec<u64>>,
    hash_id: String,
    hash: Arc<dyn HashFunction>,
    m: String,
    directed: bool,
}

impl Instance {
    pub fn new(
        labels: Vec<String>,
        costs: Vec<Vec<u64>>,
        hash_id: &str,
        m: &str,
        directed: bool,
    ) -> Result<Self, InstanceError> {
        let v = labels.len();
        if v < 3 {
            return Err(InstanceError::TooFewVertices(v));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.chars().any(|c| c.is_ascii_digit()) {
                return Err(InstanceError::BadLabel(label.clone()));
            }
            if labels[..i].contains(label) {
                return Err(InstanceError::DuplicateLabel(label.clone()));
            }
        }
        if costs.len() != v {
            return Err(InstanceError::CostRows { expected: v, found: costs.len() });
        }
        for (i, row) in costs.iter().enumerate() {
            if row.len() != v {
                return Err(InstanceError::CostShape { expected: v, row: i, found: row.len() });
            }
            if row[i] != 0 {
                return Err(InstanceError::NonZeroDiagonal(i));
            }
        }
        if !directed {
            for i in 0..v {
                for j in i + 1..v {
                    if costs[i][j] != costs[j][i] {
                        return Err(InstanceError::Asymmetric { i, j });
                    }
                }
            }
        }
        let hash = hash::lookup(hash_id)?;
        check_threshold(m, hash.digest_len())?;

        Ok(Instance { labels, costs, hash_id: hash_id.to_string(), hash, m: m.to_string(), directed })
    }

    /// Number of vertices.
    pub fn v(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn cost(&self, from: usize, to: usize) -> u64 {
        self.costs[from][to]
    }

    pub fn costs(&self) -> &[Vec<u64>] {
        &self.costs
    }

    pub fn hash_id(&self) -> &str {
        &self.hash_id
    }

    pub fn hash_function(&self) -> &dyn HashFunction {
        self.hash.as_ref()
    }

    /// The threshold `m` as hex.
    pub fn m(&self) -> &str {
        &self.m
    }

    /// The threshold `m` as a digest.
    pub fn threshold(&self) -> Digest {
        Digest::from_hex(&self.m).expect("m validated at construction")
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn with_threshold(mut self, m: &str) -> Result<Self, InstanceError> {
        check_threshold(m, self.hash.digest_len())?;
        self.m = m.to_string();
        Ok(self)
    }

    /// Switches the hash backend and resets `m` to the trivially satisfiable default.
    pub fn with_hash(mut self, hash_id: &str) -> Result<Self, InstanceError> {
        self.hash = hash::lookup(hash_id)?;
        self.hash_id = hash_id.to_string();
        self.m = default_threshold(self.hash.digest_len());
        Ok(self)
    }

    /// Human-readable name of a visiting order: labels concatenated when all
    /// labels are one character (`DCAB`), dash-joined otherwise.
    pub fn route_name(&self, order: &[usize]) -> String {
        let sep = if self.labels.iter().all(|l| l.chars().count() == 1) { "" } else { "-" };
        order.iter().map(|&i| self.labels[i].as_str()).collect::<Vec<_>>().join(sep)
    }

    /// Sum of the `V` edge costs of the closed route, including the edge back
    /// to the start.
    pub fn tour_cost(&self, order: &[usize]) -> u64 {
        let n = order.len();
        (0..n).map(|i| self.costs[order[i]][order[(i + 1) % n]]).sum()
    }

    fn to_file(&self) -> InstanceFile {
        InstanceFile {
            labels: self.labels.clone(),
            costs: self.costs.clone(),
            hash: self.hash_id.clone(),
            m: self.m.clone(),
            directed: self.directed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| InstanceError::Parse(e.to_string()))?;
        Instance::new(file.labels, file.costs, &file.hash, &file.m, file.directed)
    }
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.costs == other.costs
            && self.hash_id == other.hash_id
            && self.m == other.m
            && self.directed == other.directed
    }
}

impl Eq for Instance {}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Instance")
            .field("labels", &self.labels)
            .field("costs", &self.costs)
            .field("hash_id", &self.hash_id)
            .field("m", &self.m)
            .field("directed", &self.directed)
            .finish()
    }
}

fn check_threshold(m: &str, digest_len: usize) -> Result<(), InstanceError> {
    if m.len() != 2 * digest_len || !is_lower_hex(m) {
        return Err(InstanceError::BadThreshold { expected: 2 * digest_len, found: m.to_string() });
    }
    Ok(())
}

fn default_threshold(digest_len: usize) -> String {
    "f".repeat(2 * digest_len)
}

/// A classic TSP decision query: does the graph have a tour of cost `<= k`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TspQuery {
    pub instance: Instance,
    pub k: u64,
}

impl TspQuery {
    pub fn new(instance: Instance, k: i64) -> Result<Self, InstanceError> {
        let k = u64::try_from(k).map_err(|_| InstanceError::NegativeBound(k))?;
        Ok(TspQuery { instance, k })
    }
}

/// The four-city instance behind the worked example: AB=1, BC=2, CD=3, DA=4,
/// AC=5, BD=6, scored with SHA-1, `m` set to the known minimum digest.
pub fn make_example_instance() -> Instance {
    const W: [[u64; 4]; 4] = [[0, 1, 5, 4], [1, 0, 2, 6], [5, 2, 0, 3], [4, 6, 3, 0]];
    Instance::new(
        ["A", "B", "C", "D"].map(String::from).to_vec(),
        W.iter().map(|r| r.to_vec()).collect(),
        "sha1",
        "0274a90142fff8495ee8fc6309bbea1abe6fe9db",
        false,
    )
    .expect("example instance is valid")
}

/// Spreadsheet-style labels: A..Z, AA..AZ, BA.. and so on.
pub fn auto_label(mut i: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'A' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).unwrap()
}

/// Random instance with costs drawn uniformly from `weight_range`, hashed
/// with SHA-1, and `m` at its all-`f` default.
pub fn generate_random_instance(
    v: usize,
    weight_range: RangeInclusive<u64>,
    seed: u64,
    directed: bool,
) -> Result<Instance, InstanceError> {
    if v < 3 {
        return Err(InstanceError::TooFewVertices(v));
    }
    let (lo, hi) = (*weight_range.start(), *weight_range.end());
    if lo > hi || hi > MAX_WEIGHT {
        return Err(InstanceError::WeightRange { lo, hi });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut costs = vec![vec![0u64; v]; v];
    for i in 0..v {
        for j in 0..v {
            if i == j || (!directed && j < i) {
                continue;
            }
            let w = rng.gen_range(lo..=hi);
            costs[i][j] = w;
            if !directed {
                costs[j][i] = w;
            }
        }
    }
    let labels = (0..v).map(auto_label).collect();
    Instance::new(labels, costs, "sha1", &default_threshold(20), directed)
}

pub fn save_instance(instance: &Instance, path: impl AsRef<Path>) -> Result<(), InstanceError> {
    let path = path.as_ref();
    fs::write(path, instance.to_json() + "\n")
        .map_err(|source| InstanceError::Io { path: path.display().to_string(), source })
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance, InstanceError> {
    let path = path.as_ref();
    let text =
        fs::read_to_string(path).map_err(|source| InstanceError::Io { path: path.display().to_string(), source })?;
    Instance::from_json(&text)
}
