//! Certificate checking for the decision form, with an instrumented step
//! counter so the linear cost of verification can be measured.

use std::fmt;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digest::Digest;
use crate::instance::{generate_random_instance, Instance, InstanceError};
use crate::route::RouteEncoder;

/// A candidate solution: a visiting order with the cost of each edge
/// written in, `claimed_costs[i]` being the cost of
/// `(order[i], order[(i + 1) % V])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub order: Vec<usize>,
    pub claimed_costs: Vec<u64>,
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed certificate file: {0}")]
    Parse(String),
    #[error("certificate names unknown vertex {0:?}")]
    UnknownLabel(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateFile {
    order: Vec<String>,
    costs: Vec<u64>,
}

impl Certificate {
    /// The honest certificate for `order`, with the instance's own costs.
    pub fn for_route(instance: &Instance, order: &[usize]) -> Self {
        let n = order.len();
        let claimed_costs = (0..n).map(|i| instance.cost(order[i], order[(i + 1) % n])).collect();
        Certificate { order: order.to_vec(), claimed_costs }
    }

    pub fn from_json(instance: &Instance, text: &str) -> Result<Self, CertificateError> {
        let file: CertificateFile = serde_json::from_str(text).map_err(|e| CertificateError::Parse(e.to_string()))?;
        let order = file
            .order
            .iter()
            .map(|l| instance.index_of(l).ok_or_else(|| CertificateError::UnknownLabel(l.clone())))
            .collect::<Result<_, _>>()?;
        Ok(Certificate { order, claimed_costs: file.costs })
    }

    /// Panics if the order names a vertex the instance does not have.
    pub fn to_json(&self, instance: &Instance) -> String {
        let file = CertificateFile {
            order: self.order.iter().map(|&i| instance.label(i).to_string()).collect(),
            costs: self.claimed_costs.clone(),
        };
        serde_json::to_string_pretty(&file).expect("certificate serializes")
    }
}

pub fn load_certificate(instance: &Instance, path: impl AsRef<Path>) -> Result<Certificate, CertificateError> {
    let path = path.as_ref();
    let text =
        fs::read_to_string(path).map_err(|source| CertificateError::Io { path: path.display().to_string(), source })?;
    Certificate::from_json(instance, &text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rejection {
    DuplicateVertex,
    MissingVertex,
    WrongCost,
    DigestAboveM,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rejection::DuplicateVertex => "duplicate-vertex",
            Rejection::MissingVertex => "missing-vertex",
            Rejection::WrongCost => "wrong-cost",
            Rejection::DigestAboveM => "digest-above-m",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub accepted: bool,
    pub failure_reason: Option<Rejection>,
    /// Present once the format and cost checks have passed.
    pub digest: Option<Digest>,
    /// One step per vertex touched, per cost compared, per compression-function
    /// call, and per digest byte compared.
    pub step_count: u64,
}

impl VerifyReport {
    fn reject(reason: Rejection, digest: Option<Digest>, step_count: u64) -> Self {
        VerifyReport { accepted: false, failure_reason: Some(reason), digest, step_count: step_count.max(1) }
    }
}

/// Accepts iff the order is a permutation of all vertices, every claimed cost
/// matches its edge (closing edge included), and the hash of the re-derived
/// route string is `<= m`.
pub fn verify(instance: &Instance, cert: &Certificate) -> VerifyReport {
    let v = instance.v();
    let mut steps = 0u64;

    // Format: each vertex exactly once.
    let mut seen = vec![false; v];
    for &x in &cert.order {
        steps += 1;
        if x >= v {
            return VerifyReport::reject(Rejection::MissingVertex, None, steps);
        }
        if seen[x] {
            return VerifyReport::reject(Rejection::DuplicateVertex, None, steps);
        }
        seen[x] = true;
    }
    if cert.order.len() != v {
        return VerifyReport::reject(Rejection::MissingVertex, None, steps);
    }

    // Costs, in position.
    if cert.claimed_costs.len() != v {
        return VerifyReport::reject(Rejection::WrongCost, None, steps + 1);
    }
    for i in 0..v {
        steps += 1;
        if cert.claimed_costs[i] != instance.cost(cert.order[i], cert.order[(i + 1) % v]) {
            return VerifyReport::reject(Rejection::WrongCost, None, steps);
        }
    }

    // Hash the route string rebuilt from the structured certificate.
    let h = instance.hash_function();
    let bytes = RouteEncoder::new(instance).encode(&cert.order);
    steps += h.compression_calls(bytes.len()) as u64;
    let digest = h.digest(&bytes);

    // Lexicographic check against m, byte by byte.
    let m = instance.threshold();
    let mut within = true;
    for (d, t) in digest.as_bytes().iter().zip(m.as_bytes()) {
        steps += 1;
        if d != t {
            within = d < t;
            break;
        }
    }

    if within {
        VerifyReport { accepted: true, failure_reason: None, digest: Some(digest), step_count: steps }
    } else {
        VerifyReport::reject(Rejection::DigestAboveM, Some(digest), steps)
    }
}

/// Certificates verified per vertex count by [`count_verify_steps`].
pub const STEP_TRIALS: usize = 8;

/// For each `v`, verifies honest certificates for random orders on random
/// instances (weights in 1..=99) and reports the mean step count.
pub fn count_verify_steps(v_values: &[usize], seed: u64) -> Result<Vec<(usize, f64)>, InstanceError> {
    v_values
        .iter()
        .map(|&v| {
            let mut total = 0u64;
            for trial in 0..STEP_TRIALS as u64 {
                let inst_seed = seed ^ (v as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ trial;
                let instance = generate_random_instance(v, 1..=99, inst_seed, false)?;
                let mut order: Vec<usize> = (0..v).collect();
                order.shuffle(&mut ChaCha8Rng::seed_from_u64(inst_seed.rotate_left(17)));
                let report = verify(&instance, &Certificate::for_route(&instance, &order));
                debug_assert!(report.accepted);
                total += report.step_count;
            }
            Ok((v, total as f64 / STEP_TRIALS as f64))
        })
        .collect()
}
