//! Exhaustive HPTSP search. The rank space `0..V!` is cut into contiguous
//! ranges, one per worker; each worker streams its range keeping a local
//! minimum and the minima are merged under (digest, rank) order, so the
//! answer does not depend on the worker count.

mod bench;
mod tsp;

use std::sync::atomic::{AtomicBool, Ordering};
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::digest::Digest;
use crate::instance::Instance;
use crate::route::{self, enumerate_range, partition_ranks, rank_to_route, CodecError, Route, RouteEncoder};

pub use self::bench::{scaling_benchmark, scaling_benchmark_with, BenchOptions, BenchRecord};
pub use self::tsp::{brute_force_tsp, solve_tsp_branch_and_bound, TspResult};

/// 13! route hashes take hours on a desktop; 14! takes days.
pub const DEFAULT_VERTEX_LIMIT: usize = 13;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("V = {v} exceeds the search limit of {limit}; raise the limit explicitly to proceed")]
    Capacity { v: usize, limit: usize },
    #[error("at least one worker is required")]
    NoWorkers,
    #[error("benchmark vertex range {lo}..={hi} must lie within 6..=12")]
    BenchRange { lo: usize, hi: usize },
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error("instance generation failed: {0}")]
    Instance(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub workers: usize,
    pub vertex_limit: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { workers: 1, vertex_limit: DEFAULT_VERTEX_LIMIT }
    }
}

impl SearchConfig {
    pub fn with_workers(workers: usize) -> Self {
        SearchConfig { workers, ..Default::default() }
    }

    fn check(&self, instance: &Instance) -> Result<u64, SearchError> {
        if self.workers == 0 {
            return Err(SearchError::NoWorkers);
        }
        let v = instance.v();
        if v > self.vertex_limit.min(route::MAX_ENUMERABLE_V) {
            return Err(SearchError::Capacity { v, limit: self.vertex_limit });
        }
        Ok(route::factorial(v)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub best_route: Route,
    pub best_digest: Digest,
    pub routes_examined: u64,
    pub wall_time: Duration,
    /// Whether `best_digest <= m`.
    pub decision: bool,
}

#[derive(Clone, Copy)]
struct RangeMin {
    digest: Digest,
    rank: u64,
    examined: u64,
}

fn scan_range(instance: &Instance, encoder: &RouteEncoder, start: u64, end: u64) -> Result<RangeMin, CodecError> {
    let h = instance.hash_function();
    let mut buf = Vec::with_capacity(64);
    let mut best: Option<(Digest, u64)> = None;
    let mut examined = 0u64;
    enumerate_range(instance.v(), start, end)?.for_each_order(|rank, order| {
        encoder.encode_into(order, &mut buf);
        let d = h.digest(&buf);
        examined += 1;
        // Strict `<` keeps the smallest rank among equal digests.
        if best.is_none_or(|(b, _)| d < b) {
            best = Some((d, rank));
        }
    });
    let (digest, rank) = best.expect("non-empty range");
    Ok(RangeMin { digest, rank, examined })
}

fn run_partitioned<T, F>(total: u64, workers: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    let ranges = partition_ranks(total, workers);
    if ranges.len() == 1 {
        return vec![work(ranges[0].0, ranges[0].1)];
    }
    thread::scope(|s| {
        let work = &work;
        let handles: Vec<_> = ranges.iter().map(|&(a, b)| s.spawn(move || work(a, b))).collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    })
}

/// Finds the route whose hashed route string is lexicographically smallest,
/// examining all `V!` routes. Ties go to the smallest rank.
pub fn solve_hptsp(instance: &Instance, config: &SearchConfig) -> Result<SolveResult, SearchError> {
    let total = config.check(instance)?;
    let started = Instant::now();
    let encoder = RouteEncoder::new(instance);

    let partials = run_partitioned(total, config.workers, |a, b| scan_range(instance, &encoder, a, b));
    let mut best: Option<RangeMin> = None;
    let mut examined = 0;
    for p in partials {
        let p = p?;
        examined += p.examined;
        if best.is_none_or(|b| (p.digest, p.rank) < (b.digest, b.rank)) {
            best = Some(p);
        }
    }
    let best = best.expect("at least one range");
    let wall_time = started.elapsed();

    Ok(SolveResult {
        best_route: rank_to_route(best.rank, instance.v())?,
        best_digest: best.digest,
        routes_examined: examined,
        wall_time,
        decision: best.digest <= instance.threshold(),
    })
}

/// A route whose digest is `<= m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub route: Route,
    pub digest: Digest,
}

/// Scans for any route with digest `<= m`, stopping all workers at the first
/// hit. Which witness is returned may vary with scheduling; whether one
/// exists does not.
pub fn find_witness(instance: &Instance, config: &SearchConfig) -> Result<Option<Witness>, SearchError> {
    let total = config.check(instance)?;
    let encoder = RouteEncoder::new(instance);
    let m = instance.threshold();
    let h = instance.hash_function();
    let stop = AtomicBool::new(false);

    let found = run_partitioned(total, config.workers, |a, b| -> Result<Option<(u64, Digest)>, CodecError> {
        let mut buf = Vec::with_capacity(64);
        let mut hit = None;
        enumerate_range(instance.v(), a, b)?.visit_until(|rank, order| {
            if stop.load(Ordering::Relaxed) {
                return true;
            }
            encoder.encode_into(order, &mut buf);
            let d = h.digest(&buf);
            if d <= m {
                hit = Some((rank, d));
                stop.store(true, Ordering::Relaxed);
                return true;
            }
            false
        });
        Ok(hit)
    });

    let mut best: Option<(u64, Digest)> = None;
    for f in found {
        if let Some(hit) = f? {
            if best.is_none_or(|b| hit.0 < b.0) {
                best = Some(hit);
            }
        }
    }
    match best {
        Some((rank, digest)) => Ok(Some(Witness { route: rank_to_route(rank, instance.v())?, digest })),
        None => Ok(None),
    }
}

/// Decision form: is there a route whose digest is `<= m`?
pub fn decide_hptsp(instance: &Instance, config: &SearchConfig) -> Result<bool, SearchError> {
    Ok(find_witness(instance, config)?.is_some())
}
