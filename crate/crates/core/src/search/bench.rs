use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use super::{solve_hptsp, SearchConfig, SearchError};
use crate::instance::generate_random_instance;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub v: usize,
    /// Median wall time of one full solve.
    pub wall_time: Duration,
    pub routes_examined: u64,
    pub routes_per_second: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct BenchOptions {
    pub workers: usize,
    /// Each size is solved at least this many times...
    pub min_runs: usize,
    /// ...and until the runs add up to at least this long.
    pub min_total: Duration,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { workers: 1, min_runs: 3, min_total: Duration::from_millis(200) }
    }
}

pub fn scaling_benchmark(v_range: RangeInclusive<usize>, seed: u64) -> Result<Vec<BenchRecord>, SearchError> {
    scaling_benchmark_with(v_range, seed, &BenchOptions::default())
}

/// Times `solve_hptsp` on one random instance per `v`.
pub fn scaling_benchmark_with(
    v_range: RangeInclusive<usize>,
    seed: u64,
    options: &BenchOptions,
) -> Result<Vec<BenchRecord>, SearchError> {
    let (lo, hi) = (*v_range.start(), *v_range.end());
    if lo < 6 || hi > 12 || lo > hi {
        return Err(SearchError::BenchRange { lo, hi });
    }
    let config = SearchConfig::with_workers(options.workers);

    v_range
        .map(|v| {
            let instance = generate_random_instance(v, 1..=9, seed.wrapping_add(v as u64), false)
                .map_err(|e| SearchError::Instance(e.to_string()))?;
            let mut samples = Vec::new();
            let mut routes_examined = 0;
            let started = Instant::now();
            while samples.len() < options.min_runs.max(1) || started.elapsed() < options.min_total {
                let result = solve_hptsp(&instance, &config)?;
                routes_examined = result.routes_examined;
                samples.push(result.wall_time);
            }
            samples.sort();
            let wall_time = samples[samples.len() / 2];
            Ok(BenchRecord {
                v,
                wall_time,
                routes_examined,
                routes_per_second: routes_examined as f64 / wall_time.as_secs_f64().max(1e-9),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(scaling_benchmark(5..=7, 0), Err(SearchError::BenchRange { .. })));
        assert!(matches!(scaling_benchmark(6..=13, 0), Err(SearchError::BenchRange { .. })));
    }

    #[test]
    fn records_grow_with_v() {
        let opts = BenchOptions { workers: 1, min_runs: 3, min_total: Duration::from_millis(20) };
        let records = scaling_benchmark_with(6..=8, 1, &opts).unwrap();
        assert_eq!(records.iter().map(|r| r.routes_examined).collect::<Vec<_>>(), [720, 5040, 40320]);
        assert!(records.windows(2).all(|w| w[0].wall_time < w[1].wall_time));
        assert!(records.iter().all(|r| r.routes_per_second > 0.0));
    }
}
