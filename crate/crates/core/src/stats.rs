//! Small statistics helpers for the experiments.

use rand::seq::SliceRandom;
use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Two-sided standard normal quantile at 99%.
pub const Z_99: f64 = 2.575_829_303_548_901;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Ordinary least squares `y = slope * x + intercept`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> LinearFit {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs.iter().zip(ys).map(|(x, y)| (y - (slope * x + intercept)).powi(2)).sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    LinearFit { slope, intercept, r_squared }
}

/// 1-based ranks with ties given their average rank.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

fn centered(xs: &[f64]) -> Vec<f64> {
    let m = xs.iter().sum::<f64>() / xs.len() as f64;
    xs.iter().map(|x| x - m).collect()
}

fn norm(xs: &[f64]) -> f64 {
    xs.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let (cx, cy) = (centered(xs), centered(ys));
    let denom = norm(&cx) * norm(&cy);
    if denom == 0.0 {
        return 0.0;
    }
    cx.iter().zip(&cy).map(|(a, b)| a * b).sum::<f64>() / denom
}

/// Pearson correlation of the two rank vectors, and a two-sided
/// permutation-test p-value from `shuffles` random relabelings of `x_ranks`.
/// The p-value uses the `(1 + hits) / (1 + shuffles)` estimator, so it is
/// never below `1 / (1 + shuffles)`.
pub fn rank_correlation_test<R: Rng>(x_ranks: &[f64], y_ranks: &[f64], shuffles: usize, rng: &mut R) -> (f64, f64) {
    let mut cx = centered(x_ranks);
    let cy = centered(y_ranks);
    let denom = norm(&cx) * norm(&cy);
    if denom == 0.0 {
        return (0.0, 1.0);
    }
    let dot = |a: &[f64]| a.iter().zip(&cy).map(|(p, q)| p * q).sum::<f64>() / denom;
    let observed = dot(&cx);
    let mut hits = 0usize;
    for _ in 0..shuffles {
        cx.shuffle(rng);
        if dot(&cx).abs() >= observed.abs() - 1e-12 {
            hits += 1;
        }
    }
    (observed, (1 + hits) as f64 / (1 + shuffles) as f64)
}

/// Pearson chi-square statistic of `counts` against the uniform
/// distribution and its upper-tail p-value.
pub fn chi_square_uniform(counts: &[u64]) -> (f64, f64) {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let df = (counts.len() - 1) as f64;
    let p = ChiSquared::new(df).map(|d| d.sf(stat)).unwrap_or(f64::NAN);
    (stat, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [3.0, 5.0, 7.0, 9.0];
        let fit = linear_fit(&xs, &ys);
        assert!((fit.slope - 2.0).abs() < 1e-12);
        assert!((fit.intercept - 1.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ties_share_rank() {
        assert_eq!(midranks(&[10.0, 20.0, 10.0, 5.0]), vec![2.5, 4.0, 2.5, 1.0]);
    }

    #[test]
    fn perfect_rank_correlation_is_significant() {
        let x: Vec<f64> = (1..=200).map(f64::from).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (r, p) = rank_correlation_test(&x, &x, 999, &mut rng);
        assert!((r - 1.0).abs() < 1e-12);
        assert!((p - 0.001).abs() < 1e-12);
    }

    #[test]
    fn chi_square_of_uniform_counts() {
        let (stat, p) = chi_square_uniform(&[10, 10, 10, 10]);
        assert_eq!(stat, 0.0);
        assert!((p - 1.0).abs() < 1e-12);
        // df = 1, stat = 24 -> p ~ 9.6e-7
        let (stat, p) = chi_square_uniform(&[24, 0]);
        assert_eq!(stat, 24.0);
        assert!(p < 1e-6);
    }
}
