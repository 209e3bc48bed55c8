use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LabError;
use crate::hash;
use crate::stats::Z_99;

#[derive(Debug, Clone, PartialEq)]
pub struct AvalancheReport {
    pub hash_id: String,
    pub trials: usize,
    pub input_len: usize,
    pub mean_flip_rate: f64,
    /// Flip frequency of each output bit, most significant bit of byte 0 first.
    pub per_output_bit_rates: Vec<f64>,
    /// 99% normal-approximation half-width of `mean_flip_rate`.
    pub confidence_halfwidth: f64,
}

/// Strict avalanche test: hash a random input and the same input with one
/// uniformly chosen bit flipped, and tally which output bits differ.
pub fn sac_test(hash_id: &str, trials: usize, input_len: usize, seed: u64) -> Result<AvalancheReport, LabError> {
    if trials < 1000 {
        return Err(LabError::Precondition(format!("sac_test needs at least 1000 trials, got {trials}")));
    }
    if input_len == 0 {
        return Err(LabError::Precondition("sac_test needs a non-empty input".into()));
    }
    let h = hash::lookup(hash_id)?;
    let out_bits = 8 * h.digest_len();
    let mut flips = vec![0u64; out_bits];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut input = vec![0u8; input_len];

    for _ in 0..trials {
        rng.fill_bytes(&mut input);
        let before = h.digest(&input);
        let bit = rng.gen_range(0..8 * input_len);
        input[bit / 8] ^= 0x80 >> (bit % 8);
        let after = h.digest(&input);
        for (i, (a, b)) in before.as_bytes().iter().zip(after.as_bytes()).enumerate() {
            let diff = a ^ b;
            for k in 0..8 {
                if diff & (0x80 >> k) != 0 {
                    flips[8 * i + k] += 1;
                }
            }
        }
    }

    let per_output_bit_rates: Vec<f64> = flips.iter().map(|&f| f as f64 / trials as f64).collect();
    let mean_flip_rate = per_output_bit_rates.iter().sum::<f64>() / out_bits as f64;
    let pooled = (trials * out_bits) as f64;
    let confidence_halfwidth = Z_99 * (mean_flip_rate * (1.0 - mean_flip_rate) / pooled).sqrt();

    Ok(AvalancheReport {
        hash_id: hash_id.to_string(),
        trials,
        input_len,
        mean_flip_rate,
        per_output_bit_rates,
        confidence_halfwidth,
    })
}
