use super::{check_enumerable, LabError};
use crate::instance::Instance;
use crate::route::{enumerate_routes, RouteEncoder};
use crate::stats::chi_square_uniform;

/// Route counts per leading-bit prefix of the digest.
#[derive(Debug, Clone, PartialEq)]
pub struct Census {
    pub prefix_bits: u32,
    /// `counts[b]` routes have a digest starting with the bits of `b`.
    pub counts: Vec<u64>,
    pub total: u64,
    pub mean_occupancy: f64,
    pub chi_square: f64,
    /// Upper-tail p-value of `chi_square` against a uniform spread.
    pub p_value: f64,
}

impl Census {
    pub fn empty_buckets(&self) -> usize {
        self.counts.iter().filter(|&&c| c == 0).count()
    }
}

pub fn bucket_census(instance: &Instance, prefix_bits: u32) -> Result<Census, LabError> {
    check_enumerable(instance.v())?;
    if !(1..=16).contains(&prefix_bits) {
        return Err(LabError::Precondition(format!("prefix_bits must be in 1..=16, got {prefix_bits}")));
    }
    let h = instance.hash_function();
    let encoder = RouteEncoder::new(instance);
    let mut counts = vec![0u64; 1 << prefix_bits];
    let mut buf = Vec::new();
    enumerate_routes(instance.v())?.for_each_order(|_, order| {
        encoder.encode_into(order, &mut buf);
        let d = h.digest(&buf);
        let b = d.as_bytes();
        let lead = u16::from_be_bytes([b.first().copied().unwrap_or(0), b.get(1).copied().unwrap_or(0)]);
        counts[(lead >> (16 - prefix_bits)) as usize] += 1;
    });
    let total: u64 = counts.iter().sum();
    let (chi_square, p_value) = chi_square_uniform(&counts);
    Ok(Census { prefix_bits, mean_occupancy: total as f64 / counts.len() as f64, counts, total, chi_square, p_value })
}
