//! Experiments probing the hashed-route construction: avalanche behaviour of
//! the hash, whether partial route information predicts the final digest
//! order, length extension on route strings, and digest-prefix occupancy.

mod avalanche;
mod census;
mod extension;
mod leak;

use thiserror::Error;

use crate::hash::HashError;
use crate::route::CodecError;

pub use self::avalanche::{sac_test, AvalancheReport};
pub use self::census::{bucket_census, Census};
pub use self::extension::{length_extension_at, length_extension_demo, ExtensionReport, ExtensionRow};
pub use self::leak::{leak_test, leak_test_against, LeakFeature, LeakReport, LeakTarget, DEFAULT_SHUFFLES};

/// Experiments that enumerate every route cap out here (9! = 362880).
pub const MAX_EXPERIMENT_V: usize = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported feature {0:?} (expected prefix-digest-first-byte, first-edge, or first-edge-cost)")]
    UnsupportedFeature(String),
    #[error(transparent)]
    Hash(#[from] HashError),
    #[error(transparent)]
    Codec(#[from] CodecError),
}

fn check_enumerable(v: usize) -> Result<(), LabError> {
    if v > MAX_EXPERIMENT_V {
        return Err(LabError::Precondition(format!(
            "experiment enumerates all routes and needs V <= {MAX_EXPERIMENT_V}, got {v}"
        )));
    }
    Ok(())
}
