//! Pluggable fixed-output hash functions and a process-wide registry keyed
//! by the ids that instance files name.

pub mod sha1;
mod sha256;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::digest::Digest;

pub use self::sha1::Sha1;
pub use self::sha256::Sha256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HashError {
    #[error("unknown hash function `{0}`")]
    UnknownHash(String),
    #[error("hash function `{0}` is already registered")]
    Duplicate(String),
    #[error("hash function `{id}` does not support {capability}")]
    Unsupported { id: String, capability: &'static str },
    #[error("`{id}` digests are {expected} bytes, got {actual}")]
    DigestLength { id: String, expected: usize, actual: usize },
}

/// Incremental hashing context. Single owner; not shared between threads.
pub trait StreamingHasher {
    fn update(&mut self, data: &[u8]);
    fn finalize(self: Box<Self>) -> Digest;
}

/// A deterministic map from arbitrary byte strings to fixed-length digests.
pub trait HashFunction: Send + Sync {
    fn id(&self) -> &str;
    fn digest_len(&self) -> usize;
    fn block_len(&self) -> usize;
    fn hasher(&self) -> Box<dyn StreamingHasher>;

    fn digest(&self, message: &[u8]) -> Digest {
        let mut h = self.hasher();
        h.update(message);
        h.finalize()
    }

    /// How many times the underlying compression step runs for a message of
    /// this length. Used for the verifier's step accounting.
    fn compression_calls(&self, message_len: usize) -> usize {
        message_len / self.block_len().max(1) + 1
    }

    /// Backends that expose their chaining state for length extension.
    fn as_merkle_damgard(&self) -> Option<&dyn MerkleDamgard> {
        None
    }
}

/// Access to the iterated structure of a Merkle–Damgård hash.
pub trait MerkleDamgard {
    /// Padding the hash appends to a message of `message_len` bytes.
    fn glue_padding(&self, message_len: u64) -> Vec<u8>;

    /// A context that continues from `digest`, treating it as the chaining
    /// value after absorbing a `prefix_len`-byte message plus its padding.
    fn resume(&self, digest: &Digest, prefix_len: u64) -> Result<Box<dyn StreamingHasher>, HashError>;
}

type Registry = RwLock<BTreeMap<String, Arc<dyn HashFunction>>>;

fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut map: BTreeMap<String, Arc<dyn HashFunction>> = BTreeMap::new();
        map.insert("sha1".into(), Arc::new(Sha1));
        map.insert("sha256".into(), Arc::new(Sha256));
        RwLock::new(map)
    })
}

/// Makes `h` resolvable by its id. `sha1` and `sha256` are pre-registered.
pub fn register_hash(h: Arc<dyn HashFunction>) -> Result<(), HashError> {
    let mut map = registry().write().unwrap_or_else(|e| e.into_inner());
    let id = h.id().to_string();
    if map.contains_key(&id) {
        return Err(HashError::Duplicate(id));
    }
    map.insert(id, h);
    Ok(())
}

pub fn lookup(id: &str) -> Result<Arc<dyn HashFunction>, HashError> {
    let map = registry().read().unwrap_or_else(|e| e.into_inner());
    map.get(id).cloned().ok_or_else(|| HashError::UnknownHash(id.to_string()))
}

pub fn registered_ids() -> Vec<String> {
    let map = registry().read().unwrap_or_else(|e| e.into_inner());
    map.keys().cloned().collect()
}

pub fn hash(h: &dyn HashFunction, message: &[u8]) -> Digest {
    h.digest(message)
}

/// Hashes the concatenation of `chunks` without materializing it.
pub fn hash_streaming<I, C>(h: &dyn HashFunction, chunks: I) -> Digest
where
    I: IntoIterator<Item = C>,
    C: AsRef<[u8]>,
{
    let mut ctx = h.hasher();
    for chunk in chunks {
        ctx.update(chunk.as_ref());
    }
    ctx.finalize()
}

/// Computes `hash(a ‖ glue_padding(len_a) ‖ suffix)` from `hash(a)` and the
/// length of `a` alone.
pub fn length_extend(
    h: &dyn HashFunction,
    digest_of_prefix: &Digest,
    prefix_len: u64,
    suffix: &[u8],
) -> Result<Digest, HashError> {
    let md = h
        .as_merkle_damgard()
        .ok_or_else(|| HashError::Unsupported { id: h.id().to_string(), capability: "length extension" })?;
    let mut ctx = md.resume(digest_of_prefix, prefix_len)?;
    ctx.update(suffix);
    Ok(ctx.finalize())
}

/// `glue_padding(len)` for Merkle–Damgård backends.
pub fn glue_padding(h: &dyn HashFunction, message_len: u64) -> Result<Vec<u8>, HashError> {
    h.as_merkle_damgard()
        .map(|md| md.glue_padding(message_len))
        .ok_or_else(|| HashError::Unsupported { id: h.id().to_string(), capability: "length extension" })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_known_and_unknown() {
        assert_eq!(lookup("sha1").unwrap().digest_len(), 20);
        assert_eq!(lookup("sha256").unwrap().digest_len(), 32);
        assert_eq!(lookup("nosuch").err(), Some(HashError::UnknownHash("nosuch".into())));
    }

    #[test]
    fn duplicate_registration_rejected() {
        assert_eq!(register_hash(Arc::new(Sha1)), Err(HashError::Duplicate("sha1".into())));
    }

    #[test]
    fn streaming_matches_one_shot() {
        let h = lookup("sha1").unwrap();
        let whole = hash(h.as_ref(), b"A1B2C3D4");
        assert_eq!(hash_streaming(h.as_ref(), [&b"A1B2"[..], b"C3D4"]), whole);
        assert_eq!(hash_streaming(h.as_ref(), [b"A1B2C3D4"]), whole);
        assert_eq!(whole.to_hex(), "897ca6fcdeed5883fd7bd85eae55406ac81d9d74");
    }

    #[test]
    fn fixed_output_length_across_padding_boundaries() {
        for id in ["sha1", "sha256"] {
            let h = lookup(id).unwrap();
            for len in [0usize, 1, 55, 56, 64, 65, 1_000_000] {
                assert_eq!(hash(h.as_ref(), &vec![0x5a; len]).len(), h.digest_len(), "{id} len {len}");
            }
        }
    }

    #[test]
    fn length_extension_matches_glue_padded_message() {
        let h = Sha1;
        let prefix = b"A1B2";
        let extended = length_extend(&h, &hash(&h, prefix), 4, b"C3D4").unwrap();

        let mut direct = prefix.to_vec();
        direct.extend(glue_padding(&h, 4).unwrap());
        direct.extend_from_slice(b"C3D4");
        assert_eq!(extended, hash(&h, &direct));
        assert_ne!(extended, hash(&h, b"A1B2C3D4"));
    }

    #[test]
    fn length_extension_with_empty_suffix() {
        let h = Sha1;
        let a = b"A1B2C3";
        let mut padded = a.to_vec();
        padded.extend(glue_padding(&h, a.len() as u64).unwrap());
        assert_eq!(length_extend(&h, &hash(&h, a), a.len() as u64, b"").unwrap(), hash(&h, &padded));
    }

    #[test]
    fn length_extension_unsupported_backend() {
        let h = Sha256;
        let d = hash(&h, b"x");
        assert!(matches!(length_extend(&h, &d, 1, b"y"), Err(HashError::Unsupported { .. })));
    }

    #[test]
    fn length_extension_wrong_digest_length() {
        let d = Digest::from_bytes(&[0; 32]);
        assert!(matches!(length_extend(&Sha1, &d, 1, b"y"), Err(HashError::DigestLength { .. })));
    }
}
