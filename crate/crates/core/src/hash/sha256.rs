use sha2::Digest as _;

use super::{HashFunction, StreamingHasher};
use crate::digest::Digest;

/// The `"sha256"` backend, a 256-bit alternative to SHA-1.
#[derive(Debug, Default, Clone, Copy)]
pub struct Sha256;

struct Context(sha2::Sha256);

impl StreamingHasher for Context {
    fn update(&mut self, data: &[u8]) {
        self.0.update(data);
    }

    fn finalize(self: Box<Self>) -> Digest {
        Digest::from_bytes(&self.0.finalize())
    }
}

impl HashFunction for Sha256 {
    fn id(&self) -> &str {
        "sha256"
    }

    fn digest_len(&self) -> usize {
        32
    }

    fn block_len(&self) -> usize {
        64
    }

    fn hasher(&self) -> Box<dyn StreamingHasher> {
        Box::new(Context(sha2::Sha256::new()))
    }

    fn digest(&self, message: &[u8]) -> Digest {
        Digest::from_bytes(&sha2::Sha256::digest(message))
    }

    fn compression_calls(&self, message_len: usize) -> usize {
        (message_len + 8) / 64 + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abc_vector() {
        assert_eq!(Sha256.digest(b"abc").to_hex(), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
