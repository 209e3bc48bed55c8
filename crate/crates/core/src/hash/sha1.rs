//! SHA-1 built directly on its Merkle–Damgård structure: a 160-bit chaining
//! value is threaded through a compression function that consumes one
//! 512-bit block at a time, and the final block carries the standard
//! `0x80`, zero fill, 64-bit big-endian bit length padding.

use super::{HashError, HashFunction, MerkleDamgard, StreamingHasher};
use crate::digest::Digest;

pub const DIGEST_LEN: usize = 20;
pub const BLOCK_LEN: usize = 64;

const INITIAL_STATE: [u32; 5] = [0x6745_2301, 0xefcd_ab89, 0x98ba_dcfe, 0x1032_5476, 0xc3d2_e1f0];

/// Applies the SHA-1 compression function to one block.
pub fn compress(state: &mut [u32; 5], block: &[u8; BLOCK_LEN]) {
    let mut w = [0u32; 80];
    for (i, word) in block.chunks_exact(4).enumerate() {
        w[i] = u32::from_be_bytes([word[0], word[1], word[2], word[3]]);
    }
    for i in 16..80 {
        w[i] = (w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16]).rotate_left(1);
    }

    let [mut a, mut b, mut c, mut d, mut e] = *state;
    for (i, &wi) in w.iter().enumerate() {
        let (f, k) = match i {
            0..=19 => ((b & c) | (!b & d), 0x5a82_7999),
            20..=39 => (b ^ c ^ d, 0x6ed9_eba1),
            40..=59 => ((b & c) | (b & d) | (c & d), 0x8f1b_bcdc),
            _ => (b ^ c ^ d, 0xca62_c1d6),
        };
        let temp = a.rotate_left(5).wrapping_add(f).wrapping_add(e).wrapping_add(k).wrapping_add(wi);
        e = d;
        d = c;
        c = b.rotate_left(30);
        b = a;
        a = temp;
    }

    state[0] = state[0].wrapping_add(a);
    state[1] = state[1].wrapping_add(b);
    state[2] = state[2].wrapping_add(c);
    state[3] = state[3].wrapping_add(d);
    state[4] = state[4].wrapping_add(e);
}

/// Padding appended to a message of `message_len` bytes: `0x80`, zeros up to
/// 56 mod 64, then the message length in bits as a big-endian `u64`.
pub fn padding(message_len: u64) -> Vec<u8> {
    let zeros = (BLOCK_LEN as u64 + 55 - message_len % BLOCK_LEN as u64) % BLOCK_LEN as u64;
    let mut pad = Vec::with_capacity(1 + zeros as usize + 8);
    pad.push(0x80);
    pad.resize(1 + zeros as usize, 0);
    pad.extend_from_slice(&message_len.wrapping_mul(8).to_be_bytes());
    pad
}

/// Number of compression-function calls needed to hash `message_len` bytes.
pub fn block_count(message_len: usize) -> usize {
    (message_len + 8) / BLOCK_LEN + 1
}

/// Incremental SHA-1: chaining value, partial block, and running byte count.
#[derive(Clone)]
pub struct Sha1Context {
    state: [u32; 5],
    buffer: [u8; BLOCK_LEN],
    buffered: usize,
    length: u64,
}

impl Default for Sha1Context {
    fn default() -> Self {
        Self::new()
    }
}

impl Sha1Context {
    pub fn new() -> Self {
        Sha1Context { state: INITIAL_STATE, buffer: [0; BLOCK_LEN], buffered: 0, length: 0 }
    }

    /// Rebuilds a context whose chaining value is `digest`, as if `absorbed`
    /// bytes (a whole number of blocks, padding included) had been consumed.
    pub fn resume(digest: &[u8; DIGEST_LEN], absorbed: u64) -> Self {
        debug_assert_eq!(absorbed % BLOCK_LEN as u64, 0);
        let mut state = [0u32; 5];
        for (s, word) in state.iter_mut().zip(digest.chunks_exact(4)) {
            *s = u32::from_be_bytes([word[0], word[1], word[2], word[3]]);
        }
        Sha1Context { state, buffer: [0; BLOCK_LEN], buffered: 0, length: absorbed }
    }

    /// Message length absorbed so far, in bits.
    pub fn bit_length(&self) -> u64 {
        self.length.wrapping_mul(8)
    }

    pub fn update(&mut self, mut data: &[u8]) {
        self.length = self.length.wrapping_add(data.len() as u64);

        if self.buffered > 0 {
            let take = (BLOCK_LEN - self.buffered).min(data.len());
            self.buffer[self.buffered..self.buffered + take].copy_from_slice(&data[..take]);
            self.buffered += take;
            data = &data[take..];
            if self.buffered < BLOCK_LEN {
                return;
            }
            let block = self.buffer;
            compress(&mut self.state, &block);
            self.buffered = 0;
        }

        let mut blocks = data.chunks_exact(BLOCK_LEN);
        for block in &mut blocks {
            compress(&mut self.state, block.try_into().unwrap());
        }
        let rest = blocks.remainder();
        self.buffer[..rest.len()].copy_from_slice(rest);
        self.buffered = rest.len();
    }

    pub fn finalize(mut self) -> [u8; DIGEST_LEN] {
        let bits = self.bit_length();
        let mut block = [0u8; BLOCK_LEN];
        block[..self.buffered].copy_from_slice(&self.buffer[..self.buffered]);
        block[self.buffered] = 0x80;
        if self.buffered >= 56 {
            compress(&mut self.state, &block);
            block = [0u8; BLOCK_LEN];
        }
        block[56..].copy_from_slice(&bits.to_be_bytes());
        compress(&mut self.state, &block);

        let mut out = [0u8; DIGEST_LEN];
        for (chunk, word) in out.chunks_exact_mut(4).zip(self.state) {
            chunk.copy_from_slice(&word.to_be_bytes());
        }
        out
    }
}

/// One-shot SHA-1.
pub fn sha1(data: &[u8]) -> [u8; DIGEST_LEN] {
    let mut ctx = Sha1Context::new();
    ctx.update(data);
    ctx.finalize()
}

/// The `"sha1"` backend.
#[derive(Debug, Default, Clone, Copy)]
pub struct Sha1;

impl StreamingHasher for Sha1Context {
    fn update(&mut self, data: &[u8]) {
        Sha1Context::update(self, data);
    }

    fn finalize(self: Box<Self>) -> Digest {
        Digest::from_bytes(&Sha1Context::finalize(*self))
    }
}

impl HashFunction for Sha1 {
    fn id(&self) -> &str {
        "sha1"
    }

    fn digest_len(&self) -> usize {
        DIGEST_LEN
    }

    fn block_len(&self) -> usize {
        BLOCK_LEN
    }

    fn hasher(&self) -> Box<dyn StreamingHasher> {
        Box::new(Sha1Context::new())
    }

    fn digest(&self, message: &[u8]) -> Digest {
        Digest::from_bytes(&sha1(message))
    }

    fn compression_calls(&self, message_len: usize) -> usize {
        block_count(message_len)
    }

    fn as_merkle_damgard(&self) -> Option<&dyn MerkleDamgard> {
        Some(self)
    }
}

impl MerkleDamgard for Sha1 {
    fn glue_padding(&self, message_len: u64) -> Vec<u8> {
        padding(message_len)
    }

    fn resume(&self, digest: &Digest, prefix_len: u64) -> Result<Box<dyn StreamingHasher>, HashError> {
        let bytes: &[u8; DIGEST_LEN] = digest.as_bytes().try_into().map_err(|_| HashError::DigestLength {
            id: "sha1".into(),
            expected: DIGEST_LEN,
            actual: digest.len(),
        })?;
        let absorbed = prefix_len + padding(prefix_len).len() as u64;
        Ok(Box::new(Sha1Context::resume(bytes, absorbed)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hex(bytes: &[u8]) -> String {
        bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    // Standard test vectors; cross-checked against an independent implementation
    // in the integration tests.
    #[test]
    fn standard_vectors() {
        assert_eq!(hex(&sha1(b"")), "da39a3ee5e6b4b0d3255bfef95601890afd80709");
        assert_eq!(hex(&sha1(b"abc")), "a9993e364706816aba3e25717850c26c9cd0d89d");
        assert_eq!(
            hex(&sha1(b"abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq")),
            "84983e441c3bd26ebaae4aa1f95129e5e54670f1"
        );
    }

    #[test]
    fn one_million_a() {
        let mut ctx = Sha1Context::new();
        let chunk = [b'a'; 1000];
        for _ in 0..1000 {
            ctx.update(&chunk);
        }
        assert_eq!(hex(&ctx.finalize()), "34aa973cd4c4daa4f61eeb2bdbad27316534016f");
    }

    #[test]
    fn padding_lengths_align_to_blocks() {
        for len in [0u64, 1, 55, 56, 63, 64, 65, 119, 120] {
            let total = len + padding(len).len() as u64;
            assert_eq!(total % 64, 0, "len {len}");
            assert_eq!(total as usize / 64, block_count(len as usize), "len {len}");
        }
        assert_eq!(padding(55).len(), 9);
        assert_eq!(padding(56).len(), 72);
    }

    #[test]
    fn table_rows() {
        assert_eq!(hex(&sha1(b"A1B2C3D4")), "897ca6fcdeed5883fd7bd85eae55406ac81d9d74");
        assert_eq!(hex(&sha1(b"D3C5A1B6")), "0274a90142fff8495ee8fc6309bbea1abe6fe9db");
    }
}
