use std::fmt;

/// Largest digest any registered backend may produce (512 bits).
pub const MAX_DIGEST_LEN: usize = 64;

/// A fixed-length hash output.
///
/// Stored inline so that the search loops can keep running minima without
/// allocating. Ordering is byte-wise lexicographic, which coincides with the
/// ordering of the lowercase hex renderings.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digest {
    len: u8,
    bytes: [u8; MAX_DIGEST_LEN],
}

impl Digest {
    /// Panics if `bytes` is longer than [`MAX_DIGEST_LEN`].
    pub fn from_bytes(bytes: &[u8]) -> Self {
        assert!(
            bytes.len() <= MAX_DIGEST_LEN,
            "digest of {} bytes exceeds the {MAX_DIGEST_LEN}-byte maximum",
            bytes.len()
        );
        let mut buf = [0u8; MAX_DIGEST_LEN];
        buf[..bytes.len()].copy_from_slice(bytes);
        Digest { len: bytes.len() as u8, bytes: buf }
    }

    /// Parses a lowercase hex string. Uppercase digits are rejected so that
    /// every digest has exactly one textual form.
    pub fn from_hex(hex: &str) -> Option<Self> {
        if !hex.len().is_multiple_of(2) || hex.len() > 2 * MAX_DIGEST_LEN {
            return None;
        }
        let mut buf = [0u8; MAX_DIGEST_LEN];
        for (i, pair) in hex.as_bytes().chunks(2).enumerate() {
            buf[i] = (lower_hex_value(pair[0])? << 4) | lower_hex_value(pair[1])?;
        }
        Some(Digest { len: (hex.len() / 2) as u8, bytes: buf })
    }

    /// The all-`0xff` digest of the given length; every digest of that length is `<=` it.
    pub fn max_of_len(len: usize) -> Self {
        Digest::from_bytes(&vec![0xff; len])
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes[..self.len as usize]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn to_hex(&self) -> String {
        self.to_string()
    }
}

fn lower_hex_value(c: u8) -> Option<u8> {
    match c {
        b'0'..=b'9' => Some(c - b'0'),
        b'a'..=b'f' => Some(c - b'a' + 10),
        _ => None,
    }
}

pub(crate) fn is_lower_hex(s: &str) -> bool {
    s.bytes().all(|c| lower_hex_value(c).is_some())
}

impl PartialOrd for Digest {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Digest {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.as_bytes().cmp(other.as_bytes())
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.as_bytes() {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest({self})")
    }
}

impl AsRef<[u8]> for Digest {
    fn as_ref(&self) -> &[u8] {
        self.as_bytes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_round_trip() {
        let hex = "0274a90142fff8495ee8fc6309bbea1abe6fe9db";
        let d = Digest::from_hex(hex).unwrap();
        assert_eq!(d.len(), 20);
        assert_eq!(d.to_hex(), hex);
    }

    #[test]
    fn rejects_uppercase_and_odd_length() {
        assert!(Digest::from_hex("0274A9").is_none());
        assert!(Digest::from_hex("027").is_none());
        assert!(Digest::from_hex("zz").is_none());
    }

    #[test]
    fn max_digest_bounds_everything() {
        let max = Digest::max_of_len(20);
        assert_eq!(max.to_hex(), "f".repeat(40));
        let d = Digest::from_hex("ffffffffffffffffffffffffffffffffffffff00").unwrap();
        assert!(d < max);
    }
}
