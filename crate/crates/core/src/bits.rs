//! Bit/byte conversions shared by the FEC chain.
//!
//! Bits are plain `u8` values restricted to 0/1; blocks are `Vec<u8>`.
//! Byte-to-bit expansion is MSB-first throughout the crate.

/// Expands bytes into bits, most significant bit first.
pub fn bytes_to_bits(bytes: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(bytes.len() * 8);
    for &b in bytes {
        for shift in (0..8).rev() {
            out.push((b >> shift) & 1);
        }
    }
    out
}

/// Packs bits (MSB first) back into bytes. Excess bits beyond the last full
/// byte are dropped.
pub fn bits_to_bytes(bits: &[u8]) -> Vec<u8> {
    bits.chunks_exact(8)
        .map(|chunk| chunk.iter().fold(0u8, |acc, &b| (acc << 1) | (b & 1)))
        .collect()
}

/// Interprets `width` bits (MSB first) as an unsigned integer.
pub fn bits_to_uint(bits: &[u8]) -> u32 {
    bits.iter().fold(0u32, |acc, &b| (acc << 1) | u32::from(b & 1))
}

/// Expands the low `width` bits of `value` MSB-first.
pub fn uint_to_bits(value: u32, width: usize) -> Vec<u8> {
    (0..width)
        .rev()
        .map(|shift| ((value >> shift) & 1) as u8)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bytes_roundtrip() {
        let bytes = [0x00, 0xFF, 0xA5, 0x3C];
        let bits = bytes_to_bits(&bytes);
        assert_eq!(bits.len(), 32);
        assert_eq!(&bits[..8], &[0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(&bits[8..16], &[1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(&bits[16..24], &[1, 0, 1, 0, 0, 1, 0, 1]);
        assert_eq!(bits_to_bytes(&bits), bytes);
    }

    #[test]
    fn uint_roundtrip() {
        assert_eq!(bits_to_uint(&[1, 0, 1, 1]), 0b1011);
        assert_eq!(uint_to_bits(0b1011, 4), vec![1, 0, 1, 1]);
        assert_eq!(uint_to_bits(1, 6), vec![0, 0, 0, 0, 0, 1]);
    }
}
