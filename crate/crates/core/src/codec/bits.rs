//! Length-prefixed bit framing.
//!
//! A frame is a 32-bit big-endian byte count followed by the payload bytes,
//! every byte most-significant bit first.

pub const HEADER_BITS: usize = 32;

/// Total framed bit count for a payload of `len` bytes.
pub fn framed_len(len: usize) -> usize {
    HEADER_BITS + 8 * len
}

pub fn bytes_to_bits(bytes: &[u8]) -> Vec<bool> {
    bytes
        .iter()
        .flat_map(|&b| (0..8).rev().map(move |i| (b >> i) & 1 == 1))
        .collect()
}

/// Packs bits MSB-first; a trailing partial byte is zero padded.
pub fn bits_to_bytes(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | ((b as u8) << (7 - i)))
        })
        .collect()
}

/// Header plus payload as a bit sequence.
///
/// Panics if the message does not fit the 32-bit length field.
pub fn frame(message: &[u8]) -> Vec<bool> {
    let len = u32::try_from(message.len()).expect("message longer than u32::MAX bytes");
    let mut bits = bytes_to_bits(&len.to_be_bytes());
    bits.extend(bytes_to_bits(message));
    bits
}

/// Reads fixed-width chunks, zero padding past the end.
pub struct ChunkReader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl<'a> ChunkReader<'a> {
    pub fn new(bits: &'a [bool]) -> Self {
        Self { bits, pos: 0 }
    }

    pub fn is_exhausted(&self) -> bool {
        self.pos >= self.bits.len()
    }

    /// Next `width` bits as an MSB-first integer.
    pub fn take(&mut self, width: usize) -> u32 {
        debug_assert!(width <= 32);
        let mut v = 0u32;
        for k in 0..width {
            let bit = self.bits.get(self.pos + k).copied().unwrap_or(false);
            v = (v << 1) | bit as u32;
        }
        self.pos += width;
        v
    }
}

/// Accumulates chunks produced by extraction.
#[derive(Debug, Default)]
pub struct ChunkWriter {
    bits: Vec<bool>,
}

impl ChunkWriter {
    pub fn push(&mut self, value: u32, width: usize) {
        for k in (0..width).rev() {
            self.bits.push((value >> k) & 1 == 1);
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Declared payload length, once the header has been collected.
    pub fn declared_len(&self) -> Option<u32> {
        (self.bits.len() >= HEADER_BITS).then(|| {
            self.bits[..HEADER_BITS]
                .iter()
                .fold(0u32, |acc, &b| (acc << 1) | b as u32)
        })
    }

    /// Payload bytes following the header, truncated to `len` bytes.
    pub fn payload(&self, len: usize) -> Vec<u8> {
        let end = (HEADER_BITS + 8 * len).min(self.bits.len());
        bits_to_bytes(&self.bits[HEADER_BITS.min(end)..end])
    }
}
