//! JSON sidecar describing how a stego image was produced.

use super::StegoKey;
use crate::segmenter::{FlatBitsMode, SegParams};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

/// Embedding parameters written next to a stego image. The key itself is
/// never stored, only `seed mod 65521` as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StegoMeta {
    pub n: usize,
    pub r: u32,
    #[serde(rename = "T")]
    pub threshold: u64,
    pub m: usize,
    pub flat_bits_mode: FlatBitsMode,
    pub smooth: bool,
    pub key_fingerprint: String,
    pub format_version: u32,
}

impl StegoMeta {
    pub fn new(p: &SegParams, key: StegoKey) -> Self {
        Self {
            n: p.n,
            r: p.r,
            threshold: u64::try_from(p.threshold).unwrap_or(u64::MAX),
            m: p.m,
            flat_bits_mode: p.flat_bits,
            smooth: p.smooth,
            key_fingerprint: key.fingerprint().to_string(),
            format_version: FORMAT_VERSION,
        }
    }

    pub fn params(&self) -> SegParams {
        SegParams {
            n: self.n,
            r: self.r,
            threshold: self.threshold as u128,
            smooth: self.smooth,
            m: self.m,
            flat_bits: self.flat_bits_mode,
        }
    }

    /// Whether `key` is consistent with the stored fingerprint.
    pub fn matches_key(&self, key: StegoKey) -> bool {
        self.key_fingerprint == key.fingerprint().to_string()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("metadata serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
