//! Keyed xorshift64* generator and Fisher-Yates permutations.

use serde::{Deserialize, Serialize};

/// Replaces a zero seed; xorshift has an all-zero fixed point.
pub const ZERO_SEED_STATE: u64 = 0x9E37_79B9_7F4A_7C15;

const MULTIPLIER: u64 = 0x2545_F491_4F6C_DD1D;

/// 64-bit stego key. Zero selects the canonical, unkeyed layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct StegoKey(pub u64);

impl StegoKey {
    pub const UNKEYED: StegoKey = StegoKey(0);

    pub fn is_keyed(self) -> bool {
        self.0 != 0
    }

    /// Short public fingerprint stored in sidecar metadata.
    pub fn fingerprint(self) -> u64 {
        self.0 % 65521
    }
}

/// xorshift64* state. Never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prng {
    state: u64,
}

impl Prng {
    pub fn new(seed: u64) -> Self {
        Self {
            state: if seed == 0 { ZERO_SEED_STATE } else { seed },
        }
    }

    pub fn from_key(key: StegoKey) -> Self {
        Self::new(key.0)
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u32(&mut self) -> u32 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        (x.wrapping_mul(MULTIPLIER) >> 32) as u32
    }

    /// Fisher-Yates shuffle of the identity on `0..k`, drawing
    /// `next_u32() % (i + 1)` for `i = k-1 ..= 1`. Consumes `k - 1` outputs.
    pub fn permutation(&mut self, k: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..k).collect();
        for i in (1..k).rev() {
            let j = (self.next_u32() as u64 % (i as u64 + 1)) as usize;
            perm.swap(i, j);
        }
        perm
    }
}
