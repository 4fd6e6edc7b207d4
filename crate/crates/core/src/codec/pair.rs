//! Ternary pair codec for noisy blocks.
//!
//! Each pixel of a pair takes one of three edits (none, +1, -1), giving nine
//! joint states. Eight of them carry a 3-bit value; the ninth is unused.

use super::CarrierError;

/// Maps 3-bit values onto the nine joint states. `perm[v]` is the state
/// for value `v`; `perm[8]` is the unused state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairMapping {
    perm: [u8; 9],
}

impl PairMapping {
    pub fn identity() -> Self {
        Self {
            perm: [0, 1, 2, 3, 4, 5, 6, 7, 8],
        }
    }

    /// Returns `None` unless `perm` is a bijection on `0..9`.
    pub fn from_permutation(perm: &[usize]) -> Option<Self> {
        if perm.len() != 9 {
            return None;
        }
        let mut seen = [false; 9];
        let mut out = [0u8; 9];
        for (slot, &s) in perm.iter().enumerate() {
            if s >= 9 || seen[s] {
                return None;
            }
            seen[s] = true;
            out[slot] = s as u8;
        }
        Some(Self { perm: out })
    }

    pub fn state_of(&self, value: u8) -> u8 {
        self.perm[value as usize]
    }

    pub fn unused_state(&self) -> u8 {
        self.perm[8]
    }

    fn value_of(&self, state: u8) -> Option<u8> {
        self.perm[..8]
            .iter()
            .position(|&s| s == state)
            .map(|v| v as u8)
    }
}

/// One-unit step up or down with the saturation remap: `-1` at 0 becomes
/// `+2`, `+1` at 255 becomes `-2`.
pub(crate) fn step(value: u8, up: bool) -> u8 {
    match (value, up) {
        (255, true) => 253,
        (0, false) => 2,
        (v, true) => v + 1,
        (v, false) => v - 1,
    }
}

/// Inverse of [`step`]: `Some(true)` for a logical +1, `Some(false)` for a
/// logical -1, `None` for no change, or an error for any other difference.
pub(crate) fn read_step(cover: u8, stego: u8) -> Result<Option<bool>, CarrierError> {
    let diff = stego as i16 - cover as i16;
    match (cover, diff) {
        (_, 0) => Ok(None),
        (_, 1) => Ok(Some(true)),
        (_, -1) => Ok(Some(false)),
        (0, 2) => Ok(Some(false)),
        (255, -2) => Ok(Some(true)),
        _ => Err(CarrierError::IllegalDelta { cover, stego }),
    }
}

fn apply_trit(value: u8, trit: u8) -> u8 {
    match trit {
        0 => value,
        1 => step(value, true),
        _ => step(value, false),
    }
}

fn read_trit(cover: u8, stego: u8) -> Result<u8, CarrierError> {
    Ok(match read_step(cover, stego)? {
        None => 0,
        Some(true) => 1,
        Some(false) => 2,
    })
}

/// Embeds a 3-bit `value` into the pixel pair `cover`.
pub fn encode_pair(cover: (u8, u8), value: u8, map: &PairMapping) -> (u8, u8) {
    debug_assert!(value < 8);
    let state = map.state_of(value);
    (
        apply_trit(cover.0, state / 3),
        apply_trit(cover.1, state % 3),
    )
}

pub fn decode_pair(
    cover: (u8, u8),
    stego: (u8, u8),
    map: &PairMapping,
) -> Result<u8, CarrierError> {
    let state = 3 * read_trit(cover.0, stego.0)? + read_trit(cover.1, stego.1)?;
    map.value_of(state).ok_or(CarrierError::UnusedState(state))
}
