//! LSB replacement and LSB matching (+-1) embedders used for comparison.

use crate::codec::{Prng, StegoKey};
use crate::pixmap::Image;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaselineError {
    #[error("{requested} bits requested but the image has {available} pixels")]
    CapacityExceeded { requested: usize, available: usize },
    #[error("keyed-random order needs a nonzero key")]
    ZeroKey,
}

/// Pixel visiting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineOrder {
    /// Row-major.
    Sequential,
    /// Keyed Fisher-Yates permutation of the pixel indices.
    KeyedRandom(StegoKey),
}

impl BaselineOrder {
    pub fn keyed(key: StegoKey) -> Result<Self, BaselineError> {
        if !key.is_keyed() {
            return Err(BaselineError::ZeroKey);
        }
        Ok(Self::KeyedRandom(key))
    }

    /// The first `count` visited pixel indices.
    pub fn indices(&self, pixels: usize, count: usize) -> Result<Vec<usize>, BaselineError> {
        if count > pixels {
            return Err(BaselineError::CapacityExceeded {
                requested: count,
                available: pixels,
            });
        }
        match self {
            BaselineOrder::Sequential => Ok((0..count).collect()),
            BaselineOrder::KeyedRandom(key) => {
                if !key.is_keyed() {
                    return Err(BaselineError::ZeroKey);
                }
                let mut perm = Prng::from_key(*key).permutation(pixels);
                perm.truncate(count);
                Ok(perm)
            }
        }
    }
}

/// Overwrites the least significant bit of each visited pixel.
pub fn lsb_replace_embed(
    cover: &Image,
    bits: &[bool],
    order: BaselineOrder,
) -> Result<Image, BaselineError> {
    let idx = order.indices(cover.len(), bits.len())?;
    let mut stego = cover.clone();
    let px = stego.pixels_mut();
    for (&i, &bit) in idx.iter().zip(bits) {
        px[i] = (px[i] & !1) | bit as u8;
    }
    Ok(stego)
}

/// LSB matching: a mismatching pixel moves by +-1, the direction taken from
/// the low bit of `rng` (1 = up). Forced up at 0 and down at 255.
pub fn lsb_match_embed(
    cover: &Image,
    bits: &[bool],
    order: BaselineOrder,
    rng: &mut Prng,
) -> Result<Image, BaselineError> {
    let idx = order.indices(cover.len(), bits.len())?;
    let mut stego = cover.clone();
    let px = stego.pixels_mut();
    for (&i, &bit) in idx.iter().zip(bits) {
        let v = px[i];
        if (v & 1 == 1) == bit {
            continue;
        }
        px[i] = match v {
            0 => 1,
            255 => 254,
            _ if rng.next_u32() & 1 == 1 => v + 1,
            _ => v - 1,
        };
    }
    Ok(stego)
}

pub fn lsb_extract(
    stego: &Image,
    count: usize,
    order: BaselineOrder,
) -> Result<Vec<bool>, BaselineError> {
    let idx = order.indices(stego.len(), count)?;
    Ok(idx.iter().map(|&i| stego.pixels()[i] & 1 == 1).collect())
}
