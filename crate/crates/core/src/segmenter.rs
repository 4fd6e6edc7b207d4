//! Flat/noisy block classification and gross capacity.
//!
//! The cover (optionally box-smoothed) is tiled by complete `n x n` blocks in
//! row-major order. A block is flat when its difference measure is strictly
//! below the threshold. Pixels in the partial right and bottom strips belong
//! to no block and never carry data.

use crate::pixmap::Image;
use crate::stats::{block_difference, box_smooth};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SegmentError {
    #[error("invalid segmentation parameters: {0}")]
    InvalidParams(String),
    #[error("image {width}x{height} is smaller than one {n}x{n} block")]
    ImageTooSmall {
        width: usize,
        height: usize,
        n: usize,
    },
}

/// How many bits a flat sub-block carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum FlatBitsMode {
    /// Only the position of the edited cell carries data.
    #[default]
    #[serde(rename = "position-only")]
    PositionOnly,
    /// The position plus one extra bit in the direction (+1/-1) of the edit.
    #[serde(rename = "position+sign")]
    PositionSign,
}

impl FlatBitsMode {
    /// Bits per flat sub-block for sub-block side `m`.
    pub fn carrier_width(self, m: usize) -> usize {
        let b = flat_code_bits(m);
        match self {
            FlatBitsMode::PositionOnly => b,
            FlatBitsMode::PositionSign => b + 1,
        }
    }
}

/// Code width `floor(log2(m^2))` of an `m x m` embedding matrix.
pub fn flat_code_bits(m: usize) -> usize {
    let cells = m * m;
    (usize::BITS - 1 - cells.leading_zeros()) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SegParams {
    /// Classification block side.
    pub n: usize,
    /// Exponent applied to neighbour differences.
    pub r: u32,
    /// Flatness threshold; a block is flat when `d < threshold`.
    pub threshold: u128,
    pub smooth: bool,
    /// Flat sub-block side; must divide `n`.
    pub m: usize,
    pub flat_bits: FlatBitsMode,
}

impl Default for SegParams {
    fn default() -> Self {
        Self {
            n: 6,
            r: 4,
            threshold: 2500,
            smooth: true,
            m: 3,
            flat_bits: FlatBitsMode::PositionOnly,
        }
    }
}

impl SegParams {
    pub fn validate(&self) -> Result<(), SegmentError> {
        let bad = |msg: String| Err(SegmentError::InvalidParams(msg));
        if self.n < 2 {
            return bad(format!("block size n must be >= 2, got {}", self.n));
        }
        if self.m < 2 {
            return bad(format!("sub-block size m must be >= 2, got {}", self.m));
        }
        if !self.n.is_multiple_of(self.m) {
            return bad(format!("m = {} does not divide n = {}", self.m, self.n));
        }
        if self.r == 0 {
            return bad("exponent r must be >= 1".to_string());
        }
        if self.threshold == 0 {
            return bad("threshold T must be >= 1".to_string());
        }
        Ok(())
    }
}

/// Per-block classification of a cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionMap {
    pub blocks_x: usize,
    pub blocks_y: usize,
    /// Row-major, `true` means flat.
    pub flags: Vec<bool>,
    pub params: SegParams,
}

impl RegionMap {
    pub fn is_flat(&self, bx: usize, by: usize) -> bool {
        self.flags[by * self.blocks_x + bx]
    }

    pub fn flat_count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    pub fn noisy_count(&self) -> usize {
        self.flags.len() - self.flat_count()
    }
}

pub fn classify(cover: &Image, p: &SegParams) -> Result<RegionMap, SegmentError> {
    p.validate()?;
    let (w, h) = cover.dims();
    if w < p.n || h < p.n {
        return Err(SegmentError::ImageTooSmall {
            width: w,
            height: h,
            n: p.n,
        });
    }
    let smoothed;
    let work = if p.smooth {
        smoothed = box_smooth(cover);
        &smoothed
    } else {
        cover
    };
    let (blocks_x, blocks_y) = (w / p.n, h / p.n);
    let mut flags = Vec::with_capacity(blocks_x * blocks_y);
    for by in 0..blocks_y {
        for bx in 0..blocks_x {
            let block = work.block(bx * p.n, by * p.n, p.n);
            // Overflow only for absurd exponents; such blocks are clearly not flat.
            let flat = match block_difference(&block, p.n, p.r) {
                Ok(d) => d < p.threshold,
                Err(_) => false,
            };
            flags.push(flat);
        }
    }
    Ok(RegionMap {
        blocks_x,
        blocks_y,
        flags,
        params: *p,
    })
}

/// Region mask: flat blocks white, noisy blocks black, uncovered strips 128.
pub fn region_mask_image(map: &RegionMap, width: usize, height: usize) -> Image {
    let n = map.params.n;
    Image::from_fn(width, height, |x, y| {
        let (bx, by) = (x / n, y / n);
        if bx >= map.blocks_x || by >= map.blocks_y {
            128
        } else if map.is_flat(bx, by) {
            255
        } else {
            0
        }
    })
}

/// Gross capacity in bits, before the length header is subtracted.
pub fn capacity(map: &RegionMap) -> usize {
    let p = &map.params;
    let noisy_bits = 3 * (p.n * p.n / 2);
    let per_side = p.n / p.m;
    let flat_bits = per_side * per_side * p.flat_bits.carrier_width(p.m);
    map.noisy_count() * noisy_bits + map.flat_count() * flat_bits
}
