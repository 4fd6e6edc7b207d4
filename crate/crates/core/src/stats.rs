//! First- and second-order image statistics.
//!
//! Co-occurrence matrices follow the usual convention: for an offset
//! `(dx, dy)`, entry `[i][j]` counts the positions `(x, y)` where
//! `g(x, y) = i` and `g(x + dx, y + dy) = j`, with both positions inside the
//! image.

use crate::pixmap::Image;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatsError {
    #[error("co-occurrence offset (0, 0) is not allowed")]
    ZeroOffset,
    #[error("offset ({dx}, {dy}) does not fit inside a {width}x{height} image")]
    OffsetTooLarge {
        dx: isize,
        dy: isize,
        width: usize,
        height: usize,
    },
    #[error("co-occurrence matrices use different offsets")]
    OffsetMismatch,
    #[error("image dimensions differ: {0:?} vs {1:?}")]
    DimensionMismatch((usize, usize), (usize, usize)),
    #[error("block must be at least 2x2, got side {0}")]
    BlockTooSmall(usize),
    #[error("block slice has {len} values, expected {side}x{side}")]
    BlockShape { side: usize, len: usize },
    #[error("difference exponent must be at least 1")]
    ZeroExponent,
    #[error("difference measure overflows 128 bits")]
    DifferenceOverflow,
}

/// Gray-level frequency table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub counts: [u64; 256],
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

pub fn histogram(img: &Image) -> Histogram {
    let mut counts = [0u64; 256];
    for &p in img.pixels() {
        counts[p as usize] += 1;
    }
    Histogram { counts }
}

/// Spatial displacement `(dx, dy)` between the two pixels of a co-occurring
/// pair, in columns and rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Offset {
    dx: isize,
    dy: isize,
}

impl Offset {
    /// The eight unit neighbours.
    pub const NEIGHBORS: [Offset; 8] = [
        Offset { dx: 1, dy: 0 },
        Offset { dx: -1, dy: 1 },
        Offset { dx: 0, dy: 1 },
        Offset { dx: 1, dy: 1 },
        Offset { dx: -1, dy: -1 },
        Offset { dx: 0, dy: -1 },
        Offset { dx: 1, dy: -1 },
        Offset { dx: -1, dy: 0 },
    ];

    pub const RIGHT: Offset = Offset { dx: 1, dy: 0 };

    pub fn new(dx: isize, dy: isize) -> Result<Self, StatsError> {
        if dx == 0 && dy == 0 {
            return Err(StatsError::ZeroOffset);
        }
        Ok(Self { dx, dy })
    }

    pub fn dx(&self) -> isize {
        self.dx
    }

    pub fn dy(&self) -> isize {
        self.dy
    }

    pub fn reversed(&self) -> Self {
        Self {
            dx: -self.dx,
            dy: -self.dy,
        }
    }
}

/// 256x256 pair-frequency table for a single offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoocMatrix {
    entries: Vec<u64>,
    offset: Offset,
}

impl CoocMatrix {
    pub fn zeros(offset: Offset) -> Self {
        Self {
            entries: vec![0; 256 * 256],
            offset,
        }
    }

    #[inline]
    pub fn get(&self, i: u8, j: u8) -> u64 {
        self.entries[i as usize * 256 + j as usize]
    }

    #[inline]
    pub fn set(&mut self, i: u8, j: u8, value: u64) {
        self.entries[i as usize * 256 + j as usize] = value;
    }

    pub fn offset(&self) -> Offset {
        self.offset
    }

    /// Row-major entries, `entries[i * 256 + j]`.
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().sum()
    }

    pub fn max_entry(&self) -> u64 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.offset.reversed());
        for i in 0..256usize {
            for j in 0..256usize {
                out.entries[j * 256 + i] = self.entries[i * 256 + j];
            }
        }
        out
    }
}

pub fn cooccurrence(img: &Image, off: Offset) -> Result<CoocMatrix, StatsError> {
    let (w, h) = img.dims();
    let (dx, dy) = (off.dx, off.dy);
    if dx == 0 && dy == 0 {
        return Err(StatsError::ZeroOffset);
    }
    if dx.unsigned_abs() >= w || dy.unsigned_abs() >= h {
        return Err(StatsError::OffsetTooLarge {
            dx,
            dy,
            width: w,
            height: h,
        });
    }
    let mut m = CoocMatrix::zeros(off);
    // (x, y) ranges keeping both ends of the pair in bounds
    let x_lo = (-dx).max(0) as usize;
    let x_hi = (w as isize - dx.max(0)) as usize;
    let y_lo = (-dy).max(0) as usize;
    let y_hi = (h as isize - dy.max(0)) as usize;
    for y in y_lo..y_hi {
        let ny = (y as isize + dy) as usize;
        for x in x_lo..x_hi {
            let nx = (x as isize + dx) as usize;
            let i = img.get(x, y) as usize;
            let j = img.get(nx, ny) as usize;
            m.entries[i * 256 + j] += 1;
        }
    }
    Ok(m)
}

/// Sum of absolute entry differences between two matrices of the same offset.
pub fn cooc_l1_distance(a: &CoocMatrix, b: &CoocMatrix) -> Result<f64, StatsError> {
    if a.offset != b.offset {
        return Err(StatsError::OffsetMismatch);
    }
    let sum: u64 = a
        .entries
        .iter()
        .zip(&b.entries)
        .map(|(&x, &y)| x.abs_diff(y))
        .sum();
    Ok(sum as f64)
}

/// Log-scaled visualization: pixel `(j, i)` shows entry `[i][j]`, mapped by
/// `255 * ln(1 + c) / ln(1 + max)`.
pub fn render_cooc(m: &CoocMatrix) -> Image {
    let max = m.max_entry();
    if max == 0 {
        return Image::filled(256, 256, 0);
    }
    let denom = (max as f64).ln_1p();
    Image::from_fn(256, 256, |x, y| {
        let c = m.entries[y * 256 + x];
        (255.0 * (c as f64).ln_1p() / denom).round() as u8
    })
}

pub fn mse(a: &Image, b: &Image) -> Result<f64, StatsError> {
    if a.dims() != b.dims() {
        return Err(StatsError::DimensionMismatch(a.dims(), b.dims()));
    }
    let sse: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&p, &q)| {
            let d = p.abs_diff(q) as u64;
            d * d
        })
        .sum();
    Ok(sse as f64 / a.len() as f64)
}

/// Peak signal-to-noise ratio in dB. Identical images give `f64::INFINITY`.
pub fn psnr(a: &Image, b: &Image) -> Result<f64, StatsError> {
    let mse = mse(a, b)?;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (255.0 * 255.0 / mse).log10())
}

/// 3x3 mean filter with border replication, rounded as `(sum + 4) / 9`.
pub fn box_smooth(img: &Image) -> Image {
    let (w, h) = img.dims();
    // Horizontal pass into 16-bit sums, then vertical pass.
    let mut rows = vec![0u16; w * h];
    for y in 0..h {
        for x in 0..w {
            let l = img.get(x.saturating_sub(1), y) as u16;
            let c = img.get(x, y) as u16;
            let r = img.get((x + 1).min(w - 1), y) as u16;
            rows[y * w + x] = l + c + r;
        }
    }
    Image::from_fn(w, h, |x, y| {
        let up = rows[y.saturating_sub(1) * w + x] as u32;
        let mid = rows[y * w + x] as u32;
        let down = rows[(y + 1).min(h - 1) * w + x] as u32;
        ((up + mid + down + 4) / 9) as u8
    })
}

/// Block difference measure: the sum over vertically and horizontally
/// adjacent pixel pairs of `|a - b|^r`.
///
/// `block` holds `side * side` values in row-major order.
pub fn block_difference(block: &[u8], side: usize, r: u32) -> Result<u128, StatsError> {
    if side < 2 {
        return Err(StatsError::BlockTooSmall(side));
    }
    if block.len() != side * side {
        return Err(StatsError::BlockShape {
            side,
            len: block.len(),
        });
    }
    if r == 0 {
        return Err(StatsError::ZeroExponent);
    }
    let term = |a: u8, b: u8| -> Result<u128, StatsError> {
        (a.abs_diff(b) as u128)
            .checked_pow(r)
            .ok_or(StatsError::DifferenceOverflow)
    };
    let mut d: u128 = 0;
    for i in 0..side {
        for j in 0..side {
            let here = block[i * side + j];
            if i + 1 < side {
                d = d
                    .checked_add(term(block[(i + 1) * side + j], here)?)
                    .ok_or(StatsError::DifferenceOverflow)?;
            }
            if j + 1 < side {
                d = d
                    .checked_add(term(block[i * side + j + 1], here)?)
                    .ok_or(StatsError::DifferenceOverflow)?;
            }
        }
    }
    Ok(d)
}
