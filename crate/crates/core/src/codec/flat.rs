//! Position codec for flat sub-blocks.
//!
//! An `m x m` embedding matrix assigns a distinct `b`-bit code to `2^b` of
//! its cells (`b = floor(log2(m^2))`), the rest are blank. A chunk is
//! embedded by nudging the single cell whose code equals the chunk by one
//! gray level. With [`FlatBitsMode::PositionSign`] the direction of the
//! nudge carries one more bit.

use super::pair::{read_step, step};
use super::CarrierError;
use crate::pixmap::Image;
use crate::segmenter::{flat_code_bits, FlatBitsMode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedMatrix {
    m: usize,
    /// Row-major cells; `None` is blank.
    cells: Vec<Option<u32>>,
}

impl EmbedMatrix {
    /// Codes `0..2^b` placed row-major, blanks last.
    pub fn canonical(m: usize) -> Self {
        Self::from_permutation(m, &(0..m * m).collect::<Vec<_>>())
            .expect("identity is a permutation")
    }

    /// Places `perm[k]` at cell `k`; values `>= 2^b` become blanks.
    pub fn from_permutation(m: usize, perm: &[usize]) -> Option<Self> {
        let limit = 1usize << flat_code_bits(m);
        let cells = perm
            .iter()
            .map(|&v| (v < limit).then_some(v as u32))
            .collect();
        Self::from_cells(m, cells)
    }

    /// Validates an explicit layout: every code appears exactly once and
    /// the remaining `m^2 - 2^b` cells are blank.
    pub fn from_cells(m: usize, cells: Vec<Option<u32>>) -> Option<Self> {
        if m < 2 || cells.len() != m * m {
            return None;
        }
        let codes = 1usize << flat_code_bits(m);
        let mut seen = vec![false; codes];
        for c in cells.iter().flatten() {
            let c = *c as usize;
            if c >= codes || seen[c] {
                return None;
            }
            seen[c] = true;
        }
        if !seen.iter().all(|&s| s) {
            return None;
        }
        Some(Self { m, cells })
    }

    pub fn side(&self) -> usize {
        self.m
    }

    pub fn code_bits(&self) -> usize {
        flat_code_bits(self.m)
    }

    pub fn cell(&self, row: usize, col: usize) -> Option<u32> {
        self.cells[row * self.m + col]
    }

    /// `(row, col)` of the cell holding `code`.
    pub fn position_of(&self, code: u32) -> Option<(usize, usize)> {
        self.cells
            .iter()
            .position(|&c| c == Some(code))
            .map(|k| (k / self.m, k % self.m))
    }
}

/// A single pixel edit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellEdit {
    pub x: usize,
    pub y: usize,
    pub value: u8,
}

/// Direction chosen in position-only mode: toward the mean of the eight
/// cover neighbours (border replicated), down on a tie.
fn toward_neighbors(cover: &Image, x: usize, y: usize) -> bool {
    let (x, y) = (x as isize, y as isize);
    let mut sum = 0u32;
    for dy in -1..=1 {
        for dx in -1..=1 {
            if dx != 0 || dy != 0 {
                sum += cover.get_clamped(x + dx, y + dy) as u32;
            }
        }
    }
    sum > 8 * cover.get(x as usize, y as usize) as u32
}

/// Embeds `chunk` into the sub-block whose top-left pixel is `origin`.
///
/// `chunk` holds `b` bits in position-only mode and `b + 1` bits (code
/// first, sign bit last) in position+sign mode. The cover supplies the
/// neighbourhood used by the position-only direction rule.
pub fn embed_flat_block(
    cover: &Image,
    origin: (usize, usize),
    chunk: u32,
    matrix: &EmbedMatrix,
    mode: FlatBitsMode,
) -> CellEdit {
    let (code, up) = match mode {
        FlatBitsMode::PositionOnly => (chunk, None),
        FlatBitsMode::PositionSign => (chunk >> 1, Some(chunk & 1 == 1)),
    };
    let (row, col) = matrix
        .position_of(code)
        .expect("chunk code exceeds matrix code range");
    let (x, y) = (origin.0 + col, origin.1 + row);
    let up = up.unwrap_or_else(|| toward_neighbors(cover, x, y));
    CellEdit {
        x,
        y,
        value: step(cover.get(x, y), up),
    }
}

/// Recovers the chunk from a sub-block of `stego`.
pub fn extract_flat_block(
    cover: &Image,
    stego: &Image,
    origin: (usize, usize),
    matrix: &EmbedMatrix,
    mode: FlatBitsMode,
) -> Result<u32, CarrierError> {
    let m = matrix.side();
    let mut found: Option<(usize, usize, bool)> = None;
    for row in 0..m {
        for col in 0..m {
            let (x, y) = (origin.0 + col, origin.1 + row);
            let (c, s) = (cover.get(x, y), stego.get(x, y));
            if c == s {
                continue;
            }
            let up = read_step(c, s)?.expect("pixels differ");
            if found.is_some() {
                return Err(CarrierError::MultipleChanges);
            }
            found = Some((row, col, up));
        }
    }
    let (row, col, up) = found.ok_or(CarrierError::NoChange)?;
    let code = matrix
        .cell(row, col)
        .ok_or(CarrierError::BlankCellChanged { row, col })?;
    Ok(match mode {
        FlatBitsMode::PositionOnly => code,
        FlatBitsMode::PositionSign => (code << 1) | up as u32,
    })
}
