//! Adaptive grayscale steganography.
//!
//! The cover is split into `n x n` blocks which are classified as flat or
//! noisy from a smoothed copy of the cover. Noisy blocks carry three bits per
//! pixel pair using ternary (-1/0/+1) edits; flat blocks are cut into `m x m`
//! sub-blocks that each carry a code through the *position* of a single
//! one-unit edit. Extraction is informed: the receiver holds the cover.
//!
//! Alongside the embedder the crate ships the usual comparison kit: LSB
//! replacement and LSB matching baselines, chi-square and RS steganalysis,
//! co-occurrence matrices and PSNR.

pub mod baselines;
pub mod codec;
pub mod pixmap;
pub mod segmenter;
pub mod stats;
pub mod steganalysis;
pub mod synth;

pub use codec::{embed, extract, CodecError, Prng, StegoKey};
pub use pixmap::{read_pgm, write_pgm, Image, PgmError};
pub use segmenter::{capacity, classify, FlatBitsMode, RegionMap, SegParams, SegmentError};
pub use stats::{Offset, StatsError};
