//! The adaptive embedder and its informed extractor.
//!
//! Both sides classify the *cover*, build the same [`CarrierPlan`] and walk
//! it in order. The framed message (32-bit length header plus payload) is
//! consumed carrier by carrier; carriers past the end of the frame are left
//! untouched. With a nonzero key, every active carrier draws its own layout
//! (a pair mapping or an embedding matrix) from one PRNG stream in carrier
//! order, so the extractor replays the stream exactly.

pub mod bits;
pub mod flat;
pub mod pair;
pub mod plan;
mod prng;
pub mod sidecar;

pub use flat::{embed_flat_block, extract_flat_block, CellEdit, EmbedMatrix};
pub use pair::{decode_pair, encode_pair, PairMapping};
pub use plan::{plan_carriers, Carrier, CarrierPlan};
pub use prng::{Prng, StegoKey, ZERO_SEED_STATE};
pub use sidecar::StegoMeta;

use crate::pixmap::Image;
use crate::segmenter::{capacity, classify, SegParams, SegmentError};
use bits::{framed_len, ChunkReader, ChunkWriter, HEADER_BITS};
use thiserror::Error;

/// Why a single carrier failed to decode.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CarrierError {
    #[error("illegal pixel change {cover} -> {stego}")]
    IllegalDelta { cover: u8, stego: u8 },
    #[error("pair decoded to the unused state {0}")]
    UnusedState(u8),
    #[error("flat sub-block carries no change")]
    NoChange,
    #[error("flat sub-block has more than one changed cell")]
    MultipleChanges,
    #[error("blank matrix cell ({row}, {col}) was changed")]
    BlankCellChanged { row: usize, col: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("message needs {needed} bits but the cover holds {available}")]
    CapacityExceeded { needed: usize, available: usize },
    #[error("cover and stego dimensions differ: {cover:?} vs {stego:?}")]
    DimensionMismatch {
        cover: (usize, usize),
        stego: (usize, usize),
    },
    #[error("corrupt stego image at carrier {carrier}: {source}")]
    CorruptStego {
        carrier: usize,
        #[source]
        source: CarrierError,
    },
    #[error("header declares {declared} bytes but only {available} bits of capacity remain")]
    HeaderOverrun { declared: u32, available: usize },
    #[error(transparent)]
    Segment(#[from] SegmentError),
}

impl CodecError {
    /// True for errors caused by the message not fitting, as opposed to
    /// problems with the stego data or the parameters.
    pub fn is_capacity(&self) -> bool {
        matches!(self, CodecError::CapacityExceeded { .. })
    }
}

/// Largest message, in bytes, that `cover` can hold under `p`.
pub fn max_message_len(cover: &Image, p: &SegParams) -> Result<usize, CodecError> {
    let cap = capacity(&classify(cover, p)?);
    Ok(cap.saturating_sub(HEADER_BITS) / 8)
}

/// Per-carrier layout source: canonical layouts when unkeyed, otherwise
/// fresh permutations drawn in carrier order.
struct Layouts {
    rng: Option<Prng>,
    canonical_matrix: EmbedMatrix,
}

enum Layout {
    Pair(PairMapping),
    Flat(EmbedMatrix),
}

impl Layouts {
    fn new(key: StegoKey, m: usize) -> Self {
        Self {
            rng: key.is_keyed().then(|| Prng::from_key(key)),
            canonical_matrix: EmbedMatrix::canonical(m),
        }
    }

    fn next(&mut self, carrier: &Carrier) -> Layout {
        match (carrier, self.rng.as_mut()) {
            (Carrier::Pair { .. }, None) => Layout::Pair(PairMapping::identity()),
            (Carrier::Flat { .. }, None) => Layout::Flat(self.canonical_matrix.clone()),
            (Carrier::Pair { .. }, Some(rng)) => Layout::Pair(
                PairMapping::from_permutation(&rng.permutation(9)).expect("permutation of 9"),
            ),
            (Carrier::Flat { .. }, Some(rng)) => {
                let m = self.canonical_matrix.side();
                Layout::Flat(
                    EmbedMatrix::from_permutation(m, &rng.permutation(m * m))
                        .expect("permutation of m^2"),
                )
            }
        }
    }
}

/// Hides `message` in `cover`.
pub fn embed(
    cover: &Image,
    message: &[u8],
    key: StegoKey,
    p: &SegParams,
) -> Result<Image, CodecError> {
    let map = classify(cover, p)?;
    let plan = plan_carriers(&map);
    let available = plan.total_width();
    let needed = framed_len(message.len());
    if needed > available || message.len() > u32::MAX as usize {
        return Err(CodecError::CapacityExceeded { needed, available });
    }

    let frame = bits::frame(message);
    let mut reader = ChunkReader::new(&frame);
    let mut layouts = Layouts::new(key, p.m);
    let mut stego = cover.clone();
    for carrier in &plan.carriers {
        if reader.is_exhausted() {
            break;
        }
        let chunk = reader.take(plan.width_of(carrier));
        match (carrier, layouts.next(carrier)) {
            (Carrier::Pair { first, second }, Layout::Pair(map)) => {
                let c = (cover.get(first.0, first.1), cover.get(second.0, second.1));
                let (a, b) = encode_pair(c, chunk as u8, &map);
                stego.set(first.0, first.1, a);
                stego.set(second.0, second.1, b);
            }
            (Carrier::Flat { origin }, Layout::Flat(matrix)) => {
                let e = embed_flat_block(cover, *origin, chunk, &matrix, p.flat_bits);
                stego.set(e.x, e.y, e.value);
            }
            _ => unreachable!("layout kind follows carrier kind"),
        }
    }
    Ok(stego)
}

/// Recovers the message from `stego` given the original `cover`.
pub fn extract(
    cover: &Image,
    stego: &Image,
    key: StegoKey,
    p: &SegParams,
) -> Result<Vec<u8>, CodecError> {
    if cover.dims() != stego.dims() {
        return Err(CodecError::DimensionMismatch {
            cover: cover.dims(),
            stego: stego.dims(),
        });
    }
    let map = classify(cover, p)?;
    let plan = plan_carriers(&map);
    let available = plan.total_width();
    let mut layouts = Layouts::new(key, p.m);
    let mut out = ChunkWriter::default();
    let mut target: Option<usize> = None;

    for (index, carrier) in plan.carriers.iter().enumerate() {
        if let Some(t) = target {
            if out.len() >= t {
                break;
            }
        }
        let corrupt = |source| CodecError::CorruptStego {
            carrier: index,
            source,
        };
        match (carrier, layouts.next(carrier)) {
            (Carrier::Pair { first, second }, Layout::Pair(map)) => {
                let c = (cover.get(first.0, first.1), cover.get(second.0, second.1));
                let s = (stego.get(first.0, first.1), stego.get(second.0, second.1));
                let v = decode_pair(c, s, &map).map_err(corrupt)?;
                out.push(v as u32, plan::PAIR_WIDTH);
            }
            (Carrier::Flat { origin }, Layout::Flat(matrix)) => {
                let chunk = extract_flat_block(cover, stego, *origin, &matrix, p.flat_bits)
                    .map_err(corrupt)?;
                out.push(chunk, plan.flat_width);
            }
            _ => unreachable!("layout kind follows carrier kind"),
        }
        if target.is_none() {
            if let Some(declared) = out.declared_len() {
                let t = framed_len(declared as usize);
                if t > available {
                    return Err(CodecError::HeaderOverrun {
                        declared,
                        available: available - HEADER_BITS,
                    });
                }
                target = Some(t);
            }
        }
    }
    match (target, out.declared_len()) {
        (Some(t), Some(declared)) if out.len() >= t => Ok(out.payload(declared as usize)),
        // Only reachable when capacity is below the header size.
        _ => Err(CodecError::CapacityExceeded {
            needed: HEADER_BITS,
            available,
        }),
    }
}
