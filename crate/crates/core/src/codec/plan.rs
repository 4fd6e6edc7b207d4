//! Canonical carrier traversal shared by embedder and extractor.

use crate::segmenter::RegionMap;

/// One atomic embedding site.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    /// Two pixels of a noisy block, `(x, y)` each; carries 3 bits.
    Pair {
        first: (usize, usize),
        second: (usize, usize),
    },
    /// An `m x m` sub-block of a flat block, by its top-left pixel.
    Flat { origin: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarrierPlan {
    pub carriers: Vec<Carrier>,
    /// Sub-block side for flat carriers.
    pub m: usize,
    /// Bits per flat carrier.
    pub flat_width: usize,
}

pub const PAIR_WIDTH: usize = 3;

impl CarrierPlan {
    pub fn width_of(&self, carrier: &Carrier) -> usize {
        match carrier {
            Carrier::Pair { .. } => PAIR_WIDTH,
            Carrier::Flat { .. } => self.flat_width,
        }
    }

    pub fn total_width(&self) -> usize {
        self.carriers.iter().map(|c| self.width_of(c)).sum()
    }
}

/// Blocks in row-major grid order; pairs in row-major pixel order within a
/// noisy block, sub-blocks in row-major order within a flat block.
pub fn plan_carriers(map: &RegionMap) -> CarrierPlan {
    let p = &map.params;
    let (n, m) = (p.n, p.m);
    let mut carriers = Vec::new();
    for by in 0..map.blocks_y {
        for bx in 0..map.blocks_x {
            let (x0, y0) = (bx * n, by * n);
            if map.is_flat(bx, by) {
                for sy in 0..n / m {
                    for sx in 0..n / m {
                        carriers.push(Carrier::Flat {
                            origin: (x0 + sx * m, y0 + sy * m),
                        });
                    }
                }
            } else {
                let at = |k: usize| (x0 + k % n, y0 + k / n);
                for k in 0..n * n / 2 {
                    carriers.push(Carrier::Pair {
                        first: at(2 * k),
                        second: at(2 * k + 1),
                    });
                }
            }
        }
    }
    CarrierPlan {
        carriers,
        m,
        flat_width: p.flat_bits.carrier_width(m),
    }
}
