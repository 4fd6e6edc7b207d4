//! Deterministic synthetic covers for experiments and tests.
//!
//! Natural-like covers are built from a smooth gradient, a few low-frequency
//! shading waves, band-limited texture and per-pixel sensor noise. An
//! optional contrast stretch quantizes to fewer levels first and rescales to
//! `0..=255`, leaving the comb-shaped histogram typical of processed photos.

use crate::codec::Prng;
use crate::pixmap::Image;
use std::f64::consts::TAU;

/// Uniform and approximately normal samples on top of [`Prng`].
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: Prng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: Prng::new(seed),
        }
    }

    /// Uniform in `[0, 1)` with 53 bits of resolution.
    pub fn uniform(&mut self) -> f64 {
        let hi = (self.rng.next_u32() as u64) << 21;
        let lo = (self.rng.next_u32() >> 11) as u64;
        (hi | lo) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Irwin-Hall approximation to a standard normal.
    pub fn gauss(&mut self) -> f64 {
        (0..12).map(|_| self.uniform()).sum::<f64>() - 6.0
    }

    pub fn bit(&mut self) -> bool {
        self.rng.next_u32() & 1 == 1
    }

    pub fn byte(&mut self) -> u8 {
        (self.rng.next_u32() >> 24) as u8
    }

    pub fn below(&mut self, n: u64) -> u64 {
        ((self.rng.next_u32() as u64) << 32 | self.rng.next_u32() as u64) % n
    }

    pub fn bits(&mut self, n: usize) -> Vec<bool> {
        (0..n).map(|_| self.bit()).collect()
    }

    pub fn bytes(&mut self, n: usize) -> Vec<u8> {
        (0..n).map(|_| self.byte()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverStyle {
    /// Standard deviation of the band-limited texture, in gray levels.
    pub texture: f64,
    /// Standard deviation of the per-pixel noise.
    pub noise: f64,
    /// Quantize to this many levels before stretching back to 0..=255.
    pub stretch_levels: Option<u32>,
}

impl Default for CoverStyle {
    fn default() -> Self {
        Self {
            texture: 3.0,
            noise: 1.0,
            stretch_levels: Some(230),
        }
    }
}

fn blur3(field: &[f64], w: usize, h: usize) -> Vec<f64> {
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let mut s = 0.0;
            for dy in -1isize..=1 {
                for dx in -1isize..=1 {
                    let xx = (x as isize + dx).clamp(0, w as isize - 1) as usize;
                    let yy = (y as isize + dy).clamp(0, h as isize - 1) as usize;
                    s += field[yy * w + xx];
                }
            }
            out[y * w + x] = s / 9.0;
        }
    }
    out
}

/// Natural-looking cover of the given size.
pub fn natural_cover(seed: u64, width: usize, height: usize, style: CoverStyle) -> Image {
    let (w, h) = (width, height);
    let mut s = Sampler::new(seed);
    let base = s.range(70.0, 170.0);
    let gx = s.range(-40.0, 40.0) / w as f64;
    let gy = s.range(-40.0, 40.0) / h as f64;
    let waves: Vec<[f64; 4]> = (0..3)
        .map(|_| {
            [
                s.range(5.0, 20.0),
                s.range(0.5, 3.0) * TAU / w as f64,
                s.range(0.5, 3.0) * TAU / h as f64,
                s.range(0.0, TAU),
            ]
        })
        .collect();
    let white: Vec<f64> = (0..w * h).map(|_| s.gauss()).collect();
    let texture = blur3(&blur3(&white, w, h), w, h);
    let sd = (texture.iter().map(|v| v * v).sum::<f64>() / texture.len() as f64).sqrt();
    let scale = if sd > 0.0 { style.texture / sd } else { 0.0 };

    let mut pixels = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            let (xf, yf) = (x as f64, y as f64);
            let mut v = base + gx * xf + gy * yf;
            for [amp, fx, fy, phase] in &waves {
                v += amp * (fx * xf + fy * yf + phase).cos();
            }
            v += scale * texture[y * w + x] + style.noise * s.gauss();
            let v = v.clamp(0.0, 255.0);
            let g = match style.stretch_levels {
                Some(levels) if levels >= 2 => {
                    let top = (levels - 1) as f64;
                    ((v * top / 255.0).round() * 255.0 / top).round()
                }
                _ => v.round(),
            };
            pixels.push(g as u8);
        }
    }
    Image::new(w, h, pixels).expect("dimensions match pixel count")
}

/// Gentle linear ramp in a random direction with mild sensor noise. With
/// default segmentation parameters every block classifies as flat.
pub fn flat_gradient(seed: u64, width: usize, height: usize, noise: f64) -> Image {
    let mut s = Sampler::new(seed);
    let base = s.range(60.0, 180.0);
    let slope = s.range(0.05, 0.3);
    let angle = s.range(0.0, TAU);
    let (sx, sy) = (slope * angle.cos(), slope * angle.sin());
    let (cx, cy) = (width as f64 / 2.0, height as f64 / 2.0);
    Image::from_fn(width, height, |x, y| {
        let v = base + sx * (x as f64 - cx) + sy * (y as f64 - cy) + noise * s.gauss();
        v.round().clamp(0.0, 255.0) as u8
    })
}

/// Independent uniform gray values.
pub fn uniform_noise(seed: u64, width: usize, height: usize) -> Image {
    let mut s = Sampler::new(seed);
    Image::from_fn(width, height, |_, _| s.byte())
}
