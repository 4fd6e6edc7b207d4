//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use adastego::baselines::{lsb_replace_embed, BaselineOrder};
use adastego::codec::bits::{frame, HEADER_BITS};
use adastego::codec::{embed_flat_block, extract_flat_block, max_message_len, EmbedMatrix};
use adastego::stats::{block_difference, box_smooth, psnr};
use adastego::steganalysis::{
    chi_square_attack, cooc_distortion, regularized_lower_gamma, rs_attack,
};
use adastego::synth::{flat_gradient, natural_cover, uniform_noise, CoverStyle, Sampler};
use adastego::{
    capacity, classify, embed, extract, FlatBitsMode, Image, Offset, SegParams, StegoKey,
};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn within_budget(t: Duration, secs: f64) -> bool {
    t.as_secs_f64() < secs
}

fn golden_example() -> Outcome {
    let start = Instant::now();
    const COVER: [[u8; 6]; 6] = [
        [78, 78, 79, 80, 82, 83],
        [78, 79, 79, 81, 82, 84],
        [79, 81, 82, 81, 83, 85],
        [80, 83, 83, 83, 84, 85],
        [82, 83, 84, 85, 86, 85],
        [83, 84, 85, 86, 88, 88],
    ];
    let cover = Image::from_fn(6, 6, |x, y| COVER[y][x]);
    let cells = [
        Some(0),
        Some(6),
        Some(5),
        Some(3),
        Some(1),
        Some(2),
        None,
        Some(7),
        Some(4),
    ];
    let a = EmbedMatrix::from_cells(3, cells.to_vec()).expect("matrix A is valid");
    let chunks = [0b001, 0b101, 0b100, 0b010];
    let origins = [(0, 0), (3, 0), (0, 3), (3, 3)];
    let mut stego = cover.clone();
    for (&o, &c) in origins.iter().zip(&chunks) {
        let e = embed_flat_block(&cover, o, c, &a, FlatBitsMode::PositionOnly);
        stego.set(e.x, e.y, e.value);
    }
    let mut changed = vec![];
    let mut unit = true;
    for y in 0..6 {
        for x in 0..6 {
            let (c, s) = (cover.get(x, y), stego.get(x, y));
            if c != s {
                unit &= c.abs_diff(s) == 1;
                changed.push((y + 1, x + 1));
            }
        }
    }
    changed.sort();
    let back: Vec<u32> = origins
        .iter()
        .filter_map(|&o| extract_flat_block(&cover, &stego, o, &a, FlatBitsMode::PositionOnly).ok())
        .collect();
    let t = start.elapsed();
    let pass = changed == [(1, 6), (2, 2), (5, 6), (6, 3)]
        && unit
        && back == chunks
        && within_budget(t, 1.0);
    outcome(
        pass,
        format!(
            "changed cells {changed:?}, unit steps {unit}, bits recovered {}, {t:.2?}",
            back == chunks
        ),
    )
}

fn capacity_claim() -> Outcome {
    let cover = Image::from_fn(12, 12, |x, _| if x % 2 == 0 { 0 } else { 255 });
    let map = classify(&cover, &SegParams::default()).expect("classifies");
    let bits = capacity(&map);
    let bpp = bits as f64 / cover.len() as f64;
    outcome(
        bits == 216 && map.noisy_count() == 4 && bpp == 1.5,
        format!("{bits} bits on 12x12 all-noisy = {bpp} bpp"),
    )
}

fn round_trip() -> Outcome {
    let start = Instant::now();
    let mut s = Sampler::new(0x5EED);
    let (mut ok, mut total) = (0, 0);
    for i in 0..200 {
        let style = CoverStyle {
            texture: s.range(0.0, 16.0),
            noise: s.range(0.0, 2.0),
            stretch_levels: if s.bit() {
                Some(150 + s.below(100) as u32)
            } else {
                None
            },
        };
        let cover = if i % 10 == 9 {
            uniform_noise(s.below(u64::MAX), 64, 64)
        } else {
            natural_cover(s.below(u64::MAX), 64, 64, style)
        };
        for mode in [FlatBitsMode::PositionOnly, FlatBitsMode::PositionSign] {
            let p = SegParams {
                flat_bits: mode,
                ..SegParams::default()
            };
            let cap = capacity(&classify(&cover, &p).expect("classifies"));
            let len = ((0.9 * cap as f64) as usize).saturating_sub(HEADER_BITS) / 8;
            for key in [0, 1 + s.below(u64::MAX - 1)] {
                let msg = s.bytes(len);
                total += 1;
                let got = embed(&cover, &msg, StegoKey(key), &p)
                    .and_then(|st| extract(&cover, &st, StegoKey(key), &p));
                if got.as_deref() == Ok(&msg[..]) {
                    ok += 1;
                }
            }
        }
    }
    let t = start.elapsed();
    outcome(
        ok == total && within_budget(t, 30.0),
        format!("{ok}/{total} exact recoveries, {t:.2?}"),
    )
}

fn analytic_psnr() -> Outcome {
    let cover = uniform_noise(51, 512, 512);
    let bits = Sampler::new(52).bits(cover.len());
    let stego = lsb_replace_embed(&cover, &bits, BaselineOrder::Sequential).expect("fits");
    let v = psnr(&cover, &stego).expect("same dims");
    outcome((v - 51.14).abs() <= 0.15, format!("PSNR {v:.3} dB"))
}

fn natural(seed: u64, side: usize) -> Image {
    natural_cover(seed, side, side, CoverStyle::default())
}

/// Random message of the proposed method's maximum length.
fn full_message(cover: &Image, p: &SegParams, seed: u64) -> Vec<u8> {
    let len = max_message_len(cover, p).expect("classifies");
    Sampler::new(seed).bytes(len)
}

fn psnr_ordering() -> Outcome {
    let start = Instant::now();
    let p = SegParams::default();
    let mut wins = 0;
    let mut gap = 0.0;
    for seed in 1..=20u64 {
        let cover = natural(1000 + seed, 256);
        let msg = full_message(&cover, &p, seed);
        let ours = embed(&cover, &msg, StegoKey(seed), &p).expect("fits");
        let lsb = lsb_replace_embed(&cover, &frame(&msg), BaselineOrder::Sequential).expect("fits");
        let (a, b) = (psnr(&cover, &ours).unwrap(), psnr(&cover, &lsb).unwrap());
        gap += a - b;
        wins += (a > b) as usize;
    }
    let t = start.elapsed();
    outcome(
        wins >= 18 && within_budget(t, 60.0),
        format!(
            "proposed ahead on {wins}/20, mean margin {:.2} dB, {t:.2?}",
            gap / 20.0
        ),
    )
}

fn chi_square_separation() -> Outcome {
    let p = SegParams::default();
    let covers = 12u64;
    let (mut full, mut clean, mut ours) = (0, 0, 0);
    for seed in 0..covers {
        let cover = natural(2000 + seed, 256);
        let bits = Sampler::new(seed).bits(cover.len());
        let lsb = lsb_replace_embed(&cover, &bits, BaselineOrder::Sequential).expect("fits");
        let msg = full_message(&cover, &p, seed);
        let st = embed(&cover, &msg, StegoKey(seed + 1), &p).expect("fits");
        let est = |img: &Image| {
            chi_square_attack(img)
                .map(|r| r.estimate)
                .unwrap_or(f64::NAN)
        };
        full += (est(&lsb) > 0.95) as usize;
        clean += (est(&cover) < 0.10) as usize;
        ours += (est(&st) < 0.50) as usize;
    }
    let need = (0.9 * covers as f64).ceil() as usize;
    outcome(
        full >= need && clean >= need && ours >= need,
        format!("LSB full rate p>0.95 {full}/{covers}, cover p<0.10 {clean}/{covers}, proposed p<0.50 {ours}/{covers}"),
    )
}

fn rs_separation() -> Outcome {
    let p = SegParams::default();
    let covers = 10u64;
    let rates = [0.0, 0.25, 0.5, 1.0];
    let (mut in_band, mut worst, mut ours) = (0, 0.0f64, 0);
    for seed in 0..covers {
        let cover = natural(3000 + seed, 512);
        let order = BaselineOrder::keyed(StegoKey(seed + 7)).unwrap();
        let mut s = Sampler::new(seed);
        for rate in rates {
            let bits = s.bits((rate * cover.len() as f64) as usize);
            let stego = lsb_replace_embed(&cover, &bits, order).expect("fits");
            let est = rs_attack(&stego).map(|r| r.estimate).unwrap_or(f64::NAN);
            let err = (est - rate).abs();
            worst = worst.max(if err.is_nan() { f64::INFINITY } else { err });
            in_band += (err <= 0.10) as usize;
        }
        let st = embed(
            &cover,
            &full_message(&cover, &p, seed),
            StegoKey(seed + 1),
            &p,
        )
        .expect("fits");
        ours += rs_attack(&st).map(|r| r.estimate < 0.05).unwrap_or(false) as usize;
    }
    let cases = covers as usize * rates.len();
    outcome(
        in_band == cases && ours as f64 >= 0.9 * covers as f64,
        format!("LSB rate within 0.10 in {in_band}/{cases} (worst {worst:.3}), proposed below 0.05 on {ours}/{covers}"),
    )
}

fn second_order_distortion() -> Outcome {
    let p = SegParams::default();
    let mut hits = 0;
    let mut ratios = vec![];
    for seed in 0..10u64 {
        let cover = flat_gradient(4000 + seed, 256, 256, 0.6);
        let msg = full_message(&cover, &p, seed);
        let ours = embed(&cover, &msg, StegoKey(seed + 1), &p).expect("fits");
        let lsb = lsb_replace_embed(&cover, &frame(&msg), BaselineOrder::Sequential).expect("fits");
        let ratio = cooc_distortion(&cover, &ours, Offset::RIGHT).unwrap()
            / cooc_distortion(&cover, &lsb, Offset::RIGHT).unwrap();
        hits += (ratio <= 0.5) as usize;
        ratios.push(ratio);
    }
    let max = ratios.iter().cloned().fold(0.0, f64::max);
    outcome(
        hits >= 9,
        format!("ratio <= 0.5 in {hits}/10 trials, largest {max:.3}"),
    )
}

/// Sum over 1-based rows i and columns j of |B(i+1,j) - B(i,j)|^r plus
/// |B(i,j+1) - B(i,j)|^r.
fn naive_difference(b: &[Vec<i64>], r: u32) -> u128 {
    let n = b.len();
    let mut d1 = 0u128;
    let mut d2 = 0u128;
    for i in 1..n {
        for j in 1..=n {
            d1 += (b[i][j - 1] - b[i - 1][j - 1]).unsigned_abs().pow(r) as u128;
        }
    }
    for i in 1..=n {
        for j in 1..n {
            d2 += (b[i - 1][j] - b[i - 1][j - 1]).unsigned_abs().pow(r) as u128;
        }
    }
    d1 + d2
}

fn naive_smooth(px: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (h, w) = (px.len() as i64, px[0].len() as i64);
    let mut out = vec![vec![0; w as usize]; h as usize];
    for y in 0..h {
        for x in 0..w {
            let mut sum = 0;
            for yy in y - 1..=y + 1 {
                for xx in x - 1..=x + 1 {
                    sum += px[yy.clamp(0, h - 1) as usize][xx.clamp(0, w - 1) as usize];
                }
            }
            out[y as usize][x as usize] = (sum + 4).div_euclid(9);
        }
    }
    out
}

fn oracles() -> Outcome {
    let mut s = Sampler::new(99);
    let (mut diff_ok, mut smooth_ok) = (0, 0);
    for k in 0..1000 {
        let spread = [2u64, 16, 256][k % 3];
        let base = s.below(256 - spread + 1);
        let flat: Vec<u8> = (0..64).map(|_| (base + s.below(spread)) as u8).collect();
        let rows: Vec<Vec<i64>> = flat
            .chunks(8)
            .map(|r| r.iter().map(|&v| v as i64).collect())
            .collect();
        let r = 1 + (k % 4) as u32;
        if block_difference(&flat, 8, r) == Ok(naive_difference(&rows, r)) {
            diff_ok += 1;
        }
        let img = Image::new(8, 8, flat).unwrap();
        let want: Vec<u8> = naive_smooth(&rows)
            .concat()
            .iter()
            .map(|&v| v as u8)
            .collect();
        if box_smooth(&img).pixels() == &want[..] {
            smooth_ok += 1;
        }
    }
    let mut worst = 0.0f64;
    for i in 0..=400 {
        let x = i as f64 * 0.1;
        let got = regularized_lower_gamma(1.0, x).unwrap_or(f64::NAN);
        let err = (got - (1.0 - (-x).exp())).abs();
        worst = if err.is_nan() {
            f64::INFINITY
        } else {
            worst.max(err)
        };
    }
    outcome(
        diff_ok == 1000 && smooth_ok == 1000 && worst <= 1e-8,
        format!(
            "difference {diff_ok}/1000, smoothing {smooth_ok}/1000, P(1,x) max error {worst:.1e}"
        ),
    )
}

fn sign_balance() -> Outcome {
    let p = SegParams {
        flat_bits: FlatBitsMode::PositionSign,
        ..SegParams::default()
    };
    let (mut up, mut down, mut carriers) = (0i64, 0i64, 0usize);
    for seed in 0..2u64 {
        let cover = flat_gradient(5000 + seed, 512, 512, 0.6);
        let map = classify(&cover, &p).unwrap();
        let msg = full_message(&cover, &p, seed);
        let stego = embed(&cover, &msg, StegoKey(seed + 1), &p).unwrap();
        let n = p.n;
        for (i, (&c, &s)) in cover.pixels().iter().zip(stego.pixels()).enumerate() {
            let (x, y) = (i % cover.width(), i / cover.width());
            let (bx, by) = (x / n, y / n);
            if bx >= map.blocks_x || by >= map.blocks_y || !map.is_flat(bx, by) {
                continue;
            }
            match s as i32 - c as i32 {
                1 | -2 => up += 1,
                -1 | 2 => down += 1,
                _ => {}
            }
        }
        carriers += map.flat_count() * (n / p.m).pow(2);
    }
    let total = up + down;
    let skew = (up - down).abs() as f64 / total as f64;
    outcome(
        total >= 10_000 && skew < 0.05,
        format!(
            "{up} up / {down} down over {carriers} flat carriers, imbalance {:.2}%",
            100.0 * skew
        ),
    )
}

fn cli_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_adastego");
    let dir = tempfile::tempdir().expect("temp dir");
    let cover = natural(6000, 96);
    std::fs::write(dir.path().join("c.pgm"), adastego::write_pgm(&cover)).unwrap();
    std::fs::write(dir.path().join("m.bin"), Sampler::new(6).bytes(200)).unwrap();
    let run = |sub: &str| -> Option<(Vec<u8>, Vec<u8>, Vec<u8>)> {
        let out_dir = dir.path().join(sub);
        std::fs::create_dir_all(&out_dir).ok()?;
        let run_once = || {
            Command::new(bin)
                .current_dir(dir.path())
                .args([
                    "embed",
                    "--cover",
                    "c.pgm",
                    "--message",
                    "m.bin",
                    "--key",
                    "77",
                ])
                .args(["--flat-bits", "4", "--out"])
                .arg(Path::new(sub).join("s.pgm"))
                .output()
                .ok()
        };
        let o = run_once()?;
        o.status.success().then_some(())?;
        Some((
            std::fs::read(out_dir.join("s.pgm")).ok()?,
            std::fs::read(out_dir.join("s.pgm.meta.json")).ok()?,
            o.stdout,
        ))
    };
    match (run("a"), run("b"), run("a")) {
        (Some(a), Some(b), Some(a2)) => {
            let pass = a.0 == b.0 && a.1 == b.1 && a == a2;
            outcome(
                pass,
                format!(
                    "stego {} bytes, sidecar {} bytes, identical across 3 runs: {pass}",
                    a.0.len(),
                    a.1.len()
                ),
            )
        }
        _ => outcome(false, "embed invocation failed".to_string()),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("golden worked example", golden_example),
        ("capacity 1.5 bpp on all-noisy 12x12", capacity_claim),
        ("round-trip 200 covers x modes x keys", round_trip),
        ("analytic LSB PSNR", analytic_psnr),
        ("PSNR ordering vs LSB", psnr_ordering),
        ("chi-square separation", chi_square_separation),
        ("RS separation", rs_separation),
        ("co-occurrence distortion vs LSB", second_order_distortion),
        ("oracle equivalence", oracles),
        ("sign balance", sign_balance),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        failed += !o.pass as usize;
        println!(
            "{} criterion {:>2} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
