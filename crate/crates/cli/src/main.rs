mod fail;
mod files;

use adastego::baselines::{lsb_extract, lsb_match_embed, lsb_replace_embed, BaselineOrder};
use adastego::codec::bits::{bits_to_bytes, frame, HEADER_BITS};
use adastego::codec::{max_message_len, StegoMeta};
use adastego::segmenter::{flat_code_bits, region_mask_image};
use adastego::stats::{cooccurrence, mse, psnr, render_cooc};
use adastego::steganalysis::{chi_square_attack, cooc_attack, rs_attack, AnalysisError};
use adastego::{
    capacity, classify, embed, extract, FlatBitsMode, Offset, Prng, SegParams, StegoKey,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fail::{Failure, Kind};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "adastego",
    version,
    about = "Adaptive grayscale steganography and steganalysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hide a message file in a cover image.
    Embed {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        message: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        key: u64,
        #[command(flatten)]
        seg: SegFlags,
    },
    /// Recover a message given the cover and the stego image.
    Extract {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        stego: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        key: Option<u64>,
        /// Sidecar JSON to take parameters from; explicit flags win.
        #[arg(long)]
        meta: Option<PathBuf>,
        #[command(flatten)]
        seg: SegFlags,
    },
    /// Report the gross embedding capacity of a cover.
    Capacity {
        #[arg(long)]
        cover: PathBuf,
        #[command(flatten)]
        seg: SegFlags,
    },
    /// Write the flat/noisy block mask of a cover (flat = white).
    Segment {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        seg: SegFlags,
    },
    /// Peak signal-to-noise ratio between two images.
    Psnr {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Render the co-occurrence matrix of an image as a 256x256 image.
    Cooc {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        dx: isize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        dy: isize,
    },
    /// Run a steganalysis attack.
    Attack {
        #[arg(long, value_enum)]
        method: Method,
        /// Image under test (chisq, rs).
        #[arg(long)]
        image: Option<PathBuf>,
        /// Cover and stego (cooc).
        #[arg(long)]
        cover: Option<PathBuf>,
        #[arg(long)]
        stego: Option<PathBuf>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        dx: isize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        dy: isize,
    },
    /// LSB replacement and LSB matching reference embedders.
    Baseline {
        #[arg(value_enum)]
        kind: BaselineKind,
        #[command(subcommand)]
        action: BaselineAction,
    },
}

#[derive(Subcommand)]
enum BaselineAction {
    Embed {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        message: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        order: OrderFlags,
    },
    Extract {
        #[arg(long)]
        stego: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        order: OrderFlags,
    },
}

#[derive(Args)]
struct OrderFlags {
    #[arg(long, value_enum, default_value_t = OrderName::Sequential)]
    order: OrderName,
    /// Seeds the keyed order and the LSB-matching directions.
    #[arg(long, default_value_t = 0)]
    key: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderName {
    Sequential,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaselineKind {
    Lsb,
    Lsbm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Chisq,
    Rs,
    Cooc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OnOff {
    On,
    Off,
}

/// Segmentation flags; unset ones fall back to the sidecar or the defaults.
#[derive(Args)]
struct SegFlags {
    /// Block side [default: 6]
    #[arg(long)]
    n: Option<usize>,
    /// Difference exponent [default: 4]
    #[arg(long)]
    r: Option<u32>,
    /// Flatness threshold [default: 2500]
    #[arg(long = "T")]
    t: Option<u64>,
    /// Flat sub-block side [default: 3]
    #[arg(long)]
    m: Option<usize>,
    /// Bits per flat sub-block: floor(log2 m^2), or one more to use the sign [default: 3]
    #[arg(long = "flat-bits")]
    flat_bits: Option<usize>,
    /// Smooth before classifying [default: on]
    #[arg(long, value_enum)]
    smooth: Option<OnOff>,
}

impl SegFlags {
    fn apply(&self, base: SegParams) -> Result<SegParams, Failure> {
        let mut p = base;
        if let Some(n) = self.n {
            p.n = n;
        }
        if let Some(r) = self.r {
            p.r = r;
        }
        if let Some(t) = self.t {
            p.threshold = t as u128;
        }
        if let Some(m) = self.m {
            p.m = m;
        }
        if let Some(s) = self.smooth {
            p.smooth = s == OnOff::On;
        }
        if let Some(bits) = self.flat_bits {
            let b = flat_code_bits(p.m.max(1));
            p.flat_bits = if bits == b {
                FlatBitsMode::PositionOnly
            } else if bits == b + 1 {
                FlatBitsMode::PositionSign
            } else {
                return Err(Failure::args(format!(
                    "--flat-bits must be {b} or {} for m = {}",
                    b + 1,
                    p.m
                )));
            };
        }
        p.validate()?;
        Ok(p)
    }
}

fn psnr_value(a: &adastego::Image, b: &adastego::Image) -> Result<Value, Failure> {
    let v = psnr(a, b)?;
    Ok(if v.is_finite() { json!(v) } else { Value::Null })
}

fn order_of(flags: &OrderFlags) -> Result<BaselineOrder, Failure> {
    match flags.order {
        OrderName::Sequential => Ok(BaselineOrder::Sequential),
        OrderName::Random => Ok(BaselineOrder::keyed(StegoKey(flags.key))?),
    }
}

fn run(cli: Cli) -> Result<Value, Failure> {
    match cli.command {
        Command::Embed {
            cover,
            message,
            out,
            key,
            seg,
        } => {
            let p = seg.apply(SegParams::default())?;
            let img = files::read_image(&cover)?;
            let msg = files::read_bytes(&message)?;
            let key = StegoKey(key);
            let stego = embed(&img, &msg, key, &p)?;
            let meta_path = files::sidecar_path(&out);
            files::write_image(&out, &stego)?;
            files::write_atomic(&meta_path, StegoMeta::new(&p, key).to_json().as_bytes())?;
            Ok(json!({
                "stego": out.display().to_string(),
                "meta": meta_path.display().to_string(),
                "message_bytes": msg.len(),
                "used_bits": HEADER_BITS + 8 * msg.len(),
                "capacity_bits": capacity(&classify(&img, &p)?),
                "psnr": psnr_value(&img, &stego)?,
            }))
        }
        Command::Extract {
            cover,
            stego,
            out,
            key,
            meta,
            seg,
        } => {
            let mut base = SegParams::default();
            if let Some(path) = &meta {
                let text = String::from_utf8(files::read_bytes(path)?)
                    .map_err(|e| Failure::format(format!("{}: {e}", path.display())))?;
                let sidecar = StegoMeta::from_json(&text)
                    .map_err(|e| Failure::format(format!("{}: {e}", path.display())))?;
                let k = StegoKey(key.unwrap_or(0));
                if !sidecar.matches_key(k) {
                    if key.is_some() {
                        eprintln!(
                            "adastego: warning: --key does not match the sidecar fingerprint"
                        );
                    } else {
                        return Err(Failure::args(
                            "the sidecar was written with a nonzero key; pass --key",
                        ));
                    }
                }
                base = sidecar.params();
            }
            let p = seg.apply(base)?;
            let cover_img = files::read_image(&cover)?;
            let stego_img = files::read_image(&stego)?;
            let msg = extract(&cover_img, &stego_img, StegoKey(key.unwrap_or(0)), &p)?;
            files::write_atomic(&out, &msg)?;
            Ok(json!({"message": out.display().to_string(), "message_bytes": msg.len()}))
        }
        Command::Capacity { cover, seg } => {
            let p = seg.apply(SegParams::default())?;
            let img = files::read_image(&cover)?;
            Ok(json!({"capacity_bits": capacity(&classify(&img, &p)?)}))
        }
        Command::Segment { cover, out, seg } => {
            let p = seg.apply(SegParams::default())?;
            let img = files::read_image(&cover)?;
            let map = classify(&img, &p)?;
            files::write_image(&out, &region_mask_image(&map, img.width(), img.height()))?;
            Ok(json!({
                "mask": out.display().to_string(),
                "flat_blocks": map.flat_count(),
                "noisy_blocks": map.noisy_count(),
                "capacity_bits": capacity(&map),
                "max_message_bytes": max_message_len(&img, &p)?,
            }))
        }
        Command::Psnr { a, b } => {
            let (a, b) = (files::read_image(&a)?, files::read_image(&b)?);
            Ok(json!({"psnr": psnr_value(&a, &b)?, "mse": mse(&a, &b)?}))
        }
        Command::Cooc { image, out, dx, dy } => {
            let img = files::read_image(&image)?;
            let c = cooccurrence(&img, Offset::new(dx, dy)?)?;
            files::write_image(&out, &render_cooc(&c))?;
            Ok(json!({
                "matrix": out.display().to_string(),
                "dx": dx,
                "dy": dy,
                "pairs": c.total(),
                "max_entry": c.max_entry(),
            }))
        }
        Command::Attack {
            method,
            image,
            cover,
            stego,
            dx,
            dy,
        } => {
            let need = |p: Option<PathBuf>, flag: &str| {
                p.ok_or_else(|| Failure::args(format!("this method needs --{flag}")))
            };
            let report = match method {
                Method::Chisq => chi_square_attack(&files::read_image(&need(image, "image")?)?),
                Method::Rs => rs_attack(&files::read_image(&need(image, "image")?)?),
                Method::Cooc => {
                    let c = files::read_image(&need(cover, "cover")?)?;
                    let s = files::read_image(&need(stego, "stego")?)?;
                    cooc_attack(&c, &s, Offset::new(dx, dy)?)
                }
            };
            match report {
                Ok(r) => Ok(serde_json::to_value(&r).expect("report serializes")),
                Err(AnalysisError::Degenerate(why)) => Ok(json!({
                    "method": "rs",
                    "error": "degenerate",
                    "message": why,
                })),
                Err(e) => Err(e.into()),
            }
        }
        Command::Baseline { kind, action } => match action {
            BaselineAction::Embed {
                cover,
                message,
                out,
                order,
            } => {
                let img = files::read_image(&cover)?;
                let msg = files::read_bytes(&message)?;
                let bits = frame(&msg);
                let ord = order_of(&order)?;
                let stego = match kind {
                    BaselineKind::Lsb => lsb_replace_embed(&img, &bits, ord)?,
                    BaselineKind::Lsbm => {
                        let mut rng = Prng::from_key(StegoKey(order.key));
                        lsb_match_embed(&img, &bits, ord, &mut rng)?
                    }
                };
                files::write_image(&out, &stego)?;
                Ok(json!({
                    "stego": out.display().to_string(),
                    "message_bytes": msg.len(),
                    "used_bits": bits.len(),
                    "psnr": psnr_value(&img, &stego)?,
                }))
            }
            BaselineAction::Extract { stego, out, order } => {
                let img = files::read_image(&stego)?;
                let ord = order_of(&order)?;
                let header = lsb_extract(&img, HEADER_BITS, ord)
                    .map_err(|e| Failure::new(Kind::Corrupt, e.to_string()))?;
                let declared =
                    u32::from_be_bytes(bits_to_bytes(&header).try_into().expect("4 bytes"));
                let total = HEADER_BITS as u64 + 8 * declared as u64;
                if total > img.len() as u64 {
                    return Err(Failure::new(
                        Kind::Corrupt,
                        format!("header declares {declared} bytes, more than the image holds"),
                    ));
                }
                let bits = lsb_extract(&img, total as usize, ord)?;
                let msg = bits_to_bytes(&bits[HEADER_BITS..]);
                files::write_atomic(&out, &msg)?;
                Ok(json!({"message": out.display().to_string(), "message_bytes": msg.len()}))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Kind::Args.code() } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(f) => f.report(),
    }
}
