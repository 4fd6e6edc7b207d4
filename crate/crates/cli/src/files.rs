use crate::fail::Failure;
use adastego::{read_pgm, write_pgm, Image};
use std::io::Write;
use std::path::{Path, PathBuf};

pub fn read_bytes(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::io(path, e))
}

pub fn read_image(path: &Path) -> Result<Image, Failure> {
    let bytes = read_bytes(path)?;
    read_pgm(&bytes).map_err(|e| Failure::format(format!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the destination directory and renames
/// it into place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, data: &[u8]) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Failure::io(path, e))?;
    tmp.write_all(data).map_err(|e| Failure::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Failure::io(path, e))?;
    tmp.persist(path).map_err(|e| Failure::io(path, e.error))?;
    Ok(())
}

pub fn write_image(path: &Path, img: &Image) -> Result<(), Failure> {
    write_atomic(path, &write_pgm(img))
}

/// Sidecar location for a stego image: `s.pgm` -> `s.pgm.meta.json`.
pub fn sidecar_path(stego: &Path) -> PathBuf {
    let mut name = stego.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}
