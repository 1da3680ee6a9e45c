//! Binary shell cache.
//!
//! Layout (little-endian): magic `LSHL`, format version `u32`, norm `u32`,
//! Golay fingerprint `u64`, count `u64`, then `24 * count` coordinates as
//! `i16`, then a SHA-256 trailer over everything before it.

use super::lattice::ShellVec;
use crate::error::{Error, Result};
use sha2::{Digest, Sha256};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

const MAGIC: &[u8; 4] = b"LSHL";
pub const FORMAT_VERSION: u32 = 1;
const CHUNK: usize = 1 << 16;

pub fn cache_path(dir: &Path, norm: u32) -> PathBuf {
    dir.join(format!("leech-shell-{norm}.bin"))
}

pub fn write_shell(path: &Path, norm: u32, fingerprint: u64, vectors: &[ShellVec]) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("tmp");
    {
        let mut f = BufWriter::new(File::create(&tmp)?);
        let mut hasher = Sha256::new();
        let mut header = Vec::with_capacity(28);
        header.extend_from_slice(MAGIC);
        header.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        header.extend_from_slice(&norm.to_le_bytes());
        header.extend_from_slice(&fingerprint.to_le_bytes());
        header.extend_from_slice(&(vectors.len() as u64).to_le_bytes());
        hasher.update(&header);
        f.write_all(&header)?;
        let mut buf = Vec::with_capacity(CHUNK * 48);
        for chunk in vectors.chunks(CHUNK) {
            buf.clear();
            for v in chunk {
                for &x in v {
                    buf.extend_from_slice(&(x as i16).to_le_bytes());
                }
            }
            hasher.update(&buf);
            f.write_all(&buf)?;
        }
        f.write_all(&hasher.finalize())?;
        f.flush()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Read a cache file. Returns `Ok(None)` when the file is absent or was
/// written for a different version, norm or code; corruption is an error.
pub fn read_shell(path: &Path, norm: u32, fingerprint: u64) -> Result<Option<Vec<ShellVec>>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut f = BufReader::with_capacity(1 << 20, file);
    let mut header = [0u8; 28];
    if f.read_exact(&mut header).is_err() || &header[0..4] != MAGIC {
        return Err(Error::Io(format!("{}: not a shell cache", path.display())));
    }
    let version = u32::from_le_bytes(header[4..8].try_into().unwrap());
    let file_norm = u32::from_le_bytes(header[8..12].try_into().unwrap());
    let fp = u64::from_le_bytes(header[12..20].try_into().unwrap());
    let count = u64::from_le_bytes(header[20..28].try_into().unwrap()) as usize;
    if version != FORMAT_VERSION || file_norm != norm || fp != fingerprint {
        return Ok(None);
    }
    let mut hasher = Sha256::new();
    hasher.update(header);
    let mut out = Vec::with_capacity(count);
    let mut buf = vec![0u8; CHUNK * 48];
    let mut left = count;
    while left > 0 {
        let n = left.min(CHUNK);
        let bytes = &mut buf[..n * 48];
        f.read_exact(bytes)
            .map_err(|e| Error::Io(format!("{}: truncated ({e})", path.display())))?;
        hasher.update(&*bytes);
        for rec in bytes.chunks_exact(48) {
            let mut v = [0i8; 24];
            for (k, pair) in rec.chunks_exact(2).enumerate() {
                let x = i16::from_le_bytes([pair[0], pair[1]]);
                v[k] = i8::try_from(x)
                    .map_err(|_| Error::Io(format!("{}: coordinate out of range", path.display())))?;
            }
            out.push(v);
        }
        left -= n;
    }
    let mut trailer = [0u8; 32];
    f.read_exact(&mut trailer)
        .map_err(|e| Error::Io(format!("{}: missing checksum ({e})", path.display())))?;
    if hasher.finalize().as_slice() != trailer {
        return Err(Error::Io(format!("{}: checksum mismatch", path.display())));
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = std::env::temp_dir().join(format!("coxnorm-cache-test-{}", std::process::id()));
        let path = cache_path(&dir, 4);
        let vs: Vec<ShellVec> = (0..1000)
            .map(|i| {
                let mut v = [0i8; 24];
                v[i % 24] = (i % 7) as i8 - 3;
                v
            })
            .collect();
        write_shell(&path, 4, 99, &vs).unwrap();
        assert_eq!(read_shell(&path, 4, 99).unwrap().unwrap(), vs);
        assert!(read_shell(&path, 4, 98).unwrap().is_none());
        assert!(read_shell(&path, 6, 99).unwrap().is_none());
        let mut bytes = std::fs::read(&path).unwrap();
        bytes[100] ^= 1;
        std::fs::write(&path, &bytes).unwrap();
        assert!(read_shell(&path, 4, 99).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
