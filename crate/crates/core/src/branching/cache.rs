//! On-disk cache of formal characters.
//!
//! File layout (all integers little-endian):
//!
//! ```text
//! magic    8 bytes   "ADJCHAR\n"
//! version  u16       currently 1
//! label    u8 len + ASCII bytes, e.g. "C7"
//! rank     u16
//! lambda   rank x i32
//! count    u32
//! entries  count x (rank x i32 weight, u32 len, len bytes big-endian multiplicity)
//! ```
//!
//! Entries are written in increasing weight order, so a given character
//! always serializes to the same bytes.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::{BigInt, Sign};

use super::FormalCharacter;
use crate::error::{Error, Result};

const MAGIC: &[u8; 8] = b"ADJCHAR\n";
const VERSION: u16 = 1;

#[derive(Clone, Debug)]
pub struct CharacterCache {
    dir: PathBuf,
}

impl CharacterCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(CharacterCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, label: &str, lambda: &[i64]) -> PathBuf {
        let coords: Vec<String> = lambda.iter().map(i64::to_string).collect();
        self.dir.join(format!("{label}_{}.chr", coords.join("_")))
    }

    pub fn load(&self, label: &str, lambda: &[i64]) -> Result<Option<FormalCharacter>> {
        let path = self.path_for(label, lambda);
        if !path.exists() {
            return Ok(None);
        }
        let bytes = fs::read(&path)?;
        let (l, lam, chi) = decode(&bytes)?;
        if l != label || lam != lambda {
            return Err(Error::Parse(format!("{} holds a different character", path.display())));
        }
        Ok(Some(chi))
    }

    pub fn store(&self, label: &str, lambda: &[i64], chi: &FormalCharacter) -> Result<()> {
        let path = self.path_for(label, lambda);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, encode(label, lambda, chi)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

fn i32_of(x: i64) -> Result<i32> {
    i32::try_from(x).map_err(|_| Error::rejected("weight coordinate exceeds the cache format"))
}

pub fn encode(label: &str, lambda: &[i64], chi: &FormalCharacter) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    let lb = label.as_bytes();
    out.push(u8::try_from(lb.len()).map_err(|_| Error::rejected("label too long"))?);
    out.extend_from_slice(lb);
    out.extend_from_slice(&(chi.rank() as u16).to_le_bytes());
    for &x in lambda {
        out.extend_from_slice(&i32_of(x)?.to_le_bytes());
    }
    out.extend_from_slice(&(chi.entries().len() as u32).to_le_bytes());
    for (w, m) in chi.entries() {
        for &x in w {
            out.extend_from_slice(&i32_of(x)?.to_le_bytes());
        }
        let (_, mag) = m.to_bytes_be();
        out.extend_from_slice(&(mag.len() as u32).to_le_bytes());
        out.extend_from_slice(&mag);
    }
    Ok(out)
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| Error::Parse("truncated character file".into()))?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn i32(&mut self) -> Result<i64> {
        Ok(i32::from_le_bytes(self.take(4)?.try_into().unwrap()) as i64)
    }
}

pub fn decode(bytes: &[u8]) -> Result<(String, Vec<i64>, FormalCharacter)> {
    let mut r = Reader { buf: bytes, pos: 0 };
    if r.take(8)? != MAGIC {
        return Err(Error::Parse("not a character file".into()));
    }
    let version = r.u16()?;
    if version != VERSION {
        return Err(Error::Parse(format!("unsupported character file version {version}")));
    }
    let len = r.take(1)?[0] as usize;
    let label = String::from_utf8(r.take(len)?.to_vec()).map_err(|_| Error::Parse("bad label".into()))?;
    let rank = r.u16()? as usize;
    let lambda = (0..rank).map(|_| r.i32()).collect::<Result<Vec<_>>>()?;
    let count = r.u32()? as usize;
    let mut entries = BTreeMap::new();
    for _ in 0..count {
        let w = (0..rank).map(|_| r.i32()).collect::<Result<Vec<_>>>()?;
        let len = r.u32()? as usize;
        let m = BigInt::from_bytes_be(Sign::Plus, r.take(len)?);
        entries.insert(w, m);
    }
    if r.pos != bytes.len() {
        return Err(Error::Parse("trailing bytes in character file".into()));
    }
    Ok((label, lambda, FormalCharacter::from_entries(rank, entries)?))
}
