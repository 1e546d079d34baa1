//! Append-only checkpoint files for resumable sweeps.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! header : "BFEICKPT" | version u32 | job fingerprint u64 | chunk count u64
//! record : payload length u32 | payload | FNV-1a-64 of payload u64
//! payload: chunk u64 | scanned u64 | passed u64 | undefined u64 | best tally | threshold tally
//! tally  : present u8, then if 1:
//!          exact u8 | numerator i128 | denominator i128 | f64 bits u64
//!          | count u64 | balanced u64 | witness count u32 | witnesses u64…
//! ```
//!
//! Each record is synced to disk before the next chunk is reported done. A
//! record cut short by a crash is discarded on resume; a record whose
//! checksum does not match is an error.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::ExactValue;

use super::tally::{ChunkTally, Tally};

pub const MAGIC: &[u8; 8] = b"BFEICKPT";
pub const VERSION: u32 = 1;
const HEADER_LEN: u64 = 8 + 4 + 8 + 8;

pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub(crate) struct Checkpoint {
    file: File,
}

fn corrupt(path: &Path, reason: impl Into<String>) -> Error {
    Error::CorruptCheckpoint {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

impl Checkpoint {
    /// Opens `path`, creating it if missing, and returns the chunks already
    /// recorded in it.
    pub(crate) fn open(
        path: &Path,
        fingerprint: u64,
        chunks: u64,
    ) -> Result<(Self, BTreeMap<u64, ChunkTally>)> {
        let mut file = OpenOptions::new()
            .read(true)
            .write(true)
            .create(true)
            .truncate(false)
            .open(path)?;
        let mut bytes = Vec::new();
        file.read_to_end(&mut bytes)?;
        if bytes.is_empty() {
            let mut header = Vec::with_capacity(HEADER_LEN as usize);
            header.extend_from_slice(MAGIC);
            header.extend_from_slice(&VERSION.to_le_bytes());
            header.extend_from_slice(&fingerprint.to_le_bytes());
            header.extend_from_slice(&chunks.to_le_bytes());
            file.write_all(&header)?;
            file.sync_all()?;
            return Ok((Self { file }, BTreeMap::new()));
        }
        let (done, good_len) = parse(path, &bytes, fingerprint, chunks)?;
        if good_len < bytes.len() as u64 {
            file.set_len(good_len)?;
        }
        file.seek(SeekFrom::Start(good_len))?;
        Ok((Self { file }, done))
    }

    pub(crate) fn append(&mut self, chunk: u64, tally: &ChunkTally) -> Result<()> {
        let mut payload = Vec::new();
        for v in [chunk, tally.scanned, tally.passed, tally.undefined] {
            payload.extend_from_slice(&v.to_le_bytes());
        }
        encode_tally(&mut payload, tally.best.as_ref())?;
        encode_tally(&mut payload, tally.at_threshold.as_ref())?;
        let mut record = Vec::with_capacity(payload.len() + 12);
        record.extend_from_slice(&(payload.len() as u32).to_le_bytes());
        record.extend_from_slice(&payload);
        record.extend_from_slice(&fnv1a(&payload).to_le_bytes());
        self.file.write_all(&record)?;
        self.file.sync_data()?;
        Ok(())
    }
}

fn encode_tally(out: &mut Vec<u8>, t: Option<&Tally>) -> Result<()> {
    let Some(t) = t else {
        out.push(0);
        return Ok(());
    };
    out.push(1);
    let (exact, num, den) = match t.value.rational() {
        Some(r) => {
            let num = r.numer().to_i128();
            let den = r.denom().to_i128();
            match (num, den) {
                (Some(a), Some(b)) => (1u8, a, b),
                _ => {
                    return Err(Error::InvalidRational(format!(
                        "{r} does not fit a checkpoint record"
                    )))
                }
            }
        }
        None => (0u8, 0, 1),
    };
    out.push(exact);
    out.extend_from_slice(&num.to_le_bytes());
    out.extend_from_slice(&den.to_le_bytes());
    out.extend_from_slice(&t.value.to_f64().to_bits().to_le_bytes());
    out.extend_from_slice(&t.count.to_le_bytes());
    out.extend_from_slice(&t.balanced.to_le_bytes());
    out.extend_from_slice(&(t.witnesses.len() as u32).to_le_bytes());
    for w in &t.witnesses {
        out.extend_from_slice(&w.to_le_bytes());
    }
    Ok(())
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        let s = self.bytes.get(self.pos..self.pos + n)?;
        self.pos += n;
        Some(s)
    }

    fn u8(&mut self) -> Option<u8> {
        self.take(1).map(|b| b[0])
    }

    fn u32(&mut self) -> Option<u32> {
        self.take(4)
            .map(|b| u32::from_le_bytes(b.try_into().unwrap()))
    }

    fn u64(&mut self) -> Option<u64> {
        self.take(8)
            .map(|b| u64::from_le_bytes(b.try_into().unwrap()))
    }

    fn i128(&mut self) -> Option<i128> {
        self.take(16)
            .map(|b| i128::from_le_bytes(b.try_into().unwrap()))
    }
}

fn decode_tally(c: &mut Cursor) -> Option<Option<Tally>> {
    if c.u8()? == 0 {
        return Some(None);
    }
    let exact = c.u8()?;
    let num = c.i128()?;
    let den = c.i128()?;
    let float = f64::from_bits(c.u64()?);
    let value = if exact == 1 {
        if den == 0 {
            return None;
        }
        ExactValue::exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    } else {
        ExactValue::float_only(float)
    };
    let count = c.u64()?;
    let balanced = c.u64()?;
    let k = c.u32()? as usize;
    let mut witnesses = Vec::with_capacity(k.min(1 << 16));
    for _ in 0..k {
        witnesses.push(c.u64()?);
    }
    Some(Some(Tally {
        value,
        count,
        balanced,
        witnesses,
    }))
}

/// Returns the recorded chunks and the length of the valid prefix.
fn parse(
    path: &Path,
    bytes: &[u8],
    fingerprint: u64,
    chunks: u64,
) -> Result<(BTreeMap<u64, ChunkTally>, u64)> {
    let mut c = Cursor { bytes, pos: 0 };
    if c.take(8) != Some(MAGIC.as_slice()) {
        return Err(corrupt(path, "missing magic header"));
    }
    match c.u32() {
        Some(VERSION) => {}
        Some(v) => return Err(corrupt(path, format!("unsupported version {v}"))),
        None => return Err(corrupt(path, "truncated header")),
    }
    if c.u64() != Some(fingerprint) {
        return Err(corrupt(path, "checkpoint was written for a different job"));
    }
    if c.u64() != Some(chunks) {
        return Err(corrupt(path, "chunk count differs from the job"));
    }
    let mut done = BTreeMap::new();
    let mut good = c.pos;
    loop {
        let start = c.pos;
        let Some(len) = c.u32() else { break };
        let Some(payload) = c.take(len as usize) else {
            break;
        };
        let Some(sum) = c.u64() else { break };
        if fnv1a(payload) != sum {
            return Err(corrupt(
                path,
                format!("checksum mismatch in record at byte {start}"),
            ));
        }
        let mut p = Cursor {
            bytes: payload,
            pos: 0,
        };
        let record = (|| {
            let chunk = p.u64()?;
            let tally = ChunkTally {
                scanned: p.u64()?,
                passed: p.u64()?,
                undefined: p.u64()?,
                best: decode_tally(&mut p)?,
                at_threshold: decode_tally(&mut p)?,
            };
            (p.pos == payload.len()).then_some((chunk, tally))
        })();
        let Some((chunk, tally)) = record else {
            return Err(corrupt(path, format!("malformed record at byte {start}")));
        };
        if chunk >= chunks {
            return Err(corrupt(path, format!("chunk {chunk} out of range")));
        }
        done.insert(chunk, tally);
        good = c.pos;
    }
    Ok((done, good as u64))
}

/// Default checkpoint location for a job inside `dir`.
pub fn default_path(dir: &Path, fingerprint: u64) -> PathBuf {
    dir.join(format!("bfei-{fingerprint:016x}.ckpt"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tally(v: ExactValue) -> ChunkTally {
        ChunkTally {
            scanned: 10,
            passed: 7,
            undefined: 1,
            best: Some(Tally {
                value: v,
                count: 3,
                balanced: 1,
                witnesses: vec![2, 5, 9],
            }),
            at_threshold: None,
        }
    }

    fn temp(name: &str) -> PathBuf {
        let p = std::env::temp_dir().join(format!("bfei-test-{}-{name}", std::process::id()));
        let _ = std::fs::remove_file(&p);
        p
    }

    #[test]
    fn round_trip_and_truncated_tail() {
        let path = temp("rt");
        {
            let (mut ck, done) = Checkpoint::open(&path, 42, 8).unwrap();
            assert!(done.is_empty());
            ck.append(3, &tally(ExactValue::ratio(16, 7))).unwrap();
            ck.append(5, &tally(ExactValue::float_only(3.25))).unwrap();
        }
        let full = std::fs::read(&path).unwrap();
        // Chop the last record in half.
        std::fs::write(&path, &full[..full.len() - 20]).unwrap();
        let (mut ck, done) = Checkpoint::open(&path, 42, 8).unwrap();
        assert_eq!(done.len(), 1);
        assert_eq!(done[&3], tally(ExactValue::ratio(16, 7)));
        ck.append(5, &tally(ExactValue::float_only(3.25))).unwrap();
        drop(ck);
        let (_, done) = Checkpoint::open(&path, 42, 8).unwrap();
        assert_eq!(done[&5], tally(ExactValue::float_only(3.25)));
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn rejects_corruption_and_foreign_jobs() {
        let path = temp("bad");
        {
            let (mut ck, _) = Checkpoint::open(&path, 1, 4).unwrap();
            ck.append(0, &tally(ExactValue::integer(2))).unwrap();
        }
        assert!(matches!(
            Checkpoint::open(&path, 2, 4),
            Err(Error::CorruptCheckpoint { .. })
        ));
        let mut bytes = std::fs::read(&path).unwrap();
        let k = HEADER_LEN as usize + 10;
        bytes[k] ^= 0xff;
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(
            Checkpoint::open(&path, 1, 4),
            Err(Error::CorruptCheckpoint { .. })
        ));
        std::fs::write(&path, b"NOTACKPTxxxxxxxxxxxxxxxxxxxxxxxxx").unwrap();
        assert!(matches!(
            Checkpoint::open(&path, 1, 4),
            Err(Error::CorruptCheckpoint { .. })
        ));
        let _ = std::fs::remove_file(&path);
    }
}
