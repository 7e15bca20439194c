//! Binary files of frequency responses, for replaying a fixed ensemble.
//!
//! Layout (little-endian): `u32 magic`, `u32 N`, `u64 count`, then `count`
//! records of `N` complex values as `(re: f64, im: f64)` pairs.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const SNAPSHOT_MAGIC: u32 = 0x4843_4647; // "GFCH"

pub fn write_snapshots<W: Write>(mut w: W, n: usize, records: &[Vec<Complex64>]) -> Result<()> {
    let n32 = u32::try_from(n).map_err(|_| Error::InvalidConfig(format!("N = {n} too large")))?;
    w.write_all(&SNAPSHOT_MAGIC.to_le_bytes())?;
    w.write_all(&n32.to_le_bytes())?;
    w.write_all(&(records.len() as u64).to_le_bytes())?;
    for r in records {
        if r.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: r.len(),
            });
        }
        for z in r {
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Returns `N` and the records.
pub fn read_snapshots<R: Read>(mut r: R) -> Result<(usize, Vec<Vec<Complex64>>)> {
    let mut b4 = [0u8; 4];
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b4)?;
    if u32::from_le_bytes(b4) != SNAPSHOT_MAGIC {
        return Err(Error::Parse("not a channel snapshot file".into()));
    }
    r.read_exact(&mut b4)?;
    let n = u32::from_le_bytes(b4) as usize;
    r.read_exact(&mut b8)?;
    let count = u64::from_le_bytes(b8) as usize;
    let mut records = Vec::with_capacity(count.min(1 << 20));
    for _ in 0..count {
        let mut rec = Vec::with_capacity(n);
        for _ in 0..n {
            r.read_exact(&mut b8)?;
            let re = f64::from_le_bytes(b8);
            r.read_exact(&mut b8)?;
            rec.push(Complex64::new(re, f64::from_le_bytes(b8)));
        }
        records.push(rec);
    }
    Ok((n, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let recs = vec![
            vec![Complex64::new(1.0, -2.0), Complex64::new(0.5, 1e-300)],
            vec![Complex64::new(-0.0, 3.0), Complex64::new(f64::MAX, 7.0)],
        ];
        let mut buf = Vec::new();
        write_snapshots(&mut buf, 2, &recs).unwrap();
        assert_eq!(buf.len(), 16 + 2 * 2 * 16);
        let (n, back) = read_snapshots(buf.as_slice()).unwrap();
        assert_eq!(n, 2);
        assert_eq!(back, recs);
    }

    #[test]
    fn bad_magic_and_truncation() {
        assert!(read_snapshots([0u8; 16].as_slice()).is_err());
        let mut buf = Vec::new();
        write_snapshots(&mut buf, 1, &[vec![Complex64::new(1.0, 1.0)]]).unwrap();
        buf.pop();
        assert!(read_snapshots(buf.as_slice()).is_err());
        assert!(write_snapshots(Vec::new(), 2, &[vec![Complex64::new(1.0, 1.0)]]).is_err());
    }
}
