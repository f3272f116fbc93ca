//! Binary field snapshots.
//!
//! Layout, all little-endian:
//!
//! ```text
//! b"DFLX" | version u32 | d u32 | n u32 | field count u32 | t f64
//! then each field as n^d f64 values in row-major order
//! ```
//!
//! State snapshots store `rho, n, u_1, .., u_d`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::solver::State;
use crate::spectral::{Grid, ScalarField, VectorField};

pub const MAGIC: &[u8; 4] = b"DFLX";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub fields: Vec<ScalarField>,
}

impl Snapshot {
    pub fn from_state(s: &State) -> Self {
        let mut fields = vec![s.rho.clone(), s.n.clone()];
        fields.extend(s.u.components().iter().cloned());
        Self { t: s.t, fields }
    }

    pub fn into_state(self) -> Result<State> {
        let d = match self.fields.first() {
            Some(f) => f.grid().dim(),
            None => return Err(Error::Format("snapshot has no fields".into())),
        };
        if self.fields.len() != 2 + d {
            return Err(Error::Format(format!(
                "state snapshot needs {} fields, found {}",
                2 + d,
                self.fields.len()
            )));
        }
        let mut it = self.fields.into_iter();
        let rho = it.next().expect("checked length");
        let n = it.next().expect("checked length");
        State::new(rho, n, VectorField::new(it.collect())?, self.t)
    }
}

pub fn write_snapshot<W: Write>(mut w: W, snap: &Snapshot) -> Result<()> {
    let grid = match snap.fields.first() {
        Some(f) => *f.grid(),
        None => return Err(Error::Format("snapshot has no fields".into())),
    };
    if snap.fields.iter().any(|f| *f.grid() != grid) {
        return Err(Error::GridMismatch);
    }
    w.write_all(MAGIC)?;
    for v in [FORMAT_VERSION, grid.dim() as u32, grid.n() as u32, snap.fields.len() as u32] {
        w.write_all(&v.to_le_bytes())?;
    }
    w.write_all(&snap.t.to_le_bytes())?;
    for f in &snap.fields {
        for v in f.values() {
            w.write_all(&v.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

pub fn read_snapshot<R: Read>(mut r: R) -> Result<Snapshot> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format("bad snapshot magic".into()));
    }
    let version = read_u32(&mut r)?;
    if version != FORMAT_VERSION {
        return Err(Error::Format(format!("unsupported snapshot version {version}")));
    }
    let d = read_u32(&mut r)? as usize;
    let n = read_u32(&mut r)? as usize;
    let count = read_u32(&mut r)? as usize;
    let grid = Grid::new(d, n).map_err(|e| Error::Format(format!("snapshot grid: {e}")))?;
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    let t = f64::from_le_bytes(b);
    let mut fields = Vec::with_capacity(count);
    let mut buf = vec![0u8; 8 * grid.len()];
    for _ in 0..count {
        r.read_exact(&mut buf)?;
        let vals = buf
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
            .collect();
        fields.push(ScalarField::new(grid, vals)?);
    }
    let mut rest = [0u8; 1];
    if r.read(&mut rest)? != 0 {
        return Err(Error::Format("trailing bytes after snapshot".into()));
    }
    Ok(Snapshot { t, fields })
}

pub fn save_state(path: &Path, s: &State) -> Result<()> {
    write_snapshot(BufWriter::new(File::create(path)?), &Snapshot::from_state(s))
}

pub fn load_state(path: &Path) -> Result<State> {
    read_snapshot(BufReader::new(File::open(path)?))?.into_state()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> State {
        let g = Grid::new(2, 8).unwrap();
        let rho = ScalarField::from_fn(g, |x| 1.0 + (7.0 * x[0]).sin() / 3.0);
        let n = ScalarField::from_fn(g, |x| 0.1 + x[1] * x[1]);
        let u = VectorField::from_fn(g, |i, x| (i as f64 + 1.0) * (x[0] - x[1]) * std::f64::consts::E);
        State::new(rho, n, u, 0.123456789).unwrap()
    }

    #[test]
    fn round_trip_is_bitwise() {
        let s = sample();
        let mut buf = Vec::new();
        write_snapshot(&mut buf, &Snapshot::from_state(&s)).unwrap();
        assert_eq!(buf.len(), 4 + 16 + 8 + 4 * 64 * 8);
        assert_eq!(&buf[..4], b"DFLX");
        let back = read_snapshot(buf.as_slice()).unwrap().into_state().unwrap();
        assert_eq!(back.t.to_bits(), s.t.to_bits());
        for (a, b) in [(&back.rho, &s.rho), (&back.n, &s.n)] {
            assert!(a.values().iter().zip(b.values()).all(|(x, y)| x.to_bits() == y.to_bits()));
        }
        assert_eq!(back.u, s.u);
    }

    #[test]
    fn corrupt_input_is_rejected() {
        let mut buf = Vec::new();
        write_snapshot(&mut buf, &Snapshot::from_state(&sample())).unwrap();
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(matches!(read_snapshot(bad.as_slice()), Err(Error::Format(_))));
        assert!(read_snapshot(&buf[..buf.len() - 3]).is_err());
        let mut long = buf.clone();
        long.push(0);
        assert!(matches!(read_snapshot(long.as_slice()), Err(Error::Format(_))));
    }
}
