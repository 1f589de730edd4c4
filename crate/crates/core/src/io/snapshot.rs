//! Binary field snapshots: physical-space samples, little-endian.
//!
//! ```text
//! "AQGF" | version u32 | n1 u32 | n2 u32 | L f64 | t f64 | n1·n2 × f64 (row-major)
//! ```
//!
//! Only the box size is stored; the dealias fraction and cutoff shape of
//! the returned grid are taken from the caller's template.

use std::fs;
use std::path::Path;

use ndarray::Array2;

use crate::error::{Error, Result, SnapshotError};
use crate::spectral::{forward_transform, GridSpec, SpectralField};

pub const MAGIC: [u8; 4] = *b"AQGF";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 4 + 4 + 4 + 8 + 8;

pub fn encode_snapshot(f: &SpectralField, t: f64) -> Vec<u8> {
    let g = f.grid();
    let phys = f.to_physical();
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * phys.len());
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(g.n1() as u32).to_le_bytes());
    out.extend_from_slice(&(g.n2() as u32).to_le_bytes());
    out.extend_from_slice(&g.box_size().to_le_bytes());
    out.extend_from_slice(&t.to_le_bytes());
    for v in phys.iter() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

/// Decodes a snapshot onto a grid shaped by the header; dealias fraction
/// and cutoff shape come from `template`.
pub fn decode_snapshot(bytes: &[u8], template: &GridSpec) -> std::result::Result<(SpectralField, f64), SnapshotError> {
    let truncated = |expected| SnapshotError::Truncated {
        expected,
        found: bytes.len(),
    };
    if bytes.len() < 8 {
        return Err(truncated(HEADER_LEN));
    }
    let magic: [u8; 4] = bytes[0..4].try_into().expect("4 bytes");
    if magic != MAGIC {
        return Err(SnapshotError::BadMagic(magic));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().expect("4 bytes"));
    let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().expect("8 bytes"));
    let version = u32_at(4);
    if version != VERSION {
        return Err(SnapshotError::UnsupportedVersion(version));
    }
    if bytes.len() < HEADER_LEN {
        return Err(truncated(HEADER_LEN));
    }
    let (n1, n2) = (u32_at(8) as usize, u32_at(12) as usize);
    let (box_size, t) = (f64_at(16), f64_at(24));
    let expected = n1
        .checked_mul(n2)
        .and_then(|n| n.checked_mul(8))
        .and_then(|n| n.checked_add(HEADER_LEN))
        .ok_or_else(|| SnapshotError::InvalidHeader(format!("grid {n1} x {n2} too large")))?;
    if bytes.len() < expected {
        return Err(truncated(expected));
    }
    if bytes.len() > expected {
        return Err(SnapshotError::InvalidHeader(format!(
            "{} trailing bytes after the field",
            bytes.len() - expected
        )));
    }
    let grid = GridSpec::new(n1, n2, box_size, template.dealias_fraction(), template.cutoff_shape())
        .map_err(|e| SnapshotError::InvalidHeader(e.to_string()))?;
    let values: Vec<f64> = bytes[HEADER_LEN..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
        .collect();
    let phys = Array2::from_shape_vec((n1, n2), values).expect("length checked");
    let field = forward_transform(grid, &phys).expect("shape from header");
    Ok((field, t))
}

pub fn snapshot_write(f: &SpectralField, t: f64, path: &Path) -> Result<()> {
    fs::write(path, encode_snapshot(f, t))?;
    Ok(())
}

/// Reads a snapshot; the grid keeps the default dealias policy.
pub fn snapshot_read(path: &Path) -> Result<(SpectralField, f64)> {
    snapshot_read_onto(path, &GridSpec::square(4).expect("valid"))
}

pub fn snapshot_read_onto(path: &Path, template: &GridSpec) -> Result<(SpectralField, f64)> {
    let bytes = fs::read(path)?;
    decode_snapshot(&bytes, template).map_err(|kind| Error::Snapshot {
        path: path.to_path_buf(),
        kind,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::init::random_smooth;

    #[test]
    fn zero_field_roundtrip() {
        let g = GridSpec::square(8).unwrap();
        let (f, t) = decode_snapshot(&encode_snapshot(&SpectralField::zeros(g), 0.1 + 0.2), &g).unwrap();
        assert_eq!(t, 0.1 + 0.2);
        assert_eq!(f.max_abs_coeff(), 0.0);
        assert_eq!(f.grid(), &g);
    }

    #[test]
    fn header_layout() {
        let g = GridSpec::new(4, 6, 3.0, 0.5, crate::spectral::CutoffShape::Square).unwrap();
        let b = encode_snapshot(&SpectralField::zeros(g), 2.0);
        assert_eq!(&b[0..4], b"AQGF");
        assert_eq!(u32::from_le_bytes(b[4..8].try_into().unwrap()), 1);
        assert_eq!(u32::from_le_bytes(b[8..12].try_into().unwrap()), 4);
        assert_eq!(u32::from_le_bytes(b[12..16].try_into().unwrap()), 6);
        assert_eq!(f64::from_le_bytes(b[16..24].try_into().unwrap()), 3.0);
        assert_eq!(b.len(), HEADER_LEN + 24 * 8);
    }

    #[test]
    fn random_field_roundtrip() {
        let g = GridSpec::square(32).unwrap();
        let f = random_smooth(g, 4, 6.0, 1.5, 1.0);
        let (h, _) = decode_snapshot(&encode_snapshot(&f, 1.0), &g).unwrap();
        let err = (h.coeffs() - f.coeffs()).iter().fold(0.0f64, |m, c| m.max(c.norm()));
        assert!(err <= 1e-12, "{err}");
    }

    #[test]
    fn corrupt_inputs_are_structured_errors() {
        let g = GridSpec::square(8).unwrap();
        let good = encode_snapshot(&SpectralField::zeros(g), 0.0);
        assert!(matches!(decode_snapshot(&good[..good.len() - 3], &g), Err(SnapshotError::Truncated { .. })));
        assert!(matches!(decode_snapshot(&good[..10], &g), Err(SnapshotError::Truncated { .. })));
        assert!(matches!(decode_snapshot(&[], &g), Err(SnapshotError::Truncated { .. })));
        let mut bad = good.clone();
        bad[0] = b'X';
        assert!(matches!(decode_snapshot(&bad, &g), Err(SnapshotError::BadMagic(_))));
        let mut bad = good.clone();
        bad[4] = 9;
        assert_eq!(decode_snapshot(&bad, &g).unwrap_err(), SnapshotError::UnsupportedVersion(9));
        let mut bad = good;
        bad[8] = 3;
        assert!(decode_snapshot(&bad, &g).is_err());
    }
}
