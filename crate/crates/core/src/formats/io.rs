//! `TTZ1` binary container for tensor trains and Tucker tensors.
//!
//! Layout, all little-endian:
//!
//! | field        | type             |
//! |--------------|------------------|
//! | magic        | `b"TTZ1"`        |
//! | format       | `u8`: 0 = TT, 1 = Tucker |
//! | d            | `u32`            |
//! | extents      | `d × u64`        |
//! | rank vector  | `u64` each: `d + 1` for TT, `d` for Tucker |
//! | scalar kind  | `u8`: 0 = real, 1 = complex |
//! | payload      | `f64` values, `(re, im)` pairs for complex |
//!
//! TT payload: cores in order, each `(s_{k-1}, n_k, s_k)` column-major.
//! Tucker payload: the core tensor column-major, then each factor
//! `n_k × t_k` column-major.

use std::io::{Read, Write};

use nalgebra::DMatrix;

use super::{LowRankFormat, TTTensor, TuckerTensor};
use crate::tensor::{element_count, DenseTensor};
use crate::{Error, Result, Scalar, ScalarKind};

pub const MAGIC: &[u8; 4] = b"TTZ1";
const FORMAT_TT: u8 = 0;
const FORMAT_TUCKER: u8 = 1;
/// Refuse headers describing more than this many stored scalars.
const MAX_PAYLOAD: usize = 1 << 32;

fn write_u64<W: Write>(w: &mut W, v: usize) -> Result<()> {
    w.write_all(&(v as u64).to_le_bytes())?;
    Ok(())
}

fn read_u8<R: Read>(r: &mut R) -> Result<u8> {
    let mut b = [0u8; 1];
    r.read_exact(&mut b)?;
    Ok(b[0])
}

fn read_u64<R: Read>(r: &mut R) -> Result<usize> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    usize::try_from(u64::from_le_bytes(b)).map_err(|_| Error::Format("size does not fit usize".into()))
}

fn write_scalars<T: Scalar, W: Write>(w: &mut W, values: &[T]) -> Result<()> {
    let mut buf = Vec::with_capacity(values.len() * 16);
    for v in values {
        let (re, im) = v.parts();
        buf.extend_from_slice(&re.to_le_bytes());
        if T::KIND == ScalarKind::Complex {
            buf.extend_from_slice(&im.to_le_bytes());
        }
    }
    w.write_all(&buf)?;
    Ok(())
}

fn read_scalars<T: Scalar, R: Read>(r: &mut R, count: usize) -> Result<Vec<T>> {
    let width = if T::KIND == ScalarKind::Complex { 16 } else { 8 };
    let mut buf = vec![0u8; count * width];
    r.read_exact(&mut buf)?;
    Ok(buf
        .chunks_exact(width)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().unwrap());
            let im = if width == 16 { f64::from_le_bytes(c[8..].try_into().unwrap()) } else { 0.0 };
            T::from_parts(re, im)
        })
        .collect())
}

fn write_header<W: Write>(w: &mut W, format: u8, extents: &[usize], ranks: &[usize], kind: ScalarKind) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&[format])?;
    w.write_all(&(extents.len() as u32).to_le_bytes())?;
    for &n in extents {
        write_u64(w, n)?;
    }
    for &s in ranks {
        write_u64(w, s)?;
    }
    w.write_all(&[kind.code()])?;
    Ok(())
}

struct Header {
    format: u8,
    extents: Vec<usize>,
    ranks: Vec<usize>,
}

fn read_header<T: Scalar, R: Read>(r: &mut R) -> Result<Header> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let format = read_u8(r)?;
    if format != FORMAT_TT && format != FORMAT_TUCKER {
        return Err(Error::Format(format!("unknown format byte {format}")));
    }
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    let d = u32::from_le_bytes(b) as usize;
    if d == 0 || d > 64 {
        return Err(Error::Format(format!("unsupported order {d}")));
    }
    let extents = (0..d).map(|_| read_u64(r)).collect::<Result<Vec<_>>>()?;
    let nranks = if format == FORMAT_TT { d + 1 } else { d };
    let ranks = (0..nranks).map(|_| read_u64(r)).collect::<Result<Vec<_>>>()?;
    let kind = ScalarKind::from_code(read_u8(r)?).ok_or_else(|| Error::Format("unknown scalar kind".into()))?;
    if kind != T::KIND {
        return Err(Error::Format(format!("container holds {kind:?} scalars")));
    }
    if extents.iter().chain(&ranks).any(|&v| v == 0) {
        return Err(Error::Format("zero extent or rank".into()));
    }
    Ok(Header { format, extents, ranks })
}

fn payload_len(sizes: &[usize]) -> Result<usize> {
    let n = element_count(sizes).map_err(|_| Error::Format("payload size overflows".into()))?;
    if n > MAX_PAYLOAD {
        return Err(Error::Format("payload too large".into()));
    }
    Ok(n)
}

pub fn write_tt<T: Scalar, W: Write>(tt: &TTTensor<T>, w: &mut W) -> Result<()> {
    write_header(w, FORMAT_TT, &tt.extents(), &tt.ranks(), T::KIND)?;
    for c in tt.cores() {
        write_scalars(w, c.data())?;
    }
    Ok(())
}

pub fn read_tt<T: Scalar, R: Read>(r: &mut R) -> Result<TTTensor<T>> {
    let h = read_header::<T, _>(r)?;
    if h.format != FORMAT_TT {
        return Err(Error::Format("container does not hold a tensor train".into()));
    }
    let mut cores = Vec::with_capacity(h.extents.len());
    for (k, &n) in h.extents.iter().enumerate() {
        let shape = [h.ranks[k], n, h.ranks[k + 1]];
        let values = read_scalars(r, payload_len(&shape)?)?;
        cores.push(DenseTensor::new(shape.to_vec(), values)?);
    }
    TTTensor::new(cores).map_err(|e| Error::Format(e.to_string()))
}

pub fn write_tucker<T: Scalar, W: Write>(t: &TuckerTensor<T>, w: &mut W) -> Result<()> {
    write_header(w, FORMAT_TUCKER, &t.extents(), &t.ranks(), T::KIND)?;
    write_scalars(w, t.core().data())?;
    for f in t.factors() {
        write_scalars(w, f.as_slice())?;
    }
    Ok(())
}

pub fn read_tucker<T: Scalar, R: Read>(r: &mut R) -> Result<TuckerTensor<T>> {
    let h = read_header::<T, _>(r)?;
    if h.format != FORMAT_TUCKER {
        return Err(Error::Format("container does not hold a Tucker tensor".into()));
    }
    let core = DenseTensor::new(h.ranks.clone(), read_scalars(r, payload_len(&h.ranks)?)?)?;
    let mut factors = Vec::with_capacity(h.extents.len());
    for (&n, &t) in h.extents.iter().zip(&h.ranks) {
        let values = read_scalars(r, payload_len(&[n, t])?)?;
        factors.push(DMatrix::from_vec(n, t, values));
    }
    TuckerTensor::new(core, factors).map_err(|e| Error::Format(e.to_string()))
}

pub fn tt_to_bytes<T: Scalar>(tt: &TTTensor<T>) -> Vec<u8> {
    let mut out = Vec::new();
    write_tt(tt, &mut out).expect("writing to a Vec cannot fail");
    out
}

pub fn tucker_to_bytes<T: Scalar>(t: &TuckerTensor<T>) -> Vec<u8> {
    let mut out = Vec::new();
    write_tucker(t, &mut out).expect("writing to a Vec cannot fail");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::{hosvd, tt_svd};
    use num_complex::Complex64;

    fn sample() -> DenseTensor<f64> {
        DenseTensor::from_fn(vec![3, 4, 5], |i| ((i[0] + 1) as f64).ln() + (i[1] * i[2]) as f64 * 0.1).unwrap()
    }

    #[test]
    fn tt_round_trip_is_bit_exact() {
        let tt = tt_svd(&sample(), 1e-12).unwrap();
        let bytes = tt_to_bytes(&tt);
        assert_eq!(&bytes[..4], b"TTZ1");
        assert_eq!(bytes[4], 0);
        assert_eq!(u32::from_le_bytes(bytes[5..9].try_into().unwrap()), 3);
        let back: TTTensor<f64> = read_tt(&mut bytes.as_slice()).unwrap();
        assert_eq!(back, tt);
        let header = 4 + 1 + 4 + 3 * 8 + 4 * 8 + 1;
        assert_eq!(bytes.len(), header + 8 * tt.storage_count());
    }

    #[test]
    fn complex_and_tucker_round_trips() {
        let x = sample();
        let c = DenseTensor::from_fn(x.extents().to_vec(), |i| Complex64::new(x.get(i), -x.get(i) * 0.5)).unwrap();
        let tt = tt_svd(&c, 1e-12).unwrap();
        let back: TTTensor<Complex64> = read_tt(&mut tt_to_bytes(&tt).as_slice()).unwrap();
        assert_eq!(back, tt);
        assert!(read_tt::<f64, _>(&mut tt_to_bytes(&tt).as_slice()).is_err());

        let tk = hosvd(&x, 1e-10).unwrap();
        let bytes = tucker_to_bytes(&tk);
        assert_eq!(bytes[4], 1);
        assert_eq!(read_tucker::<f64, _>(&mut bytes.as_slice()).unwrap(), tk);
        assert!(read_tt::<f64, _>(&mut bytes.as_slice()).is_err());
    }

    #[test]
    fn rejects_corrupt_input() {
        let tt = tt_svd(&sample(), 1e-12).unwrap();
        let mut bytes = tt_to_bytes(&tt);
        bytes.truncate(bytes.len() - 3);
        assert!(read_tt::<f64, _>(&mut bytes.as_slice()).is_err());
        let mut bad = tt_to_bytes(&tt);
        bad[0] = b'X';
        assert!(matches!(read_tt::<f64, _>(&mut bad.as_slice()), Err(Error::Format(_))));
    }
}
