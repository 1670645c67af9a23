//! Dense matrix files.
//!
//! CSV: header `row,col,re,im`, one line per entry in row-major order, values
//! in shortest round-trip decimal form.
//!
//! Binary: `N⁺` as little-endian `u64`, then `N⁺²` entries in row-major order,
//! each as little-endian `f64` real part followed by imaginary part.

use std::io::{BufRead, BufReader, BufWriter, Read, Write};

use num_complex::Complex64;

use super::operator::DenseMatrix;
use crate::{Error, Result};

pub fn write_matrix_csv<W: Write>(m: &DenseMatrix, out: W) -> Result<()> {
    let mut w = BufWriter::new(out);
    let io = |e| Error::io("writing matrix csv", e);
    writeln!(w, "row,col,re,im").map_err(io)?;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            writeln!(w, "{i},{j},{:?},{:?}", z.re, z.im).map_err(io)?;
        }
    }
    w.flush().map_err(io)
}

pub fn read_matrix_csv<R: Read>(input: R) -> Result<DenseMatrix> {
    let reader = BufReader::new(input);
    let mut entries = Vec::new();
    let mut order = 0usize;
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io("reading matrix csv", e))?;
        if lineno == 0 {
            if line.trim() != "row,col,re,im" {
                return Err(Error::InvalidParameter(format!("unexpected csv header {line:?}")));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let bad = || Error::InvalidParameter(format!("malformed csv line {}: {line:?}", lineno + 1));
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 4 {
            return Err(bad());
        }
        let i: usize = f[0].trim().parse().map_err(|_| bad())?;
        let j: usize = f[1].trim().parse().map_err(|_| bad())?;
        let re: f64 = f[2].trim().parse().map_err(|_| bad())?;
        let im: f64 = f[3].trim().parse().map_err(|_| bad())?;
        order = order.max(i + 1).max(j + 1);
        entries.push((i, j, Complex64::new(re, im)));
    }
    if entries.len() != order * order {
        return Err(Error::InvalidParameter(format!(
            "{} entries for a matrix of order {order}",
            entries.len()
        )));
    }
    let mut m = DenseMatrix::zeros(order, order);
    for (i, j, z) in entries {
        m[(i, j)] = z;
    }
    Ok(m)
}

pub fn write_matrix_binary<W: Write>(m: &DenseMatrix, out: W) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidParameter("binary layout stores square matrices".into()));
    }
    let mut w = BufWriter::new(out);
    let io = |e| Error::io("writing matrix binary", e);
    w.write_all(&(m.nrows() as u64).to_le_bytes()).map_err(io)?;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            w.write_all(&z.re.to_le_bytes()).map_err(io)?;
            w.write_all(&z.im.to_le_bytes()).map_err(io)?;
        }
    }
    w.flush().map_err(io)
}

pub fn read_matrix_binary<R: Read>(input: R) -> Result<DenseMatrix> {
    let mut r = BufReader::new(input);
    let io = |e| Error::io("reading matrix binary", e);
    let mut word = [0u8; 8];
    r.read_exact(&mut word).map_err(io)?;
    let n = u64::from_le_bytes(word) as usize;
    let mut m = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            r.read_exact(&mut word).map_err(io)?;
            let re = f64::from_le_bytes(word);
            r.read_exact(&mut word).map_err(io)?;
            let im = f64::from_le_bytes(word);
            m[(i, j)] = Complex64::new(re, im);
        }
    }
    if r.read(&mut word).map_err(io)? != 0 {
        return Err(Error::InvalidParameter("trailing bytes after matrix payload".into()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> DenseMatrix {
        DenseMatrix::from_fn(3, 3, |i, j| {
            Complex64::new((i as f64 + 0.1).ln() / 3.0, (j as f64 * 1.7).sin() * 1e-300)
        })
    }

    #[test]
    fn binary_layout() {
        let m = DenseMatrix::from_fn(1, 1, |_, _| Complex64::new(1.5, -2.0));
        let mut buf = Vec::new();
        write_matrix_binary(&m, &mut buf).unwrap();
        assert_eq!(buf.len(), 8 + 16);
        assert_eq!(&buf[..8], &1u64.to_le_bytes());
        assert_eq!(&buf[8..16], &1.5f64.to_le_bytes());
        assert_eq!(&buf[16..24], &(-2.0f64).to_le_bytes());
    }

    #[test]
    fn binary_round_trip_is_bit_exact() {
        let m = sample();
        let mut buf = Vec::new();
        write_matrix_binary(&m, &mut buf).unwrap();
        let back = read_matrix_binary(&buf[..]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m[(i, j)].re.to_bits(), back[(i, j)].re.to_bits());
                assert_eq!(m[(i, j)].im.to_bits(), back[(i, j)].im.to_bits());
            }
        }
        let mut again = Vec::new();
        write_matrix_binary(&back, &mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn csv_round_trip() {
        let m = sample();
        let mut buf = Vec::new();
        write_matrix_csv(&m, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("row,col,re,im\n0,0,"));
        let back = read_matrix_csv(&buf[..]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m[(i, j)], back[(i, j)]);
            }
        }
    }

    #[test]
    fn truncated_binary_is_rejected() {
        let mut buf = Vec::new();
        write_matrix_binary(&sample(), &mut buf).unwrap();
        buf.pop();
        assert!(read_matrix_binary(&buf[..]).is_err());
    }
}
