use crate::halfline::DenseMatrix;
use crate::symbols::PointCloud;
use crate::{Error, Result};

/// All eigenvalues of a square matrix (dense QR algorithm).
pub fn eigenvalues(m: &DenseMatrix) -> Result<PointCloud> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidParameter(format!("matrix is {}×{}, not square", m.nrows(), m.ncols())));
    }
    if m.nrows() == 0 {
        return Ok(PointCloud::new(vec![]));
    }
    let ev = m
        .eigenvalues()
        .map_err(|e| Error::Eigensolver(format!("dense eigenvalues of a {}×{} matrix: {e:?}", m.nrows(), m.ncols())))?;
    Ok(PointCloud::new(ev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(p: &PointCloud) -> Vec<(f64, f64)> {
        let mut v: Vec<_> = p.points().iter().map(|z| (z.re, z.im)).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn diagonal() {
        let d = [c(1.0, 0.0), c(-2.0, 1.0), c(0.5, -0.5)];
        let m = DenseMatrix::from_fn(3, 3, |i, j| if i == j { d[i] } else { c(0.0, 0.0) });
        let got = sorted(&eigenvalues(&m).unwrap());
        let want = sorted(&PointCloud::new(d.to_vec()));
        for (a, b) in got.iter().zip(&want) {
            assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
        }
    }

    #[test]
    fn nilpotent_and_companion() {
        let j = DenseMatrix::from_fn(2, 2, |i, k| if i == 0 && k == 1 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        assert!(eigenvalues(&j).unwrap().points().iter().all(|z| z.norm() < 1e-12));
        // companion matrix of λ² − 1
        let comp = DenseMatrix::from_fn(2, 2, |i, k| if i != k { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let got = sorted(&eigenvalues(&comp).unwrap());
        assert!((got[0].0 + 1.0).abs() < 1e-12 && (got[1].0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_rectangular() {
        assert!(eigenvalues(&DenseMatrix::zeros(2, 3)).is_err());
    }
}
