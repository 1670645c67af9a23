use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::grid::HardyGrid;
use super::vector::H2Vector;
use crate::exec::Execution;
use crate::{Error, Result};

pub type DenseMatrix = faer::Mat<Complex64>;

/// Largest number of entries [`assemble_dense`] will allocate
/// (`N⁺ = 4096`, i.e. `N = 8192`).
pub const DEFAULT_DENSE_CAP: usize = 4096 * 4096;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// A linear map on nonnegative-frequency coefficient vectors, for operators
/// defined outside this module (e.g. quadrature oracles).
pub trait LinearMap: Send + Sync + fmt::Debug {
    fn dim(&self) -> usize;
    fn apply_half(&self, x: &[Complex64]) -> Vec<Complex64>;
    fn apply_adjoint_half(&self, x: &[Complex64]) -> Vec<Complex64>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Diagonal,
    Composite,
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DilationInfo {
    pub p: f64,
    pub n_plus: usize,
    /// `p > 1` pushes content above `T_max/p` off the grid.
    pub truncates_tail: bool,
}

/// `Σ_n T_{a_n} D_{θ_n}`: Toeplitz operators with spatial symbols `a_n`
/// composed with Fourier multipliers `θ_n`.
#[derive(Clone)]
pub struct ToeplitzMultiplierSum {
    grid: HardyGrid,
    symbols: Vec<Vec<Complex64>>,
    multipliers: Vec<Vec<Complex64>>,
}

impl fmt::Debug for ToeplitzMultiplierSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ToeplitzMultiplierSum")
            .field("grid", &self.grid)
            .field("terms", &self.symbols.len())
            .finish()
    }
}

impl ToeplitzMultiplierSum {
    pub fn new(
        grid: &HardyGrid,
        symbols: Vec<Vec<Complex64>>,
        multipliers: Vec<Vec<Complex64>>,
    ) -> Result<Self> {
        if symbols.len() != multipliers.len() {
            return Err(Error::InvalidParameter("term count mismatch".into()));
        }
        let finite = |v: &Vec<Complex64>| v.iter().all(|z| z.re.is_finite() && z.im.is_finite());
        for (a, th) in symbols.iter().zip(&multipliers) {
            if a.len() != grid.n_points() || th.len() != grid.n_plus() {
                return Err(Error::InvalidParameter("sample length does not match grid".into()));
            }
            if !finite(a) || !finite(th) {
                return Err(Error::InvalidParameter("non-finite symbol or multiplier sample".into()));
            }
        }
        Ok(Self {
            grid: grid.clone(),
            symbols,
            multipliers,
        })
    }

    pub fn n_terms(&self) -> usize {
        self.symbols.len()
    }

    pub fn grid(&self) -> &HardyGrid {
        &self.grid
    }

    /// The single term `T_{a_n} D_{θ_n}` as an operator.
    pub fn term(&self, n: usize) -> DiscreteOperator {
        DiscreteOperator::Series(Self {
            grid: self.grid.clone(),
            symbols: vec![self.symbols[n].clone()],
            multipliers: vec![self.multipliers[n].clone()],
        })
    }

    /// The first `m` terms.
    pub fn partial(&self, m: usize) -> DiscreteOperator {
        let m = m.min(self.n_terms());
        DiscreteOperator::Series(Self {
            grid: self.grid.clone(),
            symbols: self.symbols[..m].to_vec(),
            multipliers: self.multipliers[..m].to_vec(),
        })
    }

    fn apply_half(&self, x: &[Complex64]) -> Vec<Complex64> {
        let g = &self.grid;
        let mut acc = vec![ZERO; g.n_points()];
        let mut full = vec![ZERO; g.n_points()];
        for (a, th) in self.symbols.iter().zip(&self.multipliers) {
            for j in 0..g.n_plus() {
                full[j] = th[j] * x[j];
            }
            let u = g.to_spatial(&full);
            for k in 0..acc.len() {
                acc[k] += a[k] * u[k];
            }
        }
        // P·F is linear, so one transform serves every term
        let mut out = g.to_frequency(&acc);
        out.truncate(g.n_plus());
        out
    }

    fn apply_adjoint_half(&self, x: &[Complex64]) -> Vec<Complex64> {
        let g = &self.grid;
        let u = g.to_spatial(&embed(x, g.n_points()));
        let mut out = vec![ZERO; g.n_plus()];
        let mut buf = vec![ZERO; g.n_points()];
        for (a, th) in self.symbols.iter().zip(&self.multipliers) {
            for k in 0..buf.len() {
                buf[k] = a[k].conj() * u[k];
            }
            let f = g.to_frequency(&buf);
            for j in 0..out.len() {
                out[j] += th[j].conj() * f[j];
            }
        }
        out
    }

    /// Column `j` in one transform: the combined spatial symbol
    /// `Σ_n θ_n(t_j)·a_n(x)` times the closed-form basis vector.
    fn column(&self, j: usize) -> Vec<Complex64> {
        let g = &self.grid;
        let mut s = g.basis_spatial(j);
        let mut sym = vec![ZERO; g.n_points()];
        for (a, th) in self.symbols.iter().zip(&self.multipliers) {
            let w = th[j];
            if w == ZERO {
                continue;
            }
            for k in 0..sym.len() {
                sym[k] += w * a[k];
            }
        }
        for k in 0..s.len() {
            s[k] *= sym[k];
        }
        let mut out = g.to_frequency(&s);
        out.truncate(g.n_plus());
        out
    }
}

/// Linear operator on the discrete Hardy space, available matrix-free.
///
/// Every variant maps the nonnegative half to itself; the negative half of
/// an input is ignored and the output's negative half is zero.
#[derive(Debug, Clone)]
pub enum DiscreteOperator {
    Diagonal(Vec<Complex64>),
    Toeplitz {
        grid: HardyGrid,
        symbol: Vec<Complex64>,
    },
    Dilation(DilationInfo),
    Series(ToeplitzMultiplierSum),
    Dense(Arc<DenseMatrix>),
    Scaled(Complex64, Box<DiscreteOperator>),
    Sum(Vec<DiscreteOperator>),
    /// `Product([A, B])` applies `B` first, then `A`.
    Product(Vec<DiscreteOperator>),
    Custom(Arc<dyn LinearMap>),
}

fn embed(half: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut v = half.to_vec();
    v.resize(n, ZERO);
    v
}

impl DiscreteOperator {
    pub fn identity(n_plus: usize) -> Self {
        DiscreteOperator::Diagonal(vec![Complex64::new(1.0, 0.0); n_plus])
    }

    pub fn dense(m: DenseMatrix) -> Self {
        DiscreteOperator::Dense(Arc::new(m))
    }

    pub fn kind(&self) -> OperatorKind {
        match self {
            DiscreteOperator::Diagonal(_) => OperatorKind::Diagonal,
            DiscreteOperator::Dense(_) => OperatorKind::Dense,
            _ => OperatorKind::Composite,
        }
    }

    /// Number of nonnegative frequencies the operator acts on.
    pub fn dim(&self) -> usize {
        match self {
            DiscreteOperator::Diagonal(d) => d.len(),
            DiscreteOperator::Toeplitz { grid, .. } => grid.n_plus(),
            DiscreteOperator::Dilation(info) => info.n_plus,
            DiscreteOperator::Series(s) => s.grid.n_plus(),
            DiscreteOperator::Dense(m) => m.nrows(),
            DiscreteOperator::Scaled(_, op) => op.dim(),
            DiscreteOperator::Sum(ops) | DiscreteOperator::Product(ops) => {
                ops.first().map_or(0, |o| o.dim())
            }
            DiscreteOperator::Custom(m) => m.dim(),
        }
    }

    pub fn apply(&self, v: &H2Vector) -> H2Vector {
        H2Vector::from_half(&self.apply_half(v.half()))
    }

    pub fn apply_adjoint(&self, v: &H2Vector) -> H2Vector {
        H2Vector::from_half(&self.apply_adjoint_half(v.half()))
    }

    pub fn apply_half(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim(), "operator dimension mismatch");
        match self {
            DiscreteOperator::Diagonal(d) => d.iter().zip(x).map(|(a, b)| a * b).collect(),
            DiscreteOperator::Toeplitz { grid, symbol } => {
                let mut u = grid.to_spatial(&embed(x, grid.n_points()));
                u.iter_mut().zip(symbol).for_each(|(v, a)| *v *= a);
                let mut out = grid.to_frequency(&u);
                out.truncate(grid.n_plus());
                out
            }
            DiscreteOperator::Dilation(info) => dilate(info, x),
            DiscreteOperator::Series(s) => s.apply_half(x),
            DiscreteOperator::Dense(m) => {
                let mut y = vec![ZERO; m.nrows()];
                for (j, xj) in x.iter().enumerate() {
                    if *xj == ZERO {
                        continue;
                    }
                    for (i, yi) in y.iter_mut().enumerate() {
                        *yi += m[(i, j)] * xj;
                    }
                }
                y
            }
            DiscreteOperator::Scaled(c, op) => op.apply_half(x).into_iter().map(|v| c * v).collect(),
            DiscreteOperator::Sum(ops) => {
                let mut acc = vec![ZERO; x.len()];
                for op in ops {
                    acc.iter_mut().zip(op.apply_half(x)).for_each(|(a, b)| *a += b);
                }
                acc
            }
            DiscreteOperator::Product(ops) => ops
                .iter()
                .rev()
                .fold(x.to_vec(), |v, op| op.apply_half(&v)),
            DiscreteOperator::Custom(m) => m.apply_half(x),
        }
    }

    pub fn apply_adjoint_half(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim(), "operator dimension mismatch");
        match self {
            DiscreteOperator::Diagonal(d) => d.iter().zip(x).map(|(a, b)| a.conj() * b).collect(),
            DiscreteOperator::Toeplitz { grid, symbol } => {
                let mut u = grid.to_spatial(&embed(x, grid.n_points()));
                u.iter_mut().zip(symbol).for_each(|(v, a)| *v *= a.conj());
                let mut out = grid.to_frequency(&u);
                out.truncate(grid.n_plus());
                out
            }
            DiscreteOperator::Dilation(info) => dilate_adjoint(info, x),
            DiscreteOperator::Series(s) => s.apply_adjoint_half(x),
            DiscreteOperator::Dense(m) => (0..m.ncols())
                .map(|j| (0..m.nrows()).map(|i| m[(i, j)].conj() * x[i]).sum())
                .collect(),
            DiscreteOperator::Scaled(c, op) => op
                .apply_adjoint_half(x)
                .into_iter()
                .map(|v| c.conj() * v)
                .collect(),
            DiscreteOperator::Sum(ops) => {
                let mut acc = vec![ZERO; x.len()];
                for op in ops {
                    acc.iter_mut()
                        .zip(op.apply_adjoint_half(x))
                        .for_each(|(a, b)| *a += b);
                }
                acc
            }
            DiscreteOperator::Product(ops) => ops
                .iter()
                .fold(x.to_vec(), |v, op| op.apply_adjoint_half(&v)),
            DiscreteOperator::Custom(m) => m.apply_adjoint_half(x),
        }
    }

    /// Column `j` of the dense section.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        let n = self.dim();
        match self {
            DiscreteOperator::Diagonal(d) => {
                let mut e = vec![ZERO; n];
                e[j] = d[j];
                e
            }
            DiscreteOperator::Series(s) => s.column(j),
            DiscreteOperator::Dense(m) => (0..n).map(|i| m[(i, j)]).collect(),
            _ => {
                let mut e = vec![ZERO; n];
                e[j] = Complex64::new(1.0, 0.0);
                self.apply_half(&e)
            }
        }
    }

    /// `self − other`.
    pub fn minus(&self, other: &DiscreteOperator) -> DiscreteOperator {
        DiscreteOperator::Sum(vec![
            self.clone(),
            DiscreteOperator::Scaled(Complex64::new(-1.0, 0.0), Box::new(other.clone())),
        ])
    }
}

/// `ϑ_n(t) = (−it)ⁿ e^{−αt}/n!`.
///
/// The modulus is evaluated as `exp(n ln t − ln n! − αt)` so large orders
/// do not overflow.
pub fn theta_n(n: usize, alpha: f64) -> impl Fn(f64) -> Complex64 + Clone + Send + Sync {
    assert!(alpha > 0.0, "alpha must be positive");
    let log_fact: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
    // (−i)ⁿ
    let phase = match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    };
    move |t: f64| {
        if n == 0 {
            return Complex64::new((-alpha * t).exp(), 0.0);
        }
        if t <= 0.0 {
            return ZERO;
        }
        if t.is_infinite() {
            return ZERO;
        }
        phase * (n as f64 * t.ln() - log_fact - alpha * t).exp()
    }
}

/// `sup_t |ϑ_n(t)| = (n/(eα))ⁿ/n!` (attained at `t = n/α`), and 1 for `n = 0`.
pub fn theta_n_sup(n: usize, alpha: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let log_fact: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
    (n as f64 * (n as f64 / alpha).ln() - n as f64 - log_fact).exp()
}

/// Fourier multiplier `D_ϑ`: diagonal with entries `ϑ(t_j)`, `t_j ≥ 0`.
pub fn fourier_multiplier<F>(theta: F, grid: &HardyGrid) -> Result<DiscreteOperator>
where
    F: Fn(f64) -> Complex64,
{
    let d: Vec<Complex64> = grid.nonneg_ts().into_iter().map(theta).collect();
    if d.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::InvalidParameter("multiplier is not finite on the grid".into()));
    }
    Ok(DiscreteOperator::Diagonal(d))
}

/// Toeplitz operator `f ↦ P·F(a·F⁻¹f)` from spatial samples of `a`.
pub fn toeplitz(symbol: Vec<Complex64>, grid: &HardyGrid) -> Result<DiscreteOperator> {
    if symbol.len() != grid.n_points() {
        return Err(Error::InvalidParameter(format!(
            "{} symbol samples for a grid of {}",
            symbol.len(),
            grid.n_points()
        )));
    }
    if symbol.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::InvalidParameter("non-finite symbol sample".into()));
    }
    Ok(DiscreteOperator::Toeplitz {
        grid: grid.clone(),
        symbol,
    })
}

/// Dilation `V_p f(z) = f(pz)`, i.e. `f̂(t) ↦ p⁻¹ f̂(t/p)` with linear
/// interpolation and zero padding above the grid.
pub fn dilation(p: f64, grid: &HardyGrid) -> Result<DiscreteOperator> {
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::InvalidParameter(format!("dilation factor {p} must be positive")));
    }
    Ok(DiscreteOperator::Dilation(DilationInfo {
        p,
        n_plus: grid.n_plus(),
        truncates_tail: p > 1.0,
    }))
}

/// Interpolation stencil for output index `j`: `(lower index, weight on
/// lower, weight on upper)`; indices at or beyond `n` read as zero.
fn stencil(info: &DilationInfo, j: usize) -> (usize, f64, f64) {
    let s = j as f64 / info.p;
    let lo = s.floor();
    let frac = s - lo;
    (lo as usize, (1.0 - frac) / info.p, frac / info.p)
}

fn dilate(info: &DilationInfo, x: &[Complex64]) -> Vec<Complex64> {
    let n = info.n_plus;
    (0..n)
        .map(|j| {
            let (lo, wl, wu) = stencil(info, j);
            let at = |i: usize| if i < n { x[i] } else { ZERO };
            at(lo) * wl + if wu != 0.0 { at(lo + 1) * wu } else { ZERO }
        })
        .collect()
}

fn dilate_adjoint(info: &DilationInfo, x: &[Complex64]) -> Vec<Complex64> {
    let n = info.n_plus;
    let mut out = vec![ZERO; n];
    for j in 0..n {
        let (lo, wl, wu) = stencil(info, j);
        if lo < n {
            out[lo] += x[j] * wl;
        }
        if wu != 0.0 && lo + 1 < n {
            out[lo + 1] += x[j] * wu;
        }
    }
    out
}

/// Dense `N⁺ × N⁺` section; column `j` is the operator applied to the
/// `j`-th nonnegative basis vector.
pub fn assemble_dense(op: &DiscreteOperator) -> Result<DenseMatrix> {
    assemble_dense_with(op, Execution::default(), DEFAULT_DENSE_CAP)
}

pub fn assemble_dense_with(op: &DiscreteOperator, exec: Execution, cap: usize) -> Result<DenseMatrix> {
    let n = op.dim();
    if n.saturating_mul(n) > cap {
        return Err(Error::Resource { order: n, cap });
    }
    let cols = exec.map(n, |j| op.column(j));
    Ok(DenseMatrix::from_fn(n, n, |i, j| cols[j][i]))
}
