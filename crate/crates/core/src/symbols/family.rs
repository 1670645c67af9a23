use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cayley::{cayley, HalfPlanePoint};
use crate::{Error, Result};

/// Height above the real axis used when a family has no closed-form
/// boundary value at a point (e.g. `log z` at `z = 0`).
pub const BOUNDARY_OFFSET: f64 = 1e-6;

/// The builtin symbol families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SymbolFamily {
    /// `ψ(z) = value`.
    Constant { value: Complex64 },
    /// `ψ(z) = limit + residue/(z − pole)` with `Im pole < 0`.
    MoebiusDecay {
        limit: Complex64,
        residue: Complex64,
        pole: Complex64,
    },
    /// `ψ(z) = center + amplitude·sin(frequency·log z)`, principal branch.
    LogOscillation {
        center: Complex64,
        amplitude: Complex64,
        frequency: f64,
    },
    /// `ψ = η∘𝔠` for a polynomial disc symbol `η(w) = Σ coeffs[k]·wᵏ`.
    DiscTransfer { coeffs: Vec<Complex64> },
    /// Pointwise sum of symbols.
    Sum { terms: Vec<AnalyticSymbol> },
}

/// A bounded analytic function on the upper half-plane together with the
/// claimed lower bound `ε` on its imaginary part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticSymbol {
    family: SymbolFamily,
    eps_lower: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sup_norm_hint: Option<f64>,
}

fn validate_family(family: &SymbolFamily) -> Result<()> {
    let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
    match family {
        SymbolFamily::Constant { value } if !finite(value) => {
            Err(Error::InvalidParameter("constant value must be finite".into()))
        }
        SymbolFamily::MoebiusDecay { limit, residue, pole } => {
            if !(finite(limit) && finite(residue) && finite(pole)) {
                return Err(Error::InvalidParameter("moebius_decay parameters must be finite".into()));
            }
            if !(pole.im < 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "moebius_decay pole {pole} must lie in the lower half-plane"
                )));
            }
            Ok(())
        }
        SymbolFamily::LogOscillation { center, amplitude, frequency } => {
            if !(finite(center) && finite(amplitude)) {
                return Err(Error::InvalidParameter("log_oscillation parameters must be finite".into()));
            }
            if !(frequency.is_finite() && *frequency > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "log_oscillation frequency {frequency} must be positive"
                )));
            }
            Ok(())
        }
        SymbolFamily::DiscTransfer { coeffs } => {
            if coeffs.is_empty() || !coeffs.iter().all(finite) {
                return Err(Error::InvalidParameter(
                    "disc_transfer needs at least one finite coefficient".into(),
                ));
            }
            Ok(())
        }
        SymbolFamily::Sum { terms } if terms.is_empty() => {
            Err(Error::InvalidParameter("sum needs at least one term".into()))
        }
        _ => Ok(()),
    }
}

/// Lower bound on `Im ψ` over the closed half-plane that follows from the
/// parameters alone, and an upper bound on `|ψ|`.
fn provable_bounds(family: &SymbolFamily) -> (f64, f64) {
    match family {
        SymbolFamily::Constant { value } => (value.im, value.norm()),
        SymbolFamily::MoebiusDecay { limit, residue, pole } => {
            // |z − pole| ≥ |Im pole| on the closed half-plane
            let r = residue.norm() / pole.im.abs();
            (limit.im - r, limit.norm() + r)
        }
        SymbolFamily::LogOscillation { center, amplitude, frequency } => {
            // Im log z ∈ [0, π], and |sin(u + iv)| ≤ cosh v
            let r = amplitude.norm() * (frequency * PI).cosh();
            (center.im - r, center.norm() + r)
        }
        SymbolFamily::DiscTransfer { coeffs } => {
            let tail: f64 = coeffs[1..].iter().map(|c| c.norm()).sum();
            (coeffs[0].im - tail, coeffs[0].norm() + tail)
        }
        SymbolFamily::Sum { terms } => terms.iter().fold((0.0, 0.0), |(lo, hi), t| {
            (lo + t.eps_lower, hi + t.sup_bound())
        }),
    }
}

impl AnalyticSymbol {
    /// Symbol with an explicitly claimed `ε`. The claim is not checked here;
    /// see [`verify_hypothesis`](super::verify_hypothesis).
    pub fn new(family: SymbolFamily, eps_lower: f64) -> Result<Self> {
        validate_family(&family)?;
        if !(eps_lower.is_finite() && eps_lower > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "eps_lower = {eps_lower} must be positive"
            )));
        }
        Ok(Self {
            family,
            eps_lower,
            sup_norm_hint: None,
        })
    }

    /// Symbol whose `ε` is the bound implied by the family parameters.
    pub fn with_provable_bound(family: SymbolFamily) -> Result<Self> {
        validate_family(&family)?;
        let (eps, sup) = provable_bounds(&family);
        let mut s = Self::new(family, eps).map_err(|_| {
            Error::Hypothesis(format!(
                "parameters only give Im ψ ≥ {eps}, which is not positive"
            ))
        })?;
        s.sup_norm_hint = Some(sup);
        Ok(s)
    }

    pub fn constant(value: Complex64) -> Result<Self> {
        Self::with_provable_bound(SymbolFamily::Constant { value })
    }

    pub fn moebius_decay(limit: Complex64, residue: Complex64, pole: Complex64) -> Result<Self> {
        Self::with_provable_bound(SymbolFamily::MoebiusDecay { limit, residue, pole })
    }

    pub fn log_oscillation(center: Complex64, amplitude: Complex64, frequency: f64) -> Result<Self> {
        Self::with_provable_bound(SymbolFamily::LogOscillation {
            center,
            amplitude,
            frequency,
        })
    }

    pub fn sum(terms: Vec<AnalyticSymbol>) -> Result<Self> {
        Self::with_provable_bound(SymbolFamily::Sum { terms })
    }

    pub fn with_eps_lower(mut self, eps_lower: f64) -> Result<Self> {
        if !(eps_lower.is_finite() && eps_lower > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "eps_lower = {eps_lower} must be positive"
            )));
        }
        self.eps_lower = eps_lower;
        Ok(self)
    }

    pub fn with_sup_norm_hint(mut self, sup: Option<f64>) -> Self {
        self.sup_norm_hint = sup;
        self
    }

    pub fn family(&self) -> &SymbolFamily {
        &self.family
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            SymbolFamily::Constant { .. } => "constant",
            SymbolFamily::MoebiusDecay { .. } => "moebius_decay",
            SymbolFamily::LogOscillation { .. } => "log_oscillation",
            SymbolFamily::DiscTransfer { .. } => "disc_transfer",
            SymbolFamily::Sum { .. } => "sum",
        }
    }

    pub fn eps_lower(&self) -> f64 {
        self.eps_lower
    }

    pub fn sup_norm_hint(&self) -> Option<f64> {
        self.sup_norm_hint
    }

    /// Upper bound on `|ψ|`: the hint if present, else the parameter bound.
    pub fn sup_bound(&self) -> f64 {
        self.sup_norm_hint
            .unwrap_or_else(|| provable_bounds(&self.family).1)
    }

    /// `ψ(z)` from the closed form. Errors at points where the formula is
    /// singular (only `z = 0` for the logarithmic family).
    pub fn eval(&self, z: HalfPlanePoint) -> Result<Complex64> {
        match &self.family {
            SymbolFamily::Constant { value } => Ok(*value),
            SymbolFamily::MoebiusDecay { limit, residue, pole } => {
                Ok(limit + residue / (z.to_complex() - pole))
            }
            SymbolFamily::LogOscillation { center, amplitude, frequency } => {
                let z = z.to_complex();
                if z.re == 0.0 && z.im == 0.0 {
                    return Err(Error::Domain { z });
                }
                Ok(center + amplitude * (z.ln() * frequency).sin())
            }
            SymbolFamily::DiscTransfer { coeffs } => Ok(horner(coeffs, cayley(z))),
            SymbolFamily::Sum { terms } => terms
                .iter()
                .try_fold(Complex64::new(0.0, 0.0), |acc, t| Ok(acc + t.eval(z)?)),
        }
    }

    /// Boundary value `ψ*(x)`: the closed form where it is defined, else
    /// `ψ(x + i·BOUNDARY_OFFSET)`.
    pub fn boundary_value(&self, x: f64) -> Complex64 {
        let on_axis = HalfPlanePoint::new(x, 0.0).expect("finite boundary abscissa");
        match self.eval(on_axis) {
            Ok(v) => v,
            Err(_) => {
                let lifted = HalfPlanePoint::new(x, BOUNDARY_OFFSET).expect("finite abscissa");
                self.eval(lifted).expect("families are regular off the real axis")
            }
        }
    }
}

fn horner(coeffs: &[Complex64], w: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c)
}

/// A polynomial symbol `η(w) = Σ coeffs[k]·wᵏ` on the unit disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscSymbol {
    coeffs: Vec<Complex64>,
    eps_lower: f64,
}

impl DiscSymbol {
    /// Uses `Im a₀ − Σ_{k≥1} |a_k|` as `ε`, which must be positive.
    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        let family = SymbolFamily::DiscTransfer { coeffs };
        validate_family(&family)?;
        let (eps, _) = provable_bounds(&family);
        let SymbolFamily::DiscTransfer { coeffs } = family else { unreachable!() };
        if !(eps > 0.0) {
            return Err(Error::Hypothesis(format!(
                "disc symbol only gives Im η ≥ {eps}, which is not positive"
            )));
        }
        Ok(Self { coeffs, eps_lower: eps })
    }

    pub fn with_eps_lower(mut self, eps_lower: f64) -> Result<Self> {
        if !(eps_lower.is_finite() && eps_lower > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "eps_lower = {eps_lower} must be positive"
            )));
        }
        self.eps_lower = eps_lower;
        Ok(self)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eps_lower(&self) -> f64 {
        self.eps_lower
    }

    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        if w.norm() > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter(format!("{w} is outside the disc")));
        }
        Ok(horner(&self.coeffs, w))
    }
}

/// Pulls a disc symbol back to the half-plane: `ψ = η∘𝔠`, keeping `ε`.
/// The composition operator with symbol `(2iz + η(z)(1 − z))/(2i + η(z)(1 − z))`
/// on the disc is unitarily equivalent to the half-plane operator for
/// `z + ψ(z)`, so all spectra can be computed from `ψ`.
pub fn transfer_disc_symbol(eta: &DiscSymbol) -> Result<AnalyticSymbol> {
    let family = SymbolFamily::DiscTransfer {
        coeffs: eta.coeffs.clone(),
    };
    let (_, sup) = provable_bounds(&family);
    Ok(AnalyticSymbol::new(family, eta.eps_lower)?.with_sup_norm_hint(Some(sup)))
}
