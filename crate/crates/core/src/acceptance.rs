//! End-to-end acceptance experiments with pinned tolerances.
//!
//! Each check returns a [`CriterionResult`]; [`run`] executes a selection
//! and [`CriterionResult::line`] renders the one-line pass/fail summary.

use std::f64::consts::FRAC_1_SQRT_2;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::expansion::{build_composition_operator, build_series, oracle_vs_series_report, plan_expansion, select_alpha, QuadSpec};
use crate::halfline::{
    assemble_dense, fourier_multiplier, operator_norm_dense, operator_norm_estimate, project_hardy, HardyGrid,
    NormOptions,
};
use crate::spectra::{
    essential_normality_diagnostic, hausdorff, predict_essential_spectrum, spectrum_report,
    SpectrumOptions,
};
use crate::symbols::{AnalyticSymbol, DiscSymbol, PointCloud, transfer_disc_symbol};
use crate::Result;

pub const ALL: [u8; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {} [{}] {}: {} ({:.1}s)",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.seconds
        )
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn default_grid() -> HardyGrid {
    HardyGrid::default_grid()
}

fn moebius() -> AnalyticSymbol {
    AnalyticSymbol::moebius_decay(c(0.0, 2.0), c(1.0, 0.0), c(0.0, -2.0)).expect("valid parameters")
}

fn log_oscillation() -> AnalyticSymbol {
    AnalyticSymbol::log_oscillation(c(0.0, 3.0), c(0.2, 0.0), 1.0).expect("valid parameters")
}

fn timed(id: u8, name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> CriterionResult {
    let start = Instant::now();
    let (pass, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id,
        name,
        pass,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Translation symbol ψ ≡ i: eigenvalues against the segment [0, 1].
pub fn translation_equality() -> CriterionResult {
    timed(1, "translation eigenvalues fill [0,1]", || {
        let psi = AnalyticSymbol::constant(c(0.0, 1.0))?;
        let r = spectrum_report(&psi, &default_grid(), 1e-6, &SpectrumOptions::default())?;
        let h = r.hausdorff.unwrap_or(f64::INFINITY);
        Ok((h <= 0.05, format!("hausdorff {h:.4e} (≤ 0.05)")))
    })
}

/// Constant symbols collapse to the multiplier `e^{iψ₀t}`.
pub fn constant_collapse() -> CriterionResult {
    timed(2, "constant symbols collapse to a multiplier", || {
        let g = default_grid();
        let mut pass = true;
        let mut parts = vec![];
        for psi0 in [c(0.0, 2.0), c(1.0, 1.0)] {
            let psi = AnalyticSymbol::constant(psi0)?;
            let plan = plan_expansion(&psi, &g, 1e-6)?;
            let a = build_composition_operator(&plan, &g)?;
            let d = fourier_multiplier(|t| (c(0.0, 1.0) * psi0 * t).exp(), &g)?;
            let diff = operator_norm_estimate(&a.minus(&d), &NormOptions::default())?;
            let ok = plan.tail_bound <= 1e-6 && diff <= plan.tail_bound + 1e-6;
            pass &= ok;
            parts.push(format!("ψ₀={psi0}: ‖A−D‖={diff:.2e}, tail={:.2e}, M={}", plan.tail_bound, plan.trunc_order));
        }
        Ok((pass, parts.join("; ")))
    })
}

/// Series against the Cauchy-integral oracle for the Möbius symbol.
pub fn oracle_equivalence() -> CriterionResult {
    timed(3, "series matches quadrature oracle", || {
        let r = oracle_vs_series_report(&moebius(), &default_grid(), 1e-3, &QuadSpec::default())?;
        Ok((
            r.max_rel_err <= 5e-3,
            format!(
                "max rel err {:.3e} over {} vectors (≤ 5e-3); tail {:.2e}, quadrature {:.1e}, grid {:.2e}",
                r.max_rel_err,
                r.rel_errors.len(),
                r.tail_bound,
                r.quadrature_bound,
                r.grid_eps
            ),
        ))
    })
}

/// Möbius symbol with limit 2i: containment of [0, 1].
pub fn moebius_containment() -> CriterionResult {
    timed(4, "moebius limit case contains [0,1]", || {
        let r = spectrum_report(&moebius(), &default_grid(), 1e-6, &SpectrumOptions::containment())?;
        let m = r.containment_margin.unwrap_or(f64::INFINITY);
        Ok((
            m <= 0.05,
            format!(
                "margin {m:.4e} (≤ 0.05) over {} points; Lipschitz bound {:.4e}",
                r.evaluated_points,
                r.containment_bound.unwrap_or(f64::NAN)
            ),
        ))
    })
}

/// Oscillatory symbol: containment at N = 2048 and refinement to 4096.
pub fn oscillatory_containment() -> CriterionResult {
    timed(5, "oscillatory symbol containment", || {
        let psi = log_oscillation();
        let opts = SpectrumOptions::containment();
        let coarse = spectrum_report(&psi, &default_grid(), 1e-6, &opts)?;
        let fine = spectrum_report(&psi, &HardyGrid::new(4096, 200.0)?, 1e-6, &opts)?;
        let m1 = coarse.containment_margin.unwrap_or(f64::INFINITY);
        let m2 = fine.containment_margin.unwrap_or(f64::INFINITY);
        Ok((
            m1 <= 0.1 && m2 <= m1 + 0.01,
            format!("margin N=2048 {m1:.4e} (≤ 0.1), N=4096 {m2:.4e} (≤ previous + 0.01)"),
        ))
    })
}

/// α selection on random clouds and the two-point calculus case.
pub fn alpha_selection() -> CriterionResult {
    timed(6, "alpha selection", || {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let n = rng.random_range(1..40);
            let cloud: PointCloud = (0..n)
                .map(|_| c(rng.random_range(-5.0..=5.0), rng.random_range(0.5..=5.0)))
                .collect();
            let s = select_alpha(cloud.clone())?;
            let ia = c(0.0, s.alpha);
            let strict = cloud.points().iter().all(|z| (ia - z).norm() < s.delta * s.alpha);
            if !(s.delta < 1.0 && strict) {
                return Ok((false, format!("postcondition fails on {:?}", cloud.points())));
            }
            worst = worst.max(s.delta);
        }
        let s = select_alpha(PointCloud::new(vec![c(0.0, 1.0), c(1.0, 1.0)]))?;
        let ok = (s.alpha - 2.0).abs() <= 1e-4 && (s.delta - FRAC_1_SQRT_2).abs() <= 1e-6;
        Ok((
            ok,
            format!(
                "100 clouds ok (max δ {worst:.4}); K={{i,1+i}}: α={:.8}, δ={:.10}",
                s.alpha, s.delta
            ),
        ))
    })
}

/// The builtin families used for the term-norm check.
pub fn builtin_families() -> Result<Vec<(&'static str, AnalyticSymbol)>> {
    Ok(vec![
        ("constant", AnalyticSymbol::constant(c(1.0, 1.0))?),
        ("moebius_decay", moebius()),
        ("log_oscillation", log_oscillation()),
        (
            "disc_transfer",
            transfer_disc_symbol(&DiscSymbol::polynomial(vec![c(0.0, 2.0), c(0.5, 0.0), c(0.0, 0.25)])?)?,
        ),
        (
            "sum",
            AnalyticSymbol::sum(vec![AnalyticSymbol::constant(c(0.5, 1.0))?, moebius()])?,
        ),
    ])
}

/// Per-term norms of the series obey `‖term_n‖ ≤ δ̂ⁿ`.
pub fn term_norms() -> CriterionResult {
    timed(7, "series terms bounded by powers of delta", || {
        let g = HardyGrid::new(1024, 100.0)?;
        let mut pass = true;
        let mut parts = vec![];
        for (name, psi) in builtin_families()? {
            let plan = plan_expansion(&psi, &g, 1e-3)?;
            let series = build_series(&plan, &g)?;
            let mut worst = 0.0f64;
            for n in 0..plan.trunc_order {
                let norm = operator_norm_dense(&assemble_dense(&series.term(n))?)?;
                let bound = plan.delta_hat.powi(n as i32);
                worst = worst.max(norm / bound);
                pass &= norm <= bound * (1.0 + 1e-6);
            }
            parts.push(format!("{name}: M={} max ‖term‖/δ̂ⁿ={worst:.4}", plan.trunc_order));
        }
        Ok((pass, parts.join("; ")))
    })
}

/// Tail-restricted commutator norms decrease along the ladder.
pub fn essential_normality() -> CriterionResult {
    timed(8, "commutator tails decrease", || {
        let g = default_grid();
        let mut pass = true;
        let mut parts = vec![];
        for (name, psi) in [("constant i", AnalyticSymbol::constant(c(0.0, 1.0))?), ("moebius", moebius())] {
            let plan = plan_expansion(&psi, &g, 1e-6)?;
            let m = assemble_dense(&build_composition_operator(&plan, &g)?)?;
            let r = essential_normality_diagnostic(&m, &g)?;
            pass &= r.strictly_decreasing;
            parts.push(format!(
                "{name}: {}",
                r.tail_comm_norms.iter().map(|v| format!("{v:.3e}")).collect::<Vec<_>>().join(" > ")
            ));
        }
        Ok((pass, parts.join("; ")))
    })
}

/// Seeded invariant checks: projection, multipliers, Hausdorff, spirals.
pub fn invariants() -> CriterionResult {
    timed(9, "invariant suites", || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = HardyGrid::new(512, 40.0)?;
        let mut fails = vec![];
        let rand_vec = |rng: &mut ChaCha8Rng, n: usize| -> Vec<Complex64> {
            (0..n).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
        };
        for _ in 0..20 {
            let v = rand_vec(&mut rng, g.n_points());
            let p = project_hardy(&v);
            if project_hardy(p.coeffs()) != p {
                fails.push("projection idempotence");
            }
            let (a, b) = (rng.random_range(0.1..3.0), rng.random_range(-2.0..2.0));
            let th1 = move |t: f64| c(0.0, b * t).exp() / (1.0 + a * t);
            let th2 = move |t: f64| c((-a * t).exp(), 0.0);
            let prod = fourier_multiplier(move |t| th1(t) * th2(t), &g)?;
            let d1 = fourier_multiplier(th1, &g)?;
            let d2 = fourier_multiplier(th2, &g)?;
            let x = rand_vec(&mut rng, g.n_plus());
            let lhs = prod.apply_half(&x);
            let rhs = d1.apply_half(&d2.apply_half(&x));
            let err: f64 = lhs.iter().zip(&rhs).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>().sqrt();
            if err > 1e-6 * crate::halfline::norm2(&lhs).max(1e-300) {
                fails.push("multiplier homomorphism");
            }
            let sup = g.nonneg_ts().iter().map(|&t| th1(t).norm()).fold(0.0, f64::max);
            let est = operator_norm_estimate(&d1, &NormOptions::default())?;
            if (est - sup).abs() > 1e-6 * sup {
                fails.push("multiplier norm identity");
            }
        }
        for _ in 0..20 {
            let mut cloud = |k: usize| -> PointCloud {
                (0..k).map(|_| c(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0))).collect()
            };
            let (a, b, d) = (cloud(7), cloud(5), cloud(9));
            let (ab, ba) = (hausdorff(&a, &b)?, hausdorff(&b, &a)?);
            let (ad, db) = (hausdorff(&a, &d)?, hausdorff(&d, &b)?);
            if ab != ba || ab > ad + db + 1e-12 || hausdorff(&a, &a)? != 0.0 {
                fails.push("hausdorff metric");
            }
        }
        for _ in 0..10 {
            let k = rng.random_range(1..5);
            let gens: PointCloud = (0..k).map(|_| c(rng.random_range(-3.0..3.0), rng.random_range(0.5..4.0))).collect();
            let s = predict_essential_spectrum(&gens, 0.5, 0.02)?;
            let pts = s.points.points();
            if !pts.contains(&c(0.0, 0.0)) || !pts.contains(&c(1.0, 0.0)) || pts.iter().any(|p| p.norm() > 1.0 + 1e-12) {
                fails.push("spiral membership");
            }
        }
        fails.dedup();
        if fails.is_empty() {
            Ok((true, "projection, multipliers, hausdorff, spirals: all hold".into()))
        } else {
            Ok((false, format!("violated: {}", fails.join(", "))))
        }
    })
}

pub fn run_one(id: u8) -> Option<CriterionResult> {
    Some(match id {
        1 => translation_equality(),
        2 => constant_collapse(),
        3 => oracle_equivalence(),
        4 => moebius_containment(),
        5 => oscillatory_containment(),
        6 => alpha_selection(),
        7 => term_norms(),
        8 => essential_normality(),
        9 => invariants(),
        _ => return None,
    })
}

/// Runs the selected criteria in order, skipping unknown ids.
pub fn run(ids: &[u8]) -> Vec<CriterionResult> {
    ids.iter().filter_map(|&id| run_one(id)).collect()
}

