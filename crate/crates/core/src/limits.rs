//! Scaling limits at the hard edge, in the bulk and at the soft edge, the
//! maps that zoom into each regime, and the harness comparing finite N
//! against the limits.

use std::f64::consts::PI;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::airy::{airy_multivariate, AiryQuadSpec};
use crate::constants::{
    coefficient_a_k, coefficient_b_k, coefficient_gamma_m, coefficient_phi, coefficient_psi_even,
    coefficient_psi_odd, coefficient_xi, gamma_beta_n, rho,
};
use crate::ensembles::{expect_exact, mc_expect, CharpolyResult, EnsembleKind, EnsembleSpec};
use crate::error::{domain, Error, Result};
use crate::hyper::{eval_e, eval_pfq, eval_two_set, HyperSeriesSpec, TruncationPolicy};
use crate::scalar::C64;

const I: C64 = Complex::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Hard,
    Bulk,
    Soft,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingMap {
    pub a: f64,
    pub b: f64,
    pub rho: Option<f64>,
    pub regime: Regime,
    pub u: Option<f64>,
}

impl ScalingMap {
    /// The finite-N argument for the rescaled variable s.
    pub fn point(&self, s: f64) -> f64 {
        match self.regime {
            Regime::Hard => self.b * s,
            Regime::Soft => self.a + self.b * s,
            Regime::Bulk => self.a * self.u.unwrap_or(0.0) + self.b * s,
        }
    }
}

pub fn scaling_map(spec: &EnsembleSpec, regime: Regime, u: Option<f64>) -> Result<ScalingMap> {
    spec.validate()?;
    let nn = spec.n as f64;
    let bad = || Error::Domain(format!("no {regime:?} regime for the {:?} ensemble", spec.kind));
    Ok(match (regime, spec.kind) {
        (Regime::Soft, EnsembleKind::Hermite) => {
            ScalingMap { a: (2.0 * nn).sqrt(), b: nn.powf(-1.0 / 6.0) / 2f64.sqrt(), rho: None, regime, u: None }
        }
        (Regime::Soft, EnsembleKind::Laguerre) => {
            ScalingMap { a: 4.0 * nn, b: 2.0 * (2.0 * nn).cbrt(), rho: None, regime, u: None }
        }
        (Regime::Hard, EnsembleKind::Laguerre) => ScalingMap { a: 0.0, b: 1.0 / nn, rho: None, regime, u: None },
        (Regime::Hard, EnsembleKind::Jacobi) => ScalingMap { a: 0.0, b: nn.powi(-2), rho: None, regime, u: None },
        (Regime::Bulk, kind) => {
            let u = u.ok_or_else(|| Error::Domain("bulk regime needs a location u".into()))?;
            let a = match kind {
                EnsembleKind::Hermite => (2.0 * nn).sqrt(),
                EnsembleKind::Laguerre => 4.0 * nn,
                EnsembleKind::Jacobi => 1.0,
            };
            let r = rho(kind, u)?;
            ScalingMap { a, b: a / (r * nn), rho: Some(r), regime, u: Some(u) }
        }
        _ => return Err(bad()),
    })
}

fn cvec(s: &[f64]) -> Vec<C64> {
    s.iter().map(|&v| Complex::new(v, 0.0)).collect()
}

/// ₀F₁^(β/2)((2/β)(λ₁+n); −s).
pub fn hard_edge_limit(beta: f64, lambda1: f64, s: &[C64]) -> Result<C64> {
    if !(lambda1 > -1.0) {
        return domain(format!("lambda1 must exceed -1, got {lambda1}"));
    }
    let n = s.len() as f64;
    let spec = HyperSeriesSpec::real(beta / 2.0, &[], &[2.0 / beta * (lambda1 + n)])
        .with_truncation(TruncationPolicy { max_weight: 160, ..Default::default() });
    let neg: Vec<C64> = s.iter().map(|v| -v).collect();
    Ok(eval_pfq(&spec, &neg)?.value)
}

fn split_signs(m: usize) -> Vec<C64> {
    (0..2 * m).map(|i| Complex::new(if i < m { 1.0 } else { -1.0 }, 0.0)).collect()
}

/// γ_m(4/β) ₀𝓕₀^(β/2)(iπs; 1^m, (−1)^m) for dim(s) = 2m.
pub fn bulk_limit_even(beta: f64, s: &[f64]) -> Result<C64> {
    if s.is_empty() || s.len() % 2 != 0 {
        return domain(format!("bulk limit needs an even number of arguments, got {}", s.len()));
    }
    let m = s.len() / 2;
    let bp = if beta.is_infinite() { 0.0 } else { 4.0 / beta };
    let g = coefficient_gamma_m(bp, m)?.value;
    let x: Vec<C64> = s.iter().map(|&v| I * PI * v).collect();
    let spec = HyperSeriesSpec::new(beta / 2.0, &[], &[])
        .with_truncation(TruncationPolicy { max_weight: 200, ..Default::default() });
    Ok(g * eval_two_set(&spec, &x, &split_signs(m), 2 * m)?.value)
}

/// The same limit as γ_m e^{−iπp₁(s)} ₁F₁^(β/2)(2m/β; 2n/β; 2iπs).
pub fn bulk_limit_even_confluent(beta: f64, s: &[f64]) -> Result<C64> {
    if s.is_empty() || s.len() % 2 != 0 {
        return domain(format!("bulk limit needs an even number of arguments, got {}", s.len()));
    }
    let n = s.len();
    let m = n / 2;
    let g = coefficient_gamma_m(4.0 / beta, m)?.value;
    let p1: f64 = s.iter().sum();
    let spec = HyperSeriesSpec::real(beta / 2.0, &[2.0 * m as f64 / beta], &[2.0 * n as f64 / beta])
        .with_truncation(TruncationPolicy { max_weight: 200, ..Default::default() });
    let z: Vec<C64> = s.iter().map(|&v| 2.0 * I * PI * v).collect();
    Ok(g * (-I * PI * p1).exp() * eval_pfq(&spec, &z)?.value)
}

/// (2π)^n Γ_{4/β,n}^{−1} Ai^(β/2)(s).
pub fn soft_edge_limit(beta: f64, s: &[f64]) -> Result<f64> {
    let n = s.len();
    let g = gamma_beta_n(4.0 / beta, n)?.value.re;
    let ai = airy_multivariate(&AiryQuadSpec::new(beta / 2.0, n), s)?;
    Ok((2.0 * PI).powi(n as i32) / g * ai.value)
}

/// (1/2i){E_{m−1}(iπs)E_{m−1}(−iπt) − E_{m−1}(iπt)E_{m−1}(−iπs)}.
pub fn bulk_kernel_odd(beta: f64, m: usize, s: &[f64], t: &[f64]) -> Result<C64> {
    let n = 2 * m - 1;
    if m == 0 || s.len() != n || t.len() != n {
        return domain(format!("kernel needs two vectors of dimension 2m−1 = {n}"));
    }
    let alpha = beta / 2.0;
    let e = |v: &[f64], sign: f64| -> Result<C64> {
        let x: Vec<C64> = v.iter().map(|&w| sign * I * PI * w).collect();
        eval_e(m - 1, alpha, &x, n)
    };
    Ok((e(s, 1.0)? * e(t, -1.0)? - e(t, 1.0)? * e(s, -1.0)?) / (2.0 * I))
}

/// Constants for the parameter-varying Laguerre and Jacobi ensembles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VaryingConstants {
    pub lambda_minus: f64,
    pub lambda_plus: f64,
    pub b_minus: f64,
    pub b_plus: f64,
    /// Double saddles of the Laguerre phase at the two edges.
    pub laguerre_x_l: f64,
    pub laguerre_x_r: f64,
    /// Double saddles of the Jacobi phase at the two edges.
    pub jacobi_x_l: f64,
    pub jacobi_x_r: f64,
    pub g_minus: f64,
    pub g_plus: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

pub fn parameter_varying_constants(gamma1: f64, gamma2: f64) -> Result<VaryingConstants> {
    if !(gamma1 >= 1.0 && gamma2 >= 1.0) {
        return domain(format!("gamma1, gamma2 must be at least 1, got {gamma1}, {gamma2}"));
    }
    let r1 = gamma1.sqrt();
    let lambda_minus = ((1.0 - r1) / 2.0).powi(2);
    let lambda_plus = ((1.0 + r1) / 2.0).powi(2);
    let g12 = gamma1 + gamma2;
    let root = (gamma1 * (g12 - 1.0)).sqrt();
    let b_minus = ((root - gamma2.sqrt()) / g12).powi(2);
    let b_plus = ((root + gamma2.sqrt()) / g12).powi(2);
    let laguerre_x_l = 1.0 / (1.0 - r1);
    let laguerre_x_r = 1.0 / (1.0 + r1);
    let pre = (gamma2 / gamma1).sqrt();
    let jacobi_x_l = pre * ((gamma1 * gamma2).sqrt() + (g12 - 1.0).sqrt()) / (1.0 - gamma1);
    let jacobi_x_r = pre * ((gamma1 * gamma2).sqrt() - (g12 - 1.0).sqrt()) / (1.0 - gamma1);
    let p3 = |x: f64, u: f64| {
        2.0 * gamma2 / x.powi(3) + 2.0 * (g12 - 1.0) / (1.0 - x).powi(3) - 2.0 * u.powi(3) / (1.0 - u + u * x).powi(3)
    };
    let g_minus = (1.0 - b_minus + b_minus * jacobi_x_l).powi(2) * (p3(jacobi_x_l, b_minus) / 2.0).cbrt();
    let g_plus = (1.0 - b_plus + b_plus * jacobi_x_r).powi(2) * (p3(jacobi_x_r, b_plus) / 2.0).cbrt();
    Ok(VaryingConstants {
        lambda_minus,
        lambda_plus,
        b_minus,
        b_plus,
        laguerre_x_l,
        laguerre_x_r,
        jacobi_x_l,
        jacobi_x_r,
        g_minus,
        g_plus,
        gamma1,
        gamma2,
    })
}

impl VaryingConstants {
    pub fn rho_laguerre(&self, u: f64) -> f64 {
        if u <= self.lambda_minus || u >= self.lambda_plus {
            return 0.0;
        }
        2.0 / (PI * u) * ((u - self.lambda_minus) * (self.lambda_plus - u)).sqrt()
    }

    pub fn rho_jacobi(&self, u: f64) -> f64 {
        if u <= self.b_minus || u >= self.b_plus {
            return 0.0;
        }
        (self.gamma1 + self.gamma2) / (2.0 * PI * u * (1.0 - u)) * ((u - self.b_minus) * (self.b_plus - u)).sqrt()
    }
}

/// Bulk saddles of ln x − γ₁ ln(1−x) − 4ux.
pub fn laguerre_varying_saddles(u: f64, gamma1: f64) -> Result<(C64, C64)> {
    let c = parameter_varying_constants(gamma1, 1.0)?;
    let re = (4.0 * u + 1.0 - gamma1) / (8.0 * u);
    let im = Complex::new((u - c.lambda_minus) * (c.lambda_plus - u), 0.0).sqrt() / (2.0 * u);
    Ok((re + I * im, re - I * im))
}

/// Bulk saddles of γ₂ ln x − (γ₁+γ₂−1) ln(1−x) − ln(1−u+ux).
pub fn jacobi_varying_saddles(u: f64, gamma1: f64, gamma2: f64) -> Result<(C64, C64)> {
    let c = parameter_varying_constants(gamma1, gamma2)?;
    let re = (gamma1 - gamma2) * u + 1.0 - gamma1;
    let im = (gamma1 + gamma2) * Complex::new((u - c.b_minus) * (c.b_plus - u), 0.0).sqrt();
    let d = 2.0 * gamma1 * u;
    Ok(((re + I * im) / d, (re - I * im) / d))
}

fn vandermonde_abs_pow(x: &[f64], beta: f64) -> f64 {
    let mut v = 1.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            v *= (x[i] - x[j]).abs().powf(beta);
        }
    }
    v
}

fn repeated(x: &[f64], times: usize) -> Vec<f64> {
    x.iter().flat_map(|&v| std::iter::repeat(v).take(times)).collect()
}

/// Limiting k-point correlation at the soft edge or in the bulk, β even.
pub fn correlation_limit(regime: Regime, beta: f64, x: &[f64]) -> Result<f64> {
    if beta.fract() != 0.0 || (beta as usize) % 2 != 0 || beta <= 0.0 {
        return domain("correlation requires even β");
    }
    let k = x.len();
    if k == 0 {
        return domain("at least one point required");
    }
    let bi = beta as usize;
    let s = repeated(x, bi);
    let n = s.len();
    match regime {
        Regime::Soft => {
            if n > 3 {
                return Err(Error::UnsupportedRegime(format!(
                    "soft-edge correlation needs kβ ≤ 3 Airy variables, got {n}"
                )));
            }
            let ai = airy_multivariate(&AiryQuadSpec::new(beta / 2.0, n), &s)?;
            Ok(coefficient_a_k(beta, k)?.value.re * vandermonde_abs_pow(x, beta) * ai.value)
        }
        Regime::Bulk => {
            let p1: f64 = s.iter().sum();
            let nf = n as f64;
            let spec = HyperSeriesSpec::real(beta / 2.0, &[nf / beta], &[2.0 * nf / beta])
                .with_truncation(TruncationPolicy { max_weight: 200, ..Default::default() });
            let z: Vec<C64> = s.iter().map(|&v| 2.0 * I * PI * v).collect();
            let f = (-I * PI * p1).exp() * eval_pfq(&spec, &z)?.value;
            let scaled: Vec<f64> = x.iter().map(|v| 2.0 * PI * v).collect();
            Ok(coefficient_b_k(beta, k)?.value.re * vandermonde_abs_pow(&scaled, beta) * f.re)
        }
        Regime::Hard => Err(Error::UnsupportedRegime("no closed hard-edge correlation limit".into())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FiniteMethod {
    Exact,
    MonteCarlo { draws: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub n_values: Vec<usize>,
    /// Rescaled finite-N values, one row per N, one entry per s.
    pub rescaled: Vec<Vec<C64>>,
    pub limit: Vec<C64>,
    /// Worst error over the s-grid at each N.
    pub rel_errors: Vec<f64>,
    /// Unit-modulus phase divided out at each N.
    pub phases: Vec<f64>,
    pub fitted_order: f64,
    pub fit_residual: f64,
}

fn finite(spec: &EnsembleSpec, s: &[C64], method: FiniteMethod) -> Result<CharpolyResult> {
    match method {
        FiniteMethod::Exact => expect_exact(spec, s),
        FiniteMethod::MonteCarlo { draws, seed } => mc_expect(spec, s, draws, seed),
    }
}

/// Slope and RMS residual of the least-squares line through (ln N, ln err).
pub fn fit_order(ns: &[usize], errs: &[f64]) -> (f64, f64) {
    let pts: Vec<(f64, f64)> =
        ns.iter().zip(errs).filter(|(_, &e)| e > 0.0).map(|(&n, &e)| ((n as f64).ln(), e.ln())).collect();
    if pts.len() < 2 {
        return (f64::NAN, f64::NAN);
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let res = (pts.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum::<f64>() / k).sqrt();
    (slope, res)
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Phase θ minimizing Σ|r e^{−iθ} − l|² and the worst |r e^{−iθ}/l − 1|.
pub fn phase_aligned_error(rescaled: &[C64], limit: &[C64]) -> (f64, f64) {
    let cross: C64 = rescaled.iter().zip(limit).map(|(r, l)| r * l.conj()).sum();
    let theta = cross.arg();
    let rot = Complex::from_polar(1.0, -theta);
    let err = rescaled.iter().zip(limit).map(|(r, l)| (r * rot / l - 1.0).norm()).fold(0.0, nan_max);
    (theta, err)
}

/// Finite-N values, rescaled per the regime's theorem, against the limit.
///
/// Hard-edge errors are |K_N(Bs)/ξ − ₀F₁| over max(1, |₀F₁|); bulk and
/// soft errors are relative after removing a best-fit constant phase.
pub fn convergence_report(
    template: &EnsembleSpec,
    regime: Regime,
    u: Option<f64>,
    s_grid: &[Vec<f64>],
    n_list: &[usize],
    method: FiniteMethod,
) -> Result<ConvergenceReport> {
    let n = s_grid.first().map(|s| s.len()).unwrap_or(0);
    if n == 0 || s_grid.iter().any(|s| s.len() != n) {
        return domain("s-grid needs points of one common positive dimension");
    }
    let beta = template.beta;
    let limit: Vec<C64> = s_grid
        .iter()
        .map(|s| -> Result<C64> {
            match regime {
                Regime::Hard => hard_edge_limit(beta, template.lambda1, &cvec(s)),
                Regime::Bulk => {
                    if n % 2 != 0 {
                        return Err(Error::UnsupportedRegime(
                            "odd n in the bulk goes through the kernel comparison".into(),
                        ));
                    }
                    bulk_limit_even(beta, s)
                }
                Regime::Soft => Ok(Complex::new(soft_edge_limit(beta, s)?, 0.0)),
            }
        })
        .collect::<Result<_>>()?;
    let rows: Vec<(Vec<C64>, f64, f64)> = n_list
        .par_iter()
        .map(|&nn| -> Result<(Vec<C64>, f64, f64)> {
            let spec = EnsembleSpec { n: nn, ..*template };
            let map = scaling_map(&spec, regime, u)?;
            let ln_coef = match regime {
                Regime::Hard => coefficient_xi(&spec, n)?.log_value,
                Regime::Bulk => coefficient_psi_even(&spec, n / 2, u.unwrap_or(0.0))?.log_value,
                Regime::Soft => coefficient_phi(&spec, n)?.log_value,
            };
            let row: Vec<C64> = s_grid
                .iter()
                .map(|s| -> Result<C64> {
                    let pts: Vec<C64> = s.iter().map(|&v| Complex::new(map.point(v), 0.0)).collect();
                    let r = finite(&spec, &pts, method)?;
                    let ln_val = if regime == Regime::Hard { r.ln_k } else { r.ln_phi };
                    Ok((ln_val - ln_coef).exp())
                })
                .collect::<Result<_>>()?;
            let (theta, err) = if regime == Regime::Hard {
                let e = row.iter().zip(&limit).map(|(r, l)| (r - l).norm() / l.norm().max(1.0)).fold(0.0, nan_max);
                (0.0, e)
            } else {
                phase_aligned_error(&row, &limit)
            };
            Ok((row, err, theta))
        })
        .collect::<Result<_>>()?;
    let rel_errors: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let (fitted_order, fit_residual) = fit_order(n_list, &rel_errors);
    Ok(ConvergenceReport {
        n_values: n_list.to_vec(),
        rescaled: rows.iter().map(|r| r.0.clone()).collect(),
        limit,
        phases: rows.iter().map(|r| r.2).collect(),
        rel_errors,
        fitted_order,
        fit_residual,
    })
}

/// Finite-N antisymmetrized kernel over Ψ^(0)Ψ^(1) on an (s, t) grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelComparison {
    pub pairs: Vec<(f64, f64)>,
    pub finite: Vec<C64>,
    pub limit: Vec<C64>,
    pub phase: f64,
    pub max_rel_error: f64,
}

/// The odd-n bulk kernel at finite N for n = 1, against sin(π(s−t)) and
/// its generalization through E_{m−1}.
pub fn kernel_comparison(spec: &EnsembleSpec, u: f64, s_vals: &[f64], t_vals: &[f64]) -> Result<KernelComparison> {
    if spec.n < 2 {
        return domain("kernel comparison needs N ≥ 2");
    }
    let map = scaling_map(spec, Regime::Bulk, Some(u))?;
    let prev = EnsembleSpec { n: spec.n - 1, ..*spec };
    let psi0 = coefficient_psi_odd(spec, 1, 0, u)?.log_value;
    let psi1 = coefficient_psi_odd(spec, 1, 1, u)?.log_value;
    let phi = |sp: &EnsembleSpec, v: f64| -> Result<C64> {
        Ok(expect_exact(sp, &[Complex::new(map.point(v), 0.0)])?.ln_phi)
    };
    let mut pairs = Vec::new();
    let mut finite_vals = Vec::new();
    let mut limit = Vec::new();
    for &s in s_vals {
        for &t in t_vals {
            let a = (phi(spec, s)? + phi(&prev, t)? - psi0 - psi1).exp();
            let b = (phi(spec, t)? + phi(&prev, s)? - psi0 - psi1).exp();
            pairs.push((s, t));
            finite_vals.push(a - b);
            limit.push(bulk_kernel_odd(spec.beta, 1, &[s], &[t])?);
        }
    }
    let (phase, max_rel_error) = phase_aligned_error(&finite_vals, &limit);
    Ok(KernelComparison { pairs, finite: finite_vals, limit, phase, max_rel_error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{airy_ai, airy_ai_prime, bessel_normalized};

    #[test]
    fn scaling_maps() {
        let h = scaling_map(&EnsembleSpec::hermite(64, 2.0), Regime::Soft, None).unwrap();
        assert!((h.a - 128f64.sqrt()).abs() < 1e-14 && (h.b - 0.5 / 2f64.sqrt()).abs() < 1e-14);
        let l = scaling_map(&EnsembleSpec::laguerre(10, 2.0, 0.0), Regime::Bulk, Some(0.5)).unwrap();
        assert_eq!(l.a, 40.0);
        assert!((l.rho.unwrap() - 2.0 / PI).abs() < 1e-15);
        let j = scaling_map(&EnsembleSpec::jacobi(10, 2.0, 0.0, 0.0), Regime::Hard, None).unwrap();
        assert!((j.b - 0.01).abs() < 1e-16);
        assert!(scaling_map(&EnsembleSpec::hermite(10, 2.0), Regime::Hard, None).is_err());
        assert!(scaling_map(&EnsembleSpec::jacobi(10, 2.0, 0.0, 0.0), Regime::Soft, None).is_err());
    }

    #[test]
    fn hard_edge_examples() {
        assert!((hard_edge_limit(2.0, 0.0, &[Complex::new(0.0, 0.0)]).unwrap() - 1.0).norm() < 1e-15);
        for s in [0.3, 1.0, 2.7] {
            let v = hard_edge_limit(2.0, 0.0, &[Complex::new(s, 0.0)]).unwrap();
            assert!((v.re - libm::j0(2.0 * s.sqrt())).abs() < 1e-13);
        }
    }

    #[test]
    fn bulk_examples() {
        let s = [0.3, -0.4];
        let d = s[0] - s[1];
        let v = bulk_limit_even(2.0, &s).unwrap();
        assert!((v.re - (PI * d).sin() / (PI * d)).abs() < 1e-12 && v.im.abs() < 1e-12);
        let w = bulk_limit_even(f64::INFINITY, &s).unwrap();
        assert!((w.re / 2.0 - (PI * d).cos()).abs() < 1e-12);
        for beta in [1.0, 2.0, 4.0, 3.0] {
            let g = coefficient_gamma_m(4.0 / beta, 1).unwrap().value.re;
            let z = bulk_limit_even(beta, &[0.0, 0.0]).unwrap();
            assert!((z.re - g).abs() < 1e-13);
            let a = bulk_limit_even(beta, &s).unwrap();
            let b = bulk_limit_even_confluent(beta, &s).unwrap();
            assert!((a - b).norm() < 1e-9, "beta={beta}");
            // Bessel closed form for m = 1 in the normalized variable
            let nu = 2.0 / beta - 0.5;
            let want = g * bessel_normalized(nu, PI * d);
            assert!((a.re - want).abs() < 1e-9, "beta={beta}: {} vs {want}", a.re);
        }
    }

    #[test]
    fn kernel_examples() {
        for beta in [1.0, 2.0, 5.0] {
            let v = bulk_kernel_odd(beta, 1, &[0.7], &[0.2]).unwrap();
            assert!((v.re - (PI * 0.5).sin()).abs() < 1e-13 && v.im.abs() < 1e-13);
        }
        let z = bulk_kernel_odd(2.0, 2, &[0.1, 0.2, 0.3], &[0.1, 0.2, 0.3]).unwrap();
        assert!(z.norm() < 1e-12);
        let a = bulk_kernel_odd(2.0, 2, &[0.1, -0.2, 0.35], &[0.4, 0.0, -0.3]).unwrap();
        let b = bulk_kernel_odd(2.0, 2, &[0.4, 0.0, -0.3], &[0.1, -0.2, 0.35]).unwrap();
        assert!((a + b).norm() < 1e-12 && a.im.abs() < 1e-12);
    }

    #[test]
    fn varying_constants() {
        let c = parameter_varying_constants(1.0, 1.0).unwrap();
        assert_eq!((c.lambda_minus, c.lambda_plus, c.b_minus, c.b_plus), (0.0, 1.0, 0.0, 1.0));
        let c = parameter_varying_constants(4.0, 2.0).unwrap();
        assert!((c.lambda_minus - 0.25).abs() < 1e-15 && (c.lambda_plus - 2.25).abs() < 1e-15);
        // the edge saddles are double roots of the phase derivative
        let (g1, g2) = (c.gamma1, c.gamma2);
        let dp = |x: f64, u: f64| g2 / x + (g1 + g2 - 1.0) / (1.0 - x) - u / (1.0 - u + u * x);
        let d2p = |x: f64, u: f64| -g2 / (x * x) + (g1 + g2 - 1.0) / (1.0 - x).powi(2) + u * u / (1.0 - u + u * x).powi(2);
        assert!(dp(c.jacobi_x_l, c.b_minus).abs() < 1e-10 && d2p(c.jacobi_x_l, c.b_minus).abs() < 1e-10);
        assert!(dp(c.jacobi_x_r, c.b_plus).abs() < 1e-10 && d2p(c.jacobi_x_r, c.b_plus).abs() < 1e-10);
        let lp = |x: f64, u: f64| 1.0 / x + g1 / (1.0 - x) - 4.0 * u;
        assert!(lp(c.laguerre_x_l, c.lambda_minus).abs() < 1e-10);
        assert!(lp(c.laguerre_x_r, c.lambda_plus).abs() < 1e-10);
        assert!(c.g_minus.is_finite() && c.g_plus.is_finite());
        // densities integrate to one
        let q = crate::quad::composite(c.lambda_minus, c.lambda_plus, 64, 16);
        let tot: f64 = q.iter().map(|&(x, w)| w * c.rho_laguerre(x)).sum();
        assert!((tot - 1.0).abs() < 1e-4, "{tot}");
    }

    #[test]
    fn varying_saddles_solve_the_saddle_equation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g1 = rng.gen_range(1.0..6.0);
            let g2 = rng.gen_range(1.0..6.0);
            let c = parameter_varying_constants(g1, g2).unwrap();
            let u = rng.gen_range(c.lambda_minus..c.lambda_plus);
            let (a, b) = laguerre_varying_saddles(u, g1).unwrap();
            let f = |x: C64| 1.0 / x + g1 / (1.0 - x) - 4.0 * u;
            assert!(f(a).norm() < 1e-10 && f(b).norm() < 1e-10);
            assert!((a - b.conj()).norm() < 1e-12);
            let u = rng.gen_range(c.b_minus..c.b_plus);
            let (a, b) = jacobi_varying_saddles(u, g1, g2).unwrap();
            let f = |x: C64| g2 / x + (g1 + g2 - 1.0) / (1.0 - x) - u / (1.0 - u + u * x);
            assert!(f(a).norm() < 1e-10 && f(b).norm() < 1e-10, "{g1} {g2} {u}");
        }
    }

    #[test]
    fn correlation_limits() {
        for x in [-1.0, 0.0, 0.37, 1.5] {
            let v = correlation_limit(Regime::Bulk, 2.0, &[x]).unwrap();
            assert!((v - 1.0).abs() < 1e-10, "{x}: {v}");
        }
        for x in [-0.5, 0.0, 0.8] {
            let v = correlation_limit(Regime::Soft, 2.0, &[x]).unwrap();
            let (f, fp) = (airy_ai(x), airy_ai_prime(x));
            assert!((v - (fp * fp - x * f * f)).abs() < 1e-7, "{x}: {v}");
        }
        assert!(correlation_limit(Regime::Bulk, 3.0, &[0.0]).is_err());
    }

    #[test]
    fn soft_limit_one_variable() {
        for s in [-1.0, 0.0, 1.0] {
            let v = soft_edge_limit(2.0, &[s]).unwrap();
            assert!((v - (2.0 * PI).sqrt() * airy_ai(s)).abs() < 1e-9);
        }
    }

    #[test]
    fn order_fit() {
        let (k, r) = fit_order(&[10, 20, 40], &[1.0, 0.5, 0.25]);
        assert!((k + 1.0).abs() < 1e-12 && r < 1e-12);
    }
}
