//! Finite-N characteristic-polynomial expectations.

use std::f64::consts::{LN_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Gamma, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::{coefficient_xi, gamma_beta_n, gaussian_g, laguerre_w, selberg_s};
use crate::error::{domain, Error, Result};
use crate::hyper::{eval_pfq, eval_two_set, HyperSeriesSpec, Precision, TruncationPolicy};
use crate::quad::composite;
use crate::scalar::C64;
use crate::special::ln_gamma;

const I: C64 = Complex::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleKind {
    Hermite,
    Laguerre,
    Jacobi,
}

/// One finite-N β-ensemble. `lambda1` is ignored for Hermite and `lambda2`
/// for Hermite and Laguerre.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub n: usize,
    pub beta: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

impl EnsembleSpec {
    pub fn hermite(n: usize, beta: f64) -> Self {
        EnsembleSpec { kind: EnsembleKind::Hermite, n, beta, lambda1: 0.0, lambda2: 0.0 }
    }

    pub fn laguerre(n: usize, beta: f64, lambda1: f64) -> Self {
        EnsembleSpec { kind: EnsembleKind::Laguerre, n, beta, lambda1, lambda2: 0.0 }
    }

    pub fn jacobi(n: usize, beta: f64, lambda1: f64, lambda2: f64) -> Self {
        EnsembleSpec { kind: EnsembleKind::Jacobi, n, beta, lambda1, lambda2 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return domain("N must be positive");
        }
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return domain(format!("beta must be positive and finite, got {}", self.beta));
        }
        if self.kind != EnsembleKind::Hermite && !(self.lambda1 > -1.0) {
            return domain(format!("lambda1 must exceed -1, got {}", self.lambda1));
        }
        if self.kind == EnsembleKind::Jacobi && !(self.lambda2 > -1.0) {
            return domain(format!("lambda2 must exceed -1, got {}", self.lambda2));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactSeries,
    DualityQuadrature,
    MonteCarlo,
}

/// K_N and the weighted φ_N = e^{−½ΣV(s_j)} K_N. The logs stay finite
/// when the values themselves leave the `f64` range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharpolyResult {
    pub k: C64,
    pub phi: C64,
    pub ln_k: C64,
    pub ln_phi: C64,
    pub method: Method,
    pub stderr: Option<f64>,
}

impl CharpolyResult {
    fn from_ln(spec: &EnsembleSpec, s: &[C64], ln_k: C64, method: Method) -> Self {
        let ln_phi = ln_k - half_potential(spec, s);
        CharpolyResult { k: ln_k.exp(), phi: ln_phi.exp(), ln_k, ln_phi, method, stderr: None }
    }
}

/// V(x) of the weight e^{−βV/2}.
pub fn potential(spec: &EnsembleSpec, x: C64) -> C64 {
    let c = 2.0 / spec.beta;
    // λ ln x with the λ = 0 term dropped, so endpoints stay finite
    let log_term = |lambda: f64, v: C64| if lambda == 0.0 { Complex::new(0.0, 0.0) } else { lambda * v.ln() };
    match spec.kind {
        EnsembleKind::Hermite => x * x,
        EnsembleKind::Laguerre => x - c * log_term(spec.lambda1, x),
        EnsembleKind::Jacobi => -c * log_term(spec.lambda1, x) - c * log_term(spec.lambda2, 1.0 - x),
    }
}

fn half_potential(spec: &EnsembleSpec, s: &[C64]) -> C64 {
    s.iter().map(|&x| potential(spec, x)).sum::<C64>() / 2.0
}

fn need(spec: &EnsembleSpec, kind: EnsembleKind) -> Result<()> {
    spec.validate()?;
    if spec.kind != kind {
        return domain(format!("expected a {kind:?} ensemble, got {:?}", spec.kind));
    }
    Ok(())
}

fn series_precision(spec: &EnsembleSpec, precision: Precision) -> Result<Precision> {
    if precision == Precision::Double && spec.n > 80 {
        return domain(format!(
            "series cancellation overflows double precision at N = {}; use extended precision",
            spec.n
        ));
    }
    Ok(precision)
}

fn empty(spec: &EnsembleSpec, method: Method) -> CharpolyResult {
    CharpolyResult::from_ln(spec, &[], Complex::new(0.0, 0.0), method)
}

pub fn expect_laguerre_exact(spec: &EnsembleSpec, s: &[C64]) -> Result<CharpolyResult> {
    expect_laguerre_exact_with(spec, s, Precision::Auto)
}

/// K_N = (W_{λ₁+n}/W_{λ₁}) ₁F₁^(β/2)(−N; (2/β)(λ₁+n); s).
pub fn expect_laguerre_exact_with(spec: &EnsembleSpec, s: &[C64], precision: Precision) -> Result<CharpolyResult> {
    need(spec, EnsembleKind::Laguerre)?;
    if s.is_empty() {
        return Ok(empty(spec, Method::ExactSeries));
    }
    let n = s.len();
    let c = 2.0 / spec.beta;
    let hs = HyperSeriesSpec::real(spec.beta / 2.0, &[-(spec.n as f64)], &[c * (spec.lambda1 + n as f64)])
        .with_precision(series_precision(spec, precision)?);
    let f = eval_pfq(&hs, s)?;
    let xi = coefficient_xi(spec, n)?.log_value;
    Ok(CharpolyResult::from_ln(spec, s, xi + f.ln_value, Method::ExactSeries))
}

pub fn expect_jacobi_exact(spec: &EnsembleSpec, s: &[C64]) -> Result<CharpolyResult> {
    expect_jacobi_exact_with(spec, s, Precision::Auto)
}

/// K_N = ξ ₂F₁^(β/2)(−N, (2/β)(λ₁+λ₂+n+1)+N−1; (2/β)(λ₁+n); s).
pub fn expect_jacobi_exact_with(spec: &EnsembleSpec, s: &[C64], precision: Precision) -> Result<CharpolyResult> {
    need(spec, EnsembleKind::Jacobi)?;
    if s.is_empty() {
        return Ok(empty(spec, Method::ExactSeries));
    }
    let n = s.len() as f64;
    let c = 2.0 / spec.beta;
    let nn = spec.n as f64;
    let hs = HyperSeriesSpec::real(
        spec.beta / 2.0,
        &[-nn, c * (spec.lambda1 + spec.lambda2 + n + 1.0) + nn - 1.0],
        &[c * (spec.lambda1 + n)],
    )
    .with_precision(series_precision(spec, precision)?);
    let f = eval_pfq(&hs, s)?;
    let xi = coefficient_xi(spec, s.len())?.log_value;
    Ok(CharpolyResult::from_ln(spec, s, xi + f.ln_value, Method::ExactSeries))
}

/// Quadrature resolution for the Hermite duality integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualQuad {
    pub nodes_per_panel: usize,
    /// Multiplies the default panel count.
    pub refinement: f64,
}

impl Default for DualQuad {
    fn default() -> Self {
        DualQuad { nodes_per_panel: 16, refinement: 1.0 }
    }
}

/// ln Σ e^{L_i} over complex log-terms.
fn log_sum(terms: &[C64]) -> C64 {
    let big = terms.iter().map(|t| t.re).fold(f64::NEG_INFINITY, f64::max);
    if big == f64::NEG_INFINITY {
        return Complex::new(f64::NEG_INFINITY, 0.0);
    }
    let s: C64 = terms.iter().map(|&t| (t - big).exp()).sum();
    Complex::new(big, 0.0) + s.ln()
}

/// Imaginary part of the saddle of t^N e^{−t² − 2imt}; the integration
/// line runs through it.
fn saddle_height(nn: f64, m: f64) -> f64 {
    let disc = m * m - 2.0 * nn;
    if disc <= 0.0 {
        -m / 2.0
    } else {
        (-m + m.signum() * disc.sqrt()) / 2.0
    }
}

/// g(w) = ₀𝓕₀^(α)((1, −1); (w, −w)).
fn pair_kernel(alpha: f64, w: C64) -> Result<C64> {
    if alpha == 1.0 {
        if w.norm() < 1e-8 {
            return Ok(Complex::new(1.0, 0.0) + w * w * (2.0 / 3.0));
        }
        return Ok((2.0 * w).sinh() / (2.0 * w));
    }
    if alpha.is_infinite() {
        return Ok((2.0 * w).cosh());
    }
    let spec = HyperSeriesSpec::new(alpha, &[], &[])
        .with_truncation(TruncationPolicy { max_weight: 200, ..Default::default() });
    let x = [Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0)];
    Ok(eval_two_set(&spec, &x, &[w, -w], 2)?.value)
}

/// K_N from the n-dimensional dual integral
/// (−i)^{nN} 2^{β′n(n−1)/4+n/2} Γ_{β′,n}^{−1} e^{p₂(s)} ∫ Π t_j^N e^{−t_j²} |Δ(t)|^{β′} ₀𝓕₀^(2/β′)(−2is; t) dt.
pub fn expect_hermite_dual(spec: &EnsembleSpec, s: &[C64], quad: &DualQuad) -> Result<CharpolyResult> {
    need(spec, EnsembleKind::Hermite)?;
    let n = s.len();
    if n == 0 {
        return Ok(empty(spec, Method::DualityQuadrature));
    }
    if n > 2 {
        return Err(Error::UnsupportedRegime(format!(
            "Hermite duality quadrature covers n ≤ 2 (non-analytic |Δ|^β′ beyond), got n = {n}"
        )));
    }
    let nn = spec.n as f64;
    let bp = 4.0 / spec.beta;
    let m: C64 = s.iter().sum::<C64>() / n as f64;
    let y0 = saddle_height(nn, m.re);
    let reach = (nn / 2.0 + m.norm_sqr() / 4.0).sqrt() + 9.0;
    let panels = |len: f64, freq: f64| ((len * freq / 4.0 * quad.refinement).ceil() as usize).max(4);
    let freq = 2.0 + nn.sqrt() + m.norm();
    let k = quad.nodes_per_panel;
    let centre = composite(-reach, reach, panels(2.0 * reach, freq), k);
    let p2: C64 = s.iter().map(|z| z * z).sum();
    let ln_gamma_bn = gamma_beta_n(bp, n)?.log_value;
    let nf = n as f64;
    let ln_pref = Complex::new(0.0, -PI / 2.0 * nf * nn) + (bp * nf * (nf - 1.0) / 4.0 + nf / 2.0) * LN_2 - ln_gamma_bn + p2;
    let ln_int = if n == 1 {
        let z = s[0];
        let terms: Vec<C64> = centre
            .iter()
            .map(|&(v, w)| {
                let t = Complex::new(v, y0);
                t.ln() * nn - t * t - I * 2.0 * z * t + w.ln()
            })
            .collect();
        log_sum(&terms)
    } else {
        // centre c = (t₁+t₂)/2 on the saddle line, gap d = t₁−t₂ = w² ≥ 0
        let e = (s[0] - s[1]) / 2.0;
        let dreach = 2.0 * reach;
        let gap = composite(0.0, dreach.sqrt(), panels(dreach, freq), k);
        let alpha = spec.beta / 2.0;
        let gap_terms: Vec<(f64, C64)> = gap
            .par_iter()
            .map(|&(w, wt)| {
                let d = w * w;
                let g = pair_kernel(alpha, -I * e * d)?;
                let lw = (2.0 * w * wt * 2.0).ln() + bp * d.ln() - d * d / 2.0;
                Ok((d, g.ln() + lw))
            })
            .collect::<Result<_>>()?;
        let terms: Vec<C64> = centre
            .par_iter()
            .flat_map_iter(|&(v, wc)| {
                let c = Complex::new(v, y0);
                let outer = -2.0 * c * c - I * 4.0 * m * c + wc.ln();
                gap_terms
                    .iter()
                    .map(move |&(d, lg)| (c * c - d * d / 4.0).ln() * nn + outer + lg)
            })
            .collect();
        log_sum(&terms)
    };
    Ok(CharpolyResult::from_ln(spec, s, ln_pref + ln_int, Method::DualityQuadrature))
}

/// The exact route for each ensemble.
pub fn expect_exact(spec: &EnsembleSpec, s: &[C64]) -> Result<CharpolyResult> {
    match spec.kind {
        EnsembleKind::Hermite => expect_hermite_dual(spec, s, &DualQuad::default()),
        EnsembleKind::Laguerre => expect_laguerre_exact(spec, s),
        EnsembleKind::Jacobi => expect_jacobi_exact(spec, s),
    }
}

fn chi(rng: &mut ChaCha8Rng, dof: f64) -> f64 {
    Gamma::new(dof / 2.0, 2.0).expect("positive shape").sample(rng).sqrt()
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One draw of the N eigenvalues, sorted ascending.
pub fn sample_ensemble(spec: &EnsembleSpec, seed: u64) -> Result<Vec<f64>> {
    spec.validate()?;
    Ok(sample_with(spec, &mut rng_for(seed, 0)))
}

fn sample_with(spec: &EnsembleSpec, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let nn = spec.n;
    let b = spec.beta;
    let mut eig = match spec.kind {
        EnsembleKind::Hermite => {
            // diagonal N(0, 2), off-diagonal χ_{β(N−i)}, all over √(2β)
            let scale = (2.0 * b).sqrt();
            let mut h = DMatrix::zeros(nn, nn);
            for i in 0..nn {
                let z: f64 = StandardNormal.sample(rng);
                h[(i, i)] = z * 2f64.sqrt() / scale;
                if i + 1 < nn {
                    let v = chi(rng, b * (nn - 1 - i) as f64) / scale;
                    h[(i, i + 1)] = v;
                    h[(i + 1, i)] = v;
                }
            }
            h.symmetric_eigenvalues().iter().copied().collect::<Vec<_>>()
        }
        EnsembleKind::Laguerre => {
            // bidiagonal B with diagonal χ_{2a−β i}, sub-diagonal χ_{β(N−1−i)}
            let two_a = 2.0 * spec.lambda1 + 2.0 + b * (nn - 1) as f64;
            let mut bm = DMatrix::zeros(nn, nn);
            for i in 0..nn {
                bm[(i, i)] = chi(rng, two_a - b * i as f64);
                if i + 1 < nn {
                    bm[(i + 1, i)] = chi(rng, b * (nn - 1 - i) as f64);
                }
            }
            let l = &bm * bm.transpose();
            l.symmetric_eigenvalues().iter().map(|v| v / b).collect()
        }
        EnsembleKind::Jacobi => {
            // CS-decomposition model; eigenvalues are the squared singular
            // values of the upper-left bidiagonal block
            let a = 2.0 * (spec.lambda1 + 1.0) / b - 1.0;
            let bb = 2.0 * (spec.lambda2 + 1.0) / b - 1.0;
            let h = b / 2.0;
            let beta_sqrt = |rng: &mut ChaCha8Rng, p: f64, q: f64| Beta::new(p, q).expect("positive").sample(rng).sqrt();
            let mut c = vec![0.0; nn + 1];
            let mut cp = vec![0.0; nn];
            for i in 1..=nn {
                let fi = i as f64;
                c[i] = beta_sqrt(rng, h * (a + fi), h * (bb + fi));
            }
            for i in 1..nn {
                let fi = i as f64;
                cp[i] = beta_sqrt(rng, h * fi, h * (a + bb + 1.0 + fi));
            }
            let sn = |x: f64| (1.0 - x * x).max(0.0).sqrt();
            let mut m = DMatrix::zeros(nn, nn);
            for r in 0..nn {
                let i = nn - r;
                m[(r, r)] = if r == 0 { c[i] } else { c[i] * sn(cp[i]) };
                if r + 1 < nn {
                    m[(r, r + 1)] = -sn(c[i]) * cp[i - 1];
                }
            }
            let g = &m * m.transpose();
            g.symmetric_eigenvalues().iter().copied().collect()
        }
    };
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

/// Sample mean of Π_i Π_j (x_i − s_j) with its standard error.
pub fn mc_expect(spec: &EnsembleSpec, s: &[C64], draws: usize, seed: u64) -> Result<CharpolyResult> {
    spec.validate()?;
    if s.is_empty() {
        let mut r = empty(spec, Method::MonteCarlo);
        r.stderr = Some(0.0);
        return Ok(r);
    }
    if draws < 1000 {
        return domain(format!("Monte Carlo needs at least 1000 draws, got {draws}"));
    }
    let vals: Vec<C64> = (0..draws)
        .into_par_iter()
        .map(|d| {
            let x = sample_with(spec, &mut rng_for(seed, d as u64));
            let mut p = Complex::new(1.0, 0.0);
            for &xi in &x {
                for &sj in s {
                    p *= xi - sj;
                }
            }
            p
        })
        .collect();
    let nd = draws as f64;
    let mean = pairwise_sum(&vals) / nd;
    let var = vals.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>() / (nd - 1.0);
    let mut r = CharpolyResult::from_ln(spec, s, mean.ln(), Method::MonteCarlo);
    r.k = mean;
    r.phi = mean * (-half_potential(spec, s)).exp();
    r.stderr = Some((var / nd).sqrt());
    Ok(r)
}

fn pairwise_sum(v: &[C64]) -> C64 {
    if v.len() <= 64 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// ln Z_N for the density of each ensemble.
pub fn ln_normalization(spec: &EnsembleSpec, n: usize) -> Result<f64> {
    Ok(match spec.kind {
        EnsembleKind::Hermite => gaussian_g(spec.beta, n)?.log_value.re,
        EnsembleKind::Laguerre => laguerre_w(spec.lambda1, spec.beta, n)?.log_value.re,
        EnsembleKind::Jacobi => selberg_s(n, spec.lambda1, spec.lambda2, spec.beta / 2.0)?.log_value.re,
    })
}

/// k-point correlation of the (k+N)-point ensemble from φ_N at n = kβ.
pub fn correlation_from_phi(spec: &EnsembleSpec, x: &[f64]) -> Result<f64> {
    spec.validate()?;
    let b = spec.beta;
    if b.fract() != 0.0 || (b as usize) % 2 != 0 {
        return domain("correlation requires even β");
    }
    let k = x.len();
    if k == 0 {
        return domain("at least one point required");
    }
    let bi = b as usize;
    let s: Vec<C64> = x.iter().flat_map(|&v| std::iter::repeat(Complex::new(v, 0.0)).take(bi)).collect();
    let phi = expect_exact(spec, &s)?;
    let nn = spec.n;
    let ln_fact = ln_gamma((k + nn) as f64 + 1.0)?.re - ln_gamma(nn as f64 + 1.0)?.re;
    let ln_z = ln_normalization(spec, nn)? - ln_normalization(spec, k + nn)?;
    let mut vand = 1.0;
    for i in 0..k {
        for j in i + 1..k {
            vand *= (x[i] - x[j]).powi(bi as i32);
        }
    }
    Ok(vand * (ln_fact + ln_z + phi.ln_phi.re).exp() * phi.ln_phi.im.cos())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        Complex::new(x, 0.0)
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn laguerre_small_cases() {
        let spec = EnsembleSpec::laguerre(1, 2.0, 0.0);
        for s in [-1.0, 0.3, 2.5] {
            assert!(close(expect_laguerre_exact(&spec, &[c(s)]).unwrap().k, c(1.0 - s), 1e-13));
        }
        let (a, b) = (0.4, -1.2);
        let k = expect_laguerre_exact(&spec, &[c(a), c(b)]).unwrap().k;
        assert!(close(k, c(2.0 - (a + b) + a * b), 1e-13));
        let spec = EnsembleSpec::laguerre(4, 3.0, 0.5);
        let k = expect_laguerre_exact(&spec, &[c(0.0), c(0.0)]).unwrap().k;
        assert!(close(k, coefficient_xi(&spec, 2).unwrap().value, 1e-12));
    }

    #[test]
    fn jacobi_small_cases() {
        for beta in [1.0, 2.0, 5.0] {
            let spec = EnsembleSpec::jacobi(1, beta, 0.0, 0.0);
            assert!(close(expect_jacobi_exact(&spec, &[c(0.3)]).unwrap().k, c(0.2), 1e-13));
        }
        // N = 2, β = 2 against the defining average
        let spec = EnsembleSpec::jacobi(2, 2.0, 0.0, 0.0);
        let s = 0.37;
        let g = composite(0.0, 1.0, 4, 16);
        let (mut num, mut den) = (0.0, 0.0);
        for &(x, wx) in &g {
            for &(y, wy) in &g {
                let w = wx * wy * (x - y).powi(2);
                num += w * (x - s) * (y - s);
                den += w;
            }
        }
        let k = expect_jacobi_exact(&spec, &[c(s)]).unwrap().k;
        assert!(close(k, c(num / den), 1e-12), "{k} vs {}", num / den);
    }

    #[test]
    fn hermite_small_cases() {
        let q = DualQuad::default();
        for beta in [1.0, 2.0, 4.0] {
            let spec = EnsembleSpec::hermite(1, beta);
            let k = expect_hermite_dual(&spec, &[c(0.7)], &q).unwrap().k;
            assert!(close(k, c(-0.7), 1e-12), "beta={beta}: {k}");
            let (a, b) = (0.3, -0.9);
            let k = expect_hermite_dual(&spec, &[c(a), c(b)], &q).unwrap().k;
            assert!(close(k, c(1.0 / beta + a * b), 1e-10), "beta={beta}: {k}");
        }
        let spec = EnsembleSpec::hermite(2, 2.0);
        let k = expect_hermite_dual(&spec, &[c(1.1)], &q).unwrap().k;
        assert!(close(k, c(1.21 - 0.5), 1e-12));
        assert!(expect_hermite_dual(&spec, &[c(0.0); 3], &q).is_err());
    }

    #[test]
    fn hermite_pair_matches_brute_average() {
        for beta in [2.0, 4.0] {
            let spec = EnsembleSpec::hermite(2, beta);
            let (a, b) = (0.4, -0.25);
            let g = composite(-7.0, 7.0, 8, 16);
            let (mut num, mut den) = (0.0, 0.0);
            for &(x, wx) in &g {
                for &(y, wy) in &g {
                    let w = wx * wy * (-beta * (x * x + y * y) / 2.0).exp() * (x - y).abs().powf(beta);
                    num += w * (x - a) * (x - b) * (y - a) * (y - b);
                    den += w;
                }
            }
            let k = expect_hermite_dual(&spec, &[c(a), c(b)], &DualQuad::default()).unwrap().k;
            assert!(close(k, c(num / den), 1e-9), "beta={beta}: {k} vs {}", num / den);
        }
    }

    #[test]
    fn polynomial_in_s() {
        let spec = EnsembleSpec::laguerre(3, 2.5, 0.5);
        let h = 0.3;
        let vals: Vec<C64> = (0..5).map(|i| expect_laguerre_exact(&spec, &[c(i as f64 * h)]).unwrap().k).collect();
        let d4 = vals[4] - 4.0 * vals[3] + 6.0 * vals[2] - 4.0 * vals[1] + vals[0];
        assert!(d4.norm() < 1e-10 * vals[0].norm());
    }

    #[test]
    fn phi_relation() {
        let spec = EnsembleSpec::laguerre(3, 2.0, 1.0);
        let s = [c(0.5), c(2.0)];
        let r = expect_laguerre_exact(&spec, &s).unwrap();
        let v: C64 = s.iter().map(|&x| potential(&spec, x)).sum();
        assert!(close(r.phi, r.k * (-v / 2.0).exp(), 1e-14));
    }

    #[test]
    fn sampler_moments() {
        let draws = 100_000;
        let herm = EnsembleSpec::hermite(1, 3.0);
        let lag = EnsembleSpec::laguerre(1, 2.0, 0.0);
        let (mut v, mut m) = (Vec::new(), Vec::new());
        for d in 0..draws {
            v.push(sample_with(&herm, &mut rng_for(5, d)).remove(0).powi(2));
            m.push(sample_with(&lag, &mut rng_for(6, d)).remove(0));
        }
        let check = |xs: &[f64], want: f64| {
            let n = xs.len() as f64;
            let mean = xs.iter().sum::<f64>() / n;
            let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) / n).sqrt();
            assert!((mean - want).abs() < 3.0 * sd, "{mean} vs {want} ± {sd}");
        };
        check(&v, 1.0 / 3.0);
        check(&m, 1.0);
        let big = EnsembleSpec::hermite(50, 2.0);
        let tops: f64 = (0..200).map(|d| *sample_with(&big, &mut rng_for(1, d)).last().unwrap()).sum::<f64>() / 200.0;
        let r = tops / 100f64.sqrt();
        assert!((0.9..1.1).contains(&r), "{r}");
    }

    #[test]
    fn jacobi_sampler_calibration() {
        // mean of e₁ and e₂ at N = 2 against the exact coefficients of K(s)
        for (b, l1, l2) in [(2.0, 0.0, 0.0), (1.0, 0.5, 1.5), (4.0, 2.0, 0.0)] {
            let spec = EnsembleSpec::jacobi(2, b, l1, l2);
            let k0 = expect_jacobi_exact(&spec, &[c(0.0)]).unwrap().k.re;
            let k1 = expect_jacobi_exact(&spec, &[c(1.0)]).unwrap().k.re;
            // K(s) = s² − e₁ s + e₂
            let e2 = k0;
            let e1 = 1.0 + e2 - k1;
            let mc0 = mc_expect(&spec, &[c(0.0)], 100_000, 9).unwrap();
            let mc1 = mc_expect(&spec, &[c(1.0)], 100_000, 9).unwrap();
            assert!((mc0.k.re - e2).abs() < 3.0 * mc0.stderr.unwrap(), "{b} {l1} {l2}: {} vs {e2}", mc0.k.re);
            assert!((mc1.k.re - (1.0 - e1 + e2)).abs() < 3.0 * mc1.stderr.unwrap());
        }
    }

    #[test]
    fn mc_empty_and_laguerre_constant() {
        let spec = EnsembleSpec::laguerre(3, 2.0, 0.0);
        let r = mc_expect(&spec, &[], 10, 1).unwrap();
        assert_eq!(r.k, c(1.0));
        let mc = mc_expect(&spec, &[c(0.0)], 100_000, 0).unwrap();
        let xi = coefficient_xi(&spec, 1).unwrap().value.re;
        assert!((mc.k.re - xi).abs() < 3.0 * mc.stderr.unwrap());
        let again = mc_expect(&spec, &[c(0.0)], 100_000, 0).unwrap();
        assert_eq!(mc.k, again.k);
    }

    #[test]
    fn correlation_examples() {
        // one-point function of the two-point Laguerre β = 2 ensemble
        let spec = EnsembleSpec::laguerre(1, 2.0, 0.0);
        for x in [0.2, 1.0, 3.5] {
            let r = correlation_from_phi(&spec, &[x]).unwrap();
            let want = (x * x - 2.0 * x + 2.0) * (-x).exp();
            assert!((r - want).abs() < 1e-10, "{r} vs {want}");
        }
        assert!(correlation_from_phi(&EnsembleSpec::laguerre(1, 3.0, 0.0), &[1.0]).is_err());
    }
}
