//! Leading terms of Selberg-type integrals: Watson's lemma with a
//! Vandermonde weight, Laplace's method at one or two saddle points, the
//! |x|^ν integral representation, and brute tensor quadrature to check
//! them against.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::gamma_beta_n;
use crate::error::{domain, Error, Result};
use crate::quad::{composite, legendre};
use crate::scalar::C64;
use crate::special::ln_gamma;

const I: C64 = Complex::new(0.0, 1.0);
const SADDLE_TOL: f64 = 1e-10;

type Derivs = dyn Fn(C64) -> [C64; 4] + Send + Sync;
type Amplitude = dyn Fn(&[C64]) -> C64 + Send + Sync;

/// An analytic phase p with p, p′, p″, p‴ available at any point.
#[derive(Clone)]
pub struct PhaseFunction {
    eval: Arc<Derivs>,
}

impl std::fmt::Debug for PhaseFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("PhaseFunction")
    }
}

impl PhaseFunction {
    pub fn new(eval: impl Fn(C64) -> [C64; 4] + Send + Sync + 'static) -> Self {
        PhaseFunction { eval: Arc::new(eval) }
    }

    /// Cubic c₃t³ + c₂t² + c₁t + c₀.
    pub fn cubic(c3: C64, c2: C64, c1: C64, c0: C64) -> Self {
        Self::new(move |t| {
            [
                ((c3 * t + c2) * t + c1) * t + c0,
                (3.0 * c3 * t + 2.0 * c2) * t + c1,
                6.0 * c3 * t + 2.0 * c2,
                6.0 * c3,
            ]
        })
    }

    pub fn derivs(&self, t: C64) -> [C64; 4] {
        (self.eval)(t)
    }

    pub fn value(&self, t: C64) -> C64 {
        self.derivs(t)[0]
    }
}

/// Saddle of order μ−1 with the steepest-descent directions through it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleSaddle {
    pub x0: C64,
    pub mu: u32,
    /// Angle ω of the outgoing path at x₀.
    pub direction: f64,
    /// Angle of the incoming path seen from x₀, needed for odd μ.
    pub incoming: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaddlePair {
    pub plus: C64,
    pub minus: C64,
    pub dir_plus: f64,
    pub dir_minus: f64,
}

/// Integration path: a polyline through the given vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub vertices: Vec<C64>,
}

impl Contour {
    pub fn interval(a: f64, b: f64) -> Self {
        Contour { vertices: vec![Complex::new(a, 0.0), Complex::new(b, 0.0)] }
    }

    pub fn polyline(vertices: Vec<C64>) -> Self {
        Contour { vertices }
    }

    fn is_real(&self) -> bool {
        self.vertices.iter().all(|v| v.im == 0.0)
    }

    /// Nodes t and complex weights w·dt/dτ along the polyline.
    fn rule(&self, panels: usize, nodes: usize) -> Vec<(C64, C64)> {
        let mut out = Vec::new();
        for seg in self.vertices.windows(2) {
            let (a, b) = (seg[0], seg[1]);
            for (x, w) in composite(0.0, 1.0, panels, nodes) {
                out.push((a + (b - a) * x, (b - a) * w));
            }
        }
        out
    }
}

/// ∫_C…∫_C exp{−NΣp(t_j)} |Δ(t)|^ν q(t) dt over n copies of one contour.
#[derive(Clone)]
pub struct SelbergIntegralSpec {
    pub phase: PhaseFunction,
    pub amplitude: Arc<Amplitude>,
    pub nu: f64,
    pub n: usize,
    pub contour: Contour,
}

impl std::fmt::Debug for SelbergIntegralSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SelbergIntegralSpec")
            .field("nu", &self.nu)
            .field("n", &self.n)
            .field("contour", &self.contour)
            .finish()
    }
}

impl SelbergIntegralSpec {
    pub fn new(phase: PhaseFunction, nu: f64, n: usize, contour: Contour) -> Self {
        SelbergIntegralSpec { phase, amplitude: Arc::new(|_| Complex::new(1.0, 0.0)), nu, n, contour }
    }

    pub fn with_amplitude(mut self, q: impl Fn(&[C64]) -> C64 + Send + Sync + 'static) -> Self {
        self.amplitude = Arc::new(q);
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.nu > -1.0) {
            return domain(format!("Vandermonde power must exceed -1, got {}", self.nu));
        }
        if self.n == 0 || self.n > 3 {
            return domain(format!("dimension must be 1..=3, got {}", self.n));
        }
        if self.contour.vertices.len() < 2 {
            return Err(Error::InvalidContour("a contour needs at least two vertices".into()));
        }
        Ok(())
    }

    /// νn(n−1)/2.
    pub fn n_nu(&self) -> f64 {
        self.nu * (self.n * (self.n - 1)) as f64 / 2.0
    }
}

fn is_even_integer(v: f64) -> bool {
    v >= 0.0 && v.fract() == 0.0 && (v as u64) % 2 == 0
}

fn vandermonde(t: &[C64]) -> C64 {
    let mut v = Complex::new(1.0, 0.0);
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            v *= t[i] - t[j];
        }
    }
    v
}

fn ln_gamma_re(x: f64) -> f64 {
    ln_gamma(x).map(|z| z.re).unwrap_or(f64::NAN)
}

/// Leading coefficient and power of 1/N from Watson's lemma with uniform
/// vanishing order μ:
/// Π_{j<n} Γ(1+β/2+jβ/2)Γ(μ+jβ/2)/Γ(1+β/2) · a₀ over N^{βn(n−1)/2+μn}.
pub fn watson_leading(lambda: &[f64], beta: f64, n: usize, a0: f64) -> Result<(f64, f64)> {
    if n == 0 || lambda.len() != n {
        return domain(format!("need {n} vanishing orders, got {}", lambda.len()));
    }
    let mu = lambda[0];
    if lambda.iter().any(|&l| (l - mu).abs() > 0.0) {
        return Err(Error::NonUniformOrder("closed form unavailable; use quadrature A_j route".into()));
    }
    if !(mu > 0.0) || !(beta >= 0.0) {
        return domain(format!("need μ > 0 and β ≥ 0, got μ = {mu}, β = {beta}"));
    }
    let h = beta / 2.0;
    let mut ln = 0.0;
    for j in 0..n {
        let jf = j as f64;
        ln += ln_gamma_re(1.0 + h + jf * h) + ln_gamma_re(mu + jf * h) - ln_gamma_re(1.0 + h);
    }
    let exponent = beta * (n * (n - 1)) as f64 / 2.0 + mu * n as f64;
    Ok((ln.exp() * a0, exponent))
}

/// Newton-polishes a declared zero of p^{(k)}, k ∈ {1, 2}.
fn polish(phase: &PhaseFunction, x0: C64, k: usize) -> Result<C64> {
    let mut x = x0;
    for _ in 0..50 {
        let d = phase.derivs(x);
        if d[k + 1].norm() == 0.0 {
            break;
        }
        let step = d[k] / d[k + 1];
        x -= step;
        if step.norm() < 1e-15 * (1.0 + x.norm()) {
            break;
        }
    }
    let d = phase.derivs(x);
    for (j, v) in d.iter().enumerate().take(k + 1).skip(1) {
        if v.norm() > SADDLE_TOL {
            return Err(Error::SaddleMismatch(format!(
                "p^({j}) = {v:e} at the declared saddle {x0} (polished to {x})"
            )));
        }
    }
    Ok(x)
}

/// ph(p₀) on the branch with |ω₀ + μω| ≤ π/2.
pub fn branch_phase(p0: C64, mu: u32, omega: f64) -> Result<f64> {
    let base = p0.arg();
    for k in -3..=3 {
        let w0 = base + 2.0 * PI * k as f64;
        if (w0 + mu as f64 * omega).abs() <= PI / 2.0 + 1e-12 {
            return Ok(w0);
        }
    }
    Err(Error::SaddleMismatch(format!(
        "no branch of ph(p0) = {base:.4} satisfies |ω0 + {mu}ω| ≤ π/2 for ω = {omega:.4}"
    )))
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

/// ∫_{ℝⁿ} exp{−p₀e^{iμω}Σv^μ} g(e^{iω}v)|Δ(v)|^ν dv · e^{iω(n+n_ν)}, by
/// tensor quadrature.
fn a0_quadrature(p0: C64, mu: u32, omega: f64, nu: f64, n: usize, g: &Amplitude) -> Result<C64> {
    let rot = Complex::from_polar(1.0, omega);
    let c = p0 * Complex::from_polar(1.0, mu as f64 * omega);
    if c.re <= 0.0 || mu % 2 != 0 {
        return Err(Error::QuadratureNotConverged(format!(
            "A0 integrand does not decay on the rotated real line (coefficient {c})"
        )));
    }
    // e^{−Re c·v^μ} below e^{−40}
    let cut = (40.0 / c.re).powf(1.0 / mu as f64);
    let axis = composite(-cut, cut, 48, 16);
    let total = tensor(&axis, n, |v| {
        let w: Vec<C64> = v.iter().map(|&x| rot * x).collect();
        let s: f64 = v.iter().map(|x| x.powi(mu as i32)).sum();
        let dv = vandermonde(&v.iter().map(|&x| Complex::new(x, 0.0)).collect::<Vec<_>>()).norm().powf(nu);
        (-c * s).exp() * g(&w) * dv
    });
    let n_nu = nu * (n * (n - 1)) as f64 / 2.0;
    Ok(total * Complex::from_polar(1.0, omega * (n as f64 + n_nu)))
}

fn tensor(axis: &[(f64, f64)], n: usize, f: impl Fn(&[f64]) -> C64 + Sync) -> C64 {
    let partial: Vec<C64> = axis
        .par_iter()
        .map(|&(x0, w0)| {
            let mut acc = Complex::new(0.0, 0.0);
            let mut pt = vec![x0; n];
            let mut idx = vec![0usize; n.saturating_sub(1)];
            if n == 1 {
                return w0 * f(&pt);
            }
            loop {
                let mut w = w0;
                for (j, &i) in idx.iter().enumerate() {
                    pt[j + 1] = axis[i].0;
                    w *= axis[i].1;
                }
                acc += w * f(&pt);
                let mut j = idx.len();
                loop {
                    if j == 0 {
                        return acc;
                    }
                    j -= 1;
                    idx[j] += 1;
                    if idx[j] < axis.len() {
                        break;
                    }
                    idx[j] = 0;
                }
            }
        })
        .collect();
    partial.iter().sum()
}

/// Leading term e^{−nNp(x₀)} N^{−(n_ν+n)/μ} A₀ q(x₀,…,x₀) at one saddle.
///
/// `g` multiplies the integrand as g(N^{1/μ}(t − x₀)); without it and
/// with μ = 2, A₀ comes from the Mehta integral.
pub fn laplace_one_saddle(
    spec: &SelbergIntegralSpec,
    saddle: &SingleSaddle,
    g: Option<&Amplitude>,
    big_n: f64,
) -> Result<C64> {
    one_saddle_scaled(spec, saddle, g, big_n, 0.0.into())
}

/// As [`laplace_one_saddle`] times e^{nN·shift}.
fn one_saddle_scaled(
    spec: &SelbergIntegralSpec,
    saddle: &SingleSaddle,
    g: Option<&Amplitude>,
    big_n: f64,
    shift: C64,
) -> Result<C64> {
    spec.validate()?;
    let mu = saddle.mu;
    if !(2..=3).contains(&mu) {
        return domain(format!("saddle order μ must be 2 or 3, got {mu}"));
    }
    let x0 = polish(&spec.phase, saddle.x0, mu as usize - 1)?;
    let d = spec.phase.derivs(x0);
    let p0 = d[mu as usize] / factorial(mu);
    let w0 = branch_phase(p0, mu, saddle.direction)?;
    if let Some(inc) = saddle.incoming {
        branch_phase(p0, mu, inc)?;
    }
    let n = spec.n;
    let e = n as f64 + spec.n_nu();
    let a0 = match (g, mu) {
        (None, 2) => {
            // ∫ e^{−p₀Σw²}|Δ|^ν = Γ_{ν,n}(2p₀)^{−e/2}, p₀ on its branch
            let gamma = if n == 1 { (2.0 * PI).sqrt() } else { gamma_beta_n(spec.nu, n)?.value.re };
            let ln_2p0 = Complex::new((2.0 * p0.norm()).ln(), w0);
            gamma * (-e / 2.0 * ln_2p0).exp()
        }
        (None, 3) => {
            if n != 1 {
                return Err(Error::UnsupportedRegime("order-2 saddles are implemented for n = 1".into()));
            }
            let inc = saddle
                .incoming
                .ok_or_else(|| Error::SaddleMismatch("odd μ needs the incoming direction".into()))?;
            // two rays: −∫ along the incoming direction + ∫ along the outgoing
            let ray = |om: f64| -> C64 {
                let w = branch_phase(p0, 3, om).unwrap_or(w0);
                let c = Complex::new(p0.norm().ln(), w);
                (-c / 3.0).exp() * (1.0f64 / 3.0).exp_gamma() / 3.0
            };
            ray(saddle.direction) - ray(inc)
        }
        (Some(g), _) => a0_quadrature(p0, mu, saddle.direction, spec.nu, n, g)?,
        _ => unreachable!(),
    };
    let q0 = (spec.amplitude)(&vec![x0; n]);
    let nf = n as f64;
    Ok((-nf * big_n * (d[0] - shift)).exp() * big_n.powf(-e / mu as f64) * a0 * q0)
}

trait GammaExt {
    fn exp_gamma(self) -> f64;
}

impl GammaExt for f64 {
    fn exp_gamma(self) -> f64 {
        ln_gamma_re(self).exp()
    }
}

/// √p on the branch fixed by the path direction.
fn branch_sqrt(p: C64, direction: f64) -> Result<C64> {
    let w0 = branch_phase(p / 2.0, 2, direction)?;
    Ok(Complex::from_polar(p.norm().sqrt(), w0 / 2.0))
}

fn gamma_nu(nu: f64, m: usize) -> Result<f64> {
    if m == 0 {
        return Ok(1.0);
    }
    if m == 1 {
        return Ok((2.0 * PI).sqrt());
    }
    Ok(gamma_beta_n(nu, m)?.value.re)
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Leading term at two simple saddles x₊, x₋ for n = 2m or 2m − 1.
pub fn laplace_two_saddle(spec: &SelbergIntegralSpec, pair: &SaddlePair, big_n: f64) -> Result<C64> {
    spec.validate()?;
    let xp = polish(&spec.phase, pair.plus, 1)?;
    let xm = polish(&spec.phase, pair.minus, 1)?;
    if (xp - xm).re < 0.0 {
        return Err(Error::SaddleMismatch("need Re(x+ − x−) ≥ 0".into()));
    }
    let (dp, dm) = (spec.phase.derivs(xp), spec.phase.derivs(xm));
    let (sp, sm) = (branch_sqrt(dp[2], pair.dir_plus)?, branch_sqrt(dm[2], pair.dir_minus)?);
    let nu = spec.nu;
    let n = spec.n;
    let m = n.div_ceil(2);
    let mf = m as f64;
    let diff = xp - xm;
    let sqrt_pp = sp * sm;
    let den_pow = mf + nu * mf * (mf - 1.0) / 2.0;
    let pts = |a: usize, b: usize| -> Vec<C64> {
        std::iter::repeat(xp).take(a).chain(std::iter::repeat(xm).take(b)).collect()
    };
    let q = |v: Vec<C64>| (spec.amplitude)(&v);
    let common = (-mf * big_n * (dp[0] + dm[0])).exp() / sqrt_pp.powf(den_pow);
    if n % 2 == 0 {
        if (dp[0].re - dm[0].re).abs() > SADDLE_TOL {
            return Err(Error::SaddleMismatch(format!(
                "Re p(x+) = {} and Re p(x−) = {} differ",
                dp[0].re, dm[0].re
            )));
        }
        let g = gamma_nu(nu, m)?;
        Ok(binom(2 * m, m) * g * g * diff.powf(nu * mf * mf) * common * big_n.powf(-den_pow) * q(pts(m, m)))
    } else {
        let g = gamma_nu(nu, m - 1)? * gamma_nu(nu, m)?;
        let pw = 1.0 + nu * (mf - 1.0);
        let tail = (big_n * dp[0]).exp() * sp.powf(pw) * q(pts(m - 1, m))
            + (big_n * dm[0]).exp() * sm.powf(pw) * q(pts(m, m - 1));
        let np = (2.0 * mf - 1.0 + nu * (mf - 1.0) * (mf - 1.0)) / 2.0;
        Ok(binom(2 * m - 1, m) * g * diff.powf(nu * mf * (mf - 1.0)) * common * big_n.powf(-np) * tail)
    }
}

/// H_ν(r) = Σ_{j≤⌊ν/2⌋}(−r²)^j/(2j)! − cos r.
pub fn h_nu(nu: f64, r: f64) -> f64 {
    let top = (nu / 2.0).floor().max(0.0) as u32;
    if r.abs() < 0.5 {
        // the retained terms cancel the head of cos r
        let mut s = 0.0;
        let mut t = 1.0;
        for j in 1..40u32 {
            t *= -r * r / ((2 * j - 1) * (2 * j)) as f64;
            if j > top {
                s -= t;
            }
        }
        return s;
    }
    let mut s = 0.0;
    let mut t = 1.0;
    for j in 0..=top {
        if j > 0 {
            t *= -r * r / ((2 * j - 1) * (2 * j)) as f64;
        }
        s += t;
    }
    s - r.cos()
}

/// c_ν = (2/π) sin(πν/2) Γ(ν+1).
pub fn c_nu(nu: f64) -> Result<f64> {
    if !(nu > -1.0) {
        return domain(format!("ν must exceed -1, got {nu}"));
    }
    if is_even_integer(nu) {
        return domain("representation degenerate (c_ν = 0)");
    }
    Ok(2.0 / PI * (PI * nu / 2.0).sin() * ln_gamma_re(nu + 1.0).exp())
}

/// |x|^ν = c_ν ∫₀^∞ r^{−ν−1} H_ν(rx) dr with the integral cut at r_max
/// and analytic tails beyond it.
pub fn abs_power_via_hnu(nu: f64, x: f64, r_max: f64, nodes: usize) -> Result<f64> {
    let c = c_nu(nu)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if !(r_max > 0.0) || nodes == 0 {
        return domain("need r_max > 0 and at least one node");
    }
    let k = 16;
    let panels = nodes.div_ceil(k);
    // grade the panels geometrically towards r = 0
    let mut total = 0.0;
    let mut hi = r_max;
    let lo_limit = 1e-8 / x.abs();
    let rule = legendre(k);
    let per_decade = panels.max(1);
    while hi > lo_limit {
        let lo = (hi / 2.0).max(lo_limit);
        let sub = if hi > 4.0 / x.abs() { ((hi - lo) * x.abs() / 2.0).ceil() as usize } else { 1 };
        let sub = sub.clamp(1, per_decade * 8);
        let h = (hi - lo) / sub as f64;
        for p in 0..sub {
            let a = lo + p as f64 * h;
            for &(t, w) in rule.iter() {
                let r = a + (t + 1.0) * h / 2.0;
                total += w * h / 2.0 * r.powf(-nu - 1.0) * h_nu(nu, r * x);
            }
        }
        hi = lo;
    }
    // head below the cut from the series of H_ν
    let top_j = (nu / 2.0).floor().max(0.0) as u32;
    let mut head = 0.0;
    let mut t = 1.0;
    for j in 1..12u32 {
        t *= -x * x / ((2 * j - 1) * (2 * j)) as f64;
        if j > top_j {
            head -= t * lo_limit.powf(2.0 * j as f64 - nu) / (2.0 * j as f64 - nu);
        }
    }
    total += head;
    // polynomial part beyond r_max: ∫ r^{2j−ν−1}(−x²)^j/(2j)! dr
    let top = (nu / 2.0).floor().max(0.0) as i32;
    let mut tail = 0.0;
    for j in 0..=top {
        let coef = (-x * x).powi(j) / factorial(2 * j as u32);
        tail += coef * r_max.powf(2.0 * j as f64 - nu) / (nu - 2.0 * j as f64);
    }
    // −∫ r^{−ν−1} cos(rx) dr beyond r_max by two integrations by parts
    let f = r_max.powf(-nu - 1.0);
    let fp = -(nu + 1.0) * r_max.powf(-nu - 2.0);
    let cos_tail = -f * (r_max * x).sin() / x - fp * (r_max * x).cos() / (x * x);
    Ok(c * (total + tail - cos_tail))
}

/// Tensor-quadrature settings for [`brute_selberg`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub panels_per_segment: usize,
    pub nodes: usize,
    pub rel_tol: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { panels_per_segment: 48, nodes: 8, rel_tol: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BruteValue {
    pub value: C64,
    pub est_error: f64,
}

fn brute_once(spec: &SelbergIntegralSpec, big_n: f64, panels: usize, nodes: usize, shift: C64) -> C64 {
    let rule = spec.contour.rule(panels, nodes);
    let n = spec.n;
    let real = spec.contour.is_real();
    let phase: Vec<C64> = rule.iter().map(|(t, _)| spec.phase.value(*t) - shift).collect();
    let partial: Vec<C64> = (0..rule.len())
        .into_par_iter()
        .map(|i0| {
            let mut idx = vec![0usize; n - 1];
            let mut acc = Complex::new(0.0, 0.0);
            let mut t = vec![rule[i0].0; n];
            loop {
                let mut w = rule[i0].1;
                let mut psum = phase[i0];
                for (j, &i) in idx.iter().enumerate() {
                    t[j + 1] = rule[i].0;
                    w *= rule[i].1;
                    psum += phase[i];
                }
                let d = vandermonde(&t);
                let dv = if real { Complex::new(d.norm().powf(spec.nu), 0.0) } else { d.powf(spec.nu) };
                acc += w * (-big_n * psum).exp() * dv * (spec.amplitude)(&t);
                let mut j = idx.len();
                loop {
                    if j == 0 {
                        return acc;
                    }
                    j -= 1;
                    idx[j] += 1;
                    if idx[j] < rule.len() {
                        break;
                    }
                    idx[j] = 0;
                }
            }
        })
        .collect();
    partial.iter().sum()
}

/// Tensor Gauss–Legendre along the contour, checked against a coarser rule.
pub fn brute_selberg(spec: &SelbergIntegralSpec, big_n: f64, cfg: &QuadConfig) -> Result<BruteValue> {
    brute_scaled(spec, big_n, cfg, 0.0.into())
}

fn brute_scaled(spec: &SelbergIntegralSpec, big_n: f64, cfg: &QuadConfig, shift: C64) -> Result<BruteValue> {
    spec.validate()?;
    if !spec.contour.is_real() && !is_even_integer(spec.nu) {
        return Err(Error::NonAnalyticVandermonde);
    }
    let fine = brute_once(spec, big_n, cfg.panels_per_segment, cfg.nodes, shift);
    let coarse = brute_once(spec, big_n, (cfg.panels_per_segment * 2 / 3).max(1), cfg.nodes, shift);
    let est = (fine - coarse).norm();
    if !fine.is_finite() || est > cfg.rel_tol * fine.norm() {
        return Err(Error::QuadratureNotConverged(format!(
            "value {fine}, coarse {coarse}, estimated error {est:e} > {:e} relative",
            cfg.rel_tol
        )));
    }
    Ok(BruteValue { value: fine, est_error: est })
}

/// The worked examples checked by `saddle verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SaddleCase {
    /// ∫∫_{(0,∞)²} e^{−N(t₁+t₂)}(t₁−t₂)² Π(1+t_j²)^{−1}.
    Watson2,
    /// ∫∫_{ℝ²} e^{−N(t₁²+t₂²)/2}(t₁−t₂)².
    Gauss2,
    /// ∫_ℝ e^{N(it³/3+it)} e^{ist} dt through the saddle at i.
    Airy1,
    /// ∫∫ e^{−NΣi(−t³/3+t)}(t₁−t₂)² through the saddles ±1.
    TwoSaddle2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaddleRow {
    pub big_n: f64,
    /// `brute` and `leading` are both multiplied by e^{scale}.
    pub scale: f64,
    pub brute: C64,
    pub brute_error: f64,
    pub leading: C64,
    pub ratio: C64,
}

const AIRY_SHIFT: f64 = 0.4;

fn case_setup(case: SaddleCase, big_n: f64) -> Result<(SelbergIntegralSpec, C64, QuadConfig, C64)> {
    Ok(match case {
        SaddleCase::Watson2 => {
            let phase = PhaseFunction::cubic(0.0.into(), 0.0.into(), 1.0.into(), 0.0.into());
            let spec = SelbergIntegralSpec::new(phase, 2.0, 2, Contour::interval(0.0, 60.0 / big_n))
                .with_amplitude(|t| t.iter().map(|&v| 1.0 / (1.0 + v * v)).product());
            let (a0, e) = watson_leading(&[1.0, 1.0], 2.0, 2, 1.0)?;
            (spec, Complex::new(a0 * big_n.powf(-e), 0.0), QuadConfig { panels_per_segment: 60, nodes: 10, rel_tol: 1e-6 }, 0.0.into())
        }
        SaddleCase::Gauss2 => {
            let phase = PhaseFunction::cubic(0.0.into(), 0.5.into(), 0.0.into(), 0.0.into());
            let cut = 12.0 / big_n.sqrt();
            let spec = SelbergIntegralSpec::new(phase, 2.0, 2, Contour::interval(-cut, cut));
            let saddle = SingleSaddle { x0: 0.0.into(), mu: 2, direction: 0.0, incoming: None };
            let lead = laplace_one_saddle(&spec, &saddle, None, big_n)?;
            (spec, lead, QuadConfig { panels_per_segment: 24, nodes: 12, rel_tol: 1e-9 }, 0.0.into())
        }
        SaddleCase::Airy1 => {
            let phase = PhaseFunction::cubic(-I / 3.0, 0.0.into(), -I, 0.0.into());
            let cut = 12.0 / big_n.sqrt();
            let contour = Contour::polyline(vec![I - cut, I, I + cut]);
            let spec = SelbergIntegralSpec::new(phase, 0.0, 1, contour)
                .with_amplitude(|t| (I * AIRY_SHIFT * t[0]).exp());
            let saddle = SingleSaddle { x0: I, mu: 2, direction: 0.0, incoming: None };
            let shift = Complex::new(2.0 / 3.0, 0.0);
            let lead = one_saddle_scaled(&spec, &saddle, None, big_n, shift)?;
            (spec, lead, QuadConfig { panels_per_segment: 40, nodes: 12, rel_tol: 1e-9 }, shift)
        }
        SaddleCase::TwoSaddle2 => {
            let phase = PhaseFunction::cubic(-I / 3.0, 0.0.into(), I, 0.0.into());
            let len = 10.0 / big_n.sqrt();
            let (ep, em) = (Complex::from_polar(1.0, PI / 4.0), Complex::from_polar(1.0, -PI / 4.0));
            let contour = Contour::polyline(vec![
                -1.0 - len * em,
                Complex::new(-1.0, 0.0),
                -I,
                Complex::new(1.0, 0.0),
                1.0 + len * ep,
            ]);
            let spec = SelbergIntegralSpec::new(phase, 2.0, 2, contour);
            let pair = SaddlePair { plus: 1.0.into(), minus: (-1.0).into(), dir_plus: PI / 4.0, dir_minus: -PI / 4.0 };
            let lead = laplace_two_saddle(&spec, &pair, big_n)?;
            (spec, lead, QuadConfig { panels_per_segment: 40, nodes: 8, rel_tol: 1e-6 }, 0.0.into())
        }
    })
}

/// Brute quadrature against the leading term for each N.
pub fn verify_case(case: SaddleCase, n_list: &[f64]) -> Result<Vec<SaddleRow>> {
    n_list
        .iter()
        .map(|&big_n| {
            if !(big_n > 0.0) {
                return domain(format!("N must be positive, got {big_n}"));
            }
            let (spec, leading, cfg, shift) = case_setup(case, big_n)?;
            let b = brute_scaled(&spec, big_n, &cfg, shift)?;
            let scale = spec.n as f64 * big_n * shift.re;
            Ok(SaddleRow { big_n, scale, brute: b.value, brute_error: b.est_error, leading, ratio: b.value / leading })
        })
        .collect()
}
