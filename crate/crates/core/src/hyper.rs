//! Multivariate hypergeometric series ₚF_q^(α) and the two-set ₚ𝓕_q^(α).

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::jack::{hook, jack_at_ones_s, jack_value, poch};
use crate::monomial::MonoEval;
use crate::partitions::partitions_cached;
use crate::scalar::{cfrom, cln, cto, Ext, Real, C64};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub max_weight: u32,
    pub rel_tol: f64,
    pub require_convergence: bool,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { max_weight: 80, rel_tol: 1e-15, require_convergence: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Precision {
    Double,
    Extended,
    /// Extended when a terminating upper parameter has |a| > 40, or when a
    /// double-precision pass loses more than three digits to cancellation.
    #[default]
    Auto,
}

const CANCELLATION_LIMIT: f64 = 1e3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperSeriesSpec {
    pub alpha: f64,
    pub upper: Vec<C64>,
    pub lower: Vec<C64>,
    pub truncation: TruncationPolicy,
    pub precision: Precision,
}

impl HyperSeriesSpec {
    pub fn new(alpha: f64, upper: &[C64], lower: &[C64]) -> Self {
        HyperSeriesSpec {
            alpha,
            upper: upper.to_vec(),
            lower: lower.to_vec(),
            truncation: TruncationPolicy::default(),
            precision: Precision::Auto,
        }
    }

    pub fn real(alpha: f64, upper: &[f64], lower: &[f64]) -> Self {
        let c = |v: &[f64]| v.iter().map(|&r| Complex::new(r, 0.0)).collect::<Vec<_>>();
        Self::new(alpha, &c(upper), &c(lower))
    }

    pub fn with_truncation(mut self, t: TruncationPolicy) -> Self {
        self.truncation = t;
        self
    }

    pub fn with_precision(mut self, p: Precision) -> Self {
        self.precision = p;
        self
    }

    /// Smallest N such that some upper parameter equals −N.
    pub fn terminating_order(&self) -> Option<u32> {
        self.upper
            .iter()
            .filter(|a| a.im == 0.0 && a.re <= 0.0 && a.re.fract() == 0.0)
            .map(|a| (-a.re) as u32)
            .min()
    }

    fn use_extended(&self) -> bool {
        match self.precision {
            Precision::Double => false,
            Precision::Extended => true,
            Precision::Auto => self.terminating_order().is_some_and(|n| n > 40),
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        if !(self.alpha > 0.0) {
            return domain(format!("alpha must be positive, got {}", self.alpha));
        }
        if self.truncation.max_weight < 1 || !(self.truncation.rel_tol > 0.0) {
            return domain("truncation policy needs max_weight ≥ 1 and rel_tol > 0");
        }
        let inv = if self.alpha.is_infinite() { 0.0 } else { 1.0 / self.alpha };
        for b in &self.lower {
            for i in 0..n {
                let d = i as f64 * inv - b.re;
                if b.im.abs() < 1e-14 && d > -1e-12 && (d - d.round()).abs() < 1e-12 {
                    return domain(format!("lower parameter {b} hits a pole at row {}", i + 1));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: C64,
    /// Principal log of `value`, valid even when `value` overflows.
    pub ln_value: C64,
    pub last_shell: f64,
    pub terminated: bool,
    pub weight_used: u32,
}

struct RawSum<S: Real> {
    value: Complex<S>,
    /// Sum of term moduli, to detect cancellation.
    abs_sum: f64,
    last_shell: f64,
    terminated: bool,
    weight_used: u32,
}

fn cmul_real<S: Real>(z: Complex<S>, r: &S) -> Complex<S> {
    Complex::new(z.re * r.clone(), z.im * r.clone())
}

/// Smith's complex division; never forms |b|², which overflows early.
fn cdiv<S: Real>(a: Complex<S>, b: Complex<S>) -> Complex<S> {
    if b.im.is_zero() {
        return Complex::new(a.re / b.re.clone(), a.im / b.re);
    }
    if b.re.abs() >= b.im.abs() {
        let r = b.im.clone() / b.re.clone();
        let d = b.re + b.im * r.clone();
        Complex::new((a.re.clone() + a.im.clone() * r.clone()) / d.clone(), (a.im - a.re * r) / d)
    } else {
        let r = b.re.clone() / b.im.clone();
        let d = b.re * r.clone() + b.im;
        Complex::new((a.re.clone() * r.clone() + a.im.clone()) / d.clone(), (a.im * r - a.re) / d)
    }
}

fn sum_series<S: Real>(
    spec: &HyperSeriesSpec,
    n: usize,
    x: &[C64],
    y: Option<&[C64]>,
) -> Result<RawSum<S>> {
    let alpha = spec.alpha;
    let upper: Vec<Complex<S>> = spec.upper.iter().map(|&a| cfrom(a)).collect();
    let lower: Vec<Complex<S>> = spec.lower.iter().map(|&b| cfrom(b)).collect();
    let mut ex = MonoEval::new(x.iter().map(|&v| cfrom::<S>(v)).collect());
    let mut ey = y.map(|y| MonoEval::new(y.iter().map(|&v| cfrom::<S>(v)).collect()));
    let box_n = spec.terminating_order();
    let tol = spec.truncation.rel_tol;

    let (mut sr, mut cr, mut si, mut ci) = (S::one(), S::zero(), S::zero(), S::zero());
    let mut last_shell = 0.0;
    let mut quiet = 0;
    let mut abs_sum = 1.0f64;
    let mut w = 0u32;
    loop {
        w += 1;
        if let Some(nb) = box_n {
            if w as u64 > n as u64 * nb as u64 {
                let value = Complex::new(sr + cr, si + ci);
                return Ok(RawSum { value, abs_sum, last_shell, terminated: true, weight_used: w - 1 });
            }
        } else if w > spec.truncation.max_weight {
            if spec.truncation.require_convergence {
                return Err(Error::NotConverged { last_shell });
            }
            let value = Complex::new(sr + cr, si + ci);
            return Ok(RawSum { value, abs_sum, last_shell, terminated: false, weight_used: w - 1 });
        }
        let shell_parts = partitions_cached(w, n, box_n);
        let (mut hr, mut hc, mut hi, mut hic) = (S::zero(), S::zero(), S::zero(), S::zero());
        for kappa in shell_parts.iter() {
            let mut num = Complex::<S>::one();
            for a in &upper {
                num = num * poch(a, kappa, alpha);
            }
            if num.is_zero() {
                continue;
            }
            let mut den = Complex::new(hook::<S>(kappa, alpha), S::zero());
            for b in &lower {
                den = den * poch(b, kappa, alpha);
            }
            let mut term = cdiv(num, den) * jack_value(kappa, alpha, &mut ex)?;
            if let Some(ey) = ey.as_mut() {
                let py = jack_value(kappa, alpha, ey)?;
                let ones = jack_at_ones_s::<S>(kappa, alpha, n);
                term = cmul_real(term * py, &(S::one() / ones));
            }
            abs_sum += cto(&term).norm();
            S::accumulate(&mut hr, &mut hc, term.re);
            S::accumulate(&mut hi, &mut hic, term.im);
        }
        let shell = Complex::new(hr + hc, hi + hic);
        S::accumulate(&mut sr, &mut cr, shell.re.clone());
        S::accumulate(&mut si, &mut ci, shell.im.clone());
        last_shell = cto(&shell).norm();
        if box_n.is_none() {
            let total = Complex::new(sr.clone() + cr.clone(), si.clone() + ci.clone());
            let mag = cto(&total).norm();
            if last_shell <= tol * mag {
                quiet += 1;
                if quiet >= 2 {
                    return Ok(RawSum { value: total, abs_sum, last_shell, terminated: false, weight_used: w });
                }
            } else {
                quiet = 0;
            }
        }
    }
}

fn finish<S: Real>(raw: RawSum<S>) -> SeriesValue {
    SeriesValue {
        value: cto(&raw.value),
        ln_value: cln(&raw.value),
        last_shell: raw.last_shell,
        terminated: raw.terminated,
        weight_used: raw.weight_used,
    }
}

fn dispatch(spec: &HyperSeriesSpec, n: usize, x: &[C64], y: Option<&[C64]>) -> Result<SeriesValue> {
    spec.check(n)?;
    if spec.use_extended() {
        return Ok(finish(sum_series::<Ext>(spec, n, x, y)?));
    }
    let raw = sum_series::<f64>(spec, n, x, y)?;
    let mag = raw.value.norm();
    if spec.precision == Precision::Auto && !(raw.abs_sum <= CANCELLATION_LIMIT * mag && mag.is_finite()) {
        return Ok(finish(sum_series::<Ext>(spec, n, x, y)?));
    }
    Ok(finish(raw))
}

/// ₚF_q^(α)(a; b; x) with n = dim(x).
pub fn eval_pfq(spec: &HyperSeriesSpec, x: &[C64]) -> Result<SeriesValue> {
    if x.is_empty() {
        return domain("at least one variable required");
    }
    dispatch(spec, x.len(), x, None)
}

/// ₚ𝓕_q^(α)(a; b; x; y).
pub fn eval_two_set(spec: &HyperSeriesSpec, x: &[C64], y: &[C64], n: usize) -> Result<SeriesValue> {
    if x.len() != n || y.len() != n || n == 0 {
        return domain(format!("two-set series needs dim(x) = dim(y) = n ≥ 1, got {}, {}, {n}", x.len(), y.len()));
    }
    dispatch(spec, n, x, Some(y))
}

/// E_j^(α)(x) = ₀𝓕₀^(α)(x; (−1)^j, 1^{n−j}).
pub fn eval_e(j: usize, alpha: f64, x: &[C64], n: usize) -> Result<C64> {
    if j > n {
        return domain(format!("E_j needs 0 ≤ j ≤ n, got j={j}, n={n}"));
    }
    let y: Vec<C64> = (0..n).map(|i| Complex::new(if i < j { -1.0 } else { 1.0 }, 0.0)).collect();
    let spec = HyperSeriesSpec::new(alpha, &[], &[]).with_truncation(TruncationPolicy {
        max_weight: 200,
        ..Default::default()
    });
    Ok(eval_two_set(&spec, x, &y, n)?.value)
}

/// ₀𝓕₀(x; a^k, b^{n−k}) through e^{b p₁(x)} ₁F₁^(α)(k/α; n/α; (a−b)x).
pub fn reduce_0f0(x: &[C64], a: C64, b: C64, k: usize, n: usize, alpha: f64) -> Result<SeriesValue> {
    if k > n || x.len() != n {
        return domain(format!("reduction needs 0 ≤ k ≤ n = dim(x), got k={k}, n={n}, dim={}", x.len()));
    }
    let p1: C64 = x.iter().sum();
    let pref = b * p1;
    let inv = if alpha.is_infinite() { 0.0 } else { 1.0 / alpha };
    let spec = HyperSeriesSpec::real(alpha, &[k as f64 * inv], &[n as f64 * inv]).with_truncation(
        TruncationPolicy { max_weight: 200, ..Default::default() },
    );
    let z: Vec<C64> = x.iter().map(|&v| (a - b) * v).collect();
    let mut s = eval_pfq(&spec, &z)?;
    s.ln_value += pref;
    s.value *= pref.exp();
    s.last_shell *= pref.exp().norm();
    Ok(s)
}
