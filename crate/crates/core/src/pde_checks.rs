//! Residuals of the second-order PDE systems satisfied by the hard-edge,
//! bulk and soft-edge limits, and the n = 2 bulk Bessel closed form.
//!
//! The systems are written in unit frequency: the bulk function is
//! ₀𝓕₀(s; i^m, (−i)^m) and the hard-edge function is ₀F₁(c; −s).

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::airy::{airy_multivariate, AiryQuadSpec};
use crate::error::{domain, Error, Result};
use crate::jack::{jack_at_ones, jack_eval, jack_expansion};
use crate::limits::Regime;
use crate::partitions::{enumerate_partitions, gen_pochhammer, hook_product, Partition};
use crate::scalar::C64;

const MIN_GAP: f64 = 0.1;
const FD_STEP: f64 = 1e-3;

/// Where the function under test comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FSource {
    /// The regime's Jack series truncated at total weight `max_weight`.
    Series { max_weight: u32 },
    /// One-variable closed forms: ₀F₁ series, e^{is}, Ai.
    Classical,
    /// Multivariate Airy quadrature differentiated by central differences.
    Quadrature,
    /// β = ∞ symmetric separable solution with j "positive" slots.
    Separable { j: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdeResidual {
    pub regime: Regime,
    pub max_residual: f64,
    pub grid: Vec<Vec<f64>>,
    pub per_point: Vec<f64>,
    /// Equation (1-based k) attaining the maximum.
    pub equation_index: usize,
    pub note: Option<String>,
}

/// Value, first and second partials of F at one point.
struct Jet {
    f: C64,
    d1: Vec<C64>,
    d2: Vec<C64>,
}

/// Polynomial Σ a_e s^e in explicit exponent form.
struct Poly {
    n: usize,
    terms: Vec<(Vec<u32>, C64)>,
}

impl Poly {
    fn jet(&self, s: &[f64]) -> Jet {
        let n = self.n;
        let mut f = C64::new(0.0, 0.0);
        let mut d1 = vec![C64::new(0.0, 0.0); n];
        let mut d2 = vec![C64::new(0.0, 0.0); n];
        let pw = |x: f64, e: i64| if e < 0 { 0.0 } else { x.powi(e as i32) };
        for (e, a) in &self.terms {
            let base: Vec<f64> = (0..n).map(|i| pw(s[i], e[i] as i64)).collect();
            f += a * base.iter().product::<f64>();
            for k in 0..n {
                let rest: f64 = (0..n).filter(|&i| i != k).map(|i| base[i]).product();
                let ek = e[k] as i64;
                d1[k] += a * (ek as f64 * pw(s[k], ek - 1) * rest);
                d2[k] += a * ((ek * (ek - 1)) as f64 * pw(s[k], ek - 2) * rest);
            }
        }
        Jet { f, d1, d2 }
    }
}

fn distinct_permutations(mu: &Partition, n: usize) -> Vec<Vec<u32>> {
    let mut base: Vec<u32> = mu.parts().to_vec();
    base.resize(n, 0);
    let mut out = HashSet::new();
    permute(&mut base, 0, &mut out);
    out.into_iter().collect()
}

fn permute(v: &mut Vec<u32>, k: usize, out: &mut HashSet<Vec<u32>>) {
    if k == v.len() {
        out.insert(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

/// Σ_{|κ| ≤ W} coef(κ) P_κ(s) expanded into monomials.
fn jack_series_poly(n: usize, alpha: f64, max_weight: u32, coef: impl Fn(&Partition) -> Result<C64>) -> Result<Poly> {
    let mut acc: HashMap<Vec<u32>, C64> = HashMap::new();
    for w in 0..=max_weight {
        for kappa in enumerate_partitions(w, n, None) {
            let c = coef(&kappa)?;
            if c == C64::new(0.0, 0.0) {
                continue;
            }
            if w == 0 {
                *acc.entry(vec![0; n]).or_default() += c;
                continue;
            }
            let exp = jack_expansion(&kappa, alpha, n)?;
            for (mu, cm) in &exp.coeffs {
                for e in distinct_permutations(mu, n) {
                    *acc.entry(e).or_default() += c * cm;
                }
            }
        }
    }
    Ok(Poly { n, terms: acc.into_iter().collect() })
}

fn hard_series(beta: f64, lambda1: f64, n: usize, w: u32) -> Result<Poly> {
    let alpha = beta / 2.0;
    let c = C64::new(2.0 / beta * (lambda1 + n as f64), 0.0);
    jack_series_poly(n, alpha, w, |k| {
        let sign = if k.weight() % 2 == 0 { 1.0 } else { -1.0 };
        let den = gen_pochhammer(c, k, alpha)? * hook_product(k, alpha)?;
        Ok(sign / den)
    })
}

fn bulk_series(beta: f64, n: usize, w: u32) -> Result<Poly> {
    if n % 2 != 0 {
        return domain("the bulk limit has an even number of variables");
    }
    let alpha = beta / 2.0;
    let m = n / 2;
    let y: Vec<C64> = (0..n).map(|i| if i < m { C64::new(0.0, 1.0) } else { C64::new(0.0, -1.0) }).collect();
    jack_series_poly(n, alpha, w, |k| {
        if k.weight() == 0 {
            return Ok(C64::new(1.0, 0.0));
        }
        let py = jack_eval(&jack_expansion(k, alpha, n)?, &y);
        Ok(py / (hook_product(k, alpha)? * jack_at_ones(k, alpha, n)))
    })
}

/// Ai, Ai″, Bi, Bi″ from the Maclaurin series differentiated termwise.
fn airy_series_jet(x: f64) -> [f64; 4] {
    // f = Σ 3^k(1/3)_k x^{3k}/(3k)!,  g = Σ 3^k(2/3)_k x^{3k+1}/(3k+1)!
    let (mut f, mut g, mut f2, mut g2) = (1.0, x, 0.0, 0.0);
    let (mut tf, mut tg) = (1.0, x);
    for k in 1..200 {
        let a = (3 * k) as f64;
        tf *= x * x * x / ((a - 1.0) * a);
        tg *= x * x * x / (a * (a + 1.0));
        f += tf;
        g += tg;
        // x^{3k} → 3k(3k−1)x^{3k−2}; at x = 0 only k = 1 in g survives
        f2 += a * (a - 1.0) * tf / (x * x).max(f64::MIN_POSITIVE);
        g2 += (a + 1.0) * a * tg / (x * x).max(f64::MIN_POSITIVE);
        if tf.abs() < 1e-20 * f.abs() && tg.abs() < 1e-20 * g.abs().max(1e-300) && k > 3 {
            break;
        }
    }
    if x == 0.0 {
        f2 = 0.0;
        g2 = 0.0;
    }
    let c1 = crate::special::AI0;
    let c2 = -crate::special::AIP0;
    let s3 = 3f64.sqrt();
    [c1 * f - c2 * g, c1 * f2 - c2 * g2, s3 * (c1 * f + c2 * g), s3 * (c1 * f2 + c2 * g2)]
}

fn hard_classical(beta: f64, lambda1: f64, s: f64) -> Jet {
    let c = 2.0 / beta * (lambda1 + 1.0);
    let (mut f, mut d1, mut d2) = (1.0, 0.0, 0.0);
    let mut coef = 1.0;
    for k in 1..400 {
        let kf = k as f64;
        coef *= -1.0 / (kf * (c + kf - 1.0));
        f += coef * s.powi(k);
        d1 += coef * kf * s.powi(k - 1);
        if k >= 2 {
            d2 += coef * kf * (kf - 1.0) * s.powi(k - 2);
        }
        if coef.abs() * (s.abs() + 1.0).powi(k) < 1e-20 {
            break;
        }
    }
    let c = |v: f64| vec![C64::new(v, 0.0)];
    Jet { f: C64::new(f, 0.0), d1: c(d1), d2: c(d2) }
}

fn separable_jet(regime: Regime, j: usize, s: &[f64]) -> Result<Jet> {
    let n = s.len();
    if j > n {
        return domain(format!("separable index j = {j} exceeds n = {n}"));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let mut perms = Vec::new();
    collect_perms(&mut idx, 0, &mut perms);
    let count = perms.len() as f64;
    let mut jet = Jet { f: C64::new(0.0, 0.0), d1: vec![C64::new(0.0, 0.0); n], d2: vec![C64::new(0.0, 0.0); n] };
    let i = C64::new(0.0, 1.0);
    for p in &perms {
        // slot r of the permutation carries variable p[r]
        let mut vals = vec![C64::new(0.0, 0.0); n];
        let mut sec = vec![C64::new(0.0, 0.0); n];
        let mut first = vec![C64::new(0.0, 0.0); n];
        for (r, &v) in p.iter().enumerate() {
            let positive = r < j;
            match regime {
                Regime::Bulk => {
                    let w = if positive { i } else { -i };
                    let e = (w * s[v]).exp();
                    vals[v] = e;
                    first[v] = w * e;
                    sec[v] = w * w * e;
                }
                Regime::Soft => {
                    let [ai, ai2, bi, bi2] = airy_series_jet(s[v]);
                    let [ai1, bi1] = {
                        let a = crate::special::airy_all(s[v]);
                        [a[1], a[3]]
                    };
                    let (f0, f1, f2) = if positive { (ai, ai1, ai2) } else { (bi, bi1, bi2) };
                    vals[v] = C64::new(f0, 0.0);
                    first[v] = C64::new(f1, 0.0);
                    sec[v] = C64::new(f2, 0.0);
                }
                Regime::Hard => return domain("no separable hard-edge solutions"),
            }
        }
        let prod: C64 = vals.iter().product();
        jet.f += prod / count;
        for k in 0..n {
            let rest: C64 = (0..n).filter(|&q| q != k).map(|q| vals[q]).product();
            jet.d1[k] += first[k] * rest / count;
            jet.d2[k] += sec[k] * rest / count;
        }
    }
    Ok(jet)
}

fn collect_perms(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        collect_perms(v, k + 1, out);
        v.swap(k, i);
    }
}

fn quadrature_jet(beta: f64, s: &[f64]) -> Result<Jet> {
    let n = s.len();
    let spec = AiryQuadSpec::new(beta / 2.0, n);
    let eval = |p: &[f64]| -> Result<f64> { Ok(airy_multivariate(&spec, p)?.value) };
    let f = eval(s)?;
    let mut d1 = Vec::with_capacity(n);
    let mut d2 = Vec::with_capacity(n);
    for k in 0..n {
        let mut up = s.to_vec();
        let mut dn = s.to_vec();
        up[k] += FD_STEP;
        dn[k] -= FD_STEP;
        let (fu, fd) = (eval(&up)?, eval(&dn)?);
        d1.push(C64::new((fu - fd) / (2.0 * FD_STEP), 0.0));
        d2.push(C64::new((fu - 2.0 * f + fd) / (FD_STEP * FD_STEP), 0.0));
    }
    Ok(Jet { f: C64::new(f, 0.0), d1, d2 })
}

fn operator(regime: Regime, coupling: f64, lambda1: f64, s: &[f64], jet: &Jet, k: usize) -> C64 {
    let n = s.len();
    let mut sum = C64::new(0.0, 0.0);
    for j in (0..n).filter(|&j| j != k) {
        sum += match regime {
            Regime::Hard => (s[k] * jet.d1[k] - s[j] * jet.d1[j]) / (s[k] - s[j]),
            _ => (jet.d1[k] - jet.d1[j]) / (s[k] - s[j]),
        };
    }
    let local = match regime {
        Regime::Hard => s[k] * jet.d2[k] + coupling * (1.0 + lambda1) * jet.d1[k] + jet.f,
        Regime::Bulk => jet.d2[k] + jet.f,
        Regime::Soft => jet.d2[k] - s[k] * jet.f,
    };
    local + coupling * sum
}

fn check_grid(n: usize, grid: &[Vec<f64>]) -> Result<()> {
    if n == 0 {
        return domain("n must be positive");
    }
    for p in grid {
        if p.len() != n {
            return domain(format!("grid point {p:?} does not have {n} coordinates"));
        }
        for a in 0..n {
            for b in a + 1..n {
                if (p[a] - p[b]).abs() < MIN_GAP {
                    return domain(format!(
                        "grid point {p:?} has coordinates closer than {MIN_GAP}; the PDEs are singular on coincidences"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Max |L_k F| over the grid and k = 1..n for the regime's system.
pub fn pde_residual(
    regime: Regime,
    beta: f64,
    lambda1: f64,
    n: usize,
    source: FSource,
    grid: &[Vec<f64>],
) -> Result<PdeResidual> {
    check_grid(n, grid)?;
    if !(beta > 0.0) {
        return domain(format!("beta must be positive, got {beta}"));
    }
    let mut coupling = if beta.is_infinite() { 0.0 } else { 2.0 / beta };
    let mut note = None;
    let poly = match source {
        FSource::Series { max_weight } => Some(match regime {
            Regime::Hard => hard_series(beta, lambda1, n, max_weight)?,
            Regime::Bulk => bulk_series(beta, n, max_weight)?,
            Regime::Soft => {
                return Err(Error::UnsupportedRegime("the soft-edge limit has no Jack series; use quadrature".into()))
            }
        }),
        FSource::Classical if n != 1 => return domain("classical sources are one-variable"),
        FSource::Separable { .. } => {
            coupling = 0.0;
            None
        }
        FSource::Quadrature => {
            if regime != Regime::Soft {
                return Err(Error::UnsupportedRegime("quadrature source exists only at the soft edge".into()));
            }
            note = Some(format!("derivatives by central differences with h = {FD_STEP}"));
            None
        }
        FSource::Classical => None,
    };
    let mut per_point = Vec::with_capacity(grid.len());
    let mut worst = (0.0f64, 1usize);
    for p in grid {
        let jet = match (&poly, source) {
            (Some(poly), _) => poly.jet(p),
            (None, FSource::Separable { j }) => separable_jet(regime, j, p)?,
            (None, FSource::Quadrature) => quadrature_jet(beta, p)?,
            (None, _) => match regime {
                Regime::Hard => hard_classical(beta, lambda1, p[0]),
                Regime::Bulk => {
                    let e = C64::new(0.0, p[0]).exp();
                    let i = C64::new(0.0, 1.0);
                    Jet { f: e, d1: vec![i * e], d2: vec![-e] }
                }
                Regime::Soft => {
                    let [ai, ai2, _, _] = airy_series_jet(p[0]);
                    let ai1 = crate::special::airy_all(p[0])[1];
                    Jet { f: C64::new(ai, 0.0), d1: vec![C64::new(ai1, 0.0)], d2: vec![C64::new(ai2, 0.0)] }
                }
            },
        };
        let mut pt = 0.0f64;
        for k in 0..n {
            let r = operator(regime, coupling, lambda1, p, &jet, k).norm();
            if r > worst.0 || r.is_nan() {
                worst = (r, k + 1);
            }
            pt = pt.max(r);
        }
        per_point.push(pt);
    }
    Ok(PdeResidual {
        regime,
        max_residual: worst.0,
        grid: grid.to_vec(),
        per_point,
        equation_index: worst.1,
        note,
    })
}

/// 2^{2/β−1/2}Γ(2/β+1/2) x^{1/2−2/β} J_{2/β−1/2}(x) at x = s₁ − s₂.
pub fn bulk_n2_closed_form(beta: f64, s1: f64, s2: f64) -> f64 {
    let nu = if beta.is_infinite() { -0.5 } else { 2.0 / beta - 0.5 };
    crate::special::bessel_normalized(nu, s1 - s2)
}

/// Residual of f″ + (4/β) f′/x + f = 0 for the closed form, with
/// derivatives from the index-shift identities of the normalized Bessel
/// series.
pub fn bessel_ode_residual(beta: f64, x: f64) -> f64 {
    use crate::special::bessel_normalized as b;
    let nu = if beta.is_infinite() { -0.5 } else { 2.0 / beta - 0.5 };
    let f = b(nu, x);
    let d1 = -x / (2.0 * (nu + 1.0)) * b(nu + 1.0, x);
    let d2 = -b(nu + 1.0, x) / (2.0 * (nu + 1.0)) + x * x / (4.0 * (nu + 1.0) * (nu + 2.0)) * b(nu + 2.0, x);
    (d2 + (2.0 * nu + 1.0) * d1 / x + f).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::{eval_two_set, HyperSeriesSpec, TruncationPolicy};
    use num_complex::Complex;

    #[test]
    fn one_variable_classical_cases() {
        let grid: Vec<Vec<f64>> = [-2.0, -0.7, 0.0, 0.4, 1.9].iter().map(|&x| vec![x]).collect();
        let b = pde_residual(Regime::Bulk, 2.0, 0.0, 1, FSource::Classical, &grid).unwrap();
        assert!(b.max_residual < 1e-14);
        let s = pde_residual(Regime::Soft, 2.0, 0.0, 1, FSource::Classical, &grid).unwrap();
        assert!(s.max_residual < 1e-8, "{}", s.max_residual);
        let hg: Vec<Vec<f64>> = [0.1, 1.0, 3.0, 7.5].iter().map(|&x| vec![x]).collect();
        let h = pde_residual(Regime::Hard, 3.0, 0.5, 1, FSource::Classical, &hg).unwrap();
        assert!(h.max_residual < 1e-10, "{}", h.max_residual);
    }

    #[test]
    fn airy_series_jet_matches_library() {
        for x in [-3.0, -1.0, 0.0, 0.5, 2.0] {
            let [ai, ai2, bi, bi2] = airy_series_jet(x);
            let a = crate::special::airy_all(x);
            assert!((ai - a[0]).abs() < 1e-13 && (bi - a[2]).abs() < 1e-12);
            assert!((ai2 - x * a[0]).abs() < 1e-12 && (bi2 - x * a[2]).abs() < 1e-11);
        }
    }

    #[test]
    fn truncated_series_residuals_shrink() {
        let hard_grid = vec![vec![6.0, 14.0], vec![3.0, 11.0], vec![9.0, 2.5]];
        let bulk_grid = vec![vec![1.5, -1.0], vec![2.5, 0.5], vec![-2.0, 1.0]];
        for (regime, grid) in [(Regime::Hard, &hard_grid), (Regime::Bulk, &bulk_grid)] {
            let r: Vec<f64> = [10, 20, 30]
                .iter()
                .map(|&w| pde_residual(regime, 2.0, 0.0, 2, FSource::Series { max_weight: w }, grid).unwrap().max_residual)
                .collect();
            assert!(r[0] > r[1] && r[1] > r[2], "{regime:?}: {r:?}");
        }
        let r = pde_residual(Regime::Bulk, 1.0, 0.0, 2, FSource::Series { max_weight: 40 }, &bulk_grid).unwrap();
        assert!(r.max_residual < 1e-8, "{}", r.max_residual);
    }

    #[test]
    fn coincident_coordinates_rejected() {
        let e = pde_residual(Regime::Bulk, 2.0, 0.0, 2, FSource::Series { max_weight: 5 }, &[vec![0.3, 0.35]]);
        assert!(e.is_err());
    }

    #[test]
    fn closed_form_matches_series_and_ode() {
        for beta in [1.0, 2.0, 4.0] {
            let spec = HyperSeriesSpec::new(beta / 2.0, &[], &[])
                .with_truncation(TruncationPolicy { max_weight: 40, require_convergence: false, ..Default::default() });
            let y = [Complex::new(0.0, 1.0), Complex::new(0.0, -1.0)];
            for (s1, s2) in [(0.2, -0.3), (1.5, -1.5), (0.0, 2.9), (-0.4, -0.1)] {
                let x = [Complex::new(s1, 0.0), Complex::new(s2, 0.0)];
                let v = eval_two_set(&spec, &x, &y, 2).unwrap().value;
                let c = bulk_n2_closed_form(beta, s1, s2);
                assert!((v.re - c).abs() < 1e-8 && v.im.abs() < 1e-8, "beta={beta} {s1} {s2}: {v} vs {c}");
                assert!(bessel_ode_residual(beta, s1 - s2) < 1e-8);
            }
        }
        let x: f64 = 0.9;
        assert!((bulk_n2_closed_form(2.0, x, 0.0) - x.sin() / x).abs() < 1e-15);
        assert!((bulk_n2_closed_form(f64::INFINITY, x, 0.0) - x.cos()).abs() < 1e-15);
        assert_eq!(bulk_n2_closed_form(3.0, 0.4, 0.4), 1.0);
    }

    #[test]
    fn separable_solutions_at_infinite_beta() {
        let grid = vec![vec![0.3, -0.8], vec![1.2, 0.1]];
        for j in 0..=2 {
            for regime in [Regime::Bulk, Regime::Soft] {
                let r = pde_residual(regime, f64::INFINITY, 0.0, 2, FSource::Separable { j }, &grid).unwrap();
                assert!(r.max_residual < 1e-8, "{regime:?} j={j}: {}", r.max_residual);
            }
        }
    }
}
