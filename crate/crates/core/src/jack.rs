//! Jack polynomials P_κ^(α) in the monomial basis.
//!
//! Coefficients come from back-substitution through the eigen-system of the
//! operator D₂ − (2/α)(n−1)E₁, whose off-diagonal part on monomials is the
//! integer-valued pair operator `T` below.

use std::any::{Any, TypeId};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::monomial::{next_permutation, MonoEval};
use crate::partitions::{dominated_by, gen_pochhammer_s, hook_product_s, partitions_cached, Partition};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JackExpansion {
    pub kappa: Partition,
    pub alpha: f64,
    pub coeffs: BTreeMap<Partition, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenData {
    pub kappa: Partition,
    pub alpha: f64,
    pub epsilon: f64,
}

/// Eigenvalue of D₂ − (2/α)(n−1)E₁ on P_κ; independent of n.
pub fn eigenvalue<S: Real>(kappa: &Partition, inv_alpha: &S) -> S {
    let mut d = 0i64;
    let mut e = 0i64;
    for (i, &k) in kappa.parts().iter().enumerate() {
        let k = k as i64;
        d += k * (k - 1);
        e += i as i64 * k;
    }
    S::from_i64(d) - S::from_i64(2 * e) * inv_alpha.clone()
}

pub fn eigen_data(kappa: &Partition, alpha: f64) -> EigenData {
    EigenData { kappa: kappa.clone(), alpha, epsilon: eigenvalue(kappa, &(1.0 / alpha)) }
}

/// Lowering part of the pair operator on the monomials of one weight.
pub(crate) struct PairOperator {
    pub parts: Arc<Vec<Partition>>,
    /// `lower[m]` lists `(ν, T_{νμ})` for μ = parts[m] and ν ≠ μ.
    pub lower: Vec<Vec<(usize, i64)>>,
    pub diag: Vec<i64>,
}

fn pair_cache() -> &'static RwLock<HashMap<(u32, usize), Arc<PairOperator>>> {
    static CACHE: OnceLock<RwLock<HashMap<(u32, usize), Arc<PairOperator>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub(crate) fn pair_operator(w: u32, n: usize) -> Arc<PairOperator> {
    if let Some(op) = pair_cache().read().unwrap().get(&(w, n)) {
        return op.clone();
    }
    let op = Arc::new(build_pair_operator(w, n));
    pair_cache().write().unwrap().entry((w, n)).or_insert(op).clone()
}

fn build_pair_operator(w: u32, n: usize) -> PairOperator {
    let parts = partitions_cached(w, n, None);
    let index: HashMap<&Partition, usize> = parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut lower = vec![Vec::new(); parts.len()];
    let mut diag = vec![0i64; parts.len()];
    let mut acc: HashMap<usize, i64> = HashMap::new();
    for (src, nu) in parts.iter().enumerate() {
        acc.clear();
        let mut exps: Vec<u32> = (0..n).map(|i| nu.part(i)).collect();
        exps.sort_unstable();
        loop {
            for i in 0..n {
                for j in i + 1..n {
                    let (p, q) = (exps[i], exps[j]);
                    if p < q {
                        continue;
                    }
                    // T(x^p y^q + x^q y^p) = p(x^p y^q + x^q y^p)
                    //   + (p−q) Σ_{k=1}^{p−q−1} x^{p−k} y^{q+k};  T(x^p y^p) = p x^p y^p
                    let mut hit = |e: &[u32], c: i64| {
                        if e.windows(2).all(|w| w[0] >= w[1]) {
                            let mu = Partition::from_unsorted(e.to_vec());
                            *acc.entry(index[&mu]).or_insert(0) += c;
                        }
                    };
                    let mut e = exps.clone();
                    hit(&e, p as i64);
                    if p > q {
                        e.swap(i, j);
                        hit(&e, p as i64);
                        for k in 1..p - q {
                            let mut f = exps.clone();
                            f[i] = p - k;
                            f[j] = q + k;
                            hit(&f, (p - q) as i64);
                        }
                    }
                }
            }
            if !next_permutation(&mut exps) {
                break;
            }
        }
        for (&dst, &c) in acc.iter() {
            if c == 0 {
                continue;
            }
            if dst == src {
                diag[src] = c;
            } else {
                lower[dst].push((src, c));
            }
        }
    }
    for l in lower.iter_mut() {
        l.sort_unstable();
    }
    PairOperator { parts, lower, diag }
}

type ExpKey = (Partition, u64, usize);
type ExpCache<S> = RwLock<HashMap<ExpKey, Arc<Vec<(usize, S)>>>>;

fn expansion_cache<S: Real>() -> &'static ExpCache<S> {
    static CACHES: OnceLock<RwLock<HashMap<TypeId, &'static (dyn Any + Send + Sync)>>> = OnceLock::new();
    let caches = CACHES.get_or_init(Default::default);
    let id = TypeId::of::<S>();
    if let Some(c) = caches.read().unwrap().get(&id) {
        return c.downcast_ref::<ExpCache<S>>().unwrap();
    }
    let mut w = caches.write().unwrap();
    let c = *w.entry(id).or_insert_with(|| {
        let leaked: &'static ExpCache<S> = Box::leak(Box::default());
        leaked
    });
    c.downcast_ref::<ExpCache<S>>().unwrap()
}

/// Sparse coefficients `(index into partitions_cached(|κ|, n), c_{κμ})`.
///
/// `alpha = f64::INFINITY` gives the monomial m_κ.
pub(crate) fn expansion_sparse<S: Real>(kappa: &Partition, alpha: f64, n: usize) -> Result<Arc<Vec<(usize, S)>>> {
    if !(alpha > 0.0) {
        return domain(format!("alpha must be positive, got {alpha}"));
    }
    if kappa.len() > n {
        return Err(Error::VanishingPolynomial { length: kappa.len(), n });
    }
    let w = kappa.weight();
    let n = n.min(w.max(1) as usize);
    let key = (kappa.clone(), alpha.to_bits(), n);
    if let Some(v) = expansion_cache::<S>().read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(build_expansion::<S>(kappa, alpha, n)?);
    Ok(expansion_cache::<S>().write().unwrap().entry(key).or_insert(v).clone())
}

fn build_expansion<S: Real>(kappa: &Partition, alpha: f64, n: usize) -> Result<Vec<(usize, S)>> {
    let op = pair_operator(kappa.weight(), n);
    let top = op.parts.iter().position(|p| p == kappa).unwrap();
    if alpha.is_infinite() {
        return Ok(vec![(top, S::one())]);
    }
    let inv_alpha = S::one() / S::from_f64(alpha);
    let two_inv = S::from_i64(2) * inv_alpha.clone();
    let eps_k = eigenvalue(kappa, &inv_alpha);
    let eps_kf = eps_k.to_f64();
    let mut c: Vec<S> = vec![S::zero(); op.parts.len()];
    c[top] = S::one();
    for m in top + 1..op.parts.len() {
        let mu = &op.parts[m];
        if !dominated_by(mu, kappa) {
            continue;
        }
        let mut rhs = S::zero();
        for (src, t) in &op.lower[m] {
            if *src < top || c[*src].is_zero() {
                continue;
            }
            rhs = rhs + c[*src].clone() * S::from_i64(*t);
        }
        if rhs.is_zero() {
            continue;
        }
        let gap = eps_k.clone() - eigenvalue(mu, &inv_alpha);
        if gap.to_f64().abs() < 1e-9 * (1.0 + eps_kf.abs()) {
            return Err(Error::DegenerateParameter { kappa: kappa.to_string(), mu: mu.to_string(), alpha });
        }
        c[m] = two_inv.clone() * rhs / gap;
    }
    Ok(c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
}

pub fn jack_expansion(kappa: &Partition, alpha: f64, n: usize) -> Result<JackExpansion> {
    let sparse = expansion_sparse::<f64>(kappa, alpha, n)?;
    let nn = n.min(kappa.weight().max(1) as usize);
    let parts = partitions_cached(kappa.weight(), nn, None);
    let coeffs = sparse.iter().map(|(i, c)| (parts[*i].clone(), *c)).collect();
    Ok(JackExpansion { kappa: kappa.clone(), alpha, coeffs })
}

pub fn jack_eval(expansion: &JackExpansion, x: &[Complex<f64>]) -> Complex<f64> {
    let mut ev = MonoEval::new(x.to_vec());
    expansion
        .coeffs
        .iter()
        .map(|(mu, c)| ev.value(mu) * *c)
        .sum()
}

/// P_κ(x) for a batch of κ sharing one monomial evaluator.
pub(crate) fn jack_value<S: Real>(kappa: &Partition, alpha: f64, ev: &mut MonoEval<S>) -> Result<Complex<S>> {
    let n = ev.n();
    if kappa.len() > n {
        return Ok(Complex::zero());
    }
    let sparse = expansion_sparse::<S>(kappa, alpha, n)?;
    let nn = n.min(kappa.weight().max(1) as usize);
    let parts = partitions_cached(kappa.weight(), nn, None);
    let mut acc = Complex::<S>::zero();
    for (i, c) in sparse.iter() {
        let m = ev.value(&parts[*i]);
        acc = acc + Complex::new(m.re * c.clone(), m.im * c.clone());
    }
    Ok(acc)
}

/// P_κ(1^n) = α^{|κ|}[n/α]_κ / Π(α·arm + leg + 1).
pub fn jack_at_ones(kappa: &Partition, alpha: f64, n: usize) -> f64 {
    jack_at_ones_s::<f64>(kappa, alpha, n)
}

pub(crate) fn jack_at_ones_s<S: Real>(kappa: &Partition, alpha: f64, n: usize) -> S {
    if kappa.len() > n {
        return S::zero();
    }
    if alpha.is_infinite() {
        let l = kappa.len();
        let mut v = S::one();
        for k in (n - l + 1)..=n {
            v = v * S::from_i64(k as i64);
        }
        for (_, m) in kappa.multiplicities() {
            for k in 2..=m {
                v = v / S::from_i64(k as i64);
            }
        }
        return v;
    }
    let a = S::from_f64(alpha);
    let inv = S::one() / a.clone();
    let x = Complex::new(S::from_i64(n as i64) * inv.clone(), S::zero());
    let poch = gen_pochhammer_s(&x, kappa, &inv).re;
    // α^{|κ|} / Π(α a + l + 1) = 1 / Π(a + (l+1)/α)
    let mut den = S::one();
    for b in crate::partitions::box_stats(kappa) {
        den = den * (S::from_i64(b.arm as i64) + S::from_i64(b.leg as i64 + 1) * inv.clone());
    }
    poch / den
}

/// Applies D₂ − (2/α)(n−1)E₁ − ε_κ to the expansion; returns the relative
/// residual measured in the monomial basis.
pub fn eigen_residual(expansion: &JackExpansion, n: usize) -> f64 {
    let w = expansion.kappa.weight();
    let nn = n.min(w.max(1) as usize);
    let op = pair_operator(w, nn);
    let inv = 1.0 / expansion.alpha;
    let eps = eigenvalue(&expansion.kappa, &inv);
    let coeff: Vec<f64> = op.parts.iter().map(|p| expansion.coeffs.get(p).copied().unwrap_or(0.0)).collect();
    let mut worst = 0.0f64;
    let scale = coeff.iter().fold(0.0f64, |a, c| a.max(c.abs())) * (1.0 + eps.abs());
    for m in 0..op.parts.len() {
        let mu = &op.parts[m];
        // diagonal from D₂ and the pair operator, shifted by −(2/α)(n−1)|μ|
        let d2: i64 = mu.parts().iter().map(|&k| (k as i64) * (k as i64 - 1)).sum();
        let diag = d2 as f64 + 2.0 * inv * (op.diag[m] as f64 - ((nn as f64) - 1.0) * w as f64);
        let mut v = (diag - eps) * coeff[m];
        for (src, t) in &op.lower[m] {
            v += 2.0 * inv * (*t as f64) * coeff[*src];
        }
        worst = worst.max(v.abs());
    }
    worst / scale.max(1e-300)
}

/// Summand weight of the hypergeometric series, shared with `hyper`.
pub(crate) fn hook<S: Real>(kappa: &Partition, alpha: f64) -> S {
    let inv = if alpha.is_infinite() { S::zero() } else { S::one() / S::from_f64(alpha) };
    hook_product_s(kappa, &inv)
}

pub(crate) fn poch<S: Real>(a: &Complex<S>, kappa: &Partition, alpha: f64) -> Complex<S> {
    let inv = if alpha.is_infinite() { S::zero() } else { S::one() / S::from_f64(alpha) };
    gen_pochhammer_s(a, kappa, &inv)
}
