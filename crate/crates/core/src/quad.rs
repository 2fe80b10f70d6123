//! Gauss–Legendre rules shared by the quadrature code.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::GaussLegendre;

/// Nodes and weights on [−1, 1].
pub(crate) fn legendre(k: usize) -> Arc<Vec<(f64, f64)>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<(f64, f64)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(&k) {
        return r.clone();
    }
    let rule = GaussLegendre::new(NonZeroUsize::new(k.max(1)).unwrap());
    let pairs: Vec<(f64, f64)> = rule.iter().map(|(x, w)| (*x, *w)).collect();
    let pairs = Arc::new(pairs);
    cache.lock().unwrap().insert(k, pairs.clone());
    pairs
}

/// Composite rule on [a, b] with `panels` equal panels of `k` nodes each.
pub(crate) fn composite(a: f64, b: f64, panels: usize, k: usize) -> Vec<(f64, f64)> {
    let rule = legendre(k);
    let h = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * k);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        for &(x, w) in rule.iter() {
            out.push((lo + (x + 1.0) * h / 2.0, w * h / 2.0));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_and_gaussians() {
        let r = composite(0.0, 2.0, 3, 8);
        let v: f64 = r.iter().map(|&(x, w)| w * x.powi(7)).sum();
        assert!((v - 2f64.powi(8) / 8.0).abs() < 1e-12);
        let g = composite(-8.0, 8.0, 8, 16);
        let mut s = 0.0;
        for &(x, wx) in &g {
            for &(y, wy) in &g {
                s += wx * wy * (-(x * x + y * y) / 2.0).exp();
            }
        }
        assert!((s - 2.0 * std::f64::consts::PI).abs() < 1e-12);
    }
}
