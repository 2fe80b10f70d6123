//! Fixtures shared by the criterion benches.

use betachar::Complex;

/// Deterministic complex points of modulus below one.
pub fn sample_point(n: usize, seed: u32) -> Vec<Complex<f64>> {
    (0..n)
        .map(|i| {
            let t = (seed as f64 + 1.0) * (i as f64 + 1.0);
            Complex::new(0.6 * (0.7 * t).sin(), 0.3 * (1.3 * t).cos())
        })
        .collect()
}
