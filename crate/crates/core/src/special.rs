//! Scalar special functions: log-gamma with sign, and the classical Airy
//! pair computed from their Maclaurin series in 256-bit arithmetic.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::scalar::{Ext, Real, C64};

/// Complex log of Γ(x) for real x: ln|Γ(x)| plus iπ when Γ(x) < 0.
pub fn ln_gamma(x: f64) -> Result<C64> {
    if x <= 0.0 && x.fract() == 0.0 {
        return domain(format!("gamma pole at {x}"));
    }
    let (v, sign) = libm::lgamma_r(x);
    Ok(Complex::new(v, if sign < 0 { std::f64::consts::PI } else { 0.0 }))
}

pub fn ln_binomial(n: u32, k: u32) -> f64 {
    libm::lgamma(n as f64 + 1.0) - libm::lgamma(k as f64 + 1.0) - libm::lgamma((n - k) as f64 + 1.0)
}

pub fn binomial(n: u32, k: u32) -> f64 {
    ln_binomial(n, k).exp().round()
}

/// Ai, Ai′, Bi, Bi′ at real x from the Maclaurin series.
///
/// Accurate to double precision on [−30, 15]; growth of the terms is
/// absorbed by the 256-bit working precision.
pub fn airy_all(x: f64) -> [f64; 4] {
    assert!((-30.0..=15.0).contains(&x), "airy series used outside its range: {x}");
    let xe = Ext::from_f64(x);
    let x3 = xe.clone() * xe.clone() * xe.clone();
    // f = Σ 3^k (1/3)_k x^{3k}/(3k)!,  g = Σ 3^k (2/3)_k x^{3k+1}/(3k+1)!
    let mut tf = Ext::one();
    let mut tg = xe.clone();
    let mut f = Ext::one();
    let mut g = xe.clone();
    let mut df = Ext::zero();
    let mut dg = Ext::one();
    let tiny = 1e-40;
    for k in 1..400i64 {
        let a = 3 * k;
        tf = tf * x3.clone() / Ext::from_i64((a - 1) * a);
        tg = tg * x3.clone() / Ext::from_i64(a * (a + 1));
        f = f + tf.clone();
        g = g + tg.clone();
        // derivatives termwise: d/dx x^{3k} = 3k x^{3k-1}
        df = df + tf.clone() * Ext::from_i64(a) / xe.clone().max_nonzero();
        dg = dg + tg.clone() * Ext::from_i64(a + 1) / xe.clone().max_nonzero();
        if k > 3 && tf.to_f64().abs() < tiny * f.to_f64().abs().max(1.0) && tg.to_f64().abs() < tiny * g.to_f64().abs().max(1.0) {
            break;
        }
    }
    let c1 = Ext::from_decimal(AI0_DIGITS);
    let c2 = Ext::from_decimal(AIP0_NEG_DIGITS);
    let s3 = Ext::from_i64(3).sqrt();
    let ai = c1.clone() * f.clone() - c2.clone() * g.clone();
    let aip = c1.clone() * df.clone() - c2.clone() * dg.clone();
    let bi = s3.clone() * (c1.clone() * f + c2.clone() * g);
    let bip = s3 * (c1 * df + c2 * dg);
    [ai.to_f64(), aip.to_f64(), bi.to_f64(), bip.to_f64()]
}

const AI0_DIGITS: &str =
    "0.35502805388781723926006318600418317639797917419917724058332651030081004245012671";
const AIP0_NEG_DIGITS: &str =
    "0.25881940379280679840518356018920396347909113835493458221000181385610277267679028";

/// Ai(0) = 3^{−2/3}/Γ(2/3).
pub const AI0: f64 = 0.355_028_053_887_817_2;
/// Ai′(0) = −3^{−1/3}/Γ(1/3).
pub const AIP0: f64 = -0.258_819_403_792_806_8;

trait NonZero {
    fn max_nonzero(self) -> Self;
}

impl NonZero for Ext {
    // x = 0 only matters through terms that vanish there anyway
    fn max_nonzero(self) -> Self {
        if self.is_zero() {
            Ext::from_f64(1e-300)
        } else {
            self
        }
    }
}

pub fn airy_ai(x: f64) -> f64 {
    if x > 15.0 {
        let z = 2.0 / 3.0 * x.powf(1.5);
        return (-z).exp() / (2.0 * std::f64::consts::PI.sqrt() * x.powf(0.25)) * asym_series(z, false);
    }
    airy_all(x)[0]
}

pub fn airy_ai_prime(x: f64) -> f64 {
    if x > 15.0 {
        let z = 2.0 / 3.0 * x.powf(1.5);
        return -x.powf(0.25) * (-z).exp() / (2.0 * std::f64::consts::PI.sqrt()) * asym_series(z, true);
    }
    airy_all(x)[1]
}

/// Σ (−1)^k c_k / z^k with c_k = u_k for Ai and −(6k+1)/(6k−1)·u_k for Ai′.
fn asym_series(z: f64, derivative: bool) -> f64 {
    let mut s = 1.0;
    let mut u = 1.0;
    for k in 1..12 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let c = if derivative { -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u } else { u };
        s += (-1f64).powi(k) * c / z.powi(k);
    }
    s
}

/// Modified Bessel-type series Σ (−x²/4)^k / (k! (ν+1)_k), the entire
/// function Γ(ν+1)(x/2)^{−ν}J_ν(x).
pub fn bessel_normalized(nu: f64, x: f64) -> f64 {
    let q = -x * x / 4.0;
    let mut t = 1.0;
    let mut s = 1.0;
    for k in 1..400 {
        let kf = k as f64;
        t *= q / (kf * (nu + kf));
        s += t;
        if t.abs() < 1e-18 * s.abs() && kf > q.abs().sqrt() {
            break;
        }
    }
    s
}
