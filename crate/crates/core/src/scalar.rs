//! Real scalar abstraction shared by the series engine.
//!
//! `f64` is the fast path. [`Ext`] is a 256-bit binary float used when a
//! terminating alternating series would cancel away every double digit.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_complex::Complex;
use num_traits::{Num, One, Zero};

pub type C64 = Complex<f64>;

/// Working precision of [`Ext`] in bits.
pub const EXT_BITS: usize = 256;

pub trait Real:
    Clone
    + Send
    + Sync
    + fmt::Debug
    + PartialOrd
    + Num
    + Neg<Output = Self>
    + 'static
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Natural log of |x|, finite even when `to_f64` would overflow.
    fn ln_abs(&self) -> f64;

    fn from_i64(k: i64) -> Self {
        Self::from_f64(k as f64)
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Adds `term` into `sum`; `comp` carries a running correction for types
    /// that benefit from compensated summation.
    fn accumulate(sum: &mut Self, _comp: &mut Self, term: Self) {
        *sum = sum.clone() + term;
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn ln_abs(&self) -> f64 {
        f64::abs(*self).ln()
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn accumulate(sum: &mut f64, comp: &mut f64, term: f64) {
        let t = *sum + term;
        if sum.abs() >= term.abs() {
            *comp += (*sum - t) + term;
        } else {
            *comp += (term - t) + *sum;
        }
        *sum = t;
    }
}

/// 256-bit binary floating point number.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Ext(FBig<HalfEven, 2>);

impl Ext {
    fn wrap(x: FBig<HalfEven, 2>) -> Self {
        if x.precision() == EXT_BITS {
            Ext(x)
        } else {
            Ext(x.with_precision(EXT_BITS).value())
        }
    }

    /// Parses a decimal literal to full working precision.
    pub fn from_decimal(s: &str) -> Self {
        let d: dashu_float::DBig = s.parse().expect("decimal literal");
        Ext::wrap(d.with_base_and_precision::<2>(EXT_BITS).value().with_rounding())
    }

    pub fn exp(&self) -> Self {
        Ext::wrap(self.0.exp())
    }

    pub fn ln(&self) -> Self {
        Ext::wrap(self.0.ln())
    }

    pub fn sqrt(&self) -> Self {
        use dashu_float::ops::SquareRoot;
        Ext::wrap(self.0.sqrt())
    }
}

impl fmt::Debug for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ext({:e})", self.to_f64())
    }
}

impl Real for Ext {
    fn from_f64(x: f64) -> Self {
        let v = FBig::<HalfEven, 2>::try_from(x).expect("finite f64");
        Ext::wrap(v)
    }
    fn from_i64(k: i64) -> Self {
        Ext::wrap(FBig::from(k))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
    fn ln_abs(&self) -> f64 {
        let repr = self.0.repr();
        let sig = repr.significand();
        if sig.is_zero() {
            return f64::NEG_INFINITY;
        }
        let m = sig.to_f64().value().abs();
        m.ln() + repr.exponent() as f64 * std::f64::consts::LN_2
    }
}

macro_rules! ext_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for Ext {
            type Output = Ext;
            fn $m(self, rhs: Ext) -> Ext {
                Ext::wrap(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a Ext> for &'a Ext {
            type Output = Ext;
            fn $m(self, rhs: &'a Ext) -> Ext {
                Ext::wrap(&self.0 $op &rhs.0)
            }
        }
    };
}
ext_binop!(Add, add, +);
ext_binop!(Sub, sub, -);
ext_binop!(Mul, mul, *);
ext_binop!(Div, div, /);

impl Rem for Ext {
    type Output = Ext;
    fn rem(self, rhs: Ext) -> Ext {
        let q = Ext::wrap(FBig::from((&self.0 / &rhs.0).trunc().to_int().value()));
        self.clone() - q * rhs
    }
}

impl Neg for Ext {
    type Output = Ext;
    fn neg(self) -> Ext {
        Ext(-self.0)
    }
}

impl Zero for Ext {
    fn zero() -> Self {
        Ext::wrap(FBig::ZERO)
    }
    fn is_zero(&self) -> bool {
        self.0.repr().is_zero()
    }
}

impl One for Ext {
    fn one() -> Self {
        Ext::wrap(FBig::ONE)
    }
}

impl Num for Ext {
    type FromStrRadixErr = std::num::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let v = if radix == 10 { s.parse::<f64>()? } else { "".parse::<f64>()? };
        Ok(Ext::from_f64(v))
    }
}

/// Converts a complex value between scalar types through `f64` parts.
pub fn cfrom<S: Real>(z: C64) -> Complex<S> {
    Complex::new(S::from_f64(z.re), S::from_f64(z.im))
}

pub fn cto<S: Real>(z: &Complex<S>) -> C64 {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

/// Principal complex log of a value that may exceed the `f64` range.
pub fn cln<S: Real>(z: &Complex<S>) -> C64 {
    let lr = z.re.ln_abs();
    let li = z.im.ln_abs();
    if lr == f64::NEG_INFINITY && li == f64::NEG_INFINITY {
        return Complex::new(f64::NEG_INFINITY, 0.0);
    }
    let big = lr.max(li);
    // rescale both parts by e^{-big} before taking the phase
    let sr = z.re.to_f64().signum() * (lr - big).exp();
    let si = z.im.to_f64().signum() * (li - big).exp();
    let sr = if lr == f64::NEG_INFINITY { 0.0 } else { sr };
    let si = if li == f64::NEG_INFINITY { 0.0 } else { si };
    Complex::new(big + sr.hypot(si).ln(), si.atan2(sr))
}
