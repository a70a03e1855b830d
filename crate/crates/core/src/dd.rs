//! Double-double arithmetic: each value is an unevaluated sum `hi + lo` of
//! two `f64`, giving roughly 31-32 significant decimal digits. This is the
//! 32-digit mode of the fitting pipeline.
//!
//! The error-free building blocks (`two_sum`, `two_prod`) and the add, mul,
//! div and sqrt algorithms follow the classic quad-double construction;
//! `two_prod` relies on hardware fused multiply-add. Elementary functions
//! use argument reduction against two-part constants followed by Taylor
//! sums, which is accurate for the moderate arguments (|x| up to a few
//! hundred for exp, a few thousand for sin/cos) this crate produces.

use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// `hi + lo` with `hi = fl(hi + lo)` and `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

/// Exact sum of two f64: `a + b = s + e` with `s = fl(a + b)`.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Exact sum assuming `|a| >= |b|` (or a = 0).
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Exact product: `a * b = p + e` with `p = fl(a * b)`.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

pub const DD_ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
pub const DD_ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
const DD_PI: Dd = Dd {
    hi: std::f64::consts::PI,
    lo: 1.224_646_799_147_353_2e-16,
};
const DD_PI_2: Dd = Dd {
    hi: std::f64::consts::FRAC_PI_2,
    lo: 6.123_233_995_736_766e-17,
};
const DD_LN2: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

impl Dd {
    /// Renormalizing constructor: accepts any pair whose exact sum is the
    /// intended value.
    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    /// Raw constructor for already-normalized pairs (used for constants).
    #[inline]
    pub const fn from_parts(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    /// Exact multiplication by a power of two.
    #[inline]
    fn mul_pwr2(self, p: f64) -> Self {
        Dd {
            hi: self.hi * p,
            lo: self.lo * p,
        }
    }

    fn sqrt_impl(self) -> Self {
        if self.hi == 0.0 && self.lo == 0.0 {
            return DD_ZERO;
        }
        if self.hi < 0.0 {
            return Dd::from_parts(f64::NAN, 0.0);
        }
        // One Newton step on 1/sqrt in f64, then a correction computed in
        // full precision: sqrt(a) = a*x + (a - (a*x)^2) * x / 2 with
        // x = 1/sqrt(a_hi).
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let v = Dd::from_f64(ax);
        let d = self - v * v;
        v + Dd::from_f64(d.hi * (x * 0.5))
    }

    /// Taylor sums of sin and cos for |r| <= pi/4 + rounding slack.
    fn sin_cos_taylor(r: Dd) -> (Dd, Dd) {
        let r2 = r * r;
        let mut s = r;
        let mut term = r;
        let mut k = 1.0f64;
        loop {
            // term_{j+1} = -term_j * r^2 / ((k+1)(k+2))
            term = -(term * r2) / Dd::from_f64((k + 1.0) * (k + 2.0));
            s += term;
            k += 2.0;
            if term.hi.abs() < 1e-35 || k > 40.0 {
                break;
            }
        }
        let mut c = DD_ONE;
        let mut term = DD_ONE;
        let mut k = 0.0f64;
        loop {
            term = -(term * r2) / Dd::from_f64((k + 1.0) * (k + 2.0));
            c += term;
            k += 2.0;
            if term.hi.abs() < 1e-35 || k > 40.0 {
                break;
            }
        }
        (s, c)
    }

    /// Quadrant reduction: returns (sin r, cos r, quadrant) for
    /// x = r + q * pi/2, |r| <= pi/4.
    fn reduced_sin_cos(self) -> (Dd, Dd, i64) {
        let q = (self.hi / DD_PI_2.hi).round();
        let r = self - DD_PI_2 * Dd::from_f64(q);
        let (s, c) = Self::sin_cos_taylor(r);
        (s, c, (q as i64).rem_euclid(4))
    }
}

impl From<f64> for Dd {
    #[inline]
    fn from(v: f64) -> Self {
        Dd { hi: v, lo: 0.0 }
    }
}

impl PartialOrd for Dd {
    #[inline]
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        // Normalized pairs order lexicographically.
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, o: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let p2 = p2 + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, o: Dd) -> Dd {
        // Three long-division steps give a full double-double quotient.
        let q1 = self.hi / o.hi;
        let mut r = self - o * Dd::from(q1);
        let q2 = r.hi / o.hi;
        r -= o * Dd::from(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from(q3)
    }
}

impl AddAssign for Dd {
    #[inline]
    fn add_assign(&mut self, o: Dd) {
        *self = *self + o;
    }
}

impl SubAssign for Dd {
    #[inline]
    fn sub_assign(&mut self, o: Dd) {
        *self = *self - o;
    }
}

impl MulAssign for Dd {
    #[inline]
    fn mul_assign(&mut self, o: Dd) {
        *self = *self * o;
    }
}

impl DivAssign for Dd {
    #[inline]
    fn div_assign(&mut self, o: Dd) {
        *self = *self / o;
    }
}

impl Scalar for Dd {
    const DECIMAL_DIGITS: u32 = 32;

    fn zero() -> Self {
        DD_ZERO
    }

    fn one() -> Self {
        DD_ONE
    }

    fn from_f64(v: f64) -> Self {
        Dd::from(v)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn pi() -> Self {
        DD_PI
    }

    fn epsilon() -> Self {
        // 2^-104: half an ulp of the 106-bit significand.
        Dd::from(4.930_380_657_631_324e-32)
    }

    fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    fn sqrt(self) -> Self {
        self.sqrt_impl()
    }

    fn sin(self) -> Self {
        let (s, c, q) = self.reduced_sin_cos();
        match q {
            0 => s,
            1 => c,
            2 => -s,
            _ => -c,
        }
    }

    fn cos(self) -> Self {
        let (s, c, q) = self.reduced_sin_cos();
        match q {
            0 => c,
            1 => -s,
            2 => -c,
            _ => s,
        }
    }

    fn exp(self) -> Self {
        if self.hi == 0.0 && self.lo == 0.0 {
            return DD_ONE;
        }
        if self.hi > 709.0 {
            return Dd::from(f64::INFINITY);
        }
        if self.hi < -709.0 {
            return DD_ZERO;
        }
        // x = k ln2 + r, exp(r) by Taylor on r/512 then nine squarings of
        // the expm1 form, finally an exact scaling by 2^k.
        let k = (self.hi / DD_LN2.hi).round();
        let r = self - DD_LN2 * Dd::from(k);
        let s = r.mul_pwr2(1.0 / 512.0);
        let mut term = s;
        let mut p = s;
        let mut j = 1.0f64;
        loop {
            j += 1.0;
            term = term * s / Dd::from(j);
            p += term;
            if term.hi.abs() < 1e-40 || j > 20.0 {
                break;
            }
        }
        for _ in 0..9 {
            p = p * p + p.mul_pwr2(2.0);
        }
        (DD_ONE + p).mul_pwr2(2.0f64.powi(k as i32))
    }
}
