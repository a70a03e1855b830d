//! Pluggable working precision. Every numeric kernel in this crate is
//! generic over [`Scalar`], so the same code runs in ordinary double
//! precision (`f64`, ~16 decimal digits) and in double-double precision
//! ([`crate::Dd`], ~32 decimal digits).

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// A real scalar type with the arithmetic and elementary functions the
/// fitting kernels need.
///
/// Implementations must be value types with deterministic arithmetic; the
/// fitting pipeline relies on run-to-run reproducibility.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    /// Approximate number of significant decimal digits carried.
    const DECIMAL_DIGITS: u32;

    fn zero() -> Self;
    fn one() -> Self;

    /// Exact injection of an `f64` value.
    fn from_f64(v: f64) -> Self;

    /// Nearest `f64` to the stored value.
    fn to_f64(self) -> f64;

    fn pi() -> Self;

    /// Unit roundoff: the relative spacing of representable values near 1.
    fn epsilon() -> Self;

    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;

    /// Exact for `v < 2^53`, which covers every index used here.
    fn from_usize(v: usize) -> Self {
        debug_assert!(v < (1usize << 53));
        Self::from_f64(v as f64)
    }

    /// Exact conversion of a (possibly large) integer by 53-bit chunks.
    fn from_i128(v: i128) -> Self {
        const CHUNK: i128 = 1 << 53;
        if v.abs() < CHUNK {
            return Self::from_f64(v as f64);
        }
        let q = v / CHUNK;
        let r = v - q * CHUNK;
        Self::from_i128(q) * Self::from_f64(CHUNK as f64) + Self::from_f64(r as f64)
    }

    fn maximum(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn minimum(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    const DECIMAL_DIGITS: u32 = 16;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn pi() -> Self {
        std::f64::consts::PI
    }

    fn epsilon() -> Self {
        f64::EPSILON
    }

    fn abs(self) -> Self {
        f64::abs(self)
    }

    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }

    fn sin(self) -> Self {
        f64::sin(self)
    }

    fn cos(self) -> Self {
        f64::cos(self)
    }

    fn exp(self) -> Self {
        f64::exp(self)
    }
}
