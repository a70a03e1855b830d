//! Legendre polynomials, their orthonormal rescaling, design matrices, and
//! exact conversion of Legendre coefficient vectors to the monomial basis.

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use std::fmt;

/// Coefficient basis a polynomial series is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Monomial,
    Legendre,
    LegendreOrthonormal,
    Forsythe,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Monomial => "monomial",
            BasisKind::Legendre => "legendre",
            BasisKind::LegendreOrthonormal => "legendre-orthonormal",
            BasisKind::Forsythe => "forsythe",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Polynomial in a tagged basis with its interval of validity.
///
/// Monomial series evaluate anywhere; Legendre-based series are restricted
/// to their stated domain, where the recurrence is numerically trustworthy.
#[derive(Clone, Debug)]
pub struct PolySeries<S> {
    pub basis: BasisKind,
    pub coeffs: Vec<S>,
    pub domain: (S, S),
}

impl<S: Scalar> PolySeries<S> {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: S) -> Result<S> {
        match self.basis {
            BasisKind::Monomial => Ok(horner(&self.coeffs, x)),
            BasisKind::Legendre => {
                self.check_domain(x)?;
                Ok(legendre_series_sum(&self.coeffs, x, false))
            }
            BasisKind::LegendreOrthonormal => {
                self.check_domain(x)?;
                Ok(legendre_series_sum(&self.coeffs, x, true))
            }
            BasisKind::Forsythe => Err(Error::InvalidBasis {
                basis: self.basis.name(),
                operation: "eval",
            }),
        }
    }

    /// Same series in another working precision (routed through f64, the
    /// interchange format for reports and serialization).
    pub fn convert<T: Scalar>(&self) -> PolySeries<T> {
        PolySeries {
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| T::from_f64(c.to_f64()))
                .collect(),
            domain: (
                T::from_f64(self.domain.0.to_f64()),
                T::from_f64(self.domain.1.to_f64()),
            ),
        }
    }

    fn check_domain(&self, x: S) -> Result<()> {
        let (lo, hi) = self.domain;
        // slack absorbs roundoff from affine maps of the endpoints
        let slack = (hi - lo) * S::from_f64(1e-12);
        if x < lo - slack || x > hi + slack {
            return Err(Error::OutsideDomain {
                x: x.to_f64(),
                lo: lo.to_f64(),
                hi: hi.to_f64(),
            });
        }
        Ok(())
    }
}

/// Horner evaluation of a monomial coefficient vector (constant term first).
pub fn horner<S: Scalar>(coeffs: &[S], x: S) -> S {
    let mut acc = S::zero();
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// P_k(x) by the three-term recurrence
/// (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}, P_0 = 1, P_1 = x.
pub fn legendre_eval<S: Scalar>(k: usize, x: S) -> S {
    let mut prev = S::one();
    if k == 0 {
        return prev;
    }
    let mut cur = x;
    for j in 1..k {
        let next =
            (S::from_usize(2 * j + 1) * x * cur - S::from_usize(j) * prev) / S::from_usize(j + 1);
        prev = cur;
        cur = next;
    }
    cur
}

/// sqrt(k + 1/2), the factor making the Legendre family orthonormal on
/// [-1, 1] with respect to the continuous L2 inner product.
pub fn normalization_factor<S: Scalar>(k: usize) -> S {
    (S::from_usize(2 * k + 1) / S::from_f64(2.0)).sqrt()
}

/// sqrt(k + 1/2) * P_k(x).
pub fn normalized_legendre_eval<S: Scalar>(k: usize, x: S) -> S {
    normalization_factor::<S>(k) * legendre_eval(k, x)
}

/// P_0(x) .. P_m(x) in one pass of the recurrence.
pub fn legendre_values<S: Scalar>(m: usize, x: S) -> Vec<S> {
    let mut vals = Vec::with_capacity(m + 1);
    vals.push(S::one());
    if m == 0 {
        return vals;
    }
    vals.push(x);
    for j in 1..m {
        let next = (S::from_usize(2 * j + 1) * x * vals[j] - S::from_usize(j) * vals[j - 1])
            / S::from_usize(j + 1);
        vals.push(next);
    }
    vals
}

fn legendre_series_sum<S: Scalar>(coeffs: &[S], x: S, normalized: bool) -> S {
    let vals = legendre_values(coeffs.len() - 1, x);
    let mut acc = S::zero();
    for (k, (&c, &p)) in coeffs.iter().zip(&vals).enumerate() {
        let term = if normalized {
            c * normalization_factor::<S>(k) * p
        } else {
            c * p
        };
        acc += term;
    }
    acc
}

/// n x (m+1) matrix whose column j holds basis function j at the grid points.
pub fn design_matrix<S: Scalar>(grid: &Grid<S>, m: usize, basis: BasisKind) -> Result<Matrix<S>> {
    if basis == BasisKind::Forsythe {
        return Err(Error::InvalidBasis {
            basis: basis.name(),
            operation: "design_matrix",
        });
    }
    let n = grid.n();
    let mut mat = Matrix::zeros(n, m + 1);
    match basis {
        BasisKind::Monomial => {
            for i in 0..n {
                let x = grid.point(i);
                let mut p = S::one();
                for j in 0..=m {
                    mat[(i, j)] = p;
                    p *= x;
                }
            }
        }
        BasisKind::Legendre | BasisKind::LegendreOrthonormal => {
            let lo = S::from_f64(-1.0) - S::from_f64(1e-12);
            let hi = S::one() + S::from_f64(1e-12);
            for i in 0..n {
                let x = grid.point(i);
                if x < lo || x > hi {
                    return Err(Error::OutsideDomain {
                        x: x.to_f64(),
                        lo: -1.0,
                        hi: 1.0,
                    });
                }
                let vals = legendre_values(m, x);
                for j in 0..=m {
                    mat[(i, j)] = if basis == BasisKind::LegendreOrthonormal {
                        normalization_factor::<S>(j) * vals[j]
                    } else {
                        vals[j]
                    };
                }
            }
        }
        BasisKind::Forsythe => unreachable!(),
    }
    Ok(mat)
}

fn binom_u128(n: u64, r: u64) -> u128 {
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 1..=r {
        acc = acc * (n - r + i) as u128 / i as u128;
    }
    acc
}

/// Monomial coefficients of P_k. The numerators
/// (-1)^j binom(k,j) binom(2k-2j,k) are exact integers (< 2^63 for k <= 30)
/// over the common denominator 2^k, so each entry is one exact integer
/// conversion and one division.
fn legendre_monomial_coeffs<S: Scalar>(k: usize) -> Vec<S> {
    let mut out = vec![S::zero(); k + 1];
    let denom = S::from_i128(1i128 << k);
    for j in 0..=k / 2 {
        let num = binom_u128(k as u64, j as u64) * binom_u128((2 * k - 2 * j) as u64, k as u64);
        let mut val = S::from_i128(num as i128);
        if j % 2 == 1 {
            val = -val;
        }
        out[k - 2 * j] = val / denom;
    }
    out
}

/// Re-express a Legendre or orthonormal-Legendre series in the monomial
/// basis on the same domain. Orthonormal coefficients are first rescaled by
/// sqrt(k + 1/2).
pub fn legendre_to_monomial<S: Scalar>(series: &PolySeries<S>) -> Result<PolySeries<S>> {
    let normalized = match series.basis {
        BasisKind::Legendre => false,
        BasisKind::LegendreOrthonormal => true,
        other => {
            return Err(Error::InvalidBasis {
                basis: other.name(),
                operation: "legendre_to_monomial",
            })
        }
    };
    let m = series.degree();
    let mut out = vec![S::zero(); m + 1];
    for (k, &c) in series.coeffs.iter().enumerate() {
        let w = if normalized {
            c * normalization_factor::<S>(k)
        } else {
            c
        };
        for (i, &p) in legendre_monomial_coeffs::<S>(k).iter().enumerate() {
            out[i] += w * p;
        }
    }
    Ok(PolySeries {
        basis: BasisKind::Monomial,
        coeffs: out,
        domain: series.domain,
    })
}
