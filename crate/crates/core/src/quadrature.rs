//! Discrete inner products on equidistant grids with rectangle and
//! trapezoid weightings, plus an error probe for the trapezoid rule applied
//! to products of orthonormal Legendre polynomials.

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::legendre::{legendre_values, normalization_factor};
use crate::scalar::Scalar;

pub const MAX_DEGREE: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerProductRule {
    Rectangle,
    Trapezoid,
}

/// Neumaier-compensated sum: the running compensation also captures the
/// case where the incoming term dominates the accumulator.
pub fn compensated_sum<S: Scalar, I: IntoIterator<Item = S>>(terms: I) -> S {
    let mut sum = S::zero();
    let mut comp = S::zero();
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

/// Rectangle: h * sum of f_i g_i over all n points.
/// Trapezoid: the same sum with the two endpoint products at half weight.
pub fn weighted_inner<S: Scalar>(f: &[S], g: &[S], h: S, rule: InnerProductRule) -> Result<S> {
    if f.len() != g.len() {
        return Err(Error::ShapeMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    let n = f.len();
    if n < 2 {
        return Err(Error::InvalidCount { need: 2, got: n });
    }
    if !(h > S::zero()) || !h.to_f64().is_finite() {
        return Err(Error::InvalidSpacing { h: h.to_f64() });
    }
    let total = compensated_sum(f.iter().zip(g).map(|(&a, &b)| a * b));
    match rule {
        InnerProductRule::Rectangle => Ok(h * total),
        InnerProductRule::Trapezoid => {
            let ends = f[0] * g[0] + f[n - 1] * g[n - 1];
            Ok(h * (total - ends / S::from_f64(2.0)))
        }
    }
}

/// |trapezoid inner product of normalized Legendre k and l on an n-point
/// grid over [-1,1], minus the Kronecker delta|. Pure quadrature error:
/// the integrand is smooth, so this decays like h^2.
pub fn quadrature_error_probe(k: usize, l: usize, n: usize) -> Result<f64> {
    if k > MAX_DEGREE {
        return Err(Error::InvalidDegree {
            got: k,
            max: MAX_DEGREE,
        });
    }
    if l > MAX_DEGREE {
        return Err(Error::InvalidDegree {
            got: l,
            max: MAX_DEGREE,
        });
    }
    let need = k.max(l) + 2;
    if n < need {
        return Err(Error::InvalidCount { need, got: n });
    }
    let grid = Grid::new(-1.0f64, 1.0, n)?;
    let m = k.max(l);
    let (mut fk, mut fl) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for i in 0..n {
        let vals = legendre_values(m, grid.point(i));
        fk.push(normalization_factor::<f64>(k) * vals[k]);
        fl.push(normalization_factor::<f64>(l) * vals[l]);
    }
    let inner = weighted_inner(&fk, &fl, grid.h(), InnerProductRule::Trapezoid)?;
    let delta = if k == l { 1.0 } else { 0.0 };
    Ok((inner - delta).abs())
}
