//! Affine maps between the fitting interval [-1, 1] and the source domain,
//! and the corresponding exact coefficient transformations used to report a
//! fitted polynomial on the original scale.

use crate::error::{Error, Result};
use crate::grid::NormalizationRecord;
use crate::legendre::{legendre_to_monomial, BasisKind, PolySeries};
use crate::scalar::Scalar;

/// `forward(v) = scale * v + offset`, with nonzero scale so the inverse
/// `(1/scale, -offset/scale)` always exists.
#[derive(Clone, Debug)]
pub struct AffineMap<S> {
    pub scale: S,
    pub offset: S,
}

impl<S: Scalar> AffineMap<S> {
    pub fn new(scale: S, offset: S) -> Result<Self> {
        if scale == S::zero() {
            return Err(Error::ZeroScale);
        }
        Ok(AffineMap { scale, offset })
    }

    pub fn identity() -> Self {
        AffineMap {
            scale: S::one(),
            offset: S::zero(),
        }
    }

    #[inline]
    pub fn apply(&self, v: S) -> S {
        self.scale * v + self.offset
    }

    pub fn inverse(&self) -> AffineMap<S> {
        AffineMap {
            scale: S::one() / self.scale,
            offset: -self.offset / self.scale,
        }
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &AffineMap<S>) -> AffineMap<S> {
        AffineMap {
            scale: self.scale * inner.scale,
            offset: self.scale * inner.offset + self.offset,
        }
    }
}

/// The affine bijection sending [a, b] onto [-1, 1]:
/// `t(x) = (2x - a - b)/(b - a)`.
pub fn t2_forward<S: Scalar>(a: S, b: S) -> Result<AffineMap<S>> {
    if !(b > a) {
        return Err(Error::InvalidDomain {
            a: a.to_f64(),
            b: b.to_f64(),
        });
    }
    let span = b - a;
    AffineMap::new(S::from_f64(2.0) / span, -(a + b) / span)
}

/// Monomial coefficients of `q(x) = p(scale*x + offset)`.
///
/// The coefficients of `p` are folded in from the highest degree down,
/// mirroring Horner's scheme, so intermediate growth stays bounded. The
/// result is valid on the preimage of `p`'s domain under the map.
pub fn substitute_affine<S: Scalar>(
    series: &PolySeries<S>,
    map: &AffineMap<S>,
) -> Result<PolySeries<S>> {
    if series.basis != BasisKind::Monomial {
        return Err(Error::InvalidBasis {
            basis: series.basis.name(),
            operation: "substitute_affine",
        });
    }
    let n = series.coeffs.len();
    let mut q = vec![S::zero(); n];
    for &c in series.coeffs.iter().rev() {
        // q <- q * (scale*x + offset) + c
        for i in (1..n).rev() {
            q[i] = q[i - 1] * map.scale + q[i] * map.offset;
        }
        q[0] = q[0] * map.offset + c;
    }
    let inv = map.inverse();
    let (d0, d1) = (inv.apply(series.domain.0), inv.apply(series.domain.1));
    let domain = if d0 <= d1 { (d0, d1) } else { (d1, d0) };
    Ok(PolySeries {
        basis: BasisKind::Monomial,
        coeffs: q,
        domain,
    })
}

/// Coefficients of `y_map^{-1}(p(x))`: every coefficient is divided by the
/// y scale and the offset correction lands on the constant term.
pub fn rescale_output<S: Scalar>(
    series: &PolySeries<S>,
    y_map: &AffineMap<S>,
) -> Result<PolySeries<S>> {
    if series.basis != BasisKind::Monomial {
        return Err(Error::InvalidBasis {
            basis: series.basis.name(),
            operation: "rescale_output",
        });
    }
    let mut coeffs: Vec<S> = series.coeffs.iter().map(|&c| c / y_map.scale).collect();
    coeffs[0] -= y_map.offset / y_map.scale;
    Ok(PolySeries {
        basis: BasisKind::Monomial,
        coeffs,
        domain: series.domain,
    })
}

/// Full back-transformation of a fitted series on [-1, 1] to a monomial
/// series on the source domain and scale: basis change to monomials, then
/// variable substitution with the recorded x map, then y rescaling.
pub fn back_transform<S: Scalar>(
    series: &PolySeries<S>,
    norm: &NormalizationRecord<S>,
) -> Result<PolySeries<S>> {
    let mono = match series.basis {
        BasisKind::Legendre | BasisKind::LegendreOrthonormal => legendre_to_monomial(series)?,
        BasisKind::Monomial => series.clone(),
        BasisKind::Forsythe => {
            return Err(Error::InvalidBasis {
                basis: series.basis.name(),
                operation: "back_transform",
            })
        }
    };
    let on_domain = substitute_affine(&mono, &norm.x_map)?;
    rescale_output(&on_domain, &norm.y_map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn mono(coeffs: Vec<f64>) -> PolySeries<f64> {
        PolySeries {
            basis: BasisKind::Monomial,
            coeffs,
            domain: (-1.0, 1.0),
        }
    }

    #[test]
    fn t2_symmetric_interval() {
        let m = t2_forward(-PI, PI).unwrap();
        assert!((m.scale - 1.0 / PI).abs() < 1e-16);
        assert_eq!(m.offset, 0.0);
        assert!((m.apply(-PI) + 1.0).abs() < 1e-15);
        assert!((m.apply(PI) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn t2_identity_and_midpoint() {
        let id = t2_forward(-1.0, 1.0).unwrap();
        assert_eq!(id.scale, 1.0);
        assert_eq!(id.offset, 0.0);
        let m = t2_forward(0.0, 2.0).unwrap();
        assert_eq!(m.apply(1.0), 0.0);
        assert!(matches!(
            t2_forward(1.0, 1.0),
            Err(Error::InvalidDomain { .. })
        ));
    }

    #[test]
    fn substitution_of_linear_series() {
        let p = mono(vec![0.0, 1.0]);
        let m = AffineMap::new(1.0 / PI, 0.0).unwrap();
        let q = substitute_affine(&p, &m).unwrap();
        assert_eq!(q.coeffs[0], 0.0);
        assert!((q.coeffs[1] - 1.0 / PI).abs() < 1e-16);
        // preimage of [-1,1] under x/pi is [-pi, pi]
        assert!((q.domain.0 + PI).abs() < 1e-15);
        assert!((q.domain.1 - PI).abs() < 1e-15);
    }

    #[test]
    fn substitution_expands_binomial() {
        // (x + 1)^2 = 1 + 2x + x^2
        let p = mono(vec![0.0, 0.0, 1.0]);
        let m = AffineMap::new(1.0, 1.0).unwrap();
        let q = substitute_affine(&p, &m).unwrap();
        assert_eq!(q.coeffs, vec![1.0, 2.0, 1.0]);
    }

    #[test]
    fn substitution_with_identity_is_exact_identity() {
        let p = mono(vec![3.25, -1.5, 0.125, 7.0]);
        let q = substitute_affine(&p, &AffineMap::identity()).unwrap();
        assert_eq!(q.coeffs, p.coeffs);
        assert_eq!(q.domain, p.domain);
    }

    #[test]
    fn rescale_examples() {
        let p = mono(vec![0.0, 1.0]);
        let q = rescale_output(&p, &AffineMap::identity()).unwrap();
        assert_eq!(q.coeffs, p.coeffs);

        let q = rescale_output(&p, &AffineMap::new(1.0 / 6.0, 0.0).unwrap()).unwrap();
        assert_eq!(q.coeffs, vec![0.0, 6.0]);

        let c = mono(vec![0.0]);
        let q = rescale_output(&c, &AffineMap::new(1.0, -5.0).unwrap()).unwrap();
        assert_eq!(q.coeffs, vec![5.0]);
    }

    #[test]
    fn composition_matches_sequential_substitution() {
        let p = mono(vec![
            1.0, -2.0, 0.5, 0.25, -1.0, 0.75, 2.0, -0.125, 0.0625, 1.5, -0.5,
        ]);
        let m1 = AffineMap::new(0.7, -0.3).unwrap();
        let m2 = AffineMap::new(-1.3, 0.9).unwrap();
        let seq = substitute_affine(&substitute_affine(&p, &m1).unwrap(), &m2).unwrap();
        let combined = substitute_affine(&p, &m1.compose(&m2)).unwrap();
        for (a, b) in seq.coeffs.iter().zip(&combined.coeffs) {
            let denom = a.abs().max(1.0);
            assert!(((a - b) / denom).abs() <= 1e-10, "{a} vs {b}");
        }
    }

    proptest! {
        #[test]
        fn substitution_composes(
            scale1 in 0.2f64..2.0,
            offset1 in -1.0f64..1.0,
            scale2 in 0.2f64..2.0,
            offset2 in -1.0f64..1.0,
            coeffs in proptest::collection::vec(-2.0f64..2.0, 1..8),
        ) {
            let p = mono(coeffs);
            let m1 = AffineMap::new(scale1, offset1).unwrap();
            let m2 = AffineMap::new(scale2, offset2).unwrap();
            let seq = substitute_affine(&substitute_affine(&p, &m1).unwrap(), &m2).unwrap();
            let combined = substitute_affine(&p, &m1.compose(&m2)).unwrap();
            for (a, b) in seq.coeffs.iter().zip(&combined.coeffs) {
                let denom = a.abs().max(1.0);
                prop_assert!(((a - b) / denom).abs() <= 1e-10);
            }
        }
    }
}
