//! Coefficient estimators on normalized data, sum-of-squares and
//! conditioning reports, and the end-to-end fit pipeline that returns
//! original-domain monomial coefficients.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::grid::Dataset;
use crate::legendre::{
    design_matrix, legendre_values, normalization_factor, BasisKind, PolySeries,
};
use crate::linalg::{solve_least_squares, symmetric_eigenvalues, Matrix};
use crate::quadrature::{compensated_sum, weighted_inner, InnerProductRule};
use crate::scalar::Scalar;
use crate::transform::back_transform;
use std::fmt;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodTag {
    RectangleSimple,
    RectangleOrthonormal,
    TrapezoidSimple,
    TrapezoidOrthonormal,
    OlsOrthonormal,
}

impl MethodTag {
    pub const ALL: [MethodTag; 5] = [
        MethodTag::RectangleSimple,
        MethodTag::RectangleOrthonormal,
        MethodTag::TrapezoidSimple,
        MethodTag::TrapezoidOrthonormal,
        MethodTag::OlsOrthonormal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MethodTag::RectangleSimple => "rectangle-simple",
            MethodTag::RectangleOrthonormal => "rectangle-orthonormal",
            MethodTag::TrapezoidSimple => "trapezoid-simple",
            MethodTag::TrapezoidOrthonormal => "trapezoid-orthonormal",
            MethodTag::OlsOrthonormal => "ols-orthonormal",
        }
    }

    pub fn from_name(name: &str) -> Option<MethodTag> {
        MethodTag::ALL.iter().copied().find(|m| m.name() == name)
    }
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Normalized,
    Original,
}

impl Scale {
    pub fn name(self) -> &'static str {
        match self {
            Scale::Normalized => "normalized",
            Scale::Original => "original",
        }
    }
}

/// Sums of squares of the data, the fitted values, and the residuals, all
/// on one evaluation scale.
#[derive(Clone, Copy, Debug)]
pub struct SSReport {
    pub data_ss: f64,
    pub fitted_ss: f64,
    pub residual_ss: f64,
    pub scale: Scale,
}

/// Spectral condition estimates of the normal matrices at the same degree:
/// orthonormal-Legendre Gram matrix vs. the monomial one (which approaches
/// the Hilbert matrix on equidistant data).
#[derive(Clone, Copy, Debug)]
pub struct ConditionReport {
    pub gram_condition_orthonormal: f64,
    pub gram_condition_monomial: f64,
}

/// Everything one fit produces. Coefficient series are reported in f64
/// regardless of the working precision that computed them.
#[derive(Clone, Debug)]
pub struct FitReport {
    pub method: MethodTag,
    pub degree: usize,
    pub series_normalized: PolySeries<f64>,
    pub series_original: PolySeries<f64>,
    pub ss_normalized: SSReport,
    pub ss_original: SSReport,
    pub condition: ConditionReport,
    pub elapsed: Duration,
    pub precision_digits: u32,
}

fn guard_fit<S: Scalar>(ds: &Dataset<S>, m: usize) -> Result<()> {
    if !ds.is_normalized() {
        return Err(Error::NotNormalized);
    }
    if m + 1 > ds.n() {
        return Err(Error::RankDeficient { degree: m });
    }
    Ok(())
}

/// Legendre (or orthonormal-Legendre) values per degree, one vector per k.
fn basis_columns<S: Scalar>(ds: &Dataset<S>, m: usize, normalized_basis: bool) -> Vec<Vec<S>> {
    let n = ds.n();
    let mut cols: Vec<Vec<S>> = (0..=m).map(|_| Vec::with_capacity(n)).collect();
    for i in 0..n {
        let vals = legendre_values(m, ds.grid().point(i));
        for (k, col) in cols.iter_mut().enumerate() {
            let v = if normalized_basis {
                normalization_factor::<S>(k) * vals[k]
            } else {
                vals[k]
            };
            col.push(v);
        }
    }
    cols
}

/// Shared core of the four projection estimators. Simple variants take the
/// ratio of data-basis to basis-basis inner products (the spacing cancels);
/// orthonormal variants take the spacing-weighted inner product directly as
/// a quadrature of the continuous Fourier coefficient.
fn projection_fit<S: Scalar>(
    ds: &Dataset<S>,
    m: usize,
    rule: InnerProductRule,
    normalized_basis: bool,
) -> Result<PolySeries<S>> {
    guard_fit(ds, m)?;
    let h = ds.grid().h();
    let y = ds.y();
    let cols = basis_columns(ds, m, normalized_basis);
    let mut coeffs = Vec::with_capacity(m + 1);
    for (k, col) in cols.iter().enumerate() {
        let num = weighted_inner(y, col, h, rule)?;
        let c = if normalized_basis {
            num
        } else {
            let den = weighted_inner(col, col, h, rule)?;
            if den == S::zero() {
                return Err(Error::DegenerateDenominator { degree: k });
            }
            num / den
        };
        coeffs.push(c);
    }
    Ok(PolySeries {
        basis: if normalized_basis {
            BasisKind::LegendreOrthonormal
        } else {
            BasisKind::Legendre
        },
        coeffs,
        domain: (-S::one(), S::one()),
    })
}

pub fn fit_rectangle_simple<S: Scalar>(ds: &Dataset<S>, m: usize) -> Result<PolySeries<S>> {
    projection_fit(ds, m, InnerProductRule::Rectangle, false)
}

pub fn fit_rectangle_orthonormal<S: Scalar>(ds: &Dataset<S>, m: usize) -> Result<PolySeries<S>> {
    projection_fit(ds, m, InnerProductRule::Rectangle, true)
}

pub fn fit_trapezoid_simple<S: Scalar>(ds: &Dataset<S>, m: usize) -> Result<PolySeries<S>> {
    projection_fit(ds, m, InnerProductRule::Trapezoid, false)
}

pub fn fit_trapezoid_orthonormal<S: Scalar>(ds: &Dataset<S>, m: usize) -> Result<PolySeries<S>> {
    projection_fit(ds, m, InnerProductRule::Trapezoid, true)
}

/// Least-squares solution minimizing ||y - Phi b|| by QR factorization of
/// the design matrix; the normal matrix is never formed.
pub fn fit_ols<S: Scalar>(ds: &Dataset<S>, m: usize, basis: BasisKind) -> Result<PolySeries<S>> {
    guard_fit(ds, m)?;
    let phi = design_matrix(ds.grid(), m, basis)?;
    let coeffs = solve_least_squares(&phi, ds.y())?;
    Ok(PolySeries {
        basis,
        coeffs,
        domain: (-S::one(), S::one()),
    })
}

pub fn fit_method<S: Scalar>(
    ds: &Dataset<S>,
    m: usize,
    method: MethodTag,
) -> Result<PolySeries<S>> {
    match method {
        MethodTag::RectangleSimple => fit_rectangle_simple(ds, m),
        MethodTag::RectangleOrthonormal => fit_rectangle_orthonormal(ds, m),
        MethodTag::TrapezoidSimple => fit_trapezoid_simple(ds, m),
        MethodTag::TrapezoidOrthonormal => fit_trapezoid_orthonormal(ds, m),
        MethodTag::OlsOrthonormal => fit_ols(ds, m, BasisKind::LegendreOrthonormal),
    }
}

/// Sums of squares of data, fit, and residuals over the dataset's grid.
/// The scale tag must match the dataset: normalized series go with the
/// normalized dataset, back-transformed series with the raw one.
pub fn sum_of_squares<S: Scalar>(
    ds: &Dataset<S>,
    series: &PolySeries<S>,
    scale: Scale,
) -> Result<SSReport> {
    match scale {
        Scale::Normalized if !ds.is_normalized() => return Err(Error::NotNormalized),
        Scale::Original if ds.is_normalized() => return Err(Error::AlreadyNormalized),
        _ => {}
    }
    let n = ds.n();
    let mut data = Vec::with_capacity(n);
    let mut fitted = Vec::with_capacity(n);
    let mut resid = Vec::with_capacity(n);
    for i in 0..n {
        let y = ds.y()[i];
        let yh = series.eval(ds.grid().point(i))?;
        data.push(y * y);
        fitted.push(yh * yh);
        let d = y - yh;
        resid.push(d * d);
    }
    Ok(SSReport {
        data_ss: compensated_sum(data).to_f64(),
        fitted_ss: compensated_sum(fitted).to_f64(),
        residual_ss: compensated_sum(resid).to_f64(),
        scale,
    })
}

fn gram_condition<S: Scalar>(phi: &Matrix<S>) -> f64 {
    let eig = symmetric_eigenvalues(&phi.gram());
    let lam_max = eig[0];
    // the smallest eigenvalue below noise level reads as eps * lam_max
    let floor = lam_max * S::epsilon();
    let lam_min = eig[eig.len() - 1].maximum(floor);
    (lam_max / lam_min).to_f64().max(1.0)
}

/// Condition numbers of Phi'Phi for the orthonormal-Legendre and monomial
/// bases at the same degree, via eigenvalues of the explicitly formed Gram
/// matrices (diagnostic only; no solve uses these).
pub fn condition_diagnostics<S: Scalar>(ds: &Dataset<S>, m: usize) -> Result<ConditionReport> {
    guard_fit(ds, m)?;
    let ortho = design_matrix(ds.grid(), m, BasisKind::LegendreOrthonormal)?;
    let mono = design_matrix(ds.grid(), m, BasisKind::Monomial)?;
    Ok(ConditionReport {
        gram_condition_orthonormal: gram_condition(&ortho),
        gram_condition_monomial: gram_condition(&mono),
    })
}

/// normalize -> fit -> back-transform -> sums of squares on both scales ->
/// condition diagnostics. Deterministic given inputs; only the fit call
/// itself is timed.
pub fn fit_pipeline<S: Scalar>(ds: &Dataset<S>, m: usize, method: MethodTag) -> Result<FitReport> {
    let normalized = ds.normalize()?;
    let start = Instant::now();
    let series_norm = fit_method(&normalized, m, method)?;
    let elapsed = start.elapsed();
    let record = normalized.norm().expect("normalize records its maps");
    let series_orig = back_transform(&series_norm, record)?;
    let ss_normalized = sum_of_squares(&normalized, &series_norm, Scale::Normalized)?;
    let ss_original = sum_of_squares(ds, &series_orig, Scale::Original)?;
    let condition = condition_diagnostics(&normalized, m)?;
    Ok(FitReport {
        method,
        degree: m,
        series_normalized: series_norm.convert::<f64>(),
        series_original: series_orig.convert::<f64>(),
        ss_normalized,
        ss_original,
        condition,
        elapsed,
        precision_digits: S::DECIMAL_DIGITS,
    })
}

/// Run the pipeline at the requested decimal precision: 16 selects plain
/// doubles, 32 the double-double scalar.
pub fn fit_pipeline_at(
    ds: &Dataset<f64>,
    m: usize,
    method: MethodTag,
    precision_digits: u32,
) -> Result<FitReport> {
    match precision_digits {
        16 => fit_pipeline::<f64>(ds, m, method),
        32 => fit_pipeline::<Dd>(&ds.convert::<Dd>()?, m, method),
        got => Err(Error::InvalidPrecision { got }),
    }
}
