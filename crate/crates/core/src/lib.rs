//! Polynomial least-squares fitting of equidistant samples through Legendre
//! quadrature estimators.
//!
//! Degree-m fits are computed five ways: rectangle- and trapezoid-rule
//! inner-product ratios against plain Legendre polynomials, the same two
//! rules against the orthonormal scaling, and ordinary least squares by
//! Householder QR. A discretely-orthogonal polynomial basis built by the
//! Stieltjes three-term recurrence serves as the exact-arithmetic-free
//! baseline. Everything runs generically over a scalar trait with `f64`
//! and a double-double type (about 32 significant digits) as instances.
//!
//! The usual flow: load or sample a [`Dataset`], call [`fit_pipeline`] (or
//! [`fit_pipeline_at`] to select precision at runtime), and read back
//! coefficients on both the normalized and the original domain plus
//! sum-of-squares and Gram-condition diagnostics from the [`FitReport`].

// `!(a > b)` guards deliberately send NaN down the error path; the
// suggested `partial_cmp` rewrite hides that.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dd;
pub mod error;
pub mod estimators;
pub mod experiment;
pub mod forsythe;
pub mod grid;
pub mod legendre;
pub mod linalg;
pub mod quadrature;
pub mod report;
pub mod scalar;
pub mod transform;

pub use dd::Dd;
pub use error::{Error, Result};
pub use estimators::{
    condition_diagnostics, fit_method, fit_ols, fit_pipeline, fit_pipeline_at,
    fit_rectangle_orthonormal, fit_rectangle_simple, fit_trapezoid_orthonormal,
    fit_trapezoid_simple, sum_of_squares, ConditionReport, FitReport, MethodTag, SSReport, Scale,
};
pub use experiment::{
    compare_report, default_table_precision, figure_data, is_reference_sample,
    reference_fit_reports, reproduce_table, sample_test_function, taylor_reference, test_function,
    CompareReport, FigureData, TableArtifact, TaylorReference, COMPARED_METHODS, REFERENCE_DEGREE,
    REFERENCE_N,
};
pub use forsythe::{
    build_forsythe_basis, forsythe_fit, forsythe_to_monomial, ForsytheBasis, ForsytheFit,
};
pub use grid::{Dataset, Grid, NormalizationRecord};
pub use legendre::{
    design_matrix, legendre_eval, legendre_to_monomial, legendre_values, normalized_legendre_eval,
    BasisKind, PolySeries,
};
pub use linalg::{solve_least_squares, symmetric_eigenvalues, Matrix};
pub use quadrature::{
    compensated_sum, quadrature_error_probe, weighted_inner, InnerProductRule, MAX_DEGREE,
};
pub use report::{render_compare, render_figure, render_fit_report, render_table, OutputFormat};
pub use scalar::Scalar;
pub use transform::{back_transform, rescale_output, substitute_affine, t2_forward, AffineMap};
