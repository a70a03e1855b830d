//! Polynomials generated by the three-term recurrence that makes them
//! orthogonal under the unweighted discrete inner product over the grid
//! abscissae, and the diagonal least-squares fit they induce.

use crate::error::{Error, Result};
use crate::grid::{Dataset, Grid};
use crate::legendre::{BasisKind, PolySeries};
use crate::quadrature::compensated_sum;
use crate::scalar::Scalar;

/// Monic basis p_0..p_m on a fixed grid:
/// p_{k+1}(x) = (x - alpha_{k+1}) p_k(x) - beta_k p_{k-1}(x),
/// p_0 = 1, p_{-1} = 0, with alpha_{k+1} = <x p_k, p_k>/<p_k, p_k> and
/// beta_k = <p_k, p_k>/<p_{k-1}, p_{k-1}> (beta_0 = 0).
#[derive(Clone, Debug)]
pub struct ForsytheBasis<S> {
    alphas: Vec<S>,
    betas: Vec<S>,
    norms: Vec<S>,
    grid: Grid<S>,
}

impl<S: Scalar> ForsytheBasis<S> {
    pub fn degree(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[S] {
        &self.alphas
    }

    pub fn betas(&self) -> &[S] {
        &self.betas
    }

    /// Squared discrete norms <p_k, p_k>, k = 0..m.
    pub fn norms(&self) -> &[S] {
        &self.norms
    }

    pub fn grid(&self) -> &Grid<S> {
        &self.grid
    }

    /// p_0(x) .. p_j(x) from the stored recurrence coefficients.
    pub fn values_at(&self, j: usize, x: S) -> Vec<S> {
        debug_assert!(j <= self.degree());
        let mut vals = Vec::with_capacity(j + 1);
        let mut prev = S::zero();
        let mut cur = S::one();
        vals.push(cur);
        for k in 0..j {
            let next = (x - self.alphas[k]) * cur - self.betas[k] * prev;
            prev = cur;
            cur = next;
            vals.push(cur);
        }
        vals
    }
}

/// Fit coefficients b_k = <y, p_k>/<p_k, p_k> against a built basis.
#[derive(Clone, Debug)]
pub struct ForsytheFit<S> {
    pub basis: ForsytheBasis<S>,
    pub coeffs: Vec<S>,
}

impl<S: Scalar> ForsytheFit<S> {
    pub fn eval(&self, x: S) -> S {
        let vals = self.basis.values_at(self.coeffs.len() - 1, x);
        compensated_sum(self.coeffs.iter().zip(&vals).map(|(&b, &p)| b * p))
    }

    /// Sum of squared residuals against a dataset on the same grid.
    pub fn residual_ss(&self, ds: &Dataset<S>) -> Result<S> {
        if ds.n() != self.basis.grid.n() {
            return Err(Error::ShapeMismatch {
                left: ds.n(),
                right: self.basis.grid.n(),
            });
        }
        let terms: Vec<S> = (0..ds.n())
            .map(|i| {
                let d = ds.y()[i] - self.eval(ds.grid().point(i));
                d * d
            })
            .collect();
        Ok(compensated_sum(terms))
    }
}

/// Run the recurrence over the grid, accumulating the shift and norm-ratio
/// coefficients. Sequential in k; each inner product is compensated.
pub fn build_forsythe_basis<S: Scalar>(grid: &Grid<S>, m: usize) -> Result<ForsytheBasis<S>> {
    let n = grid.n();
    if m + 1 > n {
        return Err(Error::RankDeficient { degree: m });
    }
    let xs = grid.points();
    let mut prev = vec![S::zero(); n];
    let mut cur = vec![S::one(); n];
    let mut norms = Vec::with_capacity(m + 1);
    let mut alphas = Vec::with_capacity(m);
    let mut betas = Vec::with_capacity(m);
    let mut nu = compensated_sum(cur.iter().map(|&p| p * p));
    norms.push(nu);
    for k in 0..m {
        if !(nu > S::zero()) {
            return Err(Error::DegenerateDenominator { degree: k });
        }
        let alpha = compensated_sum(xs.iter().zip(&cur).map(|(&x, &p)| x * p * p)) / nu;
        let beta = if k == 0 { S::zero() } else { nu / norms[k - 1] };
        let next: Vec<S> = (0..n)
            .map(|i| (xs[i] - alpha) * cur[i] - beta * prev[i])
            .collect();
        alphas.push(alpha);
        betas.push(beta);
        prev = cur;
        cur = next;
        nu = compensated_sum(cur.iter().map(|&p| p * p));
        norms.push(nu);
    }
    Ok(ForsytheBasis {
        alphas,
        betas,
        norms,
        grid: grid.clone(),
    })
}

/// Diagonal projection of the data onto the discretely-orthogonal basis.
pub fn forsythe_fit<S: Scalar>(ds: &Dataset<S>, m: usize) -> Result<ForsytheFit<S>> {
    if !ds.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let basis = build_forsythe_basis(ds.grid(), m)?;
    let n = ds.n();
    let mut prev = vec![S::zero(); n];
    let mut cur = vec![S::one(); n];
    let mut coeffs = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let dot = compensated_sum(ds.y().iter().zip(&cur).map(|(&y, &p)| y * p));
        coeffs.push(dot / basis.norms[k]);
        if k < m {
            let next: Vec<S> = (0..n)
                .map(|i| (ds.grid().point(i) - basis.alphas[k]) * cur[i] - basis.betas[k] * prev[i])
                .collect();
            prev = cur;
            cur = next;
        }
    }
    Ok(ForsytheFit { basis, coeffs })
}

/// Expand the fit into monomial coefficients on the grid's interval by
/// running the recurrence in coefficient space.
pub fn forsythe_to_monomial<S: Scalar>(fit: &ForsytheFit<S>) -> Result<PolySeries<S>> {
    let m = fit.coeffs.len() - 1;
    let width = m + 1;
    let mut acc = vec![S::zero(); width];
    let mut prev = vec![S::zero(); width];
    let mut cur = vec![S::zero(); width];
    cur[0] = S::one();
    for k in 0..=m {
        for i in 0..width {
            acc[i] += fit.coeffs[k] * cur[i];
        }
        if k == m {
            break;
        }
        // next = x*cur - alpha_k*cur - beta_k*prev, degree k+1 <= m
        let mut next = vec![S::zero(); width];
        next[1..width].copy_from_slice(&cur[..width - 1]);
        for i in 0..width {
            next[i] -= fit.basis.alphas[k] * cur[i] + fit.basis.betas[k] * prev[i];
        }
        prev = cur;
        cur = next;
    }
    Ok(PolySeries {
        basis: BasisKind::Monomial,
        coeffs: acc,
        domain: (fit.basis.grid.a(), fit.basis.grid.b()),
    })
}
