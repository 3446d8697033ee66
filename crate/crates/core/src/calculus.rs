//! Gradients and log-Hessians of multi-affine polynomials at positive points,
//! and the symbolic matrix `M = ∇g∇gᵀ − g∇²g`.
//!
//! `∇² log g = −M / g²`, so `M(x)` is positive semidefinite exactly where
//! `log g` is concave.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{SymMatrix, SymMatrixF, SymMatrixS};
use crate::poly::{members, PositivePoint, Subset, SubsetPoly};
use crate::scalar::{to_f64, ExactScalar};
use crate::sparse::SparsePoly;

/// Float copy of the nonzero terms of a [`SubsetPoly`].
#[derive(Debug, Clone)]
pub(crate) struct FloatPoly {
    n: usize,
    terms: Vec<(Subset, f64)>,
}

/// Value, gradient and Hessian at one point. `hess` is row-major `n × n`.
pub(crate) struct Jet {
    pub value: f64,
    pub grad: Vec<f64>,
    pub hess: Vec<f64>,
}

impl FloatPoly {
    pub fn new(p: &SubsetPoly) -> Self {
        Self {
            n: p.n(),
            terms: p.terms().map(|(s, c)| (s, to_f64(c))).collect(),
        }
    }

    /// Coefficients divided by the largest magnitude before rounding, so
    /// every positive multiple of `p` yields bit-identical floats. Only
    /// scale-invariant quantities may be computed from this.
    pub fn normalized(p: &SubsetPoly) -> Self {
        let max = p
            .terms()
            .map(|(_, c)| c.abs())
            .max()
            .unwrap_or_else(ExactScalar::zero);
        if max.is_zero() {
            return Self::new(p);
        }
        Self {
            n: p.n(),
            terms: p.terms().map(|(s, c)| (s, to_f64(&(c / &max)))).collect(),
        }
    }

    pub fn jet(&self, x: &[f64]) -> Jet {
        let n = self.n;
        let mut value = 0.0;
        let mut grad = vec![0.0; n];
        let mut hess = vec![0.0; n * n];
        for &(s, c) in &self.terms {
            // x > 0, so dividing a monomial by x_i removes that factor
            let m = c * members(s).map(|i| x[i]).product::<f64>();
            value += m;
            for i in members(s) {
                let mi = m / x[i];
                grad[i] += mi;
                for j in members(s).filter(|&j| j > i) {
                    let mij = mi / x[j];
                    hess[i * n + j] += mij;
                    hess[j * n + i] += mij;
                }
            }
        }
        Jet { value, grad, hess }
    }

    /// `∇² log g` at `x`; the formula only involves ratios to `g`, so this is
    /// invariant under positive rescaling of the coefficients.
    pub fn log_hessian(&self, x: &[f64]) -> Result<SymMatrixF> {
        let Jet { value, grad, hess } = self.jet(x);
        if !(value > 0.0) {
            return Err(Error::NonPositiveValue(value));
        }
        let n = self.n;
        let r: Vec<f64> = grad.iter().map(|d| d / value).collect();
        Ok(SymMatrix::from_fn(n, |i, j| hess[i * n + j] / value - r[i] * r[j]))
    }
}

fn check_dim(p: &SubsetPoly, x: &PositivePoint) -> Result<()> {
    if p.n() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            got: x.dim(),
        });
    }
    Ok(())
}

pub fn gradient(p: &SubsetPoly, x: &PositivePoint) -> Result<Vec<f64>> {
    check_dim(p, x)?;
    Ok(FloatPoly::new(p).jet(x.coords()).grad)
}

/// Float Hessian of `g` itself. The diagonal is zero by multi-affinity.
pub fn hessian(p: &SubsetPoly, x: &PositivePoint) -> Result<SymMatrixF> {
    check_dim(p, x)?;
    let n = p.n();
    let h = FloatPoly::new(p).jet(x.coords()).hess;
    Ok(SymMatrix::from_fn(n, |i, j| h[i * n + j]))
}

/// `(g∇²g − ∇g∇gᵀ) / g²` at `x`. Fails if `g(x) <= 0`.
pub fn log_hessian(p: &SubsetPoly, x: &PositivePoint) -> Result<SymMatrixF> {
    check_dim(p, x)?;
    FloatPoly::normalized(p).log_hessian(x.coords())
}

/// Exact symbolic `M_ij = ∂_i g · ∂_j g − g · ∂_i∂_j g`.
pub fn symbolic_m(p: &SubsetPoly) -> SymMatrixS {
    let n = p.n();
    let g = SparsePoly::from_subset(p);
    let first: Vec<SparsePoly> = (0..n)
        .map(|i| SparsePoly::from_subset(&p.derivative(i).expect("index in range")))
        .collect();
    SymMatrix::from_fn(n, |i, j| {
        let outer = &first[i] * &first[j];
        if i == j {
            outer
        } else {
            let mixed = p
                .derivative_subset(1 << i | 1 << j)
                .expect("indices in range");
            &outer - &(&g * &SparsePoly::from_subset(&mixed))
        }
    })
}
