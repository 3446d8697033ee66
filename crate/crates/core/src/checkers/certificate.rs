//! Symbolic diagonal-dominance certificate for log-concavity.
//!
//! With `M = ∇g∇gᵀ − g∇²g`, each row gap `D_i = M_ii − Σ_{j≠i} |M_ij|⁺` (where
//! `|q|⁺` takes coefficient-wise absolute values) is a polynomial. If every
//! gap has nonnegative coefficients and at least one positive coefficient, it
//! is strictly positive on the open orthant, and `|M_ij(x)| ≤ |M_ij|⁺(x)`
//! there. So `M(x)` is strictly diagonally dominant with positive diagonal,
//! hence positive definite, and `∇² log g = −M/g²` is negative definite.

use crate::calculus::symbolic_m;
use crate::linalg::SymMatrixS;
use crate::poly::SubsetPoly;
use crate::sparse::SparsePoly;

#[derive(Debug, Clone, PartialEq)]
pub struct DominanceCertificate {
    pub m: SymMatrixS,
    /// One gap polynomial per row.
    pub gaps: Vec<SparsePoly>,
}

impl DominanceCertificate {
    /// Rebuilds the gaps from `m` and rechecks their sign pattern.
    pub fn is_valid(&self) -> bool {
        let n = self.m.n();
        self.gaps.len() == n
            && (0..n).all(|i| {
                let diag = self.m.get(i, i);
                diag.all_coeffs_nonnegative()
                    && row_gap(&self.m, i) == self.gaps[i]
                    && self.gaps[i].all_coeffs_nonnegative()
                    && self.gaps[i].has_positive_coeff()
            })
    }
}

fn row_gap(m: &SymMatrixS, i: usize) -> SparsePoly {
    (0..m.n())
        .filter(|&j| j != i)
        .fold(m.get(i, i).clone(), |acc, j| &acc - &m.get(i, j).abs_bound())
}

/// Returns a certificate when the dominance argument goes through. `None`
/// is not a disproof; it only means this sufficient condition fails. Zero
/// polynomials and inputs with negative coefficients get `None`.
pub fn certify_log_concavity_dominance(p: &SubsetPoly) -> Option<DominanceCertificate> {
    if p.is_zero() || !p.is_nonnegative() {
        return None;
    }
    let m = symbolic_m(p);
    let mut gaps = Vec::with_capacity(p.n());
    for i in 0..p.n() {
        if !m.get(i, i).all_coeffs_nonnegative() {
            return None;
        }
        let gap = row_gap(&m, i);
        if !(gap.all_coeffs_nonnegative() && gap.has_positive_coeff()) {
            return None;
        }
        gaps.push(gap);
    }
    Some(DominanceCertificate { m, gaps })
}
