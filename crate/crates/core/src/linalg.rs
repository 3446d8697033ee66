//! Small dense symmetric matrices: float eigenvalues by cyclic Jacobi, exact
//! positive-definiteness by leading principal minors, and strict diagonal
//! dominance.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{to_f64, ExactScalar};
use crate::sparse::SparsePoly;

/// Dense symmetric `n × n` matrix, stored in full row-major form.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    data: Vec<T>,
}

pub type SymMatrixF = SymMatrix<f64>;
pub type SymMatrixQ = SymMatrix<ExactScalar>;
pub type SymMatrixS = SymMatrix<SparsePoly>;

impl<T: Clone> SymMatrix<T> {
    /// Calls `f(i, j)` for `i <= j` and mirrors, so the result is symmetric by
    /// construction.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data: Vec<Option<T>> = vec![None; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                data[j * n + i] = Some(v.clone());
                data[i * n + j] = Some(v);
            }
        }
        Self {
            n,
            data: data.into_iter().map(Option::unwrap).collect(),
        }
    }

    fn from_rows_with(rows: Vec<Vec<T>>, same: impl Fn(&T, &T) -> bool) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                if !same(&rows[i][j], &rows[j][i]) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Clone>(&self, mut f: impl FnMut(&T) -> U) -> SymMatrix<U> {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(&mut f).collect(),
        }
    }
}

impl SymMatrixF {
    /// Accepts rows that are symmetric to within `1e-12` absolute; the
    /// stored matrix is exactly symmetrised from the upper triangle.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite matrix entry".into()));
        }
        let m = Self::from_rows_with(rows, |a, b| (a - b).abs() <= 1e-12)?;
        Ok(Self::from_fn(m.n, |i, j| *m.get(i, j)))
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, k: f64) -> Self {
        self.map(|v| v * k)
    }
}

impl SymMatrixQ {
    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        Self::from_rows_with(rows, |a, b| a == b)
    }

    pub fn to_f64(&self) -> SymMatrixF {
        self.map(to_f64)
    }
}

impl SymMatrixS {
    pub fn eval(&self, x: &[f64]) -> Result<SymMatrixF> {
        let mut out = Vec::with_capacity(self.data.len());
        for p in &self.data {
            out.push(p.eval(x)?);
        }
        Ok(SymMatrix { n: self.n, data: out })
    }

    pub fn eval_exact(&self, x: &[ExactScalar]) -> Result<SymMatrixQ> {
        let mut out = Vec::with_capacity(self.data.len());
        for p in &self.data {
            out.push(p.eval_exact(x)?);
        }
        Ok(SymMatrix { n: self.n, data: out })
    }
}

/// Eigenvalues in ascending order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
}

impl EigenResult {
    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

const MAX_SWEEPS: usize = 64;

/// All eigenvalues of a symmetric matrix by the cyclic Jacobi method.
pub fn eigen_sym(m: &SymMatrixF) -> EigenResult {
    let n = m.n;
    let mut a = m.data.clone();
    let scale = m.max_norm();
    if scale > 0.0 {
        for _ in 0..MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[i * n + j] * a[i * n + j])
                .sum();
            if off.sqrt() <= f64::EPSILON * 1e-3 * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, n, p, q);
                }
            }
        }
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigenvalues.sort_by(f64::total_cmp);
    EigenResult { eigenvalues }
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let (app, aqq) = (a[p * n + p], a[q * n + q]);
    let g = 100.0 * apq.abs();
    if app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        return;
    }
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    for k in 0..n {
        let (akp, akq) = (a[k * n + p], a[k * n + q]);
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[p * n + k], a[q * n + k]);
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
}

/// Largest eigenvalue allowed for a matrix still declared negative
/// semidefinite: `rel * (1 + max|m_ij|)`.
pub fn nsd_threshold(m: &SymMatrixF, rel: f64) -> f64 {
    rel * (1.0 + m.max_norm())
}

/// Exact determinant by fraction Gaussian elimination with row pivoting.
pub fn det_exact(rows: &[Vec<ExactScalar>]) -> ExactScalar {
    let n = rows.len();
    let mut a: Vec<Vec<ExactScalar>> = rows.to_vec();
    let mut det = ExactScalar::from_integer(1.into());
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return ExactScalar::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for k in col..n {
                let sub = &f * &a[col][k];
                a[r][k] -= sub;
            }
        }
    }
    det
}

/// Determinants of the leading `k × k` blocks, `k = 1..=n`.
pub fn leading_minors(m: &SymMatrixQ) -> Vec<ExactScalar> {
    let rows = m.to_rows();
    (1..=m.n)
        .map(|k| {
            let block: Vec<Vec<ExactScalar>> = rows[..k].iter().map(|r| r[..k].to_vec()).collect();
            det_exact(&block)
        })
        .collect()
}

/// Sylvester's criterion: positive definite iff every leading principal
/// minor is positive. The empty matrix is not considered positive definite.
pub fn is_pd_exact(m: &SymMatrixQ) -> bool {
    let rows = m.to_rows();
    m.n > 0
        && (1..=m.n).all(|k| {
            let block: Vec<Vec<ExactScalar>> = rows[..k].iter().map(|r| r[..k].to_vec()).collect();
            det_exact(&block).is_positive()
        })
}

/// `m_ii > Σ_{j≠i} |m_ij|` for every row.
pub fn is_strictly_diag_dominant(m: &SymMatrixQ) -> bool {
    (0..m.n).all(|i| {
        let off: ExactScalar = m
            .row(i)
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.abs())
            .sum();
        *m.get(i, i) > off
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn q(rows: &[&[i64]]) -> SymMatrixQ {
        SymMatrixQ::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .unwrap()
    }

    fn f(rows: &[&[f64]]) -> SymMatrixF {
        SymMatrixF::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn assert_eigs(m: &SymMatrixF, expected: &[f64]) {
        let e = eigen_sym(m);
        for (a, b) in e.eigenvalues.iter().zip(expected) {
            assert!((a - b).abs() < 1e-10 * (1.0 + m.max_norm()), "{e:?} vs {expected:?}");
        }
    }

    #[test]
    fn eigen_examples() {
        assert_eigs(&f(&[&[0., 0., 0.], &[0., 1., 1.], &[0., 1., 1.]]), &[0., 0., 2.]);
        assert_eigs(&f(&[&[1., 0., 0.], &[0., 1., 0.], &[0., 0., 1.]]), &[1., 1., 1.]);
        assert_eigs(
            &f(&[&[27., 5., 5.], &[5., 27., 5.], &[5., 5., 27.]]),
            &[22., 22., 37.],
        );
        assert_eigs(&f(&[&[0., 0.], &[0., 0.]]), &[0., 0.]);
    }

    #[test]
    fn rejects_asymmetric_rows() {
        let err = SymMatrixF::from_rows(vec![vec![1.0, 2.0], vec![2.1, 1.0]]).unwrap_err();
        assert_eq!(err, Error::NotSymmetric { row: 0, col: 1 });
        assert!(SymMatrixQ::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(1)]]).is_err());
        assert!(SymMatrixF::from_rows(vec![vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn sylvester_examples() {
        let r = q(&[&[27, 5, 5], &[5, 27, 5], &[5, 5, 27]]);
        assert_eq!(leading_minors(&r), vec![int(27), int(704), int(17908)]);
        assert!(is_pd_exact(&r));
        assert!(!is_pd_exact(&q(&[&[0, 0], &[0, 0]])));
        assert!(!is_pd_exact(&q(&[&[1, 2], &[2, 1]])));
        assert_eq!(det_exact(&q(&[&[1, 2], &[2, 1]]).to_rows()), int(-3));
        // needs a row swap
        assert_eq!(det_exact(&q(&[&[0, 1], &[1, 0]]).to_rows()), int(-1));
    }

    #[test]
    fn dominance_examples() {
        assert!(is_strictly_diag_dominant(&q(&[&[27, 5, 5], &[5, 27, 5], &[5, 5, 27]])));
        assert!(!is_strictly_diag_dominant(&q(&[&[1, 1], &[1, 1]])));
        assert!(is_strictly_diag_dominant(&q(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 1]])));
        assert!(!is_strictly_diag_dominant(&q(&[&[-3, 1], &[1, 5]])));
    }

    #[test]
    fn jacobi_handles_tiny_and_huge_entries() {
        let m = f(&[&[1e-300, 1e-301], &[1e-301, 2e-300]]);
        let e = eigen_sym(&m);
        assert!((e.eigenvalues.iter().sum::<f64>() - 3e-300).abs() < 1e-310);
        let m = f(&[&[1e150, 1.0], &[1.0, -1e150]]);
        let e = eigen_sym(&m);
        assert!((e.max() - 1e150).abs() / 1e150 < 1e-12);
    }
}
