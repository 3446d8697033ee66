//! Multi-affine generating polynomials indexed by subset bitmasks.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_exact, to_f64, ExactScalar};

pub const MAX_VARS: usize = 16;

/// A subset of the ground set `{0, .., n-1}` as a bitmask (bit `i` set means
/// variable `i` is in the subset).
pub type Subset = u32;

/// 1-based, human-facing rendering such as `{1,3}` or `∅`.
pub fn subset_label(s: Subset) -> String {
    if s == 0 {
        return "∅".into();
    }
    let items: Vec<String> = members(s).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Indices contained in `s`, ascending.
pub fn members(s: Subset) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| s >> i & 1 == 1)
}

pub fn full_mask(n: usize) -> Subset {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Polynomial `Σ_S p(S) ∏_{v∈S} x_v` stored as a dense array over all `2^n`
/// subsets. Multi-affine by construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetPoly {
    n: usize,
    coeffs: Vec<ExactScalar>,
}

impl SubsetPoly {
    pub fn zero(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            n,
            coeffs: vec![ExactScalar::zero(); 1 << n],
        })
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<ExactScalar>) -> Result<Self> {
        check_n(n)?;
        if coeffs.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                got: coeffs.len(),
            });
        }
        Ok(Self { n, coeffs })
    }

    /// Builds from `(subset, coefficient)` pairs; unlisted subsets are zero and
    /// repeated subsets accumulate.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, ExactScalar)>,
    {
        let mut p = Self::zero(n)?;
        for (s, c) in terms {
            p.check_subset(s)?;
            p.coeffs[s as usize] += c;
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, s: Subset) -> &ExactScalar {
        &self.coeffs[s as usize]
    }

    /// Nonzero terms in ascending bitmask order.
    pub fn terms(&self) -> impl Iterator<Item = (Subset, &ExactScalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| (s as Subset, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Number of nonzero coefficients.
    pub fn support_size(&self) -> usize {
        self.terms().count()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Exactly one nonzero term.
    pub fn is_monomial(&self) -> bool {
        self.support_size() == 1
    }

    /// Every nonzero term has at most one variable.
    pub fn is_affine(&self) -> bool {
        self.terms().all(|(s, _)| s.count_ones() <= 1)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn sum(&self) -> ExactScalar {
        self.coeffs.iter().sum()
    }

    /// Nonnegative coefficients summing to one.
    pub fn is_distribution(&self) -> bool {
        self.is_nonnegative() && self.sum() == ExactScalar::from_integer(1.into())
    }

    /// First negative coefficient, as an error.
    pub fn require_nonnegative(&self) -> Result<()> {
        match self.terms().find(|(_, c)| c.is_negative()) {
            Some((s, c)) => Err(Error::NegativeCoefficient {
                subset: subset_label(s),
                value: format_exact(c),
            }),
            None => Ok(()),
        }
    }

    pub fn check_subset(&self, s: Subset) -> Result<()> {
        if s & !full_mask(self.n) != 0 {
            return Err(Error::SubsetOutOfRange { mask: s, n: self.n });
        }
        Ok(())
    }

    pub fn eval(&self, x: &PositivePoint) -> Result<f64> {
        self.check_point(x)?;
        Ok(self
            .terms()
            .map(|(s, c)| to_f64(c) * monomial(s, x.coords()))
            .sum())
    }

    /// Exact value at a rational point (any sign).
    pub fn eval_exact(&self, x: &[ExactScalar]) -> Result<ExactScalar> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self
            .terms()
            .map(|(s, c)| members(s).fold(c.clone(), |acc, i| acc * &x[i]))
            .sum())
    }

    /// Partial derivative in variable `i` (0-based). The result no longer
    /// depends on `x_i`.
    pub fn derivative(&self, i: usize) -> Result<Self> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        self.derivative_subset(1 << i)
    }

    /// `∂^A p` for a square-free set of variables: coefficient of `S` (disjoint
    /// from `A`) becomes `p(S ∪ A)`, and every `S` meeting `A` gets zero.
    pub fn derivative_subset(&self, a: Subset) -> Result<Self> {
        self.check_subset(a)?;
        let coeffs = (0..self.coeffs.len() as Subset)
            .map(|s| {
                if s & a == 0 {
                    self.coeffs[(s | a) as usize].clone()
                } else {
                    ExactScalar::zero()
                }
            })
            .collect();
        Ok(Self { n: self.n, coeffs })
    }

    pub fn scale(&self, lambda: &ExactScalar) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::NonPositiveScale(format_exact(lambda)));
        }
        Ok(Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * lambda).collect(),
        })
    }

    /// Divides by the coefficient sum so the result sums to exactly one.
    pub fn normalize(&self) -> Result<Self> {
        let total = self.sum();
        if total.is_zero() {
            return Err(Error::ZeroSum);
        }
        Ok(Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c / &total).collect(),
        })
    }

    /// Union of the supports of all nonzero terms.
    pub fn used_variables(&self) -> Subset {
        self.terms().fold(0, |acc, (s, _)| acc | s)
    }

    /// Drops variables that appear in no term, renumbering the rest in order.
    /// `None` when no variable is used (the polynomial is constant).
    pub fn compress(&self) -> Option<Self> {
        let used = self.used_variables();
        if used == 0 {
            return None;
        }
        let index: Vec<usize> = members(used).collect();
        let terms = self.terms().map(|(s, c)| {
            let packed = index
                .iter()
                .enumerate()
                .filter(|&(_, &v)| s >> v & 1 == 1)
                .fold(0, |acc, (k, _)| acc | 1 << k);
            (packed, c.clone())
        });
        Some(Self::from_terms(index.len(), terms).expect("compressed subsets are in range"))
    }

    /// Relabels variables: variable `i` of `self` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &t in perm {
            if t >= self.n || std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidParameter(format!(
                    "{perm:?} is not a permutation of 0..{}",
                    self.n
                )));
            }
        }
        let mut out = Self::zero(self.n)?;
        for (s, c) in self.terms() {
            out.coeffs[permute_subset(s, perm) as usize] = c.clone();
        }
        Ok(out)
    }

    fn check_point(&self, x: &PositivePoint) -> Result<()> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.dim(),
            });
        }
        Ok(())
    }
}

pub fn permute_subset(s: Subset, perm: &[usize]) -> Subset {
    members(s).fold(0, |acc, i| acc | 1 << perm[i])
}

/// `∏_{i∈S} x_i`.
pub(crate) fn monomial(s: Subset, x: &[f64]) -> f64 {
    members(s).map(|i| x[i]).product()
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(())
}

/// Variable names: `x, y, z` for up to three variables, `x1..xn` otherwise.
pub fn var_name(i: usize, n: usize) -> String {
    if n <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Debug for SubsetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetPoly(n={}, {self})", self.n)
    }
}

impl fmt::Display for SubsetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|&(s, _)| (s.count_ones(), std::cmp::Reverse(s.reverse_bits())));
        for (s, c) in terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let vars: String = members(s).map(|i| var_name(i, self.n)).collect();
            match (vars.is_empty(), format_exact(c)) {
                (true, c) => f.write_str(&c)?,
                (false, c) if c == "1" => f.write_str(&vars)?,
                (false, c) if c.contains('/') || c.starts_with('-') => write!(f, "({c}){vars}")?,
                (false, c) => write!(f, "{c}{vars}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A point of the open positive orthant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct PositivePoint(Vec<f64>);

impl PositivePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        for (index, &value) in coords.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NonPositiveCoordinate { index, value });
            }
        }
        Ok(Self(coords))
    }

    pub fn splat(n: usize, v: f64) -> Result<Self> {
        Self::new(vec![v; n])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Coordinate `i` moves to position `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = self.0.clone();
        for (i, &t) in perm.iter().enumerate() {
            out[t] = self.0[i];
        }
        Self(out)
    }
}

impl TryFrom<Vec<f64>> for PositivePoint {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PositivePoint> for Vec<f64> {
    fn from(p: PositivePoint) -> Self {
        p.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    /// `4 + 3(x+y+z) + 3(xy+xz+yz)` over 22.
    fn counterexample() -> SubsetPoly {
        let body = SubsetPoly::from_terms(
            3,
            [(0, int(4))]
                .into_iter()
                .chain([1, 2, 4].map(|s| (s, int(3))))
                .chain([3, 5, 6].map(|s| (s, int(3)))),
        )
        .unwrap();
        body.normalize().unwrap()
    }

    #[test]
    fn eval_examples() {
        let g = counterexample();
        let ones = PositivePoint::splat(3, 1.0).unwrap();
        assert!((g.eval(&ones).unwrap() - 1.0).abs() < 1e-15);
        let zero = [int(0), int(0), int(0)];
        assert_eq!(g.eval_exact(&zero).unwrap(), ratio(4, 22));
        let z = SubsetPoly::zero(3).unwrap();
        assert_eq!(z.eval(&ones).unwrap(), 0.0);
    }

    #[test]
    fn eval_rejects_dimension_mismatch() {
        let g = counterexample();
        let p = PositivePoint::splat(2, 1.0).unwrap();
        assert!(matches!(
            g.eval(&p),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn derivative_examples() {
        let g = counterexample();
        let dx = g.derivative(0).unwrap();
        let expected =
            SubsetPoly::from_terms(3, [(0, ratio(3, 22)), (2, ratio(3, 22)), (4, ratio(3, 22))])
                .unwrap();
        assert_eq!(dx, expected);
        assert!(dx.derivative(0).unwrap().is_zero());
        let dxy = dx.derivative(1).unwrap();
        assert!(dxy.is_constant());
        assert_eq!(dxy.coeff(0), &ratio(3, 22));
        assert_eq!(g.derivative_subset(0b011).unwrap(), dxy);
        assert_eq!(g.derivative_subset(0).unwrap(), g);
        assert!(g.derivative_subset(0b111).unwrap().is_zero());
        assert!(matches!(
            g.derivative(3),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        ));
        assert!(g.derivative_subset(0b1000).is_err());
    }

    #[test]
    fn scale_and_normalize() {
        let g = counterexample();
        assert_eq!(g.coeff(0), &ratio(4, 22));
        assert_eq!(g.coeff(1), &ratio(3, 22));
        assert_eq!(g.coeff(3), &ratio(3, 22));
        assert_eq!(g.coeff(7), &int(0));
        assert!(g.is_distribution());
        assert_eq!(g.scale(&int(1)).unwrap(), g);
        assert!(g.scale(&int(0)).is_err());
        assert!(g.scale(&int(-2)).is_err());
        let five = SubsetPoly::from_terms(2, [(0, int(5))]).unwrap();
        assert_eq!(five.normalize().unwrap().coeff(0), &int(1));
        assert_eq!(SubsetPoly::zero(2).unwrap().normalize(), Err(Error::ZeroSum));
    }

    #[test]
    fn shape_predicates() {
        let g = counterexample();
        assert!(!g.is_affine());
        assert!(g.derivative(0).unwrap().is_affine());
        let xy = SubsetPoly::from_terms(2, [(3, int(1))]).unwrap();
        assert!(xy.is_monomial() && !xy.is_constant());
        assert!(SubsetPoly::zero(4).unwrap().is_constant());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(SubsetPoly::zero(0).is_err());
        assert!(SubsetPoly::zero(17).is_err());
        assert!(SubsetPoly::from_coeffs(2, vec![int(1); 3]).is_err());
        assert!(PositivePoint::new(vec![1.0, 0.0]).is_err());
        assert!(PositivePoint::new(vec![1.0, f64::NAN]).is_err());
        let neg = SubsetPoly::from_terms(2, [(1, ratio(-1, 2))]).unwrap();
        assert!(neg.require_nonnegative().is_err());
    }

    #[test]
    fn permutation_moves_terms() {
        let p = SubsetPoly::from_terms(3, [(0b001, int(1)), (0b011, int(2))]).unwrap();
        // 0 -> 2, 1 -> 0, 2 -> 1
        let q = p.permute(&[2, 0, 1]).unwrap();
        assert_eq!(q.coeff(0b100), &int(1));
        assert_eq!(q.coeff(0b101), &int(2));
        assert!(p.permute(&[0, 0, 1]).is_err());
        let x = PositivePoint::new(vec![1.0, 2.0, 3.0]).unwrap();
        let px = x.permute(&[2, 0, 1]);
        assert_eq!(px.coords(), &[2.0, 3.0, 1.0]);
        assert_eq!(p.eval(&x).unwrap(), q.eval(&px).unwrap());
    }

    #[test]
    fn compress_drops_unused_variables() {
        let dx = counterexample().derivative(0).unwrap();
        assert_eq!(dx.used_variables(), 0b110);
        let c = dx.compress().unwrap();
        assert_eq!(c.n(), 2);
        assert_eq!(c.coeff(0b11), &int(0));
        assert_eq!(c.coeff(0b01), &ratio(3, 22));
        assert!(SubsetPoly::from_terms(3, [(0, int(2))]).unwrap().compress().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(
            counterexample().derivative(0).unwrap().to_string(),
            "3/22 + (3/22)y + (3/22)z"
        );
        assert_eq!(SubsetPoly::zero(2).unwrap().to_string(), "0");
        assert_eq!(subset_label(0b101), "{1,3}");
        assert_eq!(subset_label(0), "∅");
    }
}
