//! General sparse multivariate polynomials with exact coefficients. These
//! carry the entries of symbolic Hessian-type matrices.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{members, var_name, SubsetPoly};
use crate::scalar::{format_exact, to_f64, ExactScalar};

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    n: usize,
    terms: BTreeMap<Exponents, ExactScalar>,
}

impl SparsePoly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: ExactScalar) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    /// The polynomial `x_i`.
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n, "variable {i} out of range for n = {n}");
        let mut e = vec![0; n];
        e[i] = 1;
        let mut p = Self::zero(n);
        p.add_term(e, ExactScalar::one());
        p
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, ExactScalar)>,
    {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Same polynomial, with each subset turned into a 0/1 exponent vector.
    pub fn from_subset(p: &SubsetPoly) -> Self {
        let n = p.n();
        let mut out = Self::zero(n);
        for (s, c) in p.terms() {
            let mut e = vec![0; n];
            for i in members(s) {
                e[i] = 1;
            }
            out.add_term(e, c.clone());
        }
        out
    }

    fn add_term(&mut self, e: Exponents, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> ExactScalar {
        self.terms.get(e).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &ExactScalar) -> Self {
        if k.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Replaces every coefficient by its absolute value. On the positive
    /// orthant this bounds `|p(x)|` from above.
    pub fn abs_bound(&self) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.abs()))
                .collect(),
        }
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn has_positive_coeff(&self) -> bool {
        self.terms.values().any(Signed::is_positive)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| to_f64(c) * e.iter().zip(x).map(|(&k, &v)| v.powi(k as i32)).product::<f64>())
            .sum())
    }

    pub fn eval_exact(&self, x: &[ExactScalar]) -> Result<ExactScalar> {
        self.check_len(x.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(c.clone(), |acc, (&k, v)| acc * num_traits::pow(v.clone(), k as usize))
            })
            .sum())
    }

    /// If `self == k * other` for a single scalar `k`, returns `k`.
    /// Two zero polynomials are related by `k = 1`.
    pub fn ratio_to(&self, other: &Self) -> Option<ExactScalar> {
        if self.n != other.n || self.terms.len() != other.terms.len() {
            return None;
        }
        let Some((e, c)) = other.terms.iter().next() else {
            return Some(ExactScalar::one());
        };
        let k = self.terms.get(e)? / c;
        (self == &other.scale(&k)).then_some(k)
    }

    fn same_n(&self, other: &Self) -> Result<()> {
        self.check_len(other.n)
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got,
            });
        }
        Ok(())
    }
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly({self})")
    }
}

/// Highest total degree first, then lexicographically descending exponents,
/// e.g. `6yz + 3y + 3z + 1`.
impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| degree(b).cmp(&degree(a)).then_with(|| b.cmp(a)));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono: String = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| match p {
                    1 => var_name(i, self.n),
                    _ => format!("{}^{p}", var_name(i, self.n)),
                })
                .collect();
            let mag = format_exact(&c.abs());
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            match (mono.is_empty(), mag.as_str()) {
                (true, m) => f.write_str(m)?,
                (false, "1") => f.write_str(&mono)?,
                (false, m) if m.contains('/') => write!(f, "({m}){mono}")?,
                (false, m) => write!(f, "{m}{mono}")?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl $trait for &SparsePoly {
            type Output = SparsePoly;

            /// Panics when the operands have different variable counts.
            fn $method(self, rhs: &SparsePoly) -> SparsePoly {
                self.$impl(rhs).expect("operands must share n")
            }
        }

        impl $trait for SparsePoly {
            type Output = SparsePoly;

            fn $method(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &SparsePoly {
    type Output = SparsePoly;

    fn neg(self) -> SparsePoly {
        SparsePoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul<&ExactScalar> for &SparsePoly {
    type Output = SparsePoly;

    fn mul(self, k: &ExactScalar) -> SparsePoly {
        self.scale(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn xyz() -> (SparsePoly, SparsePoly, SparsePoly, SparsePoly) {
        (
            SparsePoly::constant(3, int(1)),
            SparsePoly::var(3, 0),
            SparsePoly::var(3, 1),
            SparsePoly::var(3, 2),
        )
    }

    #[test]
    fn square_of_affine_form() {
        let (one, _, y, z) = xyz();
        let s = &(&one + &y) + &z;
        let sq = &s * &s;
        let expected = SparsePoly::from_terms(
            3,
            [
                (vec![0, 0, 0], int(1)),
                (vec![0, 1, 0], int(2)),
                (vec![0, 0, 1], int(2)),
                (vec![0, 2, 0], int(1)),
                (vec![0, 1, 1], int(2)),
                (vec![0, 0, 2], int(1)),
            ],
        )
        .unwrap();
        assert_eq!(sq, expected);
        assert_eq!(sq.to_string(), "y^2 + 2yz + z^2 + 2y + 2z + 1");
    }

    #[test]
    fn identity_and_cancellation() {
        let (one, _, _, z) = xyz();
        let p = &(&(&(&z * &z) * &int(3)) + &(&z * &int(3))) - &one;
        assert_eq!(&p * &one, p);
        assert_eq!(p.to_string(), "3z^2 + 3z - 1");
        assert!((&p - &p).is_zero());
        assert_eq!(p.abs_bound().to_string(), "3z^2 + 3z + 1");
        assert!(!p.all_coeffs_nonnegative());
        assert_eq!((-&p).to_string(), "-3z^2 - 3z + 1");
    }

    #[test]
    fn mismatched_dimensions() {
        let a = SparsePoly::var(2, 0);
        let b = SparsePoly::var(3, 0);
        assert!(a.try_mul(&b).is_err());
        assert!(a.try_add(&b).is_err());
        assert!(a.eval(&[1.0]).is_err());
        assert!(SparsePoly::from_terms(2, [(vec![1], int(1))]).is_err());
    }

    #[test]
    fn ratio_detection() {
        let (one, x, y, _) = xyz();
        let p = &(&x * &y) + &one;
        assert_eq!(p.scale(&ratio(3, 484)).ratio_to(&p), Some(ratio(3, 484)));
        assert_eq!((&p + &x).ratio_to(&p), None);
        assert_eq!(SparsePoly::zero(3).ratio_to(&SparsePoly::zero(3)), Some(int(1)));
    }

    #[test]
    fn exact_and_float_eval_agree() {
        let (one, x, y, z) = xyz();
        let p = &(&(&x * &x) * &y) - &(&z * &ratio(1, 3)) + one;
        let v = p.eval(&[2.0, 3.0, 6.0]).unwrap();
        let e = p.eval_exact(&[int(2), int(3), int(6)]).unwrap();
        assert_eq!(e, int(11));
        assert!((v - 11.0).abs() < 1e-12);
    }
}
