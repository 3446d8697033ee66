//! Exact negative lattice condition: `p(S)p(T) ≥ p(S∪T)p(S∩T)` for every pair.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::{Certificate, Verdict, Witness};
use crate::error::Result;
use crate::poly::{Subset, SubsetPoly};
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NlcWitness {
    pub s: Subset,
    pub t: Subset,
    #[serde(serialize_with = "ser_exact")]
    pub lhs: ExactScalar,
    #[serde(serialize_with = "ser_exact")]
    pub rhs: ExactScalar,
}

fn ser_exact<S: serde::Serializer>(v: &ExactScalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::scalar::format_exact(v))
}

/// Integer-scaled coefficients; the inequality is homogeneous of degree two,
/// so clearing denominators does not change any comparison.
enum Scaled {
    Small(Vec<u64>),
    Big(Vec<BigInt>),
}

impl Scaled {
    fn new(p: &SubsetPoly) -> Self {
        let lcm = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        match ints.iter().map(|v| v.to_u64()).collect::<Option<Vec<u64>>>() {
            Some(small) => Scaled::Small(small),
            None => Scaled::Big(ints),
        }
    }

    /// `p(S)p(T) < p(S∪T)p(S∩T)`.
    fn violates(&self, s: Subset, t: Subset) -> bool {
        let (s, t, u, i) = (s as usize, t as usize, (s | t) as usize, (s & t) as usize);
        match self {
            Scaled::Small(v) => {
                (v[s] as u128) * (v[t] as u128) < (v[u] as u128) * (v[i] as u128)
            }
            Scaled::Big(v) => &v[s] * &v[t] < &v[u] * &v[i],
        }
    }
}

/// Comparable pairs give equalities, so only incomparable `S < T` are
/// examined; the first violation in that order is also the
/// lexicographically first ordered pair.
fn first_violation_from(scaled: &Scaled, size: Subset, s: Subset) -> Option<(Subset, Subset)> {
    (s + 1..size)
        .filter(|&t| s & t != s && s & t != t)
        .find(|&t| scaled.violates(s, t))
        .map(|t| (s, t))
}

fn witness(p: &SubsetPoly, s: Subset, t: Subset) -> NlcWitness {
    NlcWitness {
        s,
        t,
        lhs: p.coeff(s) * p.coeff(t),
        rhs: p.coeff(s | t) * p.coeff(s & t),
    }
}

/// Recomputes both sides from `p` and confirms the strict inequality.
pub fn verify_nlc_witness(p: &SubsetPoly, w: &NlcWitness) -> bool {
    p.check_subset(w.s | w.t).is_ok() && {
        let fresh = witness(p, w.s, w.t);
        fresh == *w && fresh.lhs < fresh.rhs
    }
}

/// Exhaustive exact NLC check. Returns the lexicographically smallest
/// violating `(S, T)` by bitmask, or an exhaustive-enumeration certificate.
pub fn check_nlc(p: &SubsetPoly) -> Result<Verdict> {
    p.require_nonnegative()?;
    let scaled = Scaled::new(p);
    let size = 1u32 << p.n();

    #[cfg(feature = "parallel")]
    let found = {
        use rayon::prelude::*;
        (0..size)
            .into_par_iter()
            .find_map_first(|s| first_violation_from(&scaled, size, s))
    };
    #[cfg(not(feature = "parallel"))]
    let found = (0..size).find_map(|s| first_violation_from(&scaled, size, s));

    Ok(match found {
        Some((s, t)) => {
            let w = witness(p, s, t);
            assert!(verify_nlc_witness(p, &w), "NLC witness failed re-verification");
            Verdict::Violated(Witness::Nlc(w))
        }
        None => Verdict::Holds(Certificate::NlcExhaustive {
            pairs_checked: (size as u64) * (size as u64),
        }),
    })
}

/// Every violating unordered pair, as `S < T`, in lexicographic order.
pub fn nlc_violations(p: &SubsetPoly) -> Result<Vec<NlcWitness>> {
    p.require_nonnegative()?;
    let scaled = Scaled::new(p);
    let size = 1u32 << p.n();
    Ok((0..size)
        .flat_map(|s| (s + 1..size).map(move |t| (s, t)))
        .filter(|&(s, t)| scaled.violates(s, t))
        .map(|(s, t)| witness(p, s, t))
        .collect())
}
