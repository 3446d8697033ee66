//! Property deciders and their verdicts.
//!
//! A [`Verdict::Holds`] is only ever backed by an exact argument (exhaustive
//! enumeration, a symbolic certificate, or a structural triviality). Sampling
//! can only produce [`Verdict::Violated`] or [`Verdict::NoViolationFound`].

mod certificate;
mod nlc;
mod sampled;
mod slc;

pub use certificate::{certify_log_concavity_dominance, DominanceCertificate};
pub use nlc::{check_nlc, nlc_violations, verify_nlc_witness, NlcWitness};
pub use sampled::{
    check_log_concavity_sampled, sample_points, verify_point_witness, PointWitness, SampleConfig,
};
pub use slc::{check_log_concavity, check_slc, SlcReport};

use serde::Serialize;

use crate::poly::Subset;

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Holds(Certificate),
    Violated(Witness),
    NoViolationFound(SearchStats),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Holds,
    Violated,
    NoViolationFound,
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Holds(_) => VerdictKind::Holds,
            Verdict::Violated(_) => VerdictKind::Violated,
            Verdict::NoViolationFound(_) => VerdictKind::NoViolationFound,
        }
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Holds(c) => Some(c),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Violated(w) => Some(w),
            _ => None,
        }
    }
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerdictKind::Holds => "holds",
            VerdictKind::Violated => "violated",
            VerdictKind::NoViolationFound => "no violation found",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// Every subset pair was compared exactly.
    NlcExhaustive { pairs_checked: u64 },
    /// Zero, constant or single monomial: `log g` is affine (or the
    /// polynomial vanishes) on the positive orthant.
    Trivial(TrivialReason),
    /// Nonconstant affine form with nonnegative coefficients; its log is
    /// concave wherever it is positive.
    AffineForm,
    Dominance(DominanceCertificate),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrivialReason {
    Zero,
    Constant,
    Monomial,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Nlc(NlcWitness),
    Point(PointWitness),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchStats {
    pub points_tested: u64,
    pub derivatives_tested: u32,
    pub tolerance: f64,
    pub seed: u64,
}

/// SplitMix64 finaliser; derives independent stream seeds from a base seed
/// and a work-item index.
pub fn derive_seed(seed: u64, item: u64) -> u64 {
    let mut z = seed ^ item.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn subset_seed(seed: u64, a: Subset) -> u64 {
    derive_seed(seed, a as u64)
}
