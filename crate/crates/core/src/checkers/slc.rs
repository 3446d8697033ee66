//! Strong log-concavity over all square-free derivative subsets.

use std::collections::BTreeMap;

use super::certificate::certify_log_concavity_dominance;
use super::sampled::{sampled_for_subset, trivially_log_concave};
use super::{subset_seed, Certificate, SampleConfig, Verdict, VerdictKind};
use crate::error::Result;
use crate::poly::{Subset, SubsetPoly};

#[derive(Debug, Clone, PartialEq)]
pub struct SlcReport {
    /// One verdict per derivative subset `A`, keyed by bitmask.
    pub entries: BTreeMap<Subset, Verdict>,
}

impl SlcReport {
    /// Violated if any entry is violated; Holds if all hold; otherwise
    /// NoViolationFound.
    pub fn aggregate(&self) -> VerdictKind {
        let kinds = || self.entries.values().map(Verdict::kind);
        if kinds().any(|k| k == VerdictKind::Violated) {
            VerdictKind::Violated
        } else if kinds().all(|k| k == VerdictKind::Holds) {
            VerdictKind::Holds
        } else {
            VerdictKind::NoViolationFound
        }
    }

    pub fn violations(&self) -> impl Iterator<Item = (Subset, &Verdict)> {
        self.entries
            .iter()
            .filter(|(_, v)| v.is_violated())
            .map(|(&a, v)| (a, v))
    }

    pub fn get(&self, a: Subset) -> Option<&Verdict> {
        self.entries.get(&a)
    }

    pub fn points_tested(&self) -> u64 {
        self.entries
            .values()
            .map(|v| match v {
                Verdict::NoViolationFound(s) => s.points_tested,
                _ => 0,
            })
            .sum()
    }
}

/// Verdict for one derivative `∂^A p`: structural triviality, then the
/// affine-form rule, then the dominance certificate (on the variables the
/// derivative actually uses), then sampling.
fn check_subset(p: &SubsetPoly, a: Subset, cfg: &SampleConfig) -> Result<Verdict> {
    let q = p.derivative_subset(a)?;
    if let Some(c) = trivially_log_concave(&q) {
        return Ok(Verdict::Holds(c));
    }
    let reduced = q.compress().expect("nonconstant polynomial uses a variable");
    if reduced.is_affine() {
        return Ok(Verdict::Holds(Certificate::AffineForm));
    }
    if let Some(cert) = certify_log_concavity_dominance(&reduced) {
        return Ok(Verdict::Holds(Certificate::Dominance(cert)));
    }
    let cfg = SampleConfig {
        seed: subset_seed(cfg.seed, a),
        ..cfg.clone()
    };
    sampled_for_subset(&q, a, &cfg)
}

/// Log-concavity of `p` itself, using the same escalation as each entry of
/// [`check_slc`].
pub fn check_log_concavity(p: &SubsetPoly, cfg: &SampleConfig) -> Result<Verdict> {
    p.require_nonnegative()?;
    cfg.validate()?;
    check_subset(p, 0, cfg)
}

/// Runs the log-concavity check on `∂^A p` for every `A ⊆ {1..n}`. Repeated
/// indices are omitted since they annihilate a multi-affine polynomial.
pub fn check_slc(p: &SubsetPoly, cfg: &SampleConfig) -> Result<SlcReport> {
    p.require_nonnegative()?;
    cfg.validate()?;
    let subsets: Vec<Subset> = (0..1u32 << p.n()).collect();

    #[cfg(feature = "parallel")]
    let verdicts: Vec<Result<Verdict>> = {
        use rayon::prelude::*;
        subsets.par_iter().map(|&a| check_subset(p, a, cfg)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let verdicts: Vec<Result<Verdict>> = subsets.iter().map(|&a| check_subset(p, a, cfg)).collect();

    let mut entries = BTreeMap::new();
    for (a, v) in subsets.into_iter().zip(verdicts) {
        entries.insert(a, v?);
    }
    Ok(SlcReport { entries })
}
