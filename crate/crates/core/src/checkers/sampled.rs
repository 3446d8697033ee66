//! Pointwise falsification of log-concavity on the positive orthant.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Certificate, SearchStats, TrivialReason, Verdict, Witness};
use crate::calculus::{log_hessian, FloatPoly};
use crate::error::{Error, Result};
use crate::linalg::{eigen_sym, nsd_threshold};
use crate::poly::{PositivePoint, Subset, SubsetPoly};

/// Coordinates of the fixed grid visited before any random point.
pub const GRID_VALUES: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 10.0];

/// Above this many variables the full product grid (`5^n` points) is
/// replaced by its diagonal.
pub const FULL_GRID_MAX_VARS: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleConfig {
    /// Random points, in addition to the grid.
    pub points: usize,
    pub lo: f64,
    pub hi: f64,
    pub seed: u64,
    /// Relative tolerance: a log-Hessian `H` passes while
    /// `λ_max(H) <= tolerance * (1 + max|H_ij|)`.
    pub tolerance: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            points: 2000,
            lo: 0.01,
            hi: 100.0,
            seed: 0,
            tolerance: 1e-9,
        }
    }
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo > 0.0 && self.lo <= self.hi) {
            return Err(Error::InvalidParameter(format!(
                "sampling box [{}, {}] must satisfy 0 < lo <= hi",
                self.lo, self.hi
            )));
        }
        if !(self.tolerance.is_finite() && self.tolerance >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance {} must be finite and nonnegative",
                self.tolerance
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointWitness {
    pub derivative_subset: Subset,
    pub point: PositivePoint,
    pub max_eigenvalue: f64,
    /// The bound `max_eigenvalue` exceeded.
    pub threshold: f64,
}

/// Deterministic grid points followed by `cfg.points` log-uniform points in
/// `[lo, hi]^n` drawn from a ChaCha8 stream seeded with `cfg.seed`.
pub fn sample_points(n: usize, cfg: &SampleConfig) -> impl Iterator<Item = Vec<f64>> + '_ {
    let grid: Box<dyn Iterator<Item = Vec<f64>>> = if n <= FULL_GRID_MAX_VARS {
        let total = GRID_VALUES.len().pow(n as u32);
        Box::new((0..total).map(move |mut k| {
            (0..n)
                .map(|_| {
                    let v = GRID_VALUES[k % GRID_VALUES.len()];
                    k /= GRID_VALUES.len();
                    v
                })
                .collect()
        }))
    } else {
        Box::new(GRID_VALUES.iter().map(move |&v| vec![v; n]))
    };
    let (ln_lo, ln_hi) = (cfg.lo.ln(), cfg.hi.ln());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let random = (0..cfg.points).map(move |_| {
        (0..n)
            .map(|_| (ln_lo + rng.gen::<f64>() * (ln_hi - ln_lo)).exp().clamp(cfg.lo, cfg.hi))
            .collect()
    });
    grid.chain(random)
}

fn trivial_reason(p: &SubsetPoly) -> Option<TrivialReason> {
    if p.is_zero() {
        Some(TrivialReason::Zero)
    } else if p.is_constant() {
        Some(TrivialReason::Constant)
    } else if p.is_monomial() {
        Some(TrivialReason::Monomial)
    } else {
        None
    }
}

pub(crate) fn trivially_log_concave(p: &SubsetPoly) -> Option<Certificate> {
    trivial_reason(p).map(Certificate::Trivial)
}

/// Samples points and reports the first one at which `∇² log p` has an
/// eigenvalue above tolerance. Never returns `Holds` except for the
/// structurally trivial cases (zero, constant, single monomial).
pub fn check_log_concavity_sampled(p: &SubsetPoly, cfg: &SampleConfig) -> Result<Verdict> {
    sampled_for_subset(p, 0, cfg)
}

/// `p` here is already the derivative `∂^a` of some original polynomial; `a`
/// is only recorded in the witness.
pub(crate) fn sampled_for_subset(p: &SubsetPoly, a: Subset, cfg: &SampleConfig) -> Result<Verdict> {
    p.require_nonnegative()?;
    cfg.validate()?;
    if let Some(c) = trivially_log_concave(p) {
        return Ok(Verdict::Holds(c));
    }
    let fp = FloatPoly::normalized(p);
    let mut tested = 0u64;
    for x in sample_points(p.n(), cfg) {
        tested += 1;
        let h = fp.log_hessian(&x)?;
        let threshold = nsd_threshold(&h, cfg.tolerance);
        let top = eigen_sym(&h).max();
        if top > threshold {
            let point = PositivePoint::new(x)?;
            let w = PointWitness {
                derivative_subset: a,
                point,
                max_eigenvalue: top,
                threshold,
            };
            assert!(
                witness_holds(p, &w, cfg.tolerance),
                "point witness failed re-verification"
            );
            return Ok(Verdict::Violated(Witness::Point(w)));
        }
    }
    Ok(Verdict::NoViolationFound(SearchStats {
        points_tested: tested,
        derivatives_tested: 1,
        tolerance: cfg.tolerance,
        seed: cfg.seed,
    }))
}

/// Fresh evaluation of `∇² log q` at the witness point, where `q` is the
/// already-differentiated polynomial.
fn witness_holds(q: &SubsetPoly, w: &PointWitness, tolerance: f64) -> bool {
    log_hessian(q, &w.point)
        .map(|h| eigen_sym(&h).max() > nsd_threshold(&h, tolerance))
        .unwrap_or(false)
}

/// Re-derives `∂^A p` from the original polynomial and confirms a positive
/// log-Hessian eigenvalue above tolerance at the witness point.
pub fn verify_point_witness(p: &SubsetPoly, w: &PointWitness, tolerance: f64) -> bool {
    p.derivative_subset(w.derivative_subset)
        .map(|q| witness_holds(&q, w, tolerance))
        .unwrap_or(false)
}
