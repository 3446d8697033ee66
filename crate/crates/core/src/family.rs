//! The symmetric three-variable family
//! `(4 + b(x+y+z) + c(xy+xz+yz)) / (4 + 3b + 3c)` and the `(b, c)` sweep of
//! its log-submodular and (sampled) strongly log-concave regions.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::checkers::{check_nlc, check_slc, derive_seed, SampleConfig, VerdictKind};
use crate::error::{Error, Result};
use crate::poly::SubsetPoly;
use crate::scalar::{format_exact, int, to_f64, ExactScalar};

/// Upper bound on the number of grid cells in one sweep.
pub const MAX_CELLS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParams {
    b: ExactScalar,
    c: ExactScalar,
}

impl FamilyParams {
    pub fn new(b: ExactScalar, c: ExactScalar) -> Result<Self> {
        if b.is_negative() || c.is_negative() {
            return Err(Error::InvalidParameter(format!(
                "family parameters must be nonnegative, got b = {}, c = {}",
                format_exact(&b),
                format_exact(&c)
            )));
        }
        Ok(Self { b, c })
    }

    pub fn b(&self) -> &ExactScalar {
        &self.b
    }

    pub fn c(&self) -> &ExactScalar {
        &self.c
    }

    /// `4 + 3b + 3c`, positive for admissible parameters.
    pub fn normalizer(&self) -> ExactScalar {
        int(4) + int(3) * &self.b + int(3) * &self.c
    }
}

/// Distribution with `p(∅) = 4/Z`, `p({i}) = b/Z`, `p({i,j}) = c/Z`,
/// `p({1,2,3}) = 0`.
pub fn make_family(params: &FamilyParams) -> SubsetPoly {
    let z = params.normalizer();
    let coeffs = (0u32..8)
        .map(|s| match s.count_ones() {
            0 => int(4) / &z,
            1 => &params.b / &z,
            2 => &params.c / &z,
            _ => ExactScalar::zero(),
        })
        .collect();
    SubsetPoly::from_coeffs(3, coeffs).expect("eight coefficients for n = 3")
}

/// Closed-form log-submodular region, `b² ≥ 4c`. The only nontrivial lattice
/// comparison in this family is `p({i})p({j}) ≥ p({i,j})p(∅)`.
pub fn nlc_region_exact(params: &FamilyParams) -> bool {
    &params.b * &params.b >= int(4) * &params.c
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    #[serde(serialize_with = "ser_exact")]
    pub b_max: ExactScalar,
    #[serde(serialize_with = "ser_exact")]
    pub c_max: ExactScalar,
    #[serde(serialize_with = "ser_exact")]
    pub step: ExactScalar,
    /// Random points per derivative polynomial in each cell.
    pub samples: usize,
    pub seed: u64,
    pub lo: f64,
    pub hi: f64,
    pub tolerance: f64,
}

fn ser_exact<S: serde::Serializer>(v: &ExactScalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_exact(v))
}

impl Default for SweepConfig {
    fn default() -> Self {
        let sample = SampleConfig::default();
        Self {
            b_max: int(4),
            c_max: int(4),
            step: ExactScalar::new(1.into(), 20.into()),
            samples: 2000,
            seed: 0,
            lo: sample.lo,
            hi: sample.hi,
            tolerance: sample.tolerance,
        }
    }
}

impl SweepConfig {
    /// Grid values `0, step, 2·step, …` up to and including `max`.
    fn axis(&self, max: &ExactScalar) -> Vec<ExactScalar> {
        let count = (max / &self.step).floor().to_usize().unwrap_or(usize::MAX);
        (0..=count)
            .map(|i| &self.step * ExactScalar::from_integer(i.into()))
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if !self.step.is_positive() {
            return Err(Error::InvalidParameter("step must be positive".into()));
        }
        if self.b_max.is_negative() || self.c_max.is_negative() {
            return Err(Error::InvalidParameter("ranges must be nonnegative".into()));
        }
        let per_axis = |m: &ExactScalar| (m / &self.step).floor().to_usize().map(|k| k + 1);
        match (per_axis(&self.b_max), per_axis(&self.c_max)) {
            (Some(nb), Some(nc)) if nb.checked_mul(nc).is_some_and(|k| k <= MAX_CELLS) => {}
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "grid exceeds the {MAX_CELLS}-cell limit"
                )))
            }
        }
        self.sample_config(0).validate()
    }

    fn sample_config(&self, seed: u64) -> SampleConfig {
        SampleConfig {
            points: self.samples,
            lo: self.lo,
            hi: self.hi,
            seed,
            tolerance: self.tolerance,
        }
    }

    /// Seed of the sampling stream for cell `(bi, ci)`; independent of
    /// evaluation order.
    pub fn cell_seed(&self, bi: usize, ci: usize) -> u64 {
        derive_seed(derive_seed(self.seed, bi as u64), ci as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepCell {
    pub bi: usize,
    pub ci: usize,
    #[serde(serialize_with = "ser_exact")]
    pub b: ExactScalar,
    #[serde(serialize_with = "ser_exact")]
    pub c: ExactScalar,
    pub nlc: bool,
    pub slc_no_violation: bool,
    pub points_tested: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub b_values: Vec<f64>,
    pub c_values: Vec<f64>,
    /// Row-major in `b`, then `c`.
    pub cells: Vec<SweepCell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub cells: usize,
    pub nlc_cells: usize,
    pub slc_cells: usize,
    pub slc_not_nlc_cells: usize,
    /// Every NLC cell is also an SLC-no-violation cell.
    pub containment: bool,
}

impl SweepResult {
    pub fn cell(&self, bi: usize, ci: usize) -> Option<&SweepCell> {
        (bi < self.b_values.len() && ci < self.c_values.len())
            .then(|| &self.cells[bi * self.c_values.len() + ci])
    }

    /// Cell at exact parameter values, if on the grid.
    pub fn cell_at(&self, b: &ExactScalar, c: &ExactScalar) -> Option<&SweepCell> {
        self.cells.iter().find(|cell| &cell.b == b && &cell.c == c)
    }

    pub fn summary(&self) -> SweepSummary {
        let count = |f: &dyn Fn(&SweepCell) -> bool| self.cells.iter().filter(|c| f(c)).count();
        SweepSummary {
            cells: self.cells.len(),
            nlc_cells: count(&|c| c.nlc),
            slc_cells: count(&|c| c.slc_no_violation),
            slc_not_nlc_cells: count(&|c| c.slc_no_violation && !c.nlc),
            containment: self.cells.iter().all(|c| !c.nlc || c.slc_no_violation),
        }
    }
}

fn evaluate_cell(cfg: &SweepConfig, bi: usize, ci: usize, b: &ExactScalar, c: &ExactScalar) -> Result<SweepCell> {
    let g = make_family(&FamilyParams::new(b.clone(), c.clone())?);
    let nlc = check_nlc(&g)?.kind() == VerdictKind::Holds;
    let report = check_slc(&g, &cfg.sample_config(cfg.cell_seed(bi, ci)))?;
    Ok(SweepCell {
        bi,
        ci,
        b: b.clone(),
        c: c.clone(),
        nlc,
        slc_no_violation: report.aggregate() != VerdictKind::Violated,
        points_tested: report.points_tested(),
    })
}

/// Evaluates every grid cell. Cells run concurrently when the `parallel`
/// feature is on; results are collected in grid order.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let bs = cfg.axis(&cfg.b_max);
    let cs = cfg.axis(&cfg.c_max);
    let jobs: Vec<(usize, usize)> = (0..bs.len())
        .flat_map(|bi| (0..cs.len()).map(move |ci| (bi, ci)))
        .collect();
    let run = |&(bi, ci): &(usize, usize)| evaluate_cell(cfg, bi, ci, &bs[bi], &cs[ci]);

    #[cfg(feature = "parallel")]
    let cells: Vec<Result<SweepCell>> = {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let cells: Vec<Result<SweepCell>> = jobs.iter().map(run).collect();

    Ok(SweepResult {
        config: cfg.clone(),
        b_values: bs.iter().map(to_f64).collect(),
        c_values: cs.iter().map(to_f64).collect(),
        cells: cells.into_iter().collect::<Result<_>>()?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionProperty {
    Nlc,
    Slc,
}

impl RegionProperty {
    fn flag(self, cell: &SweepCell) -> bool {
        match self {
            RegionProperty::Nlc => cell.nlc,
            RegionProperty::Slc => cell.slc_no_violation,
        }
    }
}

fn fmt_value(v: &ExactScalar) -> String {
    format!("{:?}", to_f64(v))
}

/// Two-column `b c` table of the upper boundary of a region: for each `b`,
/// the largest `c` whose flag is set.
pub fn render_boundary(result: &SweepResult, property: RegionProperty) -> String {
    let cfg = &result.config;
    let mut out = String::new();
    let what = match property {
        RegionProperty::Nlc => "log-submodular (negative lattice condition), exact",
        RegionProperty::Slc => "strongly log-concave, sampled: no violation found",
    };
    let _ = writeln!(out, "# region: {what}");
    let _ = writeln!(
        out,
        "# grid: b in [0, {}], c in [0, {}], step {}",
        format_exact(&cfg.b_max),
        format_exact(&cfg.c_max),
        format_exact(&cfg.step)
    );
    if property == RegionProperty::Slc {
        let _ = writeln!(
            out,
            "# sampling: {} random points per derivative plus fixed grid, box [{}, {}], relative tolerance {:e}, seed {}",
            cfg.samples, cfg.lo, cfg.hi, cfg.tolerance, cfg.seed
        );
    }
    let _ = writeln!(out, "# each row: b and the largest c at that b with the flag set; rows omitted where no c qualifies");
    let _ = writeln!(out, "# b c");
    let nc = result.c_values.len();
    for row in result.cells.chunks(nc.max(1)) {
        if let Some(top) = row.iter().rev().find(|c| property.flag(c)) {
            let _ = writeln!(out, "{} {}", fmt_value(&top.b), fmt_value(&top.c));
        }
    }
    out
}

pub fn render_csv(result: &SweepResult) -> String {
    let mut out = String::from("b,c,nlc,slc_no_violation\n");
    for cell in &result.cells {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_value(&cell.b),
            fmt_value(&cell.c),
            cell.nlc,
            cell.slc_no_violation
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionFiles {
    pub nlc_boundary: PathBuf,
    pub slc_boundary: PathBuf,
    pub full_csv: PathBuf,
}

/// Writes `nlc_boundary.txt`, `slc_boundary.txt` and `sweep_full.csv`
/// into `dir`, creating it if needed.
pub fn emit_region_tables(result: &SweepResult, dir: &Path) -> Result<RegionFiles> {
    fs::create_dir_all(dir)?;
    let files = RegionFiles {
        nlc_boundary: dir.join("nlc_boundary.txt"),
        slc_boundary: dir.join("slc_boundary.txt"),
        full_csv: dir.join("sweep_full.csv"),
    };
    fs::write(&files.nlc_boundary, render_boundary(result, RegionProperty::Nlc))?;
    fs::write(&files.slc_boundary, render_boundary(result, RegionProperty::Slc))?;
    fs::write(&files.full_csv, render_csv(result))?;
    Ok(files)
}

/// Exact `c` on the closed-form NLC boundary, `b²/4`.
pub fn nlc_boundary_c(b: &ExactScalar) -> ExactScalar {
    b * b / int(4)
}

/// Largest grid multiple of `step` not exceeding `v`.
pub fn floor_to_grid(v: &ExactScalar, step: &ExactScalar) -> ExactScalar {
    let k = (v / step).floor();
    let k = k.numer().div_floor(k.denom());
    step * ExactScalar::from_integer(k)
}
