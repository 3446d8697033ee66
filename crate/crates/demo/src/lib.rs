//! Browser front end for exploring the `(b, c)` family: a region map, a
//! per-cell verdict inspector, and a log-Hessian spectrum probe.
//!
//! Build with `wasm-pack build crates/demo --target web --out-dir www/pkg`
//! and serve `crates/demo/www/`.

use serde_json::{json, Value};
use slc_core::calculus::log_hessian;
use slc_core::checkers::{check_nlc, check_slc, Certificate, SampleConfig, Verdict, Witness};
use slc_core::family::{make_family, sweep, FamilyParams, SweepConfig};
use slc_core::linalg::eigen_sym;
use slc_core::poly::subset_label;
use slc_core::scalar::{format_exact, parse_exact};
use slc_core::{ExactScalar, PositivePoint, SubsetPoly};
use wasm_bindgen::prelude::*;

/// Slider values arrive as floats; they are read as decimals with six
/// fractional digits so that grid points such as 0.05 stay exact.
fn exact_param(v: f64) -> Result<ExactScalar, String> {
    if !v.is_finite() {
        return Err(format!("parameter {v} is not finite"));
    }
    parse_exact(&format!("{v:.6}")).map_err(|e| e.to_string())
}

fn family(b: f64, c: f64) -> Result<SubsetPoly, String> {
    let params = FamilyParams::new(exact_param(b)?, exact_param(c)?).map_err(|e| e.to_string())?;
    Ok(make_family(&params))
}

fn verdict_summary(v: &Verdict) -> Value {
    match v {
        Verdict::Holds(Certificate::Dominance(_)) => json!({"kind": "holds", "how": "dominance certificate"}),
        Verdict::Holds(Certificate::AffineForm) => json!({"kind": "holds", "how": "affine form"}),
        Verdict::Holds(Certificate::Trivial(r)) => json!({"kind": "holds", "how": format!("trivial ({r:?})")}),
        Verdict::Holds(Certificate::NlcExhaustive { .. }) => json!({"kind": "holds", "how": "exhaustive"}),
        Verdict::Violated(Witness::Nlc(w)) => json!({
            "kind": "violated",
            "how": format!("S = {}, T = {}: {} < {}", subset_label(w.s), subset_label(w.t),
                format_exact(&w.lhs), format_exact(&w.rhs)),
        }),
        Verdict::Violated(Witness::Point(w)) => json!({
            "kind": "violated",
            "how": format!("at {:?}, eigenvalue {:.3e}", w.point.coords(), w.max_eigenvalue),
        }),
        Verdict::NoViolationFound(s) => json!({
            "kind": "no_violation_found",
            "how": format!("{} points", s.points_tested),
        }),
    }
}

/// NLC verdict and per-derivative SLC verdicts for one family member, as JSON.
pub fn family_cell_report(b: f64, c: f64, samples: usize, seed: u64) -> Result<String, String> {
    let g = family(b, c)?;
    let nlc = check_nlc(&g).map_err(|e| e.to_string())?;
    let cfg = SampleConfig {
        points: samples,
        seed,
        ..SampleConfig::default()
    };
    let slc = check_slc(&g, &cfg).map_err(|e| e.to_string())?;
    let derivatives: Vec<Value> = slc
        .entries
        .iter()
        .map(|(&a, v)| {
            let mut s = verdict_summary(v);
            s["derivative"] = json!(subset_label(a));
            s
        })
        .collect();
    Ok(json!({
        "polynomial": g.to_string(),
        "nlc": verdict_summary(&nlc),
        "slc": slc.aggregate(),
        "derivatives": derivatives,
    })
    .to_string())
}

/// Sweep over `[0, b_max] × [0, c_max]`. Flags per cell, row-major in `b`:
/// bit 0 = log-submodular, bit 1 = no SLC violation found.
pub fn region_grid_report(
    b_max: f64,
    c_max: f64,
    step: f64,
    samples: usize,
    seed: u64,
) -> Result<String, String> {
    let cfg = SweepConfig {
        b_max: exact_param(b_max)?,
        c_max: exact_param(c_max)?,
        step: exact_param(step)?,
        samples,
        seed,
        ..SweepConfig::default()
    };
    let r = sweep(&cfg).map_err(|e| e.to_string())?;
    let flags: Vec<u8> = r
        .cells
        .iter()
        .map(|c| c.nlc as u8 | (c.slc_no_violation as u8) << 1)
        .collect();
    Ok(json!({
        "b_values": r.b_values,
        "c_values": r.c_values,
        "flags": flags,
        "summary": r.summary(),
    })
    .to_string())
}

/// Ascending eigenvalues of `∇² log g` at `(x, y, z)` for family member `(b, c)`.
pub fn log_hessian_eigenvalues(b: f64, c: f64, x: f64, y: f64, z: f64) -> Result<Vec<f64>, String> {
    let g = family(b, c)?;
    let point = PositivePoint::new(vec![x, y, z]).map_err(|e| e.to_string())?;
    let h = log_hessian(&g, &point).map_err(|e| e.to_string())?;
    Ok(eigen_sym(&h).eigenvalues)
}

#[wasm_bindgen]
pub fn family_cell(b: f64, c: f64, samples: u32, seed: u32) -> Result<String, JsError> {
    family_cell_report(b, c, samples as usize, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn region_grid(b_max: f64, c_max: f64, step: f64, samples: u32, seed: u32) -> Result<String, JsError> {
    region_grid_report(b_max, c_max, step, samples as usize, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn log_hessian_spectrum(b: f64, c: f64, x: f64, y: f64, z: f64) -> Result<Vec<f64>, JsError> {
    log_hessian_eigenvalues(b, c, x, y, z).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_cell() {
        let v: Value = serde_json::from_str(&family_cell_report(3.0, 3.0, 200, 0).unwrap()).unwrap();
        assert_eq!(v["nlc"]["kind"], "violated");
        assert_eq!(v["slc"], "holds");
        assert_eq!(v["derivatives"].as_array().unwrap().len(), 8);
    }

    #[test]
    fn coarse_grid_flags() {
        let v: Value = serde_json::from_str(&region_grid_report(4.0, 4.0, 1.0, 50, 0).unwrap()).unwrap();
        let flags = v["flags"].as_array().unwrap();
        assert_eq!(flags.len(), 25);
        // (b, c) = (3, 3): SLC but not NLC
        assert_eq!(flags[3 * 5 + 3], 2);
        // (b, c) = (2, 1): both
        assert_eq!(flags[2 * 5 + 1], 3);
        assert_eq!(v["summary"]["containment"], true);
    }

    #[test]
    fn spectrum_is_negative_for_counterexample() {
        let e = log_hessian_eigenvalues(3.0, 3.0, 0.2, 5.0, 1.0).unwrap();
        assert_eq!(e.len(), 3);
        assert!(e.iter().all(|&v| v < 0.0));
        // 1 + xy-like member with b = 0 has a positive direction near the origin
        let e = log_hessian_eigenvalues(0.0, 3.0, 0.1, 0.1, 0.1).unwrap();
        assert!(e[2] > 0.0);
    }

    #[test]
    fn bad_inputs_are_errors() {
        assert!(family_cell_report(-1.0, 0.0, 10, 0).is_err());
        assert!(log_hessian_eigenvalues(1.0, 1.0, 0.0, 1.0, 1.0).is_err());
        assert!(region_grid_report(4.0, 4.0, 0.0, 10, 0).is_err());
        assert!(exact_param(f64::NAN).is_err());
        assert_eq!(exact_param(0.05).unwrap(), parse_exact("1/20").unwrap());
    }
}
