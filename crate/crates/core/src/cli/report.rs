//! Text and JSON renderings of verdicts.

use serde_json::{json, Value};

use crate::checkers::{Certificate, SlcReport, TrivialReason, Verdict, Witness};
use crate::poly::{subset_label, SubsetPoly};
use crate::repro::over_common_denominator;
use crate::scalar::format_exact;

pub fn verdict_lines(v: &Verdict) -> Vec<String> {
    match v {
        Verdict::Holds(c) => certificate_lines(c),
        Verdict::Violated(Witness::Nlc(w)) => {
            let (l, r) = over_common_denominator(&w.lhs, &w.rhs);
            vec![
                format!("witness: S = {}, T = {}", subset_label(w.s), subset_label(w.t)),
                format!("  p(S)p(T)     = {}", format_exact(&w.lhs)),
                format!("  p(S∪T)p(S∩T) = {}", format_exact(&w.rhs)),
                format!("  {l} < {r}"),
            ]
        }
        Verdict::Violated(Witness::Point(w)) => vec![
            format!(
                "witness: derivative {} at x = {:?}",
                subset_label(w.derivative_subset),
                w.point.coords()
            ),
            format!(
                "  largest log-Hessian eigenvalue {:.6e} > threshold {:.3e}",
                w.max_eigenvalue, w.threshold
            ),
        ],
        Verdict::NoViolationFound(s) => vec![format!(
            "searched {} points, tolerance {:e}, seed {}",
            s.points_tested, s.tolerance, s.seed
        )],
    }
}

fn certificate_lines(c: &Certificate) -> Vec<String> {
    match c {
        Certificate::NlcExhaustive { pairs_checked } => {
            vec![format!("certificate: exhaustive exact comparison of {pairs_checked} ordered pairs")]
        }
        Certificate::Trivial(reason) => {
            let what = match reason {
                TrivialReason::Zero => "zero polynomial",
                TrivialReason::Constant => "constant",
                TrivialReason::Monomial => "single monomial",
            };
            vec![format!("certificate: trivially log-concave ({what})")]
        }
        Certificate::AffineForm => {
            vec!["certificate: affine form with nonnegative coefficients".into()]
        }
        Certificate::Dominance(d) => {
            let mut lines = vec!["certificate: strict diagonal dominance of M = ∇g∇gᵀ − g∇²g".into()];
            lines.extend(
                d.gaps
                    .iter()
                    .enumerate()
                    .map(|(i, g)| format!("  row {} gap: {g}", i + 1)),
            );
            lines
        }
    }
}

pub fn slc_lines(report: &SlcReport) -> Vec<String> {
    let mut lines = Vec::new();
    for (&a, v) in &report.entries {
        lines.push(format!("derivative {}: {}", subset_label(a), v.kind()));
        lines.extend(verdict_lines(v).into_iter().map(|l| format!("  {l}")));
    }
    lines
}

pub fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Holds(c) => json!({ "verdict": "holds", "certificate": certificate_json(c) }),
        Verdict::Violated(Witness::Nlc(w)) => json!({
            "verdict": "violated",
            "witness": {
                "kind": "nlc",
                "S": subset_label(w.s),
                "T": subset_label(w.t),
                "lhs": format_exact(&w.lhs),
                "rhs": format_exact(&w.rhs),
            }
        }),
        Verdict::Violated(Witness::Point(w)) => json!({
            "verdict": "violated",
            "witness": {
                "kind": "point",
                "derivative": subset_label(w.derivative_subset),
                "point": w.point.coords(),
                "max_eigenvalue": w.max_eigenvalue,
                "threshold": w.threshold,
            }
        }),
        Verdict::NoViolationFound(s) => json!({ "verdict": "no_violation_found", "stats": s }),
    }
}

fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::NlcExhaustive { pairs_checked } => {
            json!({ "kind": "exhaustive", "pairs_checked": pairs_checked })
        }
        Certificate::Trivial(r) => json!({ "kind": "trivial", "reason": r }),
        Certificate::AffineForm => json!({ "kind": "affine_form" }),
        Certificate::Dominance(d) => json!({
            "kind": "dominance",
            "row_gaps": d.gaps.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "m": d.m.to_rows().iter()
                .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
    }
}

pub fn slc_json(report: &SlcReport) -> Value {
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|(&a, v)| {
            let mut e = verdict_json(v);
            e["derivative"] = Value::String(subset_label(a));
            e
        })
        .collect();
    json!({ "aggregate": report.aggregate(), "entries": entries })
}

pub fn input_line(p: &SubsetPoly) -> String {
    format!(
        "input: n = {}, {} nonzero weights, sum = {}",
        p.n(),
        p.support_size(),
        format_exact(&p.sum())
    )
}
