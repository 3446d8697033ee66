//! Reproduction of the three-variable counterexample: a distribution that is
//! strongly log-concave but not log-submodular.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use crate::calculus::{log_hessian, symbolic_m};
use crate::checkers::{
    certify_log_concavity_dominance, check_nlc, check_slc, Certificate, SampleConfig, Verdict,
    VerdictKind, Witness,
};
use crate::family::{make_family, FamilyParams};
use crate::linalg::{eigen_sym, SymMatrix, SymMatrixS};
use crate::poly::{subset_label, PositivePoint, SubsetPoly};
use crate::scalar::{format_exact, int, ratio, ExactScalar};
use crate::sparse::SparsePoly;

/// `4 + 3(x+y+z) + 3(xy+xz+yz)`, before normalisation.
pub fn counterexample_body() -> SubsetPoly {
    SubsetPoly::from_terms(
        3,
        [(0, int(4))]
            .into_iter()
            .chain([1, 2, 4, 3, 5, 6].map(|s| (s, int(3)))),
    )
    .expect("valid n = 3 terms")
}

/// The body divided by 22.
pub fn counterexample() -> SubsetPoly {
    counterexample_body().normalize().expect("positive sum")
}

fn vars() -> [SparsePoly; 3] {
    [0, 1, 2].map(|i| SparsePoly::var(3, i))
}

fn k(v: i64) -> SparsePoly {
    SparsePoly::constant(3, int(v))
}

/// Reference matrix `R(x, y, z)`:
/// diagonal `3(y+z+1)²` etc., off-diagonal `3z² + 3z − 1` etc.
pub fn reference_r_matrix() -> SymMatrixS {
    let v = vars();
    SymMatrix::from_fn(3, |i, j| {
        if i == j {
            let s = (0..3)
                .filter(|&t| t != i)
                .fold(k(1), |acc, t| &acc + &v[t]);
            &(&s * &s) * &int(3)
        } else {
            let w = &v[3 - i - j];
            &(&(&(w * w) * &int(3)) + &(w * &int(3))) - &k(1)
        }
    })
}

/// `6yz + 3y + 3z + 1`: the row-1 slack in the dominance argument for `R`.
pub fn reference_row1_gap() -> SparsePoly {
    let [_, y, z] = vars();
    &(&(&(&(&y * &z) * &int(6)) + &(&y * &int(3))) + &(&z * &int(3))) + &k(1)
}

/// `W = [[0,0,0],[0,1,1],[0,1,1]]` recovered from the log-Hessian of
/// `∂_x g` at `(x, y, z)` as `−(y+z+1)² · ∇² log ∂_x g`.
pub fn w_matrix_at(point: &PositivePoint) -> crate::error::Result<crate::linalg::SymMatrixF> {
    let dx = counterexample().derivative(0)?;
    let h = log_hessian(&dx, point)?;
    let [_, y, z] = [point.coords()[0], point.coords()[1], point.coords()[2]];
    Ok(h.scale(-(y + z + 1.0).powi(2)))
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproReport {
    pub checks: Vec<ReproCheck>,
    /// Positive `k` with `M = k·R`, when it exists.
    pub m_over_r: Option<String>,
    pub row_gaps: Vec<String>,
    pub w_eigenvalues: Vec<Vec<f64>>,
}

impl ReproReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Writes two rationals over their least common denominator, e.g.
/// `9/484` and `12/484`.
pub fn over_common_denominator(a: &ExactScalar, b: &ExactScalar) -> (String, String) {
    let den: BigInt = a.denom().lcm(b.denom());
    let f = |v: &ExactScalar| format!("{}/{}", v.numer() * (&den / v.denom()), den);
    (f(a), f(b))
}

/// Points at which the W-matrix eigenvalues are reported.
pub const W_POINTS: [[f64; 3]; 4] = [
    [1.0, 1.0, 1.0],
    [1.0, 0.5, 2.0],
    [1.0, 0.01, 100.0],
    [3.0, 7.0, 0.2],
];

pub fn reproduce_counterexample(cfg: &SampleConfig) -> ReproReport {
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        checks.push(ReproCheck {
            name: name.to_string(),
            passed,
            detail,
        })
    };

    let g = counterexample();
    let family = make_family(&FamilyParams::new(int(3), int(3)).expect("nonnegative"));
    check(
        "family member b = c = 3 equals the normalized polynomial",
        family == g,
        format!("g = {g}"),
    );

    match check_nlc(&g) {
        Ok(Verdict::Violated(Witness::Nlc(w))) => {
            let (l, r) = over_common_denominator(&w.lhs, &w.rhs);
            let ok = (w.s, w.t) == (0b001, 0b010) && w.lhs == ratio(9, 484) && w.rhs == ratio(12, 484);
            check(
                "log-submodularity fails at S = {1}, T = {2}",
                ok,
                format!(
                    "p({})p({}) = {} · {} = {l} < {r} = {} · {} = p({})p({})",
                    subset_label(w.s),
                    subset_label(w.t),
                    format_exact(g.coeff(w.s)),
                    format_exact(g.coeff(w.t)),
                    format_exact(g.coeff(w.s | w.t)),
                    format_exact(g.coeff(w.s & w.t)),
                    subset_label(w.s | w.t),
                    subset_label(w.s & w.t),
                ),
            );
        }
        other => check(
            "log-submodularity fails at S = {1}, T = {2}",
            false,
            format!("unexpected NLC result: {other:?}"),
        ),
    }

    let m = symbolic_m(&g);
    let r = reference_r_matrix();
    let scalar = m.get(0, 0).ratio_to(r.get(0, 0));
    let proportional = scalar.as_ref().is_some_and(|s| {
        s.is_positive() && (0..3).all(|i| (0..3).all(|j| m.get(i, j) == &r.get(i, j).scale(s)))
    });
    check(
        "M = ∇g∇gᵀ − g∇²g is a positive multiple of R",
        proportional,
        match &scalar {
            Some(s) => format!("M = {}·R", format_exact(s)),
            None => "no common scalar".into(),
        },
    );
    let m_over_r = scalar.as_ref().filter(|_| proportional).map(format_exact);

    let cert = certify_log_concavity_dominance(&g);
    let mut row_gaps = Vec::new();
    match (&cert, scalar.as_ref().filter(|_| proportional)) {
        (Some(cert), Some(s)) => {
            row_gaps = cert.gaps.iter().map(|p| p.to_string()).collect();
            let want = reference_row1_gap().scale(s);
            check(
                "dominance certificate with row-1 gap k·(6yz + 3y + 3z + 1)",
                cert.is_valid() && cert.gaps[0] == want,
                format!("D1 = {} = {}·({})", cert.gaps[0], format_exact(s), reference_row1_gap()),
            );
        }
        _ => check(
            "dominance certificate with row-1 gap k·(6yz + 3y + 3z + 1)",
            false,
            "certificate not found".into(),
        ),
    }

    match check_slc(&g, cfg) {
        Ok(report) => {
            let empty_is_certified = matches!(
                report.get(0),
                Some(Verdict::Holds(Certificate::Dominance(_)))
            );
            let summary: Vec<String> = report
                .entries
                .iter()
                .map(|(a, v)| format!("{}: {}", subset_label(*a), v.kind()))
                .collect();
            check(
                "every derivative is log-concave",
                report.aggregate() != VerdictKind::Violated && empty_is_certified,
                summary.join(", "),
            );
        }
        Err(e) => check("every derivative is log-concave", false, e.to_string()),
    }

    let mut w_eigenvalues = Vec::new();
    let mut w_ok = true;
    for p in W_POINTS {
        let point = PositivePoint::new(p.to_vec()).expect("positive");
        match w_matrix_at(&point) {
            Ok(w) => {
                let e = eigen_sym(&w).eigenvalues;
                w_ok &= e.iter().zip([0.0, 0.0, 2.0]).all(|(a, b)| (a - b).abs() < 1e-9);
                w_eigenvalues.push(e);
            }
            Err(_) => w_ok = false,
        }
    }
    check(
        "∇² log ∂_x g = −W/(y+z+1)² with eig(W) = {0, 0, 2}",
        w_ok,
        w_eigenvalues
            .iter()
            .zip(W_POINTS)
            .map(|(e, p)| {
                let e: Vec<String> = e
                    .iter()
                    .map(|&v| format!("{:.12}", if v.abs() < 5e-13 { 0.0 } else { v }))
                    .collect();
                format!("at {p:?}: [{}]", e.join(", "))
            })
            .collect::<Vec<_>>()
            .join("; "),
    );

    if let Some(s) = scalar.as_ref().filter(|_| proportional) {
        // ∇² log g = −M/g² = −k·R/g²; confirm numerically at one point
        let x = PositivePoint::new(vec![0.3, 1.7, 4.0]).expect("positive");
        let h = log_hessian(&g, &x).expect("g > 0");
        let gx = g.eval(&x).expect("dims");
        let rx = r.eval(x.coords()).expect("dims");
        let kf = crate::scalar::to_f64(s);
        let err = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| (h.get(i, j) * gx * gx + kf * rx.get(i, j)).abs())
            .fold(0.0, f64::max);
        check(
            "log-Hessian prefactor",
            err < 1e-9 * (1.0 + rx.max_norm() * kf),
            format!("∇² log g = −({})·R/g², max residual {err:.2e}", format_exact(s)),
        );
    }

    ReproReport {
        checks,
        m_over_r,
        row_gaps,
        w_eigenvalues,
    }
}
