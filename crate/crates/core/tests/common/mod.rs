//! Test-only oracles and generators. Nothing here calls the derivative,
//! Hessian or checker code it is used to validate.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use slc_core::scalar::{from_f64, int, to_f64};
use slc_core::{ExactScalar, SubsetPoly};

pub fn counterexample() -> SubsetPoly {
    let mut c = vec![int(3); 8];
    c[0] = int(4);
    c[7] = int(0);
    SubsetPoly::from_coeffs(3, c).unwrap().normalize().unwrap()
}

/// `p(S)` straight from the coefficient array.
pub fn coeff(p: &SubsetPoly, s: usize) -> &ExactScalar {
    &p.coeffs()[s]
}

/// Exact value `Σ_S p(S) ∏_{i∈S} x_i`, written independently of the crate's
/// evaluators.
pub fn exact_value(p: &SubsetPoly, x: &[ExactScalar]) -> ExactScalar {
    let mut total = ExactScalar::zero();
    for s in 0..p.coeffs().len() {
        let mut term = coeff(p, s).clone();
        for (i, xi) in x.iter().enumerate() {
            if s >> i & 1 == 1 {
                term *= xi;
            }
        }
        total += term;
    }
    total
}

pub fn float_value(p: &SubsetPoly, x: &[f64]) -> f64 {
    (0..p.coeffs().len())
        .map(|s| {
            let m: f64 = (0..x.len()).filter(|i| s >> i & 1 == 1).map(|i| x[i]).product();
            to_f64(coeff(p, s)) * m
        })
        .sum()
}

/// Central difference of `p` in coordinate `i`.
pub fn fd_partial(p: &SubsetPoly, x: &[f64], i: usize, h: f64) -> f64 {
    let mut a = x.to_vec();
    let mut b = x.to_vec();
    a[i] += h;
    b[i] -= h;
    (float_value(p, &a) - float_value(p, &b)) / (2.0 * h)
}

/// Central-difference Hessian of `log p` with step `h`. Each difference
/// `log p(x + δ) − log p(x)` is formed as `ln_1p` of an exactly computed
/// relative change, so round-off stays far below the truncation error.
pub fn fd_log_hessian(p: &SubsetPoly, x: &[f64], h: &ExactScalar) -> Vec<Vec<f64>> {
    let n = x.len();
    let xq: Vec<ExactScalar> = x.iter().map(|&v| from_f64(v).unwrap()).collect();
    let g0 = exact_value(p, &xq);
    let log_ratio = |shift: &[(usize, i64)]| -> f64 {
        let mut y = xq.clone();
        for &(i, sgn) in shift {
            y[i] += h * int(sgn);
        }
        let rel = (exact_value(p, &y) - &g0) / &g0;
        to_f64(&rel).ln_1p()
    };
    let hf = to_f64(h);
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        out[i][i] = (log_ratio(&[(i, 1)]) + log_ratio(&[(i, -1)])) / (hf * hf);
        for j in i + 1..n {
            let v = (log_ratio(&[(i, 1), (j, 1)]) - log_ratio(&[(i, 1), (j, -1)])
                - log_ratio(&[(i, -1), (j, 1)])
                + log_ratio(&[(i, -1), (j, -1)]))
                / (4.0 * hf * hf);
            out[i][j] = v;
            out[j][i] = v;
        }
    }
    out
}

/// `max |a − b| / max |b|` over all entries.
pub fn matrix_rel_err(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let scale = b.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let diff = a
        .iter()
        .flatten()
        .zip(b.iter().flatten())
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// All `4^n` ordered pairs, no pruning; returns the first `(S, T)` in
/// lexicographic order with `p(S)p(T) < p(S∪T)p(S∩T)`.
pub fn brute_force_nlc(p: &SubsetPoly) -> Option<(u32, u32)> {
    let size = p.coeffs().len();
    for s in 0..size {
        for t in 0..size {
            let lhs = coeff(p, s) * coeff(p, t);
            let rhs = coeff(p, s | t) * coeff(p, s & t);
            if lhs < rhs {
                return Some((s as u32, t as u32));
            }
        }
    }
    None
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<ExactScalar>]) -> ExactScalar {
    let n = m.len();
    if n == 0 {
        return ExactScalar::one();
    }
    let mut total = ExactScalar::zero();
    for j in 0..n {
        let minor: Vec<Vec<ExactScalar>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn small_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> ExactScalar {
    BigRational::new(
        BigInt::from(rng.gen_range(0..=max_num)),
        BigInt::from(rng.gen_range(1..=max_den)),
    )
}

/// Random nonnegative multi-affine polynomial; about a quarter of the
/// coefficients are zero.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> SubsetPoly {
    let coeffs = (0..1usize << n)
        .map(|_| {
            if rng.gen_bool(0.25) {
                int(0)
            } else {
                small_rational(rng, 20, 7)
            }
        })
        .collect();
    SubsetPoly::from_coeffs(n, coeffs).unwrap()
}

/// Random nonnegative polynomial with every coefficient strictly positive.
pub fn random_dense_poly(rng: &mut ChaCha8Rng, n: usize) -> SubsetPoly {
    let coeffs = (0..1usize << n)
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(1..=20)), BigInt::from(rng.gen_range(1..=7))))
        .collect();
    SubsetPoly::from_coeffs(n, coeffs).unwrap()
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (lo.ln() + rng.gen::<f64>() * (hi.ln() - lo.ln())).exp()
}

/// Polynomial whose dominance certificate usually exists: a product of
/// positive affine factors plus a small positive perturbation.
pub fn near_product_poly(rng: &mut ChaCha8Rng, n: usize) -> SubsetPoly {
    let factors: Vec<(ExactScalar, ExactScalar)> = (0..n)
        .map(|_| (small_rational(rng, 9, 3) + int(1), small_rational(rng, 9, 3) + int(1)))
        .collect();
    let coeffs = (0..1usize << n)
        .map(|s| {
            let prod: ExactScalar = (0..n)
                .map(|i| if s >> i & 1 == 1 { factors[i].1.clone() } else { factors[i].0.clone() })
                .product();
            prod + small_rational(rng, 1, 8)
        })
        .collect();
    SubsetPoly::from_coeffs(n, coeffs).unwrap()
}
