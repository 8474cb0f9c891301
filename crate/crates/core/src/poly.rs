//! Small univariate polynomial toolkit over [`Scalar`].
//!
//! Coefficient vectors are dense and ascending: p = [c0, c1, ..., cd]
//! stands for c0 + c1 x + ... + cd x^d. Used for the polynomiality
//! checks, where a determinant entry must divide cleanly by (x - r).

use crate::scalar::{Mode, Scalar};

pub fn eval(p: &[Scalar], x: &Scalar) -> Scalar {
    let mode = x.mode();
    let mut acc = mode.zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

pub fn mul(a: &[Scalar], b: &[Scalar], mode: Mode) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![mode.zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = ai * bj;
            let cur = out[i + j].clone();
            out[i + j] = &cur + &t;
        }
    }
    out
}

pub fn sub(a: &[Scalar], b: &[Scalar], mode: Mode) -> Vec<Scalar> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| mode.zero());
            let y = b.get(i).cloned().unwrap_or_else(|| mode.zero());
            &x - &y
        })
        .collect()
}

pub fn scale(p: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    p.iter().map(|c| c * s).collect()
}

/// Monic product prod_i (x - r_i).
pub fn from_roots(mode: Mode, roots: &[Scalar]) -> Vec<Scalar> {
    let mut p = vec![mode.one()];
    for r in roots {
        p = mul(&p, &[-r.clone(), mode.one()], mode);
    }
    p
}

/// Synthetic division by (x - r): returns (quotient, remainder), with
/// remainder = p(r).
pub fn div_linear(p: &[Scalar], r: &Scalar, mode: Mode) -> (Vec<Scalar>, Scalar) {
    if p.is_empty() {
        return (Vec::new(), mode.zero());
    }
    let d = p.len() - 1;
    let mut q = vec![mode.zero(); d];
    let mut carry = mode.zero();
    for k in (0..=d).rev() {
        let coeff = &p[k] + &(&carry * r);
        if k == 0 {
            return (q, coeff);
        }
        q[k - 1] = coeff.clone();
        carry = coeff;
    }
    unreachable!()
}
