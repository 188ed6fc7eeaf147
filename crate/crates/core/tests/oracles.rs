//! Independent oracles for the building blocks. Everything here works on
//! plain `i128` coefficient vectors and never touches the crate's kernel, so
//! the frozen values below are checked against a separate arithmetic path.

use nsbetti::blocks::{p_kummer_desing, p_moduli_fixed_det, p_projective};
use nsbetti::IntPoly;

fn mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn power(a: &[i128], n: u32) -> Vec<i128> {
    let mut acc = vec![1];
    for _ in 0..n {
        acc = mul(&acc, a);
    }
    acc
}

fn sub(a: &[i128], b: &[i128]) -> Vec<i128> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) - b.get(i).copied().unwrap_or(0))
        .collect()
}

fn trim(mut v: Vec<i128>) -> Vec<i128> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Schoolbook synthetic division by a monic-up-to-sign divisor; panics on a
/// nonzero remainder.
fn long_divide(n: &[i128], d: &[i128]) -> Vec<i128> {
    let n = trim(n.to_vec());
    let d = trim(d.to_vec());
    let lead = *d.last().unwrap();
    assert!(lead == 1 || lead == -1);
    let mut rem = n.clone();
    let mut quot = vec![0; n.len() - d.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + d.len() - 1] * lead;
        quot[k] = c;
        for (j, dc) in d.iter().enumerate() {
            rem[k + j] -= c * dc;
        }
    }
    assert!(
        rem.iter().all(|&c| c == 0),
        "oracle division left a remainder"
    );
    trim(quot)
}

/// Numerator `(1+t^3)^{2g} - t^{2g}(1+t)^{2g}` expanded by repeated multiplication.
fn moduli_numerator(g: u32) -> Vec<i128> {
    let a = power(&[1, 0, 0, 1], 2 * g);
    let mut b = vec![0; 2 * g as usize];
    b.extend(power(&[1, 1], 2 * g));
    sub(&a, &b)
}

fn moduli_oracle(g: u32) -> Vec<i128> {
    let den = mul(&[1, 0, -1], &[1, 0, 0, 0, -1]);
    long_divide(&moduli_numerator(g), &den)
}

fn as_i128(p: &IntPoly) -> Vec<i128> {
    p.coeffs()
        .iter()
        .map(|c| i128::try_from(c).expect("fits i128"))
        .collect()
}

#[test]
fn genus_two_numerator_expansion() {
    assert_eq!(
        moduli_numerator(2),
        vec![1, 0, 0, 4, -1, -4, 0, -4, -1, 4, 0, 0, 1]
    );
}

#[test]
fn moduli_fixed_det_genus_two_matches_long_division() {
    // frozen from the oracle
    assert_eq!(moduli_oracle(2), vec![1, 0, 1, 4, 1, 0, 1]);
    assert_eq!(
        as_i128(&p_moduli_fixed_det(2).unwrap()),
        vec![1, 0, 1, 4, 1, 0, 1]
    );
}

#[test]
fn moduli_fixed_det_matches_long_division_for_small_genus() {
    for g in 2..=12 {
        assert_eq!(
            as_i128(&p_moduli_fixed_det(g).unwrap()),
            moduli_oracle(g),
            "g = {g}"
        );
    }
}

/// Power series of numerator * (1-t^2)^{-1} (1-t^4)^{-1} truncated at `order`.
fn truncated_series(num: &[i128], order: usize) -> Vec<i128> {
    // 1/(1-t^2) = sum t^{2k}, 1/(1-t^4) = sum t^{4k}
    let geo =
        |step: usize| -> Vec<i128> { (0..=order).map(|i| i128::from(i % step == 0)).collect() };
    let s = mul(&mul(&num[..=order.min(num.len() - 1)], &geo(2)), &geo(4));
    s[..=order].to_vec()
}

#[test]
fn low_order_coefficients_from_series() {
    for g in 2..=12u32 {
        let series = truncated_series(&moduli_numerator(g), 3);
        assert_eq!(series, vec![1, 0, 1, 2 * g as i128], "series g = {g}");
        let p = as_i128(&p_moduli_fixed_det(g).unwrap());
        assert_eq!(&p[..4], &series[..], "g = {g}");
    }
}

#[test]
fn genus_three_block() {
    let p = p_moduli_fixed_det(3).unwrap();
    assert_eq!(p.degree(), Some(12));
    assert_eq!(as_i128(&p)[3], 6);
    assert!(p.is_palindromic(12));
}

/// Kummer desingularization from the blow-up picture: the even cohomology of
/// the Jacobian survives the inversion quotient, and each of the 2^{2g}
/// two-torsion points is replaced by a P^{g-1}, contributing 2^{2g} to every
/// even degree strictly between 0 and 2g.
fn kummer_oracle(g: u32) -> Vec<i128> {
    let jac = power(&[1, 1], 2 * g);
    let points = 1i128 << (2 * g);
    (0..=2 * g as usize)
        .map(|i| {
            if i % 2 == 1 {
                0
            } else if i == 0 || i == 2 * g as usize {
                jac[i]
            } else {
                jac[i] + points
            }
        })
        .collect()
}

#[test]
fn kummer_values() {
    assert_eq!(kummer_oracle(2), vec![1, 0, 22, 0, 1]);
    assert_eq!(kummer_oracle(3), vec![1, 0, 79, 0, 79, 0, 1]);
    for g in 2..=12 {
        assert_eq!(as_i128(&p_kummer_desing(g)), kummer_oracle(g), "g = {g}");
    }
}

#[test]
fn projective_values() {
    assert_eq!(as_i128(&p_projective(0)), vec![1]);
    assert_eq!(as_i128(&p_projective(1)), vec![1, 0, 1]);
    assert_eq!(as_i128(&p_projective(4)), vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
}
