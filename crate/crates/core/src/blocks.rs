//! Building-block Poincaré polynomials and the two beta correction terms.
//!
//! Every block is a closed form in the genus. The beta terms are kept as
//! rational functions and transcribed summand by summand; only the final
//! assembly in [`crate::moduli`] is required to be polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::One;

use crate::error::{AlgebraError, Result};
use crate::exactpoly::{IntPoly, RatFunc};
use crate::report::{first_coefficient_mismatch, CheckReport};

/// Genera of the two curve components.
///
/// In the formulas `g1` is the genus carrying the stable fixed-determinant
/// factor and `g2` the genus carrying the Kummer stratification. Both must be
/// at least 2; pairs below 3 are outside the reference table and are flagged
/// as such in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenusPair {
    pub g1: u32,
    pub g2: u32,
}

impl GenusPair {
    pub fn new(g1: u32, g2: u32) -> Result<Self> {
        for g in [g1, g2] {
            if g < 2 {
                return Err(AlgebraError::GenusOutOfRange(g));
            }
        }
        Ok(GenusPair { g1, g2 })
    }

    /// Exchange the roles of the two components.
    pub fn swapped(self) -> Self {
        GenusPair {
            g1: self.g2,
            g2: self.g1,
        }
    }

    /// Both genera are at least 3, the range the reference table covers.
    pub fn in_tabulated_range(self) -> bool {
        self.g1 >= 3 && self.g2 >= 3
    }

    /// Complex dimension of each component, `3(g1 + g2) - 3`.
    pub fn dimension(self) -> u32 {
        3 * (self.g1 + self.g2) - 3
    }

    /// Top degree of the Poincaré polynomial of each component.
    pub fn top_degree(self) -> usize {
        2 * self.dimension() as usize
    }
}

impl fmt::Display for GenusPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.g1, self.g2)
    }
}

/// `2^{2g}`, the number of two-torsion line bundles on a genus-`g` curve.
pub fn two_pow_2g(g: u32) -> BigInt {
    BigInt::one() << (2 * g as usize)
}

/// `((1+t^3)^{2g} - t^{2g}(1+t)^{2g}) / ((1-t^2)(1-t^4))`.
///
/// Poincaré polynomial of the moduli of stable rank-2 bundles with fixed odd
/// determinant on a genus-`g` curve. The division is exact for every `g`;
/// an [`AlgebraError::InexactDivision`] here means the numerator is wrong.
pub fn p_moduli_fixed_det(g: u32) -> Result<IntPoly> {
    let one_t = IntPoly::from_i64s(&[1, 1]);
    let one_t3 = IntPoly::from_i64s(&[1, 0, 0, 1]);
    let numerator = &one_t3.pow(2 * g) - &one_t.pow(2 * g).shift(2 * g as usize);
    let denominator = &IntPoly::from_i64s(&[1, 0, -1]) * &IntPoly::from_i64s(&[1, 0, 0, 0, -1]);
    numerator.exact_div(&denominator)
}

/// `(1+t)^{2g}`.
pub fn p_jacobian(g: u32) -> IntPoly {
    IntPoly::from_i64s(&[1, 1]).pow(2 * g)
}

/// `1 + t^2 + ... + t^{2n}`.
pub fn p_projective(n: u32) -> IntPoly {
    IntPoly::new(
        (0..=2 * n as usize)
            .map(|i| BigInt::from(u8::from(i % 2 == 0)))
            .collect(),
    )
}

/// Poincaré polynomial of the canonical desingularization of the Kummer
/// variety of a genus-`g` Jacobian.
///
/// `b_0 = b_{2g} = 1`, odd Betti numbers vanish, and every other even one is
/// `C(2g, i) + 2^{2g}`.
pub fn p_kummer_desing(g: u32) -> IntPoly {
    let top = 2 * g;
    let coeffs = (0..=top)
        .map(|i| {
            if i % 2 == 1 {
                BigInt::ZERO
            } else if i == 0 || i == top {
                BigInt::one()
            } else {
                binomial(BigInt::from(top), BigInt::from(i)) + two_pow_2g(g)
            }
        })
        .collect();
    IntPoly::new(coeffs)
}

/// Source of the building-block polynomials.
///
/// The standard implementation forwards to the closed forms above. Other
/// implementations exist to inject faults into the verification suites.
pub trait BlockSource: Sync {
    fn moduli_fixed_det(&self, g: u32) -> Result<IntPoly> {
        p_moduli_fixed_det(g)
    }
    fn jacobian(&self, g: u32) -> IntPoly {
        p_jacobian(g)
    }
    fn projective(&self, n: u32) -> IntPoly {
        p_projective(n)
    }
    fn kummer_desing(&self, g: u32) -> IntPoly {
        p_kummer_desing(g)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct StandardBlocks;

impl BlockSource for StandardBlocks {}

fn poly(p: IntPoly) -> RatFunc {
    RatFunc::from_poly(p)
}

fn t(k: usize) -> RatFunc {
    RatFunc::t_pow(k as i64)
}

fn frac(num: RatFunc, den: &[i64]) -> RatFunc {
    let den = RatFunc::from_poly(IntPoly::from_i64s(den));
    num.checked_div(&den).expect("fixed nonzero denominator")
}

const ONE_PLUS_T2: [i64; 3] = [1, 0, 1];
const ONE_MINUS_T4: [i64; 5] = [1, 0, 0, 0, -1];

/// The first beta correction term for Kummer-side genus `g2`.
pub fn beta1_tilde(g2: u32) -> RatFunc {
    beta1_tilde_with(g2, &StandardBlocks)
}

pub fn beta1_tilde_with(g2: u32, blocks: &dyn BlockSource) -> RatFunc {
    let g = g2 as usize;
    let c = two_pow_2g(g2);
    let kummer = poly(blocks.kummer_desing(g2));
    let jac = poly(blocks.jacobian(g2));
    let proj_lo = poly(blocks.projective(g2 - 2));
    let proj_hi = poly(blocks.projective(g2 - 1));

    // P(K~) [t^{4g-4} / (1+t^2)]
    let s1 = &kummer * &frac(t(4 * g - 4), &ONE_PLUS_T2);
    // P(J) [t^{4g-2} / (1-t^4) + P(P^{g-2}) t^{2g-2}]
    let s2 = &jac * &(&frac(t(4 * g - 2), &ONE_MINUS_T4) + &(&proj_lo * &t(2 * g - 2)));
    // P(P^{g-1}) [2^{2g} t^{4g-2} / (1+t^2)]
    let s3 = &proj_hi * &frac(t(4 * g - 2), &ONE_PLUS_T2).scale(&c);
    // 2^{2g} [t^{6g-2} / (1-t^4) + P(P^{g-2}) t^{4g-2}]
    let s4 = (&frac(t(6 * g - 2), &ONE_MINUS_T4) + &(&proj_lo * &t(4 * g - 2))).scale(&c);

    &(&s1 + &s2) - &(&s3 + &s4)
}

/// The second beta correction term for Kummer-side genus `g2`.
pub fn beta2_tilde(g2: u32) -> RatFunc {
    beta2_tilde_with(g2, &StandardBlocks)
}

pub fn beta2_tilde_with(g2: u32, blocks: &dyn BlockSource) -> RatFunc {
    let g = g2 as usize;
    let proj_hi = poly(blocks.projective(g2 - 1));
    // 2^{2g} [t^{6g} / (1-t^4) + t^{4g-2} P(P^{g-1})]
    (&frac(t(6 * g), &ONE_MINUS_T4) + &(&t(4 * g - 2) * &proj_hi)).scale(&two_pow_2g(g2))
}

/// Structural checks on the blocks of a single genus.
///
/// The Kummer polynomial is compared against its blow-up description (even
/// part of the Jacobian plus `2^{2g}` copies of `t^2 + ... + t^{2g-2}`),
/// which is assembled here from the Jacobian and projective blocks rather
/// than from the Betti-number formula.
pub fn verify_blocks(g: u32, blocks: &dyn BlockSource) -> CheckReport {
    let mut report = CheckReport::new();
    let top = 6 * g as usize - 6;
    match blocks.moduli_fixed_det(g) {
        Ok(p) => {
            let ok = p.degree() == Some(top) && p.is_palindromic(top);
            report.record(
                "blocks.moduli_fixed_det.duality",
                ok,
                if ok {
                    String::new()
                } else {
                    format!(
                        "degree {:?}, expected palindromic of degree {top}",
                        p.degree()
                    )
                },
            );
            let chi = p.eval_i64(-1);
            report.record(
                "blocks.moduli_fixed_det.euler",
                chi == BigInt::ZERO,
                format!("P(-1) = {chi}"),
            );
        }
        Err(e) => report.record("blocks.moduli_fixed_det.duality", false, e.to_string()),
    }

    let kummer = blocks.kummer_desing(g);
    let jac = blocks.jacobian(g);
    let even_jac = IntPoly::new(
        jac.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c.clone() } else { BigInt::ZERO })
            .collect(),
    );
    // t^2 + ... + t^{2g-2} = t^2 P(P^{g-2})
    let exceptional = blocks.projective(g - 2).shift(2).scale(&two_pow_2g(g));
    let expected = &even_jac + &exceptional;
    let mismatch = first_coefficient_mismatch(&expected, &kummer);
    report.record(
        "blocks.kummer.blowup_oracle",
        mismatch.is_none(),
        mismatch.unwrap_or_default(),
    );
    let ok = kummer.degree() == Some(2 * g as usize) && kummer.is_palindromic(2 * g as usize);
    report.record(
        "blocks.kummer.duality",
        ok,
        if ok {
            String::new()
        } else {
            format!("P = {kummer}")
        },
    );
    report
}
