//! Poincaré polynomials of the two components, the intersection Poincaré
//! polynomial, and Betti tables derived from them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::blocks::{
    beta1_tilde_with, beta2_tilde_with, two_pow_2g, BlockSource, GenusPair, StandardBlocks,
};
use crate::error::{AlgebraError, Result};
use crate::exactpoly::{IntPoly, RatFunc};
use crate::report::CheckReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    M12,
    M21,
    /// The whole (reducible) moduli space, via intersection homology with top perversity.
    IntersectionM,
}

impl Component {
    pub const ALL: [Component; 3] = [Component::M12, Component::M21, Component::IntersectionM];

    pub fn as_str(self) -> &'static str {
        match self {
            Component::M12 => "m12",
            Component::M21 => "m21",
            Component::IntersectionM => "intersection",
        }
    }

    /// Number of smooth components the polynomial counts (1 or 2).
    fn multiplicity(self) -> u32 {
        match self {
            Component::IntersectionM => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Component {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "m12" | "M12" => Ok(Component::M12),
            "m21" | "M21" => Ok(Component::M21),
            "intersection" | "IntersectionM" => Ok(Component::IntersectionM),
            _ => Err(format!("unknown component {s:?}")),
        }
    }
}

fn poly(p: IntPoly) -> RatFunc {
    RatFunc::from_poly(p)
}

fn t(k: usize) -> RatFunc {
    RatFunc::t_pow(k as i64)
}

fn ip(c: &[i64]) -> RatFunc {
    RatFunc::from_poly(IntPoly::from_i64s(c))
}

/// The Poincaré polynomial of `M12` as a rational function, before the final
/// polynomial check. Each summand follows one line of the closed formula.
pub fn assemble_m12(gp: GenusPair, blocks: &dyn BlockSource) -> Result<RatFunc> {
    let g = gp.g2 as usize;
    let c = two_pow_2g(gp.g2);
    let m1 = poly(blocks.moduli_fixed_det(gp.g1)?);
    let ml = poly(blocks.moduli_fixed_det(gp.g2)?);
    let m2_minus1 = ml.clone();
    let jac = poly(blocks.jacobian(gp.g2));
    let kummer = poly(blocks.kummer_desing(gp.g2));
    let proj_lo = poly(blocks.projective(gp.g2 - 2));
    let proj_hi = poly(blocks.projective(gp.g2 - 1));
    let one_minus_t2 = ip(&[1, 0, -1]);
    let one_minus_t4 = ip(&[1, 0, 0, 0, -1]);
    let betas = &beta1_tilde_with(gp.g2, blocks) + &beta2_tilde_with(gp.g2, blocks);

    // P(M1)(1-t^4)[P(M_L(2,1)) + P(J2){t^{2g2}/(1-t^4)} - (b1~ + b2~)]
    let stable = {
        let jac_term = &jac * &t(2 * g).checked_div(&one_minus_t4)?;
        &(&m1 * &one_minus_t4) * &(&(&ml + &jac_term) - &betas)
    };
    // P(M1) 2^{2g2} [t^{6g2} + t^{4g2-2}(1-t^4) P(P^{g2-1})]
    let k0 = (&m1 * &(&t(6 * g) + &(&(&t(4 * g - 2) * &one_minus_t4) * &proj_hi))).scale(&c);
    // P(M1)[P(K~) t^{4g2-4}(1-t^2) + P(J2)[t^{4g2-2} + t^{2g2-2}(1-t^4) P(P^{g2-2})]
    //       - 2^{2g2}[t^{6g2-2} + t^{4g2-2}(1-t^4) P(P^{g2-2}) + t^{4g2-2}(1-t^2) P(P^{g2-1})]]
    let kummer_block = {
        let a = &(&kummer * &t(4 * g - 4)) * &one_minus_t2;
        let b = &jac * &(&t(4 * g - 2) + &(&(&t(2 * g - 2) * &one_minus_t4) * &proj_lo));
        let cc = (&(&t(6 * g - 2) + &(&(&t(4 * g - 2) * &one_minus_t4) * &proj_lo))
            + &(&(&t(4 * g - 2) * &one_minus_t2) * &proj_hi))
            .scale(&c);
        &m1 * &(&(&a + &b) - &cc)
    };
    // P(M1) P(M2(-1)) t^2 (1 + 2t^2 + t^4)
    let divisor = &(&m1 * &m2_minus1) * &ip(&[0, 0, 1, 0, 2, 0, 1]);

    Ok(&(&(&stable + &k0) + &kummer_block) + &divisor)
}

pub fn poincare_m12(gp: GenusPair) -> Result<IntPoly> {
    poincare_m12_with(gp, &StandardBlocks)
}

pub fn poincare_m12_with(gp: GenusPair, blocks: &dyn BlockSource) -> Result<IntPoly> {
    assemble_m12(gp, blocks)?.to_poly()
}

/// `M21` is `M12` with the roles of the two curve components exchanged.
pub fn poincare_m21(gp: GenusPair) -> Result<IntPoly> {
    poincare_m21_with(gp, &StandardBlocks)
}

pub fn poincare_m21_with(gp: GenusPair, blocks: &dyn BlockSource) -> Result<IntPoly> {
    poincare_m12_with(gp.swapped(), blocks)
}

/// Intersection Poincaré polynomial (top perversity): the normalization is
/// the disjoint union of the two smooth components.
pub fn intersection_poincare(gp: GenusPair) -> Result<IntPoly> {
    intersection_poincare_with(gp, &StandardBlocks)
}

pub fn intersection_poincare_with(gp: GenusPair, blocks: &dyn BlockSource) -> Result<IntPoly> {
    Ok(&poincare_m12_with(gp, blocks)? + &poincare_m21_with(gp, blocks)?)
}

pub fn poincare(gp: GenusPair, component: Component) -> Result<IntPoly> {
    poincare_with(gp, component, &StandardBlocks)
}

pub fn poincare_with(
    gp: GenusPair,
    component: Component,
    blocks: &dyn BlockSource,
) -> Result<IntPoly> {
    match component {
        Component::M12 => poincare_m12_with(gp, blocks),
        Component::M21 => poincare_m21_with(gp, blocks),
        Component::IntersectionM => intersection_poincare_with(gp, blocks),
    }
}

/// Betti numbers of one component (or of the intersection homology) for a genus pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub genus: GenusPair,
    pub component: Component,
    /// `coeffs[i]` is `B_i`, for `i` in `0..=degree`.
    pub coeffs: Vec<BigInt>,
    pub degree: usize,
    pub euler_char: BigInt,
}

impl BettiTable {
    /// Wrap a polynomial, checking the table invariants.
    pub fn from_poly(genus: GenusPair, component: Component, p: &IntPoly) -> Result<Self> {
        let degree = genus.top_degree();
        let violation = |msg: String| {
            Err(AlgebraError::InvariantViolation(format!(
                "{component} at {genus}: {msg}"
            )))
        };
        if p.degree() != Some(degree) {
            return violation(format!("degree {:?}, expected {degree}", p.degree()));
        }
        let coeffs: Vec<BigInt> = (0..=degree).map(|i| p.coeff(i)).collect();
        if let Some(i) = coeffs.iter().position(Signed::is_negative) {
            return violation(format!("B_{i} = {} is negative", coeffs[i]));
        }
        let b0 = BigInt::from(component.multiplicity());
        if coeffs[0] != b0 {
            return violation(format!("B_0 = {}, expected {b0}", coeffs[0]));
        }
        let euler_char = p.eval_i64(-1);
        Ok(BettiTable {
            genus,
            component,
            coeffs,
            degree,
            euler_char,
        })
    }

    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    pub fn betti(&self, i: usize) -> Option<&BigInt> {
        self.coeffs.get(i)
    }
}

pub fn betti_table(gp: GenusPair, component: Component) -> Result<BettiTable> {
    betti_table_with(gp, component, &StandardBlocks)
}

pub fn betti_table_with(
    gp: GenusPair,
    component: Component,
    blocks: &dyn BlockSource,
) -> Result<BettiTable> {
    BettiTable::from_poly(gp, component, &poincare_with(gp, component, blocks)?)
}

/// Duality, positivity, low-degree and Euler-characteristic checks for one polynomial.
///
/// The low-degree values `B_2 = 3`, `B_3 = 2(g1+g2)`, `B_4 = 8` (doubled for
/// the intersection polynomial) are asserted only when both genera are at
/// least 3; below that they are reported as informational.
pub fn verify_component(gp: GenusPair, component: Component) -> CheckReport {
    verify_component_with(gp, component, &StandardBlocks)
}

pub fn verify_component_with(
    gp: GenusPair,
    component: Component,
    blocks: &dyn BlockSource,
) -> CheckReport {
    let mut report = CheckReport::new();
    let p = match poincare_with(gp, component, blocks) {
        Ok(p) => p,
        Err(e) => {
            report.record("assembly", false, e.to_string());
            return report;
        }
    };
    let d = gp.top_degree();
    report.record(
        "degree",
        p.degree() == Some(d),
        format!("degree {:?}, expected {d}", p.degree()),
    );
    let mismatch = (0..=d / 2).find(|&i| p.coeff(i) != p.coeff(d - i));
    report.record(
        "duality",
        mismatch.is_none() && p.degree() <= Some(d),
        match mismatch {
            Some(i) => format!(
                "B_{i} = {} but B_{} = {}",
                p.coeff(i),
                d - i,
                p.coeff(d - i)
            ),
            None => String::new(),
        },
    );
    let negative = p.coeffs().iter().position(Signed::is_negative);
    report.record(
        "nonnegative",
        negative.is_none(),
        negative.map_or(String::new(), |i| format!("B_{i} = {}", p.coeff(i))),
    );

    let m = BigInt::from(component.multiplicity());
    let low = [
        ("b0", 0usize, m.clone()),
        ("b1", 1, BigInt::zero()),
        ("b2", 2, &m * 3),
        ("b3", 3, &m * 2 * (gp.g1 + gp.g2)),
        ("b4", 4, &m * 8),
    ];
    for (name, i, expected) in low {
        let got = p.coeff(i);
        let ok = got == expected;
        let witness = format!("B_{i} = {got}, expected {expected}");
        if i <= 1 || gp.in_tabulated_range() {
            report.record(name, ok, witness);
        } else {
            report.record_info(name, ok, format!("{witness} (outside tabulated range)"));
        }
    }

    let chi = p.eval_i64(-1);
    report.record("euler", chi.is_zero(), format!("P(-1) = {chi}"));
    report
}

/// Top coefficient is 1 for each component, so the polynomial is monic.
pub fn is_monic(p: &IntPoly) -> bool {
    p.leading_coeff().is_some_and(One::is_one)
}
