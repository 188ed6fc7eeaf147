//! Stratified point counts over `F_q` as expression trees.
//!
//! Builders take a [`GenusPair`] whose first genus is the stable side (the
//! curve carrying `M1`) and whose second is the Kummer side. The other
//! component is handled by passing [`GenusPair::swapped`].
//!
//! Formulas are entered as printed, redundant brackets included. All
//! simplification happens in [`Collected`] or after substitution.

mod expr;

pub use expr::{Atom, Collected, Expr, Leaf, Scalar, Symbol};

use crate::blocks::GenusPair;
use crate::error::{AlgebraError, Result};

/// The two readings of the third summand of `beta_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Beta1Reading {
    /// `(N(J) - 2^{2g}) N(P^{g-2}) / (q - 1)`.
    #[default]
    Factored,
    /// `(N(J) - 2^{2g} N(P^{g-2})) / (q - 1)`.
    AsTypeset,
}

/// The two readings of the closing brackets around the Kummer block of the
/// total count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KummerGrouping {
    /// The `-2^{2g}[...]` block sits inside the bracket multiplied by `N(M1)`.
    #[default]
    Inner,
    /// The `-2^{2g}[...]` block is a separate summand.
    Outer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Transcription {
    pub beta1: Beta1Reading,
    pub grouping: KummerGrouping,
}

/// Dimension table used by [`normalize_tilde`]; overridable for fault injection.
pub trait Dimensions: Sync {
    fn atom(&self, a: &Atom) -> i64 {
        a.dimension()
    }

    fn moduli(&self, gp: GenusPair) -> i64 {
        gp.dimension() as i64
    }
}

pub struct StandardDimensions;

impl Dimensions for StandardDimensions {}

fn q() -> Expr {
    Expr::Q
}

fn int(c: i64) -> Expr {
    Expr::int(c)
}

fn n(a: Atom) -> Expr {
    Expr::Atom(a)
}

fn proj(k: u32) -> Expr {
    n(Atom::Projective { n: k })
}

fn two_pow(g2: u32) -> Expr {
    n(Atom::TwoPow2g { genus: g2 })
}

fn jac(g2: u32) -> Expr {
    n(Atom::Jacobian { genus: g2 })
}

fn m1(gp: GenusPair) -> Expr {
    n(Atom::M1Stable { genus: gp.g1 })
}

/// `N_q(GL(2, F_q)) = (q^2 - 1)(q^2 - q)`.
pub fn n_gl2() -> Expr {
    (Expr::q_pow(2) - int(1)) * (Expr::q_pow(2) - q())
}

/// `N_q(PGL(2, F_q)) = q(q^2 - 1)`.
pub fn n_pgl2() -> Expr {
    q() * (Expr::q_pow(2) - int(1))
}

/// `N_q(GL_2 / (G_m x G_m)) = q(q + 1)`.
pub fn n_gl2_mod_torus() -> Expr {
    q() * (q() + int(1))
}

/// `N_q(GL_2 / (G_m x G_a)) = q^2 - 1`.
pub fn n_gl2_mod_gm_ga() -> Expr {
    Expr::q_pow(2) - int(1)
}

pub fn expr_nq_a(g2: u32) -> Expr {
    (jac(g2) - two_pow(g2)) / int(2)
}

pub fn expr_nq_k_minus_k0(g2: u32) -> Expr {
    n(Atom::KummerDesing { genus: g2 }) - two_pow(g2) * proj(g2 - 1)
}

pub fn expr_nq_b(g2: u32) -> Expr {
    expr_nq_k_minus_k0(g2) - expr_nq_a(g2)
}

pub fn expr_beta1(g2: u32, reading: Beta1Reading) -> Expr {
    let third = match reading {
        Beta1Reading::Factored => (jac(g2) - two_pow(g2)) * proj(g2 - 2) / (q() - int(1)),
        Beta1Reading::AsTypeset => (jac(g2) - two_pow(g2) * proj(g2 - 2)) / (q() - int(1)),
    };
    expr_nq_a(g2) / (q() - int(1)).pow(2) + expr_nq_b(g2) / (Expr::q_pow(2) - int(1)) + third
}

pub fn expr_beta2(g2: u32) -> Expr {
    two_pow(g2) / n_gl2() + two_pow(g2) * proj(g2 - 1) / (q() * (q() - int(1)))
}

/// Count of the stable locus of the Kummer-side moduli space.
pub fn expr_nq_m2_stable(g2: u32, reading: Beta1Reading) -> Expr {
    n(Atom::ML21 { genus: g2 }) + Expr::q_pow(g2 as i64 - 1) * jac(g2) / (Expr::q_pow(2) - int(1))
        - Expr::Sum(vec![expr_beta1(g2, reading), expr_beta2(g2)]) * (q() - int(1))
}

pub fn expr_fiber_stable(gp: GenusPair, reading: Beta1Reading) -> Expr {
    Expr::product([m1(gp), expr_nq_m2_stable(gp.g2, reading), n_pgl2()])
}

pub fn expr_fiber_a(gp: GenusPair) -> Expr {
    let g2 = gp.g2;
    m1(gp)
        * Expr::sum([
            expr_nq_a(g2) * n_gl2_mod_torus(),
            Expr::product([int(2), expr_nq_a(g2), proj(g2 - 2), n_pgl2()]),
        ])
}

pub fn expr_fiber_b(gp: GenusPair) -> Expr {
    Expr::product([
        m1(gp),
        expr_nq_b(gp.g2),
        n_gl2() / (Expr::q_pow(2) - int(1)),
    ])
}

pub fn expr_fiber_k0(gp: GenusPair) -> Expr {
    let g2 = gp.g2;
    Expr::product([
        m1(gp),
        two_pow(g2),
        Expr::sum([int(1), n_gl2_mod_gm_ga() * proj(g2 - 1)]),
    ])
}

pub fn expr_nq_n(gp: GenusPair) -> Expr {
    Expr::product([m1(gp), n(Atom::M2Minus1 { genus: gp.g2 }), proj(1), proj(1)])
}

/// The `-2^{2g}[q + q(q^2-1)N(P^{g-2}) + (q^2-q)N(P^{g-1})]` block.
pub fn expr_kummer_correction(g2: u32) -> Expr {
    two_pow(g2)
        * Expr::sum([
            q(),
            Expr::product([q(), Expr::q_pow(2) - int(1), proj(g2 - 2)]),
            (Expr::q_pow(2) - q()) * proj(g2 - 1),
        ])
}

/// Combined count over `M1 x (K - K0)`, with the requested bracket reading.
pub fn expr_kummer_block(gp: GenusPair, grouping: KummerGrouping) -> Expr {
    let g2 = gp.g2;
    let main = Expr::sum([
        n(Atom::KummerDesing { genus: g2 }) * (Expr::q_pow(2) - q()),
        jac(g2)
            * Expr::sum([
                q(),
                Expr::product([q(), Expr::q_pow(2) - int(1), proj(g2 - 2)]),
            ]),
    ]);
    match grouping {
        KummerGrouping::Inner => m1(gp) * (main - expr_kummer_correction(g2)),
        KummerGrouping::Outer => m1(gp) * main - expr_kummer_correction(g2),
    }
}

/// Total count of the component, written as the final four-line sum.
pub fn expr_nq_m12(gp: GenusPair, tr: Transcription) -> Expr {
    let g2 = gp.g2;
    Expr::sum([
        Expr::product([m1(gp), n_pgl2(), expr_nq_m2_stable(g2, tr.beta1)]),
        expr_kummer_block(gp, tr.grouping),
        Expr::product([
            m1(gp),
            two_pow(g2),
            Expr::sum([int(1), (Expr::q_pow(2) - int(1)) * proj(g2 - 1)]),
        ]),
        expr_nq_n(gp),
    ])
}

/// Total count as the plain sum of the per-stratum fiber counts.
pub fn expr_stratum_sum(gp: GenusPair, reading: Beta1Reading) -> Expr {
    Expr::sum([
        expr_fiber_stable(gp, reading),
        expr_fiber_a(gp),
        expr_fiber_b(gp),
        expr_fiber_k0(gp),
        expr_nq_n(gp),
    ])
}

/// `q^{-3g+3} (beta_1 + beta_2)(q - 1)`, the beta contribution in normalized units.
pub fn expr_beta_block(g2: u32, reading: Beta1Reading) -> Expr {
    Expr::product([
        Expr::q_pow(-3 * g2 as i64 + 3),
        Expr::Sum(vec![expr_beta1(g2, reading), expr_beta2(g2)]),
        q() - int(1),
    ])
}

/// Normalize the count of a variety of dimension `dim(gp)`: multiply by
/// `q^{-dim}`, write every raw count as `q^{dim Y} N~(Y)` and every `q` as
/// `1/x`, and collect.
///
/// Fails with [`AlgebraError::NegativePowerResidue`] if some coefficient is
/// not regular at `x = 0`.
pub fn normalize_tilde(e: &Expr, gp: GenusPair, dims: &dyn Dimensions) -> Result<Expr> {
    normalize_with_dimension(e, dims.moduli(gp), dims)
}

/// As [`normalize_tilde`] with an explicit total dimension.
pub fn normalize_with_dimension(e: &Expr, dim: i64, dims: &dyn Dimensions) -> Result<Expr> {
    let rewritten = e.map_leaves(&|leaf| match leaf {
        Expr::Q => Some(Expr::X.pow(-1)),
        Expr::Atom(a) => Some(Expr::X.pow(-dims.atom(a)) * Expr::Tilde(*a)),
        _ => None,
    });
    let scaled = rewritten * Expr::X.pow(dim);
    let collected = Collected::in_x(&scaled)?;
    for (mono, coeff) in collected.terms() {
        if !coeff.is_regular_at_zero() {
            let label = if mono.is_empty() {
                "1".to_string()
            } else {
                mono.iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join("*")
            };
            return Err(AlgebraError::NegativePowerResidue {
                monomial: label,
                residue: coeff.to_string(),
            });
        }
    }
    Ok(collected.to_expr())
}
