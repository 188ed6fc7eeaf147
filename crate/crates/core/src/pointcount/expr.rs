use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::blocks::{two_pow_2g, BlockSource};
use crate::error::{AlgebraError, Result};
use crate::exactpoly::{IntPoly, RatFunc};

/// A curve-dependent point count treated as an opaque symbol.
///
/// Each atom carries the genus it was built for, so the same builders serve
/// both components with the roles of the two curves exchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// Jacobian of the Kummer-side curve.
    Jacobian {
        genus: u32,
    },
    /// Canonical desingularization of the Kummer variety.
    KummerDesing {
        genus: u32,
    },
    /// Stable rank-2 bundles with fixed odd determinant on the stable-side curve.
    M1Stable {
        genus: u32,
    },
    /// Stable rank-2, degree-1 bundles with fixed determinant on the Kummer-side curve.
    ML21 {
        genus: u32,
    },
    /// Stable rank-2, degree -1 bundles with fixed determinant on the Kummer-side curve.
    M2Minus1 {
        genus: u32,
    },
    Projective {
        n: u32,
    },
    /// The constant `2^{2g}` (number of two-torsion points), kept symbolic.
    TwoPow2g {
        genus: u32,
    },
}

impl Atom {
    /// Complex dimension of the variety the atom counts.
    pub fn dimension(&self) -> i64 {
        match *self {
            Atom::Jacobian { genus } | Atom::KummerDesing { genus } => genus as i64,
            Atom::M1Stable { genus } | Atom::ML21 { genus } | Atom::M2Minus1 { genus } => {
                3 * genus as i64 - 3
            }
            Atom::Projective { n } => n as i64,
            Atom::TwoPow2g { .. } => 0,
        }
    }

    /// The Poincaré polynomial that replaces the normalized count.
    pub fn partner(&self, blocks: &dyn BlockSource) -> Result<IntPoly> {
        Ok(match *self {
            Atom::Jacobian { genus } => blocks.jacobian(genus),
            Atom::KummerDesing { genus } => blocks.kummer_desing(genus),
            Atom::M1Stable { genus } | Atom::ML21 { genus } | Atom::M2Minus1 { genus } => {
                blocks.moduli_fixed_det(genus)?
            }
            Atom::Projective { n } => blocks.projective(n),
            Atom::TwoPow2g { genus } => IntPoly::constant(two_pow_2g(genus)),
        })
    }

    /// Point count as a polynomial in `q`, when it does not depend on the curve.
    pub fn q_count(&self) -> Option<IntPoly> {
        match *self {
            Atom::Projective { n } => Some(IntPoly::new(vec![BigInt::one(); n as usize + 1])),
            Atom::TwoPow2g { genus } => Some(IntPoly::constant(two_pow_2g(genus))),
            _ => None,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Jacobian { genus } => write!(f, "J[g={genus}]"),
            Atom::KummerDesing { genus } => write!(f, "K~[g={genus}]"),
            Atom::M1Stable { genus } => write!(f, "M1[g={genus}]"),
            Atom::ML21 { genus } => write!(f, "ML(2,1)[g={genus}]"),
            Atom::M2Minus1 { genus } => write!(f, "M2(-1)[g={genus}]"),
            Atom::Projective { n } => write!(f, "P^{n}"),
            Atom::TwoPow2g { genus } => write!(f, "2^(2*{genus})"),
        }
    }
}

/// Expression tree over `q`, `x = 1/q`, raw counts `N_q(Y)` and normalized
/// counts `q^{-dim Y} N_q(Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Q,
    X,
    Atom(Atom),
    Tilde(Atom),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Neg(Box<Expr>),
    Power(Box<Expr>, i64),
    Quotient(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn int(c: i64) -> Expr {
        Expr::Int(BigInt::from(c))
    }

    pub fn atom(a: Atom) -> Expr {
        Expr::Atom(a)
    }

    pub fn pow(self, k: i64) -> Expr {
        Expr::Power(Box::new(self), k)
    }

    pub fn q_pow(k: i64) -> Expr {
        Expr::Q.pow(k)
    }

    pub fn sum(terms: impl IntoIterator<Item = Expr>) -> Expr {
        Expr::Sum(terms.into_iter().collect())
    }

    pub fn product(factors: impl IntoIterator<Item = Expr>) -> Expr {
        Expr::Product(factors.into_iter().collect())
    }

    /// A polynomial in `q` written out as a sum of monomials.
    pub fn q_poly(p: &IntPoly) -> Expr {
        Self::poly_in(p, Expr::Q)
    }

    /// A polynomial in `x` written out as a sum of monomials.
    pub fn x_poly(p: &IntPoly) -> Expr {
        Self::poly_in(p, Expr::X)
    }

    fn poly_in(p: &IntPoly, var: Expr) -> Expr {
        let terms: Vec<Expr> = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => Expr::Int(c.clone()),
                _ if c.is_one() => var.clone().pow(i as i64),
                _ => Expr::product([Expr::Int(c.clone()), var.clone().pow(i as i64)]),
            })
            .collect();
        match terms.len() {
            0 => Expr::int(0),
            1 => terms.into_iter().next().unwrap(),
            _ => Expr::Sum(terms),
        }
    }

    fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Int(_) | Expr::Q | Expr::X | Expr::Atom(_) | Expr::Tilde(_) => Vec::new(),
            Expr::Sum(v) | Expr::Product(v) => v.iter().collect(),
            Expr::Neg(e) | Expr::Power(e, _) => vec![e],
            Expr::Quotient(a, b) => vec![a, b],
        }
    }

    /// Number of nodes (this one included) satisfying `pred`.
    pub fn count(&self, pred: &dyn Fn(&Expr) -> bool) -> usize {
        usize::from(pred(self))
            + self
                .children()
                .into_iter()
                .map(|c| c.count(pred))
                .sum::<usize>()
    }

    /// True if `needle` occurs as a subtree.
    pub fn contains(&self, needle: &Expr) -> bool {
        self == needle || self.children().into_iter().any(|c| c.contains(needle))
    }

    /// Every raw and normalized atom leaf, in tree order, with multiplicity.
    pub fn atom_leaves(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        self.walk_atoms(&mut out);
        out
    }

    fn walk_atoms(&self, out: &mut Vec<Atom>) {
        match self {
            Expr::Atom(a) | Expr::Tilde(a) => out.push(*a),
            _ => self.children().into_iter().for_each(|c| c.walk_atoms(out)),
        }
    }

    /// Rebuild the tree bottom-up, letting `f` replace any leaf.
    pub fn map_leaves(&self, f: &dyn Fn(&Expr) -> Option<Expr>) -> Expr {
        match self {
            Expr::Int(_) | Expr::Q | Expr::X | Expr::Atom(_) | Expr::Tilde(_) => {
                f(self).unwrap_or_else(|| self.clone())
            }
            Expr::Sum(v) => Expr::Sum(v.iter().map(|e| e.map_leaves(f)).collect()),
            Expr::Product(v) => Expr::Product(v.iter().map(|e| e.map_leaves(f)).collect()),
            Expr::Neg(e) => Expr::Neg(Box::new(e.map_leaves(f))),
            Expr::Power(e, k) => Expr::Power(Box::new(e.map_leaves(f)), *k),
            Expr::Quotient(a, b) => {
                Expr::Quotient(Box::new(a.map_leaves(f)), Box::new(b.map_leaves(f)))
            }
        }
    }

    /// Replace atoms whose count is a known `q`-polynomial by that polynomial.
    pub fn expand_known_counts(&self) -> Expr {
        self.map_leaves(&|e| match e {
            Expr::Atom(a) => a.q_count().map(|p| Expr::q_poly(&p)),
            _ => None,
        })
    }

    /// Evaluate in any field-like scalar type, with `leaf` supplying the
    /// values of `q`, `x` and the atoms.
    pub fn eval<S: Scalar>(&self, leaf: &dyn Fn(Leaf<'_>) -> Result<S>) -> Result<S> {
        match self {
            Expr::Int(c) => Ok(S::from_int(c)),
            Expr::Q => leaf(Leaf::Q),
            Expr::X => leaf(Leaf::X),
            Expr::Atom(a) => leaf(Leaf::Count(a)),
            Expr::Tilde(a) => leaf(Leaf::Normalized(a)),
            Expr::Sum(v) => v.iter().try_fold(S::from_int(&BigInt::zero()), |acc, e| {
                Ok(acc.add(&e.eval(leaf)?))
            }),
            Expr::Product(v) => v.iter().try_fold(S::from_int(&BigInt::one()), |acc, e| {
                Ok(acc.mul(&e.eval(leaf)?))
            }),
            Expr::Neg(e) => Ok(e.eval(leaf)?.neg()),
            Expr::Power(e, k) => e.eval(leaf)?.try_powi(*k),
            Expr::Quotient(a, b) => a.eval(leaf)?.try_div(&b.eval(leaf)?),
        }
    }
}

/// Leaf handed to the evaluation callback.
#[derive(Debug, Clone, Copy)]
pub enum Leaf<'a> {
    Q,
    X,
    Count(&'a Atom),
    Normalized(&'a Atom),
}

/// Minimal field interface needed by [`Expr::eval`].
pub trait Scalar: Sized {
    fn from_int(c: &BigInt) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn try_div(&self, rhs: &Self) -> Result<Self>;
    fn try_powi(&self, k: i64) -> Result<Self>;
}

impl Scalar for RatFunc {
    fn from_int(c: &BigInt) -> Self {
        RatFunc::from_int(c.clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
    fn try_powi(&self, k: i64) -> Result<Self> {
        self.powi(k)
    }
}

impl Scalar for BigRational {
    fn from_int(c: &BigInt) -> Self {
        BigRational::from_integer(c.clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self / rhs)
    }
    fn try_powi(&self, k: i64) -> Result<Self> {
        if k < 0 && self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let k = i32::try_from(k)
            .map_err(|_| AlgebraError::Unsupported(format!("exponent {k} too large")))?;
        Ok(num_traits::Pow::pow(self, k))
    }
}

/// Symbol in a collected monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Count(Atom),
    Normalized(Atom),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Count(a) => write!(f, "N({a})"),
            Symbol::Normalized(a) => write!(f, "N~({a})"),
        }
    }
}

/// Canonical form of an expression: a polynomial in the atom symbols with
/// coefficients that are rational functions of one variable.
///
/// Which variable depends on the caller: [`Collected::in_x`] reads `X` as the
/// variable and `Q` as its inverse.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Collected {
    terms: BTreeMap<Vec<Symbol>, RatFunc>,
}

impl Collected {
    fn scalar(r: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Vec::new(), r);
        }
        Collected { terms }
    }

    fn symbol(s: Symbol) -> Self {
        Collected {
            terms: BTreeMap::from([(vec![s], RatFunc::one())]),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Symbol], &RatFunc)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    fn as_scalar(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn add(mut self, rhs: &Collected) -> Self {
        for (k, v) in &rhs.terms {
            let sum = match self.terms.get(k) {
                Some(cur) => cur + v,
                None => v.clone(),
            };
            if sum.is_zero() {
                self.terms.remove(k);
            } else {
                self.terms.insert(k.clone(), sum);
            }
        }
        self
    }

    fn mul(&self, rhs: &Collected) -> Self {
        let mut out = Collected::default();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let mut k: Vec<Symbol> = ka.iter().chain(kb).copied().collect();
                k.sort();
                out = out.add(&Collected {
                    terms: BTreeMap::from([(k, va * vb)]),
                });
            }
        }
        out
    }

    fn neg(mut self) -> Self {
        for v in self.terms.values_mut() {
            *v = -&*v;
        }
        self
    }

    /// Collect with `X` as the variable and `Q = 1/X`.
    pub fn in_x(e: &Expr) -> Result<Collected> {
        Ok(match e {
            Expr::Int(c) => Collected::scalar(RatFunc::from_int(c.clone())),
            Expr::X => Collected::scalar(RatFunc::t_pow(1)),
            Expr::Q => Collected::scalar(RatFunc::t_pow(-1)),
            Expr::Atom(a) => Collected::symbol(Symbol::Count(*a)),
            Expr::Tilde(a) => Collected::symbol(Symbol::Normalized(*a)),
            Expr::Sum(v) => v.iter().try_fold(Collected::default(), |acc, e| {
                Ok::<_, AlgebraError>(acc.add(&Collected::in_x(e)?))
            })?,
            Expr::Product(v) => v
                .iter()
                .try_fold(Collected::scalar(RatFunc::one()), |acc, e| {
                    Ok::<_, AlgebraError>(acc.mul(&Collected::in_x(e)?))
                })?,
            Expr::Neg(e) => Collected::in_x(e)?.neg(),
            Expr::Power(e, k) => {
                let base = Collected::in_x(e)?;
                if let Some(s) = base.as_scalar() {
                    Collected::scalar(s.powi(*k)?)
                } else if *k >= 0 {
                    (0..*k).fold(Collected::scalar(RatFunc::one()), |acc, _| acc.mul(&base))
                } else {
                    return Err(AlgebraError::Unsupported(
                        "negative power of an expression containing atoms".into(),
                    ));
                }
            }
            Expr::Quotient(a, b) => {
                let den = Collected::in_x(b)?.as_scalar().ok_or_else(|| {
                    AlgebraError::Unsupported("quotient by an expression containing atoms".into())
                })?;
                let inv = Collected::scalar(RatFunc::one().checked_div(&den)?);
                Collected::in_x(a)?.mul(&inv)
            }
        })
    }

    /// Rebuild an expression tree in `X` and the symbols.
    pub fn to_expr(&self) -> Expr {
        let terms: Vec<Expr> = self
            .terms
            .iter()
            .map(|(mono, coeff)| {
                let c = if coeff.is_polynomial() {
                    Expr::x_poly(coeff.num())
                } else {
                    Expr::Quotient(
                        Box::new(Expr::x_poly(coeff.num())),
                        Box::new(Expr::x_poly(coeff.den())),
                    )
                };
                let mut factors = vec![c];
                factors.extend(mono.iter().map(|s| match s {
                    Symbol::Count(a) => Expr::Atom(*a),
                    Symbol::Normalized(a) => Expr::Tilde(*a),
                }));
                Expr::Product(factors)
            })
            .collect();
        Expr::Sum(terms)
    }
}

fn flatten(kind: fn(Vec<Expr>) -> Expr, is_kind: fn(&Expr) -> bool, a: Expr, b: Expr) -> Expr {
    let mut items = Vec::new();
    for e in [a, b] {
        if is_kind(&e) {
            match e {
                Expr::Sum(v) | Expr::Product(v) => items.extend(v),
                _ => unreachable!(),
            }
        } else {
            items.push(e);
        }
    }
    kind(items)
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        flatten(Expr::Sum, |e| matches!(e, Expr::Sum(_)), self, rhs)
    }
}

impl Sub for Expr {
    type Output = Expr;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Expr) -> Expr {
        self + Expr::Neg(Box::new(rhs))
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        flatten(Expr::Product, |e| matches!(e, Expr::Product(_)), self, rhs)
    }
}

impl Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::Quotient(Box::new(self), Box::new(rhs))
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl From<i64> for Expr {
    fn from(c: i64) -> Self {
        Expr::int(c)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, v: &[Expr], sep: &str| -> fmt::Result {
            write!(f, "(")?;
            for (i, e) in v.iter().enumerate() {
                if i > 0 {
                    write!(f, "{sep}")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, ")")
        };
        match self {
            Expr::Int(c) => write!(f, "{c}"),
            Expr::Q => write!(f, "q"),
            Expr::X => write!(f, "x"),
            Expr::Atom(a) => write!(f, "N({a})"),
            Expr::Tilde(a) => write!(f, "N~({a})"),
            Expr::Sum(v) => join(f, v, " + "),
            Expr::Product(v) => join(f, v, " * "),
            Expr::Neg(e) => write!(f, "-{e}"),
            Expr::Power(e, k) => write!(f, "{e}^{k}"),
            Expr::Quotient(a, b) => write!(f, "({a} / {b})"),
        }
    }
}
