use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntPoly;
use crate::error::{AlgebraError, Result};

/// A quotient `num / den` of integer polynomials kept in canonical form.
///
/// Canonical means: `den` is nonzero with a positive leading coefficient, and
/// the gcd of `num` and `den` in `Z[t]` (content included) is 1. Two values
/// are equal as rational functions iff they are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides the numerator"),
                den.exact_div(&g).expect("gcd divides the denominator"),
            )
        };
        if den.leading_coeff().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc {
            num: p,
            den: IntPoly::one(),
        }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::from_poly(IntPoly::constant(c.into()))
    }

    /// `t^k` for any integer `k`; negative powers land in the denominator.
    pub fn t_pow(k: i64) -> Self {
        let n = k.unsigned_abs() as usize;
        if k >= 0 {
            Self::from_poly(IntPoly::t_pow(n))
        } else {
            RatFunc {
                num: IntPoly::one(),
                den: IntPoly::t_pow(n),
            }
        }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial this function equals, if it is one.
    pub fn to_poly(&self) -> Result<IntPoly> {
        if self.den.is_one() {
            return Ok(self.num.clone());
        }
        Err(AlgebraError::NotPolynomial {
            denominator: self.den.to_string(),
        })
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.recip()?)
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, n: i64) -> Result<RatFunc> {
        let e = u32::try_from(n.unsigned_abs())
            .map_err(|_| AlgebraError::Unsupported(format!("exponent {n} too large")))?;
        let base = if n < 0 { self.recip()? } else { self.clone() };
        // gcd(a, b) = 1 implies gcd(a^e, b^e) = 1
        Ok(RatFunc {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn scale(&self, k: &BigInt) -> RatFunc {
        Self::reduce(self.num.scale(k), self.den.clone())
    }

    /// Substitute `t -> t^k` for `k >= 1`.
    pub fn compose_power(&self, k: usize) -> RatFunc {
        Self::reduce(self.num.compose_power(k), self.den.compose_power(k))
    }

    /// Substitute `t -> 1/t`.
    pub fn invert_variable(&self) -> RatFunc {
        let dn = self.num.degree().unwrap_or(0) as i64;
        let dd = self.den.degree().unwrap_or(0) as i64;
        let num = self.num.reversed();
        let den = self.den.reversed();
        // p(1/t) = rev(p) / t^deg p
        let shift = dd - dn;
        let (num, den) = if shift >= 0 {
            (num.shift(shift as usize), den)
        } else {
            (num, den.shift((-shift) as usize))
        };
        Self::reduce(num, den)
    }

    /// True iff `t = 0` is not a pole, i.e. no negative power of `t` survives.
    pub fn is_regular_at_zero(&self) -> bool {
        !self.den.coeff(0).is_zero()
    }

    /// Exact value at a rational point, `None` at a pole.
    pub fn eval_rational(
        &self,
        x: &num_rational::BigRational,
    ) -> Option<num_rational::BigRational> {
        let ev = |p: &IntPoly| {
            p.coeffs()
                .iter()
                .rev()
                .fold(num_rational::BigRational::zero(), |acc, c| {
                    acc * x + num_rational::BigRational::from_integer(c.clone())
                })
        };
        let d = ev(&self.den);
        if d.is_zero() {
            return None;
        }
        Some(ev(&self.num) / d)
    }

    /// Cross-multiplied difference `a.num * b.den - b.num * a.den`.
    ///
    /// Zero iff the two functions are equal; otherwise its lowest nonzero
    /// coefficient is a convenient mismatch witness.
    pub fn cross_difference(&self, other: &RatFunc) -> IntPoly {
        &(&self.num * &other.den) - &(&other.num * &self.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl From<IntPoly> for RatFunc {
    fn from(p: IntPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = rhs.den.exact_div(&g).expect("gcd divides");
        let b = self.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &a) + &(&rhs.num * &b);
        RatFunc::reduce(num, &self.den * &a)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel first so the products stay small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let mut num = &n1 * &n2;
        let mut den = &d1 * &d2;
        if den.leading_coeff().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }
}

impl Div for &RatFunc {
    type Output = Result<RatFunc>;
    fn div(self, rhs: &RatFunc) -> Result<RatFunc> {
        self.checked_div(rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned_binop!(Add::add, Sub::sub, Mul::mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn add_same_denominator() {
        let a = rf(&[0, 0, 1], &[1, 0, 0, 0, -1]);
        assert_eq!(&a + &a, rf(&[0, 0, 2], &[1, 0, 0, 0, -1]));
    }

    #[test]
    fn full_cancellation() {
        let a = rf(&[1, 0, 0, 0, -1], &[1, 0, 1]);
        let b = rf(&[1], &[1, 0, -1]);
        assert_eq!(&a * &b, RatFunc::one());
        let c = rf(&[1], &[1, 0, 1]);
        assert_eq!(&c * &RatFunc::from_poly(p(&[1, 0, 1])), RatFunc::one());
    }

    #[test]
    fn sign_and_content_normalization() {
        let a = rf(&[2, 2], &[-4, -4, 0, 0]);
        assert_eq!(a.num(), &p(&[-1]));
        assert_eq!(a.den(), &p(&[2]));
        let b = rf(&[2, 0, 2], &[2]);
        assert_eq!(b.to_poly().unwrap(), p(&[1, 0, 1]));
    }

    #[test]
    fn to_poly_cases() {
        assert_eq!(
            rf(&[1, 0, 0, 0, -1], &[1, 0, -1]).to_poly().unwrap(),
            p(&[1, 0, 1])
        );
        assert!(matches!(
            rf(&[1], &[1, 0, 1]).to_poly(),
            Err(AlgebraError::NotPolynomial { .. })
        ));
        assert!(rf(&[1, 1], &[2]).to_poly().is_err());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            RatFunc::one().checked_div(&RatFunc::zero()),
            Err(AlgebraError::DivisionByZero)
        );
        assert_eq!(
            RatFunc::new(p(&[1]), IntPoly::zero()),
            Err(AlgebraError::DivisionByZero)
        );
    }

    #[test]
    fn powers_of_t() {
        let a = RatFunc::t_pow(-3);
        assert_eq!(a.den(), &IntPoly::t_pow(3));
        assert!(!a.is_regular_at_zero());
        assert_eq!(&a * &RatFunc::t_pow(5), RatFunc::t_pow(2));
        assert_eq!(a.powi(-2).unwrap(), RatFunc::t_pow(6));
    }

    #[test]
    fn invert_variable_roundtrip() {
        let a = rf(&[1, 2, 0, 3], &[1, 0, -1]);
        let inv = a.invert_variable();
        assert_eq!(inv.invert_variable(), a);
        // (q+1)/q at q = 1/x is (1/x + 1) * x = 1 + x
        let b = rf(&[1, 1], &[0, 1]).invert_variable();
        assert_eq!(b, RatFunc::from_poly(p(&[1, 1])));
    }
}
