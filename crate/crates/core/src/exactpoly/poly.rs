use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `t^i`. Trailing zeros are always trimmed,
/// so the zero polynomial is the empty vector and the last stored coefficient
/// of a nonzero polynomial is its (nonzero) leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^n`
    pub fn monomial(c: BigInt, n: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = c;
        IntPoly { coeffs }
    }

    /// `t^n`
    pub fn t_pow(n: usize) -> Self {
        Self::monomial(BigInt::one(), n)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest power of `t` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content`, with the sign chosen so the leading coefficient is positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_scalar_exact(&c)
            .expect("content divides every coefficient")
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Divide every coefficient by `k`, failing unless each division is exact.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Result<IntPoly> {
        if k.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(AlgebraError::InexactDivision {
                    numerator: self.to_string(),
                    divisor: k.to_string(),
                    detail: format!("remainder {r} in the coefficient of t^{i}"),
                });
            }
            out.push(q);
        }
        Ok(IntPoly { coeffs: out })
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// `p(t^k)`: spreads the coefficients out by a factor of `k`.
    pub fn compose_power(&self, k: usize) -> IntPoly {
        assert!(k >= 1, "compose_power needs k >= 1");
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        IntPoly { coeffs }
    }

    /// `t^deg * p(1/t)` with `deg` the degree of `p`.
    pub fn reversed(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::new(coeffs)
    }

    pub fn pow(&self, n: u32) -> IntPoly {
        let mut result = IntPoly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// True iff `coeff(i) == coeff(d - i)` for all `0 <= i <= d`.
    ///
    /// Coefficients past the degree count as zero, so a polynomial whose
    /// degree exceeds `d` is never palindromic at `d`.
    pub fn is_palindromic(&self, d: usize) -> bool {
        if self.coeffs.len() > d + 1 {
            return false;
        }
        (0..=d / 2).all(|i| self.coeff(i) == self.coeff(d - i))
    }

    /// Exact quotient `n / d` over the integers.
    ///
    /// Fails with [`AlgebraError::InexactDivision`] if any quotient coefficient
    /// is not an integer or the remainder is nonzero.
    pub fn exact_div(&self, d: &IntPoly) -> Result<IntPoly> {
        let Some(dd) = d.degree() else {
            return Err(AlgebraError::DivisionByZero);
        };
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let inexact = |detail: String| AlgebraError::InexactDivision {
            numerator: self.to_string(),
            divisor: d.to_string(),
            detail,
        };
        let nd = self.coeffs.len() - 1;
        if nd < dd {
            return Err(inexact("a nonzero remainder of lower degree".into()));
        }
        let lc = &d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return Err(inexact(format!(
                    "a non-integer quotient coefficient at t^{k}"
                )));
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        if let Some(i) = rem.iter().position(|c| !c.is_zero()) {
            return Err(inexact(format!(
                "remainder coefficient {} at t^{i}",
                rem[i]
            )));
        }
        Ok(IntPoly::new(quot))
    }

    /// Pseudo-remainder: `lc(d)^(deg n - deg d + 1) * n mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo_rem by the zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return self.clone();
        }
        let lc = &d.coeffs[dd];
        let steps = rem.len() - dd;
        for k in (0..steps).rev() {
            let top = rem[k + dd].clone();
            for c in rem.iter_mut() {
                *c *= lc;
            }
            if !top.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &top * dc;
                }
            }
            rem.pop();
        }
        IntPoly::new(rem)
    }

    /// Gcd in `Z[t]`, normalized to a positive leading coefficient.
    ///
    /// Contents are handled separately; the primitive parts go through the
    /// subresultant remainder sequence, which keeps every intermediate in
    /// `Z[t]` with controlled coefficient growth.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let g = subresultant_gcd(self.primitive_part(), other.primitive_part());
        g.primitive_part().scale(&c)
    }
}

/// Gcd of two primitive polynomials via the subresultant PRS.
fn subresultant_gcd(mut a: IntPoly, mut b: IntPoly) -> IntPoly {
    if a.coeffs.len() < b.coeffs.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.is_zero() {
        return a;
    }
    if b.is_constant() {
        return IntPoly::one();
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.coeffs.len() - b.coeffs.len();
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return b;
        }
        if r.is_constant() {
            return IntPoly::one();
        }
        let divisor = &g * num_traits::pow(h.clone(), delta);
        a = b;
        b = r
            .div_scalar_exact(&divisor)
            .expect("subresultant division is exact");
        g = a.leading_coeff().cloned().unwrap();
        h = if delta == 0 {
            h
        } else {
            let num = num_traits::pow(g.clone(), delta);
            let den = num_traits::pow(h, delta - 1);
            num / den
        };
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl From<BigInt> for IntPoly {
    fn from(c: BigInt) -> Self {
        IntPoly::constant(c)
    }
}

impl From<i64> for IntPoly {
    fn from(c: i64) -> Self {
        IntPoly::constant(BigInt::from(c))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPoly::new(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        IntPoly::new(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned_binop!(Add::add, Sub::sub, Mul::mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
    }

    #[test]
    fn binomial_square() {
        let a = &IntPoly::one() + &IntPoly::t_pow(3);
        assert_eq!(&a * &a, p(&[1, 0, 0, 2, 0, 0, 1]));
    }

    #[test]
    fn genus_two_numerator() {
        let one_t = p(&[1, 1]);
        let one_t3 = p(&[1, 0, 0, 1]);
        let n = &one_t3.pow(4) - &(one_t.pow(4).shift(4));
        assert_eq!(n, p(&[1, 0, 0, 4, -1, -4, 0, -4, -1, 4, 0, 0, 1]));
    }

    #[test]
    fn pow_edges() {
        let one_t = p(&[1, 1]);
        assert_eq!(one_t.pow(0), IntPoly::one());
        assert_eq!(one_t.pow(2), p(&[1, 2, 1]));
        assert_eq!(one_t.pow(6), p(&[1, 6, 15, 20, 15, 6, 1]));
        assert_eq!(IntPoly::zero().pow(0), IntPoly::one());
    }

    #[test]
    fn exact_div_cases() {
        assert_eq!(
            p(&[1, 0, 0, 0, -1]).exact_div(&p(&[1, 0, -1])).unwrap(),
            p(&[1, 0, 1])
        );
        let n = p(&[1, 0, 0, 4, -1, -4, 0, -4, -1, 4, 0, 0, 1]);
        let d = &p(&[1, 0, -1]) * &p(&[1, 0, 0, 0, -1]);
        assert_eq!(n.exact_div(&d).unwrap(), p(&[1, 0, 1, 4, 1, 0, 1]));
        assert_eq!(
            p(&[1, 0, 0, 1]).exact_div(&p(&[1, 1])).unwrap(),
            p(&[1, -1, 1])
        );
        assert!(matches!(
            p(&[1, 0, 1]).exact_div(&p(&[1, 1])),
            Err(AlgebraError::InexactDivision { .. })
        ));
        // integer remainder-free but non-integral quotient
        assert!(matches!(
            p(&[1, 1]).exact_div(&p(&[2])),
            Err(AlgebraError::InexactDivision { .. })
        ));
        assert_eq!(
            p(&[1]).exact_div(&IntPoly::zero()),
            Err(AlgebraError::DivisionByZero)
        );
    }

    #[test]
    fn eval_cases() {
        assert_eq!(p(&[1, 0, 1]).eval_i64(-1), BigInt::from(2));
        assert_eq!(p(&[1, 0, 1, 4, 1, 0, 1]).eval_i64(-1), BigInt::zero());
        assert_eq!(IntPoly::zero().eval_i64(17), BigInt::zero());
    }

    #[test]
    fn palindromy() {
        assert!(p(&[1, 0, 3, 0, 1]).is_palindromic(4));
        assert!(!p(&[1, 1]).is_palindromic(2));
        assert!(p(&[0, 1]).is_palindromic(2));
        assert!(!p(&[1, 0, 0, 1]).is_palindromic(2));
    }

    #[test]
    fn gcd_basics() {
        let a = &p(&[1, 1]) * &p(&[2, 0, 1]);
        let b = &p(&[1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&p(&[6, 12])), p(&[2, 4]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[1, 1])), IntPoly::one());
        assert_eq!(p(&[-1, -1]).gcd(&IntPoly::zero()), p(&[1, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 0, 1]).to_string(), "1 - 2*t + t^3");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
