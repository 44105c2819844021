//! Dense univariate polynomials over a [`Scalar`] field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Dense coefficient vector, `coeffs[k]` multiplies `x^k`.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and structural equality coincides with polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1, T::one())
    }

    /// `c * x^k`
    pub fn monomial(k: usize, c: T) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by `x`.
    pub fn shift_up(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `f(g(x))` by Horner's scheme.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// `f(a x + b)`
    pub fn compose_affine(&self, a: &T, b: &T) -> Self {
        self.compose(&Self::new(vec![b.clone(), a.clone()]))
    }

    /// `f(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Checks `f(-x) = (-1)^n f(x)`.
    pub fn has_parity(&self, n: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| (k + n).is_multiple_of(2) || c.is_zero())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_int(k as i64))
                .collect(),
        )
    }

    /// Quotient and remainder of division by `x - root`.
    pub fn div_linear(&self, root: &T) -> (Self, T) {
        if self.is_zero() {
            return (Self::zero(), T::zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![T::zero(); n - 1];
        let mut carry = T::zero();
        for k in (0..n).rev() {
            let value = self.coeffs[k].clone() + carry * root.clone();
            if k == 0 {
                return (Self::new(quotient), value);
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }
}

impl<T: Scalar> Default for Polynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<T: Scalar> $tr for Polynomial<T> {
            type Output = Polynomial<T>;

            fn $method(self, rhs: Polynomial<T>) -> Polynomial<T> {
                (&self).$method(&rhs)
            }
        }

        impl<T: Scalar> $tr<&Polynomial<T>> for Polynomial<T> {
            type Output = Polynomial<T>;

            fn $method(self, rhs: &Polynomial<T>) -> Polynomial<T> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        -&self
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rational, RationalPoly};

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    fn poly(c: &[(i64, i64)]) -> RationalPoly {
        Polynomial::new(c.iter().map(|&(p, d)| q(p, d)).collect())
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = poly(&[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert!(Polynomial::new(vec![q(0, 1)]).is_zero());
        assert_eq!(RationalPoly::zero().degree(), None);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            RationalPoly::monomial(3, q(1, 1)).derivative(),
            RationalPoly::monomial(2, q(3, 1))
        );
        assert!(RationalPoly::one().derivative().is_zero());
        assert_eq!(
            poly(&[(-3, 2), (0, 1), (1, 1)]).derivative(),
            RationalPoly::monomial(1, q(2, 1))
        );
    }

    #[test]
    fn synthetic_division() {
        // x^2 - 1 = (x - 1)(x + 1)
        let (quot, rem) = poly(&[(-1, 1), (0, 1), (1, 1)]).div_linear(&q(1, 1));
        assert_eq!(quot, poly(&[(1, 1), (1, 1)]));
        assert_eq!(rem, q(0, 1));
        let (_, rem) = poly(&[(1, 1), (0, 1), (1, 1)]).div_linear(&q(1, 1));
        assert_eq!(rem, q(2, 1));
    }

    #[test]
    fn compose_and_reflect() {
        let p = poly(&[(1, 1), (2, 1), (3, 1)]);
        assert_eq!(p.reflect(), p.compose_affine(&q(-1, 1), &q(0, 1)));
        assert_eq!(p.compose(&RationalPoly::x()), p);
        assert_eq!(p.eval(&q(2, 1)), q(17, 1));
    }

    #[test]
    fn parity() {
        assert!(poly(&[(-1, 1), (0, 1), (1, 1)]).has_parity(2));
        assert!(!poly(&[(-1, 1), (1, 1), (1, 1)]).has_parity(2));
        assert!(RationalPoly::x().has_parity(1));
    }

    #[test]
    fn works_over_f64() {
        let p = Polynomial::new(vec![1.0, -2.0, 1.0]);
        assert_eq!((&p * &p).coeffs(), &[1.0, -4.0, 6.0, -4.0, 1.0]);
        assert_eq!(p.derivative().coeffs(), &[-2.0, 2.0]);
    }
}
