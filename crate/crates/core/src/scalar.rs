//! Scalar abstraction shared by every algebraic routine in the crate.
//!
//! All identities are checked with `==`, so the intended instantiation is an
//! exact field such as [`crate::Rational`]. Floating point types satisfy the
//! bounds as well and are useful for quick evaluation, but equality checks on
//! them are only meaningful for exactly representable inputs.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Field element usable as a polynomial coefficient.
pub trait Scalar:
    Num + Clone + Debug + Display + PartialOrd + Neg<Output = Self> + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable in scalar type")
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    /// `(-1)^n`
    fn parity_sign(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Self::one()
        } else {
            -Self::one()
        }
    }

    /// True for 0, 1, 2, ...
    fn is_natural(&self) -> bool {
        match self.to_i64() {
            Some(k) => k >= 0 && Self::from_int(k) == *self,
            None => false,
        }
    }
}

impl<T> Scalar for T where
    T: Num
        + Clone
        + Debug
        + Display
        + PartialOrd
        + Neg<Output = T>
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn naturals() {
        assert!(Rational::from_int(0).is_natural());
        assert!(Rational::from_int(7).is_natural());
        assert!(!Rational::from_int(-3).is_natural());
        assert!(!Rational::from_ratio(5, 2).is_natural());
        assert!(!Rational::from_ratio(-1, 2).is_natural());
        assert!(4.0f64.is_natural());
        assert!(!4.5f64.is_natural());
    }

    #[test]
    fn parity() {
        assert_eq!(Rational::parity_sign(-1), Rational::from_int(-1));
        assert_eq!(Rational::parity_sign(4), Rational::from_int(1));
        assert_eq!(f64::parity_sign(3), -1.0);
    }
}
