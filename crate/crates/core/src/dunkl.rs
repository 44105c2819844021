//! Rank-one Dunkl operator and its companions: the Hahn family of difference
//! operators and the coefficient sequences `mu_n`, `xi_n`, `delta_n`.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

pub fn derivative<T: Scalar>(f: &Polynomial<T>) -> Polynomial<T> {
    f.derivative()
}

/// `(f(qx + omega) - f(x)) / ((q - 1)x + omega)`.
///
/// The division is carried out synthetically and the remainder is asserted
/// to vanish, which it does for every polynomial `f`.
pub fn hahn<T: Scalar>(f: &Polynomial<T>, q: &T, omega: &T) -> Result<Polynomial<T>> {
    let q_minus_one = q.clone() - T::one();
    if q_minus_one.is_zero() && omega.is_zero() {
        return Err(Error::DegenerateHahn);
    }
    let numerator = &f.compose_affine(q, omega) - f;
    if q_minus_one.is_zero() {
        return Ok(numerator.scale(&(T::one() / omega.clone())));
    }
    let root = -omega.clone() / q_minus_one.clone();
    let (quotient, remainder) = numerator.div_linear(&root);
    assert!(
        remainder.is_zero(),
        "hahn: nonzero remainder {remainder} in exact division"
    );
    Ok(quotient.scale(&(T::one() / q_minus_one)))
}

/// `H_{-1} f = (f(x) - f(-x)) / (2x)`: keeps the odd part and lowers it by one
/// degree, so `x^{2k+1} -> x^{2k}` and even monomials vanish.
pub fn reflection_difference<T: Scalar>(f: &Polynomial<T>) -> Polynomial<T> {
    Polynomial::new(
        f.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| if k % 2 == 1 { c.clone() } else { T::zero() })
            .collect(),
    )
}

/// Values `(mu_n, xi_n, delta_n)` at one index.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTriple<T> {
    pub mu_n: T,
    pub xi_n: T,
    pub delta_n: T,
}

/// The Dunkl parameter together with the horizon up to which the regularity
/// guard `mu != -n - 1/2` has been verified.
#[derive(Clone, Debug, PartialEq)]
pub struct DunklContext<T> {
    mu: T,
    max_degree: usize,
}

impl<T: Scalar> DunklContext<T> {
    pub fn new(mu: T, max_degree: usize) -> Result<Self> {
        let half = T::half();
        for n in 0..=max_degree {
            if (mu.clone() + T::from_int(n as i64) + half.clone()).is_zero() {
                return Err(Error::SingularMu { n });
            }
        }
        Ok(DunklContext { mu, max_degree })
    }

    pub fn mu(&self) -> &T {
        &self.mu
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// `delta_n = mu (1 - (-1)^n)`
    pub fn delta(&self, n: i64) -> T {
        if n.rem_euclid(2) == 0 {
            T::zero()
        } else {
            self.mu.clone() + self.mu.clone()
        }
    }

    /// `mu_n = n + delta_n`; at `n = -1` this is the convention `-1 + 2mu`.
    pub fn mu_n(&self, n: i64) -> T {
        debug_assert!(n >= -1, "mu_n requested at n = {n}");
        T::from_int(n) + self.delta(n)
    }

    /// `xi_n = 1 + 2mu(-1)^n`
    pub fn xi(&self, n: i64) -> T {
        T::one() + T::from_int(2) * self.mu.clone() * T::parity_sign(n)
    }

    pub fn coeff_sequences(&self, n: i64) -> Result<CoefficientTriple<T>> {
        if n < -1 {
            return Err(Error::IndexOutOfRange { n, min: -1 });
        }
        Ok(CoefficientTriple {
            mu_n: self.mu_n(n),
            xi_n: self.xi(n),
            delta_n: self.delta(n),
        })
    }

    /// `T_mu f = f' + 2mu H_{-1} f`
    pub fn dunkl(&self, f: &Polynomial<T>) -> Polynomial<T> {
        let two_mu = self.mu.clone() + self.mu.clone();
        &f.derivative() + &reflection_difference(f).scale(&two_mu)
    }

    /// `T_mu^k f`
    pub fn dunkl_power(&self, f: &Polynomial<T>, k: usize) -> Polynomial<T> {
        (0..k).fold(f.clone(), |acc, _| self.dunkl(&acc))
    }

    /// Product rule `f T g + g T f - 4mu x (H_{-1} f)(H_{-1} g)`.
    pub fn dunkl_product(&self, f: &Polynomial<T>, g: &Polynomial<T>) -> Polynomial<T> {
        let four_mu = T::from_int(4) * self.mu.clone();
        let correction =
            (&reflection_difference(f) * &reflection_difference(g)).shift_up().scale(&four_mu);
        &(&(f * &self.dunkl(g)) + &(g * &self.dunkl(f))) - &correction
    }
}
