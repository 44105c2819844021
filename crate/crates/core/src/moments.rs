//! Symmetric moment functionals, normalized so that `m_0 = 1`, with pairing,
//! orthogonality and Hankel checks, the Pearson equation in moment form, and
//! the quadratic decompositions onto Laguerre and Jacobi polynomials.

use std::fmt;
use std::sync::{Arc, RwLock};

use crate::classical::Family;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::recurrence::SymmetricRecurrence;
use crate::report::{first_witness, Check, Checklist};
use crate::scalar::Scalar;

type EvenRatio<T> = dyn Fn(usize) -> Result<T> + Send + Sync;

/// A symmetric functional given by `m_{2n+2} / m_{2n}`.
///
/// Even moments are materialized lazily into an append-only cache; readers
/// share the lock and only extension takes it exclusively.
#[derive(Clone)]
pub struct MomentFunctional<T> {
    name: String,
    ratio: Arc<EvenRatio<T>>,
    even: Arc<RwLock<Vec<T>>>,
}

impl<T: Scalar> MomentFunctional<T> {
    pub fn from_even_ratio<F>(name: impl Into<String>, ratio: F) -> Self
    where
        F: Fn(usize) -> Result<T> + Send + Sync + 'static,
    {
        MomentFunctional {
            name: name.into(),
            ratio: Arc::new(ratio),
            even: Arc::new(RwLock::new(vec![T::one()])),
        }
    }

    /// Ratio `n + mu + 1/2`.
    pub fn hermite(mu: T) -> Self {
        Self::from_even_ratio("hermite", move |n| {
            Ok(T::from_int(n as i64) + mu.clone() + T::half())
        })
    }

    /// Ratio `(n + beta + 1) / (n + alpha + beta + 2)`.
    pub fn gegenbauer(alpha: T, beta: T) -> Self {
        Self::from_even_ratio("gegenbauer", move |n| {
            let nn = T::from_int(n as i64);
            let den = nn.clone() + alpha.clone() + beta.clone() + T::from_int(2);
            if den.is_zero() {
                return Err(Error::ExcludedParameters(format!("alpha + beta = -{}", n + 2)));
            }
            Ok((nn + beta.clone() + T::one()) / den)
        })
    }

    pub fn for_family(family: &Family<T>) -> Self {
        match family {
            Family::GeneralizedHermite { mu } => Self::hermite(mu.clone()),
            Family::GeneralizedGegenbauer { alpha, beta } => Self::gegenbauer(alpha.clone(), beta.clone()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `m_k`; odd moments vanish.
    pub fn moment(&self, k: usize) -> Result<T> {
        if k % 2 == 1 {
            return Ok(T::zero());
        }
        let idx = k / 2;
        {
            let even = self.even.read().expect("moment cache poisoned");
            if let Some(m) = even.get(idx) {
                return Ok(m.clone());
            }
        }
        let mut even = self.even.write().expect("moment cache poisoned");
        while even.len() <= idx {
            let n = even.len() - 1;
            let next = even[n].clone() * (self.ratio)(n)?;
            even.push(next);
        }
        Ok(even[idx].clone())
    }

    /// `m_0, ..., m_{count-1}`.
    pub fn moments(&self, count: usize) -> Result<Vec<T>> {
        (0..count).map(|k| self.moment(k)).collect()
    }

    /// `<u, f>`
    pub fn pair(&self, f: &Polynomial<T>) -> Result<T> {
        let mut acc = T::zero();
        for (k, c) in f.coeffs().iter().enumerate() {
            if k % 2 == 0 && !c.is_zero() {
                acc = acc + c.clone() * self.moment(k)?;
            }
        }
        Ok(acc)
    }
}

impl<T: Scalar> fmt::Debug for MomentFunctional<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cached = self.even.read().map(|v| v.len()).unwrap_or(0);
        f.debug_struct("MomentFunctional")
            .field("name", &self.name)
            .field("cached_even_moments", &cached)
            .finish()
    }
}

/// `<u, f>` for a functional given by its full moment list.
pub fn pair_with<T: Scalar>(moments: &[T], f: &Polynomial<T>) -> Result<T> {
    if let Some(d) = f.degree() {
        if d >= moments.len() {
            return Err(Error::SequenceTooShort { index: d, len: moments.len() });
        }
    }
    Ok(f.coeffs()
        .iter()
        .zip(moments)
        .fold(T::zero(), |acc, (c, m)| acc + c.clone() * m.clone()))
}

/// Checks `<u, P_n P_m> = 0` for `n != m` and `<u, P_n^2> = gamma_1 ... gamma_n`
/// for `n, m <= n_max`.
pub fn orthogonality_check<T: Scalar>(
    u: &MomentFunctional<T>,
    p: &[Polynomial<T>],
    gammas: &SymmetricRecurrence<T>,
    n_max: usize,
) -> Result<Checklist> {
    if p.len() <= n_max {
        return Err(Error::SequenceTooShort { index: n_max, len: p.len() });
    }
    if gammas.len() < n_max {
        return Err(Error::InsufficientCoefficients { kind: "gamma", needed: n_max, available: gammas.len() });
    }
    let mut off = None;
    'outer: for n in 0..=n_max {
        for m in 0..n {
            let v = u.pair(&(&p[n] * &p[m]))?;
            if !v.is_zero() {
                off = Some(format!("<u, P_{n} P_{m}> = {v}"));
                break 'outer;
            }
        }
    }
    let mut out = Checklist::new();
    out.push(Check::from_witness("orthogonality", "Eq. (1.7a)", off));
    let mut norm = None;
    let mut prod = T::one();
    for n in 0..=n_max {
        if n > 0 {
            prod = prod * gammas.gamma(n).clone();
        }
        let v = u.pair(&(&p[n] * &p[n]))?;
        if v.is_zero() || v != prod {
            norm = Some(format!("<u, P_{n}^2> = {v}, gamma_1...gamma_{n} = {prod}"));
            break;
        }
    }
    out.push(Check::from_witness("norms", "Eq. (1.7b)", norm));
    Ok(out)
}

/// Determinant by fraction-free elimination with row pivoting.
pub fn bareiss_determinant<T: Scalar>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    if n == 0 {
        return T::one();
    }
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// `Delta_n = det(m_{i+j})_{0 <= i, j <= n}`.
pub fn hankel<T: Scalar>(u: &MomentFunctional<T>, n: usize) -> Result<T> {
    let m = u.moments(2 * n + 1)?;
    let matrix = (0..=n).map(|i| m[i..=i + n].to_vec()).collect();
    Ok(bareiss_determinant(matrix))
}

/// `Delta_n != 0` and `Delta_n / Delta_{n-1} = gamma_1 ... gamma_n` for
/// `n <= n_max`, plus `Delta_n > 0` when `expect_positive`.
pub fn hankel_check<T: Scalar>(
    u: &MomentFunctional<T>,
    gammas: &SymmetricRecurrence<T>,
    n_max: usize,
    expect_positive: bool,
) -> Result<Check> {
    if gammas.len() < n_max {
        return Err(Error::InsufficientCoefficients { kind: "gamma", needed: n_max, available: gammas.len() });
    }
    let mut prev = T::one();
    let mut prod = T::one();
    for n in 0..=n_max {
        let delta = hankel(u, n)?;
        if n > 0 {
            prod = prod * gammas.gamma(n).clone();
        }
        let witness = if delta.is_zero() {
            Some(format!("Delta_{n} = 0"))
        } else if n > 0 && delta.clone() / prev.clone() != prod {
            Some(format!("Delta_{n} / Delta_{} = {}, gamma product {prod}", n - 1, delta.clone() / prev.clone()))
        } else if expect_positive && delta <= T::zero() {
            Some(format!("Delta_{n} = {delta} is not positive"))
        } else {
            None
        };
        if witness.is_some() {
            return Ok(Check::from_witness("hankel", "Theorem 1.2", witness));
        }
        prev = delta;
    }
    let mut check = Check::pass("hankel", "Theorem 1.2");
    if expect_positive {
        check = check.with_finding(format!("Delta_n > 0 for n <= {n_max}"));
    }
    Ok(check)
}

/// `D(phi u) + psi u = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PearsonPair<T> {
    pub phi: Polynomial<T>,
    pub psi: Polynomial<T>,
}

impl<T: Scalar> PearsonPair<T> {
    pub fn new(phi: Polynomial<T>, psi: Polynomial<T>) -> Self {
        PearsonPair { phi, psi }
    }

    /// `max(deg phi - 2, deg psi - 1)`
    pub fn class(&self) -> i64 {
        let deg = |p: &Polynomial<T>| p.degree().map_or(-1, |d| d as i64);
        (deg(&self.phi) - 2).max(deg(&self.psi) - 1)
    }

    /// When `deg psi = deg phi - 1`, the leading ratio must not be a natural number.
    pub fn is_admissible(&self) -> bool {
        match (self.phi.degree(), self.psi.degree(), self.phi.leading_coeff(), self.psi.leading_coeff()) {
            (Some(dp), Some(ds), Some(lp), Some(ls)) if dp == ds + 1 => {
                !(ls.clone() / lp.clone()).is_natural()
            }
            (_, None, _, _) => false,
            _ => true,
        }
    }

    /// `x`, `2x^2 - (2mu + 1)`
    pub fn hermite(mu: &T) -> Self {
        PearsonPair::new(
            Polynomial::x(),
            Polynomial::new(vec![-(T::from_int(2) * mu.clone() + T::one()), T::zero(), T::from_int(2)]),
        )
    }

    /// `x^3 - x`, `-(2(alpha+beta+2) x^2 + beta + 1)` as printed.
    pub fn gegenbauer_printed(alpha: &T, beta: &T) -> Self {
        let lead = T::from_int(2) * (alpha.clone() + beta.clone() + T::from_int(2));
        PearsonPair::new(
            cubic_phi(),
            Polynomial::new(vec![-(beta.clone() + T::one()), T::zero(), -lead]),
        )
    }

    /// `x^3 - x`, `-2(alpha+beta+2) x^2 + 2(beta+1)` from `(phi w)' = -psi w`
    /// on `w = |x|^(2beta+1) (1-x^2)^alpha`.
    pub fn gegenbauer_weight_derived(alpha: &T, beta: &T) -> Self {
        let lead = T::from_int(2) * (alpha.clone() + beta.clone() + T::from_int(2));
        PearsonPair::new(
            cubic_phi(),
            Polynomial::new(vec![T::from_int(2) * (beta.clone() + T::one()), T::zero(), -lead]),
        )
    }
}

fn cubic_phi<T: Scalar>() -> Polynomial<T> {
    Polynomial::new(vec![T::zero(), -T::one(), T::zero(), T::one()])
}

/// `<u, psi x^n - n phi x^(n-1)>` for `0 <= n <= n_max`.
pub fn pearson_residuals<T: Scalar>(
    u: &MomentFunctional<T>,
    pair: &PearsonPair<T>,
    n_max: usize,
) -> Result<Vec<T>> {
    (0..=n_max)
        .map(|n| {
            let xn = Polynomial::monomial(n, T::one());
            let mut f = &pair.psi * &xn;
            if n > 0 {
                let xm = Polynomial::monomial(n - 1, T::from_int(n as i64));
                f = &f - &(&pair.phi * &xm);
            }
            u.pair(&f)
        })
        .collect()
}

fn first_nonzero<T: Scalar>(residuals: &[T]) -> Option<String> {
    residuals
        .iter()
        .position(|r| !r.is_zero())
        .map(|n| format!("n = {n}: residual {}", residuals[n]))
}

/// Moment form of `D(phi u) + psi u = 0`, with class and admissibility.
pub fn pearson_check<T: Scalar>(u: &MomentFunctional<T>, pair: &PearsonPair<T>, n_max: usize) -> Result<Check> {
    let residuals = pearson_residuals(u, pair, n_max)?;
    let mut witness = first_nonzero(&residuals);
    if witness.is_none() && !pair.is_admissible() {
        witness = Some("pair is not admissible".into());
    }
    Ok(Check::from_witness("pearson", "Eq. (1.9)", witness).with_finding(format!(
        "class s = {}, admissible = {}",
        pair.class(),
        pair.is_admissible()
    )))
}

/// Runs both Gegenbauer candidates for `psi`; passes when the weight-derived
/// pair holds, and reports the outcome for the printed pair.
pub fn gegenbauer_pearson_check<T: Scalar>(alpha: &T, beta: &T, n_max: usize) -> Result<Check> {
    let u = MomentFunctional::gegenbauer(alpha.clone(), beta.clone());
    let printed = PearsonPair::gegenbauer_printed(alpha, beta);
    let derived = PearsonPair::gegenbauer_weight_derived(alpha, beta);
    let printed_res = pearson_residuals(&u, &printed, n_max)?;
    let derived_check = pearson_check(&u, &derived, n_max)?;
    let printed_note = match first_nonzero(&printed_res) {
        Some(w) => format!("printed psi = {} is inconsistent with the moments ({w})", printed.psi),
        None => format!("printed psi = {} is consistent with the moments", printed.psi),
    };
    let derived_note = if derived_check.passed {
        format!("weight-derived psi = {} is consistent", derived.psi)
    } else {
        format!("weight-derived psi = {} is inconsistent", derived.psi)
    };
    Ok(Check {
        name: "pearson".into(),
        anchor: "Eq. (1.9)".into(),
        passed: derived_check.passed,
        witness: derived_check.witness,
        finding: Some(format!(
            "{printed_note}; {derived_note}; {}",
            derived_check.finding.unwrap_or_default()
        )),
    })
}

/// `m_k` of `x^a e^(-x)` on `(0, inf)` normalized to `m_0 = 1`:
/// `m_{k+1} = (a + k + 1) m_k`.
pub fn laguerre_moments<T: Scalar>(a: &T, count: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(count);
    let mut m = T::one();
    for k in 0..count {
        out.push(m.clone());
        m = m * (a.clone() + T::from_int(k as i64 + 1));
    }
    out
}

/// `m_k` of `(1-x)^a (1+x)^b` on `(-1, 1)` normalized to `m_0 = 1`.
///
/// With `t = (1+x)/2` the weight is a Beta density, whose moments satisfy
/// `E[t^(k+1)] = E[t^k] (b+1+k)/(a+b+2+k)`; the `x` moments follow by the
/// binomial expansion of `(2t - 1)^k`.
pub fn jacobi_moments<T: Scalar>(a: &T, b: &T, count: usize) -> Result<Vec<T>> {
    let mut t = Vec::with_capacity(count);
    let mut m = T::one();
    for k in 0..count {
        t.push(m.clone());
        let den = a.clone() + b.clone() + T::from_int(k as i64 + 2);
        if den.is_zero() {
            return Err(Error::ExcludedParameters(format!("a + b = -{}", k + 2)));
        }
        m = m * (b.clone() + T::from_int(k as i64 + 1)) / den;
    }
    let mut out = Vec::with_capacity(count);
    let mut binom: Vec<T> = Vec::new();
    for k in 0..count {
        // row k of Pascal's triangle
        let mut row = vec![T::one(); k + 1];
        for i in 1..k {
            row[i] = binom[i - 1].clone() + binom[i].clone();
        }
        let mut acc = T::zero();
        let mut pow2 = T::one();
        for (i, c) in row.iter().enumerate() {
            acc = acc + c.clone() * pow2.clone() * T::parity_sign((k - i) as i64) * t[i].clone();
            pow2 = pow2 * T::from_int(2);
        }
        out.push(acc);
        binom = row;
    }
    Ok(out)
}

/// Monic `P_0, ..., P_n` orthogonal for the moment list, by Gram-Schmidt on
/// the monomials. Needs `m_0, ..., m_{2n}`.
pub fn mops_from_moments<T: Scalar>(moments: &[T], n: usize) -> Result<Vec<Polynomial<T>>> {
    if moments.len() < 2 * n + 1 {
        return Err(Error::SequenceTooShort { index: 2 * n, len: moments.len() });
    }
    let mut out: Vec<Polynomial<T>> = Vec::with_capacity(n + 1);
    let mut norms: Vec<T> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let xk = Polynomial::monomial(k, T::one());
        let mut p = xk.clone();
        for (pj, nj) in out.iter().zip(&norms) {
            let c = pair_with(moments, &(&xk * pj))? / nj.clone();
            p = &p - &pj.scale(&c);
        }
        let norm = pair_with(moments, &(&p * &p))?;
        if norm.is_zero() && k < n {
            return Err(Error::VanishingDenominator { n: k as i64, context: "<u, P_n^2> in Gram-Schmidt" });
        }
        out.push(p);
        norms.push(norm);
    }
    Ok(out)
}

/// `P(2x^2 - 1)`
fn at_quadratic<T: Scalar>(p: &Polynomial<T>, shift: bool) -> Polynomial<T> {
    let inner = if shift {
        Polynomial::new(vec![-T::one(), T::zero(), T::from_int(2)])
    } else {
        Polynomial::monomial(2, T::one())
    };
    p.compose(&inner)
}

/// Even and odd halves of the family against monic Laguerre (Hermite) or
/// Jacobi (Gegenbauer) polynomials built from their own moments, for
/// `0 <= n <= n_max`.
pub fn quadratic_decomposition_check<T: Scalar>(family: &Family<T>, n_max: usize) -> Result<Checklist> {
    family.validate(2 * n_max + 1)?;
    let p = family.mops(2 * n_max + 1)?;
    let count = 2 * n_max + 1;
    let mut out = Checklist::new();
    match family {
        Family::GeneralizedHermite { mu } => {
            let a = mu.clone() - T::half();
            let even = mops_from_moments(&laguerre_moments(&a, count), n_max)?;
            let odd = mops_from_moments(&laguerre_moments(&(a + T::one()), count), n_max)?;
            out.push(Check::from_witness(
                "qdecomp-laguerre",
                "Sec. 3, Hermite-Laguerre relation",
                first_witness(0..=n_max, |n| {
                    if p[2 * n] != at_quadratic(&even[n], false) {
                        return Some(format!("degree {}: P_{} != L_{n}^(mu-1/2)(x^2)", 2 * n, 2 * n));
                    }
                    if p[2 * n + 1] != at_quadratic(&odd[n], false).shift_up() {
                        return Some(format!("degree {}: P_{} != x L_{n}^(mu+1/2)(x^2)", 2 * n + 1, 2 * n + 1));
                    }
                    None
                }),
            ));
        }
        Family::GeneralizedGegenbauer { alpha, beta } => {
            let even = mops_from_moments(&jacobi_moments(alpha, beta, count)?, n_max)?;
            let beta1 = beta.clone() + T::one();
            let odd = mops_from_moments(&jacobi_moments(alpha, &beta1, count)?, n_max)?;
            out.push(
                Check::from_witness(
                    "qdecomp-jacobi",
                    "Eq. (3.9)",
                    first_witness(0..=n_max, |n| {
                        let scale = T::one() / (0..n).fold(T::one(), |acc, _| acc * T::from_int(2));
                        if p[2 * n] != at_quadratic(&even[n], true).scale(&scale) {
                            return Some(format!("degree {}: P_{} != 2^-{n} P_{n}^(alpha,beta)(2x^2-1)", 2 * n, 2 * n));
                        }
                        if p[2 * n + 1] != at_quadratic(&odd[n], true).shift_up().scale(&scale) {
                            return Some(format!(
                                "degree {}: P_{} != 2^-{n} x P_{n}^(alpha,beta+1)(2x^2-1)",
                                2 * n + 1,
                                2 * n + 1
                            ));
                        }
                        None
                    }),
                )
                .with_finding("odd degrees carry a factor x in front of the Jacobi polynomial"),
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::{One, Zero};

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    #[test]
    fn pairing_examples() {
        let u = MomentFunctional::hermite(q(1, 3));
        assert_eq!(u.pair(&Polynomial::one()).unwrap(), Rational::one());
        assert_eq!(u.pair(&Polynomial::monomial(2, q(1, 1))).unwrap(), q(5, 6));
        assert!(u.pair(&Polynomial::monomial(5, q(1, 1))).unwrap().is_zero());
        let g = MomentFunctional::gegenbauer(q(1, 2), q(1, 2));
        assert_eq!(g.pair(&Polynomial::monomial(2, q(1, 1))).unwrap(), q(1, 2));
    }

    #[test]
    fn hankel_examples() {
        let u = MomentFunctional::hermite(q(-1, 4));
        assert_eq!(hankel(&u, 0).unwrap(), q(1, 1));
        assert_eq!(hankel(&u, 1).unwrap(), q(1, 4));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = vec![
            vec![q(0, 1), q(2, 1), q(1, 1)],
            vec![q(1, 1), q(3, 2), q(-1, 1)],
            vec![q(4, 1), q(0, 1), q(5, 3)],
        ];
        // cofactor expansion along the first row
        let expect = q(0, 1) - q(2, 1) * (q(5, 3) + q(4, 1)) + q(1, 1) * (q(0, 1) - q(6, 1));
        assert_eq!(bareiss_determinant(m), expect);
    }

    #[test]
    fn pearson_class_and_admissibility() {
        let h = PearsonPair::hermite(&q(1, 3));
        assert_eq!(h.class(), 1);
        assert!(h.is_admissible());
        let g = PearsonPair::gegenbauer_weight_derived(&q(1, 2), &q(1, 2));
        assert_eq!(g.class(), 1);
        assert!(g.is_admissible());
        // deg psi = deg phi - 1 with leading ratio 3
        let bad = PearsonPair::new(Polynomial::monomial(2, q(1, 1)), Polynomial::monomial(1, q(3, 1)));
        assert!(!bad.is_admissible());
    }

    #[test]
    fn printed_gegenbauer_psi_is_flagged() {
        let c = gegenbauer_pearson_check(&q(1, 2), &q(1, 2), 10).unwrap();
        assert!(c.passed);
        assert!(c.finding.unwrap().contains("inconsistent with the moments (n = 0"));
    }

    #[test]
    fn jacobi_moments_symmetric_case() {
        // (1-x^2)^0: uniform on (-1, 1), m_2 = 1/3, m_4 = 1/5
        let m = jacobi_moments(&q(0, 1), &q(0, 1), 5).unwrap();
        assert_eq!(m, vec![q(1, 1), q(0, 1), q(1, 3), q(0, 1), q(1, 5)]);
    }

    #[test]
    fn concurrent_readers_share_cache() {
        let u = MomentFunctional::hermite(q(1, 2));
        let handles: Vec<_> = (0..4)
            .map(|i| {
                let u = u.clone();
                std::thread::spawn(move || u.moment(10 + 2 * i).unwrap())
            })
            .collect();
        for (i, h) in handles.into_iter().enumerate() {
            assert_eq!(h.join().unwrap(), u.moment(10 + 2 * i).unwrap());
        }
    }
}
