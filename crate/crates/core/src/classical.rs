//! Construction of the symmetric Dunkl-classical families from the Riccati
//! system for `theta_n` and the propagation law for `gamma_n`.
//!
//! Two solution branches exist. Case A is the constant solution
//! `theta_n = 1` and yields the generalized Hermite polynomials. Case B
//! carries a free parameter `theta` and yields the generalized Gegenbauer
//! polynomials once `(theta, mu)` is rewritten in terms of `(alpha, beta)`.
//!
//! Several expressions below are quotients by `xi_{n}`, which vanishes for odd
//! `n` when `mu = 1/2`. The numerators vanish there as well; the
//! `*_over_xi` helpers on [`ThetaSequence`] give the cancelled quotients so
//! those parameters stay computable.

use crate::dunkl::DunklContext;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::recurrence::{detect_three_term, key_identity_check, q_sequence, SymmetricRecurrence, ThreeTermDetection};
use crate::report::{first_witness, Check, Checklist};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaCase<T> {
    /// `theta_n = 1`
    A,
    /// `theta_n = (n + theta + 1 - mu(-1)^n) / (n + theta + mu(-1)^n)`
    B { theta: T },
}

/// A solution of `xi_{n+1} theta_{n+1} + xi_n / theta_n = 2`, with the
/// conventions `theta_0 = 1` and `theta_{-1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSequence<T> {
    case: ThetaCase<T>,
    mu: T,
}

impl<T: Scalar> ThetaSequence<T> {
    pub fn case_a(mu: T) -> Self {
        ThetaSequence { case: ThetaCase::A, mu }
    }

    pub fn case_b(mu: T, theta: T) -> Self {
        ThetaSequence {
            case: ThetaCase::B { theta },
            mu,
        }
    }

    pub fn case(&self) -> &ThetaCase<T> {
        &self.case
    }

    pub fn mu(&self) -> &T {
        &self.mu
    }

    /// `mu (-1)^n`
    fn signed_mu(&self, n: i64) -> T {
        self.mu.clone() * T::parity_sign(n)
    }

    /// Denominator `n + theta + mu(-1)^n` of case B, `None` in case A.
    fn case_b_denominator(&self, n: i64) -> Option<T> {
        match &self.case {
            ThetaCase::A => None,
            ThetaCase::B { theta } => Some(T::from_int(n) + theta.clone() + self.signed_mu(n)),
        }
    }

    pub fn theta(&self, n: i64) -> Result<T> {
        match n {
            i64::MIN..=-2 => Err(Error::IndexOutOfRange { n, min: -1 }),
            -1 => Ok(T::zero()),
            0 => Ok(T::one()),
            _ => match &self.case {
                ThetaCase::A => Ok(T::one()),
                ThetaCase::B { theta } => {
                    let den = T::from_int(n) + theta.clone() + self.signed_mu(n);
                    let num = T::from_int(n + 1) + theta.clone() - self.signed_mu(n);
                    if den.is_zero() || num.is_zero() {
                        return Err(Error::ThetaExcluded { n });
                    }
                    Ok(num / den)
                }
            },
        }
    }

    /// Rejects `theta = -n +/- mu(-1)^n` for `1 <= n <= horizon`.
    pub fn check_exclusions(&self, horizon: usize) -> Result<()> {
        if let ThetaCase::B { theta } = &self.case {
            for n in 1..=horizon as i64 {
                let base = theta.clone() + T::from_int(n);
                let s = self.signed_mu(n);
                if (base.clone() + s.clone()).is_zero() || (base - s).is_zero() {
                    return Err(Error::ThetaExcluded { n });
                }
            }
        }
        Ok(())
    }

    /// `(mu_k theta_k - mu_{k-1}) / xi_{k+1}` in cancelled form.
    pub fn lower_gap_over_xi(&self, k: i64) -> Result<T> {
        if k < 0 {
            return Err(Error::IndexOutOfRange { n: k, min: 0 });
        }
        match (&self.case, k) {
            (ThetaCase::A, _) | (_, 0) => Ok(T::one()),
            (ThetaCase::B { theta }, _) => {
                let den = self.case_b_denominator(k).expect("case B");
                if den.is_zero() {
                    return Err(Error::ThetaExcluded { n: k });
                }
                Ok((T::from_int(2 * k) + theta.clone() + self.mu.clone()) / den)
            }
        }
    }

    /// `(mu_{k+2} theta_k - mu_{k+1}) / xi_{k+1}` in cancelled form.
    pub fn upper_gap_over_xi(&self, k: i64) -> Result<T> {
        if k < 0 {
            return Err(Error::IndexOutOfRange { n: k, min: 0 });
        }
        match (&self.case, k) {
            (ThetaCase::A, _) | (_, 0) => Ok(T::one()),
            (ThetaCase::B { theta }, _) => {
                let den = self.case_b_denominator(k).expect("case B");
                if den.is_zero() {
                    return Err(Error::ThetaExcluded { n: k });
                }
                Ok((T::from_int(2 * k + 2) + theta.clone() + self.mu.clone()) / den)
            }
        }
    }

    /// Identifies the solution through `theta_1`: case A when `theta_1 = 1`,
    /// otherwise case B with the unique `theta` reproducing `theta_1`.
    pub fn fit(mu: T, theta1: T) -> Result<Self> {
        if theta1.is_one() {
            return Ok(Self::case_a(mu));
        }
        // theta_1 = (theta + 2 + mu) / (theta + 1 - mu)
        let theta = (T::from_int(2) + mu.clone() - theta1.clone() * (T::one() - mu.clone()))
            / (theta1 - T::one());
        Ok(Self::case_b(mu, theta))
    }
}

/// `xi_{n+1} theta_{n+1} + xi_n / theta_n - 2`
pub fn riccati_residual<T: Scalar>(theta: &ThetaSequence<T>, ctx: &DunklContext<T>, n: i64) -> Result<T> {
    let th_n = theta.theta(n)?;
    let th_next = theta.theta(n + 1)?;
    Ok(ctx.xi(n + 1) * th_next + ctx.xi(n) / th_n - T::from_int(2))
}

/// Checks the Riccati equation exactly for `1 <= n <= horizon - 1`.
pub fn riccati_check<T: Scalar>(theta: &ThetaSequence<T>, horizon: usize) -> Result<bool> {
    let ctx = DunklContext::new(theta.mu.clone(), 0)?;
    for n in 1..horizon as i64 {
        if !riccati_residual(theta, &ctx, n)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `theta_1, ..., theta_horizon` obtained by running the Riccati recursion
/// forward from an arbitrary `theta_1`.
pub fn riccati_orbit<T: Scalar>(mu: &T, theta1: T, horizon: usize) -> Result<Vec<T>> {
    let ctx = DunklContext::new(mu.clone(), 0)?;
    let mut out = vec![theta1];
    for n in 1..horizon as i64 {
        let prev = out.last().expect("nonempty").clone();
        let xi_next = ctx.xi(n + 1);
        if prev.is_zero() || xi_next.is_zero() {
            return Err(Error::VanishingDenominator {
                n,
                context: "Riccati recursion",
            });
        }
        out.push((T::from_int(2) - ctx.xi(n) / prev) / xi_next);
    }
    Ok(out)
}

fn check_same_mu<T: Scalar>(theta: &ThetaSequence<T>, ctx: &DunklContext<T>) -> Result<()> {
    if theta.mu() != ctx.mu() {
        return Err(Error::ParameterMismatch("theta sequence and context carry different mu"));
    }
    Ok(())
}

/// `gamma_1, ..., gamma_horizon` from the propagation law
///
/// `gamma_{n+2} = (xi_{n+2}/xi_{n+1}) (mu_{n+2}/mu_{n+1})
///     (mu_n theta_n - mu_{n-1}) / (mu_{n+3} theta_{n+1} - mu_{n+2}) gamma_{n+1}`
///
/// evaluated literally whenever both `xi` factors are nonzero.
pub fn gamma_from_theta<T: Scalar>(
    theta: &ThetaSequence<T>,
    gamma1: T,
    ctx: &DunklContext<T>,
    horizon: usize,
) -> Result<SymmetricRecurrence<T>> {
    check_same_mu(theta, ctx)?;
    theta.check_exclusions(horizon.saturating_sub(1))?;
    if gamma1.is_zero() {
        return Err(Error::VanishingGamma { n: 1 });
    }
    let mut gammas = vec![gamma1];
    for n in 0..horizon.saturating_sub(1) as i64 {
        let mu_lo = ctx.mu_n(n + 1);
        if mu_lo.is_zero() {
            return Err(Error::VanishingDenominator { n, context: "mu_{n+1} in gamma propagation" });
        }
        let mu_ratio = ctx.mu_n(n + 2) / mu_lo;
        let (xi1, xi2) = (ctx.xi(n + 1), ctx.xi(n + 2));
        let factor = if !xi1.is_zero() && !xi2.is_zero() {
            let num = ctx.mu_n(n) * theta.theta(n)? - ctx.mu_n(n - 1);
            let den = ctx.mu_n(n + 3) * theta.theta(n + 1)? - ctx.mu_n(n + 2);
            if den.is_zero() {
                return Err(Error::VanishingDenominator { n, context: "mu_{n+3} theta_{n+1} - mu_{n+2}" });
            }
            xi2 / xi1 * mu_ratio * num / den
        } else {
            let den = theta.upper_gap_over_xi(n + 1)?;
            if den.is_zero() {
                return Err(Error::VanishingDenominator { n, context: "mu_{n+3} theta_{n+1} - mu_{n+2}" });
            }
            mu_ratio * theta.lower_gap_over_xi(n)? / den
        };
        let next = factor * gammas.last().expect("nonempty").clone();
        gammas.push(next);
    }
    SymmetricRecurrence::new(gammas)
}

/// `gamma~_n = (mu_n / mu_{n+1}) theta_n gamma_{n+1}` for `1 <= n < gammas.len()`.
pub fn gamma_tilde<T: Scalar>(
    theta: &ThetaSequence<T>,
    gammas: &SymmetricRecurrence<T>,
    ctx: &DunklContext<T>,
) -> Result<SymmetricRecurrence<T>> {
    check_same_mu(theta, ctx)?;
    let mut out = Vec::with_capacity(gammas.len().saturating_sub(1));
    for n in 1..gammas.len() {
        let ni = n as i64;
        let mu_hi = ctx.mu_n(ni + 1);
        if mu_hi.is_zero() {
            return Err(Error::VanishingDenominator { n: ni, context: "mu_{n+1} in gamma~" });
        }
        out.push(ctx.mu_n(ni) / mu_hi * theta.theta(ni)? * gammas.gamma(n + 1).clone());
    }
    SymmetricRecurrence::new(out)
}

/// `gamma_n = (n + delta_n) / 2`, the generalized Hermite coefficients with
/// `gamma_1 = mu_1 / 2`.
pub fn hermite_gamma<T: Scalar>(mu: &T, n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::IndexOutOfRange { n: 0, min: 1 });
    }
    let ctx = DunklContext::new(mu.clone(), n)?;
    Ok(ctx.mu_n(n as i64) * T::half())
}

fn gegenbauer_mu<T: Scalar>(beta: &T) -> T {
    beta.clone() + T::half()
}

fn delta_for<T: Scalar>(mu: &T, n: i64) -> T {
    if n.rem_euclid(2) == 0 {
        T::zero()
    } else {
        mu.clone() + mu.clone()
    }
}

fn excluded(what: &str, n: usize) -> Error {
    Error::ExcludedParameters(format!("{what} at n = {n}"))
}

/// Generalized Gegenbauer recurrence coefficient `gamma_n`, `n >= 1`:
/// `gamma_1 = (beta+1)/(alpha+beta+2)` and for `n >= 2`
/// `gamma_n = (n + 2alpha + delta_n)(n + delta_n) / (4 (n+1+alpha+beta)(n+alpha+beta))`
/// with `delta` taken at `mu = beta + 1/2`.
pub fn gegenbauer_gamma<T: Scalar>(alpha: &T, beta: &T, n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::IndexOutOfRange { n: 0, min: 1 });
    }
    let ab = alpha.clone() + beta.clone();
    let value = if n == 1 {
        let den = ab + T::from_int(2);
        if den.is_zero() {
            return Err(excluded("alpha + beta + 2 = 0", n));
        }
        (beta.clone() + T::one()) / den
    } else {
        let nn = T::from_int(n as i64);
        let delta = delta_for(&gegenbauer_mu(beta), n as i64);
        let den = T::from_int(4)
            * (nn.clone() + T::one() + ab.clone())
            * (nn.clone() + ab);
        if den.is_zero() {
            return Err(excluded("alpha + beta = -n", n));
        }
        (nn.clone() + T::from_int(2) * alpha.clone() + delta.clone()) * (nn + delta) / den
    };
    if value.is_zero() {
        return Err(Error::VanishingGamma { n });
    }
    Ok(value)
}

/// Closed form of `gamma~_n` for the generalized Gegenbauer family:
/// `(n + 2 + 2alpha + delta_n)(n + delta_n) / (4 (n+2+alpha+beta)(n+1+alpha+beta))`.
pub fn gegenbauer_gamma_tilde<T: Scalar>(alpha: &T, beta: &T, n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::IndexOutOfRange { n: 0, min: 1 });
    }
    let nn = T::from_int(n as i64);
    let ab = alpha.clone() + beta.clone();
    let delta = delta_for(&gegenbauer_mu(beta), n as i64);
    let den = T::from_int(4)
        * (nn.clone() + T::from_int(2) + ab.clone())
        * (nn.clone() + T::one() + ab);
    if den.is_zero() {
        return Err(excluded("alpha + beta = -n - 1", n));
    }
    let value = (nn.clone() + T::from_int(2) + T::from_int(2) * alpha.clone() + delta.clone())
        * (nn + delta)
        / den;
    if value.is_zero() {
        return Err(Error::VanishingGamma { n });
    }
    Ok(value)
}

/// `(alpha, beta) -> (theta, mu)` with `theta + mu = 2(alpha+beta+1)` and
/// `theta - mu = 2alpha + 1`.
pub fn param_map<T: Scalar>(alpha: &T, beta: &T) -> Result<(T, T)> {
    if (beta.clone() + T::one()).is_zero() {
        return Err(Error::ExcludedParameters("beta = -1".into()));
    }
    if (alpha.clone() + beta.clone() + T::from_int(2)).is_zero() {
        return Err(Error::ExcludedParameters("alpha + beta = -2".into()));
    }
    let mu = beta.clone() + T::half();
    let theta = T::from_int(2) * alpha.clone() + beta.clone() + T::from_ratio(3, 2);
    Ok((theta, mu))
}

/// Inverse of [`param_map`]: `(theta, mu) -> (alpha, beta)`.
pub fn param_unmap<T: Scalar>(theta: &T, mu: &T) -> (T, T) {
    let beta = mu.clone() - T::half();
    let alpha = (theta.clone() - mu.clone() - T::one()) * T::half();
    (alpha, beta)
}

/// The two symmetric Dunkl-classical families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family<T> {
    GeneralizedHermite { mu: T },
    GeneralizedGegenbauer { alpha: T, beta: T },
}

impl<T: Scalar> Family<T> {
    pub fn hermite(mu: T) -> Self {
        Family::GeneralizedHermite { mu }
    }

    pub fn gegenbauer(alpha: T, beta: T) -> Self {
        Family::GeneralizedGegenbauer { alpha, beta }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::GeneralizedHermite { .. } => "hermite",
            Family::GeneralizedGegenbauer { .. } => "gegenbauer",
        }
    }

    /// Dunkl parameter; `beta + 1/2` for Gegenbauer.
    pub fn mu(&self) -> T {
        match self {
            Family::GeneralizedHermite { mu } => mu.clone(),
            Family::GeneralizedGegenbauer { beta, .. } => gegenbauer_mu(beta),
        }
    }

    /// Checks every parameter exclusion relevant up to degree `horizon + 1`.
    pub fn validate(&self, horizon: usize) -> Result<()> {
        self.context(horizon)?;
        if let Family::GeneralizedGegenbauer { alpha, beta } = self {
            for n in 1..=horizon + 2 {
                let nn = T::from_int(n as i64);
                if (alpha.clone() + beta.clone() + nn.clone()).is_zero() {
                    return Err(excluded("alpha + beta = -n", n));
                }
                if (beta.clone() + nn.clone()).is_zero() {
                    return Err(excluded("beta = -n", n));
                }
                if (alpha.clone() + nn).is_zero() {
                    return Err(excluded("alpha = -n", n));
                }
            }
            self.theta()?.check_exclusions(horizon + 1)?;
            for n in 1..=horizon + 1 {
                gegenbauer_gamma(alpha, beta, n)?;
                gegenbauer_gamma_tilde(alpha, beta, n)?;
            }
        }
        Ok(())
    }

    /// Context guarding `mu != -n - 1/2` up to degree `horizon + 1`.
    pub fn context(&self, horizon: usize) -> Result<DunklContext<T>> {
        DunklContext::new(self.mu(), horizon + 1)
    }

    pub fn theta(&self) -> Result<ThetaSequence<T>> {
        match self {
            Family::GeneralizedHermite { mu } => Ok(ThetaSequence::case_a(mu.clone())),
            Family::GeneralizedGegenbauer { alpha, beta } => {
                let (theta, mu) = param_map(alpha, beta)?;
                Ok(ThetaSequence::case_b(mu, theta))
            }
        }
    }

    /// Normalization `gamma_1` that makes the closed forms literal.
    pub fn default_gamma1(&self) -> Result<T> {
        match self {
            Family::GeneralizedHermite { mu } => hermite_gamma(mu, 1),
            Family::GeneralizedGegenbauer { alpha, beta } => gegenbauer_gamma(alpha, beta, 1),
        }
    }

    /// Closed-form `gamma_1, ..., gamma_horizon`.
    pub fn gammas(&self, horizon: usize) -> Result<SymmetricRecurrence<T>> {
        let gammas = (1..=horizon)
            .map(|n| match self {
                Family::GeneralizedHermite { mu } => hermite_gamma(mu, n),
                Family::GeneralizedGegenbauer { alpha, beta } => gegenbauer_gamma(alpha, beta, n),
            })
            .collect::<Result<Vec<_>>>()?;
        SymmetricRecurrence::new(gammas)
    }

    /// Closed-form `gamma~_1, ..., gamma~_horizon`.
    pub fn gamma_tildes(&self, horizon: usize) -> Result<SymmetricRecurrence<T>> {
        let gammas = (1..=horizon)
            .map(|n| match self {
                Family::GeneralizedHermite { mu } => hermite_gamma(mu, n),
                Family::GeneralizedGegenbauer { alpha, beta } => {
                    gegenbauer_gamma_tilde(alpha, beta, n)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        SymmetricRecurrence::new(gammas)
    }

    /// `gamma_1, ..., gamma_horizon` through the Riccati construction.
    pub fn gammas_from_theta(&self, horizon: usize) -> Result<SymmetricRecurrence<T>> {
        gamma_from_theta(
            &self.theta()?,
            self.default_gamma1()?,
            &self.context(horizon)?,
            horizon,
        )
    }

    /// Monic `P_0, ..., P_horizon` from the closed-form coefficients.
    pub fn mops(&self, horizon: usize) -> Result<Vec<Polynomial<T>>> {
        self.gammas(horizon.saturating_sub(1))?.generate(horizon)
    }
}

/// Riccati equation for the family's `theta` sequence to `horizon`.
pub fn riccati_family_check<T: Scalar>(family: &Family<T>, horizon: usize) -> Result<Check> {
    let theta = family.theta()?;
    theta.check_exclusions(horizon)?;
    let ctx = DunklContext::new(theta.mu().clone(), 0)?;
    Ok(Check::from_witness(
        "riccati",
        "Eq. (2.2)",
        first_witness(1..horizon, |n| {
            let r = riccati_residual(&theta, &ctx, n as i64).ok()?;
            (!r.is_zero()).then(|| format!("n = {n}: residual {r}"))
        }),
    ))
}

fn compare_sequences<T: Scalar>(what: &str, got: &[T], want: &[T]) -> Option<String> {
    if got.len() != want.len() {
        return Some(format!("{what}: {} terms, expected {}", got.len(), want.len()));
    }
    got.iter()
        .zip(want)
        .position(|(a, b)| a != b)
        .map(|i| format!("{what}: index {}: {} != {}", i + 1, got[i], want[i]))
}

/// Forward direction for a family: `gamma` from the propagation law equals
/// the closed form, and `Q_n = T P_{n+1} / mu_{n+1}` is detected as a
/// symmetric MOPS whose coefficients match both the `gamma~` map and the
/// closed form, for `P_0, ..., P_{horizon + 1}`.
pub fn theorem21_check<T: Scalar>(family: &Family<T>, horizon: usize) -> Result<Checklist> {
    family.validate(horizon + 2)?;
    let ctx = family.context(horizon + 2)?;
    let theta = family.theta()?;
    let closed = family.gammas(horizon + 1)?;
    let propagated = family.gammas_from_theta(horizon + 1)?;
    let mut out = Checklist::new();
    out.push(Check::from_witness(
        "gamma-propagation",
        "Eq. (2.1)",
        compare_sequences("gamma", propagated.gammas(), closed.gammas()),
    ));
    let p = closed.generate(horizon + 1)?;
    let q = q_sequence(&p, &ctx)?;
    let witness = match detect_three_term(&q)? {
        ThreeTermDetection::NotOrthogonal(o) => Some(format!(
            "Q not orthogonal: lambda_({},{}) = {} ({:?})",
            o.n, o.nu, o.coefficient, o.kind
        )),
        ThreeTermDetection::Orthogonal(detected) => {
            let from_map = gamma_tilde(&theta, &closed, &ctx)?;
            let expected = family.gamma_tildes(detected.len())?;
            compare_sequences("gamma~ vs Eq. (2.3)", detected.gammas(), &from_map.gammas()[..detected.len()])
                .or_else(|| compare_sequences("gamma~ vs closed form", detected.gammas(), expected.gammas()))
        }
    };
    let anchor = match family {
        Family::GeneralizedHermite { .. } => "Eq. (2.3), Eq. (3.1)",
        Family::GeneralizedGegenbauer { .. } => "Eq. (2.3), Eq. (3.10)",
    };
    out.push(Check::from_witness("theorem21", anchor, witness));
    Ok(out)
}

/// `xi_{n+1} P_{n+1} = mu_{n+2} Q_{n+1} + mu_n gamma_{n+1} Q_{n-1} - mu_{n+1} x Q_n`
/// for `0 <= n < horizon`, given any symmetric recurrence.
pub fn key_identity_report<T: Scalar>(gammas: &SymmetricRecurrence<T>, ctx: &DunklContext<T>, horizon: usize) -> Result<Check> {
    let p = gammas.generate(horizon + 1)?;
    let q = q_sequence(&p, ctx)?;
    let mut witness = None;
    for n in 0..horizon {
        if !key_identity_check(&p, &q, gammas, ctx, n)? {
            witness = Some(format!("n = {n}"));
            break;
        }
    }
    Ok(Check::from_witness("keyid", "Eq. (1.16)", witness))
}

/// Three-term detection on `Q` for an arbitrary symmetric recurrence; passes
/// when `Q` is orthogonal.
pub fn detection_report<T: Scalar>(gammas: &SymmetricRecurrence<T>, ctx: &DunklContext<T>, horizon: usize) -> Result<Check> {
    let p = gammas.generate(horizon + 1)?;
    let q = q_sequence(&p, ctx)?;
    Ok(match detect_three_term(&q)? {
        ThreeTermDetection::Orthogonal(_) => Check::pass("theorem21", "Eq. (2.3)"),
        ThreeTermDetection::NotOrthogonal(o) => Check::fail(
            "theorem21",
            "Eq. (2.3)",
            format!("Q not orthogonal: lambda_({},{}) = {} ({:?})", o.n, o.nu, o.coefficient, o.kind),
        ),
    })
}

/// `T P_{n+1} = mu_{n+1} P_n` for the generalized Hermite family, `n <= horizon`.
pub fn appell_check<T: Scalar>(mu: &T, horizon: usize) -> Result<Checklist> {
    let family = Family::hermite(mu.clone());
    family.validate(horizon + 1)?;
    let ctx = family.context(horizon + 1)?;
    let p = family.mops(horizon + 1)?;
    let g = family.gammas(horizon + 1)?;
    let gt = family.gamma_tildes(horizon + 1)?;
    let mut out = Checklist::new();
    out.push(Check::from_witness(
        "appell",
        "Sec. 3, Dunkl-Appell property",
        first_witness(0..=horizon, |n| {
            let lhs = ctx.dunkl(&p[n + 1]);
            let rhs = p[n].scale(&ctx.mu_n(n as i64 + 1));
            (lhs != rhs).then(|| format!("n = {n}: T P_(n+1) = {lhs}, mu_(n+1) P_n = {rhs}"))
        }),
    ));
    out.push(Check::from_witness(
        "appell-gamma",
        "Eq. (3.1)",
        compare_sequences("gamma~ vs gamma", gt.gammas(), g.gammas()),
    ));
    Ok(out)
}

/// `Q_n(alpha, beta) = P_n(alpha + 1, beta)` and
/// `gamma~_n(alpha, beta) = gamma_n(alpha + 1, beta)`, `n <= horizon`.
pub fn shift_check<T: Scalar>(alpha: &T, beta: &T, horizon: usize) -> Result<Checklist> {
    let family = Family::gegenbauer(alpha.clone(), beta.clone());
    let raised = Family::gegenbauer(alpha.clone() + T::one(), beta.clone());
    family.validate(horizon + 1)?;
    raised.validate(horizon)?;
    let ctx = family.context(horizon + 1)?;
    let p = family.mops(horizon + 1)?;
    let q = q_sequence(&p, &ctx)?;
    let shifted = raised.mops(horizon)?;
    let mut out = Checklist::new();
    out.push(Check::from_witness(
        "shift",
        "Eq. (3.12)",
        first_witness(0..=horizon, |n| {
            (q[n] != shifted[n]).then(|| format!("n = {n}: Q_n = {}, P_n(alpha+1) = {}", q[n], shifted[n]))
        }),
    ));
    out.push(Check::from_witness(
        "shift-gamma",
        "Eq. (3.11)",
        compare_sequences(
            "gamma~(alpha, beta) vs gamma(alpha+1, beta)",
            family.gamma_tildes(horizon)?.gammas(),
            raised.gammas(horizon)?.gammas(),
        ),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Zero;

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    #[test]
    fn case_b_theta_example() {
        let th = ThetaSequence::case_b(q(1, 2), q(2, 1));
        assert_eq!(th.theta(1).unwrap(), q(9, 5));
        let ctx = DunklContext::new(q(1, 2), 4).unwrap();
        assert!(riccati_residual(&th, &ctx, 1).unwrap().is_zero());
        assert_eq!(th.theta(0).unwrap(), q(1, 1));
        assert_eq!(th.theta(-1).unwrap(), q(0, 1));
    }

    #[test]
    fn exclusion_names_index() {
        let mu = q(1, 3);
        let th = ThetaSequence::case_b(mu.clone(), q(-1, 1) + mu);
        assert_eq!(th.check_exclusions(5), Err(Error::ThetaExcluded { n: 1 }));
        assert_eq!(th.theta(1), Err(Error::ThetaExcluded { n: 1 }));
    }

    #[test]
    fn hermite_values() {
        assert_eq!(hermite_gamma(&q(0, 1), 3).unwrap(), q(3, 2));
        assert_eq!(hermite_gamma(&q(1, 2), 1).unwrap(), q(1, 1));
        assert_eq!(hermite_gamma(&q(1, 2), 2).unwrap(), q(1, 1));
        assert!(matches!(hermite_gamma(&q(-3, 2), 3), Err(Error::SingularMu { n: 1 })));
    }

    #[test]
    fn gegenbauer_values() {
        assert_eq!(gegenbauer_gamma(&q(1, 2), &q(1, 2), 1).unwrap(), q(1, 2));
        assert_eq!(gegenbauer_gamma(&q(1, 2), &q(1, 2), 2).unwrap(), q(1, 8));
        assert_eq!(gegenbauer_gamma(&q(1, 2), &q(-1, 2), 1).unwrap(), q(1, 4));
        assert_eq!(gegenbauer_gamma(&q(1, 2), &q(-1, 2), 2).unwrap(), q(1, 4));
        assert!(gegenbauer_gamma(&q(1, 1), &q(-3, 1), 1).is_err());
    }

    #[test]
    fn param_map_examples() {
        assert_eq!(param_map(&q(1, 2), &q(1, 2)).unwrap(), (q(3, 1), q(1, 1)));
        assert_eq!(param_map(&q(5, 3), &q(-1, 2)).unwrap().1, q(0, 1));
        assert_eq!(param_unmap(&q(3, 1), &q(1, 1)), (q(1, 2), q(1, 2)));
    }

    #[test]
    fn half_mu_propagation() {
        let ctx = DunklContext::new(q(1, 2), 10).unwrap();
        let rec = gamma_from_theta(&ThetaSequence::case_a(q(1, 2)), q(1, 1), &ctx, 6).unwrap();
        let expect: Vec<_> = [1, 1, 2, 2, 3, 3].iter().map(|&k| q(k, 1)).collect();
        assert_eq!(rec.gammas(), expect.as_slice());
    }

    #[test]
    fn mismatched_mu_is_rejected() {
        let ctx = DunklContext::new(q(1, 3), 4).unwrap();
        assert!(matches!(
            gamma_from_theta(&ThetaSequence::case_a(q(1, 2)), q(1, 1), &ctx, 4),
            Err(Error::ParameterMismatch(_))
        ));
    }
}
