//! Monic orthogonal polynomial sequences from three-term recurrences, the
//! normalized Dunkl image sequence, basis expansions and three-term detection.
//!
//! Indexing follows the recurrence `P_{n+2} = (x - beta_{n+1}) P_{n+1} - gamma_{n+1} P_n`
//! with `P_0 = 1`, `P_1 = x - beta_0`: betas start at index 0, gammas at index 1.

use crate::dunkl::DunklContext;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// `gamma_1, gamma_2, ...` of a recurrence with all `beta_n = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricRecurrence<T> {
    gammas: Vec<T>,
}

impl<T: Scalar> SymmetricRecurrence<T> {
    /// `gammas[0]` is `gamma_1`. Every entry must be nonzero.
    pub fn new(gammas: Vec<T>) -> Result<Self> {
        if let Some(i) = gammas.iter().position(|g| g.is_zero()) {
            return Err(Error::VanishingGamma { n: i + 1 });
        }
        Ok(SymmetricRecurrence { gammas })
    }

    /// `gamma_n` for `1 <= n <= len`.
    pub fn gamma(&self, n: usize) -> &T {
        assert!(n >= 1 && n <= self.gammas.len(), "gamma_{n} out of range");
        &self.gammas[n - 1]
    }

    pub fn gammas(&self) -> &[T] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn truncate(&self, len: usize) -> Self {
        SymmetricRecurrence {
            gammas: self.gammas.iter().take(len).cloned().collect(),
        }
    }

    pub fn to_general(&self) -> GeneralRecurrence<T> {
        GeneralRecurrence {
            betas: vec![T::zero(); self.gammas.len() + 1],
            gammas: self.gammas.clone(),
        }
    }

    /// `P_0, ..., P_n`.
    pub fn generate(&self, n: usize) -> Result<Vec<Polynomial<T>>> {
        generate_mops(&self.to_general(), n)
    }
}

/// Recurrence with arbitrary `beta_n` (`n >= 0`) and `gamma_n` (`n >= 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralRecurrence<T> {
    betas: Vec<T>,
    gammas: Vec<T>,
}

impl<T: Scalar> GeneralRecurrence<T> {
    pub fn new(betas: Vec<T>, gammas: Vec<T>) -> Result<Self> {
        if let Some(i) = gammas.iter().position(|g| g.is_zero()) {
            return Err(Error::VanishingGamma { n: i + 1 });
        }
        Ok(GeneralRecurrence { betas, gammas })
    }

    pub fn betas(&self) -> &[T] {
        &self.betas
    }

    pub fn gammas(&self) -> &[T] {
        &self.gammas
    }

    pub fn is_symmetric(&self) -> bool {
        self.betas.iter().all(|b| b.is_zero())
    }
}

/// Monic `P_0, ..., P_n` of the recurrence.
pub fn generate_mops<T: Scalar>(rec: &GeneralRecurrence<T>, n: usize) -> Result<Vec<Polynomial<T>>> {
    let needed_gammas = n.saturating_sub(1);
    if rec.gammas.len() < needed_gammas {
        return Err(Error::InsufficientCoefficients {
            kind: "gamma",
            needed: needed_gammas,
            available: rec.gammas.len(),
        });
    }
    if rec.betas.len() < n {
        return Err(Error::InsufficientCoefficients {
            kind: "beta",
            needed: n,
            available: rec.betas.len(),
        });
    }
    let mut out = vec![Polynomial::one()];
    if n == 0 {
        return Ok(out);
    }
    out.push(Polynomial::new(vec![-rec.betas[0].clone(), T::one()]));
    for k in 0..n - 1 {
        // P_{k+2} = (x - beta_{k+1}) P_{k+1} - gamma_{k+1} P_k
        let shifted = &out[k + 1].shift_up() - &out[k + 1].scale(&rec.betas[k + 1]);
        let next = &shifted - &out[k].scale(&rec.gammas[k]);
        out.push(next);
    }
    Ok(out)
}

/// `Q_n = T_mu P_{n+1} / mu_{n+1}` for every `n` with `P_{n+1}` available.
pub fn q_sequence<T: Scalar>(p: &[Polynomial<T>], ctx: &DunklContext<T>) -> Result<Vec<Polynomial<T>>> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, pk)| {
            let mu_k = ctx.mu_n(k as i64);
            if mu_k.is_zero() {
                return Err(Error::VanishingDenominator {
                    n: k as i64,
                    context: "Q_n = T_mu P_{n+1} / mu_{n+1}",
                });
            }
            Ok(ctx.dunkl(pk).scale(&(T::one() / mu_k)))
        })
        .collect()
}

/// Coefficients of one polynomial in a graded monic basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionRow<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> ExpansionRow<T> {
    /// Coefficient of `basis[nu]`; zero outside the stored range.
    pub fn lambda(&self, nu: i64) -> T {
        if nu < 0 {
            return T::zero();
        }
        self.coeffs.get(nu as usize).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn reconstruct(&self, basis: &[Polynomial<T>]) -> Polynomial<T> {
        self.coeffs
            .iter()
            .zip(basis)
            .fold(Polynomial::zero(), |acc, (c, b)| &acc + &b.scale(c))
    }
}

fn check_graded_monic<T: Scalar>(basis: &[Polynomial<T>]) -> Result<()> {
    match basis
        .iter()
        .enumerate()
        .find(|(k, b)| b.degree() != Some(*k) || !b.is_monic())
    {
        Some((index, _)) => Err(Error::NotGradedMonic { index }),
        None => Ok(()),
    }
}

/// Exact coefficients of `f` in `basis` by back substitution from the top degree.
pub fn expand_in_basis<T: Scalar>(f: &Polynomial<T>, basis: &[Polynomial<T>]) -> Result<ExpansionRow<T>> {
    check_graded_monic(basis)?;
    expand_unchecked(f, basis)
}

fn expand_unchecked<T: Scalar>(f: &Polynomial<T>, basis: &[Polynomial<T>]) -> Result<ExpansionRow<T>> {
    let Some(degree) = f.degree() else {
        return Ok(ExpansionRow { coeffs: Vec::new() });
    };
    if degree >= basis.len() {
        return Err(Error::BasisTooShort { degree, len: basis.len() });
    }
    let mut rest = f.clone();
    let mut coeffs = vec![T::zero(); degree + 1];
    for k in (0..=degree).rev() {
        let c = rest.coeff(k);
        if !c.is_zero() {
            rest = &rest - &basis[k].scale(&c);
            coeffs[k] = c;
        }
    }
    debug_assert!(rest.is_zero());
    Ok(ExpansionRow { coeffs })
}

/// The multiplication table `x Q_n = sum_nu lambda_{n+1,nu} Q_nu`, one row per `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisExpansion<T> {
    rows: Vec<ExpansionRow<T>>,
}

impl<T: Scalar> BasisExpansion<T> {
    /// Expands `x Q_n` for every `n` with `Q_{n+1}` present.
    pub fn multiplication_table(basis: &[Polynomial<T>]) -> Result<Self> {
        check_graded_monic(basis)?;
        let rows = (0..basis.len().saturating_sub(1))
            .map(|n| expand_unchecked(&basis[n].shift_up(), basis))
            .collect::<Result<Vec<_>>>()?;
        Ok(BasisExpansion { rows })
    }

    /// `lambda_{row,nu}`, where `row = n + 1` indexes the expansion of `x Q_n`.
    pub fn lambda(&self, row: usize, nu: i64) -> T {
        match row.checked_sub(1).and_then(|n| self.rows.get(n)) {
            Some(r) => r.lambda(nu),
            None => T::zero(),
        }
    }

    pub fn rows(&self) -> &[ExpansionRow<T>] {
        &self.rows
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObstructionKind {
    /// `lambda_{n+1,nu} != 0` for some `nu` outside `{n+1, n-1}`.
    OffTerm,
    /// `lambda_{n+1,n-1} = 0`, so the would-be `gamma_n` is singular.
    VanishingGamma,
}

/// First coefficient that rules out a symmetric three-term recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction<T> {
    pub n: usize,
    pub nu: usize,
    pub coefficient: T,
    pub kind: ObstructionKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThreeTermDetection<T> {
    Orthogonal(SymmetricRecurrence<T>),
    NotOrthogonal(Obstruction<T>),
}

impl<T: Scalar> ThreeTermDetection<T> {
    pub fn recurrence(&self) -> Option<&SymmetricRecurrence<T>> {
        match self {
            ThreeTermDetection::Orthogonal(r) => Some(r),
            ThreeTermDetection::NotOrthogonal(_) => None,
        }
    }
}

/// Decides whether `x Q_n = Q_{n+1} + g_n Q_{n-1}` with `g_n != 0` for every
/// `n` the sequence covers, returning the `g_n` or the first obstruction.
pub fn detect_three_term<T: Scalar>(q: &[Polynomial<T>]) -> Result<ThreeTermDetection<T>> {
    let table = BasisExpansion::multiplication_table(q)?;
    let mut gammas = Vec::new();
    for (n, row) in table.rows.iter().enumerate() {
        for nu in (0..=n + 1).rev() {
            if nu == n + 1 || nu + 1 == n {
                continue;
            }
            let c = row.lambda(nu as i64);
            if !c.is_zero() {
                return Ok(ThreeTermDetection::NotOrthogonal(Obstruction {
                    n,
                    nu,
                    coefficient: c,
                    kind: ObstructionKind::OffTerm,
                }));
            }
        }
        if n >= 1 {
            let g = row.lambda(n as i64 - 1);
            if g.is_zero() {
                return Ok(ThreeTermDetection::NotOrthogonal(Obstruction {
                    n,
                    nu: n - 1,
                    coefficient: g,
                    kind: ObstructionKind::VanishingGamma,
                }));
            }
            gammas.push(g);
        }
    }
    Ok(ThreeTermDetection::Orthogonal(SymmetricRecurrence { gammas }))
}

/// `mu_{n+2} Q_{n+1} + mu_n gamma_{n+1} Q_{n-1} - mu_{n+1} x Q_n - xi_{n+1} P_{n+1}`,
/// which vanishes for every sequence built from a symmetric recurrence.
pub fn key_identity_residual<T: Scalar>(
    p: &[Polynomial<T>],
    q: &[Polynomial<T>],
    rec: &SymmetricRecurrence<T>,
    ctx: &DunklContext<T>,
    n: usize,
) -> Result<Polynomial<T>> {
    if n + 1 >= q.len() {
        return Err(Error::SequenceTooShort { index: n + 1, len: q.len() });
    }
    if n + 1 >= p.len() {
        return Err(Error::SequenceTooShort { index: n + 1, len: p.len() });
    }
    let ni = n as i64;
    let mut rhs = &q[n + 1].scale(&ctx.mu_n(ni + 2)) - &q[n].shift_up().scale(&ctx.mu_n(ni + 1));
    if n >= 1 {
        if rec.len() < n + 1 {
            return Err(Error::SequenceTooShort { index: n + 1, len: rec.len() });
        }
        let c = ctx.mu_n(ni) * rec.gamma(n + 1).clone();
        rhs = &rhs + &q[n - 1].scale(&c);
    }
    Ok(&rhs - &p[n + 1].scale(&ctx.xi(ni + 1)))
}

pub fn key_identity_check<T: Scalar>(
    p: &[Polynomial<T>],
    q: &[Polynomial<T>],
    rec: &SymmetricRecurrence<T>,
    ctx: &DunklContext<T>,
    n: usize,
) -> Result<bool> {
    Ok(key_identity_residual(p, q, rec, ctx, n)?.is_zero())
}

/// Recurrence of `a^{-n} P_n(a x + b)`.
pub fn affine_shift<T: Scalar>(rec: &GeneralRecurrence<T>, a: &T, b: &T) -> Result<GeneralRecurrence<T>> {
    if a.is_zero() {
        return Err(Error::ZeroScale);
    }
    let a_sq = a.clone() * a.clone();
    Ok(GeneralRecurrence {
        betas: rec
            .betas
            .iter()
            .map(|beta| (beta.clone() - b.clone()) / a.clone())
            .collect(),
        gammas: rec.gammas.iter().map(|g| g.clone() / a_sq.clone()).collect(),
    })
}

/// `a^{-deg} P(a x + b)`
pub fn shifted_polynomial<T: Scalar>(p: &Polynomial<T>, a: &T, b: &T) -> Result<Polynomial<T>> {
    if a.is_zero() {
        return Err(Error::ZeroScale);
    }
    let deg = p.degree().unwrap_or(0);
    let scale = (0..deg).fold(T::one(), |acc, _| acc / a.clone());
    Ok(p.compose_affine(a, b).scale(&scale))
}

/// Coefficient of `x^{n-2}` in a monic `P_n` of degree `n >= 2`.
pub fn subleading_coeff<T: Scalar>(p: &Polynomial<T>) -> Result<T> {
    match p.degree() {
        Some(n) if n >= 2 => Ok(p.coeff(n - 2)),
        found => Err(Error::DegreeMismatch { expected: 2, found }),
    }
}

/// `alpha_0, ..., alpha_N` for `P_0, ..., P_N`, with `alpha_0 = alpha_1 = 0`.
pub fn subleading_sequence<T: Scalar>(p: &[Polynomial<T>]) -> Vec<T> {
    p.iter()
        .enumerate()
        .map(|(n, pn)| if n < 2 { T::zero() } else { pn.coeff(n - 2) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rational, RationalPoly};

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    fn sym(gs: &[(i64, i64)]) -> SymmetricRecurrence<Rational> {
        SymmetricRecurrence::new(gs.iter().map(|&(p, d)| q(p, d)).collect()).unwrap()
    }

    #[test]
    fn first_polynomials() {
        let p = sym(&[(3, 7), (1, 1)]).generate(2).unwrap();
        assert_eq!(p[0], RationalPoly::one());
        assert_eq!(p[1], RationalPoly::x());
        assert_eq!(p[2], RationalPoly::new(vec![q(-3, 7), q(0, 1), q(1, 1)]));
    }

    #[test]
    fn hermite_half_third_polynomial() {
        let p = sym(&[(1, 1), (1, 1)]).generate(3).unwrap();
        assert_eq!(p[3], RationalPoly::new(vec![q(0, 1), q(-2, 1), q(0, 1), q(1, 1)]));
        assert_eq!(subleading_coeff(&p[3]).unwrap(), q(-2, 1));
        assert_eq!(subleading_coeff(&p[2]).unwrap(), q(-1, 1));
        assert!(subleading_coeff(&p[1]).is_err());
    }

    #[test]
    fn insufficient_coefficients() {
        let rec = sym(&[(1, 1)]);
        assert!(rec.generate(2).is_ok());
        assert!(matches!(
            rec.generate(3),
            Err(Error::InsufficientCoefficients { kind: "gamma", .. })
        ));
        assert_eq!(
            SymmetricRecurrence::new(vec![q(1, 1), q(0, 1)]),
            Err(Error::VanishingGamma { n: 2 })
        );
    }

    #[test]
    fn expansion_examples() {
        let basis = sym(&[(2, 5), (1, 3), (7, 4)]).generate(4).unwrap();
        let row = expand_in_basis(&basis[3], &basis).unwrap();
        assert_eq!(row.coeffs(), &[q(0, 1), q(0, 1), q(0, 1), q(1, 1)]);
        let row = expand_in_basis(&RationalPoly::monomial(2, q(1, 1)), &basis).unwrap();
        assert_eq!(row.lambda(2), q(1, 1));
        assert_eq!(row.lambda(0), q(2, 5));
        assert_eq!(row.lambda(1), q(0, 1));
        assert_eq!(row.lambda(-1), q(0, 1));

        let not_monic = vec![RationalPoly::one(), RationalPoly::monomial(1, q(2, 1))];
        assert_eq!(
            expand_in_basis(&RationalPoly::x(), &not_monic),
            Err(Error::NotGradedMonic { index: 1 })
        );
        assert!(matches!(
            expand_in_basis(&RationalPoly::monomial(5, q(1, 1)), &basis),
            Err(Error::BasisTooShort { .. })
        ));
    }

    #[test]
    fn detection_inverts_generation() {
        let rec = sym(&[(1, 2), (3, 1), (-2, 7), (5, 3), (1, 9)]);
        let p = rec.generate(6).unwrap();
        assert_eq!(detect_three_term(&p).unwrap(), ThreeTermDetection::Orthogonal(rec));
    }

    #[test]
    fn detection_reports_obstruction() {
        // x Q_3 = Q_4 - 5 Q_0 leaves a stray Q_0 term.
        let basis = vec![
            RationalPoly::one(),
            RationalPoly::x(),
            RationalPoly::new(vec![q(-1, 1), q(0, 1), q(1, 1)]),
            RationalPoly::monomial(3, q(1, 1)),
            RationalPoly::new(vec![q(5, 1), q(0, 1), q(0, 1), q(0, 1), q(1, 1)]),
        ];
        let expected = Obstruction {
            n: 3,
            nu: 0,
            coefficient: q(-5, 1),
            kind: ObstructionKind::OffTerm,
        };
        assert_eq!(
            detect_three_term(&basis).unwrap(),
            ThreeTermDetection::NotOrthogonal(expected)
        );

        let monomials: Vec<_> = (0..4).map(|k| RationalPoly::monomial(k, q(1, 1))).collect();
        match detect_three_term(&monomials).unwrap() {
            ThreeTermDetection::NotOrthogonal(ob) => {
                assert_eq!((ob.n, ob.nu), (1, 0));
                assert_eq!(ob.kind, ObstructionKind::VanishingGamma);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn affine_shift_examples() {
        let rec = sym(&[(1, 1), (2, 1), (3, 1)]).to_general();
        assert_eq!(affine_shift(&rec, &q(1, 1), &q(0, 1)).unwrap(), rec);
        let scaled = affine_shift(&rec, &q(2, 1), &q(0, 1)).unwrap();
        assert_eq!(scaled.gammas(), &[q(1, 4), q(1, 2), q(3, 4)]);
        assert!(scaled.is_symmetric());
        let moved = affine_shift(&rec, &q(2, 1), &q(1, 1)).unwrap();
        assert!(moved.betas().iter().all(|b| *b == q(-1, 2)));
        assert_eq!(affine_shift(&rec, &q(0, 1), &q(1, 1)), Err(Error::ZeroScale));
    }

    #[test]
    fn key_identity_at_zero() {
        let ctx = DunklContext::new(q(2, 5), 10).unwrap();
        let rec = sym(&[(1, 3), (4, 1), (2, 1)]);
        let p = rec.generate(4).unwrap();
        let qs = q_sequence(&p, &ctx).unwrap();
        for n in 0..3 {
            assert!(key_identity_check(&p, &qs, &rec, &ctx, n).unwrap(), "n = {n}");
        }
    }
}
