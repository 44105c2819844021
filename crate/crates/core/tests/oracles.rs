//! Checks against formulas that share no code with the library: explicit
//! hypergeometric sums for Laguerre and Jacobi, Gram-Schmidt on the family
//! moments, the classical Hermite and Gegenbauer recurrences, and hand
//! expansions.

use dunkl_core::classical::{detection_report, gegenbauer_gamma, hermite_gamma};
use dunkl_core::dde::{dde_coefficients, dde_residual, perturb_first_gamma};
use dunkl_core::moments::{
    gegenbauer_pearson_check, hankel, jacobi_moments, laguerre_moments, mops_from_moments, MomentFunctional,
};
use dunkl_core::recurrence::{detect_three_term, q_sequence, subleading_coeff, ObstructionKind, ThreeTermDetection};
use dunkl_core::{Family, Polynomial, Rational, RationalPoly, Scalar, SymmetricRecurrence};
use num_traits::{One, Zero};

fn q(p: i64, d: i64) -> Rational {
    Rational::from_ratio(p, d)
}

/// `z (z-1) ... (z-k+1) / k!`
fn binom(z: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, j| {
        acc * (z.clone() - Rational::from_int(j as i64)) / Rational::from_int(j as i64 + 1)
    })
}

fn monic(p: RationalPoly) -> RationalPoly {
    let lead = p.leading_coeff().unwrap().clone();
    p.scale(&(Rational::one() / lead))
}

/// `L_n^(a)(x) = sum_k (-1)^k binom(n + a, n - k) x^k / k!`, made monic.
fn laguerre_explicit(a: &Rational, n: usize) -> RationalPoly {
    let na = Rational::from_int(n as i64) + a.clone();
    let coeffs = (0..=n)
        .map(|k| {
            let fact = (1..=k).fold(Rational::one(), |acc, j| acc * Rational::from_int(j as i64));
            Rational::parity_sign(k as i64) * binom(&na, n - k) / fact
        })
        .collect();
    monic(Polynomial::new(coeffs))
}

/// `P_n^(a,b)(x) = sum_s binom(n+a, n-s) binom(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s)`, made monic.
fn jacobi_explicit(a: &Rational, b: &Rational, n: usize) -> RationalPoly {
    let half = Rational::half();
    let xm = Polynomial::new(vec![-half.clone(), half.clone()]);
    let xp = Polynomial::new(vec![half.clone(), half]);
    let pow = |p: &RationalPoly, k: usize| (0..k).fold(RationalPoly::one(), |acc, _| &acc * p);
    let na = Rational::from_int(n as i64) + a.clone();
    let nb = Rational::from_int(n as i64) + b.clone();
    let mut sum = RationalPoly::zero();
    for s in 0..=n {
        let c = binom(&na, n - s) * binom(&nb, s);
        sum = &sum + &(&pow(&xm, s) * &pow(&xp, n - s)).scale(&c);
    }
    monic(sum)
}

fn at(p: &RationalPoly, inner: &RationalPoly) -> RationalPoly {
    p.compose(inner)
}

#[test]
fn laguerre_moment_oracle_matches_explicit_sum() {
    for a in [q(-1, 4), q(0, 1), q(1, 3), q(5, 2)] {
        let from_moments = mops_from_moments(&laguerre_moments(&a, 21), 10).unwrap();
        for (n, p) in from_moments.iter().enumerate() {
            assert_eq!(p, &laguerre_explicit(&a, n), "a = {a}, n = {n}");
        }
    }
}

#[test]
fn jacobi_moment_oracle_matches_explicit_sum() {
    for (a, b) in [(q(1, 2), q(1, 2)), (q(3, 4), q(1, 4)), (q(0, 1), q(-1, 2)), (q(2, 1), q(1, 3))] {
        let from_moments = mops_from_moments(&jacobi_moments(&a, &b, 21).unwrap(), 10).unwrap();
        for (n, p) in from_moments.iter().enumerate() {
            assert_eq!(p, &jacobi_explicit(&a, &b, n), "(a, b) = ({a}, {b}), n = {n}");
        }
    }
}

#[test]
fn hermite_halves_are_explicit_laguerre() {
    let x2 = RationalPoly::monomial(2, q(1, 1));
    for mu in [q(0, 1), q(1, 3), q(1, 2), q(-1, 4)] {
        let p = Family::hermite(mu.clone()).mops(25).unwrap();
        let a = mu - q(1, 2);
        for n in 0..=12 {
            assert_eq!(p[2 * n], at(&laguerre_explicit(&a, n), &x2));
            assert_eq!(p[2 * n + 1], at(&laguerre_explicit(&(a.clone() + q(1, 1)), n), &x2).shift_up());
        }
    }
}

#[test]
fn gegenbauer_halves_are_explicit_jacobi() {
    let t = RationalPoly::new(vec![q(-1, 1), q(0, 1), q(2, 1)]);
    for (alpha, beta) in [(q(1, 2), q(1, 2)), (q(3, 4), q(1, 4)), (q(1, 2), q(-1, 2)), (q(2, 1), q(1, 3))] {
        let p = Family::gegenbauer(alpha.clone(), beta.clone()).mops(25).unwrap();
        for n in 0..=12 {
            let scale = q(1, 1 << n);
            assert_eq!(p[2 * n], at(&jacobi_explicit(&alpha, &beta, n), &t).scale(&scale));
            let odd = jacobi_explicit(&alpha, &(beta.clone() + q(1, 1)), n);
            assert_eq!(p[2 * n + 1], at(&odd, &t).shift_up().scale(&scale));
        }
    }
}

#[test]
fn closed_form_gammas_match_gram_schmidt_on_moments() {
    let families = [
        Family::hermite(q(1, 3)),
        Family::hermite(q(-1, 4)),
        Family::gegenbauer(q(3, 4), q(1, 4)),
        Family::gegenbauer(q(2, 1), q(1, 3)),
    ];
    for fam in families {
        let u = MomentFunctional::for_family(&fam);
        let by_moments = mops_from_moments(&u.moments(25).unwrap(), 12).unwrap();
        assert_eq!(by_moments, fam.mops(12).unwrap(), "{fam:?}");
    }
}

#[test]
fn zero_mu_hermite_is_classical() {
    // monic Hermite for e^{-x^2}: x P_n = P_{n+1} + (n/2) P_{n-1}
    let mut classical = vec![RationalPoly::one(), RationalPoly::x()];
    for n in 1..20 {
        let next = &classical[n].shift_up() - &classical[n - 1].scale(&q(n as i64, 2));
        classical.push(next);
    }
    assert_eq!(Family::hermite(q(0, 1)).mops(20).unwrap(), classical);
}

#[test]
fn zero_mu_gegenbauer_is_ultraspherical() {
    // monic C_n^nu: gamma_n = n (n + 2nu - 1) / (4 (n + nu)(n + nu - 1))
    for alpha in [q(1, 2), q(3, 4), q(2, 1)] {
        let nu = alpha.clone() + q(1, 2);
        for n in 1..20usize {
            let nn = Rational::from_int(n as i64);
            let expect = nn.clone() * (nn.clone() + q(2, 1) * nu.clone() - q(1, 1))
                / (q(4, 1) * (nn.clone() + nu.clone()) * (nn - q(1, 1) + nu.clone()));
            assert_eq!(gegenbauer_gamma(&alpha, &q(-1, 2), n).unwrap(), expect);
        }
    }
}

#[test]
fn hermite_gamma_values() {
    let want: Vec<_> = [1, 1, 2, 2, 3].iter().map(|&k| q(k, 1)).collect();
    let got: Vec<_> = (1..=5).map(|n| hermite_gamma(&q(1, 2), n).unwrap()).collect();
    assert_eq!(got, want);
}

#[test]
fn orthogonality_norm_examples() {
    let h = Family::hermite(q(1, 2));
    let p = h.mops(2).unwrap();
    let u = MomentFunctional::for_family(&h);
    assert_eq!(u.pair(&(&p[2] * &p[2])).unwrap(), q(1, 1));
    assert!(u.pair(&(&p[0] * &p[1])).unwrap().is_zero());

    let g = Family::gegenbauer(q(1, 2), q(1, 2));
    let p = g.mops(2).unwrap();
    let u = MomentFunctional::for_family(&g);
    assert_eq!(u.pair(&(&p[2] * &p[2])).unwrap(), q(1, 16));
    // <u, x^2> = gamma_1 = <u, P_1^2>
    assert_eq!(u.pair(&RationalPoly::monomial(2, q(1, 1))).unwrap(), q(1, 2));
}

#[test]
fn hankel_hand_values() {
    let u = MomentFunctional::hermite(q(1, 3));
    assert_eq!(hankel(&u, 1).unwrap(), q(5, 6));
    // [[1, 0, m2], [0, m2, 0], [m2, 0, m4]] -> m2 (m4 - m2^2)
    let (m2, m4) = (u.moment(2).unwrap(), u.moment(4).unwrap());
    assert_eq!(hankel(&u, 2).unwrap(), m2.clone() * (m4 - m2.clone() * m2));
}

#[test]
fn second_degree_examples() {
    let (alpha, beta) = (q(3, 4), q(1, 4));
    let g2 = &Family::gegenbauer(alpha.clone(), beta.clone()).mops(2).unwrap()[2];
    let c = (beta.clone() + q(1, 1)) / (alpha + beta + q(2, 1));
    assert_eq!(g2, &RationalPoly::new(vec![-c, q(0, 1), q(1, 1)]));
    let mu = q(1, 3);
    let h2 = &Family::hermite(mu.clone()).mops(2).unwrap()[2];
    assert_eq!(h2, &RationalPoly::new(vec![-(mu + q(1, 2)), q(0, 1), q(1, 1)]));
}

#[test]
fn constant_gamma_is_not_dunkl_classical() {
    let mu = q(1, 3);
    let rec = SymmetricRecurrence::new(vec![q(1, 1); 10]).unwrap();
    let ctx = Family::hermite(mu).context(12).unwrap();
    let p = rec.generate(8).unwrap();
    let q_seq = q_sequence(&p, &ctx).unwrap();
    match detect_three_term(&q_seq).unwrap() {
        ThreeTermDetection::NotOrthogonal(o) => {
            assert!(o.n <= 6, "{o:?}");
            assert!(!o.coefficient.is_zero() || o.kind == ObstructionKind::VanishingGamma);
        }
        ThreeTermDetection::Orthogonal(r) => panic!("unexpected recurrence {r:?}"),
    }
    assert!(!detection_report(&rec, &ctx, 8).unwrap().passed);
}

#[test]
fn perturbed_gamma_breaks_the_equation() {
    for fam in [Family::hermite(q(1, 3)), Family::gegenbauer(q(3, 4), q(1, 4))] {
        let ctx = fam.context(8).unwrap();
        let theta = fam.theta().unwrap();
        let bad = perturb_first_gamma(&fam.gammas(8).unwrap()).unwrap();
        let p = bad.generate(6).unwrap();
        let any_nonzero = (1..=6).any(|n| {
            let c = dde_coefficients(&theta, &bad, &ctx, n).unwrap();
            !dde_residual(&p[n], &c, &ctx).unwrap().is_zero()
        });
        assert!(any_nonzero, "{fam:?}");
    }
}

#[test]
fn first_degree_residual_vanishes() {
    for fam in [Family::hermite(q(2, 7)), Family::gegenbauer(q(1, 3), q(5, 2))] {
        let ctx = fam.context(4).unwrap();
        let g = fam.gammas(4).unwrap();
        let c = dde_coefficients(&fam.theta().unwrap(), &g, &ctx, 1).unwrap();
        assert!(dde_residual(&RationalPoly::x(), &c, &ctx).unwrap().is_zero());
    }
}

#[test]
fn subleading_coefficients_telescope() {
    // alpha_n = -(gamma_1 + ... + gamma_{n-1}) for a symmetric MOPS
    let fam = Family::gegenbauer(q(2, 1), q(1, 3));
    let g = fam.gammas(12).unwrap();
    let p = g.generate(12).unwrap();
    let mut sum = Rational::zero();
    for n in 2..=12 {
        sum += g.gamma(n - 1).clone();
        assert_eq!(subleading_coeff(&p[n]).unwrap(), -sum.clone());
    }
}

#[test]
fn printed_gegenbauer_psi_forces_other_moment_ratio() {
    // printed psi gives m_{2k+2}/m_{2k} = (2k - beta - 1)/(2k + 2alpha + 2beta + 4)
    let (alpha, beta) = (q(3, 4), q(1, 4));
    let u = MomentFunctional::gegenbauer(alpha.clone(), beta.clone());
    let k = 0;
    let printed_ratio = (q(2 * k, 1) - beta.clone() - q(1, 1)) / (q(2 * k + 4, 1) + q(2, 1) * (alpha + beta));
    assert_ne!(u.moment(2).unwrap() / u.moment(0).unwrap(), printed_ratio);
    let c = gegenbauer_pearson_check(&q(3, 4), &q(1, 4), 50).unwrap();
    assert!(c.passed);
    assert!(c.finding.unwrap().contains("printed psi"));
}
