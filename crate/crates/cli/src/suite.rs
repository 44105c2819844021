//! Named check suites and their dispatch.

use std::thread;
use std::time::{Duration, Instant};

use dunkl_core::classical::{
    appell_check, detection_report, key_identity_report, riccati_family_check, shift_check, theorem21_check,
};
use dunkl_core::dde::{converse_check, family_dde_check, structure_relation_check};
use dunkl_core::moments::{
    gegenbauer_pearson_check, hankel_check, orthogonality_check, pearson_check, quadratic_decomposition_check,
};
use dunkl_core::{Checklist, DunklContext, MomentFunctional, PearsonPair, Rational, RationalFamily};
use dunkl_core::Scalar;
use num_traits::Signed;

use crate::subject::Subject;
use crate::{CliError, CliResult};

/// Every suite name, in report order.
pub const SUITES: &[&str] = &[
    "riccati",
    "theorem21",
    "keyid",
    "converse",
    "dde",
    "pearson",
    "orthogonality",
    "hankel",
    "appell",
    "shift",
    "structure",
    "qdecomp",
];

pub fn applicable(subject: &Subject, name: &str) -> bool {
    match subject {
        Subject::Custom { .. } => matches!(name, "theorem21" | "keyid"),
        Subject::Family(RationalFamily::GeneralizedHermite { .. }) => name != "shift",
        Subject::Family(RationalFamily::GeneralizedGegenbauer { .. }) => name != "appell",
    }
}

/// Resolves `all` or a comma-separated list into suite names in report order.
pub fn select(subject: &Subject, list: &str) -> CliResult<Vec<&'static str>> {
    if list.trim() == "all" {
        return Ok(SUITES.iter().copied().filter(|s| applicable(subject, s)).collect());
    }
    let mut wanted = Vec::new();
    for raw in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let name = SUITES
            .iter()
            .copied()
            .find(|s| *s == raw)
            .ok_or_else(|| CliError::UnknownCheck(raw.to_string()))?;
        if !applicable(subject, name) {
            return Err(CliError::Inapplicable { check: name.into(), family: subject.name() });
        }
        if !wanted.contains(&name) {
            wanted.push(name);
        }
    }
    if wanted.is_empty() {
        return Err(CliError::Params("--checks selects nothing".into()));
    }
    Ok(SUITES.iter().copied().filter(|s| wanted.contains(s)).collect())
}

fn single(check: dunkl_core::Check) -> Checklist {
    let mut out = Checklist::new();
    out.push(check);
    out
}

/// `Delta_n > 0` is asserted for mu > -1/2, resp. alpha, beta > -1.
fn positive_definite(family: &RationalFamily) -> bool {
    let half = Rational::from_ratio(1, 2);
    match family {
        RationalFamily::GeneralizedHermite { mu } => mu > &-half,
        RationalFamily::GeneralizedGegenbauer { alpha, beta } => {
            let one = Rational::from_int(1);
            (alpha + &one).is_positive() && (beta + &one).is_positive()
        }
    }
}

fn run_family(family: &RationalFamily, name: &str, n: usize) -> dunkl_core::Result<Checklist> {
    Ok(match name {
        "riccati" => single(riccati_family_check(family, n)?),
        "theorem21" => theorem21_check(family, n)?,
        "keyid" => single(key_identity_report(&family.gammas(n + 1)?, &family.context(n + 1)?, n)?),
        "converse" => single(converse_check(family, n)?),
        "dde" => family_dde_check(family, n, n)?,
        "pearson" => single(match family {
            RationalFamily::GeneralizedHermite { mu } => {
                pearson_check(&MomentFunctional::hermite(mu.clone()), &PearsonPair::hermite(mu), n)?
            }
            RationalFamily::GeneralizedGegenbauer { alpha, beta } => gegenbauer_pearson_check(alpha, beta, n)?,
        }),
        "orthogonality" => {
            let u = MomentFunctional::for_family(family);
            orthogonality_check(&u, &family.mops(n)?, &family.gammas(n)?, n)?
        }
        "hankel" => {
            let u = MomentFunctional::for_family(family);
            single(hankel_check(&u, &family.gammas(n)?, n, positive_definite(family))?)
        }
        "appell" => match family {
            RationalFamily::GeneralizedHermite { mu } => appell_check(mu, n)?,
            _ => unreachable!("filtered by applicable"),
        },
        "shift" => match family {
            RationalFamily::GeneralizedGegenbauer { alpha, beta } => shift_check(alpha, beta, n)?,
            _ => unreachable!("filtered by applicable"),
        },
        "structure" => structure_relation_check(family, n)?,
        "qdecomp" => quadratic_decomposition_check(family, n / 2)?,
        other => unreachable!("unknown suite {other}"),
    })
}

/// Runs one suite at horizon `n`.
pub fn run(subject: &Subject, name: &str, n: usize) -> CliResult<Checklist> {
    match subject {
        Subject::Family(family) => Ok(run_family(family, name, n)?),
        Subject::Custom { mu, .. } => {
            let gammas = subject.gammas(n + 1)?;
            let ctx = DunklContext::new(mu.clone(), n + 2)?;
            Ok(single(match name {
                "theorem21" => detection_report(&gammas, &ctx, n)?,
                "keyid" => key_identity_report(&gammas, &ctx, n)?,
                other => {
                    return Err(CliError::Inapplicable { check: other.into(), family: "custom" });
                }
            }))
        }
    }
}

/// Runs the suites, concurrently unless `serial`, and returns results in input order.
pub fn run_many(
    subject: &Subject,
    names: &[&'static str],
    n: usize,
    serial: bool,
) -> Vec<(&'static str, CliResult<Checklist>, Duration)> {
    let timed = |name: &'static str| {
        let start = Instant::now();
        let result = run(subject, name, n);
        (name, result, start.elapsed())
    };
    if serial {
        return names.iter().map(|&name| timed(name)).collect();
    }
    thread::scope(|scope| {
        let handles: Vec<_> = names.iter().map(|&name| scope.spawn(move || timed(name))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}
