//! Command bodies. Each returns the rendered payload and the exit code.

use std::collections::BTreeMap;
use std::fs;

use dunkl_core::classical::{
    gamma_from_theta, gamma_tilde, gegenbauer_gamma, hermite_gamma, param_unmap, ThetaSequence,
};
use dunkl_core::moments::hankel;
use dunkl_core::{DunklContext, MomentFunctional, Rational};

use crate::args::{CaseKind, ConstructArgs, Format, GenArgs, VerifyArgs};
use crate::report::{CheckRecord, VerificationReport};
use crate::subject::Subject;
use crate::suite;
use crate::table::{join_rationals, Table};
use crate::{CliError, CliResult, EXIT_FAILED};

#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub exit: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, exit: 0 }
    }
}

fn base_meta(subject: &Subject, command: &str, n: usize) -> BTreeMap<String, String> {
    let mut meta = subject.params();
    meta.insert("command".into(), command.into());
    meta.insert("family".into(), subject.name().into());
    meta.insert("horizon".into(), n.to_string());
    meta
}

/// Rows `n = 1..=N`: `gamma_n`, `gamma~_n`, the moment `m_n` and the
/// coefficients of `P_n`, lowest degree first.
pub fn gen_table(args: &GenArgs) -> CliResult<Table> {
    let subject = Subject::from_args(&args.family)?;
    let n = args.n;
    subject.validate(n + 1)?;
    let gammas = subject.gammas(n + 1)?;
    let p = gammas.generate(n)?;
    let (tildes, moments) = match &subject {
        Subject::Family(f) => {
            let u = MomentFunctional::for_family(f);
            (Some(f.gamma_tildes(n)?), Some(u.moments(n + 1)?))
        }
        Subject::Custom { .. } => (None, None),
    };
    let mut table = Table::new(&["n", "gamma", "gamma_tilde", "moment", "poly"]);
    table.meta = base_meta(&subject, "gen", n);
    for k in 1..=n {
        table.push_row(vec![
            k.to_string(),
            gammas.gamma(k).to_string(),
            tildes.as_ref().map(|t| t.gamma(k).to_string()).unwrap_or_default(),
            moments.as_ref().map(|m| m[k].to_string()).unwrap_or_default(),
            join_rationals(p[k].coeffs()),
        ]);
    }
    Ok(table)
}

/// Rows `k = 0..=N`: the normalized moment `m_k` and the Hankel determinant
/// `Delta_k`.
pub fn moments_table(args: &GenArgs) -> CliResult<Table> {
    let subject = Subject::from_args(&args.family)?;
    let family = match &subject {
        Subject::Family(f) => f,
        Subject::Custom { .. } => {
            return Err(CliError::Params("moments need a classical family".into()));
        }
    };
    let n = args.n;
    subject.validate(n + 1)?;
    let u = MomentFunctional::for_family(family);
    let m = u.moments(2 * n + 1)?;
    let mut table = Table::new(&["k", "moment", "hankel"]);
    table.meta = base_meta(&subject, "moments", n);
    for (k, mk) in m.iter().enumerate().take(n + 1) {
        table.push_row(vec![k.to_string(), mk.to_string(), hankel(&u, k)?.to_string()]);
    }
    Ok(table)
}

/// Rows `n = 1..=N`: `theta_n`, `gamma_n` and `gamma~_n` from the Riccati
/// construction. Case B also records the `(alpha, beta)` read-back.
pub fn construct_table(args: &ConstructArgs) -> CliResult<Table> {
    let n = args.n;
    let mu = args.mu.clone();
    let ctx = DunklContext::new(mu.clone(), n + 2)?;
    let mut meta = BTreeMap::new();
    meta.insert("command".into(), "construct".into());
    meta.insert("horizon".into(), n.to_string());
    meta.insert("mu".into(), mu.to_string());
    let (theta, default_gamma1) = match args.case {
        CaseKind::A => {
            if args.theta.is_some() {
                return Err(CliError::Params("--theta does not apply to case A".into()));
            }
            meta.insert("case".into(), "A".into());
            (ThetaSequence::case_a(mu.clone()), hermite_gamma(&mu, 1))
        }
        CaseKind::B => {
            let t = args
                .theta
                .clone()
                .ok_or_else(|| CliError::Params("--theta is required for case B".into()))?;
            let (alpha, beta) = param_unmap(&t, &mu);
            meta.insert("case".into(), "B".into());
            meta.insert("theta".into(), t.to_string());
            meta.insert("alpha".into(), alpha.to_string());
            meta.insert("beta".into(), beta.to_string());
            (ThetaSequence::case_b(mu.clone(), t), gegenbauer_gamma(&alpha, &beta, 1))
        }
    };
    theta.check_exclusions(n + 1)?;
    let gamma1 = match &args.gamma1 {
        Some(g) => g.clone(),
        None => default_gamma1?,
    };
    meta.insert("gamma1".into(), gamma1.to_string());
    let gammas = gamma_from_theta(&theta, gamma1, &ctx, n + 1)?;
    let tildes = gamma_tilde(&theta, &gammas, &ctx)?;
    let mut table = Table::new(&["n", "theta", "gamma", "gamma_tilde"]);
    table.meta = meta;
    for k in 1..=n {
        table.push_row(vec![
            k.to_string(),
            theta.theta(k as i64)?.to_string(),
            gammas.gamma(k).to_string(),
            tildes.gamma(k).to_string(),
        ]);
    }
    Ok(table)
}

pub fn verify_report(args: &VerifyArgs) -> CliResult<VerificationReport> {
    if args.format != Format::Json {
        return Err(CliError::Params("reports are emitted as JSON only".into()));
    }
    let subject = Subject::from_args(&args.family)?;
    let names = suite::select(&subject, &args.checks)?;
    subject.validate(args.n + 3)?;
    let mut checks = Vec::new();
    let mut timing = BTreeMap::new();
    for (name, result, elapsed) in suite::run_many(&subject, &names, args.n, args.serial) {
        checks.extend(result?.checks.iter().map(CheckRecord::from));
        timing.insert(name.to_string(), elapsed.as_millis());
    }
    Ok(VerificationReport {
        family: subject.name().into(),
        params: subject.params(),
        horizon: args.n,
        checks,
        version: env!("CARGO_PKG_VERSION").into(),
        timing_ms: args.timing.then_some(timing),
    })
}

fn emit(text: &str, out: &Option<std::path::PathBuf>) -> CliResult<String> {
    match out {
        Some(path) => {
            fs::write(path, text)?;
            Ok(String::new())
        }
        None => Ok(text.to_string()),
    }
}

pub fn gen(args: &GenArgs) -> CliResult<Outcome> {
    let text = gen_table(args)?.render(args.output.format)?;
    Ok(Outcome::ok(emit(&text, &args.output.out)?))
}

pub fn moments(args: &GenArgs) -> CliResult<Outcome> {
    let text = moments_table(args)?.render(args.output.format)?;
    Ok(Outcome::ok(emit(&text, &args.output.out)?))
}

pub fn construct(args: &ConstructArgs) -> CliResult<Outcome> {
    let text = construct_table(args)?.render(args.output.format)?;
    Ok(Outcome::ok(emit(&text, &args.output.out)?))
}

pub fn verify(args: &VerifyArgs) -> CliResult<Outcome> {
    let report = verify_report(args)?;
    let exit = if report.passed() { 0 } else { EXIT_FAILED };
    Ok(Outcome { text: emit(&report.to_json(), &args.out)?, exit })
}

/// Shared read-back used by the round-trip tests.
pub fn reparse(text: &str, format: Format) -> CliResult<Vec<Vec<Vec<Rational>>>> {
    Table::parse(text, format)?.values()
}
