//! The object a command works on: a classical family or a custom recurrence.

use std::collections::BTreeMap;

use dunkl_core::{parse_rational, DunklContext, Rational, RationalFamily, SymmetricRecurrence};
use num_traits::Zero;

use crate::args::{FamilyArgs, FamilyKind};
use crate::{CliError, CliResult};

#[derive(Clone, Debug)]
pub enum Subject {
    Family(RationalFamily),
    /// Symmetric recurrence with explicit coefficients; the last entry repeats.
    Custom { mu: Rational, gammas: Vec<Rational> },
}

impl Subject {
    pub fn from_args(args: &FamilyArgs) -> CliResult<Self> {
        let need = |v: &Option<Rational>, flag: &str| {
            v.clone()
                .ok_or_else(|| CliError::Params(format!("--{flag} is required for family {:?}", args.family)))
        };
        let forbid = |present: bool, flag: &str| {
            if present {
                Err(CliError::Params(format!("--{flag} does not apply to family {:?}", args.family)))
            } else {
                Ok(())
            }
        };
        match args.family {
            FamilyKind::Hermite => {
                forbid(args.alpha.is_some(), "alpha")?;
                forbid(args.beta.is_some(), "beta")?;
                forbid(args.gammas.is_some(), "gammas")?;
                Ok(Subject::Family(RationalFamily::hermite(need(&args.mu, "mu")?)))
            }
            FamilyKind::Gegenbauer => {
                forbid(args.mu.is_some(), "mu")?;
                forbid(args.gammas.is_some(), "gammas")?;
                Ok(Subject::Family(RationalFamily::gegenbauer(
                    need(&args.alpha, "alpha")?,
                    need(&args.beta, "beta")?,
                )))
            }
            FamilyKind::Custom => {
                forbid(args.alpha.is_some(), "alpha")?;
                forbid(args.beta.is_some(), "beta")?;
                let raw = args
                    .gammas
                    .as_deref()
                    .ok_or_else(|| CliError::Params("--gammas is required for family custom".into()))?;
                let gammas = raw
                    .split(',')
                    .map(parse_rational)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(CliError::Params)?;
                if gammas.is_empty() {
                    return Err(CliError::Params("--gammas is empty".into()));
                }
                Ok(Subject::Custom { mu: need(&args.mu, "mu")?, gammas })
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Subject::Family(f) => f.name(),
            Subject::Custom { .. } => "custom",
        }
    }

    pub fn mu(&self) -> Rational {
        match self {
            Subject::Family(f) => f.mu(),
            Subject::Custom { mu, .. } => mu.clone(),
        }
    }

    /// Parameters as canonical strings, keyed by flag name.
    pub fn params(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        match self {
            Subject::Family(RationalFamily::GeneralizedHermite { mu }) => {
                out.insert("mu".into(), mu.to_string());
            }
            Subject::Family(RationalFamily::GeneralizedGegenbauer { alpha, beta }) => {
                out.insert("alpha".into(), alpha.to_string());
                out.insert("beta".into(), beta.to_string());
            }
            Subject::Custom { mu, gammas } => {
                out.insert("mu".into(), mu.to_string());
                let joined: Vec<String> = gammas.iter().map(|g| g.to_string()).collect();
                out.insert("gammas".into(), joined.join(","));
            }
        }
        out
    }

    /// Parameter guards needed to work up to degree `horizon + 1`.
    pub fn validate(&self, horizon: usize) -> CliResult<()> {
        match self {
            Subject::Family(f) => f.validate(horizon)?,
            Subject::Custom { mu, gammas } => {
                DunklContext::new(mu.clone(), horizon + 1)?;
                if let Some(n) = gammas.iter().position(|g| g.is_zero()) {
                    return Err(dunkl_core::Error::VanishingGamma { n: n + 1 }.into());
                }
            }
        }
        Ok(())
    }

    /// `gamma_1, ..., gamma_len`.
    pub fn gammas(&self, len: usize) -> CliResult<SymmetricRecurrence<Rational>> {
        match self {
            Subject::Family(f) => Ok(f.gammas(len)?),
            Subject::Custom { gammas, .. } => {
                let last = gammas.last().expect("nonempty").clone();
                let mut out: Vec<Rational> = gammas.iter().take(len).cloned().collect();
                out.resize(len, last);
                Ok(SymmetricRecurrence::new(out)?)
            }
        }
    }
}
