//! Exact construction and verification of the symmetric orthogonal polynomial
//! sequences whose normalized Dunkl images are again orthogonal: the
//! generalized Hermite and generalized Gegenbauer families.
//!
//! Every algorithm is written against the [`Scalar`] trait. The crate root
//! exports aliases for the exact rational instantiation used throughout the
//! verification code.

pub mod classical;
pub mod dde;
pub mod dunkl;
pub mod error;
pub mod moments;
pub mod poly;
pub mod recurrence;
pub mod report;
pub mod scalar;

pub use classical::{Family, ThetaCase, ThetaSequence};
pub use dde::DdeCoefficients;
pub use dunkl::DunklContext;
pub use error::{Error, Result};
pub use moments::{MomentFunctional, PearsonPair};
pub use poly::Polynomial;
pub use recurrence::{GeneralRecurrence, SymmetricRecurrence, ThreeTermDetection};
pub use report::{Check, Checklist};
pub use scalar::Scalar;

/// Arbitrary-precision rational, the exact scalar of the verification suite.
pub type Rational = num_rational::BigRational;
pub type RationalPoly = Polynomial<Rational>;
pub type RationalContext = DunklContext<Rational>;
pub type RationalFamily = Family<Rational>;
pub type RationalTheta = ThetaSequence<Rational>;
pub type RationalRecurrence = SymmetricRecurrence<Rational>;

/// Double-precision instantiation, handy for evaluation only.
pub type Poly64 = Polynomial<f64>;
pub type Context64 = DunklContext<f64>;

/// Parses `"p/q"` or `"p"` into a canonical rational.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("invalid rational {s:?}: {e}"))
}
