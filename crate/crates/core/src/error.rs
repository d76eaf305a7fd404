//! Error type shared by every module in the crate.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by constructors, evaluators, and numerical searches.
///
/// Variants split into two families: domain errors (bad inputs or violated
/// preconditions) and numeric errors (a well-posed computation that could not
/// be carried out in floating point). [`Error::is_domain`] reports the family,
/// which front ends can map to distinct exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its documented domain.
    InvalidParameter(String),
    /// Evaluation was requested at a negative time.
    NegativeTime(f64),
    /// Evaluation was requested at `t <= 0` where strict positivity is required.
    NonPositiveTime(f64),
    /// A solver precondition on the hazard shape or prior analysis failed.
    Precondition(&'static str),
    /// Survival mass at the requested time underflows to zero, so ratios such
    /// as the hazard or mean residual life are no longer representable.
    BeyondSupport(f64),
    /// Adaptive quadrature exhausted its subdivision budget.
    QuadratureFailed(&'static str),
    /// A root or extremum search could not bracket a sign change.
    NoBracket(&'static str),
}

impl Error {
    /// True for errors caused by out-of-domain input or violated
    /// preconditions, false for numeric evaluation failures.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::NegativeTime(_)
                | Error::NonPositiveTime(_)
                | Error::Precondition(_)
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::NegativeTime(t) => write!(f, "time must be nonnegative, got {t}"),
            Error::NonPositiveTime(t) => write!(f, "time must be strictly positive, got {t}"),
            Error::Precondition(what) => write!(f, "precondition violated: {what}"),
            Error::BeyondSupport(t) => {
                write!(
                    f,
                    "survival underflows to zero at t = {t}; beyond numeric support"
                )
            }
            Error::QuadratureFailed(ctx) => {
                write!(
                    f,
                    "quadrature did not reach the requested tolerance ({ctx})"
                )
            }
            Error::NoBracket(ctx) => write!(f, "could not bracket a sign change ({ctx})"),
        }
    }
}

impl core::error::Error for Error {}
