use thiserror::Error;

/// A named precondition and whether it held.
pub type Precondition = (String, bool);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polar derivative of a degree-zero polynomial")]
    DegreeZero,
    #[error("leading coefficient must be nonzero")]
    ZeroLeading,
    #[error("declared degree {declared} has a numerically zero leading coefficient")]
    DegreeMismatch { declared: usize },
    #[error("circle radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error("tolerance {eps} needs more than {cap} evaluations")]
    ToleranceUnreachable { eps: f64, cap: u64 },
    #[error("A-quantity denominator is not positive ({0})")]
    DegenerateDenominator(f64),
    #[error("preconditions violated: {}", failed(.0))]
    PreconditionViolated(Vec<Precondition>),
    #[error("{index} does not divide {n}")]
    NonDivisor { n: usize, index: usize },
    #[error("annulus needs k_max > k (k = {k}, k_max = {k_max})")]
    BadAnnulus { k: f64, k_max: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("root finder did not converge after {0} iterations")]
    NoConvergence(usize),
}

fn failed(report: &[Precondition]) -> String {
    report
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
