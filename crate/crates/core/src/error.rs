use thiserror::Error;

/// Errors raised by the numerical kernels, the constants formulas and the
/// certification pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series, quadrature or root solve could not reach its tolerance.
    #[error("convergence error: {0}")]
    Convergence(String),

    /// The lattice handed to a search contained no points.
    #[error("empty lattice")]
    EmptyLattice,

    /// A Z(t) sample stayed within its remainder envelope after every
    /// refinement attempt, so its sign cannot be trusted.
    #[error("sign of Z(t) is indeterminate near t = {t}")]
    IndeterminateSign { t: f64 },

    /// A Gram block inside a run failed Rosser's rule.
    #[error("Rosser's rule fails for the Gram block starting at g_{start} (length {len}, counts {counts:?})")]
    RosserViolation {
        start: i64,
        len: usize,
        counts: Vec<usize>,
    },

    /// The run does not begin or end on a Gram-block boundary.
    #[error("range is not block-aligned: {0}")]
    Alignment(String),

    /// Certification below the height where the constants are valid.
    #[error("threshold error: g_{n} = {g_n} is not above {threshold}")]
    Threshold { n: i64, g_n: f64, threshold: f64 },

    /// The certified count disagrees with the smooth counting formula.
    #[error("count mismatch at g_{p}: certified {certified}, counting formula {expected}")]
    CountMismatch {
        p: i64,
        certified: u64,
        expected: u64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
