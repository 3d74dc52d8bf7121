use thiserror::Error;

/// Errors produced by state constructors, transforms and the Fock oracle.
#[derive(Debug, Error)]
pub enum Error {
    /// A physical parameter is outside its admissible range.
    #[error("invalid parameter {name} = {value}: must be {requirement}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// A covariance matrix fails a structural requirement (symmetry,
    /// finiteness, or the uncertainty relation).
    #[error("invalid covariance matrix: {reason}")]
    InvalidCovariance { reason: String },

    /// The reduced single-mode covariance is numerically singular, so the
    /// parity expectation (which needs its inverse and determinant) is
    /// undefined.
    #[error("reduced covariance is singular (det = {det:.3e})")]
    SingularReducedCovariance { det: f64 },

    /// The signal slope vanishes at this operating point, so the
    /// error-propagation sensitivity diverges. Happens everywhere when
    /// g = 0 (no amplification, no signal).
    #[error("signal slope vanishes at g = {g}, phi = {phi}: sensitivity is unbounded here")]
    PhaseBlindSpot { g: f64, phi: f64 },

    /// A quantity like 1/sqrt(n) was requested for a state with no photons.
    #[error("{what} is undefined when the interferometer holds no photons")]
    UndefinedLimit { what: &'static str },

    /// The number-basis truncation is too small for the requested state or
    /// evolution to be represented faithfully.
    #[error("Fock cutoff {n_cut} too small: {what} mass {mass:.3e} exceeds budget {budget:.1e}")]
    CutoffTooSmall {
        what: &'static str,
        n_cut: usize,
        mass: f64,
        budget: f64,
    },

    /// An operator built for one truncation was applied to a state with
    /// another.
    #[error("dimension mismatch: operator built for {expected} levels, state has {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

impl Error {
    /// Convenience constructor for range violations.
    pub(crate) fn bad_param(name: &'static str, value: f64, requirement: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            requirement,
        }
    }
}

pub(crate) fn check_finite(name: &'static str, value: f64) -> crate::Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::bad_param(name, value, "finite"))
    }
}

pub(crate) fn check_nonnegative(name: &'static str, value: f64) -> crate::Result<()> {
    check_finite(name, value)?;
    if value >= 0.0 {
        Ok(())
    } else {
        Err(Error::bad_param(name, value, "nonnegative"))
    }
}
