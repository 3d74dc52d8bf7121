//! Gaussian-state simulation of an SU(1,1) interferometer with parity detection.
//!
//! The device under study is a two-mode interferometer built from a pair of
//! optical parametric amplifiers (OPAs) with a phase accumulation stage in
//! between: the second OPA is operated "time-reversed" relative to the first
//! (pump phase shifted by pi) so that at zero interferometer phase the device
//! undoes itself. Mode a carries a thermal seed, mode b a squeezed vacuum, and
//! the detected observable is the photon-number parity of output mode b.
//!
//! Everything here is Gaussian: states are (mean, covariance) pairs in the
//! quadrature convention x = a + a\dagger, p = -i(a - a\dagger), where vacuum
//! has unit covariance. Three layers are provided:
//!
//! * [`gaussian`]: generic two-mode Gaussian states and symplectic transforms,
//!   built by composing the individual optical elements.
//! * [`analytic`]: closed-form covariance entries, parity signal, slope and
//!   phase sensitivity for the specific thermal + squeezed-vacuum instrument,
//!   in numerically stable factored form.
//! * [`fock`]: an independent truncated number-basis oracle that evolves the
//!   same states with dense ladder-operator algebra, for cross-validation.
//!
//! The two computational routes share no code beyond parameter structs, which
//! is what makes their agreement (typically 1e-10 or better) meaningful.

pub mod analytic;
pub mod error;
pub mod fock;
pub mod gaussian;

pub use analytic::{InterferometerConfig, OutputCovariance, SensitivityReport};
pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
