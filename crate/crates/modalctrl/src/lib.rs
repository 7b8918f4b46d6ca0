//! # modalctrl
//!
//! A numerical toolkit for studying attainable sets and approximate
//! null-controllability of infinite-dimensional linear control systems
//! (delay/neutral equations, boundary-controlled PDE models) through finite
//! modal truncations of their spectral data.
//!
//! Everything operates on finitely many eigenvalues `λ_j`, their Jordan
//! structure, and the per-mode input coupling rows `B*Ψ_j`. Eigenvectors are
//! never materialized as function-space objects: the controllability criteria
//! implemented here depend only on this finite data.
//!
//! The crate is organized in layers:
//!
//! * [`spectral`]: modal data types ([`spectral::ModalSystem`],
//!   [`spectral::SpectralMode`]) and exact Jordan-block exponentials.
//! * [`quasipoly`]: characteristic quasi-polynomials `Δ(z)` of neutral delay
//!   equations: evaluation, root localization with multiplicities, and
//!   exponential-type estimation.
//! * [`minimality`]: finite sections of the exponential family
//!   `(−t)^k e^{−λ_j t}`: Gram matrices, minimality margins, biorthogonal
//!   truncations.
//! * [`controllability`]: per-mode rank, nonvanishing, and adjoint-triviality
//!   tests, plus whole-system verdict assembly.
//! * [`attainable`]: controllability Gramians on truncated realizations,
//!   attainable-subspace extraction, subspace gaps, and the
//!   closure-independence experiment.
//! * [`preset`]: ready-made models (boundary-controlled wave equation,
//!   scalar delay equations, finite ODEs).
//! * [`model`]: versioned JSON model files.
//!
//! A narrative guide with runnable examples lives in the `book/` directory of
//! the repository and is mirrored into [`guide`] so its code samples are
//! compiled and run as doctests.

pub mod attainable;
pub mod controllability;
pub mod guide;
pub mod minimality;
pub mod model;
pub mod preset;
pub mod quasipoly;
pub mod spectral;

mod linalg;
mod parallel;
mod quad;

use num_complex::Complex;

/// Complex scalar used throughout the crate.
pub type Complex64 = Complex<f64>;

/// Errors produced by the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Evaluation would exceed the range of `f64` (e.g. `Δ(z)` for strongly
    /// negative `Re z·h`); the caller should switch to a log-magnitude path.
    #[error("range overflow evaluating at z = {z}")]
    RangeOverflow { z: Complex64 },

    /// A contour passed too close to a root for the winding number to be
    /// trustworthy; perturb the region boundary and retry.
    #[error("region boundary too close to a root near z = {z}")]
    BoundaryTooClose { z: Complex64 },

    /// Root subdivision exhausted its budget without reaching the residual
    /// target; the cluster is reported here instead of being dropped.
    #[error(
        "unresolved root cluster near {location} (multiplicity {multiplicity}, residual {residual:.3e})"
    )]
    UnresolvedCluster {
        location: Complex64,
        multiplicity: usize,
        residual: f64,
    },

    /// Adaptive quadrature failed to converge; carries the worst subinterval.
    #[error("quadrature did not converge on [{:.6}, {:.6}]", interval.0, interval.1)]
    QuadratureNonConvergence { interval: (f64, f64) },

    /// Gramian panel refinement failed to reach the requested tolerance.
    #[error("gramian quadrature stalled at {panels} panels (relative change {rel_change:.3e})")]
    GramianQuadrature { panels: usize, rel_change: f64 },

    /// The Gram section is too ill-conditioned to invert; carries the
    /// minimality margin (smallest Gram eigenvalue).
    #[error("exponential family section is ill-conditioned (margin {margin:.3e})")]
    IllConditionedFamily { margin: f64 },

    /// A model file violated its schema; `path` names the offending element.
    #[error("model schema violation at {path}: {message}")]
    Schema { path: String, message: String },

    /// An underlying dense factorization failed to converge.
    #[error("linear algebra failure: {0}")]
    Numerics(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
