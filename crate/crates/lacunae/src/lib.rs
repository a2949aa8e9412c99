//! Arithmetic of lacunary integer spectra and exact norms of trigonometric
//! polynomials.
//!
//! The crate has four parts:
//!
//! * [`relations`] — enumeration of integer coefficient relations and
//!   finite-window decision procedures for independence-type properties of
//!   spectra (`I(n)`, complex/real `J(n)`, the symmetric variant, and the
//!   pairing of a coefficient vector against a spectrum), all with
//!   machine-checkable witnesses.
//! * [`norms`] — exact even-exponent `L^p` norms by coefficient convolution,
//!   quadrature and sup-norm evaluation with certified error bounds, the
//!   multinomial expansion machinery behind them, sign oscillations, and
//!   unconditionality-constant estimation.
//! * [`sidon`] — Sidon-constant estimation, the sharp Hadamard-ratio bound,
//!   the lacunary lower inequality, and a joint-distribution deviation
//!   measure.
//! * [`sequences`] — generators for the example spectra (geometric sequences,
//!   integer parts of powers, polynomial values), classification of geometric
//!   sequences against their known independence levels, Diophantine solution
//!   enumeration, and density/growth diagnostics.
//!
//! All spectrum arithmetic is exact: window elements are arbitrary-precision
//! integers and witness certificates verify by exact integer evaluation.

pub mod error;
pub mod norms;
pub mod opt;
pub mod relations;
pub mod sequences;
pub mod sidon;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
