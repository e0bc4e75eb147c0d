//! Tail-dependence calculus for max-stable random vectors.
//!
//! * [`coeffs`]: extremal coefficients `theta`, tail-dependence coefficients
//!   `lambda` and Tawn-Molchanov weights `beta` on the subset lattice, with
//!   exact zeta/Möbius transforms between them.
//! * [`tm`]: Tawn-Molchanov models, their exact distribution function, the
//!   limiting exceedance set and Bernoulli-compatible tensors.
//! * [`spectral`]: spectral distances, cut decompositions, line metrics and
//!   rigidity probing.
//! * [`realize`]: exact LP deciders for TD-matrix and spectral-distance
//!   realizability, with verifiable certificates.
//! * [`simulate`]: reproducible Monte-Carlo sampling and estimators.
//!
//! All exact quantities are [`Rational`]s (`num_rational::BigRational`).
//! See `examples/` for one runnable program per capability.

pub mod cli;
pub mod coeffs;
pub mod error;
pub mod io;
pub mod lp;
pub mod rational;
pub mod realize;
pub mod simulate;
pub mod spectral;
pub mod subset;
pub mod tm;

pub use coeffs::{Kind, SubsetFn, TdMatrix};
pub use error::{Error, NegativeAtom, Result};
pub use rational::Rational;
pub use realize::{FeasibilityOutcome, Instance, SdrScale};
pub use spectral::{CutDecomposition, LineMetricCert, SemiMetric};
pub use subset::Subset;
pub use tm::TmModel;
