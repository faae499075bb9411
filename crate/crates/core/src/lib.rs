//! Local Ihara zeta functions of finite simple graphs.
//!
//! The crate counts closed geodesics by brute force ([`oracle`]) and
//! reproduces the same numbers through exact power-series identities
//! ([`local`], [`operators`], [`zeta`]) and through the spectrum of the
//! combinatorial Laplacian ([`spectral`]).

pub mod cli;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod local;
pub mod operators;
pub mod oracle;
pub mod series;
pub mod spectral;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
pub use graph::{ball, make_family, validate, FamilyKind, FamilySpec, Graph, ValidationReport};
pub use series::{binomial_power, FloatSeries, MatrixSeries, ScalarSeries};
