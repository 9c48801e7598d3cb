//! Exact linear degrees-of-freedom toolkit for the two-user MIMO X-channel
//! with delayed CSIT.
//!
//! All DoF quantities are exact rationals. Generic channels are realized
//! over a large prime field so that every rank is computed exactly.

#![allow(clippy::needless_range_loop)]

pub mod bounds;
pub mod channel;
pub mod config;
pub mod error;
pub mod field;
pub mod loss;
pub mod params;
pub mod rational;
pub mod region;
pub mod rng;
pub mod scheme;
pub mod table;
pub mod transcript;

pub use config::{normalize, normalized_configs, AntennaConfig};
pub use error::{Result, XcError};
pub use field::{Field, FieldMatrix, DEFAULT_PRIME, SECOND_PRIME};
pub use params::{bc_sum_dof, case_of, gamma, gamma_bounds, scheme_params, sum_dof, Case, PhaseMode, PhaseParams, SchemeParams};
pub use rational::Rational;
