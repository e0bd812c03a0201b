//! Weighted set cover workbench: greedy and greedy-with-withdrawals
//! approximations, the (1+1)-EA, SEMO and the isolated-population
//! evolutionary algorithm (SEIP, with LSEIP/GSEIP variants), an exact
//! oracle, partial-ratio analysis, path certificates, price audits and the
//! instance families used to probe approximation ratios.
//!
//! The model is generic over the weight scalar ([`Weight`]). Exact rational
//! weights ([`Rational`]) are the default; [`ScaledInstance`] is the same
//! instance rescaled to `i128` weights for the evolutionary hot loops.

pub mod analysis;
pub mod closure;
pub mod error;
pub mod generators;
pub mod instance;
pub mod io;
pub mod isolation;
pub mod mutation;
pub mod rng;
pub mod solution;
pub mod solvers;
pub mod weight;

pub use error::{Error, Result};
pub use instance::{ElementSet, SetCoverInstance, WeightedSet};
pub use isolation::{IsolationFunction, IsolationKind};
pub use mutation::Mutation;
pub use rng::Rng;
pub use solution::Solution;
pub use weight::{harmonic, ExactWeight, Rational, Weight};

/// Instance with exact rational weights.
pub type Instance = SetCoverInstance<Rational>;

/// Instance whose weights were multiplied by a common denominator.
pub type ScaledInstance = SetCoverInstance<i128>;
