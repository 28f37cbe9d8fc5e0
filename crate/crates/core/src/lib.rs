//! Analysis engine for utility-system games with set-valued actions.
//!
//! Users pick actions (sets of acts), a social utility `γ` scores the joint
//! profile, and per-user private utilities `α_i` drive equilibrium behavior.
//! The crate finds and certifies pure Nash, social-aware Nash, and group Nash
//! equilibria, measures the curvature of `γ`, and checks the worst-case
//! performance guarantees that hold for valid submodular utility systems
//! against brute-force optima on desk-scale instances.
//!
//! Module map:
//! - [`game`]: domain types (acts, actions, profiles, strategies, groupings)
//!   and the sequence algebra every other module consumes.
//! - [`expectation`]: exact expected utilities over mixed profiles and the
//!   `Ω ∪ S` union composition.
//! - [`structure`]: exhaustive monotonicity / submodularity / validity
//!   verifiers with minimal counterexample witnesses.
//! - [`curvature`]: total and per-group curvature.
//! - [`equilibria`]: certification, enumeration, and best-response dynamics.
//! - [`bounds`]: brute-force optimum and signed-margin reports for the
//!   equilibrium performance bounds.
//! - [`spectrum`]: the database-assisted spectrum-access instance family.
//! - [`coverage`]: weighted-coverage instances (monotone submodular corpus).
//! - [`table`]: explicit lookup-table instances for adversarial tests.

pub mod bounds;
pub mod coverage;
pub mod curvature;
pub mod equilibria;
pub mod error;
pub mod expectation;
pub mod game;
pub mod spectrum;
pub mod structure;
pub mod table;

mod iter;

pub use error::{Error, Result};
pub use game::{
    Act, ActSet, Action, ActionProfile, ActionSpace, Game, GameBuilder, Grouping, MixedStrategy,
    SocialGraph, StrategyProfile,
};

/// Default comparison tolerance used throughout the engine.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default cap on exhaustive-enumeration sizes (outcomes, profiles, triples).
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;
