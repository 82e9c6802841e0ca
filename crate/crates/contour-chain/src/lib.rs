//! Binary closed chains of contours.
//!
//! A chain is a ring of `n` contours, each a closed loop with two cells
//! (lower 0, upper 1) holding exactly one particle. Adjacent contours share
//! a node, and two particles may not cross the same node in the same step;
//! when both try, a *competition* occurs and a pluggable resolution rule
//! picks the one that moves. This crate provides
//!
//! * the exact synchronous dynamics with the built-in rules (left priority,
//!   right priority, odd-even, long cluster) and arbitrary table rules
//!   ([`state`], [`rule`], [`dynamics`]);
//! * the stochastic variant where every allowed move succeeds independently
//!   with probability `1 - epsilon`, with reproducible Monte Carlo velocity
//!   estimation ([`stochastic`]);
//! * exact finite-Markov-chain analysis over all `2^n` states: transition
//!   matrices, stationary distributions, per-particle average velocities,
//!   macrostate lumping and epsilon sweeps ([`markov`]);
//! * exhaustive certification that the long-cluster rule reaches free
//!   movement in the minimum possible number of steps ([`verify`]).
//!
//! ```
//! use contour_chain::prelude::*;
//!
//! let x: ChainState = "011".parse().unwrap();
//! assert_eq!(step_deterministic(&x, &Rule::long_cluster()).to_string(), "000");
//!
//! let p = TransitionMatrix::build(3, &Rule::left_priority(), Epsilon::new(1e-4).unwrap()).unwrap();
//! let pi = stationary(&p).unwrap();
//! let report = velocities(&p, &pi);
//! assert!((report.v_mean - 6.0 / 7.0).abs() < 1e-2);
//! ```
//!
//! See the `examples/` directory for one runnable program per capability
//! and the `contour-chain` binary for the command-line front end.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod markov;
pub mod rule;
pub mod state;
pub mod stochastic;
pub mod verify;

pub use error::{Error, Result};

/// The most commonly used items in one import.
pub mod prelude {
    pub use crate::dynamics::{move_mask, step_deterministic, MoveMask};
    pub use crate::error::{Error, Result};
    pub use crate::markov::{
        epsilon_sweep, level_set_probs, lump, stationary, velocities, MacrostatePartition,
        TransitionMatrix,
    };
    pub use crate::rule::{long_cluster_direction, Rule, TableRule, Winner};
    pub use crate::state::{ChainState, ClusterStats, Competition};
    pub use crate::stochastic::{
        estimate_velocities, sample_trajectory, step_stochastic, Epsilon, RngStream,
    };
    pub use crate::verify::{
        check_long_cluster_decrement, check_long_cluster_optimality, check_min_run_lower_bound,
        min_time_to_free, time_to_free_under_rule,
    };
}
