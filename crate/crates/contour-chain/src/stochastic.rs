//! The epsilon-perturbed dynamics and Monte Carlo velocity estimation.
//!
//! In the stochastic system a particle that moves in the deterministic
//! system moves with probability `1 - epsilon`; a particle that is delayed
//! in the deterministic system never moves. Rule evaluation (including the
//! long-cluster rule's global run comparison) happens before any
//! randomness: the noise only thins the deterministic move mask, and a
//! competition's loser stays put even when the winner's attempt fails.
//!
//! Randomness comes from counter-based ChaCha streams: a `(seed, stream)`
//! pair pins a trajectory bit-for-bit, and independent replicas simply use
//! distinct stream ids of the same seed.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dynamics::{apply_mask, move_mask, MoveMask};
use crate::error::{Error, Result};
use crate::rule::Rule;
use crate::state::ChainState;

/// Probability that a single allowed move attempt fails.
#[derive(Clone, Copy, PartialEq, PartialOrd, Debug)]
pub struct Epsilon(f64);

impl Epsilon {
    /// The deterministic limit: every allowed move succeeds.
    pub const ZERO: Epsilon = Epsilon(0.0);

    /// Accepts values in `[0, 1)`.
    pub fn new(value: f64) -> Result<Epsilon> {
        if value.is_finite() && (0.0..1.0).contains(&value) {
            Ok(Epsilon(value))
        } else {
            Err(Error::InvalidEpsilon(value))
        }
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// A reproducible random stream: `(seed, stream)` identifies it completely.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> RngStream {
        RngStream { seed, stream }
    }

    /// Fresh generator positioned at the start of this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// One step of the stochastic system. Every particle allowed by the
/// deterministic move mask flips its cell with probability `1 - epsilon`,
/// independently across particles (draws happen in ascending particle
/// order); disallowed particles never move. Returns the successor state and
/// the realized per-particle move flags.
pub fn step_stochastic(
    x: &ChainState,
    rule: &Rule,
    eps: Epsilon,
    rng: &mut ChaCha8Rng,
) -> (ChainState, MoveMask) {
    let allowed = move_mask(x, rule);
    let p_move = 1.0 - eps.value();
    let mut realized = 0u64;
    for i in 0..x.len() {
        if allowed.allows(i) && rng.random_bool(p_move) {
            realized |= 1 << i;
        }
    }
    let moved = MoveMask::from_bits(x.len(), realized);
    (apply_mask(x, &moved), moved)
}

/// Realized move counts of one sampled trajectory.
#[derive(Clone, Debug)]
pub struct TrajectoryStats {
    /// Counted steps (burn-in excluded).
    pub steps: u64,
    /// Realized moves of each particle over the counted window.
    pub transitions: Vec<u64>,
    /// State at the start of the counted window.
    pub initial: ChainState,
    /// State after the last counted step.
    pub final_state: ChainState,
}

impl TrajectoryStats {
    /// Empirical velocity of particle `i`: transitions per counted step.
    pub fn velocity(&self, i: usize) -> f64 {
        self.transitions[i] as f64 / self.steps as f64
    }

    pub fn velocities(&self) -> Vec<f64> {
        (0..self.transitions.len()).map(|i| self.velocity(i)).collect()
    }

    pub fn mean_velocity(&self) -> f64 {
        let n = self.transitions.len() as f64;
        self.transitions.iter().map(|&c| c as f64).sum::<f64>() / (n * self.steps as f64)
    }
}

/// Samples one trajectory: `burn_in` discarded warm-up steps followed by
/// `steps` counted steps.
pub fn sample_trajectory(
    x0: &ChainState,
    rule: &Rule,
    eps: Epsilon,
    steps: u64,
    burn_in: u64,
    stream: &RngStream,
) -> TrajectoryStats {
    assert!(steps >= 1, "need at least one counted step");
    let mut rng = stream.rng();
    let mut x = *x0;
    for _ in 0..burn_in {
        x = step_stochastic(&x, rule, eps, &mut rng).0;
    }
    let initial = x;
    let mut transitions = vec![0u64; x.len()];
    for _ in 0..steps {
        let (next, moved) = step_stochastic(&x, rule, eps, &mut rng);
        let bits = moved.bits();
        for (i, count) in transitions.iter_mut().enumerate() {
            *count += (bits >> i) & 1;
        }
        x = next;
    }
    TrajectoryStats {
        steps,
        transitions,
        initial,
        final_state: x,
    }
}

/// Velocity estimate aggregated over independent replicas.
#[derive(Clone, Debug)]
pub struct VelocityEstimate {
    pub eps: Epsilon,
    pub rule: String,
    pub replicas: usize,
    pub steps: u64,
    pub burn_in: u64,
    /// Replica mean of each particle's empirical velocity.
    pub v: Vec<f64>,
    /// Standard error of each particle's mean across replicas.
    pub v_stderr: Vec<f64>,
    /// Replica mean of the per-replica mean velocity.
    pub v_mean: f64,
    pub v_mean_stderr: f64,
}

fn mean_and_stderr(samples: &[f64]) -> (f64, f64) {
    let r = samples.len();
    let mean = samples.iter().sum::<f64>() / r as f64;
    if r < 2 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (r as f64 - 1.0);
    (mean, (var / r as f64).sqrt())
}

/// Runs `replicas` independent trajectories (streams `0..replicas` of
/// `seed`) in parallel and aggregates their velocity estimates. The result
/// is a pure function of `(x0, rule, eps, steps, burn_in, replicas, seed)`.
pub fn estimate_velocities(
    x0: &ChainState,
    rule: &Rule,
    eps: Epsilon,
    steps: u64,
    burn_in: u64,
    replicas: usize,
    seed: u64,
) -> VelocityEstimate {
    assert!(replicas >= 1, "need at least one replica");
    let stats: Vec<TrajectoryStats> = (0..replicas)
        .into_par_iter()
        .map(|r| sample_trajectory(x0, rule, eps, steps, burn_in, &RngStream::new(seed, r as u64)))
        .collect();

    let n = x0.len();
    let mut v = Vec::with_capacity(n);
    let mut v_stderr = Vec::with_capacity(n);
    for i in 0..n {
        let samples: Vec<f64> = stats.iter().map(|s| s.velocity(i)).collect();
        let (mean, se) = mean_and_stderr(&samples);
        v.push(mean);
        v_stderr.push(se);
    }
    let replica_means: Vec<f64> = stats.iter().map(|s| s.mean_velocity()).collect();
    let (v_mean, v_mean_stderr) = mean_and_stderr(&replica_means);

    VelocityEstimate {
        eps,
        rule: rule.name().to_string(),
        replicas,
        steps,
        burn_in,
        v,
        v_stderr,
        v_mean,
        v_mean_stderr,
    }
}
