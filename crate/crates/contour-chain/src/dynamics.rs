//! The synchronous deterministic update.
//!
//! At every discrete step each particle passes to the other cell of its
//! contour unless it loses a competition: every non-competing particle
//! moves, and in each competition only the rule's winner moves.

use crate::rule::{Rule, Winner};
use crate::state::{ChainState, Competition};

/// Per-particle move permissions for one deterministic step.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct MoveMask {
    n: usize,
    bits: u64,
}

impl MoveMask {
    /// True when particle `i` moves in the deterministic system this step.
    pub fn allows(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        (self.bits >> i) & 1 == 1
    }

    /// Number of particles allowed to move.
    pub fn count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Raw bitmask, bit `i` = particle `i` moves.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn from_flags(flags: &[bool]) -> MoveMask {
        let mut bits = 0u64;
        for (i, &f) in flags.iter().enumerate() {
            if f {
                bits |= 1 << i;
            }
        }
        MoveMask { n: flags.len(), bits }
    }

    pub(crate) fn from_bits(n: usize, bits: u64) -> MoveMask {
        MoveMask { n, bits }
    }
}

impl std::fmt::Debug for MoveMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MoveMask(")?;
        for i in 0..self.n {
            write!(f, "{}", u8::from(self.allows(i)))?;
        }
        write!(f, ")")
    }
}

/// Builds the move mask for an arbitrary resolution of the given
/// competitions: every particle starts allowed, then each competition's
/// loser is cleared. `winner_of` receives the competition's position in
/// `competitions` along with the competition itself.
pub fn mask_with_winners(
    x: &ChainState,
    competitions: &[Competition],
    mut winner_of: impl FnMut(usize, &Competition) -> Winner,
) -> MoveMask {
    let n = x.len();
    let mut bits = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for (k, c) in competitions.iter().enumerate() {
        let loser = match winner_of(k, c) {
            Winner::Left => c.right,
            Winner::Right => c.left,
        };
        bits &= !(1u64 << loser);
    }
    MoveMask { n, bits }
}

/// Move permissions in state `x` under `rule`: all non-competing particles
/// plus the winner of each competition.
pub fn move_mask(x: &ChainState, rule: &Rule) -> MoveMask {
    let competitions = x.competitions();
    mask_with_winners(x, &competitions, |_, c| rule.resolve(x, c))
}

/// One synchronous step of the deterministic system: simultaneously flips
/// the cell of every allowed particle; losers keep their cell.
pub fn step_deterministic(x: &ChainState, rule: &Rule) -> ChainState {
    x.with_raw(x.raw() ^ move_mask(x, rule).bits())
}

pub(crate) fn apply_mask(x: &ChainState, mask: &MoveMask) -> ChainState {
    x.with_raw(x.raw() ^ mask.bits())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(s: &str) -> ChainState {
        s.parse().unwrap()
    }

    #[test]
    fn mask_examples() {
        let m = move_mask(&state("011"), &Rule::left_priority());
        assert_eq!(m, MoveMask::from_flags(&[true, false, true]));

        for rule in [Rule::left_priority(), Rule::long_cluster()] {
            let m = move_mask(&state("000"), &rule);
            assert_eq!(m.count(), 3); // no competitions, everyone moves
        }

        // sole competition at node 2; zeros dominate, so the left particle 2 wins
        let m = move_mask(&state("000110"), &Rule::long_cluster());
        assert_eq!(m, MoveMask::from_flags(&[true, true, true, false, true, true]));
    }

    #[test]
    fn step_examples() {
        assert_eq!(
            step_deterministic(&state("011"), &Rule::left_priority()),
            state("110")
        );
        assert_eq!(
            step_deterministic(&state("000"), &Rule::right_priority()),
            state("111")
        );
        // direction is right, so particle 1 wins and particle 0 stays
        assert_eq!(
            step_deterministic(&state("011"), &Rule::long_cluster()),
            state("000")
        );
    }

    #[test]
    fn left_priority_three_cycle() {
        let rule = Rule::left_priority();
        let mut x = state("011");
        let orbit: Vec<String> = (0..4)
            .map(|_| {
                let s = x.to_string();
                x = step_deterministic(&x, &rule);
                s
            })
            .collect();
        assert_eq!(orbit, ["011", "110", "101", "011"]);
    }

    #[test]
    fn step_flips_exactly_the_mask() {
        for n in 2..=8 {
            for x in ChainState::enumerate(n) {
                for rule in [Rule::left_priority(), Rule::right_priority(), Rule::long_cluster()] {
                    let m = move_mask(&x, &rule);
                    let y = step_deterministic(&x, &rule);
                    assert_eq!(x.code() ^ y.code(), m.bits());
                }
            }
        }
    }
}
