//! State representation for a closed chain of two-cell contours.
//!
//! A chain of `n` contours carries one particle per contour. The state is
//! the cyclic vector of cell indices `d_0, ..., d_{n-1}`: `d_i = 0` when
//! particle `i` sits in the lower cell of contour `i`, `d_i = 1` when it
//! sits in the upper cell. Adjacent contours `i` and `i + 1 (mod n)` share
//! the node `(i, i+1)`; particle `i` crosses that node when moving 0 -> 1
//! and particle `i + 1` crosses it when moving 1 -> 0, so the pair
//! `(d_i, d_{i+1}) = (0, 1)` means both want the same node on the next
//! step: a competition.
//!
//! States are packed into a `u64` with bit `i` holding `d_i`. The packed
//! value is the canonical integer encoding used for state enumeration,
//! transition-matrix indexing and CSV output.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Hard limit on the chain length imposed by the bit-packed representation.
pub const MAX_CONTOURS: usize = 64;

/// Cell occupancy of every particle in a closed chain of contours.
///
/// Immutable after construction; all index arithmetic is modulo the number
/// of contours.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainState {
    n: usize,
    cells: u64,
}

/// A node both of its neighbouring particles try to cross in the same step.
///
/// Exists at node `(i, i+1)` exactly when `(d_i, d_{i+1}) = (0, 1)`. The
/// *left* particle is `i` (entering the node from cell 0), the *right*
/// particle is `i + 1 mod n` (entering from cell 1). Each particle takes
/// part in at most one competition per state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Competition {
    /// Index `i` of the node `(i, i+1 mod n)`.
    pub node: usize,
    /// Particle crossing the node while moving from cell 0 to cell 1.
    pub left: usize,
    /// Particle crossing the node while moving from cell 1 to cell 0.
    pub right: usize,
}

/// Lengths of the longest cyclic runs of equal cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClusterStats {
    /// Length of the longest cyclic run of zeros (`l0`).
    pub longest_zero_run: usize,
    /// Length of the longest cyclic run of ones (`l1`).
    pub longest_one_run: usize,
}

impl ClusterStats {
    /// The shorter of the two longest runs; zero exactly for constant states.
    pub fn min_run(&self) -> usize {
        self.longest_zero_run.min(self.longest_one_run)
    }
}

fn full_mask(n: usize) -> u64 {
    if n == MAX_CONTOURS {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl ChainState {
    /// Builds a state from explicit cell indices, one per contour.
    pub fn new(n: usize, cells: &[u8]) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewContours(n));
        }
        if n > MAX_CONTOURS {
            return Err(Error::TooManyContours(n));
        }
        if cells.len() != n {
            return Err(Error::StateLength {
                expected: n,
                found: cells.len(),
            });
        }
        let mut packed = 0u64;
        for (i, &c) in cells.iter().enumerate() {
            match c {
                0 => {}
                1 => packed |= 1 << i,
                value => return Err(Error::InvalidCell { position: i, value }),
            }
        }
        Ok(ChainState { n, cells: packed })
    }

    /// Builds a state from its canonical integer encoding (bit `i` = `d_i`).
    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewContours(n));
        }
        if n > MAX_CONTOURS {
            return Err(Error::TooManyContours(n));
        }
        if code & !full_mask(n) != 0 {
            return Err(Error::InvalidStateCode { n, code });
        }
        Ok(ChainState { n, cells: code })
    }

    /// Enumerates all `2^n` states in canonical-encoding order.
    ///
    /// Meant for exact analysis and exhaustive checks; capped well below
    /// [`MAX_CONTOURS`] because the state space grows as `2^n`.
    pub fn enumerate(n: usize) -> impl Iterator<Item = ChainState> {
        assert!(
            (2..=32).contains(&n),
            "state enumeration supports 2 <= n <= 32, got {n}"
        );
        (0..(1u64 << n)).map(move |code| ChainState { n, cells: code })
    }

    /// Canonical integer encoding of this state.
    pub fn code(&self) -> u64 {
        self.cells
    }

    /// Number of contours.
    pub fn len(&self) -> usize {
        self.n
    }

    /// Cell index of particle `i` (0 = lower, 1 = upper).
    pub fn cell(&self, i: usize) -> u8 {
        debug_assert!(i < self.n);
        ((self.cells >> i) & 1) as u8
    }

    /// True when every particle sits in the same cell index.
    pub fn is_constant(&self) -> bool {
        self.cells == 0 || self.cells == full_mask(self.n)
    }

    /// True when the state is one of free movement: every particle moves at
    /// this and all future steps of the deterministic system.
    ///
    /// These are exactly the constant states. Any non-constant cyclic vector
    /// contains a `(0, 1)` pair, hence a competition and a delayed particle.
    pub fn is_free_movement(&self) -> bool {
        self.is_constant()
    }

    /// All competitions of this state, ascending by node index.
    pub fn competitions(&self) -> Vec<Competition> {
        let mut out = Vec::new();
        for i in 0..self.n {
            let j = (i + 1) % self.n;
            if self.cell(i) == 0 && self.cell(j) == 1 {
                out.push(Competition {
                    node: i,
                    left: i,
                    right: j,
                });
            }
        }
        out
    }

    /// Longest cyclic runs of zeros and ones.
    ///
    /// A constant state counts as one run covering the whole cycle, so it
    /// yields `(n, 0)` or `(0, n)`.
    pub fn cluster_stats(&self) -> ClusterStats {
        if self.cells == 0 {
            return ClusterStats {
                longest_zero_run: self.n,
                longest_one_run: 0,
            };
        }
        if self.cells == full_mask(self.n) {
            return ClusterStats {
                longest_zero_run: 0,
                longest_one_run: self.n,
            };
        }
        // Start at a run boundary so the cyclic wrap never splits a run.
        let start = (0..self.n)
            .find(|&i| self.cell(i) != self.cell((i + self.n - 1) % self.n))
            .expect("non-constant state has a run boundary");
        let mut longest = [0usize; 2];
        let mut current_symbol = self.cell(start) as usize;
        let mut current_len = 0usize;
        for offset in 0..self.n {
            let symbol = self.cell((start + offset) % self.n) as usize;
            if symbol == current_symbol {
                current_len += 1;
            } else {
                longest[current_symbol] = longest[current_symbol].max(current_len);
                current_symbol = symbol;
                current_len = 1;
            }
        }
        longest[current_symbol] = longest[current_symbol].max(current_len);
        ClusterStats {
            longest_zero_run: longest[0],
            longest_one_run: longest[1],
        }
    }

    pub(crate) fn raw(&self) -> u64 {
        self.cells
    }

    pub(crate) fn with_raw(&self, cells: u64) -> ChainState {
        debug_assert_eq!(cells & !full_mask(self.n), 0);
        ChainState {
            n: self.n,
            cells,
        }
    }
}

impl fmt::Display for ChainState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "{}", self.cell(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ChainState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainState({self})")
    }
}

impl FromStr for ChainState {
    type Err = Error;

    /// Parses the external state format: a binary string whose leftmost
    /// character is `d_0`.
    fn from_str(s: &str) -> Result<Self> {
        if s.len() < 2 {
            return Err(Error::TooFewContours(s.len()));
        }
        if s.len() > MAX_CONTOURS {
            return Err(Error::TooManyContours(s.len()));
        }
        let mut cells = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => cells |= 1 << i,
                other => return Err(Error::InvalidStateChar(other)),
            }
        }
        Ok(ChainState {
            n: s.len(),
            cells,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(s: &str) -> ChainState {
        s.parse().unwrap()
    }

    #[test]
    fn construction_and_encoding() {
        let e3 = ChainState::new(3, &[0, 1, 1]).unwrap();
        assert_eq!(e3.to_string(), "011");
        assert_eq!(e3.code(), 0b110); // bit i = d_i
        assert_eq!(ChainState::from_code(3, 0b110).unwrap(), e3);

        let e0 = ChainState::new(3, &[0, 0, 0]).unwrap();
        assert_eq!(e0.code(), 0);
        assert!(e0.is_free_movement());
    }

    #[test]
    fn rejects_degenerate_and_malformed_input() {
        assert!(matches!(
            ChainState::new(1, &[0]),
            Err(Error::TooFewContours(1))
        ));
        assert!(matches!(
            ChainState::new(3, &[0, 1]),
            Err(Error::StateLength { expected: 3, found: 2 })
        ));
        assert!(matches!(
            ChainState::new(3, &[0, 2, 1]),
            Err(Error::InvalidCell { position: 1, value: 2 })
        ));
        assert!(matches!(
            ChainState::from_code(3, 8),
            Err(Error::InvalidStateCode { .. })
        ));
        assert!("0x1".parse::<ChainState>().is_err());
        assert!("0".parse::<ChainState>().is_err());
    }

    #[test]
    fn competitions_are_01_pairs() {
        assert_eq!(
            state("011").competitions(),
            vec![Competition { node: 0, left: 0, right: 1 }]
        );
        assert_eq!(state("000").competitions(), vec![]);
        let nodes: Vec<usize> = state("0101").competitions().iter().map(|c| c.node).collect();
        assert_eq!(nodes, vec![0, 2]);
        // n = 2 wraps: node 1 joins contours 1 and 0.
        assert_eq!(
            state("10").competitions(),
            vec![Competition { node: 1, left: 1, right: 0 }]
        );
    }

    #[test]
    fn cluster_stats_examples() {
        let s = state("00110").cluster_stats();
        assert_eq!(s.longest_zero_run, 3); // positions 4, 0, 1 wrap around
        assert_eq!(s.longest_one_run, 2);
        assert_eq!(s.min_run(), 2);

        let s = state("111").cluster_stats();
        assert_eq!((s.longest_zero_run, s.longest_one_run), (0, 3));
        assert_eq!(s.min_run(), 0);

        let s = state("011").cluster_stats();
        assert_eq!((s.longest_zero_run, s.longest_one_run), (1, 2));
        assert_eq!(s.min_run(), 1);
    }

    #[test]
    fn free_movement_is_exactly_the_constant_states() {
        assert!(state("000").is_free_movement());
        assert!(state("1111").is_free_movement());
        assert!(!state("011").is_free_movement());
        for x in ChainState::enumerate(6) {
            assert_eq!(x.is_free_movement(), x.cluster_stats().min_run() == 0);
            assert_eq!(x.is_free_movement(), x.competitions().is_empty());
        }
    }

    #[test]
    fn display_round_trips() {
        for x in ChainState::enumerate(7) {
            let again: ChainState = x.to_string().parse().unwrap();
            assert_eq!(again, x);
        }
    }
}
