//! Competition resolution rules.
//!
//! When two particles try to cross the same node, a rule picks the single
//! particle that moves. A rule must assign exactly one winner to every
//! competition of every state. The built-in rules:
//!
//! * `left` — the particle entering from cell 0 always wins;
//! * `right` — the particle entering from cell 1 always wins;
//! * `odd-even` — the particle on the even-indexed contour wins (only
//!   well-defined for even chain lengths);
//! * `long-cluster` — compares the longest zero run against the longest
//!   one run of the whole state and gives priority to all left-moving
//!   particles when zeros dominate or tie, to all right-moving particles
//!   otherwise;
//! * table rules — an explicit map from (state, node) to a winner, used to
//!   realize arbitrary rules in tests and searches.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::state::{ChainState, Competition};

/// The side of a competition that moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Winner {
    /// The particle passing from cell 0 to cell 1.
    Left,
    /// The particle passing from cell 1 to cell 0.
    Right,
}

/// Global direction preferred by the long-cluster rule in state `x`:
/// [`Winner::Left`] when the longest zero run is at least as long as the
/// longest one run, [`Winner::Right`] otherwise. Ties go left. The same
/// direction applies to every competition of the state.
pub fn long_cluster_direction(x: &ChainState) -> Winner {
    let stats = x.cluster_stats();
    if stats.longest_zero_run >= stats.longest_one_run {
        Winner::Left
    } else {
        Winner::Right
    }
}

#[derive(Clone, Debug)]
enum RuleKind {
    LeftPriority,
    RightPriority,
    OddEven,
    LongCluster,
    Table(Arc<TableRule>),
}

/// A deterministic, total competition resolution rule.
#[derive(Clone, Debug)]
pub struct Rule {
    kind: RuleKind,
}

impl Rule {
    /// The left particle always wins.
    pub fn left_priority() -> Rule {
        Rule { kind: RuleKind::LeftPriority }
    }

    /// The right particle always wins.
    pub fn right_priority() -> Rule {
        Rule { kind: RuleKind::RightPriority }
    }

    /// Priority follows the longer of the two longest runs; see
    /// [`long_cluster_direction`].
    pub fn long_cluster() -> Rule {
        Rule { kind: RuleKind::LongCluster }
    }

    /// The particle on the even-indexed contour wins.
    ///
    /// Only constructible for even `n`: with an odd number of contours the
    /// node `(n-1, 0)` joins two even-indexed contours and the rule has no
    /// winner there.
    pub fn odd_even(n: usize) -> Result<Rule> {
        if n % 2 != 0 {
            return Err(Error::OddEvenParity(n));
        }
        Ok(Rule { kind: RuleKind::OddEven })
    }

    /// Wraps an explicit winner table.
    pub fn table(table: TableRule) -> Rule {
        Rule { kind: RuleKind::Table(Arc::new(table)) }
    }

    /// Short identifier used by the CLI and in CSV output.
    pub fn name(&self) -> &'static str {
        match self.kind {
            RuleKind::LeftPriority => "left",
            RuleKind::RightPriority => "right",
            RuleKind::OddEven => "odd-even",
            RuleKind::LongCluster => "long-cluster",
            RuleKind::Table(_) => "table",
        }
    }

    /// Resolves one competition of state `x` to its winner.
    pub fn resolve(&self, x: &ChainState, c: &Competition) -> Winner {
        match &self.kind {
            RuleKind::LeftPriority => Winner::Left,
            RuleKind::RightPriority => Winner::Right,
            RuleKind::OddEven => {
                assert!(
                    x.len() % 2 == 0,
                    "odd-even rule applied to a chain of odd length {}",
                    x.len()
                );
                if c.left % 2 == 0 {
                    Winner::Left
                } else {
                    Winner::Right
                }
            }
            RuleKind::LongCluster => long_cluster_direction(x),
            RuleKind::Table(table) => table.winner(x, c.node),
        }
    }
}

/// Explicit winner map over every competition of every state of a fixed `n`.
#[derive(Clone, Debug)]
pub struct TableRule {
    n: usize,
    winners: HashMap<(u64, usize), Winner>,
}

/// Enumerating all states caps the table size at `2^TABLE_CAP` entries.
pub const TABLE_CAP: usize = 16;

impl TableRule {
    /// Materializes a total table by evaluating `f` on every competition of
    /// every state.
    pub fn from_fn(
        n: usize,
        f: impl Fn(&ChainState, &Competition) -> Winner,
    ) -> Result<TableRule> {
        if n < 2 {
            return Err(Error::TooFewContours(n));
        }
        if n > TABLE_CAP {
            return Err(Error::SearchCapExceeded { n, cap: TABLE_CAP });
        }
        let mut winners = HashMap::new();
        for x in ChainState::enumerate(n) {
            for c in x.competitions() {
                winners.insert((x.code(), c.node), f(&x, &c));
            }
        }
        Ok(TableRule { n, winners })
    }

    pub fn chain_len(&self) -> usize {
        self.n
    }

    fn winner(&self, x: &ChainState, node: usize) -> Winner {
        *self
            .winners
            .get(&(x.code(), node))
            .expect("table rule is total over all competitions")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(s: &str) -> ChainState {
        s.parse().unwrap()
    }

    #[test]
    fn long_cluster_direction_examples() {
        assert_eq!(long_cluster_direction(&state("011")), Winner::Right); // 1 < 2
        assert_eq!(long_cluster_direction(&state("0101")), Winner::Left); // tie
        assert_eq!(long_cluster_direction(&state("000110")), Winner::Left); // 4 > 2
    }

    #[test]
    fn resolve_matches_rule_definitions() {
        let x = state("011");
        let c = x.competitions()[0];
        assert_eq!(Rule::left_priority().resolve(&x, &c), Winner::Left);
        assert_eq!(Rule::right_priority().resolve(&x, &c), Winner::Right);
        assert_eq!(Rule::long_cluster().resolve(&x, &c), Winner::Right);

        // particles 0 vs 1 at node 0: the even contour wins
        let x = state("0101");
        let c = x.competitions()[0];
        assert_eq!((c.left, c.right), (0, 1));
        assert_eq!(Rule::odd_even(4).unwrap().resolve(&x, &c), Winner::Left);
    }

    #[test]
    fn odd_even_requires_even_n() {
        assert!(matches!(Rule::odd_even(3), Err(Error::OddEvenParity(3))));
        assert!(Rule::odd_even(4).is_ok());
    }

    #[test]
    fn table_rule_reproduces_its_generator() {
        let table = TableRule::from_fn(4, |x, c| Rule::left_priority().resolve(x, c)).unwrap();
        let rule = Rule::table(table);
        for x in ChainState::enumerate(4) {
            for c in x.competitions() {
                assert_eq!(rule.resolve(&x, &c), Winner::Left);
            }
        }
    }
}
