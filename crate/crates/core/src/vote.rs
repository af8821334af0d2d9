//! Head-to-head comparison of two matchings under the four vote rules.
//!
//! An unmatched agent sits strictly below every edge value, by more than any
//! threshold: becoming matched is always a strict improvement and becoming
//! unmatched always a strict loss.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::{AgentIdx, EdgeIdx, Instance, Mode};
use crate::matching::Matching;
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VoteRule {
    /// Votes by strict comparison of values; equal values abstain.
    Classic,
    /// Equal value with a different partner counts for the incumbent.
    Weak,
    /// The challenger wins a vote only with an improvement of at least its threshold.
    Gamma,
    /// The challenger wins a vote with any weakly better, different partner.
    Super,
}

impl VoteRule {
    pub const ALL: [VoteRule; 4] = [VoteRule::Classic, VoteRule::Weak, VoteRule::Gamma, VoteRule::Super];

    pub fn name(self) -> &'static str {
        match self {
            VoteRule::Classic => "classic",
            VoteRule::Weak => "weak",
            VoteRule::Gamma => "gamma",
            VoteRule::Super => "super",
        }
    }

    /// The rule matching an instance's mode: weak popularity or gamma popularity.
    pub fn for_mode(mode: Mode) -> Self {
        match mode {
            Mode::Weak => VoteRule::Weak,
            Mode::Gamma => VoteRule::Gamma,
        }
    }

    pub fn check_mode(self, inst: &Instance) -> Result<()> {
        if self == VoteRule::Gamma && inst.mode() != Mode::Gamma {
            Err(Error::mode_mismatch(self))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for VoteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VoteRule {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        VoteRule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule `{s}` (expected classic, weak, gamma or super)"))
    }
}

/// +1 for the incumbent `M`, -1 for the challenger `N`, 0 for abstain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vote {
    ForN = -1,
    Abstain = 0,
    ForM = 1,
}

impl Vote {
    pub fn value(self) -> i64 {
        self as i64
    }
}

/// Value of an assignment; `None` (unmatched) orders below every edge.
fn level(inst: &Instance, v: AgentIdx, e: Option<EdgeIdx>) -> Option<Value> {
    e.map(|e| inst.edge(e).value_for(v))
}

/// Vote of `v` given its edge `m` in the incumbent and `n` in the challenger.
/// The caller has checked the rule against the instance mode.
pub(crate) fn vote_on(
    inst: &Instance,
    v: AgentIdx,
    m: Option<EdgeIdx>,
    n: Option<EdgeIdx>,
    rule: VoteRule,
) -> Vote {
    let (pm, pn) = (level(inst, v, m), level(inst, v, n));
    if rule == VoteRule::Classic {
        return match pm.cmp(&pn) {
            std::cmp::Ordering::Greater => Vote::ForM,
            std::cmp::Ordering::Equal => Vote::Abstain,
            std::cmp::Ordering::Less => Vote::ForN,
        };
    }
    if m == n {
        return Vote::Abstain;
    }
    let challenger_wins = match rule {
        VoteRule::Weak => pn > pm,
        VoteRule::Super => pn >= pm,
        VoteRule::Gamma => match (m, n) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(_), Some(ne)) => {
                let gamma = inst
                    .edge(ne)
                    .gamma_for(v)
                    .expect("gamma rule checked against instance mode");
                pn.unwrap() >= pm.unwrap() + gamma
            }
        },
        VoteRule::Classic => unreachable!(),
    };
    if challenger_wins {
        Vote::ForN
    } else {
        Vote::ForM
    }
}

pub fn vote(inst: &Instance, v: AgentIdx, m: &Matching, n: &Matching, rule: VoteRule) -> Result<Vote> {
    rule.check_mode(inst)?;
    Ok(vote_on(inst, v, m.edge_at(inst, v), n.edge_at(inst, v), rule))
}

/// Sum of all agents' votes; nonnegative means `m` does not lose to `n`.
pub fn delta(inst: &Instance, m: &Matching, n: &Matching, rule: VoteRule) -> Result<i64> {
    rule.check_mode(inst)?;
    let (am, an) = (m.assignment(inst), n.assignment(inst));
    Ok(inst
        .agent_indices()
        .map(|v| vote_on(inst, v, am[v.0], an[v.0], rule).value())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;

    fn star(gamma: bool) -> Instance {
        // agent v=u holds two edges: m (value 1) and n (value 1.4, gamma 0.5)
        let text = if gamma {
            "mode gamma\nu u\nw a b\nedge m u a 1 1 1 1\nedge n u b 1.4 1 0.5 1\n"
        } else {
            "mode weak\nu u\nw a b\nedge m u a 2 1\nedge n u b 2 1\n"
        };
        parse_instance(text).unwrap()
    }

    fn one(inst: &Instance, id: &str) -> Matching {
        Matching::from_ids(inst, &[id]).unwrap()
    }

    #[test]
    fn weak_equal_values_favor_incumbent() {
        let inst = star(false);
        let u = inst.agent_by_name("u").unwrap();
        let (m, n) = (one(&inst, "m"), one(&inst, "n"));
        assert_eq!(vote(&inst, u, &m, &n, VoteRule::Weak).unwrap(), Vote::ForM);
        assert_eq!(vote(&inst, u, &n, &m, VoteRule::Weak).unwrap(), Vote::ForM);
        assert_eq!(vote(&inst, u, &m, &n, VoteRule::Classic).unwrap(), Vote::Abstain);
        assert_eq!(vote(&inst, u, &m, &n, VoteRule::Super).unwrap(), Vote::ForN);
    }

    #[test]
    fn identical_assignment_abstains() {
        let inst = star(true);
        let m = one(&inst, "m");
        for rule in VoteRule::ALL {
            for v in inst.agent_indices() {
                assert_eq!(vote(&inst, v, &m, &m, rule).unwrap(), Vote::Abstain);
            }
            assert_eq!(delta(&inst, &m, &m, rule).unwrap(), 0);
        }
    }

    #[test]
    fn gamma_improvement_below_threshold_keeps_incumbent() {
        let inst = star(true);
        let u = inst.agent_by_name("u").unwrap();
        let (m, n) = (one(&inst, "m"), one(&inst, "n"));
        // 1.4 < 1 + 0.5
        assert_eq!(vote(&inst, u, &m, &n, VoteRule::Gamma).unwrap(), Vote::ForM);
        assert_eq!(vote(&inst, u, &m, &n, VoteRule::Weak).unwrap(), Vote::ForN);
    }

    #[test]
    fn super_equal_values_favor_challenger() {
        let inst = parse_instance("mode weak\nu u\nw a b\nedge m u a 3 1\nedge n u b 3 1\n").unwrap();
        let u = inst.agent_by_name("u").unwrap();
        assert_eq!(
            vote(&inst, u, &one(&inst, "m"), &one(&inst, "n"), VoteRule::Super).unwrap(),
            Vote::ForN
        );
    }

    #[test]
    fn unmatched_sentinel() {
        // zero-valued edge still beats being unmatched, and gamma is irrelevant
        let inst = parse_instance("mode gamma\nu u\nw a\nedge e u a 0 0 5 5\n").unwrap();
        let u = inst.agent_by_name("u").unwrap();
        let (empty, e) = (Matching::empty(), one(&inst, "e"));
        for rule in VoteRule::ALL {
            assert_eq!(vote(&inst, u, &empty, &e, rule).unwrap(), Vote::ForN, "{rule}");
            assert_eq!(vote(&inst, u, &e, &empty, rule).unwrap(), Vote::ForM, "{rule}");
        }
        assert_eq!(delta(&inst, &empty, &e, VoteRule::Gamma).unwrap(), -2);
    }

    #[test]
    fn gamma_rule_rejected_in_weak_mode() {
        let inst = star(false);
        let m = one(&inst, "m");
        assert!(matches!(
            delta(&inst, &m, &m, VoteRule::Gamma),
            Err(Error::RuleModeMismatch("gamma"))
        ));
    }
}
