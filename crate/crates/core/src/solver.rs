//! Deferred acceptance over the duplicated instance and projection back.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::duplication::{build_duplicated, DuplicatedInstance, EdgeCopy};
use crate::error::{Error, Result};
use crate::instance::{content, AgentIdx, Instance};
use crate::matching::Matching;

/// A matching of edge copies: each agent holds at most one copy.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct StrictMatching {
    copies: Vec<EdgeCopy>,
}

impl StrictMatching {
    pub fn new(copies: impl IntoIterator<Item = EdgeCopy>) -> Self {
        let mut copies: Vec<EdgeCopy> = copies.into_iter().collect();
        copies.sort_unstable();
        copies.dedup();
        StrictMatching { copies }
    }

    pub fn copies(&self) -> &[EdgeCopy] {
        &self.copies
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    /// Parses whitespace- or line-separated `copy(edge)` tokens.
    pub fn parse(inst: &Instance, text: &str) -> Result<Self> {
        let mut copies = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            for token in content(raw).split_whitespace() {
                let c = EdgeCopy::parse(inst, token).ok_or_else(|| Error::Parse {
                    line: i + 1,
                    msg: format!("bad edge copy `{token}`"),
                })?;
                copies.push(c);
            }
        }
        Ok(StrictMatching::new(copies))
    }

    pub fn to_text(&self, inst: &Instance) -> String {
        let mut out = String::new();
        for c in &self.copies {
            writeln!(out, "{}", c.display(inst)).unwrap();
        }
        out
    }

    /// Per-agent view of the held copy.
    fn assignment(&self, dup: &DuplicatedInstance<'_>) -> Result<Vec<Option<EdgeCopy>>> {
        let inst = dup.base();
        let mut at = vec![None; inst.agent_count()];
        for &c in &self.copies {
            if c.edge.0 >= inst.edge_count() {
                return Err(Error::InvalidAssignment(format!("edge index {} out of range", c.edge.0)));
            }
            let edge = inst.edge(c.edge);
            for v in [edge.u, edge.w] {
                if dup.rank(v, c).is_none() {
                    return Err(Error::InvalidAssignment(format!(
                        "{} not on the list of `{}`",
                        c.display(inst),
                        inst.agent(v).name
                    )));
                }
                if at[v.0].replace(c).is_some() {
                    return Err(Error::InvalidAssignment(format!(
                        "agent `{}` holds two copies",
                        inst.agent(v).name
                    )));
                }
            }
        }
        Ok(at)
    }
}

/// U-proposing deferred acceptance.
///
/// Free U-agents are served from a FIFO queue seeded in listing order; an
/// agent displaced by a better offer rejoins at the back. Each W-agent keeps
/// the best copy offered so far according to its strict list.
pub fn gale_shapley(dup: &DuplicatedInstance<'_>) -> StrictMatching {
    let inst = dup.base();
    let mut next = vec![0usize; inst.agent_count()];
    let mut held: Vec<Option<(EdgeCopy, usize)>> = vec![None; inst.agent_count()];
    let mut queue: VecDeque<AgentIdx> = inst.u_agents().collect();

    while let Some(u) = queue.pop_front() {
        let list = dup.prefs(u);
        while next[u.0] < list.len() {
            let copy = list[next[u.0]];
            next[u.0] += 1;
            let w = inst.edge(copy.edge).w;
            let rank = dup.rank(w, copy).expect("copy listed at both endpoints");
            match held[w.0] {
                Some((_, cur)) if cur < rank => continue,
                Some((prev, _)) => {
                    held[w.0] = Some((copy, rank));
                    queue.push_back(inst.edge(prev.edge).u);
                }
                None => held[w.0] = Some((copy, rank)),
            }
            break;
        }
    }
    StrictMatching::new(held.into_iter().flatten().map(|(c, _)| c))
}

/// Every copy outside `s` that both endpoints rank above what they hold.
pub fn check_strict_stability(dup: &DuplicatedInstance<'_>, s: &StrictMatching) -> Result<Vec<EdgeCopy>> {
    let inst = dup.base();
    let at = s.assignment(dup)?;
    let prefers = |v: AgentIdx, c: EdgeCopy| match at[v.0] {
        None => true,
        Some(cur) => dup.rank(v, c) < dup.rank(v, cur),
    };
    let mut blocking = Vec::new();
    for e in inst.edge_indices() {
        let edge = inst.edge(e);
        for &c in dup.prefs(edge.u) {
            if c.edge == e && at[edge.u.0] != Some(c) && prefers(edge.u, c) && prefers(edge.w, c) {
                blocking.push(c);
            }
        }
    }
    blocking.sort_unstable();
    Ok(blocking)
}

/// Keeps every edge one of whose copies is in `s`.
pub fn project(s: &StrictMatching) -> Matching {
    Matching::new(s.copies().iter().map(|c| c.edge))
}

/// Full pipeline, also returning the stable assignment it projected from.
pub fn solve_with_certificate(inst: &Instance) -> (Matching, StrictMatching) {
    let dup = build_duplicated(inst);
    let strict = gale_shapley(&dup);
    (project(&strict), strict)
}

/// Duplicate, run deferred acceptance, project.
///
/// The result is popular under the instance's own rule (weak or gamma), is
/// maximal, and is at least 2/3 of a maximum matching, 3/4 of a maximum
/// popular matching and 4/5 of a maximum stable matching.
pub fn solve(inst: &Instance) -> Matching {
    solve_with_certificate(inst).0
}
