//! Exhaustive ground truth for small instances.
//!
//! Everything here enumerates all matchings, so cost grows exponentially with
//! the edge count. Instances above an edge limit (default
//! [`DEFAULT_EDGE_LIMIT`]) are refused with [`Error::TooLarge`].

use crate::error::{Error, Result};
use crate::instance::{AgentIdx, EdgeIdx, Instance};
use crate::matching::Matching;
use crate::stability::{blocks, StabilityNotion};
use crate::vote::{vote_on, VoteRule};

pub const DEFAULT_EDGE_LIMIT: usize = 24;

/// Outcome of a popularity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Popular,
    /// A matching the candidate loses to, with the (negative) margin.
    Counterexample { matching: Matching, delta: i64 },
}

impl Certificate {
    pub fn is_popular(&self) -> bool {
        matches!(self, Certificate::Popular)
    }
}

/// Every matching of `inst`, including the empty one, each exactly once.
///
/// Order is an include/exclude recursion over edges in listing order, with
/// the exclude branch first; the empty matching comes first.
pub fn enumerate_matchings(inst: &Instance) -> impl Iterator<Item = Matching> {
    let mut out = Vec::new();
    let mut covered = vec![false; inst.agent_count()];
    let mut chosen = Vec::new();
    walk(inst, 0, &mut covered, &mut chosen, &mut out);
    out.into_iter()
}

fn walk(inst: &Instance, i: usize, covered: &mut [bool], chosen: &mut Vec<EdgeIdx>, out: &mut Vec<Matching>) {
    if i == inst.edge_count() {
        out.push(Matching::new(chosen.iter().copied()));
        return;
    }
    walk(inst, i + 1, covered, chosen, out);
    let e = inst.edge(EdgeIdx(i));
    if !covered[e.u.0] && !covered[e.w.0] {
        covered[e.u.0] = true;
        covered[e.w.0] = true;
        chosen.push(EdgeIdx(i));
        walk(inst, i + 1, covered, chosen, out);
        chosen.pop();
        covered[e.u.0] = false;
        covered[e.w.0] = false;
    }
}

/// Precomputed enumeration of one instance, reusable across queries.
///
/// Each matching is stored as a per-agent slot: 0 when the agent is
/// unmatched, otherwise one plus the position of its edge in the agent's
/// incidence list. Vote rules are compiled to per-agent lookup tables over
/// slot pairs, so a comparison is a sum of table reads.
pub struct Oracle<'a> {
    inst: &'a Instance,
    matchings: Vec<Matching>,
    slots: Vec<u16>,
}

struct VoteTable {
    /// Per agent: `(deg + 1)^2` votes indexed by `m_slot * (deg + 1) + n_slot`.
    per_agent: Vec<(usize, Vec<i8>)>,
}

impl VoteTable {
    fn new(inst: &Instance, rule: VoteRule) -> Self {
        let per_agent = inst
            .agent_indices()
            .map(|v| {
                let options: Vec<Option<EdgeIdx>> =
                    std::iter::once(None).chain(inst.incident(v).iter().map(|&e| Some(e))).collect();
                let width = options.len();
                let mut table = Vec::with_capacity(width * width);
                for &m in &options {
                    for &n in &options {
                        table.push(vote_on(inst, v, m, n, rule).value() as i8);
                    }
                }
                (width, table)
            })
            .collect();
        VoteTable { per_agent }
    }

    fn delta(&self, m: &[u16], n: &[u16]) -> i64 {
        self.per_agent
            .iter()
            .zip(m.iter().zip(n))
            .map(|((width, table), (&a, &b))| table[a as usize * width + b as usize] as i64)
            .sum()
    }
}

impl<'a> Oracle<'a> {
    pub fn new(inst: &'a Instance) -> Result<Self> {
        Oracle::with_limit(inst, DEFAULT_EDGE_LIMIT)
    }

    pub fn with_limit(inst: &'a Instance, limit: usize) -> Result<Self> {
        if inst.edge_count() > limit {
            return Err(Error::TooLarge { edges: inst.edge_count(), limit });
        }
        let matchings: Vec<Matching> = enumerate_matchings(inst).collect();
        let mut slots = Vec::with_capacity(matchings.len() * inst.agent_count());
        for m in &matchings {
            slots.extend(slot_row(inst, m));
        }
        Ok(Oracle { inst, matchings, slots })
    }

    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    fn row(&self, i: usize) -> &[u16] {
        let n = self.inst.agent_count();
        &self.slots[i * n..(i + 1) * n]
    }

    fn certify_row(&self, table: &VoteTable, m: &[u16]) -> Certificate {
        for (j, n) in self.matchings.iter().enumerate() {
            let d = table.delta(m, self.row(j));
            if d < 0 {
                return Certificate::Counterexample { matching: n.clone(), delta: d };
            }
        }
        Certificate::Popular
    }

    /// Compares `m` against every matching. The counterexample, if any, is
    /// the first losing comparison in enumeration order.
    pub fn certify(&self, m: &Matching, rule: VoteRule) -> Result<Certificate> {
        rule.check_mode(self.inst)?;
        m.validate(self.inst)?;
        let table = VoteTable::new(self.inst, rule);
        Ok(self.certify_row(&table, &slot_row(self.inst, m)))
    }

    /// Indices of all matchings in descending size, enumeration order within a size.
    fn by_size_desc(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.matchings.len()).collect();
        idx.sort_by_key(|&i| std::cmp::Reverse(self.matchings[i].len()));
        idx
    }

    /// A largest popular matching, or `None` if no matching is popular
    /// (possible only for the classic and super rules).
    pub fn max_popular(&self, rule: VoteRule) -> Result<Option<(usize, Matching)>> {
        rule.check_mode(self.inst)?;
        let table = VoteTable::new(self.inst, rule);
        Ok(self
            .by_size_desc()
            .into_iter()
            .find(|&i| self.certify_row(&table, self.row(i)).is_popular())
            .map(|i| (self.matchings[i].len(), self.matchings[i].clone())))
    }

    /// All popular matchings, in enumeration order.
    pub fn popular_matchings(&self, rule: VoteRule) -> Result<Vec<Matching>> {
        rule.check_mode(self.inst)?;
        let table = VoteTable::new(self.inst, rule);
        Ok((0..self.matchings.len())
            .filter(|&i| self.certify_row(&table, self.row(i)).is_popular())
            .map(|i| self.matchings[i].clone())
            .collect())
    }

    /// All stable matchings under `notion`, in enumeration order.
    pub fn stable_matchings(&self, notion: StabilityNotion) -> Result<Vec<Matching>> {
        notion.check_mode(self.inst)?;
        Ok(self
            .matchings
            .iter()
            .filter(|m| {
                let at = m.assignment(self.inst);
                self.inst.edge_indices().all(|e| !blocks(self.inst, &at, e, notion))
            })
            .cloned()
            .collect())
    }

    /// A largest stable matching. Weakly and gamma-min stable matchings always
    /// exist; super-stable ones may not.
    pub fn max_stable(&self, notion: StabilityNotion) -> Result<Option<(usize, Matching)>> {
        let stable = self.stable_matchings(notion)?;
        let best = stable.iter().map(Matching::len).max();
        Ok(best.map(|size| {
            let w = stable.into_iter().find(|m| m.len() == size).unwrap();
            (size, w)
        }))
    }

    /// First super-popular matching in enumeration order, if one exists.
    pub fn super_popular_exists(&self) -> Option<Matching> {
        let table = VoteTable::new(self.inst, VoteRule::Super);
        (0..self.matchings.len())
            .find(|&i| self.certify_row(&table, self.row(i)).is_popular())
            .map(|i| self.matchings[i].clone())
    }
}

fn slot_row(inst: &Instance, m: &Matching) -> Vec<u16> {
    let at = m.assignment(inst);
    inst.agent_indices()
        .map(|v| match at[v.0] {
            None => 0,
            Some(e) => 1 + inst.incident(v).iter().position(|&x| x == e).unwrap() as u16,
        })
        .collect()
}

pub fn certify_popular(inst: &Instance, m: &Matching, rule: VoteRule, limit: usize) -> Result<Certificate> {
    Oracle::with_limit(inst, limit)?.certify(m, rule)
}

pub fn max_popular(inst: &Instance, rule: VoteRule, limit: usize) -> Result<Option<(usize, Matching)>> {
    Oracle::with_limit(inst, limit)?.max_popular(rule)
}

pub fn max_stable(inst: &Instance, notion: StabilityNotion, limit: usize) -> Result<Option<(usize, Matching)>> {
    Oracle::with_limit(inst, limit)?.max_stable(notion)
}

pub fn super_popular_exists(inst: &Instance, limit: usize) -> Result<Option<Matching>> {
    Ok(Oracle::with_limit(inst, limit)?.super_popular_exists())
}

/// Size of a maximum-cardinality matching, by augmenting paths from each U-agent.
pub fn max_matching(inst: &Instance) -> usize {
    let mut mate_of_w: Vec<Option<AgentIdx>> = vec![None; inst.agent_count()];
    let mut size = 0;
    for u in inst.u_agents() {
        let mut visited = vec![false; inst.agent_count()];
        if augment(inst, u, &mut visited, &mut mate_of_w) {
            size += 1;
        }
    }
    size
}

fn augment(inst: &Instance, u: AgentIdx, visited: &mut [bool], mate_of_w: &mut [Option<AgentIdx>]) -> bool {
    for &e in inst.incident(u) {
        let w = inst.edge(e).w;
        if std::mem::replace(&mut visited[w.0], true) {
            continue;
        }
        if mate_of_w[w.0].is_none_or(|other| augment(inst, other, visited, mate_of_w)) {
            mate_of_w[w.0] = Some(u);
            return true;
        }
    }
    false
}
