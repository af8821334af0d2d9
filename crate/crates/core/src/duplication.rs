//! Six-copy edge duplication with strict, threshold-interleaved preferences.
//!
//! Every edge `e` becomes copies `a(e) .. z(e)`. A U-agent ranks its copies in
//! four blocks, best first:
//!
//! ```text
//! [a with b interleaved] [c] [x with y interleaved] [z]
//! ```
//!
//! and a W-agent in the mirrored order
//!
//! ```text
//! [z with y interleaved] [x] [c with b interleaved] [a]
//! ```
//!
//! Plain copies (`a`, `c`, `x`, `z`) are sorted by the agent's valuation,
//! best first. An interleaved copy `b(f)` (or `y(f)`) goes ahead of a plain
//! copy of `e` exactly when `p(f) >= p(e) + gamma_f`; in weak mode the test is
//! `p(f) > p(e)`. Remaining ties follow the instance's edge listing order.

use std::cmp::Reverse;
use std::collections::HashMap;
use std::fmt;

use crate::instance::{AgentIdx, EdgeIdx, Instance, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CopyType {
    A,
    B,
    C,
    X,
    Y,
    Z,
}

impl CopyType {
    pub const ALL: [CopyType; 6] = [CopyType::A, CopyType::B, CopyType::C, CopyType::X, CopyType::Y, CopyType::Z];

    pub fn letter(self) -> char {
        match self {
            CopyType::A => 'a',
            CopyType::B => 'b',
            CopyType::C => 'c',
            CopyType::X => 'x',
            CopyType::Y => 'y',
            CopyType::Z => 'z',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        CopyType::ALL.into_iter().find(|t| t.letter() == c)
    }

    /// Copies `a`, `b`, `c` form the lower tier, `x`, `y`, `z` the upper one.
    pub fn is_upper(self) -> bool {
        matches!(self, CopyType::X | CopyType::Y | CopyType::Z)
    }

    /// Position of this copy's block in an agent's list (0 = best).
    fn block(self, side: Side) -> usize {
        use CopyType::*;
        match (side, self) {
            (Side::U, A | B) => 0,
            (Side::U, C) => 1,
            (Side::U, X | Y) => 2,
            (Side::U, Z) => 3,
            (Side::W, Z | Y) => 0,
            (Side::W, X) => 1,
            (Side::W, C | B) => 2,
            (Side::W, A) => 3,
        }
    }

    fn is_interleaved(self) -> bool {
        matches!(self, CopyType::B | CopyType::Y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeCopy {
    pub edge: EdgeIdx,
    pub copy: CopyType,
}

impl EdgeCopy {
    pub fn new(edge: EdgeIdx, copy: CopyType) -> Self {
        EdgeCopy { edge, copy }
    }

    /// Renders as `b(f1)`.
    pub fn display<'a>(&self, inst: &'a Instance) -> CopyDisplay<'a> {
        CopyDisplay { copy: *self, inst }
    }

    /// Parses the `b(f1)` token form.
    pub fn parse(inst: &Instance, token: &str) -> Option<Self> {
        let mut chars = token.chars();
        let copy = CopyType::from_letter(chars.next()?)?;
        let id = chars.as_str().strip_prefix('(')?.strip_suffix(')')?;
        Some(EdgeCopy::new(inst.edge_by_id(id)?, copy))
    }
}

pub struct CopyDisplay<'a> {
    copy: EdgeCopy,
    inst: &'a Instance,
}

impl fmt::Display for CopyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.copy.copy.letter(), self.inst.edge(self.copy.edge).id)
    }
}

/// Strict preferences over edge copies for every agent of `base`.
#[derive(Debug, Clone)]
pub struct DuplicatedInstance<'a> {
    base: &'a Instance,
    prefs: Vec<Vec<EdgeCopy>>,
    rank: Vec<HashMap<EdgeCopy, usize>>,
}

impl<'a> DuplicatedInstance<'a> {
    /// Wraps hand-supplied lists, e.g. for validation. Lists are indexed by agent.
    pub fn from_prefs(base: &'a Instance, prefs: Vec<Vec<EdgeCopy>>) -> Self {
        assert_eq!(prefs.len(), base.agent_count(), "one list per agent");
        let rank = prefs
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, &c)| (c, i)).collect())
            .collect();
        DuplicatedInstance { base, prefs, rank }
    }

    pub fn base(&self) -> &'a Instance {
        self.base
    }

    pub fn prefs(&self, v: AgentIdx) -> &[EdgeCopy] {
        &self.prefs[v.0]
    }

    /// Position of `copy` in `v`'s list (0 = best), if listed.
    pub fn rank(&self, v: AgentIdx, copy: EdgeCopy) -> Option<usize> {
        self.rank[v.0].get(&copy).copied()
    }

    /// `dump-duplicated` format: one line per agent, id then its ordered copies.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.base.agent_indices() {
            out.push_str(&self.base.agent(v).name);
            for c in &self.prefs[v.0] {
                out.push(' ');
                out.push_str(&c.display(self.base).to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Whether the interleaved copy of `f` goes ahead of the plain copy of `e` at `v`.
pub(crate) fn interleaved_precedes(inst: &Instance, v: AgentIdx, f: EdgeIdx, e: EdgeIdx) -> bool {
    let (ef, ee) = (inst.edge(f), inst.edge(e));
    let (pf, pe) = (ef.value_for(v), ee.value_for(v));
    match ef.gamma_for(v) {
        Some(gamma) => pf >= pe + gamma,
        None => pf > pe,
    }
}

/// Plain copies sorted by value (best first, ties in listing order) with the
/// interleaved copies slotted in by the threshold rule.
fn interleave(inst: &Instance, v: AgentIdx, plain: CopyType, extra: CopyType) -> Vec<EdgeCopy> {
    let sorted = sorted_by_value(inst, v);
    // `p(e)` is non-increasing along `sorted`, so the threshold test flips from
    // false to true at most once: the slot is the first plain copy it precedes.
    let mut slots: Vec<Vec<EdgeIdx>> = vec![Vec::new(); sorted.len() + 1];
    for &f in inst.incident(v) {
        let slot = sorted
            .iter()
            .position(|&e| interleaved_precedes(inst, v, f, e))
            .unwrap_or(sorted.len());
        slots[slot].push(f);
    }
    let mut out = Vec::with_capacity(2 * sorted.len());
    for (i, slot) in slots.into_iter().enumerate() {
        out.extend(slot.into_iter().map(|f| EdgeCopy::new(f, extra)));
        if let Some(&e) = sorted.get(i) {
            out.push(EdgeCopy::new(e, plain));
        }
    }
    out
}

fn sorted_by_value(inst: &Instance, v: AgentIdx) -> Vec<EdgeIdx> {
    let mut edges = inst.incident(v).to_vec();
    // stable: equal values keep listing order
    edges.sort_by_key(|&e| Reverse(inst.edge(e).value_for(v)));
    edges
}

fn plain(inst: &Instance, v: AgentIdx, copy: CopyType) -> Vec<EdgeCopy> {
    sorted_by_value(inst, v).into_iter().map(|e| EdgeCopy::new(e, copy)).collect()
}

pub fn build_duplicated(inst: &Instance) -> DuplicatedInstance<'_> {
    use CopyType::*;
    let prefs = inst
        .agent_indices()
        .map(|v| {
            let blocks = match inst.agent(v).side {
                Side::U => [interleave(inst, v, A, B), plain(inst, v, C), interleave(inst, v, X, Y), plain(inst, v, Z)],
                Side::W => [interleave(inst, v, Z, Y), plain(inst, v, X), interleave(inst, v, C, B), plain(inst, v, A)],
            };
            blocks.concat()
        })
        .collect();
    DuplicatedInstance::from_prefs(inst, prefs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub agent: AgentIdx,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "agent #{}: {}", self.agent.0, self.message)
    }
}

/// Checks every list against the block template and threshold rule pairwise.
/// An empty result means the lists are a valid duplication of the base instance.
pub fn validate_duplicated(dup: &DuplicatedInstance<'_>) -> Vec<Violation> {
    let inst = dup.base();
    let mut out = Vec::new();
    for v in inst.agent_indices() {
        let mut report = |message: String| out.push(Violation { agent: v, message });
        let side = inst.agent(v).side;
        let list = dup.prefs(v);
        let names = |c: &EdgeCopy| c.display(inst).to_string();

        let mut seen: HashMap<EdgeCopy, usize> = HashMap::new();
        for (i, c) in list.iter().enumerate() {
            if !inst.incident(v).contains(&c.edge) {
                report(format!("foreign copy {}", names(c)));
            } else if seen.insert(*c, i).is_some() {
                report(format!("duplicate copy {}", names(c)));
            }
        }
        for &e in inst.incident(v) {
            for t in CopyType::ALL {
                if !seen.contains_key(&EdgeCopy::new(e, t)) {
                    report(format!("missing copy {}", names(&EdgeCopy::new(e, t))));
                }
            }
        }

        let listed: Vec<(usize, EdgeCopy)> = {
            let mut l: Vec<_> = seen.iter().map(|(&c, &i)| (i, c)).collect();
            l.sort();
            l
        };
        for (i, &(_, first)) in listed.iter().enumerate() {
            for &(_, second) in &listed[i + 1..] {
                // `first` is ranked above `second`
                let (b1, b2) = (first.copy.block(side), second.copy.block(side));
                if b1 > b2 {
                    report(format!(
                        "{} must precede {} ({} before {})",
                        second.copy.letter(),
                        first.copy.letter(),
                        names(&first),
                        names(&second)
                    ));
                    continue;
                }
                if b1 < b2 {
                    continue;
                }
                let (pf, ps) = (
                    inst.edge(first.edge).value_for(v),
                    inst.edge(second.edge).value_for(v),
                );
                match (first.copy.is_interleaved(), second.copy.is_interleaved()) {
                    (false, false) if pf < ps => report(format!(
                        "{} ranked above {} despite lower value",
                        names(&first),
                        names(&second)
                    )),
                    (true, false) if !interleaved_precedes(inst, v, first.edge, second.edge) => {
                        report(format!("{} above {} without threshold", names(&first), names(&second)))
                    }
                    (false, true) if interleaved_precedes(inst, v, second.edge, first.edge) => {
                        report(format!("{} must precede {} by threshold", names(&second), names(&first)))
                    }
                    _ => {}
                }
            }
        }
    }
    out
}
