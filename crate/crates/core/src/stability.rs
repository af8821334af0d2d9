//! Edge-scan stability predicates.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::{AgentIdx, EdgeIdx, Instance, Mode};
use crate::matching::Matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilityNotion {
    /// Both endpoints strictly improve.
    WeakStable,
    /// Each endpoint improves by at least its threshold for the edge.
    GammaMin,
    /// Both endpoints weakly improve.
    Super,
}

impl StabilityNotion {
    pub const ALL: [StabilityNotion; 3] =
        [StabilityNotion::WeakStable, StabilityNotion::GammaMin, StabilityNotion::Super];

    pub fn name(self) -> &'static str {
        match self {
            StabilityNotion::WeakStable => "weak",
            StabilityNotion::GammaMin => "gamma",
            StabilityNotion::Super => "super",
        }
    }

    /// Weak stability in weak mode, gamma-min stability in gamma mode.
    pub fn for_mode(mode: Mode) -> Self {
        match mode {
            Mode::Weak => StabilityNotion::WeakStable,
            Mode::Gamma => StabilityNotion::GammaMin,
        }
    }

    pub fn check_mode(self, inst: &Instance) -> Result<()> {
        if self == StabilityNotion::GammaMin && inst.mode() != Mode::Gamma {
            Err(Error::RuleModeMismatch("gamma"))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for StabilityNotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StabilityNotion {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "weak" | "weak-stable" => Ok(StabilityNotion::WeakStable),
            "gamma" | "gamma-min" => Ok(StabilityNotion::GammaMin),
            "super" => Ok(StabilityNotion::Super),
            _ => Err(format!("unknown stability notion `{s}` (expected weak, gamma or super)")),
        }
    }
}

/// Whether endpoint `v` would accept edge `e` over its current edge `cur`.
fn improves(inst: &Instance, v: AgentIdx, e: EdgeIdx, cur: Option<EdgeIdx>, notion: StabilityNotion) -> bool {
    let Some(cur) = cur else { return true };
    let edge = inst.edge(e);
    let (pe, pc) = (edge.value_for(v), inst.edge(cur).value_for(v));
    match notion {
        StabilityNotion::WeakStable => pe > pc,
        StabilityNotion::Super => pe >= pc,
        StabilityNotion::GammaMin => pe >= pc + edge.gamma_for(v).expect("gamma mode checked"),
    }
}

/// Whether `e` blocks a matching whose per-agent view is `at`.
pub(crate) fn blocks(inst: &Instance, at: &[Option<EdgeIdx>], e: EdgeIdx, notion: StabilityNotion) -> bool {
    let edge = inst.edge(e);
    at[edge.u.0] != Some(e)
        && improves(inst, edge.u, e, at[edge.u.0], notion)
        && improves(inst, edge.w, e, at[edge.w.0], notion)
}

/// Every edge outside `m` that blocks it under `notion`, in listing order.
pub fn blocking_edges(inst: &Instance, m: &Matching, notion: StabilityNotion) -> Result<Vec<EdgeIdx>> {
    notion.check_mode(inst)?;
    m.validate(inst)?;
    let at = m.assignment(inst);
    Ok(inst.edge_indices().filter(|&e| blocks(inst, &at, e, notion)).collect())
}

pub fn is_stable(inst: &Instance, m: &Matching, notion: StabilityNotion) -> Result<bool> {
    Ok(blocking_edges(inst, m, notion)?.is_empty())
}
