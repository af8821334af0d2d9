use std::collections::BTreeMap;

use super::{fresh_agent, fresh_edge, precondition};
use crate::error::{Error, Result};
use crate::instance::{parse_instance_with, AgentIdx, EdgeIdx, Instance, InstanceBuilder, Mode, Side};
use crate::matching::Matching;
use crate::oracle::Oracle;
use crate::value::Value;
use crate::vote::VoteRule;

/// A strict instance together with a forbidden edge `(x, y)` and a forced
/// agent `t`. The asked question: is there a popular matching avoiding
/// `(x, y)` and covering `t`?
///
/// Required shape: `x` is a leaf, `y` has exactly one other neighbour `z`,
/// and `y`, `z` rank their common edge first.
#[derive(Debug, Clone)]
pub struct PmRestrictedInstance {
    base: Instance,
    forbidden: EdgeIdx,
    forced: AgentIdx,
    x: AgentIdx,
    y: AgentIdx,
    yz: EdgeIdx,
}

impl PmRestrictedInstance {
    pub fn new(base: Instance, forbidden: EdgeIdx, forced: AgentIdx) -> Result<Self> {
        if base.mode() != Mode::Weak {
            return Err(precondition("base instance must be weak mode"));
        }
        if forbidden.0 >= base.edge_count() || forced.0 >= base.agent_count() {
            return Err(precondition("forbidden edge or forced agent out of range"));
        }
        for v in base.agent_indices() {
            let mut vals: Vec<Value> = base.incident(v).iter().map(|&e| base.edge(e).value_for(v)).collect();
            vals.sort();
            if vals.windows(2).any(|w| w[0] == w[1]) {
                return Err(precondition(format!("agent `{}` has a tie", base.agent(v).name)));
            }
        }
        let fe = base.edge(forbidden);
        let (x, y) = match (base.incident(fe.u).len(), base.incident(fe.w).len()) {
            (1, 2) => (fe.u, fe.w),
            (2, 1) => (fe.w, fe.u),
            _ => {
                return Err(precondition(
                    "forbidden edge needs a leaf endpoint x and an endpoint y of degree two",
                ))
            }
        };
        let yz = *base.incident(y).iter().find(|&&e| e != forbidden).unwrap();
        let z = base.edge(yz).other(y);
        let top = |v: AgentIdx| {
            base.incident(v)
                .iter()
                .copied()
                .max_by_key(|&e| base.edge(e).value_for(v))
        };
        if top(y) != Some(yz) || top(z) != Some(yz) {
            return Err(precondition("y and its other neighbour must rank each other first"));
        }
        if forced == x || forced == y {
            return Err(precondition("forced agent must differ from x and y"));
        }
        Ok(PmRestrictedInstance { base, forbidden, forced, x, y, yz })
    }

    pub fn base(&self) -> &Instance {
        &self.base
    }

    pub fn forbidden(&self) -> EdgeIdx {
        self.forbidden
    }

    pub fn forced(&self) -> AgentIdx {
        self.forced
    }

    pub fn x(&self) -> AgentIdx {
        self.x
    }

    pub fn y(&self) -> AgentIdx {
        self.y
    }

    pub fn z(&self) -> AgentIdx {
        self.base.edge(self.yz).other(self.y)
    }

    /// Brute force: a popular matching of the base avoiding the forbidden
    /// edge and covering the forced agent, if any.
    pub fn qualifying_popular(&self, limit: usize) -> Result<Option<Matching>> {
        let oracle = Oracle::with_limit(&self.base, limit)?;
        Ok(oracle
            .popular_matchings(VoteRule::Classic)?
            .into_iter()
            .find(|m| !m.contains(self.forbidden) && m.edge_at(&self.base, self.forced).is_some()))
    }

    /// Instance file plus `forbid <edge-id>` and `force <agent-id>` lines.
    pub fn to_text(&self) -> String {
        format!(
            "{}forbid {}\nforce {}\n",
            self.base.to_text(),
            self.base.edge(self.forbidden).id,
            self.base.agent(self.forced).name
        )
    }
}

/// Reads the [`PmRestrictedInstance::to_text`] format.
pub fn parse_pm_restricted(text: &str) -> Result<PmRestrictedInstance> {
    let mut forbid: Option<String> = None;
    let mut force: Option<String> = None;
    let base = parse_instance_with(text, |_, tokens| {
        let slot = match tokens.first() {
            Some(&"forbid") => &mut forbid,
            Some(&"force") => &mut force,
            _ => return Ok(false),
        };
        match tokens {
            [_, id] if slot.is_none() => {
                *slot = Some(id.to_string());
                Ok(true)
            }
            [kw, _] => Err(format!("duplicate `{kw}` line")),
            _ => Err(format!("`{}` takes exactly one id", tokens[0])),
        }
    })?;
    let missing = |what: &str| Error::Parse { line: text.lines().count().max(1), msg: format!("missing `{what}` line") };
    let forbid = forbid.ok_or_else(|| missing("forbid"))?;
    let force = force.ok_or_else(|| missing("force"))?;
    let e = base
        .edge_by_id(&forbid)
        .ok_or_else(|| precondition(format!("unknown forbidden edge `{forbid}`")))?;
    let t = base
        .agent_by_name(&force)
        .ok_or_else(|| precondition(format!("unknown forced agent `{force}`")))?;
    PmRestrictedInstance::new(base, e, t)
}

/// Adds `d_x`, `x'`, `d_t`, `t'` with edges `(x, d_x)`, `(x', d_x)`,
/// `(t, d_t)`, `(t', d_t)`:
///
/// * `d_x` ranks `x` above `x'`; `x` becomes indifferent between `d_x` and `y`;
/// * `d_t` is indifferent between `t` and `t'`; `t` ranks `d_t` last.
///
/// The base has a popular matching avoiding `(x, y)` and covering `t`
/// exactly when the output has a super-popular matching.
pub fn gadget_superpm(p: &PmRestrictedInstance) -> Result<Instance> {
    let base = &p.base;
    let (x, t) = (p.x, p.forced);
    let (xn, tn) = (&base.agent(x).name, &base.agent(t).name);

    let mut b = InstanceBuilder::new(Mode::Weak);
    for a in base.agents() {
        b.add_agent(a.side, &a.name)?;
    }
    let mut pendant = |v: AgentIdx, name: &str| -> Result<(String, String)> {
        let d = fresh_agent(&b, format!("d_{name}"));
        let twin = fresh_agent(&b, format!("{name}'"));
        match base.agent(v).side {
            Side::U => {
                b.add_w(&d)?;
                b.add_u(&twin)?;
            }
            Side::W => {
                b.add_u(&d)?;
                b.add_w(&twin)?;
            }
        }
        Ok((d, twin))
    };
    let (dx, xp) = pendant(x, xn)?;
    let (dt, tp) = pendant(t, tn)?;

    // t's own edges re-ranked to 2.. so that d_t fits strictly below them
    let t_rank: BTreeMap<EdgeIdx, Value> = {
        let mut mine = base.incident(t).to_vec();
        mine.sort_by_key(|&e| base.edge(e).value_for(t));
        mine.into_iter().enumerate().map(|(i, e)| (e, Value::from_int(i as i64 + 2))).collect()
    };
    for (i, e) in base.edges().iter().enumerate() {
        let (mut pu, mut pw) = (e.p_u, e.p_w);
        if let Some(&r) = t_rank.get(&EdgeIdx(i)) {
            if e.u == t {
                pu = r;
            } else {
                pw = r;
            }
        }
        b.add_edge(&e.id, &base.agent(e.u).name, &base.agent(e.w).name, pu, pw)?;
    }

    let x_val = base.edge(p.forbidden).value_for(x);
    let (one, two) = (Value::from_int(1), Value::from_int(2));
    let x_is_u = base.agent(x).side == Side::U;
    let t_is_u = base.agent(t).side == Side::U;
    // (agent, its side is U, pendant, agent's value, pendant's value, edge id)
    let extra = [
        (xn.as_str(), x_is_u, dx.as_str(), x_val, two, "x_d"),
        (xp.as_str(), x_is_u, dx.as_str(), one, one, "x'_d"),
        (tn.as_str(), t_is_u, dt.as_str(), one, one, "t_d"),
        (tp.as_str(), t_is_u, dt.as_str(), one, one, "t'_d"),
    ];
    for (agent, agent_is_u, pend, p_agent, p_pend, tag) in extra {
        let id = fresh_edge(&b, tag.to_string());
        if agent_is_u {
            b.add_edge(&id, agent, pend, p_agent, p_pend)?;
        } else {
            b.add_edge(&id, pend, agent, p_pend, p_agent)?;
        }
    }
    Ok(b.build())
}

/// Agents whose lists contain ties, with the sizes of their tie classes.
pub fn tie_profile(inst: &Instance) -> Vec<(AgentIdx, Vec<usize>)> {
    inst.agent_indices()
        .filter_map(|v| {
            let mut classes: BTreeMap<Value, usize> = BTreeMap::new();
            for &e in inst.incident(v) {
                *classes.entry(inst.edge(e).value_for(v)).or_default() += 1;
            }
            let ties: Vec<usize> = classes.into_values().filter(|&c| c > 1).collect();
            (!ties.is_empty()).then_some((v, ties))
        })
        .collect()
}
