//! Bipartite market instances and their text format.
//!
//! ```text
//! mode weak                 # or: mode gamma
//! u u1 u2
//! w w1 w2
//! edge e1 u1 w1 2 1         # id, U-agent, W-agent, p_u, p_w
//! edge e2 u1 w2 1 1/2       # gamma mode appends gamma_u gamma_w
//! ```

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Weak,
    Gamma,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Weak => "weak",
            Mode::Gamma => "gamma",
        }
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "weak" => Ok(Mode::Weak),
            "gamma" => Ok(Mode::Gamma),
            other => Err(format!("unknown mode `{other}` (expected weak or gamma)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    U,
    W,
}

/// Index of an agent within its instance. U-agents come first, in listing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentIdx(pub usize);

/// Index of an edge in the instance's listing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeIdx(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agent {
    pub name: String,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub u: AgentIdx,
    pub w: AgentIdx,
    pub p_u: Value,
    pub p_w: Value,
    /// `(gamma_u, gamma_w)`; present exactly in gamma mode.
    pub gamma: Option<(Value, Value)>,
}

impl Edge {
    /// Valuation of this edge by endpoint `v`.
    pub fn value_for(&self, v: AgentIdx) -> Value {
        if v == self.u {
            self.p_u
        } else {
            debug_assert_eq!(v, self.w);
            self.p_w
        }
    }

    /// Threshold `gamma_e^v`, or `None` in weak mode.
    pub fn gamma_for(&self, v: AgentIdx) -> Option<Value> {
        self.gamma.map(|(gu, gw)| if v == self.u { gu } else { gw })
    }

    pub fn other(&self, v: AgentIdx) -> AgentIdx {
        if v == self.u {
            self.w
        } else {
            self.u
        }
    }
}

/// A validated instance. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    mode: Mode,
    agents: Vec<Agent>,
    n_u: usize,
    edges: Vec<Edge>,
    incident: Vec<Vec<EdgeIdx>>,
    agent_by_name: HashMap<String, AgentIdx>,
    edge_by_id: HashMap<String, EdgeIdx>,
}

impl Instance {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn agent(&self, v: AgentIdx) -> &Agent {
        &self.agents[v.0]
    }

    pub fn agent_count(&self) -> usize {
        self.agents.len()
    }

    pub fn agent_indices(&self) -> impl Iterator<Item = AgentIdx> {
        (0..self.agents.len()).map(AgentIdx)
    }

    pub fn u_agents(&self) -> impl Iterator<Item = AgentIdx> {
        (0..self.n_u).map(AgentIdx)
    }

    pub fn w_agents(&self) -> impl Iterator<Item = AgentIdx> {
        (self.n_u..self.agents.len()).map(AgentIdx)
    }

    pub fn u_count(&self) -> usize {
        self.n_u
    }

    pub fn w_count(&self) -> usize {
        self.agents.len() - self.n_u
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIdx) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_indices(&self) -> impl Iterator<Item = EdgeIdx> {
        (0..self.edges.len()).map(EdgeIdx)
    }

    /// Edges at `v`, in listing order.
    pub fn incident(&self, v: AgentIdx) -> &[EdgeIdx] {
        &self.incident[v.0]
    }

    pub fn agent_by_name(&self, name: &str) -> Option<AgentIdx> {
        self.agent_by_name.get(name).copied()
    }

    pub fn edge_by_id(&self, id: &str) -> Option<EdgeIdx> {
        self.edge_by_id.get(id).copied()
    }

    /// Serialize in the instance file format. Output parses back to an equal instance.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "mode {}", self.mode.name()).unwrap();
        for (side, tag) in [(Side::U, "u"), (Side::W, "w")] {
            let names: Vec<&str> = self
                .agents
                .iter()
                .filter(|a| a.side == side)
                .map(|a| a.name.as_str())
                .collect();
            if !names.is_empty() {
                writeln!(out, "{tag} {}", names.join(" ")).unwrap();
            }
        }
        for e in &self.edges {
            write!(
                out,
                "edge {} {} {} {} {}",
                e.id, self.agents[e.u.0].name, self.agents[e.w.0].name, e.p_u, e.p_w
            )
            .unwrap();
            if let Some((gu, gw)) = e.gamma {
                write!(out, " {gu} {gw}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Instance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_instance(s)
    }
}

/// Incremental constructor enforcing every instance invariant.
///
/// All agents must be declared before the edges that reference them. Agent
/// declarations may interleave between the sides; the finished instance
/// always orders U-agents first.
/// id, u, w, p_u, p_w, thresholds
type PendingEdge = (String, String, String, Value, Value, Option<(Value, Value)>);

#[derive(Debug, Clone)]
pub struct InstanceBuilder {
    mode: Mode,
    u_names: Vec<String>,
    w_names: Vec<String>,
    names: HashMap<String, Side>,
    edges: Vec<PendingEdge>,
    edge_ids: HashMap<String, usize>,
}

impl InstanceBuilder {
    pub fn new(mode: Mode) -> Self {
        InstanceBuilder {
            mode,
            u_names: Vec::new(),
            w_names: Vec::new(),
            names: HashMap::new(),
            edges: Vec::new(),
            edge_ids: HashMap::new(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn has_agent(&self, name: &str) -> bool {
        self.names.contains_key(name)
    }

    pub fn has_edge(&self, id: &str) -> bool {
        self.edge_ids.contains_key(id)
    }

    pub fn add_agent(&mut self, side: Side, name: &str) -> Result<()> {
        if name.is_empty() || name.chars().any(char::is_whitespace) || name.starts_with('#') {
            return Err(Error::InvalidInstance(format!("bad agent id `{name}`")));
        }
        if self.names.insert(name.to_string(), side).is_some() {
            return Err(Error::InvalidInstance(format!("duplicate agent id `{name}`")));
        }
        match side {
            Side::U => self.u_names.push(name.to_string()),
            Side::W => self.w_names.push(name.to_string()),
        }
        Ok(())
    }

    pub fn add_u(&mut self, name: &str) -> Result<()> {
        self.add_agent(Side::U, name)
    }

    pub fn add_w(&mut self, name: &str) -> Result<()> {
        self.add_agent(Side::W, name)
    }

    /// Adds a weak-mode edge (no thresholds).
    pub fn add_edge(&mut self, id: &str, u: &str, w: &str, p_u: Value, p_w: Value) -> Result<()> {
        self.push_edge(id, u, w, p_u, p_w, None)
    }

    pub fn add_gamma_edge(
        &mut self,
        id: &str,
        u: &str,
        w: &str,
        p: (Value, Value),
        gamma: (Value, Value),
    ) -> Result<()> {
        self.push_edge(id, u, w, p.0, p.1, Some(gamma))
    }

    pub fn push_edge(
        &mut self,
        id: &str,
        u: &str,
        w: &str,
        p_u: Value,
        p_w: Value,
        gamma: Option<(Value, Value)>,
    ) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInstance(msg));
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return bad(format!("bad edge id `{id}`"));
        }
        if self.edge_ids.contains_key(id) {
            return bad(format!("duplicate edge id `{id}`"));
        }
        match self.names.get(u) {
            Some(Side::U) => {}
            Some(Side::W) => return bad(format!("edge `{id}`: `{u}` is a W-agent, expected U")),
            None => return bad(format!("edge `{id}`: unknown agent `{u}`")),
        }
        match self.names.get(w) {
            Some(Side::W) => {}
            Some(Side::U) => return bad(format!("edge `{id}`: `{w}` is a U-agent, expected W")),
            None => return bad(format!("edge `{id}`: unknown agent `{w}`")),
        }
        if p_u.is_negative() || p_w.is_negative() {
            return bad(format!("edge `{id}`: negative valuation"));
        }
        match (self.mode, gamma) {
            (Mode::Weak, Some(_)) => return bad(format!("edge `{id}`: gamma values in weak mode")),
            (Mode::Gamma, None) => return bad(format!("edge `{id}`: gamma mode needs gamma_u gamma_w")),
            (Mode::Gamma, Some((gu, gw))) if !gu.is_positive() || !gw.is_positive() => {
                return bad(format!("edge `{id}`: gamma must be positive"))
            }
            _ => {}
        }
        self.edge_ids.insert(id.to_string(), self.edges.len());
        self.edges
            .push((id.to_string(), u.to_string(), w.to_string(), p_u, p_w, gamma));
        Ok(())
    }

    pub fn build(self) -> Instance {
        let mut agents = Vec::with_capacity(self.u_names.len() + self.w_names.len());
        let mut agent_by_name = HashMap::new();
        for (side, names) in [(Side::U, self.u_names), (Side::W, self.w_names)] {
            for name in names {
                agent_by_name.insert(name.clone(), AgentIdx(agents.len()));
                agents.push(Agent { name, side });
            }
        }
        let n_u = agents.iter().filter(|a| a.side == Side::U).count();
        let mut incident = vec![Vec::new(); agents.len()];
        let mut edge_by_id = HashMap::new();
        let edges = self
            .edges
            .into_iter()
            .enumerate()
            .map(|(i, (id, u, w, p_u, p_w, gamma))| {
                let u = agent_by_name[&u];
                let w = agent_by_name[&w];
                incident[u.0].push(EdgeIdx(i));
                incident[w.0].push(EdgeIdx(i));
                edge_by_id.insert(id.clone(), EdgeIdx(i));
                Edge { id, u, w, p_u, p_w, gamma }
            })
            .collect();
        Instance {
            mode: self.mode,
            agents,
            n_u,
            edges,
            incident,
            agent_by_name,
            edge_by_id,
        }
    }
}

/// Strips a trailing `#` comment and surrounding whitespace.
pub(crate) fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Parses the instance file format, reporting the first problem with its line number.
pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_instance_with(text, |_, _| Ok(false))
}

/// Like [`parse_instance`], but offers each non-mode directive to `extra` first;
/// returning `Ok(true)` marks the line as consumed. Used by formats layered on
/// top of the instance file.
pub(crate) fn parse_instance_with<F>(text: &str, mut extra: F) -> Result<Instance>
where
    F: FnMut(usize, &[&str]) -> std::result::Result<bool, String>,
{
    let mut builder: Option<InstanceBuilder> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| Error::Parse { line, msg };
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let Some(b) = builder.as_mut() else {
            match tokens.as_slice() {
                ["mode", m] => {
                    builder = Some(InstanceBuilder::new(m.parse().map_err(err)?));
                    continue;
                }
                _ => return Err(err("expected `mode weak` or `mode gamma` first".into())),
            }
        };
        if extra(line, &tokens).map_err(err)? {
            continue;
        }
        let to_parse = |e: Error| match e {
            Error::InvalidInstance(msg) => Error::Parse { line, msg },
            other => other,
        };
        match tokens[0] {
            "mode" => return Err(err("duplicate mode line".into())),
            "u" | "w" => {
                if tokens.len() < 2 {
                    return Err(err(format!("`{}` needs at least one agent id", tokens[0])));
                }
                let side = if tokens[0] == "u" { Side::U } else { Side::W };
                for name in &tokens[1..] {
                    b.add_agent(side, name).map_err(to_parse)?;
                }
            }
            "edge" => {
                let want = match b.mode() {
                    Mode::Weak => 6,
                    Mode::Gamma => 8,
                };
                if tokens.len() != want {
                    return Err(err(format!(
                        "{} mode edge needs {} fields, found {}",
                        b.mode().name(),
                        want - 1,
                        tokens.len() - 1
                    )));
                }
                let num = |s: &str| s.parse::<Value>().map_err(|e| err(e.0));
                let (p_u, p_w) = (num(tokens[4])?, num(tokens[5])?);
                let gamma = if want == 8 {
                    Some((num(tokens[6])?, num(tokens[7])?))
                } else {
                    None
                };
                b.push_edge(tokens[1], tokens[2], tokens[3], p_u, p_w, gamma)
                    .map_err(to_parse)?;
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    builder
        .map(InstanceBuilder::build)
        .ok_or(Error::Parse { line: text.lines().count().max(1), msg: "missing mode line".into() })
}
