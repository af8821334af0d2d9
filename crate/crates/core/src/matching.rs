use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instance::{content, AgentIdx, EdgeIdx, Instance};

/// A set of edges, kept sorted by listing order.
///
/// Constructing a `Matching` does not check the one-edge-per-agent rule; use
/// [`Matching::validate`] or [`is_valid`] against the instance.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: Vec<EdgeIdx>,
}

impl Matching {
    pub fn empty() -> Self {
        Matching::default()
    }

    pub fn new(edges: impl IntoIterator<Item = EdgeIdx>) -> Self {
        let mut edges: Vec<EdgeIdx> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        Matching { edges }
    }

    /// Looks edges up by id.
    pub fn from_ids<S: AsRef<str>>(inst: &Instance, ids: &[S]) -> Result<Self> {
        let edges = ids
            .iter()
            .map(|id| {
                inst.edge_by_id(id.as_ref())
                    .ok_or_else(|| Error::InvalidMatching(format!("unknown edge `{}`", id.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Matching::new(edges);
        m.validate(inst)?;
        Ok(m)
    }

    pub fn edges(&self) -> &[EdgeIdx] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeIdx) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// The edge covering `v`, if any.
    pub fn edge_at(&self, inst: &Instance, v: AgentIdx) -> Option<EdgeIdx> {
        self.edges.iter().copied().find(|&e| {
            let edge = inst.edge(e);
            edge.u == v || edge.w == v
        })
    }

    /// Per-agent view: entry `v` is the edge covering agent `v`.
    pub fn assignment(&self, inst: &Instance) -> Vec<Option<EdgeIdx>> {
        let mut at = vec![None; inst.agent_count()];
        for &e in &self.edges {
            let edge = inst.edge(e);
            at[edge.u.0] = Some(e);
            at[edge.w.0] = Some(e);
        }
        at
    }

    pub fn validate(&self, inst: &Instance) -> Result<()> {
        let mut seen = vec![false; inst.agent_count()];
        for &e in &self.edges {
            if e.0 >= inst.edge_count() {
                return Err(Error::InvalidMatching(format!("edge index {} out of range", e.0)));
            }
            let edge = inst.edge(e);
            for v in [edge.u, edge.w] {
                if std::mem::replace(&mut seen[v.0], true) {
                    return Err(Error::InvalidMatching(format!(
                        "agent `{}` covered twice",
                        inst.agent(v).name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn ids<'a>(&self, inst: &'a Instance) -> Vec<&'a str> {
        self.edges.iter().map(|&e| inst.edge(e).id.as_str()).collect()
    }

    /// Matching file: one edge id per line, then `size <k>`.
    pub fn to_text(&self, inst: &Instance) -> String {
        let mut out = String::new();
        for id in self.ids(inst) {
            writeln!(out, "{id}").unwrap();
        }
        writeln!(out, "size {}", self.len()).unwrap();
        out
    }
}

pub fn is_valid(inst: &Instance, m: &Matching) -> bool {
    m.validate(inst).is_ok()
}

/// True when no edge has both endpoints uncovered.
pub fn is_maximal(inst: &Instance, m: &Matching) -> bool {
    let at = m.assignment(inst);
    inst.edges()
        .iter()
        .all(|e| at[e.u.0].is_some() || at[e.w.0].is_some())
}

/// Parses a matching file. `size` lines and `#` comments are ignored; a
/// `certificate` line ends the matching section.
pub fn parse_matching(inst: &Instance, text: &str) -> Result<Matching> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = content(raw);
        if body.is_empty() || body.starts_with("size") && body.split_whitespace().count() == 2 {
            continue;
        }
        if body == "certificate" {
            break;
        }
        let e = inst.edge_by_id(body).ok_or_else(|| Error::Parse {
            line: i + 1,
            msg: format!("unknown edge `{body}`"),
        })?;
        edges.push(e);
    }
    let m = Matching::new(edges);
    m.validate(inst)?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;

    fn path() -> Instance {
        parse_instance("mode weak\nu a b\nw x y\nedge e1 a x 1 1\nedge e2 b x 1 1\nedge e3 b y 1 1\n")
            .unwrap()
    }

    #[test]
    fn perfect_matching_is_maximal() {
        let inst = path();
        let m = Matching::from_ids(&inst, &["e1", "e3"]).unwrap();
        assert!(is_maximal(&inst, &m));
        assert!(!is_maximal(&inst, &Matching::from_ids(&inst, &["e1"]).unwrap()));
        assert!(is_maximal(&inst, &Matching::from_ids(&inst, &["e2"]).unwrap()));
    }

    #[test]
    fn double_cover_is_invalid() {
        let inst = path();
        let m = Matching::new([EdgeIdx(0), EdgeIdx(1)]);
        assert!(!is_valid(&inst, &m));
        assert!(Matching::from_ids(&inst, &["e2", "e3"]).is_err());
    }

    #[test]
    fn matching_file_round_trip() {
        let inst = path();
        let m = Matching::from_ids(&inst, &["e3", "e1"]).unwrap();
        let text = m.to_text(&inst);
        assert_eq!(text, "e1\ne3\nsize 2\n");
        assert_eq!(parse_matching(&inst, &text).unwrap(), m);
        let with_cert = format!("{text}certificate\na(e1)\n");
        assert_eq!(parse_matching(&inst, &with_cert).unwrap(), m);
        assert!(parse_matching(&inst, "e9\n").is_err());
    }
}
