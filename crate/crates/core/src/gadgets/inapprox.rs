use std::collections::HashSet;

use super::{fresh_agent, fresh_edge, precondition};
use crate::error::Result;
use crate::instance::{Instance, InstanceBuilder, Mode};
use crate::value::Value;

/// Gadget relating maximal matchings of a balanced bipartite graph to weakly
/// popular matchings.
///
/// `graph` supplies only its vertices and edges (valuations are ignored);
/// it must have `n` vertices per side with `n` even and no parallel edges.
/// The output adds `w_i'` for every `w_i`, and `u_j'`, `z_j`, `z_j'` for
/// `j = 1..n/2`, with preferences (brackets are single ties):
///
/// ```text
/// u_i : [N_G(u_i)] > [u_1' .. u_{n/2}']     w_i : [N_G(w_i)] > w_i'
/// w_i': w_i                                 u_j': z_j > [u_1 .. u_n]
/// z_j : u_j' > z_j'                         z_j': z_j
/// ```
///
/// A maximal matching of size `k >= n/2` in the graph yields a weakly
/// popular matching of size at least `5n/2 - k`, and a weakly popular
/// matching of that size forces a maximal matching of size at most `k`.
pub fn gadget_inapprox(graph: &Instance) -> Result<Instance> {
    let n = graph.u_count();
    if graph.w_count() != n {
        return Err(precondition(format!("graph needs |U| = |W|, found {n} and {}", graph.w_count())));
    }
    if n % 2 != 0 {
        return Err(precondition(format!("graph needs an even side size, found {n}")));
    }
    let mut pairs = HashSet::new();
    for e in graph.edges() {
        if !pairs.insert((e.u, e.w)) {
            return Err(precondition(format!("parallel edge `{}`; the graph must be simple", e.id)));
        }
    }
    let half = n / 2;
    let (one, two) = (Value::from_int(1), Value::from_int(2));

    let mut b = InstanceBuilder::new(Mode::Weak);
    for a in graph.agents() {
        b.add_agent(a.side, &a.name)?;
    }
    let mut w_prime = Vec::with_capacity(n);
    for w in graph.w_agents() {
        let name = fresh_agent(&b, format!("{}'", graph.agent(w).name));
        b.add_u(&name)?;
        w_prime.push(name);
    }
    let mut u_prime = Vec::with_capacity(half);
    let mut z = Vec::with_capacity(half);
    let mut z_prime = Vec::with_capacity(half);
    for j in 1..=half {
        let up = fresh_agent(&b, format!("up{j}"));
        b.add_w(&up)?;
        u_prime.push(up);
        let zj = fresh_agent(&b, format!("z{j}"));
        b.add_u(&zj)?;
        z.push(zj);
        let zpj = fresh_agent(&b, format!("zp{j}"));
        b.add_w(&zpj)?;
        z_prime.push(zpj);
    }

    for e in graph.edges() {
        b.add_edge(&e.id, &graph.agent(e.u).name, &graph.agent(e.w).name, two, two)?;
    }
    for (i, w) in graph.w_agents().enumerate() {
        let id = fresh_edge(&b, format!("ww{}", i + 1));
        b.add_edge(&id, &w_prime[i], &graph.agent(w).name, one, one)?;
    }
    for j in 0..half {
        let id = fresh_edge(&b, format!("zu{}", j + 1));
        b.add_edge(&id, &z[j], &u_prime[j], two, two)?;
        let id = fresh_edge(&b, format!("zz{}", j + 1));
        b.add_edge(&id, &z[j], &z_prime[j], one, one)?;
    }
    for (i, u) in graph.u_agents().enumerate() {
        for (j, up) in u_prime.iter().enumerate() {
            let id = fresh_edge(&b, format!("uu{}_{}", i + 1, j + 1));
            b.add_edge(&id, &graph.agent(u).name, up, one, one)?;
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;

    #[test]
    fn counts_for_perfect_matching_on_two() {
        let g = parse_instance("mode weak\nu u1 u2\nw w1 w2\nedge g1 u1 w1 1 1\nedge g2 u2 w2 1 1\n").unwrap();
        let out = gadget_inapprox(&g).unwrap();
        // u, w, w' (n each) plus u', z, z' (n/2 each)
        assert_eq!(out.agent_count(), 9);
        // 2 graph edges + n (w-w') + n/2 (z-u') + n/2 (z-z') + n * n/2 (u-u')
        assert_eq!(out.edge_count(), 8);
        assert_eq!(parse_instance(&out.to_text()).unwrap(), out);
    }

    #[test]
    fn preferences_follow_template() {
        let g = parse_instance("mode weak\nu u1 u2\nw w1 w2\nedge g1 u1 w1 1 1\n").unwrap();
        let out = gadget_inapprox(&g).unwrap();
        let val = |agent: &str, edge: &str| {
            let v = out.agent_by_name(agent).unwrap();
            out.edge(out.edge_by_id(edge).unwrap()).value_for(v)
        };
        assert!(val("u1", "g1") > val("u1", "uu1_1"));
        assert!(val("w1", "g1") > val("w1", "ww1"));
        assert!(val("up1", "zu1") > val("up1", "uu1_1"));
        assert_eq!(val("up1", "uu1_1"), val("up1", "uu2_1"));
        assert!(val("z1", "zu1") > val("z1", "zz1"));
    }

    #[test]
    fn rejects_odd_and_unbalanced() {
        let odd = parse_instance("mode weak\nu u1\nw w1\nedge g u1 w1 1 1\n").unwrap();
        assert!(gadget_inapprox(&odd).is_err());
        let lop = parse_instance("mode weak\nu u1 u2\nw w1\n").unwrap();
        assert!(gadget_inapprox(&lop).is_err());
        let par = parse_instance("mode weak\nu u1 u2\nw w1 w2\nedge a u1 w1 1 1\nedge b u1 w1 1 1\n").unwrap();
        assert!(gadget_inapprox(&par).is_err());
    }
}
