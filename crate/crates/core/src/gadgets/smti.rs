use super::{fresh_agent, fresh_edge, precondition};
use crate::error::Result;
use crate::instance::{Instance, InstanceBuilder, Mode};
use crate::value::Value;

/// True when every U-agent values its edges pairwise differently, i.e. all
/// ties sit on the W side.
pub fn is_one_sided(inst: &Instance) -> bool {
    inst.u_agents().all(|u| {
        let mut vals: Vec<Value> = inst.incident(u).iter().map(|&e| inst.edge(e).p_u).collect();
        vals.sort();
        vals.windows(2).all(|w| w[0] != w[1])
    })
}

/// Size-shifting gadget for stable marriage with one-sided ties.
///
/// For the `i`-th U-agent `u_i` two agents are added: `z_i` on the W side,
/// ranking `u_i` above `z_i'`, and `z_i'` on the U side, accepting only
/// `z_i`. Each `u_i` gets `z_i` as its unique first choice. The input has a
/// weakly stable matching of size `n - l` exactly when the output has a
/// weakly popular matching of size `2n - l`.
pub fn gadget_smti(smti: &Instance) -> Result<Instance> {
    if smti.mode() != Mode::Weak {
        return Err(precondition("SMTI input must be a weak-mode instance"));
    }
    if smti.u_count() != smti.w_count() {
        return Err(precondition(format!(
            "SMTI input needs |U| = |W|, found {} and {}",
            smti.u_count(),
            smti.w_count()
        )));
    }
    if !is_one_sided(smti) {
        return Err(precondition("SMTI input must have ties on the W side only"));
    }

    let mut b = InstanceBuilder::new(Mode::Weak);
    for a in smti.agents() {
        b.add_agent(a.side, &a.name)?;
    }
    let mut added = Vec::new();
    for (i, u) in smti.u_agents().enumerate() {
        let z = fresh_agent(&b, format!("z{}", i + 1));
        b.add_w(&z)?;
        let zp = fresh_agent(&b, format!("{z}'"));
        b.add_u(&zp)?;
        added.push((u, z, zp));
    }
    for e in smti.edges() {
        b.push_edge(&e.id, &smti.agent(e.u).name, &smti.agent(e.w).name, e.p_u, e.p_w, None)?;
    }
    for (i, (u, z, zp)) in added.iter().enumerate() {
        let top = smti
            .incident(*u)
            .iter()
            .map(|&e| smti.edge(e).p_u)
            .max()
            .unwrap_or(Value::ZERO)
            + Value::from_int(1);
        let name = &smti.agent(*u).name;
        let e1 = fresh_edge(&b, format!("zu{}", i + 1));
        b.add_edge(&e1, name, z, top, Value::from_int(2))?;
        let e2 = fresh_edge(&b, format!("zz{}", i + 1));
        b.add_edge(&e2, zp, z, Value::from_int(1), Value::from_int(1))?;
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;

    #[test]
    fn single_edge_gadget() {
        let inst = parse_instance("mode weak\nu u1\nw w1\nedge e u1 w1 1 1\n").unwrap();
        let g = gadget_smti(&inst).unwrap();
        assert_eq!(g.agent_count(), 4);
        assert_eq!(g.edge_count(), 3);
        let u1 = g.agent_by_name("u1").unwrap();
        let z1 = g.agent_by_name("z1").unwrap();
        let zp = g.agent_by_name("z1'").unwrap();
        let top = g.edge(g.edge_by_id("zu1").unwrap());
        assert_eq!((top.u, top.w), (u1, z1));
        assert!(top.p_u > g.edge(g.edge_by_id("e").unwrap()).p_u);
        let low = g.edge(g.edge_by_id("zz1").unwrap());
        assert_eq!((low.u, low.w), (zp, z1));
        assert!(top.p_w > low.p_w);
        assert!(is_one_sided(&g));
    }

    #[test]
    fn rejects_u_side_ties_and_unequal_sides() {
        let tie = parse_instance("mode weak\nu u1\nw w1 w2\nedge a u1 w1 1 1\nedge b u1 w2 1 1\n").unwrap();
        assert!(gadget_smti(&tie).is_err());
        let tie = parse_instance("mode weak\nu u1 u2\nw w1 w2\nedge a u1 w1 1 1\nedge b u1 w2 1 1\n").unwrap();
        assert!(gadget_smti(&tie).is_err());
        let gamma = parse_instance("mode gamma\nu u1\nw w1\nedge a u1 w1 1 1 1 1\n").unwrap();
        assert!(gadget_smti(&gamma).is_err());
    }

    #[test]
    fn name_collisions_get_suffixes() {
        let inst = parse_instance("mode weak\nu z1'\nw z1\nedge zu1 z1' z1 1 1\n").unwrap();
        let g = gadget_smti(&inst).unwrap();
        assert_eq!(g.agent_count(), 4);
        assert!(g.agent_by_name("z1_2").is_some());
        assert!(g.edge_by_id("zu1_2").is_some());
    }
}
