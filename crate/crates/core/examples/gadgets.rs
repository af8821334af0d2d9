//! The three reduction gadgets on tiny inputs, each checked against the
//! oracle.
//!
//!     cargo run --example gadgets

use popmatch::gadgets::{gadget_inapprox, gadget_smti, gadget_superpm, parse_pm_restricted, tie_profile};
use popmatch::oracle::Oracle;
use popmatch::{parse_instance, StabilityNotion, VoteRule};

fn main() -> popmatch::Result<()> {
    // stable marriage with one-sided ties -> weakly popular matching
    let smti = parse_instance("mode weak\nu u1 u2\nw w1 w2\nedge a u1 w1 2 2\nedge b u2 w1 1 1\nedge c u1 w2 1 1\n")?;
    let g = gadget_smti(&smti)?;
    let stable = Oracle::new(&smti)?.max_stable(StabilityNotion::WeakStable)?.map_or(0, |(s, _)| s);
    let popular = Oracle::new(&g)?.max_popular(VoteRule::Weak)?.map_or(0, |(s, _)| s);
    println!("smti: max stable {stable} in input, max weakly popular {popular} in gadget (n = 2)");

    // maximal matching -> weakly popular matching
    let graph = parse_instance("mode weak\nu u1 u2\nw w1 w2\nedge g1 u1 w1 1 1\nedge g2 u2 w1 1 1\n")?;
    let g = gadget_inapprox(&graph)?;
    let popular = Oracle::new(&g)?.max_popular(VoteRule::Weak)?.map_or(0, |(s, _)| s);
    println!("inapprox: {} agents, {} edges, max weakly popular {popular}", g.agent_count(), g.edge_count());

    // restricted popular matching -> super-popular matching
    let p = parse_pm_restricted(
        "mode weak\nu x z s\nw y t\nedge xy x y 1 1\nedge yz z y 2 2\nedge st s t 1 1\nforbid xy\nforce t\n",
    )?;
    let g = gadget_superpm(&p)?;
    let ties: Vec<_> = tie_profile(&g).into_iter().map(|(v, _)| g.agent(v).name.clone()).collect();
    println!(
        "superpm: qualifying popular in input: {}, super-popular in gadget: {}, tied agents {ties:?}",
        p.qualifying_popular(24)?.is_some(),
        Oracle::new(&g)?.super_popular_exists().is_some()
    );
    Ok(())
}
