//! Solve the three bundled tightness instances and compare against the
//! exhaustive optima.
//!
//!     cargo run --example solve_fixtures

use popmatch::gadgets::fixtures;
use popmatch::oracle::{max_matching, Oracle};
use popmatch::{solve_with_certificate, StabilityNotion, VoteRule};

fn main() -> popmatch::Result<()> {
    let fx = fixtures();
    for (name, inst) in [("example1", &fx.example1), ("example2", &fx.example2), ("example3", &fx.example3)] {
        let (m, cert) = solve_with_certificate(inst);
        let oracle = Oracle::new(inst)?;
        let popular = oracle.max_popular(VoteRule::Weak)?.map_or(0, |(s, _)| s);
        let stable = oracle.max_stable(StabilityNotion::WeakStable)?.map_or(0, |(s, _)| s);
        println!("{name}: {} agents, {} edges", inst.agent_count(), inst.edge_count());
        println!("  matching    {{{}}}", m.ids(inst).join(", "));
        println!("  certificate {}", cert.to_text(inst).split_whitespace().collect::<Vec<_>>().join(" "));
        println!(
            "  size {} / max matching {} / max weak-popular {popular} / max weak-stable {stable}",
            m.len(),
            max_matching(inst)
        );
    }
    Ok(())
}
