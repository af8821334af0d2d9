//! Popularity is a head-to-head vote. Compare two matchings under each rule,
//! then let the oracle search for a counterexample.
//!
//!     cargo run --example certify

use popmatch::oracle::{Certificate, Oracle};
use popmatch::{delta, parse_instance, Matching, VoteRule};

const MARKET: &str = "\
mode gamma
u ann bob
w x y z
# ann is nearly indifferent between x and y; a switch must gain at least 1
edge ax ann x 3 2 1 1
edge ay ann y 5/2 2 1 1
edge bx bob x 2 1 1 1
edge bz bob z 1 1 1 1
";

fn main() -> popmatch::Result<()> {
    let inst = parse_instance(MARKET)?;
    let m = Matching::from_ids(&inst, &["ay", "bx"])?;
    let n = Matching::from_ids(&inst, &["ax", "bz"])?;
    for rule in VoteRule::ALL {
        println!("delta_{rule}(M, N) = {}", delta(&inst, &m, &n, rule)?);
    }

    let oracle = Oracle::new(&inst)?;
    for rule in [VoteRule::Classic, VoteRule::Gamma] {
        match oracle.certify(&m, rule)? {
            Certificate::Popular => println!("{rule}: M is popular"),
            Certificate::Counterexample { matching, delta } => {
                println!("{rule}: M loses to {{{}}} by {}", matching.ids(&inst).join(", "), -delta)
            }
        }
    }
    Ok(())
}
