//! Sweep seeded random markets in parallel and report the worst observed
//! solver ratios against the exhaustive optima.
//!
//!     cargo run --release --example random_sweep -- [instances]

use num_rational::Ratio;
use popmatch::gadgets::{random_instance, RandomSpec};
use popmatch::oracle::{max_matching, Oracle};
use popmatch::{solve, StabilityNotion, Value, VoteRule};
use rayon::prelude::*;

fn ratios(seed: u64) -> [Ratio<usize>; 3] {
    let mut spec = RandomSpec::weak(4, 4, 0.5, &[1, 2, 3]);
    spec.max_edges = Some(12);
    if seed % 2 == 1 {
        spec = spec.with_gammas(vec![Value::new(1, 2), Value::from_int(1)]);
    }
    let inst = random_instance(&spec, seed);
    let oracle = Oracle::new(&inst).expect("small instance");
    let alg = solve(&inst).len();
    let popular = oracle.max_popular(VoteRule::for_mode(inst.mode())).unwrap().map_or(0, |(s, _)| s);
    let stable = oracle.max_stable(StabilityNotion::for_mode(inst.mode())).unwrap().map_or(0, |(s, _)| s);
    let r = |opt: usize| if opt == 0 { Ratio::from_integer(1) } else { Ratio::new(alg, opt) };
    [r(max_matching(&inst)), r(popular), r(stable)]
}

fn main() {
    let n: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let worst = (0..n)
        .into_par_iter()
        .map(ratios)
        .reduce(|| [Ratio::from_integer(1); 3], |a, b| [a[0].min(b[0]), a[1].min(b[1]), a[2].min(b[2])]);
    println!("{n} instances");
    println!("worst vs max matching: {} (bound 2/3)", worst[0]);
    println!("worst vs max popular:  {} (bound 3/4)", worst[1]);
    println!("worst vs max stable:   {} (bound 4/5)", worst[2]);
}
