//! The six-copy strict instance behind the solver, for a small gamma-mode
//! market. Thresholds decide where the interleaved copies land.
//!
//!     cargo run --example duplication

use popmatch::{build_duplicated, gale_shapley, parse_instance, project, validate_duplicated};

const MARKET: &str = "\
mode gamma
u u1 u2
w w1 w2
edge e u1 w1 1 1 1 1
edge f u1 w2 3/2 1 1/2 1
edge g u2 w1 2 1 1 1
";

fn main() -> popmatch::Result<()> {
    let inst = parse_instance(MARKET)?;
    let dup = build_duplicated(&inst);
    print!("{}", dup.to_text());
    assert!(validate_duplicated(&dup).is_empty());

    let strict = gale_shapley(&dup);
    println!("stable copies: {}", strict.to_text(&inst).split_whitespace().collect::<Vec<_>>().join(" "));
    println!("projected:     {{{}}}", project(&strict).ids(&inst).join(", "));
    Ok(())
}
