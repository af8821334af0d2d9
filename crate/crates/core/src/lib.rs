//! Popular matchings in bipartite markets with ties.
//!
//! The solver duplicates every edge into six strictly ranked copies, runs
//! deferred acceptance on the strict instance and projects the result back.
//! The output is weakly popular (or gamma-popular when per-edge improvement
//! thresholds are given), maximal, and within 3/4 of a maximum popular
//! matching and 4/5 of a maximum stable matching.
//!
//! ```
//! use popmatch::{gadgets, oracle, solve, VoteRule};
//!
//! let inst = gadgets::fixtures().example2;
//! let m = solve(&inst);
//! assert_eq!(m.len(), 3);
//! let cert = oracle::certify_popular(&inst, &m, VoteRule::Weak, 24).unwrap();
//! assert!(cert.is_popular());
//! ```
//!
//! The [`oracle`] module holds exhaustive checkers used to certify these
//! claims on small instances, and [`gadgets`] builds the reduction instances
//! from the hardness results along with random test families.

pub mod cli;
pub mod duplication;
mod error;
pub mod gadgets;
pub mod instance;
pub mod matching;
pub mod oracle;
pub mod solver;
pub mod stability;
pub mod value;
pub mod vote;

pub use duplication::{build_duplicated, validate_duplicated, CopyType, DuplicatedInstance, EdgeCopy};
pub use error::{Error, Result};
pub use instance::{parse_instance, AgentIdx, EdgeIdx, Instance, InstanceBuilder, Mode, Side};
pub use matching::{is_maximal, is_valid, parse_matching, Matching};
pub use solver::{check_strict_stability, gale_shapley, project, solve, solve_with_certificate, StrictMatching};
pub use stability::{blocking_edges, is_stable, StabilityNotion};
pub use value::Value;
pub use vote::{delta, vote, Vote, VoteRule};
