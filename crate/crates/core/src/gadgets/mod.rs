//! Instance generators: tightness fixtures, reduction gadgets and random
//! families for property tests.
//!
//! Ordinal preferences are realized as valuations by rank: a list with `k`
//! indifference classes gives its best class value `k` and its worst value `1`.

mod fixtures;
mod inapprox;
mod random;
mod smti;
mod superpm;

pub use fixtures::{fixture, fixtures, Fixtures, EXAMPLE2_CERTIFICATE, EXAMPLE3_CERTIFICATE, EXAMPLE3_STABLE};
pub use inapprox::gadget_inapprox;
pub use random::{random_instance, RandomSpec};
pub use smti::{gadget_smti, is_one_sided};
pub use superpm::{gadget_superpm, parse_pm_restricted, tie_profile, PmRestrictedInstance};

use crate::error::Error;
use crate::instance::InstanceBuilder;

/// Picks `base`, or `base` with a numeric suffix, so that `taken` rejects neither.
pub(crate) fn fresh_name(base: String, taken: impl Fn(&str) -> bool) -> String {
    if !taken(&base) {
        return base;
    }
    (2..)
        .map(|k| format!("{base}_{k}"))
        .find(|n| !taken(n))
        .expect("unbounded suffixes")
}

pub(crate) fn fresh_agent(b: &InstanceBuilder, base: String) -> String {
    fresh_name(base, |n| b.has_agent(n))
}

pub(crate) fn fresh_edge(b: &InstanceBuilder, base: String) -> String {
    fresh_name(base, |n| b.has_edge(n))
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::PreconditionViolated(msg.into())
}

