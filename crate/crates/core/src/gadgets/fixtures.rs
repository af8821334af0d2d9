use crate::error::Error;
use crate::instance::{parse_instance, Instance};

const EXAMPLE1: &str = include_str!("../../fixtures/example1.inst");
const EXAMPLE2: &str = include_str!("../../fixtures/example2.inst");
const EXAMPLE3: &str = include_str!("../../fixtures/example3.inst");

/// Stable assignment of the duplicated example 2 that projects to its F-edges.
pub const EXAMPLE2_CERTIFICATE: &str = "b(f1) c(f2) y(f3)";
/// The assignment commonly quoted for example 3. It is *not* stable: with
/// `x(f3)` held at w4, the copy `y(e4)` blocks. The only stable assignment
/// projecting to the F-edges is [`EXAMPLE3_STABLE`].
pub const EXAMPLE3_CERTIFICATE: &str = "b(f1) c(f2) x(f3) y(f4)";
/// Stable assignment of the duplicated example 3 that projects to its F-edges.
pub const EXAMPLE3_STABLE: &str = "b(f1) c(f2) y(f3) y(f4)";

/// Three path instances on which the solver's size guarantees are tight:
/// 2/3 of a maximum matching, 3/4 of a maximum weakly popular matching and
/// 4/5 of a maximum weakly stable matching.
#[derive(Debug, Clone)]
pub struct Fixtures {
    pub example1: Instance,
    pub example2: Instance,
    pub example3: Instance,
}

pub fn fixtures() -> Fixtures {
    let parse = |t| parse_instance(t).expect("bundled fixture parses");
    Fixtures {
        example1: parse(EXAMPLE1),
        example2: parse(EXAMPLE2),
        example3: parse(EXAMPLE3),
    }
}

/// Source text of a fixture by name (`example1` .. `example3`).
pub fn fixture(name: &str) -> Result<&'static str, Error> {
    match name {
        "example1" | "1" => Ok(EXAMPLE1),
        "example2" | "2" => Ok(EXAMPLE2),
        "example3" | "3" => Ok(EXAMPLE3),
        other => Err(Error::InvalidInstance(format!("unknown fixture `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let f = fixtures();
        for (inst, agents, edges) in [(&f.example1, 6, 5), (&f.example2, 8, 7), (&f.example3, 10, 9)] {
            assert_eq!(inst.agent_count(), agents);
            assert_eq!(inst.edge_count(), edges);
        }
    }
}
