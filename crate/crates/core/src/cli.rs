//! Command-line front end. The `popmatch` binary is a thin wrapper around [`run`].
//!
//! Exit codes: 0 when the checked property holds (or the command simply
//! succeeded), 1 when it is refuted or nothing was found, 2 on usage, parse
//! or I/O errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::duplication::build_duplicated;
use crate::error::{Error, Result};
use crate::gadgets::{self, RandomSpec};
use crate::instance::{parse_instance, Instance};
use crate::matching::{parse_matching, Matching};
use crate::oracle::{max_matching, Certificate, Oracle, DEFAULT_EDGE_LIMIT};
use crate::solver::{check_strict_stability, solve_with_certificate, StrictMatching};
use crate::stability::{blocking_edges, StabilityNotion};
use crate::value::Value;
use crate::vote::VoteRule;

#[derive(Debug, Parser)]
#[command(name = "popmatch", about = "Popular matchings in bipartite markets with ties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a popular matching (weak or gamma, by instance mode)
    Solve {
        instance: PathBuf,
        /// Also print the stable assignment of edge copies
        #[arg(long)]
        emit_certificate: bool,
    },
    /// Check a matching for popularity against every other matching
    Verify {
        instance: PathBuf,
        #[arg(long)]
        matching: PathBuf,
        /// Vote rule; defaults to the instance mode's rule
        #[arg(long)]
        rule: Option<VoteRule>,
        #[command(flatten)]
        limit: Limit,
    },
    /// List blocking edges of a matching, or blocking copies of a certificate
    CheckStable {
        instance: PathBuf,
        #[arg(long, required_unless_present = "certificate", conflicts_with = "certificate")]
        matching: Option<PathBuf>,
        /// Stability notion; defaults to the instance mode's notion
        #[arg(long)]
        notion: Option<StabilityNotion>,
        /// File of `copy(edge)` tokens checked against the duplicated instance
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Exhaustive queries
    Oracle {
        instance: PathBuf,
        #[arg(long)]
        rule: Option<VoteRule>,
        #[command(flatten)]
        query: OracleQuery,
        #[command(flatten)]
        limit: Limit,
    },
    /// Build a reduction gadget from an input file
    Gadget {
        kind: GadgetKind,
        input: PathBuf,
    },
    /// Generate instances
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Solver size against exhaustive optima, as exact fractions
    Ratio {
        instance: PathBuf,
        #[command(flatten)]
        limit: Limit,
    },
    /// Print every agent's strict list over edge copies
    DumpDuplicated { instance: PathBuf },
}

#[derive(Debug, Args)]
struct Limit {
    /// Refuse exhaustive search above this many edges
    #[arg(long = "limit", default_value_t = DEFAULT_EDGE_LIMIT)]
    edges: usize,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct OracleQuery {
    /// Largest popular matching under the rule (the default query)
    #[arg(long)]
    max_popular: bool,
    /// Check the matching in this file for popularity
    #[arg(long, value_name = "MATCHING_FILE")]
    certify: Option<PathBuf>,
    /// Largest stable matching under this notion
    #[arg(long, value_name = "NOTION")]
    max_stable: Option<StabilityNotion>,
    /// Whether any super-popular matching exists
    #[arg(long)]
    super_exists: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GadgetKind {
    Smti,
    Inapprox,
    Superpm,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Seeded random instance
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        nu: usize,
        #[arg(long, default_value_t = 3)]
        nw: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        /// Comma-separated valuation levels
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        values: Vec<Value>,
        /// Comma-separated threshold levels; presence switches to gamma mode
        #[arg(long, value_delimiter = ',')]
        gammas: Option<Vec<Value>>,
        #[arg(long)]
        one_sided_ties: bool,
        #[arg(long, default_value_t = 0.0)]
        parallel_prob: f64,
        #[arg(long)]
        max_edges: Option<usize>,
    },
    /// One of the bundled tightness examples
    Fixture { name: String },
}

impl clap::builder::ValueParserFactory for VoteRule {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<VoteRule>())
    }
}

impl clap::builder::ValueParserFactory for StabilityNotion {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<StabilityNotion>())
    }
}

impl clap::builder::ValueParserFactory for Value {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<Value>())
    }
}

/// What a command produced: its text and whether the checked property held.
struct Outcome {
    text: String,
    holds: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, holds: true }
    }
}

/// Runs one command line (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command) {
        Ok(outcome) => {
            if out.write_all(outcome.text.as_bytes()).is_err() {
                return 2;
            }
            if outcome.holds {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn load(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?)
}

fn execute(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Solve { instance, emit_certificate } => {
            let inst = load(&instance)?;
            let (m, cert) = solve_with_certificate(&inst);
            let mut text = m.to_text(&inst);
            if emit_certificate {
                text.push_str("certificate\n");
                text.push_str(&cert.to_text(&inst));
            }
            Ok(Outcome::ok(text))
        }
        Command::Verify { instance, matching, rule, limit } => {
            let inst = load(&instance)?;
            let m = parse_matching(&inst, &read(&matching)?)?;
            let rule = rule.unwrap_or(VoteRule::for_mode(inst.mode()));
            certify(&inst, &m, rule, limit.edges)
        }
        Command::CheckStable { instance, matching, notion, certificate } => {
            let inst = load(&instance)?;
            if let Some(cert) = certificate {
                let dup = build_duplicated(&inst);
                let s = StrictMatching::parse(&inst, strip_to_certificate(&read(&cert)?))?;
                let blocking = check_strict_stability(&dup, &s)?;
                let mut text = String::new();
                for c in &blocking {
                    writeln!(text, "blocking {}", c.display(&inst)).unwrap();
                }
                text.push_str(if blocking.is_empty() { "STABLE\n" } else { "NOT STABLE\n" });
                return Ok(Outcome { text, holds: blocking.is_empty() });
            }
            let m = parse_matching(&inst, &read(&matching.expect("clap enforces one input"))?)?;
            let notion = notion.unwrap_or(StabilityNotion::for_mode(inst.mode()));
            let blocking = blocking_edges(&inst, &m, notion)?;
            let mut text = String::new();
            for &e in &blocking {
                writeln!(text, "blocking {}", inst.edge(e).id).unwrap();
            }
            text.push_str(if blocking.is_empty() { "STABLE\n" } else { "NOT STABLE\n" });
            Ok(Outcome { text, holds: blocking.is_empty() })
        }
        Command::Oracle { instance, rule, query, limit } => {
            let inst = load(&instance)?;
            let rule = rule.unwrap_or(VoteRule::for_mode(inst.mode()));
            if let Some(path) = query.certify {
                let m = parse_matching(&inst, &read(&path)?)?;
                return certify(&inst, &m, rule, limit.edges);
            }
            let oracle = Oracle::with_limit(&inst, limit.edges)?;
            if query.super_exists {
                return Ok(match oracle.super_popular_exists() {
                    Some(w) => Outcome::ok(format!("YES\n{}", w.to_text(&inst))),
                    None => Outcome { text: "NO\n".into(), holds: false },
                });
            }
            if let Some(notion) = query.max_stable {
                return Ok(found("max_stable", &inst, oracle.max_stable(notion)?));
            }
            Ok(found("max_popular", &inst, oracle.max_popular(rule)?))
        }
        Command::Gadget { kind, input } => {
            let text = read(&input)?;
            let out = match kind {
                GadgetKind::Smti => gadgets::gadget_smti(&parse_instance(&text)?)?,
                GadgetKind::Inapprox => gadgets::gadget_inapprox(&parse_instance(&text)?)?,
                GadgetKind::Superpm => gadgets::gadget_superpm(&gadgets::parse_pm_restricted(&text)?)?,
            };
            Ok(Outcome::ok(out.to_text()))
        }
        Command::Gen { what } => match what {
            GenCommand::Fixture { name } => Ok(Outcome::ok(gadgets::fixture(&name)?.to_string())),
            GenCommand::Random {
                seed,
                nu,
                nw,
                edge_prob,
                values,
                gammas,
                one_sided_ties,
                parallel_prob,
                max_edges,
            } => {
                if values.is_empty() || values.iter().any(Value::is_negative) {
                    return Err(Error::InvalidInstance("--values needs nonnegative levels".into()));
                }
                if let Some(g) = &gammas {
                    if g.is_empty() || !g.iter().all(Value::is_positive) {
                        return Err(Error::InvalidInstance("--gammas needs positive levels".into()));
                    }
                }
                let spec = RandomSpec {
                    n_u: nu,
                    n_w: nw,
                    edge_prob,
                    value_levels: values,
                    gamma_levels: gammas,
                    one_sided_ties,
                    parallel_prob,
                    max_edges,
                };
                Ok(Outcome::ok(gadgets::random_instance(&spec, seed).to_text()))
            }
        },
        Command::Ratio { instance, limit } => {
            let inst = load(&instance)?;
            let oracle = Oracle::with_limit(&inst, limit.edges)?;
            let alg = solve_with_certificate(&inst).0.len();
            let mm = max_matching(&inst);
            let rule = VoteRule::for_mode(inst.mode());
            let notion = StabilityNotion::for_mode(inst.mode());
            let mp = oracle.max_popular(rule)?.map_or(0, |(s, _)| s);
            let ms = oracle.max_stable(notion)?.map_or(0, |(s, _)| s);
            Ok(Outcome::ok(format!(
                "alg={alg} max_matching={mm} max_popular={mp} max_stable={ms} ratio_matching={} ratio_popular={} ratio_stable={}\n",
                fraction(alg, mm),
                fraction(alg, mp),
                fraction(alg, ms)
            )))
        }
        Command::DumpDuplicated { instance } => {
            let inst = load(&instance)?;
            Ok(Outcome::ok(build_duplicated(&inst).to_text()))
        }
    }
}

fn certify(inst: &Instance, m: &Matching, rule: VoteRule, limit: usize) -> Result<Outcome> {
    let oracle = Oracle::with_limit(inst, limit)?;
    Ok(match oracle.certify(m, rule)? {
        Certificate::Popular => Outcome::ok("POPULAR\n".into()),
        Certificate::Counterexample { matching, delta } => Outcome {
            text: format!("NOT POPULAR delta={delta}\n{}", matching.to_text(inst)),
            holds: false,
        },
    })
}

fn found(label: &str, inst: &Instance, r: Option<(usize, Matching)>) -> Outcome {
    match r {
        Some((size, w)) => Outcome::ok(format!("{label} {size}\n{}", w.to_text(inst))),
        None => Outcome { text: "NONE\n".into(), holds: false },
    }
}

/// Accepts either a bare list of copies or full `solve --emit-certificate` output.
fn strip_to_certificate(text: &str) -> &str {
    match text.find("certificate\n") {
        Some(i) if text[..i].is_empty() || text[..i].ends_with('\n') => &text[i + "certificate\n".len()..],
        _ => text,
    }
}

/// `a/b` in lowest terms; an integer when `b` divides `a`; `1` for `0/0`.
pub fn fraction(a: usize, b: usize) -> String {
    if b == 0 {
        return "1".into();
    }
    let r = num_rational::Ratio::new(a, b);
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions() {
        assert_eq!(fraction(4, 5), "4/5");
        assert_eq!(fraction(2, 4), "1/2");
        assert_eq!(fraction(3, 3), "1");
        assert_eq!(fraction(0, 0), "1");
    }

    #[test]
    fn certificate_section_extraction() {
        assert_eq!(strip_to_certificate("e1\nsize 1\ncertificate\na(e1)\n"), "a(e1)\n");
        assert_eq!(strip_to_certificate("a(e1)\n"), "a(e1)\n");
    }

    #[test]
    fn usage_errors_exit_two() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["popmatch", "frobnicate"], &mut out, &mut err), 2);
        assert_eq!(run(["popmatch", "solve"], &mut out, &mut err), 2);
        assert_eq!(run(["popmatch", "solve", "/nonexistent/file"], &mut out, &mut err), 2);
        assert_eq!(run(["popmatch", "--help"], &mut out, &mut err), 0);
    }
}
