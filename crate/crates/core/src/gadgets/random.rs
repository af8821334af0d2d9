use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{Instance, InstanceBuilder, Mode};
use crate::value::Value;

/// Parameters of the random instance family. Agents are `u1..`, `w1..`,
/// edges `e1..` in generation order.
#[derive(Debug, Clone)]
pub struct RandomSpec {
    pub n_u: usize,
    pub n_w: usize,
    /// Probability of each U-W pair being an edge.
    pub edge_prob: f64,
    /// Valuations are drawn uniformly from these; few levels means many ties.
    pub value_levels: Vec<Value>,
    /// Thresholds drawn from these; `None` produces a weak-mode instance.
    pub gamma_levels: Option<Vec<Value>>,
    /// Give every U-agent distinct values (ties only on the W side).
    pub one_sided_ties: bool,
    /// Probability that an edge gets a parallel twin.
    pub parallel_prob: f64,
    /// Keep a random subset of at most this many edges.
    pub max_edges: Option<usize>,
}

impl RandomSpec {
    pub fn weak(n_u: usize, n_w: usize, edge_prob: f64, value_levels: &[i64]) -> Self {
        RandomSpec {
            n_u,
            n_w,
            edge_prob,
            value_levels: value_levels.iter().map(|&v| Value::from_int(v)).collect(),
            gamma_levels: None,
            one_sided_ties: false,
            parallel_prob: 0.0,
            max_edges: None,
        }
    }

    pub fn with_gammas(mut self, gammas: Vec<Value>) -> Self {
        self.gamma_levels = Some(gammas);
        self
    }

    pub fn mode(&self) -> Mode {
        if self.gamma_levels.is_some() {
            Mode::Gamma
        } else {
            Mode::Weak
        }
    }
}

struct Draft {
    u: usize,
    w: usize,
    p_u: Value,
    p_w: Value,
    gamma: Option<(Value, Value)>,
}

/// Deterministic in `(spec, seed)`.
pub fn random_instance(spec: &RandomSpec, seed: u64) -> Instance {
    assert!(!spec.value_levels.is_empty(), "need at least one value level");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng, levels: &[Value]| levels[rng.gen_range(0..levels.len())];

    let mut drafts = Vec::new();
    for u in 0..spec.n_u {
        for w in 0..spec.n_w {
            if !rng.gen_bool(spec.edge_prob.clamp(0.0, 1.0)) {
                continue;
            }
            let copies = if rng.gen_bool(spec.parallel_prob.clamp(0.0, 1.0)) { 2 } else { 1 };
            for _ in 0..copies {
                let p_u = pick(&mut rng, &spec.value_levels);
                let p_w = pick(&mut rng, &spec.value_levels);
                let gamma = spec
                    .gamma_levels
                    .as_deref()
                    .map(|g| (pick(&mut rng, g), pick(&mut rng, g)));
                drafts.push(Draft { u, w, p_u, p_w, gamma });
            }
        }
    }

    if let Some(cap) = spec.max_edges {
        if drafts.len() > cap {
            let mut keep: Vec<usize> = (0..drafts.len()).collect();
            keep.shuffle(&mut rng);
            keep.truncate(cap);
            keep.sort_unstable();
            let mut i = 0;
            drafts.retain(|_| {
                let kept = keep.binary_search(&i).is_ok();
                i += 1;
                kept
            });
        }
    }

    if spec.one_sided_ties {
        for u in 0..spec.n_u {
            let mine: Vec<usize> = (0..drafts.len()).filter(|&i| drafts[i].u == u).collect();
            let mut ranks: Vec<i64> = (1..=mine.len() as i64).collect();
            ranks.shuffle(&mut rng);
            for (&i, r) in mine.iter().zip(ranks) {
                drafts[i].p_u = Value::from_int(r);
            }
        }
    }

    let mut b = InstanceBuilder::new(spec.mode());
    for u in 1..=spec.n_u {
        b.add_u(&format!("u{u}")).unwrap();
    }
    for w in 1..=spec.n_w {
        b.add_w(&format!("w{w}")).unwrap();
    }
    for (i, d) in drafts.iter().enumerate() {
        b.push_edge(
            &format!("e{}", i + 1),
            &format!("u{}", d.u + 1),
            &format!("w{}", d.w + 1),
            d.p_u,
            d.p_w,
            d.gamma,
        )
        .expect("generated edge is valid");
    }
    b.build()
}
