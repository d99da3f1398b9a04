//! Seeded demonstration generation from a known model.
//!
//! Positives come from random walks; negatives pair states visited by those
//! walks with actions whose precondition fails there. Every walk restart and
//! the negative sampler draw from their own ChaCha8 stream derived from the
//! seed, so output depends only on the model and the [`SimConfig`].

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::literal::State;
use crate::model::{Demonstration, GroundModel};

/// Name of the generator recorded in trace headers.
pub const PRNG_NAME: &str = "ChaCha8Rng";

const NEGATIVE_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub seed: u64,
    /// Steps per walk.
    pub length: usize,
    /// Number of walks, each starting from the initial state.
    pub restarts: usize,
    /// Negatives drawn per positive.
    pub ratio: f64,
    /// Drop repeated demonstrations and sample negatives without replacement.
    pub dedupe: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            length: 100,
            restarts: 1,
            ratio: 0.0,
            dedupe: false,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.ratio.is_finite() || self.ratio < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "ratio must be a non-negative number, got {}",
                self.ratio
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimWarning {
    /// The initial state has no applicable action.
    NoApplicableAction,
    InsufficientNegatives {
        requested: usize,
        available: usize,
    },
}

impl fmt::Display for SimWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimWarning::NoApplicableAction => f.write_str("initial state is a dead end"),
            SimWarning::InsufficientNegatives { requested, available } => write!(
                f,
                "only {available} distinct failing pairs available, {requested} requested"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Sampled {
    pub demos: Vec<Demonstration>,
    pub warnings: Vec<SimWarning>,
}

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `ceil(ratio · positives)`, tolerant of rounding noise in `ratio`.
pub fn negative_count(ratio: f64, positives: usize) -> usize {
    let exact = ratio * positives as f64;
    (exact - 1e-9).ceil().max(0.0) as usize
}

/// Random walks of `cfg.length` steps from `initial`, one per restart, each
/// step taking a uniformly chosen applicable action.
pub fn random_walk(model: &GroundModel, initial: &State, cfg: &SimConfig) -> Result<Sampled> {
    cfg.validate()?;
    if initial.fluent_count() != model.universe().len() {
        return Err(Error::UniverseMismatch);
    }
    let mut out = Sampled::default();
    if cfg.length == 0 {
        return Ok(out);
    }
    if model.applicable_actions(initial).is_empty() {
        out.warnings.push(SimWarning::NoApplicableAction);
        return Ok(out);
    }
    let mut seen = HashSet::new();
    for restart in 0..cfg.restarts {
        let mut rng = stream_rng(cfg.seed, restart as u64);
        let mut state = initial.clone();
        for _ in 0..cfg.length {
            let applicable = model.applicable_actions(&state);
            if applicable.is_empty() {
                break;
            }
            let action = applicable[rng.random_range(0..applicable.len())];
            let next = state.successor(&model.action(action)?.eff)?;
            let demo = Demonstration::positive(state, action, next.clone());
            if !cfg.dedupe || seen.insert(demo.clone()) {
                out.demos.push(demo);
            }
            state = next;
        }
    }
    Ok(out)
}

/// Distinct pre- and post-states of the given demonstrations, in first-seen
/// order.
pub fn visited_states(demos: &[Demonstration]) -> Vec<State> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for d in demos {
        for s in std::iter::once(&d.pre).chain(d.post.as_ref()) {
            if seen.insert(s) {
                out.push(s.clone());
            }
        }
    }
    out
}

/// Draws `ceil(ratio · positives)` failing demonstrations `⟨s, a, ⊥⟩` with
/// `s` uniform over `visited` and `a` uniform over all actions, rejecting
/// applicable pairs.
pub fn sample_negatives(
    model: &GroundModel,
    visited: &[State],
    positives: usize,
    cfg: &SimConfig,
) -> Result<Sampled> {
    cfg.validate()?;
    let requested = negative_count(cfg.ratio, positives);
    let mut out = Sampled::default();
    if requested == 0 {
        return Ok(out);
    }
    let actions = model.actions().len();
    let mut pool = Vec::new();
    for (si, s) in visited.iter().enumerate() {
        for a in 0..actions {
            if !model.is_applicable(s, a)? {
                pool.push((si, a));
            }
        }
    }
    let mut rng = stream_rng(cfg.seed, NEGATIVE_STREAM);
    let warn = SimWarning::InsufficientNegatives {
        requested,
        available: pool.len(),
    };
    if pool.is_empty() {
        out.warnings.push(warn);
        return Ok(out);
    }
    if cfg.dedupe {
        pool.shuffle(&mut rng);
        if pool.len() < requested {
            out.warnings.push(warn);
        }
        pool.truncate(requested);
        out.demos = pool
            .into_iter()
            .map(|(si, a)| Demonstration::negative(visited[si].clone(), a))
            .collect();
        return Ok(out);
    }
    while out.demos.len() < requested {
        let s = &visited[rng.random_range(0..visited.len())];
        let a = rng.random_range(0..actions);
        if !model.is_applicable(s, a)? {
            out.demos.push(Demonstration::negative(s.clone(), a));
        }
    }
    Ok(out)
}

/// Positives from [`random_walk`] followed by negatives over the visited
/// states.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Simulation {
    pub positives: Vec<Demonstration>,
    pub negatives: Vec<Demonstration>,
    pub warnings: Vec<SimWarning>,
}

impl Simulation {
    pub fn demos(&self) -> Vec<Demonstration> {
        self.positives.iter().chain(&self.negatives).cloned().collect()
    }
}

pub fn simulate(model: &GroundModel, initial: &State, cfg: &SimConfig) -> Result<Simulation> {
    let walk = random_walk(model, initial, cfg)?;
    let visited = visited_states(&walk.demos);
    let negatives = sample_negatives(model, &visited, walk.demos.len(), cfg)?;
    let mut warnings = walk.warnings;
    warnings.extend(negatives.warnings);
    Ok(Simulation {
        positives: walk.demos,
        negatives: negatives.demos,
        warnings,
    })
}

/// Seeded shuffle, then the first `floor(fraction · len)` items train and the
/// rest test.
pub fn split<T: Clone>(items: &[T], fraction: f64, seed: u64) -> Result<(Vec<T>, Vec<T>)> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "split fraction must lie in (0, 1), got {fraction}"
        )));
    }
    let mut shuffled = items.to_vec();
    shuffled.shuffle(&mut stream_rng(seed, 0));
    let cut = (fraction * items.len() as f64).floor() as usize;
    let test = shuffled.split_off(cut);
    Ok((shuffled, test))
}
