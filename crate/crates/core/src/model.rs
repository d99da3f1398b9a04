//! Deterministic ground action models, demonstrations and the transition
//! systems they induce.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::literal::{FluentUniverse, LiteralSet, State};

/// Default bound on `n` for exhaustive enumeration over the `2^n` states.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 16;

/// Environment variable overriding [`DEFAULT_ENUMERATION_LIMIT`].
pub const MAX_UNIVERSE_ENV: &str = "VSLAM_MAX_UNIVERSE";

/// Bound on exhaustive enumeration, for oracles and transition listings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimit(pub usize);

impl Default for EnumerationLimit {
    fn default() -> Self {
        Self(DEFAULT_ENUMERATION_LIMIT)
    }
}

impl EnumerationLimit {
    /// Reads `VSLAM_MAX_UNIVERSE`, falling back to the default when unset or
    /// unparsable.
    pub fn from_env() -> Self {
        std::env::var(MAX_UNIVERSE_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Self)
            .unwrap_or_default()
    }

    pub fn check(self, fluents: usize) -> Result<()> {
        // 2^n states must also stay addressable by a u64 code
        if fluents > self.0 || fluents >= 64 {
            Err(Error::UniverseTooLarge {
                fluents,
                limit: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// Index of an action in a model's catalog.
pub type ActionId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundAction {
    pub name: String,
    pub pre: LiteralSet,
    pub eff: LiteralSet,
}

/// A deterministic ground action model `⟨F, A, pre, eff⟩`.
///
/// Effects are always conflict-free. Preconditions may contain a conflicting
/// pair (a never-applicable action, as in the trivially sound model); use
/// [`GroundModel::check_executable`] where a true model is required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundModel {
    universe: FluentUniverse,
    actions: Vec<GroundAction>,
    index: HashMap<String, ActionId>,
}

impl GroundModel {
    pub fn new(universe: FluentUniverse, actions: Vec<GroundAction>) -> Result<Self> {
        let mut index = HashMap::with_capacity(actions.len());
        for (id, action) in actions.iter().enumerate() {
            if action.pre.fluent_count() != universe.len() || action.eff.fluent_count() != universe.len() {
                return Err(Error::UniverseMismatch);
            }
            if action.eff.has_conflict() {
                return Err(Error::ConflictingAction {
                    action: action.name.clone(),
                    part: "effect",
                    set: format!("{:?}", universe.literal_names(&action.eff)),
                });
            }
            if index.insert(action.name.clone(), id).is_some() {
                return Err(Error::DuplicateAction(action.name.clone()));
            }
        }
        Ok(Self {
            universe,
            actions,
            index,
        })
    }

    /// Fails unless every precondition is conflict-free as well.
    pub fn check_executable(&self) -> Result<()> {
        for action in &self.actions {
            if action.pre.has_conflict() {
                return Err(Error::ConflictingAction {
                    action: action.name.clone(),
                    part: "precondition",
                    set: format!("{:?}", self.universe.literal_names(&action.pre)),
                });
            }
        }
        Ok(())
    }

    pub fn universe(&self) -> &FluentUniverse {
        &self.universe
    }

    pub fn actions(&self) -> &[GroundAction] {
        &self.actions
    }

    pub fn action(&self, id: ActionId) -> Result<&GroundAction> {
        self.actions
            .get(id)
            .ok_or_else(|| Error::UnknownAction(format!("#{id}")))
    }

    pub fn action_id(&self, name: &str) -> Result<ActionId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownAction(name.to_string()))
    }

    pub fn action_names(&self) -> Vec<String> {
        self.actions.iter().map(|a| a.name.clone()).collect()
    }

    pub fn is_applicable(&self, state: &State, action: ActionId) -> Result<bool> {
        Ok(state.satisfies(&self.action(action)?.pre))
    }

    /// Applies `action` in `state`, or `None` if its precondition fails.
    pub fn apply(&self, state: &State, action: ActionId) -> Result<Option<State>> {
        let action = self.action(action)?;
        if state.satisfies(&action.pre) {
            state.successor(&action.eff).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn applicable_actions(&self, state: &State) -> Vec<ActionId> {
        self.actions
            .iter()
            .enumerate()
            .filter(|(_, a)| state.satisfies(&a.pre))
            .map(|(id, _)| id)
            .collect()
    }

    /// `⟨s, a, s'⟩ ∈ T_M`.
    pub fn transition_member(&self, pre: &State, action: ActionId, post: &State) -> Result<bool> {
        Ok(self.apply(pre, action)?.as_ref() == Some(post))
    }

    /// The whole transition system `T_M`, by enumerating all `2^n` states.
    pub fn enumerate_transitions(&self, limit: EnumerationLimit) -> Result<BTreeSet<Transition>> {
        let n = self.universe.len();
        limit.check(n)?;
        let mut out = BTreeSet::new();
        for code in 0..1u64 << n {
            let s = State::from_code(n, code);
            for id in 0..self.actions.len() {
                if let Some(post) = self.apply(&s, id)? {
                    out.insert(Transition {
                        pre: s.clone(),
                        action: id,
                        post,
                    });
                }
            }
        }
        Ok(out)
    }
}

/// `⟨s, a, s'⟩` with `s'` a state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub pre: State,
    pub action: ActionId,
    pub post: State,
}

/// `⟨s, a, s'⟩` for a positive demonstration, `⟨s, a, ⊥⟩` (`post = None`)
/// for a failed execution.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Demonstration {
    pub pre: State,
    pub action: ActionId,
    pub post: Option<State>,
}

impl Demonstration {
    pub fn positive(pre: State, action: ActionId, post: State) -> Self {
        Self {
            pre,
            action,
            post: Some(post),
        }
    }

    pub fn negative(pre: State, action: ActionId) -> Self {
        Self {
            pre,
            action,
            post: None,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.post.is_some()
    }
}

impl From<Transition> for Demonstration {
    fn from(t: Transition) -> Self {
        Demonstration::positive(t.pre, t.action, t.post)
    }
}
