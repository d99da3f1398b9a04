//! Sound and complete models read off learned version-space boundaries.
//!
//! The sound model takes each action's lower boundaries (`pre = hp_L`,
//! `eff = he_L`); its transition system is the intersection of those of all
//! consistent models. The complete model is non-deterministic: `U_p` becomes a
//! set of alternative preconditions and the effect interval `[he_L, he_U]`
//! becomes the set of possible effects, giving the union of all consistent
//! transition systems.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::literal::{FluentUniverse, LiteralSet, State};
use crate::model::{ActionId, Demonstration, EnumerationLimit, GroundAction, GroundModel, Transition};
use crate::vspace::{ActionVersionSpace, Component, ComponentStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Label {
    Positive,
    Negative,
}

/// Anything that can accept or reject a demonstration.
pub trait Classifier {
    fn label(&self, demo: &Demonstration) -> Result<Label>;
}

/// Deterministic model with `pre(a) = hp_L` and `eff(a) = he_L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundModel(GroundModel);

impl SoundModel {
    pub fn model(&self) -> &GroundModel {
        &self.0
    }

    pub fn into_model(self) -> GroundModel {
        self.0
    }

    pub fn enumerate_transitions(&self, limit: EnumerationLimit) -> Result<BTreeSet<Transition>> {
        self.0.enumerate_transitions(limit)
    }

    pub fn validate_plan(&self, query: &PlanningQuery) -> Result<Verdict> {
        validate_plan(&self.0, query)
    }
}

impl Classifier for SoundModel {
    fn label(&self, demo: &Demonstration) -> Result<Label> {
        let accepted = match &demo.post {
            Some(next) => self.0.transition_member(&demo.pre, demo.action, next)?,
            None => self.0.is_applicable(&demo.pre, demo.action)?,
        };
        Ok(if accepted {
            Label::Positive
        } else {
            Label::Negative
        })
    }
}

impl Classifier for GroundModel {
    fn label(&self, demo: &Demonstration) -> Result<Label> {
        let accepted = match &demo.post {
            Some(next) => self.transition_member(&demo.pre, demo.action, next)?,
            None => self.is_applicable(&demo.pre, demo.action)?,
        };
        Ok(if accepted {
            Label::Positive
        } else {
            Label::Negative
        })
    }
}

pub fn extract_sound(universe: &FluentUniverse, spaces: &[ActionVersionSpace]) -> Result<SoundModel> {
    let mut actions = Vec::with_capacity(spaces.len());
    for space in spaces {
        let collapsed = |component| Error::CollapsedSpace {
            action: space.action().to_string(),
            component,
        };
        let pre = space
            .pre()
            .lower()
            .ok_or_else(|| collapsed(Component::Precondition))?;
        let eff = space.eff().lower().ok_or_else(|| collapsed(Component::Effect))?;
        if eff.has_conflict() {
            return Err(Error::InternalInvariantViolation(format!(
                "lower effect boundary of `{}` holds a conflicting pair",
                space.action()
            )));
        }
        actions.push(GroundAction {
            name: space.action().to_string(),
            pre: pre.clone(),
            eff: eff.clone(),
        });
    }
    GroundModel::new(universe.clone(), actions).map(SoundModel)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondetAction {
    pub name: String,
    /// Alternative preconditions; the action applies if any one holds.
    pub pre: Vec<LiteralSet>,
    pub eff_lower: LiteralSet,
    pub eff_upper: LiteralSet,
}

impl NondetAction {
    pub fn is_applicable(&self, s: &State) -> bool {
        self.pre.iter().any(|p| s.satisfies(p))
    }

    /// Whether some effect `e` with `eff_lower ⊆ e ⊆ eff_upper` maps `s` to
    /// `next`.
    ///
    /// `e` reaches `next` from `s` exactly when `next \ s ⊆ e ⊆ next`, so a
    /// witness exists iff `(next \ s) ∪ eff_lower ⊆ next ∩ eff_upper`.
    pub fn can_reach(&self, s: &State, next: &State) -> bool {
        let next = next.literals();
        let needed = next.difference(s.literals()).union(&self.eff_lower);
        needed.is_subset(&next.intersection(&self.eff_upper))
    }

    /// Number of effects in the interval, `2^|eff_upper \ eff_lower|`, if it
    /// fits in a `u128`.
    pub fn effect_count(&self) -> Option<u128> {
        let free = self.eff_upper.difference(&self.eff_lower).len();
        1u128.checked_shl(free as u32)
    }
}

/// Non-deterministic model with disjunctive preconditions and an interval of
/// effects per action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondetModel {
    universe: FluentUniverse,
    actions: Vec<NondetAction>,
}

impl NondetModel {
    pub fn new(universe: FluentUniverse, actions: Vec<NondetAction>) -> Result<Self> {
        for a in &actions {
            if a.pre.is_empty() || !a.eff_lower.is_subset(&a.eff_upper) {
                return Err(Error::InvalidArgument(format!(
                    "action `{}` needs a non-empty precondition set and eff_lower ⊆ eff_upper",
                    a.name
                )));
            }
            let n = universe.len();
            if a.eff_lower.fluent_count() != n
                || a.eff_upper.fluent_count() != n
                || a.pre.iter().any(|p| p.fluent_count() != n)
            {
                return Err(Error::UniverseMismatch);
            }
        }
        Ok(Self { universe, actions })
    }

    pub fn universe(&self) -> &FluentUniverse {
        &self.universe
    }

    pub fn actions(&self) -> &[NondetAction] {
        &self.actions
    }

    pub fn action(&self, id: ActionId) -> Result<&NondetAction> {
        self.actions
            .get(id)
            .ok_or_else(|| Error::UnknownAction(format!("#{id}")))
    }

    pub fn applicable(&self, s: &State, action: ActionId) -> Result<bool> {
        Ok(self.action(action)?.is_applicable(s))
    }

    pub fn transition_member(&self, s: &State, action: ActionId, next: &State) -> Result<bool> {
        let a = self.action(action)?;
        Ok(a.is_applicable(s) && a.can_reach(s, next))
    }

    /// All transitions, enumerating the `2^n × 2^n` state pairs.
    pub fn enumerate_transitions(&self, limit: EnumerationLimit) -> Result<BTreeSet<Transition>> {
        let n = self.universe.len();
        limit.check(n)?;
        let states: Vec<State> = (0..1u64 << n).map(|c| State::from_code(n, c)).collect();
        let mut out = BTreeSet::new();
        for (id, a) in self.actions.iter().enumerate() {
            for s in states.iter().filter(|s| a.is_applicable(s)) {
                for next in states.iter().filter(|t| a.can_reach(s, t)) {
                    out.insert(Transition {
                        pre: s.clone(),
                        action: id,
                        post: next.clone(),
                    });
                }
            }
        }
        Ok(out)
    }
}

impl Classifier for NondetModel {
    fn label(&self, demo: &Demonstration) -> Result<Label> {
        let accepted = match &demo.post {
            Some(next) => self.transition_member(&demo.pre, demo.action, next)?,
            None => self.applicable(&demo.pre, demo.action)?,
        };
        Ok(if accepted {
            Label::Positive
        } else {
            Label::Negative
        })
    }
}

pub fn extract_complete(universe: &FluentUniverse, spaces: &[ActionVersionSpace]) -> Result<NondetModel> {
    let mut actions = Vec::with_capacity(spaces.len());
    for space in spaces {
        let status = space.status();
        let collapsed = |component| Error::CollapsedSpace {
            action: space.action().to_string(),
            component,
        };
        if status.pre == ComponentStatus::Collapsed {
            return Err(collapsed(Component::Precondition));
        }
        let Some((lower, upper)) = space.eff().interval() else {
            return Err(collapsed(Component::Effect));
        };
        actions.push(NondetAction {
            name: space.action().to_string(),
            pre: space.pre().upper().to_vec(),
            eff_lower: lower.clone(),
            eff_upper: upper.clone(),
        });
    }
    NondetModel::new(universe.clone(), actions)
}

/// An initial state, a goal and a plan to check against them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanningQuery {
    pub initial: State,
    pub goal: LiteralSet,
    pub plan: Vec<ActionId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Valid,
    /// The 1-based step whose action was not applicable.
    FailsAt(usize),
    GoalUnmet,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Valid => f.write_str("VALID"),
            Verdict::FailsAt(step) => write!(f, "FAILS_AT({step})"),
            Verdict::GoalUnmet => f.write_str("GOAL_UNMET"),
        }
    }
}

/// Executes `query.plan` from `query.initial` and checks the goal.
pub fn validate_plan(model: &GroundModel, query: &PlanningQuery) -> Result<Verdict> {
    if query.goal.has_conflict() {
        return Err(Error::InvalidArgument("goal holds a conflicting pair".into()));
    }
    let mut state = query.initial.clone();
    for (step, &action) in query.plan.iter().enumerate() {
        match model.apply(&state, action)? {
            Some(next) => state = next,
            None => return Ok(Verdict::FailsAt(step + 1)),
        }
    }
    Ok(if state.satisfies(&query.goal) {
        Verdict::Valid
    } else {
        Verdict::GoalUnmet
    })
}
