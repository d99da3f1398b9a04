//! JSON documents: learned-boundary snapshots, ground models and
//! non-deterministic models.
//!
//! Literals are written as signed fluent names (`"p"`, `"!p"`) in literal
//! index order; upper precondition boundaries are sorted, so writing a parsed
//! document reproduces it byte for byte.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extract::{NondetAction, NondetModel};
use crate::literal::{FluentUniverse, LiteralSet, State};
use crate::model::{GroundAction, GroundModel};
use crate::vspace::{ActionVersionSpace, EffectVs, Learner, PreconditionVs, VsStatus};

pub const SNAPSHOT_FORMAT: &str = "amvs-snapshot";
pub const SNAPSHOT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Snapshot {
    pub format: String,
    pub version: u32,
    pub fluents: Vec<String>,
    pub actions: IndexMap<String, SpaceRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceRecord {
    pub hp_lower: Option<Vec<String>>,
    pub upper: Vec<Vec<String>>,
    pub he_lower: Option<Vec<String>>,
    pub he_upper: Option<Vec<String>>,
    pub status: VsStatus,
    pub upper_size: usize,
    pub positives: u64,
    pub negatives: u64,
}

impl Snapshot {
    pub fn capture(learner: &Learner) -> Self {
        let universe = learner.universe();
        let names = |set: &LiteralSet| universe.literal_names(set);
        let actions = learner
            .spaces()
            .iter()
            .map(|space| {
                let record = SpaceRecord {
                    hp_lower: space.pre().lower().map(names),
                    upper: space.pre().upper().iter().map(names).collect(),
                    he_lower: space.eff().lower().map(names),
                    he_upper: space.eff().upper().map(names),
                    status: space.status(),
                    upper_size: space.pre().upper().len(),
                    positives: space.positives(),
                    negatives: space.negatives(),
                };
                (space.action().to_string(), record)
            })
            .collect();
        Self {
            format: SNAPSHOT_FORMAT.to_string(),
            version: SNAPSHOT_VERSION,
            fluents: universe.names().to_vec(),
            actions,
        }
    }

    /// Rebuilds the learner, checking the stored status against the
    /// boundaries.
    pub fn restore(&self) -> Result<Learner> {
        if self.format != SNAPSHOT_FORMAT || self.version != SNAPSHOT_VERSION {
            return Err(Error::Snapshot(format!(
                "unsupported document {} v{}",
                self.format, self.version
            )));
        }
        let universe = FluentUniverse::new(self.fluents.iter().cloned())?;
        let parse = |lits: &Vec<String>| universe.literal_set(lits.iter().map(String::as_str));
        let mut spaces = Vec::with_capacity(self.actions.len());
        for (name, record) in &self.actions {
            let pre = PreconditionVs::from_boundaries(
                record.hp_lower.as_ref().map(parse).transpose()?,
                record.upper.iter().map(parse).collect::<Result<_>>()?,
            );
            let eff = EffectVs::from_boundaries(
                record.he_lower.as_ref().map(parse).transpose()?,
                record.he_upper.as_ref().map(parse).transpose()?,
            );
            let space = ActionVersionSpace::from_parts(name, pre, eff, record.positives, record.negatives);
            if space.status() != record.status || space.pre().upper().len() != record.upper_size {
                return Err(Error::Snapshot(format!(
                    "stored status of `{name}` disagrees with its boundaries"
                )));
            }
            spaces.push(space);
        }
        Ok(Learner::from_spaces(universe, spaces))
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("snapshot serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Snapshot(e.to_string()))
    }
}

/// A ground model file, optionally carrying a planning problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub fluents: Vec<String>,
    pub actions: Vec<ActionRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionRecord {
    pub name: String,
    pub pre: Vec<String>,
    pub eff: Vec<String>,
}

impl ModelFile {
    pub fn from_model(model: &GroundModel) -> Self {
        let u = model.universe();
        Self {
            fluents: u.names().to_vec(),
            actions: model
                .actions()
                .iter()
                .map(|a| ActionRecord {
                    name: a.name.clone(),
                    pre: u.literal_names(&a.pre),
                    eff: u.literal_names(&a.eff),
                })
                .collect(),
            init: None,
            goal: None,
        }
    }

    pub fn with_problem(mut self, model: &GroundModel, init: &State, goal: &LiteralSet) -> Self {
        let u = model.universe();
        self.init = Some(u.true_fluent_names(init));
        self.goal = Some(u.literal_names(goal));
        self
    }

    pub fn model(&self) -> Result<GroundModel> {
        let universe = FluentUniverse::new(self.fluents.iter().cloned())?;
        let actions = self
            .actions
            .iter()
            .map(|a| {
                Ok(GroundAction {
                    name: a.name.clone(),
                    pre: universe.literal_set(a.pre.iter().map(String::as_str))?,
                    eff: universe.literal_set(a.eff.iter().map(String::as_str))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GroundModel::new(universe, actions)
    }

    pub fn initial_state(&self, universe: &FluentUniverse) -> Result<Option<State>> {
        self.init
            .as_ref()
            .map(|names| universe.state(names.iter().map(String::as_str)))
            .transpose()
    }

    pub fn goal(&self, universe: &FluentUniverse) -> Result<Option<LiteralSet>> {
        self.goal
            .as_ref()
            .map(|lits| universe.literal_set(lits.iter().map(String::as_str)))
            .transpose()
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("model serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Snapshot(e.to_string()))
    }
}

/// `{action: {pre_disjuncts, eff_lower, eff_upper}}`, plus the fluent list
/// needed to read it back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NondetFile {
    pub fluents: Vec<String>,
    pub actions: IndexMap<String, NondetRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NondetRecord {
    pub pre_disjuncts: Vec<Vec<String>>,
    pub eff_lower: Vec<String>,
    pub eff_upper: Vec<String>,
}

impl NondetFile {
    pub fn from_model(model: &NondetModel) -> Self {
        let u = model.universe();
        Self {
            fluents: u.names().to_vec(),
            actions: model
                .actions()
                .iter()
                .map(|a| {
                    (
                        a.name.clone(),
                        NondetRecord {
                            pre_disjuncts: a.pre.iter().map(|p| u.literal_names(p)).collect(),
                            eff_lower: u.literal_names(&a.eff_lower),
                            eff_upper: u.literal_names(&a.eff_upper),
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn model(&self) -> Result<NondetModel> {
        let universe = FluentUniverse::new(self.fluents.iter().cloned())?;
        let parse = |lits: &Vec<String>| universe.literal_set(lits.iter().map(String::as_str));
        let actions = self
            .actions
            .iter()
            .map(|(name, r)| {
                Ok(NondetAction {
                    name: name.clone(),
                    pre: r.pre_disjuncts.iter().map(parse).collect::<Result<_>>()?,
                    eff_lower: parse(&r.eff_lower)?,
                    eff_upper: parse(&r.eff_upper)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        NondetModel::new(universe, actions)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("model serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Snapshot(e.to_string()))
    }
}
