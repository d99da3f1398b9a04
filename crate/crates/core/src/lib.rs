//! Version-space learning of ground STRIPS action models.
//!
//! Demonstrations `⟨s, a, s'⟩` and failures `⟨s, a, ⊥⟩` narrow, per action,
//! a version space of preconditions and one of effects ([`vspace`]). The
//! boundaries yield an optimal sound deterministic model and an optimal
//! complete non-deterministic model ([`extract`]), which [`eval`] scores
//! against held-out demonstrations.

pub mod bench;
pub mod error;
pub mod eval;
pub mod extract;
pub mod literal;
pub mod model;
pub mod pddl;
pub mod sim;
pub mod snapshot;
pub mod vspace;

pub use error::{Error, Result};
pub use extract::{
    extract_complete, extract_sound, validate_plan, Classifier, Label, NondetAction, NondetModel,
    PlanningQuery, SoundModel, Verdict,
};
pub use literal::{complement, holds, successor, FluentUniverse, Literal, LiteralSet, Polarity, State};
pub use model::{ActionId, Demonstration, EnumerationLimit, GroundAction, GroundModel, Transition};
pub use vspace::{
    learn, ActionVersionSpace, Component, ComponentStatus, EffectVs, LearnConfig, Learner, PreconditionVs,
    VsStatus,
};
