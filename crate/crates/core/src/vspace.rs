//! Per-action version spaces of preconditions and effects.
//!
//! Preconditions are ordered by reverse inclusion (the most specific
//! hypothesis is the largest literal set), effects by inclusion. The
//! precondition space is kept as a single lower hypothesis `hp_L` and an
//! antichain of upper hypotheses `U_p`; the effect space is always an
//! interval `[he_L, he_U]`.
//!
//! A positive demonstration `⟨s, a, s'⟩` runs, in this order:
//!
//! * RUP: drop every `u ∈ U_p` with `u ⊄ s`;
//! * ULP: `hp_L := hp_L ∩ s`;
//! * RLE: drop `he_L` if `he_L ⊄ s'`;
//! * ULE: `he_L := he_L ∪ (s' \ s)`;
//! * RUE: drop `he_U` if `s' \ s ⊄ he_U`;
//! * UUE: `he_U := he_U ∩ s'`.
//!
//! A negative demonstration `⟨s, a, ⊥⟩` runs RLP (drop `hp_L` if `hp_L ⊆ s`)
//! and then UUP, which specialises every `u ⊆ s` by one literal of
//! `hp_L \ s`, reading the `hp_L` from before RLP. Effects are untouched.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::literal::{FluentUniverse, Literal, LiteralSet, State};
use crate::model::{ActionId, Demonstration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Precondition,
    Effect,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Component::Precondition => "precondition",
            Component::Effect => "effect",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ComponentStatus {
    Open,
    Converged,
    Collapsed,
}

impl fmt::Display for ComponentStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentStatus::Open => "OPEN",
            ComponentStatus::Converged => "CONVERGED",
            ComponentStatus::Collapsed => "COLLAPSED",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VsStatus {
    pub pre: ComponentStatus,
    pub eff: ComponentStatus,
}

impl VsStatus {
    pub fn is_collapsed(&self) -> bool {
        self.pre == ComponentStatus::Collapsed || self.eff == ComponentStatus::Collapsed
    }

    pub fn is_converged(&self) -> bool {
        self.pre == ComponentStatus::Converged && self.eff == ComponentStatus::Converged
    }
}

/// Version space of one action's precondition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreconditionVs {
    lower: Option<LiteralSet>,
    upper: Vec<LiteralSet>,
}

impl PreconditionVs {
    /// The whole hypothesis space: `hp_L = L`, `U_p = {∅}`.
    pub fn new(fluents: usize) -> Self {
        Self {
            lower: Some(LiteralSet::full(fluents)),
            upper: vec![LiteralSet::empty(fluents)],
        }
    }

    /// Builds a space from stored boundaries. The upper boundary is
    /// re-minimised and sorted.
    pub fn from_boundaries(lower: Option<LiteralSet>, upper: Vec<LiteralSet>) -> Self {
        Self {
            lower,
            upper: minimize(upper),
        }
    }

    pub fn lower(&self) -> Option<&LiteralSet> {
        self.lower.as_ref()
    }

    pub fn upper(&self) -> &[LiteralSet] {
        &self.upper
    }

    /// `∃u ∈ U_p : u ⊆ h ⊆ hp_L`.
    pub fn contains(&self, h: &LiteralSet) -> bool {
        match &self.lower {
            Some(lower) => h.is_subset(lower) && self.upper.iter().any(|u| u.is_subset(h)),
            None => false,
        }
    }

    pub fn status(&self) -> ComponentStatus {
        let Some(lower) = &self.lower else {
            return ComponentStatus::Collapsed;
        };
        if !self.upper.iter().any(|u| u.is_subset(lower)) {
            ComponentStatus::Collapsed
        } else if self.upper.len() == 1 && self.upper[0] == *lower {
            ComponentStatus::Converged
        } else {
            ComponentStatus::Open
        }
    }

    fn observe_positive(&mut self, s: &State) {
        let s = s.literals();
        self.upper.retain(|u| u.is_subset(s));
        if let Some(lower) = &mut self.lower {
            lower.intersect_with(s);
        }
    }

    /// UUP's new upper boundary, computed without committing.
    ///
    /// The grown sets `u ∪ {l}` (`u ⊆ s`, `l ∉ s`) are pairwise incomparable,
    /// and a kept member `k ⊄ s` lies below `u ∪ {l}` only when `k \ s = {l}`
    /// and `k ∩ s ⊆ u`, so kept members are indexed by their one literal
    /// outside `s`.
    fn specialised_upper(&self, lower: &LiteralSet, s: &State) -> Vec<LiteralSet> {
        let s = s.literals();
        let (covered, kept): (Vec<&LiteralSet>, Vec<&LiteralSet>) =
            self.upper.iter().partition(|u| u.is_subset(s));
        let extensions: Vec<Literal> = lower.difference(s).iter().collect();

        let mut blockers: HashMap<Literal, Vec<LiteralSet>> = HashMap::new();
        for k in &kept {
            let outside = k.difference(s);
            if outside.len() == 1 {
                let lit = outside.iter().next().expect("one literal");
                blockers.entry(lit).or_default().push(k.intersection(s));
            }
        }
        let mut upper: Vec<LiteralSet> = kept.into_iter().cloned().collect();
        for u in covered {
            for &lit in &extensions {
                let blocked = blockers
                    .get(&lit)
                    .is_some_and(|inner| inner.iter().any(|k| k.is_subset(u)));
                if !blocked {
                    let mut grown = u.clone();
                    grown.insert(lit);
                    upper.push(grown);
                }
            }
        }
        upper.sort();
        upper
    }
}

/// Removes duplicates and non-minimal members; returns a sorted antichain.
fn minimize(mut sets: Vec<LiteralSet>) -> Vec<LiteralSet> {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut out: Vec<LiteralSet> = Vec::with_capacity(sets.len());
    for candidate in sets {
        if !out.iter().any(|m| m.is_subset(&candidate)) {
            out.push(candidate);
        }
    }
    out.sort();
    out
}

/// Version space of one action's effect: the interval `[he_L, he_U]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectVs {
    lower: Option<LiteralSet>,
    upper: Option<LiteralSet>,
}

impl EffectVs {
    /// The whole hypothesis space: `he_L = ∅`, `he_U = L`.
    pub fn new(fluents: usize) -> Self {
        Self {
            lower: Some(LiteralSet::empty(fluents)),
            upper: Some(LiteralSet::full(fluents)),
        }
    }

    pub fn from_boundaries(lower: Option<LiteralSet>, upper: Option<LiteralSet>) -> Self {
        Self { lower, upper }
    }

    pub fn lower(&self) -> Option<&LiteralSet> {
        self.lower.as_ref()
    }

    pub fn upper(&self) -> Option<&LiteralSet> {
        self.upper.as_ref()
    }

    /// Both boundaries, if the space has not collapsed.
    pub fn interval(&self) -> Option<(&LiteralSet, &LiteralSet)> {
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) if l.is_subset(u) => Some((l, u)),
            _ => None,
        }
    }

    /// `he_L ⊆ h ⊆ he_U`.
    pub fn contains(&self, h: &LiteralSet) -> bool {
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) => l.is_subset(h) && h.is_subset(u),
            _ => false,
        }
    }

    pub fn status(&self) -> ComponentStatus {
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) if l == u => ComponentStatus::Converged,
            (Some(l), Some(u)) if l.is_subset(u) => ComponentStatus::Open,
            _ => ComponentStatus::Collapsed,
        }
    }

    fn observe(&mut self, s: &State, next: &State) {
        let next = next.literals();
        let delta = next.difference(s.literals());
        // RLE, ULE
        if self.lower.as_ref().is_some_and(|l| !l.is_subset(next)) {
            self.lower = None;
        }
        if let Some(lower) = &mut self.lower {
            lower.union_with(&delta);
        }
        // RUE, UUE
        if self.upper.as_ref().is_some_and(|u| !delta.is_subset(u)) {
            self.upper = None;
        }
        if let Some(upper) = &mut self.upper {
            upper.intersect_with(next);
        }
    }
}

/// Learner settings.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LearnConfig {
    /// Maximum size of any `U_p`; `None` means unbounded.
    pub max_upper: Option<usize>,
}

/// Both version spaces of one action plus demonstration counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionVersionSpace {
    action: String,
    pre: PreconditionVs,
    eff: EffectVs,
    positives: u64,
    negatives: u64,
}

impl ActionVersionSpace {
    pub fn init(universe: &FluentUniverse, action: impl Into<String>) -> Self {
        Self {
            action: action.into(),
            pre: PreconditionVs::new(universe.len()),
            eff: EffectVs::new(universe.len()),
            positives: 0,
            negatives: 0,
        }
    }

    pub fn from_parts(
        action: impl Into<String>,
        pre: PreconditionVs,
        eff: EffectVs,
        positives: u64,
        negatives: u64,
    ) -> Self {
        Self {
            action: action.into(),
            pre,
            eff,
            positives,
            negatives,
        }
    }

    pub fn action(&self) -> &str {
        &self.action
    }

    pub fn pre(&self) -> &PreconditionVs {
        &self.pre
    }

    pub fn eff(&self) -> &EffectVs {
        &self.eff
    }

    pub fn positives(&self) -> u64 {
        self.positives
    }

    pub fn negatives(&self) -> u64 {
        self.negatives
    }

    pub fn status(&self) -> VsStatus {
        VsStatus {
            pre: self.pre.status(),
            eff: self.eff.status(),
        }
    }

    pub fn pre_member(&self, h: &LiteralSet) -> bool {
        self.pre.contains(h)
    }

    pub fn eff_member(&self, h: &LiteralSet) -> bool {
        self.eff.contains(h)
    }

    fn reject_if_collapsed(&self, component: Component) -> Result<()> {
        let status = match component {
            Component::Precondition => self.pre.status(),
            Component::Effect => self.eff.status(),
        };
        if status == ComponentStatus::Collapsed {
            Err(Error::UpdateAfterCollapse {
                action: self.action.clone(),
                component,
            })
        } else {
            Ok(())
        }
    }

    /// Applies RUP, ULP, RLE, ULE, RUE and UUE for `⟨s, a, s'⟩`.
    pub fn observe_positive(&mut self, s: &State, next: &State) -> Result<()> {
        self.reject_if_collapsed(Component::Precondition)?;
        self.reject_if_collapsed(Component::Effect)?;
        self.pre.observe_positive(s);
        self.eff.observe(s, next);
        self.positives += 1;
        Ok(())
    }

    /// Applies RLP and UUP for `⟨s, a, ⊥⟩`.
    pub fn observe_negative(&mut self, s: &State) -> Result<()> {
        self.observe_negative_with(s, LearnConfig::default())
    }

    pub fn observe_negative_with(&mut self, s: &State, config: LearnConfig) -> Result<()> {
        let Some(lower) = self.pre.lower.clone() else {
            return Err(Error::NegativeWithEmptyLower {
                action: self.action.clone(),
            });
        };
        self.reject_if_collapsed(Component::Precondition)?;
        let upper = self.pre.specialised_upper(&lower, s);
        if let Some(limit) = config.max_upper {
            if upper.len() > limit {
                return Err(Error::UpperBoundaryLimit {
                    action: self.action.clone(),
                    size: upper.len(),
                    limit,
                });
            }
        }
        if lower.is_subset(s.literals()) {
            self.pre.lower = None;
        }
        self.pre.upper = upper;
        self.negatives += 1;
        Ok(())
    }
}

/// Online learner over a fixed fluent universe and action catalog.
#[derive(Debug, Clone)]
pub struct Learner {
    universe: FluentUniverse,
    spaces: Vec<ActionVersionSpace>,
    config: LearnConfig,
    observed: usize,
}

impl Learner {
    pub fn new<I, S>(universe: FluentUniverse, actions: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let spaces = actions
            .into_iter()
            .map(|a| ActionVersionSpace::init(&universe, a))
            .collect();
        Self {
            universe,
            spaces,
            config: LearnConfig::default(),
            observed: 0,
        }
    }

    pub fn with_config(mut self, config: LearnConfig) -> Self {
        self.config = config;
        self
    }

    /// Restores a learner from previously computed spaces.
    pub fn from_spaces(universe: FluentUniverse, spaces: Vec<ActionVersionSpace>) -> Self {
        Self {
            universe,
            spaces,
            config: LearnConfig::default(),
            observed: 0,
        }
    }

    pub fn universe(&self) -> &FluentUniverse {
        &self.universe
    }

    pub fn spaces(&self) -> &[ActionVersionSpace] {
        &self.spaces
    }

    pub fn space(&self, action: ActionId) -> Result<&ActionVersionSpace> {
        self.spaces
            .get(action)
            .ok_or_else(|| Error::UnknownAction(format!("#{action}")))
    }

    pub fn action_id(&self, name: &str) -> Result<ActionId> {
        self.spaces
            .iter()
            .position(|s| s.action == name)
            .ok_or_else(|| Error::UnknownAction(name.to_string()))
    }

    /// Number of demonstrations consumed through [`Learner::observe`].
    pub fn observed(&self) -> usize {
        self.observed
    }

    pub fn observe(&mut self, demo: &Demonstration) -> Result<()> {
        let index = self.observed;
        self.apply(demo).map_err(|e| Error::at(index, e))?;
        self.observed += 1;
        Ok(())
    }

    fn apply(&mut self, demo: &Demonstration) -> Result<()> {
        let n = self.universe.len();
        let config = self.config;
        let space = self
            .spaces
            .get_mut(demo.action)
            .ok_or_else(|| Error::UnknownAction(format!("#{}", demo.action)))?;
        if demo.pre.fluent_count() != n || demo.post.as_ref().is_some_and(|s| s.fluent_count() != n) {
            return Err(Error::UniverseMismatch);
        }
        match &demo.post {
            Some(next) => space.observe_positive(&demo.pre, next),
            None => space.observe_negative_with(&demo.pre, config),
        }
    }

    pub fn observe_all<'a, I>(&mut self, demos: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a Demonstration>,
    {
        for demo in demos {
            self.observe(demo)?;
        }
        Ok(())
    }

    pub fn any_collapsed(&self) -> bool {
        self.spaces.iter().any(|s| s.status().is_collapsed())
    }

    pub fn into_spaces(self) -> Vec<ActionVersionSpace> {
        self.spaces
    }
}

/// Initialises every action and runs the online loop over `demos` in order.
pub fn learn<I, S>(universe: FluentUniverse, actions: I, demos: &[Demonstration]) -> Result<Learner>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut learner = Learner::new(universe, actions);
    learner.observe_all(demos)?;
    Ok(learner)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq() -> FluentUniverse {
        FluentUniverse::new(["p", "q"]).unwrap()
    }

    fn set(u: &FluentUniverse, lits: &[&str]) -> LiteralSet {
        u.literal_set(lits.iter().copied()).unwrap()
    }

    fn st(u: &FluentUniverse, lits: &[&str]) -> State {
        State::new(set(u, lits)).unwrap()
    }

    fn all_hypotheses(n: usize) -> impl Iterator<Item = LiteralSet> {
        (0u64..1 << (2 * n)).map(move |bits| {
            LiteralSet::from_literals(
                n,
                (0..2 * n).filter(|i| bits >> i & 1 == 1).map(Literal::from_index),
            )
        })
    }

    #[test]
    fn init_boundaries() {
        let u = pq();
        let vs = ActionVersionSpace::init(&u, "a");
        assert_eq!(vs.pre().lower(), Some(&set(&u, &["p", "!p", "q", "!q"])));
        assert_eq!(vs.pre().upper(), &[LiteralSet::empty(2)]);
        assert_eq!(vs.eff().lower(), Some(&LiteralSet::empty(2)));
        assert_eq!(vs.eff().upper(), Some(&set(&u, &["p", "!p", "q", "!q"])));
        assert_eq!(
            vs.status(),
            VsStatus {
                pre: ComponentStatus::Open,
                eff: ComponentStatus::Open
            }
        );
        assert_eq!(all_hypotheses(2).filter(|h| vs.pre_member(h)).count(), 16);
        assert_eq!(all_hypotheses(2).filter(|h| vs.eff_member(h)).count(), 16);
    }

    #[test]
    fn positive_updates() {
        let u = pq();
        let mut vs = ActionVersionSpace::init(&u, "a");
        vs.observe_positive(&st(&u, &["p", "!q"]), &st(&u, &["p", "q"]))
            .unwrap();
        assert_eq!(vs.pre().lower(), Some(&set(&u, &["p", "!q"])));
        assert_eq!(vs.pre().upper(), &[LiteralSet::empty(2)]);
        assert_eq!(vs.eff().lower(), Some(&set(&u, &["q"])));
        assert_eq!(vs.eff().upper(), Some(&set(&u, &["p", "q"])));

        vs.observe_positive(&st(&u, &["p", "q"]), &st(&u, &["p", "q"]))
            .unwrap();
        assert_eq!(vs.pre().lower(), Some(&set(&u, &["p"])));
        assert_eq!(vs.eff().lower(), Some(&set(&u, &["q"])));
        assert_eq!(vs.eff().upper(), Some(&set(&u, &["p", "q"])));
        assert!(vs.pre_member(&set(&u, &["p"])));
        assert!(!vs.pre_member(&set(&u, &["q"])));
        assert!(vs.eff_member(&set(&u, &["q"])));
        assert!(vs.eff_member(&set(&u, &["p", "q"])));
        assert!(!vs.eff_member(&LiteralSet::empty(2)));
        assert_eq!(vs.positives(), 2);
    }

    #[test]
    fn nondeterministic_truth_collapses_effects() {
        let u = pq();
        let mut vs = ActionVersionSpace::init(&u, "a");
        vs.observe_positive(&st(&u, &["p", "!q"]), &st(&u, &["p", "q"]))
            .unwrap();
        vs.observe_positive(&st(&u, &["p", "!q"]), &st(&u, &["!p", "q"]))
            .unwrap();
        assert_eq!(vs.status().eff, ComponentStatus::Collapsed);
        assert_eq!(vs.eff().upper(), None);
        assert!(matches!(
            vs.observe_positive(&st(&u, &["p", "q"]), &st(&u, &["p", "q"])),
            Err(Error::UpdateAfterCollapse {
                component: Component::Effect,
                ..
            })
        ));
        // negatives only touch the precondition space
        vs.observe_negative(&st(&u, &["!p", "!q"])).unwrap();
    }

    #[test]
    fn negative_converges_precondition() {
        let u = pq();
        let mut vs = ActionVersionSpace::from_parts(
            "a",
            PreconditionVs::from_boundaries(Some(set(&u, &["p"])), vec![LiteralSet::empty(2)]),
            EffectVs::new(2),
            1,
            0,
        );
        vs.observe_negative(&st(&u, &["!p", "q"])).unwrap();
        assert_eq!(vs.pre().lower(), Some(&set(&u, &["p"])));
        assert_eq!(vs.pre().upper(), &[set(&u, &["p"])]);
        assert_eq!(vs.status().pre, ComponentStatus::Converged);
    }

    #[test]
    fn negative_from_init() {
        let u = pq();
        let mut vs = ActionVersionSpace::init(&u, "a");
        vs.observe_negative(&st(&u, &["p", "q"])).unwrap();
        assert_eq!(vs.pre().lower(), Some(&u.all_literals()));
        let mut expected = vec![set(&u, &["!p"]), set(&u, &["!q"])];
        expected.sort();
        assert_eq!(vs.pre().upper(), expected.as_slice());
        assert_eq!(vs.eff(), &EffectVs::new(2));
    }

    #[test]
    fn negative_inside_lower_collapses() {
        let u = pq();
        let mut vs = ActionVersionSpace::from_parts(
            "a",
            PreconditionVs::from_boundaries(Some(set(&u, &["p"])), vec![LiteralSet::empty(2)]),
            EffectVs::new(2),
            1,
            0,
        );
        vs.observe_negative(&st(&u, &["p", "q"])).unwrap();
        assert_eq!(vs.pre().lower(), None);
        assert_eq!(vs.status().pre, ComponentStatus::Collapsed);
        assert!(matches!(
            vs.observe_negative(&st(&u, &["!p", "q"])),
            Err(Error::NegativeWithEmptyLower { .. })
        ));
        assert!(matches!(
            vs.observe_positive(&st(&u, &["p", "q"]), &st(&u, &["p", "q"])),
            Err(Error::UpdateAfterCollapse {
                component: Component::Precondition,
                ..
            })
        ));
    }

    #[test]
    fn status_examples() {
        let u = pq();
        let pre = PreconditionVs::from_boundaries(Some(set(&u, &["p"])), vec![set(&u, &["p"])]);
        assert_eq!(pre.status(), ComponentStatus::Converged);
        let eff = EffectVs::from_boundaries(Some(set(&u, &["q"])), Some(set(&u, &["q"])));
        assert_eq!(eff.status(), ComponentStatus::Converged);
        let eff = EffectVs::from_boundaries(Some(set(&u, &["q"])), Some(set(&u, &["p"])));
        assert_eq!(eff.status(), ComponentStatus::Collapsed);
        let pre = PreconditionVs::from_boundaries(Some(set(&u, &["p"])), vec![]);
        assert_eq!(pre.status(), ComponentStatus::Collapsed);
    }

    #[test]
    fn upper_limit_rejects_without_committing() {
        let u = pq();
        let mut vs = ActionVersionSpace::init(&u, "a");
        let err = vs
            .observe_negative_with(&st(&u, &["p", "q"]), LearnConfig { max_upper: Some(1) })
            .unwrap_err();
        assert!(matches!(err, Error::UpperBoundaryLimit { size: 2, .. }));
        assert_eq!(vs, ActionVersionSpace::init(&u, "a"));
    }

    #[test]
    fn minimize_prunes_supersets_and_duplicates() {
        let u = FluentUniverse::new(["p", "q", "r"]).unwrap();
        let out = minimize(vec![
            set(&u, &["p", "q"]),
            set(&u, &["p"]),
            set(&u, &["p"]),
            set(&u, &["q", "r"]),
            set(&u, &["q", "r", "!p"]),
        ]);
        let mut expected = vec![set(&u, &["p"]), set(&u, &["q", "r"])];
        expected.sort();
        assert_eq!(out, expected);
    }

    #[test]
    fn learner_reports_demo_index() {
        let u = pq();
        let demos = vec![
            Demonstration::positive(st(&u, &["p", "!q"]), 0, st(&u, &["p", "q"])),
            Demonstration::positive(st(&u, &["p", "!q"]), 0, st(&u, &["!p", "q"])),
            Demonstration::positive(st(&u, &["p", "q"]), 0, st(&u, &["p", "q"])),
        ];
        let err = learn(u.clone(), ["a"], &demos).unwrap_err();
        assert!(matches!(err, Error::AtDemonstration { index: 2, .. }));
        assert!(matches!(err.root(), Error::UpdateAfterCollapse { .. }));

        let bad = [Demonstration::negative(st(&u, &["p", "q"]), 4)];
        assert!(matches!(
            learn(u, ["a"], &bad).unwrap_err().root(),
            Error::UnknownAction(_)
        ));
    }

    #[test]
    fn empty_stream_leaves_init() {
        let u = pq();
        let learner = learn(u.clone(), ["a", "b"], &[]).unwrap();
        for space in learner.spaces() {
            assert_eq!(space.pre(), &PreconditionVs::new(2));
            assert_eq!(space.eff(), &EffectVs::new(2));
        }
    }
}
