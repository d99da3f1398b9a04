#![allow(dead_code)]

use std::collections::BTreeSet;

use amvs_core::eval::Hypothesis;
use amvs_core::{
    ActionVersionSpace, Demonstration, FluentUniverse, GroundAction, GroundModel, Literal, LiteralSet, State,
    Transition,
};
use rand::Rng;

pub fn universe(n: usize) -> FluentUniverse {
    FluentUniverse::new((0..n).map(|i| format!("f{i}"))).unwrap()
}

/// All `2^(2n)` literal sets, conflicting ones included.
pub fn all_literal_sets(n: usize) -> Vec<LiteralSet> {
    (0..1u64 << (2 * n))
        .map(|mask| {
            LiteralSet::from_literals(
                n,
                (0..2 * n).filter(|i| mask >> i & 1 == 1).map(Literal::from_index),
            )
        })
        .collect()
}

pub fn all_states(n: usize) -> Vec<State> {
    (0..1u64 << n).map(|c| State::from_code(n, c)).collect()
}

pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> State {
    let truth: Vec<bool> = (0..n).map(|_| rng.random()).collect();
    State::from_bools(&truth)
}

/// Each fluent is absent, positive or negative with equal odds.
pub fn random_consistent_set<R: Rng>(rng: &mut R, n: usize) -> LiteralSet {
    let mut set = LiteralSet::empty(n);
    for f in 0..n {
        match rng.random_range(0..3) {
            0 => {}
            1 => {
                set.insert(Literal::positive(f));
            }
            _ => {
                set.insert(Literal::negative(f));
            }
        }
    }
    set
}

pub fn random_model<R: Rng>(rng: &mut R, n: usize, actions: usize) -> GroundModel {
    let acts = (0..actions)
        .map(|i| GroundAction {
            name: format!("a{i}"),
            pre: random_consistent_set(rng, n),
            eff: random_consistent_set(rng, n),
        })
        .collect();
    GroundModel::new(universe(n), acts).unwrap()
}

/// What the model does for `a` in `s`.
pub fn observe(model: &GroundModel, s: State, a: usize) -> Demonstration {
    match model.apply(&s, a).unwrap() {
        Some(next) => Demonstration::positive(s, a, next),
        None => Demonstration::negative(s, a),
    }
}

pub fn random_stream<R: Rng>(rng: &mut R, model: &GroundModel, len: usize) -> Vec<Demonstration> {
    let n = model.universe().len();
    let k = model.actions().len();
    (0..len)
        .map(|_| {
            let s = random_state(rng, n);
            let a = rng.random_range(0..k);
            observe(model, s, a)
        })
        .collect()
}

/// Every `(s, a)` pair of the model, successes and failures.
pub fn exhaustive_demos(model: &GroundModel) -> Vec<Demonstration> {
    let n = model.universe().len();
    let mut out = Vec::new();
    for s in all_states(n) {
        for a in 0..model.actions().len() {
            out.push(observe(model, s.clone(), a));
        }
    }
    out
}

/// Transitions of action `a` under hypothesis `(pre, eff)`, computed from the
/// raw update formula; a conflicting `eff` yields no valid successor.
pub fn hypothesis_transitions(n: usize, a: usize, (pre, eff): &Hypothesis) -> BTreeSet<Transition> {
    all_states(n)
        .into_iter()
        .filter(|s| pre.is_subset(s.literals()))
        .filter_map(|s| {
            let post = State::new(s.literals().apply_effect(eff)).ok()?;
            Some(Transition {
                pre: s,
                action: a,
                post,
            })
        })
        .collect()
}

/// `{(hp, he) | pre_member(hp) ∧ eff_member(he)}` by scanning all candidates.
pub fn boundary_members(space: &ActionVersionSpace, candidates: &[LiteralSet]) -> BTreeSet<Hypothesis> {
    let pres: Vec<&LiteralSet> = candidates.iter().filter(|h| space.pre_member(h)).collect();
    let effs: Vec<&LiteralSet> = candidates.iter().filter(|h| space.eff_member(h)).collect();
    let mut out = BTreeSet::new();
    for p in &pres {
        for e in &effs {
            out.insert(((*p).clone(), (*e).clone()));
        }
    }
    out
}

/// Checks the boundary identities relating the two spaces of one action.
pub fn check_boundary_identities(
    space: &ActionVersionSpace,
    last: Option<&Demonstration>,
) -> Result<(), String> {
    let pre = space.pre();
    let eff = space.eff();
    if let (Some(hp), Some((lo, hi))) = (pre.lower(), eff.interval()) {
        if lo != &hi.difference(hp) {
            return Err(format!("he_L != he_U \\ hp_L for {}", space.action()));
        }
        if !hi.difference(lo).is_subset(hp) {
            return Err(format!("he_U \\ he_L not within hp_L for {}", space.action()));
        }
    }
    if let Some(Demonstration {
        pre: s,
        post: Some(next),
        ..
    }) = last
    {
        if let Some((lo, hi)) = eff.interval() {
            for h in [lo, hi] {
                let diff = next.literals().difference(s.literals());
                let between = diff.is_subset(h) && h.is_subset(next.literals());
                let reaches = s.successor(h).map(|t| &t == next).unwrap_or(false);
                if !between || !reaches {
                    return Err(format!(
                        "effect boundary does not map the last demo for {}",
                        space.action()
                    ));
                }
            }
        }
    }
    Ok(())
}
