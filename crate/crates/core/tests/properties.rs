mod common;

use std::collections::BTreeSet;

use amvs_core::eval::oracle_consistent_models;
use amvs_core::pddl::{read_trace, write_trace, TraceHeader};
use amvs_core::sim::{simulate, SimConfig};
use amvs_core::snapshot::Snapshot;
use amvs_core::{
    extract_complete, extract_sound, learn, EnumerationLimit, Learner, LiteralSet, NondetAction, State,
    Transition,
};
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn names(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("a{i}")).collect()
}

#[test]
fn successor_iff_between_for_conflict_free_effects() {
    for n in 1..=3 {
        let states = all_states(n);
        for h in all_literal_sets(n).iter().filter(|h| !h.has_conflict()) {
            for s in &states {
                for t in &states {
                    let diff = t.literals().difference(s.literals());
                    let between = diff.is_subset(h) && h.is_subset(t.literals());
                    assert_eq!(between, &s.successor(h).unwrap() == t);
                }
            }
        }
    }
}

#[test]
fn complement_of_gain_is_loss() {
    let states = all_states(3);
    for s in &states {
        for t in &states {
            let gain = t.literals().difference(s.literals());
            assert_eq!(gain.complement(), s.literals().difference(t.literals()));
        }
    }
}

#[test]
fn interval_membership_matches_enumeration() {
    for n in 1..=3 {
        let sets: Vec<LiteralSet> = all_literal_sets(n);
        let states = all_states(n);
        for lower in &sets {
            for upper in sets.iter().filter(|u| lower.is_subset(u)) {
                let action = NondetAction {
                    name: "a".into(),
                    pre: vec![LiteralSet::empty(n)],
                    eff_lower: lower.clone(),
                    eff_upper: upper.clone(),
                };
                let effects: Vec<&LiteralSet> = sets
                    .iter()
                    .filter(|e| lower.is_subset(e) && e.is_subset(upper))
                    .collect();
                for s in &states {
                    for t in &states {
                        let brute = effects
                            .iter()
                            .any(|e| State::new(s.literals().apply_effect(e)).ok().as_ref() == Some(t));
                        assert_eq!(action.can_reach(s, t), brute, "n={n} {lower:?} {upper:?}");
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundaries_match_oracle(seed: u64, n in 1usize..=3, k in 1usize..=3, len in 0usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let truth = random_model(&mut rng, n, k);
        let demos = random_stream(&mut rng, &truth, len);
        let learner = learn(universe(n), names(k), &demos).unwrap();
        let oracle = oracle_consistent_models(n, k, &demos).unwrap();
        let candidates = all_literal_sets(n);
        for (a, space) in learner.spaces().iter().enumerate() {
            prop_assert_eq!(&boundary_members(space, &candidates), &oracle[a]);
        }
    }

    #[test]
    fn extracted_models_bound_the_truth(seed: u64, n in 1usize..=4, k in 1usize..=3, len in 0usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let truth = random_model(&mut rng, n, k);
        let demos = random_stream(&mut rng, &truth, len);
        let learner = learn(universe(n), names(k), &demos).unwrap();
        let limit = EnumerationLimit::default();
        let sound = extract_sound(learner.universe(), learner.spaces()).unwrap().enumerate_transitions(limit).unwrap();
        let complete = extract_complete(learner.universe(), learner.spaces()).unwrap();
        let real = truth.enumerate_transitions(limit).unwrap();
        prop_assert!(sound.is_subset(&real));
        for t in &real {
            prop_assert!(complete.transition_member(&t.pre, t.action, &t.post).unwrap());
        }
    }

    #[test]
    fn order_does_not_matter(seed: u64, n in 1usize..=5, k in 1usize..=3, len in 0usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let truth = random_model(&mut rng, n, k);
        let mut demos = random_stream(&mut rng, &truth, len);
        let first = learn(universe(n), names(k), &demos).unwrap().into_spaces();
        demos.shuffle(&mut rng);
        let second = learn(universe(n), names(k), &demos).unwrap().into_spaces();
        for (x, y) in first.iter().zip(&second) {
            prop_assert_eq!(x.pre(), y.pre());
            prop_assert_eq!(x.eff(), y.eff());
        }
    }

    #[test]
    fn identities_hold_after_each_update(seed: u64, n in 1usize..=8, k in 1usize..=3, len in 1usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let truth = random_model(&mut rng, n, k);
        let demos = random_stream(&mut rng, &truth, len);
        let mut learner = Learner::new(universe(n), names(k));
        for d in &demos {
            learner.observe(d).unwrap();
            let space = learner.space(d.action).unwrap();
            check_boundary_identities(space, Some(d)).map_err(TestCaseError::fail)?;
        }
    }

    #[test]
    fn snapshot_round_trip(seed: u64, n in 1usize..=6, k in 1usize..=3, len in 0usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let truth = random_model(&mut rng, n, k);
        let demos = random_stream(&mut rng, &truth, len);
        let learner = learn(universe(n), names(k), &demos).unwrap();
        let json = Snapshot::capture(&learner).to_json();
        let back = Snapshot::from_json(&json).unwrap().restore().unwrap();
        prop_assert_eq!(learner.spaces(), back.spaces());
        prop_assert_eq!(Snapshot::capture(&back).to_json(), json);
    }

    #[test]
    fn simulated_demos_follow_the_model(seed: u64, n in 1usize..=5, ratio in 0.0f64..3.0, dedupe: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let truth = random_model(&mut rng, n, 3);
        let start = random_state(&mut rng, n);
        let cfg = SimConfig { seed, length: 15, restarts: 2, ratio, dedupe };
        let sim = simulate(&truth, &start, &cfg).unwrap();
        let visited: BTreeSet<State> = sim
            .positives
            .iter()
            .flat_map(|d| [d.pre.clone(), d.post.clone().unwrap()])
            .collect();
        for d in &sim.positives {
            prop_assert!(truth.transition_member(&d.pre, d.action, d.post.as_ref().unwrap()).unwrap());
        }
        for d in &sim.negatives {
            prop_assert!(!truth.is_applicable(&d.pre, d.action).unwrap());
            prop_assert!(visited.contains(&d.pre));
        }
        if sim.warnings.is_empty() {
            prop_assert_eq!(sim.negatives.len(), amvs_core::sim::negative_count(ratio, sim.positives.len()));
        }
        prop_assert_eq!(simulate(&truth, &start, &cfg).unwrap(), sim);
    }
}

#[test]
fn trace_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let truth = random_model(&mut rng, 6, 3);
    let demos = random_stream(&mut rng, &truth, 100);
    let header = TraceHeader::for_model(&truth);
    let mut buf = Vec::new();
    write_trace(&mut buf, &header, &demos).unwrap();
    let back = read_trace(buf.as_slice()).unwrap();
    assert_eq!(back.demos, demos);
    back.check_against(&truth).unwrap();
}

#[test]
fn exhaustive_data_recovers_the_truth() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let truth = random_model(&mut rng, 3, 2);
        let learner = learn(universe(3), names(2), &exhaustive_demos(&truth)).unwrap();
        let sound = extract_sound(learner.universe(), learner.spaces()).unwrap();
        let limit = EnumerationLimit::default();
        let want: BTreeSet<Transition> = truth.enumerate_transitions(limit).unwrap();
        assert_eq!(sound.enumerate_transitions(limit).unwrap(), want);
        let complete = extract_complete(learner.universe(), learner.spaces()).unwrap();
        assert_eq!(complete.enumerate_transitions(limit).unwrap(), want);
    }
}
