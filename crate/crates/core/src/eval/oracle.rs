use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::literal::LiteralSet;
use crate::model::Demonstration;

/// Largest universe the brute-force oracle accepts.
pub const ORACLE_MAX_FLUENTS: usize = 3;

/// A `(precondition, effect)` candidate for one action.
pub type Hypothesis = (LiteralSet, LiteralSet);

fn subset_from_mask(n: usize, mask: u64) -> LiteralSet {
    let mut set = LiteralSet::empty(n);
    for i in 0..2 * n {
        if mask >> i & 1 == 1 {
            set.insert(crate::literal::Literal::from_index(i));
        }
    }
    set
}

/// Every `(pre, eff)` pair per action that agrees with all demonstrations,
/// found by checking each of the `2^(2n) × 2^(2n)` literal-set pairs directly:
/// a success needs `pre ⊆ s` and `s' = (s \ ¬eff) ∪ eff`; a failure needs
/// `pre ⊄ s`.
pub fn oracle_consistent_models(
    fluents: usize,
    actions: usize,
    demos: &[Demonstration],
) -> Result<Vec<BTreeSet<Hypothesis>>> {
    if fluents > ORACLE_MAX_FLUENTS {
        return Err(Error::UniverseTooLarge {
            fluents,
            limit: ORACLE_MAX_FLUENTS,
        });
    }
    if let Some(d) = demos.iter().find(|d| d.action >= actions) {
        return Err(Error::UnknownAction(format!("#{}", d.action)));
    }
    let candidates: Vec<LiteralSet> = (0..1u64 << (2 * fluents))
        .map(|m| subset_from_mask(fluents, m))
        .collect();
    let mut out = Vec::with_capacity(actions);
    for a in 0..actions {
        let mine: Vec<&Demonstration> = demos.iter().filter(|d| d.action == a).collect();
        let pres: Vec<&LiteralSet> = candidates
            .iter()
            .filter(|pre| {
                mine.iter().all(|d| {
                    let inside = pre.is_subset(d.pre.literals());
                    inside == d.post.is_some()
                })
            })
            .collect();
        let effs: Vec<&LiteralSet> = candidates
            .iter()
            .filter(|eff| {
                mine.iter().all(|d| match &d.post {
                    Some(next) => &d.pre.literals().apply_effect(eff) == next.literals(),
                    None => true,
                })
            })
            .collect();
        let mut pairs = BTreeSet::new();
        for pre in &pres {
            for eff in &effs {
                pairs.insert(((*pre).clone(), (*eff).clone()));
            }
        }
        out.push(pairs);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::literal::{FluentUniverse, State};

    #[test]
    fn nothing_observed() {
        let all = oracle_consistent_models(1, 2, &[]).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|s| s.len() == 16));
    }

    #[test]
    fn one_self_loop() {
        let u = FluentUniverse::new(["p"]).unwrap();
        let s = State::from_code(1, 1);
        let got = oracle_consistent_models(1, 1, &[Demonstration::positive(s.clone(), 0, s)]).unwrap();
        let sets = [u.literal_set([]).unwrap(), u.literal_set(["p"]).unwrap()];
        let want: BTreeSet<Hypothesis> = sets
            .iter()
            .flat_map(|a| sets.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        assert_eq!(got[0], want);
    }

    #[test]
    fn rejects_large_universe() {
        assert!(matches!(
            oracle_consistent_models(4, 1, &[]),
            Err(Error::UniverseTooLarge { fluents: 4, limit: 3 })
        ));
    }
}
