//! Fluents, literals and the bitset algebra shared by states and hypotheses.
//!
//! Literal `2·i` is the positive literal of fluent `i`, literal `2·i + 1` its
//! negation. Complementary literals therefore always share a storage word,
//! which lets [`LiteralSet::complement`] and the consistency checks work one
//! word at a time.

use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{Error, Result};

const WORD_BITS: usize = u64::BITS as usize;
/// Bits of the positive literals inside one word.
const POSITIVE_MASK: u64 = 0x5555_5555_5555_5555;

/// Ordered set of ground fluent names. Literal indices derive from this order,
/// so it never changes after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FluentUniverse {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl FluentUniverse {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateFluent(name.clone()));
            }
        }
        Ok(Self { names, index })
    }

    /// Number of fluents `n`; the literal universe has `2n` members.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, fluent: usize) -> &str {
        &self.names[fluent]
    }

    pub fn fluent(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Resolves a fluent name, failing with [`Error::UnknownFluent`].
    pub fn require(&self, name: &str) -> Result<usize> {
        self.fluent(name)
            .ok_or_else(|| Error::UnknownFluent(name.to_string()))
    }

    /// Renders a literal as a signed fluent name: `"p"` or `"!p"`.
    pub fn literal_name(&self, lit: Literal) -> String {
        if lit.is_positive() {
            self.names[lit.fluent()].clone()
        } else {
            format!("!{}", self.names[lit.fluent()])
        }
    }

    /// Inverse of [`FluentUniverse::literal_name`].
    pub fn parse_literal(&self, text: &str) -> Result<Literal> {
        match text.strip_prefix('!') {
            Some(name) => Ok(Literal::negative(self.require(name)?)),
            None => Ok(Literal::positive(self.require(text)?)),
        }
    }

    pub fn literal_set<'a, I>(&self, literals: I) -> Result<LiteralSet>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut set = LiteralSet::empty(self.len());
        for text in literals {
            set.insert(self.parse_literal(text)?);
        }
        Ok(set)
    }

    pub fn literal_names(&self, set: &LiteralSet) -> Vec<String> {
        set.iter().map(|l| self.literal_name(l)).collect()
    }

    /// Closed-world state from the names of the fluents that are true.
    pub fn state<'a, I>(&self, true_fluents: I) -> Result<State>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut fluents = Vec::new();
        for name in true_fluents {
            fluents.push(self.require(name)?);
        }
        Ok(State::from_true_fluents(self.len(), fluents))
    }

    pub fn true_fluent_names(&self, state: &State) -> Vec<String> {
        state.true_fluents().map(|f| self.names[f].clone()).collect()
    }

    /// The full literal universe `L`.
    pub fn all_literals(&self) -> LiteralSet {
        LiteralSet::full(self.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A fluent or its negation, stored as its literal index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(usize);

impl Literal {
    pub fn new(fluent: usize, polarity: Polarity) -> Self {
        match polarity {
            Polarity::Positive => Self(2 * fluent),
            Polarity::Negative => Self(2 * fluent + 1),
        }
    }

    pub fn positive(fluent: usize) -> Self {
        Self(2 * fluent)
    }

    pub fn negative(fluent: usize) -> Self {
        Self(2 * fluent + 1)
    }

    pub fn from_index(index: usize) -> Self {
        Self(index)
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn fluent(self) -> usize {
        self.0 / 2
    }

    pub fn polarity(self) -> Polarity {
        if self.0.is_multiple_of(2) {
            Polarity::Positive
        } else {
            Polarity::Negative
        }
    }

    pub fn is_positive(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// The complementary literal.
    pub fn negate(self) -> Self {
        Self(self.0 ^ 1)
    }
}

/// A subset of the literal universe of a fixed number of fluents.
///
/// Sets may hold both `f` and `¬f`; only [`State`] forbids that.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiteralSet {
    fluents: usize,
    words: Vec<u64>,
}

fn word_count(fluents: usize) -> usize {
    (2 * fluents).div_ceil(WORD_BITS)
}

impl LiteralSet {
    pub fn empty(fluents: usize) -> Self {
        Self {
            fluents,
            words: vec![0; word_count(fluents)],
        }
    }

    /// All `2n` literals.
    pub fn full(fluents: usize) -> Self {
        let mut set = Self {
            fluents,
            words: vec![u64::MAX; word_count(fluents)],
        };
        set.clear_tail();
        set
    }

    pub fn from_literals<I: IntoIterator<Item = Literal>>(fluents: usize, literals: I) -> Self {
        let mut set = Self::empty(fluents);
        for lit in literals {
            set.insert(lit);
        }
        set
    }

    fn clear_tail(&mut self) {
        let used = 2 * self.fluents % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    /// Number of fluents of the universe this set lives in.
    pub fn fluent_count(&self) -> usize {
        self.fluents
    }

    pub fn contains(&self, lit: Literal) -> bool {
        assert!(lit.fluent() < self.fluents, "literal out of range");
        self.words[lit.0 / WORD_BITS] & (1 << (lit.0 % WORD_BITS)) != 0
    }

    pub fn insert(&mut self, lit: Literal) -> bool {
        assert!(lit.fluent() < self.fluents, "literal out of range");
        let word = &mut self.words[lit.0 / WORD_BITS];
        let mask = 1 << (lit.0 % WORD_BITS);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    pub fn remove(&mut self, lit: Literal) -> bool {
        assert!(lit.fluent() < self.fluents, "literal out of range");
        let word = &mut self.words[lit.0 / WORD_BITS];
        let mask = 1 << (lit.0 % WORD_BITS);
        let present = *word & mask != 0;
        *word &= !mask;
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Literal> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(Literal(i * WORD_BITS + bit))
            })
        })
    }

    fn check_universe(&self, other: &Self) {
        assert_eq!(
            self.fluents, other.fluents,
            "literal sets from different universes"
        );
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        other.is_subset(self)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        self.check_universe(other);
        Self {
            fluents: self.fluents,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    /// `{l̄ | l ∈ self}`. Involutive.
    pub fn complement(&self) -> Self {
        Self {
            fluents: self.fluents,
            words: self
                .words
                .iter()
                .map(|&w| ((w & POSITIVE_MASK) << 1) | ((w >> 1) & POSITIVE_MASK))
                .collect(),
        }
    }

    /// True when some fluent appears with both polarities.
    pub fn has_conflict(&self) -> bool {
        self.words.iter().any(|&w| w & POSITIVE_MASK & (w >> 1) != 0)
    }

    /// `(self \ eff‾) ∪ eff`, evaluated on raw sets with no validity checks.
    ///
    /// This is the successor formula as a plain set expression; for a
    /// conflicting `eff` the result is not a state.
    pub fn apply_effect(&self, eff: &Self) -> Self {
        self.difference(&eff.complement()).union(eff)
    }

    fn is_total_assignment(&self) -> bool {
        self.words.iter().enumerate().all(|(i, &w)| {
            let pos = w & POSITIVE_MASK;
            let neg = (w >> 1) & POSITIVE_MASK;
            let used = (2 * self.fluents).saturating_sub(i * WORD_BITS).min(WORD_BITS);
            let expected = if used == WORD_BITS {
                POSITIVE_MASK
            } else {
                POSITIVE_MASK & ((1u64 << used) - 1)
            };
            pos & neg == 0 && pos ^ neg == expected
        })
    }
}

impl fmt::Debug for LiteralSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, lit) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if lit.is_positive() {
                write!(f, "{}", lit.fluent())?;
            } else {
                write!(f, "¬{}", lit.fluent())?;
            }
        }
        f.write_str("}")
    }
}

impl BitOr for &LiteralSet {
    type Output = LiteralSet;
    fn bitor(self, rhs: Self) -> LiteralSet {
        self.union(rhs)
    }
}

impl BitAnd for &LiteralSet {
    type Output = LiteralSet;
    fn bitand(self, rhs: Self) -> LiteralSet {
        self.intersection(rhs)
    }
}

impl Sub for &LiteralSet {
    type Output = LiteralSet;
    fn sub(self, rhs: Self) -> LiteralSet {
        self.difference(rhs)
    }
}

/// A total, consistent assignment: exactly one of `f`, `¬f` for every fluent.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State(LiteralSet);

impl State {
    pub fn new(set: LiteralSet) -> Result<Self> {
        if set.is_total_assignment() {
            Ok(Self(set))
        } else {
            Err(Error::InvalidState(format!("{set:?}")))
        }
    }

    /// Closed-world completion: listed fluents are true, every other one false.
    pub fn from_true_fluents<I: IntoIterator<Item = usize>>(fluents: usize, true_fluents: I) -> Self {
        let mut truth = vec![false; fluents];
        for f in true_fluents {
            truth[f] = true;
        }
        Self::from_bools(&truth)
    }

    pub fn from_bools(truth: &[bool]) -> Self {
        let mut set = LiteralSet::empty(truth.len());
        for (f, &value) in truth.iter().enumerate() {
            set.insert(if value {
                Literal::positive(f)
            } else {
                Literal::negative(f)
            });
        }
        Self(set)
    }

    /// State number `code` of the `2^n` states, bit `i` giving fluent `i`.
    pub fn from_code(fluents: usize, code: u64) -> Self {
        let truth: Vec<bool> = (0..fluents).map(|f| code >> f & 1 == 1).collect();
        Self::from_bools(&truth)
    }

    pub fn fluent_count(&self) -> usize {
        self.0.fluents
    }

    pub fn literals(&self) -> &LiteralSet {
        &self.0
    }

    pub fn into_literals(self) -> LiteralSet {
        self.0
    }

    pub fn value(&self, fluent: usize) -> bool {
        self.0.contains(Literal::positive(fluent))
    }

    pub fn true_fluents(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().filter(|l| l.is_positive()).map(Literal::fluent)
    }

    /// `pre ⊆ s`.
    pub fn satisfies(&self, pre: &LiteralSet) -> bool {
        pre.is_subset(&self.0)
    }

    /// `(s \ eff‾) ∪ eff`; rejects effects holding both `f` and `¬f`.
    pub fn successor(&self, eff: &LiteralSet) -> Result<State> {
        if eff.has_conflict() {
            return Err(Error::ConflictingEffect(format!("{eff:?}")));
        }
        Ok(State(self.0.apply_effect(eff)))
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "State{:?}", self.0)
    }
}

impl AsRef<LiteralSet> for State {
    fn as_ref(&self) -> &LiteralSet {
        &self.0
    }
}

/// `{l̄ | l ∈ x}`.
pub fn complement(x: &LiteralSet) -> LiteralSet {
    x.complement()
}

/// `pre ⊆ s`.
pub fn holds(pre: &LiteralSet, s: &State) -> bool {
    s.satisfies(pre)
}

/// `(s \ eff‾) ∪ eff`.
pub fn successor(s: &State, eff: &LiteralSet) -> Result<State> {
    s.successor(eff)
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

    fn state(u: &FluentUniverse, lits: &[&str]) -> State {
        State::new(set(u, lits)).unwrap()
    }

    #[test]
    fn duplicate_fluents_rejected() {
        assert!(matches!(
            FluentUniverse::new(["p", "p"]),
            Err(Error::DuplicateFluent(_))
        ));
    }

    #[test]
    fn complement_examples() {
        let u = pq();
        assert_eq!(complement(&LiteralSet::empty(2)), LiteralSet::empty(2));
        assert_eq!(complement(&set(&u, &["p", "!q"])), set(&u, &["!p", "q"]));
    }

    #[test]
    fn complement_of_state_is_opposite_state() {
        for code in 0..8 {
            let s = State::from_code(3, code);
            let opposite = State::from_code(3, !code & 0b111);
            assert_eq!(s.literals().complement(), *opposite.literals());
        }
    }

    #[test]
    fn holds_examples() {
        let u = pq();
        let s = state(&u, &["p", "!q"]);
        assert!(holds(&LiteralSet::empty(2), &s));
        assert!(holds(&set(&u, &["p"]), &s));
        let conflicting = set(&u, &["p", "!p"]);
        for code in 0..4 {
            assert!(!holds(&conflicting, &State::from_code(2, code)));
        }
    }

    #[test]
    fn successor_examples() {
        let u = pq();
        let s = state(&u, &["p", "!q"]);
        assert_eq!(successor(&s, &LiteralSet::empty(2)).unwrap(), s);
        assert_eq!(successor(&s, &set(&u, &["q"])).unwrap(), state(&u, &["p", "q"]));
        let eff = set(&u, &["p", "q"]);
        let next = successor(&s, &eff).unwrap();
        assert_eq!(next, state(&u, &["p", "q"]));
        // s' \ s = {q} ⊆ eff ⊆ s'
        let delta = next.literals() - s.literals();
        assert!(delta.is_subset(&eff) && eff.is_subset(next.literals()));
    }

    #[test]
    fn successor_rejects_conflicting_effect() {
        let u = pq();
        let s = state(&u, &["p", "!q"]);
        assert!(matches!(
            successor(&s, &set(&u, &["q", "!q"])),
            Err(Error::ConflictingEffect(_))
        ));
    }

    #[test]
    fn state_validation() {
        let u = pq();
        assert!(State::new(set(&u, &["p"])).is_err());
        assert!(State::new(set(&u, &["p", "!p", "q"])).is_err());
        assert!(State::new(set(&u, &["!p", "q"])).is_ok());
        // tail handling across a word boundary
        let wide = State::from_code(40, 0xdead_beef);
        assert!(State::new(wide.literals().clone()).is_ok());
        assert_eq!(wide.literals().len(), 40);
    }

    #[test]
    fn literal_names_round_trip() {
        let u = pq();
        let lits = set(&u, &["!p", "q"]);
        let names = u.literal_names(&lits);
        assert_eq!(names, vec!["!p".to_string(), "q".to_string()]);
        assert_eq!(u.literal_set(names.iter().map(String::as_str)).unwrap(), lits);
        assert!(matches!(u.parse_literal("!r"), Err(Error::UnknownFluent(_))));
    }

    #[test]
    fn full_set_spans_words() {
        for n in [0, 1, 31, 32, 33, 64, 65] {
            let full = LiteralSet::full(n);
            assert_eq!(full.len(), 2 * n);
            assert_eq!(full.complement(), full);
        }
    }
}
