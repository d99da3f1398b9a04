use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use super::ast::{AtomLiteral, LiftedDomain, ProblemInstance, TypedName};
use super::PddlError;
use crate::literal::{FluentUniverse, Literal, LiteralSet, State};
use crate::model::{GroundAction, GroundModel};

/// Ground actions dropped during grounding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroundWarning {
    ConflictingGroundEffect { action: String },
    ConflictingGroundPrecondition { action: String },
}

impl std::fmt::Display for GroundWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroundWarning::ConflictingGroundEffect { action } => {
                write!(f, "dropped `{action}`: conflicting effect")
            }
            GroundWarning::ConflictingGroundPrecondition { action } => {
                write!(f, "dropped `{action}`: conflicting precondition")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Grounded {
    pub model: GroundModel,
    pub initial: State,
    pub goal: LiteralSet,
    pub warnings: Vec<GroundWarning>,
}

fn fluent_name(predicate: &str, args: &[String]) -> String {
    let mut name = predicate.to_string();
    for a in args {
        name.push(' ');
        name.push_str(a);
    }
    name
}

/// Every tuple of `candidates[0] × candidates[1] × …`, in lexicographic order.
fn bindings<'a>(candidates: &[Vec<&'a str>]) -> Vec<Vec<&'a str>> {
    if candidates.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cursor = vec![0usize; candidates.len()];
    loop {
        out.push(cursor.iter().zip(candidates).map(|(&i, c)| c[i]).collect());
        let mut pos = candidates.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            cursor[pos] += 1;
            if cursor[pos] < candidates[pos].len() {
                break;
            }
            cursor[pos] = 0;
        }
    }
}

struct Objects<'a> {
    sorted: Vec<&'a TypedName>,
    types: HashMap<&'a str, &'a str>,
}

impl<'a> Objects<'a> {
    fn of_type(&self, dom: &LiftedDomain, ty: &str) -> Vec<&'a str> {
        self.sorted
            .iter()
            .filter(|o| dom.is_subtype(&o.ty, ty))
            .map(|o| o.name.as_str())
            .collect()
    }
}

/// Instantiates every predicate and schema over the typed objects.
///
/// Fluents and actions come out sorted by name, then arguments. Ground
/// actions whose precondition or effect holds both `f` and `¬f` are dropped
/// and reported in [`Grounded::warnings`].
pub fn ground(dom: &LiftedDomain, prob: &ProblemInstance) -> Result<Grounded, PddlError> {
    if !prob.domain.is_empty() && prob.domain != dom.name {
        return Err(PddlError::Type(format!(
            "problem is for domain `{}`, not `{}`",
            prob.domain, dom.name
        )));
    }
    let parents = dom.type_parents();
    let mut types = HashMap::new();
    for o in dom.constants.iter().chain(&prob.objects) {
        if !parents.contains_key(o.ty.as_str()) {
            return Err(PddlError::Type(format!(
                "object `{}` has unknown type `{}`",
                o.name, o.ty
            )));
        }
        if let Some(prev) = types.insert(o.name.as_str(), o.ty.as_str()) {
            if prev != o.ty {
                return Err(PddlError::Type(format!("object `{}` declared twice", o.name)));
            }
        }
    }
    let mut sorted: Vec<&TypedName> = dom.constants.iter().chain(&prob.objects).collect();
    sorted.sort_by(|a, b| a.name.cmp(&b.name));
    sorted.dedup_by(|a, b| a.name == b.name);
    let objects = Objects { sorted, types };

    let mut fluents: Vec<(String, Vec<String>)> = Vec::new();
    for p in &dom.predicates {
        let candidates: Vec<Vec<&str>> = p.params.iter().map(|t| objects.of_type(dom, &t.ty)).collect();
        for args in bindings(&candidates) {
            fluents.push((p.name.clone(), args.into_iter().map(str::to_string).collect()));
        }
    }
    fluents.sort();
    let universe = FluentUniverse::new(fluents.iter().map(|(p, a)| fluent_name(p, a)))?;

    let resolve = |lit: &AtomLiteral, binding: &HashMap<&str, &str>| -> Result<Literal, PddlError> {
        let args: Vec<String> = lit
            .args
            .iter()
            .map(|a| binding.get(a.as_str()).map_or(a.clone(), |o| o.to_string()))
            .collect();
        let name = fluent_name(&lit.predicate, &args);
        let f = universe
            .fluent(&name)
            .ok_or_else(|| PddlError::Type(format!("ill-typed or unknown atom `({name})`")))?;
        Ok(if lit.positive {
            Literal::positive(f)
        } else {
            Literal::negative(f)
        })
    };

    let mut schemas: Vec<_> = dom.actions.iter().collect();
    schemas.sort_by(|a, b| a.name.cmp(&b.name));
    let mut actions = Vec::new();
    let mut warnings = Vec::new();
    for schema in schemas {
        let candidates: Vec<Vec<&str>> = schema
            .params
            .iter()
            .map(|t| objects.of_type(dom, &t.ty))
            .collect();
        for args in bindings(&candidates) {
            let binding: HashMap<&str, &str> = schema
                .params
                .iter()
                .map(|p| p.name.as_str())
                .zip(args.iter().copied())
                .collect();
            let name = fluent_name(
                &schema.name,
                &args.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            );
            let mut pre = LiteralSet::empty(universe.len());
            for lit in &schema.pre {
                pre.insert(resolve(lit, &binding)?);
            }
            let mut eff = LiteralSet::empty(universe.len());
            for lit in &schema.eff {
                eff.insert(resolve(lit, &binding)?);
            }
            if pre.has_conflict() {
                warnings.push(GroundWarning::ConflictingGroundPrecondition { action: name });
            } else if eff.has_conflict() {
                warnings.push(GroundWarning::ConflictingGroundEffect { action: name });
            } else {
                actions.push(GroundAction { name, pre, eff });
            }
        }
    }

    let empty = HashMap::new();
    let mut initial = Vec::new();
    for atom in &prob.init {
        let lit = resolve(atom, &empty)?;
        check_objects(atom, &objects)?;
        initial.push(lit.fluent());
    }
    let mut goal = LiteralSet::empty(universe.len());
    for lit in &prob.goal {
        check_objects(lit, &objects)?;
        goal.insert(resolve(lit, &empty)?);
    }
    let initial = State::from_true_fluents(universe.len(), initial);
    let model = GroundModel::new(universe, actions)?;
    Ok(Grounded {
        model,
        initial,
        goal,
        warnings,
    })
}

/// Reads a problem's initial state and goal against an already ground
/// universe whose fluents are named `"pred arg …"`.
pub fn bind_problem(
    universe: &FluentUniverse,
    prob: &ProblemInstance,
) -> Result<(State, LiteralSet), PddlError> {
    let lookup = |atom: &AtomLiteral| {
        let name = fluent_name(&atom.predicate, &atom.args);
        universe
            .fluent(&name)
            .ok_or_else(|| PddlError::Type(format!("atom `({name})` is not a fluent of the model")))
    };
    let mut initial = Vec::new();
    for atom in &prob.init {
        initial.push(lookup(atom)?);
    }
    let mut goal = LiteralSet::empty(universe.len());
    for lit in &prob.goal {
        let f = lookup(lit)?;
        goal.insert(if lit.positive {
            Literal::positive(f)
        } else {
            Literal::negative(f)
        });
    }
    Ok((State::from_true_fluents(universe.len(), initial), goal))
}

fn check_objects(lit: &AtomLiteral, objects: &Objects) -> Result<(), PddlError> {
    match lit.args.iter().find(|a| !objects.types.contains_key(a.as_str())) {
        Some(a) => Err(PddlError::Type(format!("unknown object `{a}`"))),
        None => Ok(()),
    }
}

/// Renders a ground model as a STRIPS domain with parameterless actions.
///
/// A fluent named `"on a b"` becomes the atom `(on a b)` with `a` and `b`
/// declared as constants; the action `"stack a b"` becomes `stack_a_b`.
pub fn write_ground_domain(model: &GroundModel, name: &str) -> String {
    let u = model.universe();
    let mut predicates: BTreeMap<String, usize> = BTreeMap::new();
    let mut constants: BTreeSet<String> = BTreeSet::new();
    for fluent in u.names() {
        let mut parts = fluent.split_whitespace();
        let pred = parts.next().unwrap_or(fluent);
        let args: Vec<&str> = parts.collect();
        predicates.entry(pred.to_string()).or_insert(args.len());
        constants.extend(args.into_iter().map(str::to_string));
    }
    let atom = |lit: Literal| {
        let text = format!("({})", u.name(lit.fluent()));
        if lit.is_positive() {
            text
        } else {
            format!("(not {text})")
        }
    };
    let conj = |set: &LiteralSet| {
        let body: Vec<String> = set.iter().map(atom).collect();
        if body.is_empty() {
            "(and)".to_string()
        } else {
            format!("(and\n      {})", body.join("\n      "))
        }
    };
    let mut out = String::new();
    let _ = writeln!(out, "(define (domain {name})");
    out.push_str("  (:requirements :strips :negative-preconditions)\n");
    if !constants.is_empty() {
        let list: Vec<&str> = constants.iter().map(String::as_str).collect();
        let _ = writeln!(out, "  (:constants {})", list.join(" "));
    }
    out.push_str("  (:predicates");
    for (pred, arity) in &predicates {
        let _ = write!(out, "\n    ({pred}");
        for i in 0..*arity {
            let _ = write!(out, " ?x{i}");
        }
        out.push(')');
    }
    out.push_str(")\n");
    for action in model.actions() {
        let id = action.name.split_whitespace().collect::<Vec<_>>().join("_");
        let _ = writeln!(out, "  (:action {id}");
        out.push_str("    :parameters ()\n");
        let _ = writeln!(out, "    :precondition {}", conj(&action.pre));
        let _ = writeln!(out, "    :effect {})", conj(&action.eff));
    }
    out.push_str(")\n");
    out
}

#[cfg(test)]
mod tests {
    use super::super::{parse_domain, parse_problem};
    use super::*;

    #[test]
    fn unary_predicate_over_two_objects() {
        let d = parse_domain(
            "(define (domain d) (:predicates (p ?x))
               (:action a :parameters (?x) :precondition (p ?x) :effect (not (p ?x))))",
        )
        .unwrap();
        let p =
            parse_problem("(define (problem q) (:domain d) (:objects o1 o2) (:init (p o2)) (:goal (and)))")
                .unwrap();
        let g = ground(&d, &p).unwrap();
        assert_eq!(g.model.universe().names(), &["p o1", "p o2"]);
        assert_eq!(g.model.action_names(), vec!["a o1", "a o2"]);
        assert_eq!(g.model.universe().true_fluent_names(&g.initial), vec!["p o2"]);
        assert!(g.goal.is_empty());
    }

    #[test]
    fn one_parameter_three_objects() {
        let d = parse_domain(
            "(define (domain d) (:requirements :strips :typing) (:types ball)
               (:predicates (held ?b - ball))
               (:action grab :parameters (?b - ball) :precondition (and) :effect (and (held ?b))))",
        )
        .unwrap();
        let p = parse_problem(
            "(define (problem q) (:domain d) (:objects x y z - ball) (:init) (:goal (and (held x))))",
        )
        .unwrap();
        let g = ground(&d, &p).unwrap();
        assert_eq!(g.model.actions().len(), 3);
    }

    #[test]
    fn conflicting_bindings_are_dropped() {
        let d = parse_domain(
            "(define (domain d) (:predicates (on ?x ?y) (clear ?x))
               (:action stack :parameters (?x ?y)
                 :precondition (and (clear ?y))
                 :effect (and (on ?x ?y) (clear ?x) (not (clear ?y)))))",
        )
        .unwrap();
        let p =
            parse_problem("(define (problem q) (:domain d) (:objects a b) (:init) (:goal (and)))").unwrap();
        let g = ground(&d, &p).unwrap();
        assert_eq!(g.model.action_names(), vec!["stack a b", "stack b a"]);
        assert_eq!(
            g.warnings,
            vec![
                GroundWarning::ConflictingGroundEffect {
                    action: "stack a a".into()
                },
                GroundWarning::ConflictingGroundEffect {
                    action: "stack b b".into()
                }
            ]
        );
    }

    #[test]
    fn problem_type_errors() {
        let d = parse_domain(
            "(define (domain d) (:predicates (p ?x)) (:action a :parameters () :precondition () :effect ()))",
        )
        .unwrap();
        let bad_type =
            parse_problem("(define (problem q) (:domain d) (:objects o - thing) (:init) (:goal (and)))")
                .unwrap();
        assert!(matches!(ground(&d, &bad_type), Err(PddlError::Type(_))));
        let bad_atom =
            parse_problem("(define (problem q) (:domain d) (:objects o) (:init (p z)) (:goal (and)))")
                .unwrap();
        assert!(matches!(ground(&d, &bad_atom), Err(PddlError::Type(_))));
        let wrong_domain =
            parse_problem("(define (problem q) (:domain e) (:objects o) (:init) (:goal (and)))").unwrap();
        assert!(matches!(ground(&d, &wrong_domain), Err(PddlError::Type(_))));
    }

    #[test]
    fn ground_domain_export() {
        let d = parse_domain(
            "(define (domain d) (:predicates (p ?x) (z))
               (:action a :parameters (?x) :precondition (and (p ?x) (not (z))) :effect (and (z))))",
        )
        .unwrap();
        let p =
            parse_problem("(define (problem q) (:domain d) (:objects o1) (:init) (:goal (and)))").unwrap();
        let g = ground(&d, &p).unwrap();
        let text = write_ground_domain(&g.model, "learned");
        let reparsed = parse_domain(&text).unwrap();
        assert_eq!(reparsed.actions.len(), 1);
        assert_eq!(reparsed.actions[0].name, "a_o1");
        assert_eq!(reparsed.actions[0].pre.len(), 2);
        assert_eq!(reparsed.constants.len(), 1);
    }
}
