//! Lifted domains and problems of the supported PDDL subset
//! (`:strips`, `:typing`, `:negative-preconditions`), with their parser and
//! pretty-printer.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};

use super::sexpr::{self, Sexp};
use super::PddlError;

pub const ROOT_TYPE: &str = "object";
pub const SUPPORTED_REQUIREMENTS: [&str; 3] = [":strips", ":typing", ":negative-preconditions"];

/// Formula and section keywords outside the subset.
const UNSUPPORTED_KEYWORDS: [&str; 18] = [
    "forall",
    "exists",
    "when",
    "or",
    "imply",
    "=",
    "either",
    "increase",
    "decrease",
    "assign",
    "scale-up",
    "scale-down",
    ":functions",
    ":derived",
    ":durative-action",
    ":constraints",
    ":metric",
    "preference",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedName {
    pub name: String,
    pub ty: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeDecl {
    pub name: String,
    pub parent: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicate {
    pub name: String,
    pub params: Vec<TypedName>,
}

/// A possibly negated atom whose arguments are variables (`?x`) or object
/// names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomLiteral {
    pub positive: bool,
    pub predicate: String,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSchema {
    pub name: String,
    pub params: Vec<TypedName>,
    pub pre: Vec<AtomLiteral>,
    pub eff: Vec<AtomLiteral>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedDomain {
    pub name: String,
    pub requirements: Vec<String>,
    pub types: Vec<TypeDecl>,
    pub constants: Vec<TypedName>,
    pub predicates: Vec<Predicate>,
    pub actions: Vec<ActionSchema>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    pub name: String,
    pub domain: String,
    pub objects: Vec<TypedName>,
    /// Atoms true in the initial state; all others are false.
    pub init: Vec<AtomLiteral>,
    pub goal: Vec<AtomLiteral>,
}

fn check_supported(word: &str) -> Result<(), PddlError> {
    if UNSUPPORTED_KEYWORDS.contains(&word) {
        return Err(PddlError::UnsupportedFeature(
            word.trim_start_matches(':').to_string(),
        ));
    }
    Ok(())
}

/// Parses `a b - t c` style lists; untyped names get [`ROOT_TYPE`].
fn typed_list(items: &[Sexp], variables: bool) -> Result<Vec<TypedName>, PddlError> {
    let mut out = Vec::new();
    let mut pending: Vec<String> = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let item = &items[i];
        if let Some(list) = item.list() {
            if let Some(head) = list.first().and_then(Sexp::atom) {
                check_supported(head)?;
            }
            return Err(item.error("name"));
        }
        let word = item.atom().unwrap_or_default();
        if word == "-" {
            let ty_expr = items
                .get(i + 1)
                .ok_or_else(|| item.error("type name after `-`"))?;
            if ty_expr.head() == Some("either") {
                return Err(PddlError::UnsupportedFeature("either".into()));
            }
            let ty = ty_expr.expect_atom("type name")?;
            if pending.is_empty() {
                return Err(item.error("name before `-`"));
            }
            out.extend(pending.drain(..).map(|name| TypedName {
                name,
                ty: ty.to_string(),
            }));
            i += 2;
            continue;
        }
        if variables != word.starts_with('?') {
            return Err(item.error(if variables { "variable" } else { "object name" }));
        }
        pending.push(word.to_string());
        i += 1;
    }
    out.extend(pending.into_iter().map(|name| TypedName {
        name,
        ty: ROOT_TYPE.to_string(),
    }));
    Ok(out)
}

fn atom_literal(expr: &Sexp) -> Result<AtomLiteral, PddlError> {
    let items = expr.expect_list("atom")?;
    let head = items.first().ok_or_else(|| expr.error("predicate name"))?;
    let head = head.expect_atom("predicate name")?;
    check_supported(head)?;
    if head == "not" {
        if items.len() != 2 {
            return Err(expr.error("(not <atom>)"));
        }
        let mut inner = atom_literal(&items[1])?;
        if !inner.positive {
            return Err(items[1].error("atom"));
        }
        inner.positive = false;
        return Ok(inner);
    }
    if head == "and" {
        return Err(expr.error("atom"));
    }
    let args = items[1..]
        .iter()
        .map(|a| a.expect_atom("argument").map(str::to_string))
        .collect::<Result<_, _>>()?;
    Ok(AtomLiteral {
        positive: true,
        predicate: head.to_string(),
        args,
    })
}

/// `()`, a single literal, or `(and <literal>*)`.
fn conjunction(expr: &Sexp) -> Result<Vec<AtomLiteral>, PddlError> {
    let items = expr.expect_list("formula")?;
    match items.first().and_then(Sexp::atom) {
        None if items.is_empty() => Ok(Vec::new()),
        Some("and") => items[1..].iter().map(atom_literal).collect(),
        _ => Ok(vec![atom_literal(expr)?]),
    }
}

fn define_header<'a>(root: &'a Sexp, kind: &str) -> Result<(&'a [Sexp], String), PddlError> {
    let items = root.expect_list("(define ...)")?;
    match items.first().and_then(Sexp::atom) {
        Some("define") => {}
        _ => return Err(root.error("(define ...)")),
    }
    let header = items
        .get(1)
        .ok_or_else(|| root.error(&format!("({kind} <name>)")))?;
    let h = header.expect_list(&format!("({kind} <name>)"))?;
    if h.len() != 2 || h[0].atom() != Some(kind) {
        return Err(header.error(&format!("({kind} <name>)")));
    }
    let name = h[1].expect_atom("name")?.to_string();
    Ok((&items[2..], name))
}

pub fn parse_domain(text: &str) -> Result<LiftedDomain, PddlError> {
    let root = sexpr::parse(text)?;
    let (sections, name) = define_header(&root, "domain")?;
    let mut dom = LiftedDomain {
        name,
        requirements: Vec::new(),
        types: Vec::new(),
        constants: Vec::new(),
        predicates: Vec::new(),
        actions: Vec::new(),
    };
    for section in sections {
        let items = section.expect_list("domain section")?;
        let key = items
            .first()
            .ok_or_else(|| section.error("section keyword"))?
            .expect_atom("section keyword")?;
        check_supported(key)?;
        match key {
            ":requirements" => {
                for req in &items[1..] {
                    let r = req.expect_atom("requirement")?;
                    if !SUPPORTED_REQUIREMENTS.contains(&r) {
                        return Err(PddlError::UnsupportedFeature(r.to_string()));
                    }
                    dom.requirements.push(r.to_string());
                }
            }
            ":types" => {
                dom.types = typed_list(&items[1..], false)?
                    .into_iter()
                    .map(|t| TypeDecl {
                        name: t.name,
                        parent: t.ty,
                    })
                    .collect();
            }
            ":constants" => dom.constants = typed_list(&items[1..], false)?,
            ":predicates" => {
                for p in &items[1..] {
                    let parts = p.expect_list("(<predicate> <params>)")?;
                    let pname = parts
                        .first()
                        .ok_or_else(|| p.error("predicate name"))?
                        .expect_atom("predicate name")?;
                    dom.predicates.push(Predicate {
                        name: pname.to_string(),
                        params: typed_list(&parts[1..], true)?,
                    });
                }
            }
            ":action" => dom.actions.push(action(section, items)?),
            _ => return Err(section.error("one of :requirements :types :constants :predicates :action")),
        }
    }
    dom.validate()?;
    Ok(dom)
}

fn action(section: &Sexp, items: &[Sexp]) -> Result<ActionSchema, PddlError> {
    let name = items
        .get(1)
        .ok_or_else(|| section.error("action name"))?
        .expect_atom("action name")?
        .to_string();
    let mut schema = ActionSchema {
        name,
        params: Vec::new(),
        pre: Vec::new(),
        eff: Vec::new(),
    };
    let mut rest = items[2..].iter();
    while let Some(key) = rest.next() {
        let k = key.expect_atom(":parameters, :precondition or :effect")?;
        check_supported(k)?;
        let value = rest.next().ok_or_else(|| key.error("value"))?;
        match k {
            ":parameters" => schema.params = typed_list(value.expect_list("parameter list")?, true)?,
            ":precondition" => schema.pre = conjunction(value)?,
            ":effect" => schema.eff = conjunction(value)?,
            _ => return Err(key.error(":parameters, :precondition or :effect")),
        }
    }
    Ok(schema)
}

pub fn parse_problem(text: &str) -> Result<ProblemInstance, PddlError> {
    let root = sexpr::parse(text)?;
    let (sections, name) = define_header(&root, "problem")?;
    let mut prob = ProblemInstance {
        name,
        domain: String::new(),
        objects: Vec::new(),
        init: Vec::new(),
        goal: Vec::new(),
    };
    for section in sections {
        let items = section.expect_list("problem section")?;
        let key = items
            .first()
            .ok_or_else(|| section.error("section keyword"))?
            .expect_atom("section keyword")?;
        check_supported(key)?;
        match key {
            ":domain" => {
                prob.domain = items
                    .get(1)
                    .ok_or_else(|| section.error("domain name"))?
                    .expect_atom("domain name")?
                    .to_string()
            }
            ":requirements" => {}
            ":objects" => prob.objects = typed_list(&items[1..], false)?,
            ":init" => {
                for fact in &items[1..] {
                    let lit = atom_literal(fact)?;
                    if !lit.positive {
                        // closed world: negative facts are implied
                        continue;
                    }
                    prob.init.push(lit);
                }
            }
            ":goal" => {
                let goal = items.get(1).ok_or_else(|| section.error("goal formula"))?;
                prob.goal = conjunction(goal)?;
            }
            _ => return Err(section.error("one of :domain :objects :init :goal")),
        }
    }
    Ok(prob)
}

impl LiftedDomain {
    /// Parent of each declared type; the root type maps to itself.
    pub fn type_parents(&self) -> HashMap<&str, &str> {
        let mut parents: HashMap<&str, &str> = HashMap::new();
        parents.insert(ROOT_TYPE, ROOT_TYPE);
        for t in &self.types {
            parents.insert(&t.name, &t.parent);
        }
        parents
    }

    /// Whether `ty` equals `ancestor` or descends from it.
    pub fn is_subtype(&self, ty: &str, ancestor: &str) -> bool {
        let parents = self.type_parents();
        let mut current = ty;
        for _ in 0..=parents.len() {
            if current == ancestor {
                return true;
            }
            match parents.get(current) {
                Some(&p) if p != current => current = p,
                _ => return false,
            }
        }
        false
    }

    pub fn predicate(&self, name: &str) -> Option<&Predicate> {
        self.predicates.iter().find(|p| p.name == name)
    }

    fn validate(&self) -> Result<(), PddlError> {
        let parents = self.type_parents();
        let known_type = |ty: &str| parents.contains_key(ty);
        for t in &self.types {
            if !known_type(&t.parent) {
                return Err(PddlError::Type(format!("unknown parent type `{}`", t.parent)));
            }
            if !self.is_subtype(&t.name, ROOT_TYPE) {
                return Err(PddlError::Type(format!("cyclic type `{}`", t.name)));
            }
        }
        let mut seen = HashSet::new();
        for p in &self.predicates {
            if !seen.insert(&p.name) {
                return Err(PddlError::Type(format!("duplicate predicate `{}`", p.name)));
            }
            if let Some(t) = p.params.iter().find(|t| !known_type(&t.ty)) {
                return Err(PddlError::Type(format!("unknown type `{}`", t.ty)));
            }
        }
        for c in &self.constants {
            if !known_type(&c.ty) {
                return Err(PddlError::Type(format!("unknown type `{}`", c.ty)));
            }
        }
        let mut seen = HashSet::new();
        for a in &self.actions {
            if !seen.insert(&a.name) {
                return Err(PddlError::Type(format!("duplicate action `{}`", a.name)));
            }
            let mut vars = HashMap::new();
            for p in &a.params {
                if !known_type(&p.ty) {
                    return Err(PddlError::Type(format!("unknown type `{}`", p.ty)));
                }
                if vars.insert(p.name.as_str(), p.ty.as_str()).is_some() {
                    return Err(PddlError::Type(format!(
                        "duplicate parameter `{}` in `{}`",
                        p.name, a.name
                    )));
                }
            }
            for lit in a.pre.iter().chain(&a.eff) {
                let pred = self.predicate(&lit.predicate).ok_or_else(|| {
                    PddlError::Type(format!(
                        "undeclared predicate `{}` in `{}`",
                        lit.predicate, a.name
                    ))
                })?;
                if pred.params.len() != lit.args.len() {
                    return Err(PddlError::Type(format!(
                        "`{}` takes {} arguments, `{}` passes {}",
                        pred.name,
                        pred.params.len(),
                        a.name,
                        lit.args.len()
                    )));
                }
                for (arg, param) in lit.args.iter().zip(&pred.params) {
                    let ty = if arg.starts_with('?') {
                        *vars.get(arg.as_str()).ok_or_else(|| {
                            PddlError::Type(format!("unbound variable `{arg}` in `{}`", a.name))
                        })?
                    } else {
                        self.constants
                            .iter()
                            .find(|c| &c.name == arg)
                            .map(|c| c.ty.as_str())
                            .ok_or_else(|| {
                                PddlError::Type(format!("unknown constant `{arg}` in `{}`", a.name))
                            })?
                    };
                    if !self.is_subtype(ty, &param.ty) {
                        return Err(PddlError::Type(format!(
                            "argument `{arg}` of type `{ty}` does not fit `{}` in `{}`",
                            param.ty, a.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn write_typed(out: &mut String, names: &[TypedName]) {
    let mut i = 0;
    while i < names.len() {
        let ty = &names[i].ty;
        let mut j = i;
        while j < names.len() && &names[j].ty == ty {
            out.push(' ');
            out.push_str(&names[j].name);
            j += 1;
        }
        if ty != ROOT_TYPE {
            let _ = write!(out, " - {ty}");
        }
        i = j;
    }
}

fn write_literal(out: &mut String, lit: &AtomLiteral) {
    if !lit.positive {
        out.push_str("(not ");
    }
    out.push('(');
    out.push_str(&lit.predicate);
    for a in &lit.args {
        out.push(' ');
        out.push_str(a);
    }
    out.push(')');
    if !lit.positive {
        out.push(')');
    }
}

fn write_conjunction(out: &mut String, lits: &[AtomLiteral], indent: &str) {
    out.push_str("(and");
    for lit in lits {
        out.push('\n');
        out.push_str(indent);
        write_literal(out, lit);
    }
    out.push(')');
}

impl fmt::Display for LiftedDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let _ = writeln!(out, "(define (domain {})", self.name);
        if !self.requirements.is_empty() {
            let _ = writeln!(out, "  (:requirements {})", self.requirements.join(" "));
        }
        if !self.types.is_empty() {
            out.push_str("  (:types");
            let as_typed: Vec<TypedName> = self
                .types
                .iter()
                .map(|t| TypedName {
                    name: t.name.clone(),
                    ty: t.parent.clone(),
                })
                .collect();
            write_typed(&mut out, &as_typed);
            out.push_str(")\n");
        }
        if !self.constants.is_empty() {
            out.push_str("  (:constants");
            write_typed(&mut out, &self.constants);
            out.push_str(")\n");
        }
        out.push_str("  (:predicates");
        for p in &self.predicates {
            let _ = write!(out, "\n    ({}", p.name);
            write_typed(&mut out, &p.params);
            out.push(')');
        }
        out.push_str(")\n");
        for a in &self.actions {
            let _ = write!(out, "  (:action {}\n    :parameters (", a.name);
            let mut params = String::new();
            write_typed(&mut params, &a.params);
            out.push_str(params.trim_start());
            out.push_str(")\n    :precondition ");
            write_conjunction(&mut out, &a.pre, "      ");
            out.push_str("\n    :effect ");
            write_conjunction(&mut out, &a.eff, "      ");
            out.push_str(")\n");
        }
        out.push_str(")\n");
        f.write_str(&out)
    }
}
