//! Atomic equations over a structure's language: predicate atoms and
//! equalities between terms, where a term is a variable or an element name.
//!
//! Equality is a built-in logical symbol interpreted as identity on the
//! universe, not a user relation.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::model::{ElementId, Structure};

/// A term: a variable or a constant (an element of the universe, by name).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn con(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

/// An atomic equation: `P(w1, ..., wn)` or `w1 = w2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Equation {
    Atom { symbol: String, args: Vec<Term> },
    Equality { lhs: Term, rhs: Term },
}

impl Equation {
    pub fn atom(symbol: impl Into<String>, args: Vec<Term>) -> Self {
        Equation::Atom {
            symbol: symbol.into(),
            args,
        }
    }

    pub fn equality(lhs: Term, rhs: Term) -> Self {
        Equation::Equality { lhs, rhs }
    }

    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Equation::Atom { args, .. } => args.iter().collect(),
            Equation::Equality { lhs, rhs } => vec![lhs, rhs],
        }
    }

    /// Variable names occurring in the equation, without duplicates.
    pub fn variables(&self) -> BTreeSet<&str> {
        self.terms()
            .into_iter()
            .filter_map(|t| match t {
                Term::Var(v) => Some(v.as_str()),
                Term::Const(_) => None,
            })
            .collect()
    }

    pub fn has_variables(&self) -> bool {
        self.terms().iter().any(|t| t.is_var())
    }

    pub fn has_constants(&self) -> bool {
        self.terms().iter().any(|t| !t.is_var())
    }
}

/// A point: a total mapping from variable names to universe elements.
pub type Assignment = BTreeMap<String, ElementId>;

/// Build an assignment from (variable, element-name) pairs.
pub fn assignment(structure: &Structure, pairs: &[(&str, &str)]) -> Result<Assignment> {
    let mut a = Assignment::new();
    for (var, elem) in pairs {
        a.insert(var.to_string(), structure.require_element(elem)?);
    }
    Ok(a)
}

/// A finite system of equations over an ordered variable set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSystem {
    pub name: String,
    pub variables: Vec<String>,
    pub equations: Vec<Equation>,
}

impl EquationSystem {
    /// Construct a system, checking that declared variables are unique and
    /// that every variable occurring in an equation is declared.
    pub fn new(
        name: impl Into<String>,
        variables: Vec<String>,
        equations: Vec<Equation>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &variables {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        for eq in &equations {
            for v in eq.variables() {
                if !seen.contains(v) {
                    return Err(Error::UndeclaredVariable(v.to_string()));
                }
            }
        }
        Ok(EquationSystem {
            name: name.into(),
            variables,
            equations,
        })
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn variable_set(&self) -> BTreeSet<&str> {
        self.variables.iter().map(|v| v.as_str()).collect()
    }
}

fn term_value(structure: &Structure, a: &Assignment, term: &Term) -> Result<ElementId> {
    match term {
        Term::Var(v) => a
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnassignedVariable(v.clone())),
        Term::Const(c) => structure.require_element(c),
    }
}

/// Decide whether an assignment solves one equation over a structure.
///
/// An atom holds iff the substituted tuple is in the relation; an equality
/// holds iff both sides denote the same element.
pub fn eval_equation(structure: &Structure, eq: &Equation, a: &Assignment) -> Result<bool> {
    match eq {
        Equation::Atom { symbol, args } => {
            let rel = structure.relation(symbol)?;
            if args.len() != rel.arity() {
                return Err(Error::ArityMismatch {
                    symbol: symbol.clone(),
                    expected: rel.arity(),
                    got: args.len(),
                });
            }
            let tuple = args
                .iter()
                .map(|t| term_value(structure, a, t))
                .collect::<Result<Vec<_>>>()?;
            Ok(rel.holds(&tuple))
        }
        Equation::Equality { lhs, rhs } => {
            Ok(term_value(structure, a, lhs)? == term_value(structure, a, rhs)?)
        }
    }
}
