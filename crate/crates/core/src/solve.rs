//! Solution sets of equation systems by exhaustive enumeration, equivalence
//! of systems, and minimization to an equivalent subsystem.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::equation::{Assignment, Equation, EquationSystem, Term};
use crate::error::{Error, Result};
use crate::model::{ElementId, Structure};

/// The set of all solutions of a system: points aligned to the system's
/// variable order, sorted by the universe's declared element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicSet {
    pub variables: Vec<String>,
    pub points: BTreeSet<Vec<ElementId>>,
}

impl AlgebraicSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, point: &[ElementId]) -> bool {
        self.points.contains(point)
    }

    /// View the points as assignments.
    pub fn assignments(&self) -> impl Iterator<Item = Assignment> + '_ {
        self.points.iter().map(move |p| {
            self.variables
                .iter()
                .cloned()
                .zip(p.iter().copied())
                .collect()
        })
    }
}

/// An equation with terms resolved to slots, for fast evaluation over points.
enum Compiled {
    Atom { rel: usize, slots: Vec<Slot> },
    Equality { lhs: Slot, rhs: Slot },
}

#[derive(Clone, Copy)]
enum Slot {
    Var(usize),
    Elem(ElementId),
}

struct Space<'a> {
    structure: &'a Structure,
    relations: Vec<&'a crate::model::Relation>,
    compiled: Vec<Compiled>,
    nvars: usize,
}

impl<'a> Space<'a> {
    fn new(structure: &'a Structure, system: &EquationSystem) -> Result<Self> {
        let mut relations = Vec::new();
        let mut compiled = Vec::new();
        let var_index = |name: &str| system.variables.iter().position(|v| v == name);
        let slot = |term: &Term| -> Result<Slot> {
            match term {
                Term::Var(v) => var_index(v)
                    .map(Slot::Var)
                    .ok_or_else(|| Error::UndeclaredVariable(v.clone())),
                Term::Const(c) => Ok(Slot::Elem(structure.require_element(c)?)),
            }
        };
        for eq in &system.equations {
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
                    let slots = args.iter().map(&slot).collect::<Result<Vec<_>>>()?;
                    relations.push(rel);
                    compiled.push(Compiled::Atom {
                        rel: relations.len() - 1,
                        slots,
                    });
                }
                Equation::Equality { lhs, rhs } => {
                    compiled.push(Compiled::Equality {
                        lhs: slot(lhs)?,
                        rhs: slot(rhs)?,
                    });
                }
            }
        }
        Ok(Space {
            structure,
            relations,
            compiled,
            nvars: system.variables.len(),
        })
    }

    fn point_count(&self) -> Result<usize> {
        let n = self.structure.universe_size();
        n.checked_pow(self.nvars as u32)
            .filter(|&c| c <= 100_000_000)
            .ok_or_else(|| {
                Error::TooLarge(format!(
                    "{} variables over a universe of {} elements",
                    self.nvars, n
                ))
            })
    }

    fn satisfies(&self, index: usize, point: &[ElementId], scratch: &mut Vec<ElementId>) -> bool {
        let value = |s: &Slot| match s {
            Slot::Var(i) => point[*i],
            Slot::Elem(e) => *e,
        };
        match &self.compiled[index] {
            Compiled::Atom { rel, slots } => {
                scratch.clear();
                scratch.extend(slots.iter().map(value));
                self.relations[*rel].holds(scratch)
            }
            Compiled::Equality { lhs, rhs } => value(lhs) == value(rhs),
        }
    }

    /// Visit every point of universe^|X| in lexicographic element order.
    fn for_each_point(&self, mut f: impl FnMut(&[ElementId])) {
        let n = self.structure.universe_size() as u32;
        let mut point = vec![ElementId(0); self.nvars];
        loop {
            f(&point);
            let mut pos = self.nvars;
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                if point[pos].0 + 1 < n {
                    point[pos].0 += 1;
                    for later in point[pos + 1..].iter_mut() {
                        later.0 = 0;
                    }
                    break;
                }
            }
            if self.nvars == 0 {
                return;
            }
        }
    }
}

/// Compute the algebraic set of a system by exhaustive enumeration of
/// universe^|X|.
///
/// With zero variables the result is the empty point iff every (ground)
/// equation holds, and empty otherwise.
pub fn solve_system(structure: &Structure, system: &EquationSystem) -> Result<AlgebraicSet> {
    let space = Space::new(structure, system)?;
    space.point_count()?;
    let mut points = BTreeSet::new();
    let mut scratch = Vec::new();
    space.for_each_point(|point| {
        let ok = (0..space.compiled.len()).all(|i| space.satisfies(i, point, &mut scratch));
        if ok {
            points.insert(point.to_vec());
        }
    });
    Ok(AlgebraicSet {
        variables: system.variables.clone(),
        points,
    })
}

/// Two systems over the same variable set are equivalent iff their solution
/// sets coincide.
pub fn systems_equivalent(
    structure: &Structure,
    s1: &EquationSystem,
    s2: &EquationSystem,
) -> Result<bool> {
    if s1.variable_set() != s2.variable_set() {
        return Err(Error::VariableSetMismatch);
    }
    let v1 = solve_system(structure, s1)?;
    let v2 = solve_system(structure, s2)?;
    // Align s2's coordinate order with s1's before comparing.
    let perm: Vec<usize> = s1
        .variables
        .iter()
        .map(|v| s2.variables.iter().position(|w| w == v).unwrap())
        .collect();
    let remapped: BTreeSet<Vec<ElementId>> = v2
        .points
        .iter()
        .map(|p| perm.iter().map(|&i| p[i]).collect())
        .collect();
    Ok(v1.points == remapped)
}

/// Strategy of [`minimize_system`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimizeMode {
    /// Minimum cardinality, by enumerating index subsets in size order then
    /// lexicographic order. Capped at 20 equations.
    Exact,
    /// Inclusion-minimal, by a single removal pass in index order.
    Greedy,
}

/// Per-equation solution masks over the full point space.
fn equation_masks(structure: &Structure, system: &EquationSystem) -> Result<(Vec<Vec<u64>>, usize)> {
    let space = Space::new(structure, system)?;
    let total = space.point_count()?;
    let words = total.div_ceil(64).max(1);
    let mut masks = vec![vec![0u64; words]; system.equations.len()];
    let mut scratch = Vec::new();
    let mut pos = 0usize;
    space.for_each_point(|point| {
        for (i, mask) in masks.iter_mut().enumerate() {
            if space.satisfies(i, point, &mut scratch) {
                mask[pos / 64] |= 1 << (pos % 64);
            }
        }
        pos += 1;
    });
    debug_assert_eq!(pos, total);
    Ok((masks, words))
}

fn intersect(selected: &[usize], masks: &[Vec<u64>], words: usize, total_bits: usize) -> Vec<u64> {
    let mut acc = vec![u64::MAX; words];
    if total_bits % 64 != 0 {
        acc[words - 1] = (1u64 << (total_bits % 64)) - 1;
    }
    if total_bits == 0 {
        acc[0] = 0;
    }
    for &i in selected {
        for (a, m) in acc.iter_mut().zip(&masks[i]) {
            *a &= m;
        }
    }
    acc
}

/// Find a subsystem equivalent to the whole system; returns equation indices.
///
/// Exact mode returns a minimum-cardinality subset, ties broken by the
/// lexicographically least index set. Greedy mode drops equations in index
/// order whenever removal preserves the solution set, which yields an
/// inclusion-minimal subset.
pub fn minimize_system(
    structure: &Structure,
    system: &EquationSystem,
    mode: MinimizeMode,
) -> Result<Vec<usize>> {
    let n = system.equations.len();
    let space = Space::new(structure, system)?;
    let total = space.point_count()?;
    let (masks, words) = equation_masks(structure, system)?;
    let all: Vec<usize> = (0..n).collect();
    let full = intersect(&all, &masks, words, total);

    match mode {
        MinimizeMode::Exact => {
            if n > 20 {
                return Err(Error::ExactMinimizeTooLarge(n));
            }
            for size in 0..=n {
                for subset in (0..n).combinations(size) {
                    if intersect(&subset, &masks, words, total) == full {
                        return Ok(subset);
                    }
                }
            }
            unreachable!("the full index set is always equivalent to itself")
        }
        MinimizeMode::Greedy => {
            let mut kept: Vec<usize> = all;
            for i in 0..n {
                let candidate: Vec<usize> = kept.iter().copied().filter(|&j| j != i).collect();
                if candidate.len() < kept.len()
                    && intersect(&candidate, &masks, words, total) == full
                {
                    kept = candidate;
                }
            }
            Ok(kept)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::gamma;

    fn sys(vars: &[&str], eqs: Vec<Equation>) -> EquationSystem {
        EquationSystem::new("s", vars.iter().map(|v| v.to_string()).collect(), eqs).unwrap()
    }

    fn atom_xv4y() -> Equation {
        Equation::atom("E", vec![Term::var("x"), Term::con("v4"), Term::var("y")])
    }

    #[test]
    fn solve_single_variable() {
        let g = gamma();
        let s = sys(
            &["x"],
            vec![Equation::atom(
                "E",
                vec![Term::var("x"), Term::con("v4"), Term::con("v1")],
            )],
        );
        let v = solve_system(&g, &s).unwrap();
        assert_eq!(v.points.len(), 1);
        assert!(v.contains(&[g.element_id("v2").unwrap()]));
    }

    #[test]
    fn solve_empty_system_is_whole_space() {
        let g = gamma();
        let s = sys(&["x"], vec![]);
        let v = solve_system(&g, &s).unwrap();
        assert_eq!(v.len(), 5);
    }

    #[test]
    fn solve_two_variables() {
        let g = gamma();
        let s = sys(&["x", "y"], vec![atom_xv4y()]);
        let v = solve_system(&g, &s).unwrap();
        let id = |n: &str| g.element_id(n).unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.contains(&[id("v2"), id("v1")]));
        assert!(v.contains(&[id("v5"), id("v5")]));
    }

    #[test]
    fn solve_zero_variables() {
        let g = gamma();
        let holds = sys(
            &[],
            vec![Equation::atom(
                "E",
                vec![Term::con("v2"), Term::con("v4"), Term::con("v1")],
            )],
        );
        assert_eq!(solve_system(&g, &holds).unwrap().len(), 1);
        let fails = sys(
            &[],
            vec![Equation::equality(Term::con("v1"), Term::con("v2"))],
        );
        assert_eq!(solve_system(&g, &fails).unwrap().len(), 0);
    }

    #[test]
    fn equivalence_under_tautology_and_duplication() {
        let g = gamma();
        let base = sys(&["x", "y"], vec![atom_xv4y()]);
        let with_tautology = sys(
            &["x", "y"],
            vec![
                atom_xv4y(),
                Equation::equality(Term::var("x"), Term::var("x")),
            ],
        );
        let duplicated = sys(&["x", "y"], vec![atom_xv4y(), atom_xv4y()]);
        assert!(systems_equivalent(&g, &base, &with_tautology).unwrap());
        assert!(systems_equivalent(&g, &base, &duplicated).unwrap());
    }

    #[test]
    fn equivalence_distinguishes_point_sets() {
        let g = gamma();
        let lhs = sys(&["x", "y"], vec![atom_xv4y()]);
        let rhs = sys(
            &["x", "y"],
            vec![
                Equation::equality(Term::var("x"), Term::con("v2")),
                Equation::equality(Term::var("y"), Term::con("v1")),
            ],
        );
        // The second system excludes (v5, v5).
        assert!(!systems_equivalent(&g, &lhs, &rhs).unwrap());
    }

    #[test]
    fn equivalence_requires_shared_variables() {
        let g = gamma();
        let lhs = sys(&["x"], vec![]);
        let rhs = sys(&["y"], vec![]);
        assert_eq!(
            systems_equivalent(&g, &lhs, &rhs).unwrap_err(),
            Error::VariableSetMismatch
        );
    }

    #[test]
    fn minimize_single_constraining_equation() {
        let g = gamma();
        let s = sys(
            &["x"],
            vec![Equation::atom(
                "E",
                vec![Term::var("x"), Term::con("v4"), Term::con("v1")],
            )],
        );
        assert_eq!(minimize_system(&g, &s, MinimizeMode::Exact).unwrap(), vec![0]);
    }

    #[test]
    fn minimize_removes_duplicate() {
        let g = gamma();
        let s = sys(&["x", "y"], vec![atom_xv4y(), atom_xv4y()]);
        assert_eq!(minimize_system(&g, &s, MinimizeMode::Exact).unwrap(), vec![0]);
        assert_eq!(
            minimize_system(&g, &s, MinimizeMode::Greedy).unwrap(),
            vec![1]
        );
    }

    #[test]
    fn minimize_tautology_only_system_to_empty() {
        let g = gamma();
        let s = sys(
            &["x"],
            vec![Equation::equality(Term::var("x"), Term::var("x"))],
        );
        let kept = minimize_system(&g, &s, MinimizeMode::Exact).unwrap();
        assert!(kept.is_empty());
    }

    #[test]
    fn exact_mode_is_capped() {
        let g = gamma();
        let eqs = vec![Equation::equality(Term::var("x"), Term::var("x")); 21];
        let s = sys(&["x"], eqs);
        assert_eq!(
            minimize_system(&g, &s, MinimizeMode::Exact).unwrap_err(),
            Error::ExactMinimizeTooLarge(21)
        );
        assert!(minimize_system(&g, &s, MinimizeMode::Greedy)
            .unwrap()
            .is_empty());
    }
}
