//! Finite predicate structures: a named universe plus named finitary relations.
//!
//! Every element of the universe doubles as a constant symbol, so equations may
//! mention arbitrary elements by name. Structures are immutable after
//! construction and all operations over them are pure.

use std::collections::BTreeSet;
use std::collections::HashMap;

use indexmap::IndexMap;

use crate::error::{Error, Result};

/// Index of an element in the universe, in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u32);

impl ElementId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A predicate symbol: a name together with its arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PredicateSymbol {
    pub name: String,
    pub arity: usize,
}

/// Interpretation of one predicate symbol: the set of tuples it holds on.
///
/// Tuples are stored sorted, so iteration order follows the universe's
/// declared element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    arity: usize,
    tuples: BTreeSet<Vec<ElementId>>,
}

impl Relation {
    pub fn new(arity: usize) -> Self {
        Relation {
            arity,
            tuples: BTreeSet::new(),
        }
    }

    pub fn from_tuples(arity: usize, tuples: impl IntoIterator<Item = Vec<ElementId>>) -> Self {
        let mut rel = Relation::new(arity);
        for t in tuples {
            assert_eq!(t.len(), arity, "tuple length must equal arity");
            rel.tuples.insert(t);
        }
        rel
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn holds(&self, tuple: &[ElementId]) -> bool {
        self.tuples.contains(tuple)
    }

    pub fn insert(&mut self, tuple: Vec<ElementId>) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch {
                symbol: String::new(),
                expected: self.arity,
                got: tuple.len(),
            });
        }
        self.tuples.insert(tuple);
        Ok(())
    }

    pub fn remove(&mut self, tuple: &[ElementId]) {
        self.tuples.remove(tuple);
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<ElementId>> {
        self.tuples.iter()
    }
}

/// A finite structure: ordered universe plus named relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    name: String,
    elements: Vec<String>,
    index: HashMap<String, ElementId>,
    relations: IndexMap<String, Relation>,
}

impl Structure {
    /// Build a structure from element names in declaration order.
    ///
    /// The universe must be nonempty and element names unique.
    pub fn new(name: impl Into<String>, elements: Vec<String>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidStructure("universe must be nonempty".into()));
        }
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), ElementId(i as u32)).is_some() {
                return Err(Error::DuplicateName(e.clone()));
            }
        }
        Ok(Structure {
            name: name.into(),
            elements,
            index,
            relations: IndexMap::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe_size(&self) -> usize {
        self.elements.len()
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    pub fn element_id(&self, name: &str) -> Option<ElementId> {
        self.index.get(name).copied()
    }

    /// Resolve an element name, erroring if it is absent from the universe.
    pub fn require_element(&self, name: &str) -> Result<ElementId> {
        self.element_id(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn element_name(&self, id: ElementId) -> &str {
        &self.elements[id.index()]
    }

    pub fn contains_id(&self, id: ElementId) -> bool {
        id.index() < self.elements.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> {
        (0..self.elements.len() as u32).map(ElementId)
    }

    /// Declare a new relation. Tuples are validated against the universe.
    pub fn add_relation(
        &mut self,
        symbol: PredicateSymbol,
        tuples: impl IntoIterator<Item = Vec<ElementId>>,
    ) -> Result<()> {
        if symbol.arity == 0 {
            return Err(Error::InvalidStructure(format!(
                "predicate `{}` must have arity >= 1",
                symbol.name
            )));
        }
        if self.relations.contains_key(&symbol.name) {
            return Err(Error::DuplicateName(symbol.name));
        }
        let mut rel = Relation::new(symbol.arity);
        for t in tuples {
            if t.len() != symbol.arity {
                return Err(Error::ArityMismatch {
                    symbol: symbol.name.clone(),
                    expected: symbol.arity,
                    got: t.len(),
                });
            }
            for &id in &t {
                if !self.contains_id(id) {
                    return Err(Error::ElementOutOfRange(id.index()));
                }
            }
            rel.insert(t)?;
        }
        self.relations.insert(symbol.name, rel);
        Ok(())
    }

    /// Declare a relation, giving tuples by element name.
    pub fn add_relation_named(
        &mut self,
        name: impl Into<String>,
        arity: usize,
        tuples: &[&[&str]],
    ) -> Result<()> {
        let mut resolved = Vec::with_capacity(tuples.len());
        for t in tuples {
            let ids = t
                .iter()
                .map(|n| self.require_element(n))
                .collect::<Result<Vec<_>>>()?;
            resolved.push(ids);
        }
        self.add_relation(
            PredicateSymbol {
                name: name.into(),
                arity,
            },
            resolved,
        )
    }

    pub fn relation(&self, symbol: &str) -> Result<&Relation> {
        self.relations
            .get(symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    pub fn has_symbol(&self, symbol: &str) -> bool {
        self.relations.contains_key(symbol)
    }

    /// Predicate symbols in declaration order.
    pub fn symbols(&self) -> impl Iterator<Item = PredicateSymbol> + '_ {
        self.relations.iter().map(|(name, rel)| PredicateSymbol {
            name: name.clone(),
            arity: rel.arity(),
        })
    }

    /// Render a tuple of ids as element names.
    pub fn tuple_names(&self, tuple: &[ElementId]) -> Vec<String> {
        tuple
            .iter()
            .map(|&id| self.element_name(id).to_string())
            .collect()
    }

    /// Membership check for a named symbol, used all over witness verification.
    pub fn holds(&self, symbol: &str, tuple: &[ElementId]) -> Result<bool> {
        let rel = self.relation(symbol)?;
        if tuple.len() != rel.arity() {
            return Err(Error::ArityMismatch {
                symbol: symbol.to_string(),
                expected: rel.arity(),
                got: tuple.len(),
            });
        }
        for &id in tuple {
            if !self.contains_id(id) {
                return Err(Error::ElementOutOfRange(id.index()));
            }
        }
        Ok(rel.holds(tuple))
    }
}

/// The five-node ternary hypergraph used as a running example in tests.
#[cfg(test)]
pub(crate) fn gamma() -> Structure {
    let mut s = Structure::new(
        "gamma",
        ["v1", "v2", "v3", "v4", "v5"]
            .iter()
            .map(|e| e.to_string())
            .collect(),
    )
    .unwrap();
    s.add_relation_named(
        "E",
        3,
        &[
            &["v1", "v1", "v2"],
            &["v1", "v3", "v3"],
            &["v2", "v4", "v1"],
            &["v3", "v2", "v2"],
            &["v5", "v4", "v5"],
        ],
    )
    .unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universe_must_be_nonempty() {
        assert!(matches!(
            Structure::new("s", vec![]),
            Err(Error::InvalidStructure(_))
        ));
    }

    #[test]
    fn duplicate_elements_rejected() {
        let r = Structure::new("s", vec!["a".into(), "a".into()]);
        assert_eq!(r.unwrap_err(), Error::DuplicateName("a".into()));
    }

    #[test]
    fn tuples_validated() {
        let mut s = Structure::new("s", vec!["a".into(), "b".into()]).unwrap();
        let sym = PredicateSymbol {
            name: "P".into(),
            arity: 2,
        };
        assert!(matches!(
            s.add_relation(sym.clone(), vec![vec![ElementId(0)]]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            s.add_relation(sym.clone(), vec![vec![ElementId(0), ElementId(7)]]),
            Err(Error::ElementOutOfRange(7))
        ));
        s.add_relation(sym, vec![vec![ElementId(0), ElementId(1)]])
            .unwrap();
        assert!(s
            .holds("P", &[ElementId(0), ElementId(1)])
            .unwrap());
        assert!(!s
            .holds("P", &[ElementId(1), ElementId(0)])
            .unwrap());
    }

    #[test]
    fn gamma_edges() {
        let g = gamma();
        assert_eq!(g.universe_size(), 5);
        let e = g.relation("E").unwrap();
        assert_eq!(e.len(), 5);
        let v2 = g.element_id("v2").unwrap();
        let v4 = g.element_id("v4").unwrap();
        let v1 = g.element_id("v1").unwrap();
        assert!(e.holds(&[v2, v4, v1]));
    }

    #[test]
    fn zero_arity_rejected() {
        let mut s = Structure::new("s", vec!["a".into()]).unwrap();
        assert!(s
            .add_relation(
                PredicateSymbol {
                    name: "P".into(),
                    arity: 0
                },
                vec![]
            )
            .is_err());
    }
}
