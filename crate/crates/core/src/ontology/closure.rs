use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::rdf::Iri;

/// Reflexive-transitive closure of a hierarchy edge set (`sub ⊑ sup`).
///
/// Every IRI is related to itself, including IRIs the closure has never seen,
/// so lookups on unknown vocabulary behave like a trivial hierarchy. Cycles
/// are allowed and make their members mutually related.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Closure {
    up: BTreeMap<Iri, BTreeSet<Iri>>,
    down: BTreeMap<Iri, BTreeSet<Iri>>,
}

impl Closure {
    pub fn from_edges<N, E>(nodes: N, edges: E) -> Self
    where
        N: IntoIterator<Item = Iri>,
        E: IntoIterator<Item = (Iri, Iri)>,
    {
        let mut direct: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
        let mut all: BTreeSet<Iri> = nodes.into_iter().collect();
        for (sub, sup) in edges {
            all.insert(sub.clone());
            all.insert(sup.clone());
            direct.entry(sub).or_default().insert(sup);
        }

        let mut up = BTreeMap::new();
        for start in &all {
            let mut seen = BTreeSet::from([start.clone()]);
            let mut queue = VecDeque::from([start]);
            while let Some(node) = queue.pop_front() {
                for next in direct.get(node).into_iter().flatten() {
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
            up.insert(start.clone(), seen);
        }

        let mut down: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
        for (sub, sups) in &up {
            for sup in sups {
                down.entry(sup.clone()).or_default().insert(sub.clone());
            }
        }
        Closure { up, down }
    }

    /// `sub ⊑ sup` under the closure.
    pub fn contains(&self, sub: &Iri, sup: &Iri) -> bool {
        sub == sup || self.up.get(sub).is_some_and(|s| s.contains(sup))
    }

    /// `node` and everything above it.
    pub fn ancestors<'a>(&'a self, node: &'a Iri) -> Box<dyn Iterator<Item = &'a Iri> + 'a> {
        match self.up.get(node) {
            Some(set) => Box::new(set.iter()),
            None => Box::new(std::iter::once(node)),
        }
    }

    /// `node` and everything below it.
    pub fn descendants<'a>(&'a self, node: &'a Iri) -> Box<dyn Iterator<Item = &'a Iri> + 'a> {
        match self.down.get(node) {
            Some(set) => Box::new(set.iter()),
            None => Box::new(std::iter::once(node)),
        }
    }

    /// Members of `node`'s cycle, `node` included.
    pub fn equivalents(&self, node: &Iri) -> BTreeSet<Iri> {
        self.ancestors(node)
            .filter(|a| self.contains(a, node))
            .cloned()
            .collect()
    }

    /// Nodes mentioned in the hierarchy.
    pub fn nodes(&self) -> impl Iterator<Item = &Iri> {
        self.up.keys()
    }

    /// All related pairs over known nodes, reflexive pairs included.
    pub fn pairs(&self) -> impl Iterator<Item = (&Iri, &Iri)> {
        self.up.iter().flat_map(|(sub, sups)| sups.iter().map(move |sup| (sub, sup)))
    }

    pub fn len(&self) -> usize {
        self.up.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }
}
