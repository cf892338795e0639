use std::collections::{BTreeMap, BTreeSet};

use super::prefix::PrefixMap;
use super::term::{Iri, Term, Triple};

type Index<A, B, C> = BTreeMap<A, BTreeMap<B, BTreeSet<C>>>;

/// A set of triples indexed subject-first, predicate-first and object-first.
///
/// Mutation needs `&mut Graph`; once loading and materialization are done the
/// graph is shared by reference (or behind an `Arc`) and never changes again.
#[derive(Clone, Default)]
pub struct Graph {
    spo: Index<Term, Iri, Term>,
    pos: Index<Iri, Term, Term>,
    osp: Index<Term, Term, Iri>,
    len: usize,
    prefixes: PrefixMap,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_prefixes(prefixes: PrefixMap) -> Self {
        Graph {
            prefixes,
            ..Self::default()
        }
    }

    pub fn prefixes(&self) -> &PrefixMap {
        &self.prefixes
    }

    pub fn prefixes_mut(&mut self) -> &mut PrefixMap {
        &mut self.prefixes
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Returns `true` if the triple was not already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        let (s, p, o) = triple.into_parts();
        let fresh = self
            .spo
            .entry(s.clone())
            .or_default()
            .entry(p.clone())
            .or_default()
            .insert(o.clone());
        if !fresh {
            return false;
        }
        self.pos
            .entry(p.clone())
            .or_default()
            .entry(o.clone())
            .or_default()
            .insert(s.clone());
        self.osp.entry(o).or_default().entry(s).or_default().insert(p);
        self.len += 1;
        true
    }

    pub fn extend<I: IntoIterator<Item = Triple>>(&mut self, triples: I) -> usize {
        triples.into_iter().filter(|t| self.insert(t.clone())).count()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.spo
            .get(triple.subject())
            .and_then(|m| m.get(triple.predicate()))
            .is_some_and(|objs| objs.contains(triple.object()))
    }

    /// All triples in canonical (subject, predicate, object) order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().flat_map(|(s, preds)| {
            preds.iter().flat_map(move |(p, objs)| {
                objs.iter().map(move |o| make(s, p, o))
            })
        })
    }

    /// Triples matching every bound position, in canonical order.
    ///
    /// The lookup starts from whichever index narrows the candidates most:
    /// subject+predicate and predicate+object hit a leaf set directly,
    /// subject+object goes through the object index.
    pub fn match_pattern(&self, s: Option<&Term>, p: Option<&Iri>, o: Option<&Term>) -> Vec<Triple> {
        let mut out = Vec::new();
        if s.is_some_and(Term::is_literal) {
            return out;
        }
        match (s, p, o) {
            (Some(s), Some(p), Some(o)) => {
                let t = make(s, p, o);
                if self.contains(&t) {
                    out.push(t);
                }
            }
            (Some(s), Some(p), None) => {
                if let Some(objs) = self.spo.get(s).and_then(|m| m.get(p)) {
                    out.extend(objs.iter().map(|o| make(s, p, o)));
                }
            }
            (Some(s), None, Some(o)) => {
                if let Some(preds) = self.osp.get(o).and_then(|m| m.get(s)) {
                    out.extend(preds.iter().map(|p| make(s, p, o)));
                }
            }
            (Some(s), None, None) => {
                if let Some(preds) = self.spo.get(s) {
                    for (p, objs) in preds {
                        out.extend(objs.iter().map(|o| make(s, p, o)));
                    }
                }
            }
            (None, Some(p), Some(o)) => {
                if let Some(subjs) = self.pos.get(p).and_then(|m| m.get(o)) {
                    out.extend(subjs.iter().map(|s| make(s, p, o)));
                }
            }
            (None, Some(p), None) => {
                if let Some(by_obj) = self.pos.get(p) {
                    for (o, subjs) in by_obj {
                        out.extend(subjs.iter().map(|s| make(s, p, o)));
                    }
                }
                out.sort_unstable();
            }
            (None, None, Some(o)) => {
                if let Some(by_subj) = self.osp.get(o) {
                    for (s, preds) in by_subj {
                        out.extend(preds.iter().map(|p| make(s, p, o)));
                    }
                }
                out.sort_unstable();
            }
            (None, None, None) => out.extend(self.iter()),
        }
        out
    }

    /// Objects of `(s, p, ?)`.
    pub fn objects<'a>(&'a self, s: &Term, p: &Iri) -> impl Iterator<Item = &'a Term> + 'a {
        self.spo
            .get(s)
            .and_then(|m| m.get(p))
            .into_iter()
            .flat_map(|objs| objs.iter())
    }

    /// Subjects of `(?, p, o)`.
    pub fn subjects<'a>(&'a self, p: &Iri, o: &Term) -> impl Iterator<Item = &'a Term> + 'a {
        self.pos
            .get(p)
            .and_then(|m| m.get(o))
            .into_iter()
            .flat_map(|subjs| subjs.iter())
    }

    /// Distinct predicates, sorted.
    pub fn predicates(&self) -> impl Iterator<Item = &Iri> {
        self.pos.keys()
    }

    /// Distinct subject terms, sorted.
    pub fn subject_terms(&self) -> impl Iterator<Item = &Term> {
        self.spo.keys()
    }

    /// Every term occurring in any position, sorted.
    pub fn terms(&self) -> BTreeSet<Term> {
        let mut terms: BTreeSet<Term> = self.spo.keys().cloned().collect();
        terms.extend(self.osp.keys().cloned());
        terms.extend(self.pos.keys().cloned().map(Term::Iri));
        terms
    }

    /// Entry counts of the three indexes; all equal [`len`](Self::len).
    pub fn index_sizes(&self) -> [usize; 3] {
        fn count<A, B, C>(index: &Index<A, B, C>) -> usize {
            index.values().flat_map(|m| m.values()).map(BTreeSet::len).sum()
        }
        [count(&self.spo), count(&self.pos), count(&self.osp)]
    }
}

fn make(s: &Term, p: &Iri, o: &Term) -> Triple {
    Triple::new(s.clone(), p.clone(), o.clone()).expect("indexed subjects are never literals")
}

impl PartialEq for Graph {
    /// Triple-set equality; prefixes are presentation only.
    fn eq(&self, other: &Self) -> bool {
        self.spo == other.spo
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        g.extend(iter);
        g
    }
}
