//! Graph isomorphism up to blank-node renaming.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use super::graph::Graph;
use super::term::{BlankNode, Term, Triple};

/// Returns `true` when a bijection between the blank nodes of `a` and `b`
/// maps the triples of `a` exactly onto the triples of `b`.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    blank_bijection(a, b).is_some()
}

/// Finds a blank-node bijection witnessing isomorphism, if one exists.
pub fn blank_bijection(a: &Graph, b: &Graph) -> Option<BTreeMap<BlankNode, BlankNode>> {
    if a.len() != b.len() {
        return None;
    }
    let (ground_a, blank_a) = split(a);
    let (ground_b, blank_b) = split(b);
    if ground_a != ground_b || blank_a.len() != blank_b.len() {
        return None;
    }
    let nodes_a = blanks(&blank_a);
    let nodes_b = blanks(&blank_b);
    if nodes_a.len() != nodes_b.len() {
        return None;
    }
    if nodes_a.is_empty() {
        return Some(BTreeMap::new());
    }

    let colors_a = refine(&nodes_a, &blank_a);
    let colors_b = refine(&nodes_b, &blank_b);
    let mut hist_a: Vec<u64> = colors_a.values().copied().collect();
    let mut hist_b: Vec<u64> = colors_b.values().copied().collect();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return None;
    }

    // Most constrained blank nodes first.
    let mut class_size: HashMap<u64, usize> = HashMap::new();
    for c in colors_a.values() {
        *class_size.entry(*c).or_default() += 1;
    }
    let mut order: Vec<BlankNode> = nodes_a.iter().cloned().collect();
    order.sort_by_key(|n| (class_size[&colors_a[n]], n.clone()));

    let target: BTreeSet<Triple> = blank_b.iter().cloned().collect();
    let mut search = Search {
        order: &order,
        colors_a: &colors_a,
        colors_b: &colors_b,
        nodes_b: &nodes_b,
        source: &blank_a,
        target: &target,
        mapping: BTreeMap::new(),
        used: BTreeSet::new(),
    };
    if search.run(0) {
        Some(search.mapping)
    } else {
        None
    }
}

fn split(g: &Graph) -> (BTreeSet<Triple>, Vec<Triple>) {
    let mut ground = BTreeSet::new();
    let mut with_blanks = Vec::new();
    for t in g.iter() {
        if t.subject().is_blank() || t.object().is_blank() {
            with_blanks.push(t);
        } else {
            ground.insert(t);
        }
    }
    (ground, with_blanks)
}

fn blanks(triples: &[Triple]) -> BTreeSet<BlankNode> {
    let mut out = BTreeSet::new();
    for t in triples {
        for term in [t.subject(), t.object()] {
            if let Term::BlankNode(b) = term {
                out.insert(b.clone());
            }
        }
    }
    out
}

fn hash_of<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

/// Colour refinement: each round folds the colours of neighbouring blank
/// nodes into a node's colour.
fn refine(nodes: &BTreeSet<BlankNode>, triples: &[Triple]) -> BTreeMap<BlankNode, u64> {
    let mut colors: BTreeMap<BlankNode, u64> = nodes.iter().map(|n| (n.clone(), 0)).collect();
    for _ in 0..4 {
        let mut signatures: BTreeMap<BlankNode, Vec<u64>> = BTreeMap::new();
        let color_of = |term: &Term, colors: &BTreeMap<BlankNode, u64>| match term {
            Term::BlankNode(b) => hash_of(&("blank", colors[b])),
            other => hash_of(&("ground", other.to_string())),
        };
        for t in triples {
            let pred = t.predicate().as_str();
            if let Term::BlankNode(s) = t.subject() {
                let entry = hash_of(&("out", pred, color_of(t.object(), &colors), t.object() == t.subject()));
                signatures.entry(s.clone()).or_default().push(entry);
            }
            if let Term::BlankNode(o) = t.object() {
                let entry = hash_of(&("in", pred, color_of(t.subject(), &colors)));
                signatures.entry(o.clone()).or_default().push(entry);
            }
        }
        colors = nodes
            .iter()
            .map(|n| {
                let mut sig = signatures.remove(n).unwrap_or_default();
                sig.sort_unstable();
                (n.clone(), hash_of(&(colors[n], sig)))
            })
            .collect();
    }
    colors
}

struct Search<'a> {
    order: &'a [BlankNode],
    colors_a: &'a BTreeMap<BlankNode, u64>,
    colors_b: &'a BTreeMap<BlankNode, u64>,
    nodes_b: &'a BTreeSet<BlankNode>,
    source: &'a [Triple],
    target: &'a BTreeSet<Triple>,
    mapping: BTreeMap<BlankNode, BlankNode>,
    used: BTreeSet<BlankNode>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return self.source.iter().all(|t| self.map_triple(t).is_some_and(|m| self.target.contains(&m)));
        }
        let node = &self.order[depth];
        let color = self.colors_a[node];
        // Same label first: serializers that keep labels succeed immediately.
        let mut candidates: Vec<&BlankNode> = self
            .nodes_b
            .iter()
            .filter(|c| self.colors_b[*c] == color && !self.used.contains(*c))
            .collect();
        candidates.sort_by_key(|c| *c != node);
        for cand in candidates {
            self.mapping.insert(node.clone(), cand.clone());
            self.used.insert(cand.clone());
            if self.consistent() && self.run(depth + 1) {
                return true;
            }
            self.mapping.remove(node);
            self.used.remove(cand);
        }
        false
    }

    fn consistent(&self) -> bool {
        self.source
            .iter()
            .filter_map(|t| self.map_triple(t))
            .all(|m| self.target.contains(&m))
    }

    fn map_term(&self, term: &Term) -> Option<Term> {
        match term {
            Term::BlankNode(b) => self.mapping.get(b).cloned().map(Term::BlankNode),
            other => Some(other.clone()),
        }
    }

    fn map_triple(&self, t: &Triple) -> Option<Triple> {
        let s = self.map_term(t.subject())?;
        let o = self.map_term(t.object())?;
        Triple::new(s, t.predicate().clone(), o).ok()
    }
}
