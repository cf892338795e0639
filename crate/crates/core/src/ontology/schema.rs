use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::closure::Closure;
use crate::rdf::{Graph, Iri, Term};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("malformed intersection axiom for {class}: {reason}")]
    MalformedIntersection { class: String, reason: String },
    #[error("unsupported class expression for {class}: {detail}")]
    UnsupportedClassExpression { class: String, detail: String },
}

/// `defined ≡ operand₁ ⊓ operand₂ ⊓ ...` over named classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IntersectionAxiom {
    defined: Iri,
    operands: Vec<Iri>,
}

impl IntersectionAxiom {
    pub fn new(defined: Iri, operands: Vec<Iri>) -> Result<Self, SchemaError> {
        let malformed = |reason: &str| SchemaError::MalformedIntersection {
            class: defined.to_string(),
            reason: reason.to_string(),
        };
        if operands.len() < 2 {
            return Err(malformed("an intersection needs at least two operands"));
        }
        if operands.contains(&defined) {
            return Err(malformed("the defined class appears among its own operands"));
        }
        Ok(IntersectionAxiom { defined, operands })
    }

    pub fn defined_class(&self) -> &Iri {
        &self.defined
    }

    pub fn operands(&self) -> &[Iri] {
        &self.operands
    }
}

/// Schema-level knowledge read from an ontology graph. Immutable once built;
/// the hierarchy closures and the BFO partitions are computed up front.
#[derive(Debug, Clone, Default)]
pub struct Schema {
    classes: BTreeSet<Iri>,
    subclass_edges: BTreeSet<(Iri, Iri)>,
    properties: BTreeSet<Iri>,
    subproperty_edges: BTreeSet<(Iri, Iri)>,
    disjoint_pairs: BTreeSet<(Iri, Iri)>,
    domains: BTreeMap<Iri, BTreeSet<Iri>>,
    ranges: BTreeMap<Iri, BTreeSet<Iri>>,
    intersections: Vec<IntersectionAxiom>,
    class_closure: Closure,
    property_closure: Closure,
    role_classes: BTreeSet<Iri>,
    process_classes: BTreeSet<Iri>,
    continuant_classes: BTreeSet<Iri>,
    occurrent_classes: BTreeSet<Iri>,
    independent_continuant_classes: BTreeSet<Iri>,
}

impl Schema {
    pub fn builder() -> SchemaBuilder {
        SchemaBuilder::default()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty() && self.properties.is_empty()
    }

    pub fn classes(&self) -> &BTreeSet<Iri> {
        &self.classes
    }

    /// Asserted (direct) subclass edges, `(sub, sup)`.
    pub fn subclass_edges(&self) -> &BTreeSet<(Iri, Iri)> {
        &self.subclass_edges
    }

    pub fn properties(&self) -> &BTreeSet<Iri> {
        &self.properties
    }

    pub fn subproperty_edges(&self) -> &BTreeSet<(Iri, Iri)> {
        &self.subproperty_edges
    }

    /// Unordered pairs, stored smaller-first.
    pub fn disjoint_pairs(&self) -> &BTreeSet<(Iri, Iri)> {
        &self.disjoint_pairs
    }

    pub fn domains(&self, property: &Iri) -> impl Iterator<Item = &Iri> {
        self.domains.get(property).into_iter().flatten()
    }

    pub fn ranges(&self, property: &Iri) -> impl Iterator<Item = &Iri> {
        self.ranges.get(property).into_iter().flatten()
    }

    pub fn intersection_axioms(&self) -> &[IntersectionAxiom] {
        &self.intersections
    }

    pub fn class_closure(&self) -> &Closure {
        &self.class_closure
    }

    pub fn property_closure(&self) -> &Closure {
        &self.property_closure
    }

    pub fn is_subclass(&self, sub: &Iri, sup: &Iri) -> bool {
        self.class_closure.contains(sub, sup)
    }

    pub fn is_subproperty(&self, sub: &Iri, sup: &Iri) -> bool {
        self.property_closure.contains(sub, sup)
    }

    pub fn role_classes(&self) -> &BTreeSet<Iri> {
        &self.role_classes
    }

    pub fn process_classes(&self) -> &BTreeSet<Iri> {
        &self.process_classes
    }

    pub fn continuant_classes(&self) -> &BTreeSet<Iri> {
        &self.continuant_classes
    }

    pub fn occurrent_classes(&self) -> &BTreeSet<Iri> {
        &self.occurrent_classes
    }

    pub fn independent_continuant_classes(&self) -> &BTreeSet<Iri> {
        &self.independent_continuant_classes
    }
}

#[derive(Debug, Default)]
pub struct SchemaBuilder {
    classes: BTreeSet<Iri>,
    subclass_edges: BTreeSet<(Iri, Iri)>,
    properties: BTreeSet<Iri>,
    subproperty_edges: BTreeSet<(Iri, Iri)>,
    disjoint_pairs: BTreeSet<(Iri, Iri)>,
    domains: BTreeMap<Iri, BTreeSet<Iri>>,
    ranges: BTreeMap<Iri, BTreeSet<Iri>>,
    intersections: BTreeSet<IntersectionAxiom>,
}

fn is_datatype(iri: &Iri) -> bool {
    iri.as_str().starts_with(vocab::XSD) || iri.as_str() == vocab::rdfs::LITERAL
}

impl SchemaBuilder {
    pub fn class(&mut self, class: Iri) -> &mut Self {
        self.classes.insert(class);
        self
    }

    pub fn subclass(&mut self, sub: Iri, sup: Iri) -> &mut Self {
        self.classes.insert(sub.clone());
        self.classes.insert(sup.clone());
        self.subclass_edges.insert((sub, sup));
        self
    }

    pub fn property(&mut self, property: Iri) -> &mut Self {
        self.properties.insert(property);
        self
    }

    pub fn subproperty(&mut self, sub: Iri, sup: Iri) -> &mut Self {
        self.properties.insert(sub.clone());
        self.properties.insert(sup.clone());
        self.subproperty_edges.insert((sub, sup));
        self
    }

    pub fn disjoint(&mut self, a: Iri, b: Iri) -> &mut Self {
        self.classes.insert(a.clone());
        self.classes.insert(b.clone());
        let pair = if a <= b { (a, b) } else { (b, a) };
        self.disjoint_pairs.insert(pair);
        self
    }

    pub fn domain(&mut self, property: Iri, class: Iri) -> &mut Self {
        self.properties.insert(property.clone());
        self.classes.insert(class.clone());
        self.domains.entry(property).or_default().insert(class);
        self
    }

    pub fn range(&mut self, property: Iri, target: Iri) -> &mut Self {
        self.properties.insert(property.clone());
        if !is_datatype(&target) {
            self.classes.insert(target.clone());
        }
        self.ranges.entry(property).or_default().insert(target);
        self
    }

    /// Adds the axiom together with the entailed `defined ⊑ operand` edges.
    pub fn intersection(&mut self, axiom: IntersectionAxiom) -> &mut Self {
        for op in axiom.operands() {
            self.subclass(axiom.defined_class().clone(), op.clone());
        }
        self.intersections.insert(axiom);
        self
    }

    pub fn build(&self) -> Schema {
        let class_closure = Closure::from_edges(self.classes.iter().cloned(), self.subclass_edges.iter().cloned());
        let property_closure =
            Closure::from_edges(self.properties.iter().cloned(), self.subproperty_edges.iter().cloned());
        let below = |root: &'static str| -> BTreeSet<Iri> {
            let root = Iri::from_static(root);
            self.classes
                .iter()
                .filter(|c| class_closure.contains(c, &root))
                .cloned()
                .collect()
        };
        Schema {
            role_classes: below(vocab::bfo::ROLE),
            process_classes: below(vocab::bfo::PROCESS),
            continuant_classes: below(vocab::bfo::CONTINUANT),
            occurrent_classes: below(vocab::bfo::OCCURRENT),
            independent_continuant_classes: below(vocab::bfo::INDEPENDENT_CONTINUANT),
            classes: self.classes.clone(),
            subclass_edges: self.subclass_edges.clone(),
            properties: self.properties.clone(),
            subproperty_edges: self.subproperty_edges.clone(),
            disjoint_pairs: self.disjoint_pairs.clone(),
            domains: self.domains.clone(),
            ranges: self.ranges.clone(),
            intersections: self.intersections.iter().cloned().collect(),
            class_closure,
            property_closure,
        }
    }
}

/// Reads hierarchy, disjointness, domain/range and intersection-equivalence
/// assertions. Vocabulary the schema does not model is skipped.
pub fn extract_schema(g: &Graph) -> Result<Schema, SchemaError> {
    let iri = Iri::from_static;
    let rdf_type = Iri::rdf_type();
    let mut b = Schema::builder();

    for kind in [vocab::owl::CLASS, vocab::rdfs::CLASS] {
        for s in g.subjects(&rdf_type, &Term::Iri(iri(kind))) {
            if let Term::Iri(c) = s {
                b.class(c.clone());
            }
        }
    }
    for kind in [
        vocab::owl::OBJECT_PROPERTY,
        vocab::owl::DATATYPE_PROPERTY,
        vocab::owl::ANNOTATION_PROPERTY,
        vocab::rdf::PROPERTY,
    ] {
        for s in g.subjects(&rdf_type, &Term::Iri(iri(kind))) {
            if let Term::Iri(p) = s {
                b.property(p.clone());
            }
        }
    }

    let named_pairs = |predicate: &'static str| -> Vec<(Iri, Iri)> {
        g.match_pattern(None, Some(&iri(predicate)), None)
            .into_iter()
            .filter_map(|t| match (t.subject(), t.object()) {
                (Term::Iri(s), Term::Iri(o)) => Some((s.clone(), o.clone())),
                _ => None,
            })
            .collect()
    };
    for (sub, sup) in named_pairs(vocab::rdfs::SUB_CLASS_OF) {
        b.subclass(sub, sup);
    }
    for (sub, sup) in named_pairs(vocab::rdfs::SUB_PROPERTY_OF) {
        b.subproperty(sub, sup);
    }
    for (x, y) in named_pairs(vocab::owl::DISJOINT_WITH) {
        b.disjoint(x, y);
    }
    for (p, c) in named_pairs(vocab::rdfs::DOMAIN) {
        b.domain(p, c);
    }
    for (p, c) in named_pairs(vocab::rdfs::RANGE) {
        b.range(p, c);
    }

    for t in g.match_pattern(None, Some(&iri(vocab::owl::EQUIVALENT_CLASS)), None) {
        match (t.subject(), t.object()) {
            (Term::Iri(a), Term::Iri(c)) => {
                b.subclass(a.clone(), c.clone());
                b.subclass(c.clone(), a.clone());
            }
            (Term::Iri(named), expr @ Term::BlankNode(_)) | (expr @ Term::BlankNode(_), Term::Iri(named)) => {
                let operands = intersection_operands(g, named, expr)?;
                b.intersection(IntersectionAxiom::new(named.clone(), operands)?);
            }
            (s, o) => {
                return Err(SchemaError::UnsupportedClassExpression {
                    class: s.to_string(),
                    detail: format!("equivalence with {o} is not between a named class and an intersection"),
                });
            }
        }
    }
    Ok(b.build())
}

fn intersection_operands(g: &Graph, named: &Iri, expr: &Term) -> Result<Vec<Iri>, SchemaError> {
    let iri = Iri::from_static;
    let unsupported = |detail: String| SchemaError::UnsupportedClassExpression {
        class: named.to_string(),
        detail,
    };
    for other in [vocab::owl::UNION_OF, vocab::owl::COMPLEMENT_OF, vocab::owl::ON_PROPERTY, vocab::owl::ONE_OF] {
        if g.objects(expr, &iri(other)).next().is_some() {
            return Err(unsupported(format!("<{other}> expressions are not supported")));
        }
    }
    let lists: Vec<&Term> = g.objects(expr, &iri(vocab::owl::INTERSECTION_OF)).collect();
    let [list] = lists.as_slice() else {
        return Err(unsupported(format!(
            "expected exactly one owl:intersectionOf, found {}",
            lists.len()
        )));
    };
    let malformed = |reason: &str| SchemaError::MalformedIntersection {
        class: named.to_string(),
        reason: reason.to_string(),
    };

    let nil = Term::Iri(iri(vocab::rdf::NIL));
    let first = iri(vocab::rdf::FIRST);
    let rest = iri(vocab::rdf::REST);
    let mut operands = Vec::new();
    let mut node = (*list).clone();
    let mut visited = BTreeSet::new();
    while node != nil {
        if !visited.insert(node.clone()) {
            return Err(malformed("operand list is cyclic"));
        }
        let firsts: Vec<&Term> = g.objects(&node, &first).collect();
        let rests: Vec<&Term> = g.objects(&node, &rest).collect();
        let ([head], [tail]) = (firsts.as_slice(), rests.as_slice()) else {
            return Err(malformed("operand list is not a well-formed rdf:List"));
        };
        match head {
            Term::Iri(op) => operands.push(op.clone()),
            other => return Err(unsupported(format!("operand {other} is not a named class"))),
        }
        node = (*tail).clone();
    }
    Ok(operands)
}
