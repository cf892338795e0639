//! Namespace and term constants shared by the fixtures, the validator and the
//! rule engine. Local names follow the convention recorded in `NAMES.md`.

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
/// OBO namespace. The `bfo:` label is bound here so that `bfo:RO_0000087`
/// expands to the published relation IRI.
pub const BFO: &str = "http://purl.obolibrary.org/obo/";
pub const IAO: &str = "http://purl.obolibrary.org/obo/iao.owl#";
pub const OBI: &str = "http://purl.obolibrary.org/obo/obi.owl#";
pub const SCHEMA: &str = "http://schema.org/";
pub const NFDICORE: &str = "https://nfdi.fiz-karlsruhe.de/ontology/";

pub mod rdf {
    pub const TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const FIRST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
    pub const REST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
    pub const NIL: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
    pub const LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
    pub const PROPERTY: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";
}

pub mod rdfs {
    pub const SUB_CLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
    pub const SUB_PROPERTY_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
    pub const DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
    pub const RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";
    pub const CLASS: &str = "http://www.w3.org/2000/01/rdf-schema#Class";
    pub const LITERAL: &str = "http://www.w3.org/2000/01/rdf-schema#Literal";
}

pub mod owl {
    pub const CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
    pub const OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
    pub const DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
    pub const ANNOTATION_PROPERTY: &str = "http://www.w3.org/2002/07/owl#AnnotationProperty";
    pub const EQUIVALENT_CLASS: &str = "http://www.w3.org/2002/07/owl#equivalentClass";
    pub const INTERSECTION_OF: &str = "http://www.w3.org/2002/07/owl#intersectionOf";
    pub const UNION_OF: &str = "http://www.w3.org/2002/07/owl#unionOf";
    pub const COMPLEMENT_OF: &str = "http://www.w3.org/2002/07/owl#complementOf";
    pub const ON_PROPERTY: &str = "http://www.w3.org/2002/07/owl#onProperty";
    pub const ONE_OF: &str = "http://www.w3.org/2002/07/owl#oneOf";
    pub const DISJOINT_WITH: &str = "http://www.w3.org/2002/07/owl#disjointWith";
}

pub mod xsd {
    pub const STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
}

/// BFO classes (CamelCased labels under the `bfo:` namespace) and the
/// relation IRIs used in the published contact-point query.
pub mod bfo {
    pub const CONTINUANT: &str = "http://purl.obolibrary.org/obo/Continuant";
    pub const OCCURRENT: &str = "http://purl.obolibrary.org/obo/Occurrent";
    pub const INDEPENDENT_CONTINUANT: &str = "http://purl.obolibrary.org/obo/IndependentContinuant";
    pub const ROLE: &str = "http://purl.obolibrary.org/obo/Role";
    pub const PROCESS: &str = "http://purl.obolibrary.org/obo/Process";
    /// has role
    pub const HAS_ROLE: &str = "http://purl.obolibrary.org/obo/RO_0000087";
    /// participates in
    pub const PARTICIPATES_IN: &str = "http://purl.obolibrary.org/obo/RO_0000056";
    /// realized in
    pub const REALIZED_IN: &str = "http://purl.obolibrary.org/obo/BFO_0000054";
}

pub mod nfdicore {
    pub const RESOURCE: &str = "https://nfdi.fiz-karlsruhe.de/ontology/Resource";
}

/// Prefix labels every bundled document declares.
pub const STANDARD_PREFIXES: &[(&str, &str)] = &[
    ("bfo", BFO),
    ("iao", IAO),
    ("nfdicore", NFDICORE),
    ("obi", OBI),
    ("owl", OWL),
    ("rdf", RDF),
    ("rdfs", RDFS),
    ("schema", SCHEMA),
    ("xsd", XSD),
];
