//! Synthetic workloads for the benchmarks.

use std::path::{Path, PathBuf};

use nfdi_forge_core::ontology::{extract_schema, resolve_modules, ModuleRegistry, Schema};
use nfdi_forge_core::rdf::{Graph, Iri, Term, Triple};
use nfdi_forge_core::vocab::{BFO, IAO, NFDICORE};

const EX: &str = "https://example.org/bench/";

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Schema of the bundled core excerpt.
pub fn core_schema() -> Schema {
    let (registry, root) = ModuleRegistry::discover(&fixtures_dir().join("manifest.json")).expect("manifest loads");
    extract_schema(&resolve_modules(&root, &registry).expect("modules resolve")).expect("schema extracts")
}

fn node(kind: &str, i: usize) -> Term {
    Term::iri(format!("{EX}{kind}{i}")).expect("valid IRI")
}

fn iri(ns: &str, local: &str) -> Iri {
    Iri::new(format!("{ns}{local}")).expect("valid IRI")
}

struct Builder {
    g: Graph,
    rdf_type: Iri,
    has_role: Iri,
    participates: Iri,
    realized_in: Iri,
}

impl Builder {
    fn new() -> Self {
        Builder {
            g: Graph::new(),
            rdf_type: Iri::rdf_type(),
            has_role: iri(BFO, "RO_0000087"),
            participates: iri(BFO, "RO_0000056"),
            realized_in: iri(BFO, "BFO_0000054"),
        }
    }

    fn typed(&mut self, s: &Term, ns: &str, class: &str) {
        let t = Triple::new(s.clone(), self.rdf_type.clone(), Term::Iri(iri(ns, class))).expect("IRI subject");
        self.g.insert(t);
    }

    fn link(&mut self, s: &Term, p: &Iri, o: &Term) {
        self.g.insert(Triple::new(s.clone(), p.clone(), o.clone()).expect("IRI subject"));
    }

    /// An agent publishing a dataset through a publishing process.
    fn publisher(&mut self, i: usize) {
        let (agent, ds, role, process) = (node("org", i), node("ds", i), node("pubRole", i), node("pub", i));
        self.typed(&agent, NFDICORE, "Organization");
        self.typed(&ds, NFDICORE, "Dataset");
        self.typed(&role, NFDICORE, "PublisherRole");
        self.typed(&process, IAO, "PublishingProcess");
        let (p, h, r) = (self.participates.clone(), self.has_role.clone(), self.realized_in.clone());
        self.link(&agent, &p, &process);
        self.link(&ds, &p, &process);
        self.link(&agent, &h, &role);
        self.link(&role, &r, &process);
    }

    /// A learning and teaching service with one contact person.
    fn contact(&mut self, i: usize) {
        let (person, svc, role, process) = (node("person", i), node("svc", i), node("cpRole", i), node("provision", i));
        self.typed(&person, NFDICORE, "Person");
        self.typed(&svc, NFDICORE, "LearningAndTeaching");
        self.typed(&role, NFDICORE, "ContactPointRole");
        self.typed(&process, NFDICORE, "ServiceProvision");
        let (p, h, r) = (self.participates.clone(), self.has_role.clone(), self.realized_in.clone());
        self.link(&person, &h, &role);
        self.link(&person, &p, &process);
        self.link(&role, &r, &process);
        self.link(&svc, &p, &process);
    }
}

/// `n` independent copies of the publisher pattern and `n` of the contact
/// pattern: `16 * n` triples.
pub fn role_patterns(n: usize) -> Graph {
    let mut b = Builder::new();
    for i in 0..n {
        b.publisher(i);
        b.contact(i);
    }
    b.g
}
