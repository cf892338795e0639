mod common;

use std::collections::BTreeSet;

use common::*;
use nfdi_forge_core::ontology::{
    apply_intersection_axioms, module_order, resolve_modules, ModuleError, ModuleRegistry, MODULE_PATH_ENV,
};
use nfdi_forge_core::rdf::{Graph, Iri, Term, Triple};
use nfdi_forge_core::vocab;
use proptest::prelude::*;

fn nfdi(local: &str) -> Iri {
    iri(&format!("{}{local}", vocab::NFDICORE))
}

#[test]
fn core_schema_has_both_intersection_axioms() {
    let schema = core_schema();
    let defined: BTreeSet<&Iri> = schema.intersection_axioms().iter().map(|a| a.defined_class()).collect();
    assert_eq!(defined, [&nfdi("CreativeWork"), &nfdi("Service")].into());
    let ice = iri(&format!("{}InformationContentEntity", vocab::IAO));
    for axiom in schema.intersection_axioms() {
        assert_eq!(axiom.operands().len(), 2);
        assert!(axiom.operands().contains(&ice));
    }
}

#[test]
fn shortcut_properties_specialize_is_about() {
    let schema = core_schema();
    let about = iri(&format!("{}isAbout", vocab::IAO));
    for p in ["license", "software", "sparqlEndpoint", "standard"] {
        assert!(schema.is_subproperty(&nfdi(p), &about), "{p}");
    }
}

#[test]
fn resources_and_processes_sit_on_both_sides_of_the_upper_split() {
    let schema = core_schema();
    for c in ["Dataset", "LearningAndTeaching", "Standard", "Person", "Place"] {
        assert!(schema.continuant_classes().contains(&nfdi(c)), "{c}");
    }
    for c in ["Project", "Event", "ServiceProvision"] {
        assert!(schema.process_classes().contains(&nfdi(c)), "{c}");
    }
    assert!(schema.role_classes().contains(&nfdi("ContactPointRole")));
}

#[test]
fn culture_module_imports_the_core() {
    let (registry, root) = ModuleRegistry::discover(&fixture("cto.json")).unwrap();
    assert_eq!(module_order(&root, &registry).unwrap(), ["nfdicore", "cto"]);
    let (_, schema) = ontology("cto.json");
    let event = iri("https://nfdi4culture.de/ontology#PerformingArtsEvent");
    assert!(schema.process_classes().contains(&event));
}

#[test]
fn module_path_env_adds_registry_directories() {
    let dir = tempfile::tempdir().unwrap();
    let extra = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("top.json"), r#"{"id":"top","graph":"top.ttl","imports":["lib"]}"#).unwrap();
    std::fs::write(dir.path().join("top.ttl"), "<http://ex.org/A> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://ex.org/B> .\n").unwrap();
    std::fs::write(extra.path().join("lib.json"), r#"{"id":"lib","graph":"lib.ttl","imports":[]}"#).unwrap();
    std::fs::write(extra.path().join("lib.ttl"), "<http://ex.org/B> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://ex.org/C> .\n").unwrap();
    let top = dir.path().join("top.json");
    let err = ModuleRegistry::discover(&top).and_then(|(r, id)| resolve_modules(&id, &r));
    assert!(matches!(err, Err(ModuleError::Missing { .. })), "{err:?}");
    std::env::set_var(MODULE_PATH_ENV, extra.path());
    let (registry, id) = ModuleRegistry::discover(&top).unwrap();
    std::env::remove_var(MODULE_PATH_ENV);
    assert_eq!(resolve_modules(&id, &registry).unwrap().len(), 2);
}

#[test]
fn intersection_on_the_fixture_schema() {
    let schema = core_schema();
    let rdf_type = Iri::rdf_type();
    let ty = |s: &str, c: String| Triple::new(ex(s), rdf_type.clone(), Term::iri(c).unwrap()).unwrap();
    let g: Graph = [ty("svc", format!("{}Service", vocab::NFDICORE))].into_iter().collect();
    let added = apply_intersection_axioms(&g, &schema);
    let want: BTreeSet<Triple> = [
        ty("svc", format!("{}InformationContentEntity", vocab::IAO)),
        ty("svc", format!("{}Service", vocab::SCHEMA)),
    ]
    .into();
    assert_eq!(added, want);
    let physical: Graph = [ty("sculpture", format!("{}CreativeWork", vocab::SCHEMA))].into_iter().collect();
    assert!(apply_intersection_axioms(&physical, &schema).is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn class_closure_matches_warshall(seed in any::<u64>()) {
        let vocab = Vocab::new(8, 4, 4);
        let schema = random_schema(&mut rng(seed), &vocab);
        let oracle = warshall(schema.classes(), schema.subclass_edges());
        for a in &vocab.classes {
            for b in &vocab.classes {
                prop_assert_eq!(schema.is_subclass(a, b), oracle.contains(&(a.clone(), b.clone())), "{} {}", a, b);
            }
        }
    }

    #[test]
    fn intersection_reaches_a_fixpoint(seed in any::<u64>()) {
        let schema = core_schema();
        let mut r = rng(seed);
        let classes: Vec<Iri> = schema.classes().iter().cloned().collect();
        let mut g = Graph::new();
        for i in 0..rand::Rng::gen_range(&mut r, 1..12) {
            let c = classes[rand::Rng::gen_range(&mut r, 0..classes.len())].clone();
            g.insert(Triple::new(ex(&format!("n{}", i % 4)), Iri::rdf_type(), Term::Iri(c)).unwrap());
        }
        let first = apply_intersection_axioms(&g, &schema);
        for t in &first {
            prop_assert!(!g.contains(t));
        }
        g.extend(first);
        prop_assert!(apply_intersection_axioms(&g, &schema).is_empty());
    }
}
