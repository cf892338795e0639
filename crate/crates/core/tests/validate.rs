mod common;

use common::*;
use nfdi_forge_core::rdf::Graph;
use nfdi_forge_core::validate::{validate, validate_focus, Code, Severity};
use proptest::prelude::*;

#[test]
fn every_code_has_a_seed_and_a_severity() {
    for code in Code::ALL {
        let name = code.as_str().to_lowercase().replace('_', "-");
        assert!(fixture(&format!("validator/faults/{name}.ttl")).exists(), "{name}");
        assert_eq!(Code::parse(code.as_str()), Some(code));
    }
    assert_eq!(Code::RoleBearerNotIc.severity(), Severity::Error);
    assert_eq!(Code::ProcessAsResourceNotice.severity(), Severity::Notice);
}

#[test]
fn seeded_bearer_fault_points_at_the_process() {
    let g = read_graph(&fixture("validator/faults/role-bearer-not-ic.ttl"));
    let report = validate(&g, &core_schema());
    assert!(report.has_errors());
    assert_eq!(report.violations[0].focus, ex("pub1"));
    assert_eq!(report.graph_size, g.len());
}

#[test]
fn report_serializes_with_screaming_codes() {
    let g = read_graph(&fixture("validator/faults/range-violation.ttl"));
    let json = serde_json::to_value(validate(&g, &core_schema())).unwrap();
    assert_eq!(json["violations"][0]["code"], "RANGE_VIOLATION");
    assert_eq!(json["counts"]["error"], 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn violations_are_local_to_their_focus(seed in any::<u64>()) {
        let schema = ontology("cto.json").1;
        let mut r = rng(seed);
        let mut g = Graph::new();
        let sources: Vec<Graph> = rdf_files(&fixture("validator"))
            .iter()
            .chain([fixture("cq-data.ttl")].iter())
            .map(|p| read_graph(p))
            .collect();
        for src in &sources {
            for t in src.iter() {
                if rand::Rng::gen_bool(&mut r, 0.5) {
                    g.insert(t);
                }
            }
        }
        let report = validate(&g, &schema);
        for v in &report.violations {
            prop_assert!(validate_focus(&g, &schema, &v.focus).contains(v), "{:?}", v);
        }
        prop_assert_eq!(validate(&g, &schema), report);
    }
}
