mod common;

use common::*;
use nfdi_forge_core::cq::{load_suite, run_case, run_suite, Mode, Status, SuiteError};
use nfdi_forge_core::rules::{inferred_graph, materialize};

fn suite_text() -> String {
    std::fs::read_to_string(workspace_root().join("suites/suite-core.json")).unwrap()
}

#[test]
fn bundled_suite_covers_every_category_twice() {
    let suite = load_suite(&suite_text()).unwrap();
    assert!(suite.len() >= 12);
    for cat in ["services", "standards", "processes", "events", "contact-points"] {
        let n = suite
            .iter()
            .filter(|c| serde_json::to_value(c.category).unwrap() == cat && c.mode != Mode::Unanswerable)
            .count();
        assert!(n >= 2, "{cat}: {n}");
    }
}

#[test]
fn equivalence_cases_are_symmetric() {
    let schema = core_schema();
    let rules = bundled_rules();
    let g = read_graph(&fixture("cq-data.ttl"));
    let mut merged = g.clone();
    merged.extend(inferred_graph(&materialize(&g, &schema, &rules)).iter());
    let suite = load_suite(&suite_text()).unwrap();
    for case in suite.iter().filter(|c| c.mode == Mode::Equivalence) {
        let forward = run_case(case, &g, &merged, &schema);
        let backward = run_case(&case.swapped(), &g, &merged, &schema);
        assert_eq!(forward.status, Status::Pass, "{}: {:?}", case.id, forward.diagnostics);
        assert_eq!(forward.status, backward.status, "{}", case.id);
    }
}

#[test]
fn shared_and_per_case_materialization_agree() {
    let schema = core_schema();
    let rules = bundled_rules();
    let g = read_graph(&fixture("cq-data.ttl"));
    let suite = load_suite(&suite_text()).unwrap();
    let shared = run_suite(&suite, &g, &schema, &rules);
    for case in &suite {
        let alone = run_suite(std::slice::from_ref(case), &g, &schema, &rules);
        assert_eq!(shared.outcome(&case.id), alone.outcome(&case.id), "{}", case.id);
    }
}

#[test]
fn contact_point_equivalence_passes_on_its_own_fixture() {
    let schema = core_schema();
    let rules = bundled_rules();
    let suite = load_suite(&suite_text()).unwrap();
    let case = suite.iter().find(|c| c.id == "services-02").unwrap();
    let report = run_suite(std::slice::from_ref(case), &read_graph(&fixture("contact-point.ttl")), &schema, &rules);
    assert_eq!(report.cases[0].status, Status::Pass, "{:?}", report.cases[0].diagnostics);
    assert_eq!(report.cases[0].rows, Some(1));
}

#[test]
fn failing_expectation_is_reported_with_diagnostics() {
    let text = r#"[{"id":"x","category":"other","question":"q","mode":"query",
        "query":"SELECT ?s WHERE { ?s a nfdicore:Dataset }","expect":{"exactRows":99}}]"#;
    let suite = load_suite(text).unwrap();
    let report = run_suite(&suite, &read_graph(&fixture("cq-data.ttl")), &core_schema(), &bundled_rules());
    assert_eq!(report.summary.failed, 1);
    assert!(report.cases[0].diagnostics[0].contains("99"), "{:?}", report.cases[0].diagnostics);
}

#[test]
fn mode_field_mismatch_names_the_case() {
    let text = r#"[{"id":"lonely","category":"other","question":"q","mode":"equivalence","query":"SELECT ?s WHERE { ?s ?p ?o }"}]"#;
    match load_suite(text) {
        Err(SuiteError::InvalidCases(list)) => assert_eq!(list[0].0, "lonely"),
        other => panic!("{other:?}"),
    }
}
