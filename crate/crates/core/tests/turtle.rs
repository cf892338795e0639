mod common;

use common::*;
use nfdi_forge_core::rdf::{isomorphic, PrefixMap};
use nfdi_forge_core::turtle::{parse, serialize, Dialect, ErrorKind};
use proptest::prelude::*;

fn expected_kind(stem: &str) -> ErrorKind {
    for (prefix, kind) in [
        ("bad-token", ErrorKind::BadToken),
        ("unterminated-literal", ErrorKind::UnterminatedLiteral),
        ("unknown-prefix", ErrorKind::UnknownPrefix),
        ("bad-iri", ErrorKind::BadIri),
        ("bad-structure", ErrorKind::BadStructure),
    ] {
        if stem.starts_with(prefix) {
            return kind;
        }
    }
    panic!("{stem}: file name does not name an error kind");
}

#[test]
fn invalid_corpus_reports_the_named_error() {
    let files = rdf_files(&fixture("invalid"));
    assert!(files.len() >= 5);
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let stem = path.file_stem().unwrap().to_string_lossy().to_string();
        let err = parse(&text, &iri("http://ex.org/"), Dialect::Turtle).expect_err(&stem);
        assert_eq!(err.kind, expected_kind(&stem), "{stem}: {err}");
        assert!(err.line >= 1 && err.column >= 1, "{stem}: {err}");
    }
}

#[test]
fn bundled_fixtures_parse() {
    for path in rdf_files(&fixture("")).into_iter().filter(|p| !p.starts_with(fixture("invalid"))) {
        assert!(!read_graph(&path).is_empty(), "{}", path.display());
    }
}

#[test]
fn publisher_fixture_has_eight_triples() {
    assert_eq!(read_graph(&fixture("publisher-pattern.ttl")).len(), 8);
}

#[test]
fn german_title_survives_a_round_trip() {
    let g = read_graph(&fixture("cto-data.ttl"));
    let text = serialize(&g, g.prefixes(), Dialect::Turtle);
    assert!(text.contains("\"Was Ihr Wollt\"@de"), "{text}");
}

#[test]
fn empty_document_is_an_empty_graph() {
    let (g, _) = parse("", &iri("http://ex.org/"), Dialect::Turtle).unwrap();
    assert!(g.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_graphs_round_trip(seed in any::<u64>()) {
        let g = random_roundtrip_graph(&mut rng(seed));
        let mut pm = PrefixMap::standard();
        pm.insert("", EX).unwrap();
        for dialect in [Dialect::Turtle, Dialect::NTriples] {
            let text = serialize(&g, &pm, dialect);
            let (back, _) = parse(&text, &iri("http://ex.org/"), dialect).unwrap();
            prop_assert!(isomorphic(&g, &back), "{}", text);
        }
    }

    #[test]
    fn serialization_is_deterministic(seed in any::<u64>()) {
        let g = random_roundtrip_graph(&mut rng(seed));
        let pm = PrefixMap::standard();
        let once = serialize(&g, &pm, Dialect::Turtle);
        let (back, _) = parse(&once, &iri("http://ex.org/"), Dialect::Turtle).unwrap();
        if back == g {
            prop_assert_eq!(serialize(&back, &pm, Dialect::Turtle), once);
        }
    }
}
