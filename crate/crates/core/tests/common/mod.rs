//! Fixture loading, seeded generators and independent oracles shared by the
//! integration tests and the acceptance runner.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use nfdi_forge_core::ontology::{extract_schema, resolve_modules, ModuleRegistry, Schema};
use nfdi_forge_core::query::{PatternTerm, Query, TriplePattern};
use nfdi_forge_core::rdf::{Graph, Iri, Literal, PrefixMap, Term, Triple};
use nfdi_forge_core::rules::{parse_rules, Arg, PropertyAtom, Rule, RuleAtom, BUNDLED_RULES};
use nfdi_forge_core::turtle::{parse, Dialect};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EX: &str = "https://example.org/nfdi/";

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().expect("workspace root")
}

pub fn fixture(rel: &str) -> PathBuf {
    workspace_root().join("fixtures").join(rel)
}

pub fn ex(local: &str) -> Term {
    Term::iri(format!("{EX}{local}")).unwrap()
}

pub fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

pub fn read_graph(path: &Path) -> Graph {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let base = Iri::new(format!("file://{}", path.display())).unwrap();
    let (mut g, prefixes) =
        parse(&text, &base, Dialect::from_path(path)).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    *g.prefixes_mut() = prefixes;
    g
}

/// Merged ontology graph and extracted schema for a manifest under
/// `fixtures/`.
pub fn ontology(manifest: &str) -> (Graph, Schema) {
    let (registry, root) = ModuleRegistry::discover(&fixture(manifest)).expect("manifest loads");
    let g = resolve_modules(&root, &registry).expect("modules resolve");
    let schema = extract_schema(&g).expect("schema extracts");
    (g, schema)
}

pub fn core_schema() -> Schema {
    ontology("manifest.json").1
}

pub fn bundled_rules() -> Vec<Rule> {
    parse_rules(BUNDLED_RULES, &PrefixMap::standard()).expect("bundled rules parse")
}

/// Every `.ttl` and `.nt` file below `dir`, sorted.
pub fn rdf_files(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).unwrap().filter_map(Result::ok) {
            let p = entry.path();
            if p.is_dir() {
                stack.push(p);
            } else if p.extension().is_some_and(|x| x == "ttl" || x == "nt") {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small closed vocabulary so random graphs, rules and queries overlap.
#[derive(Debug, Clone)]
pub struct Vocab {
    pub classes: Vec<Iri>,
    pub properties: Vec<Iri>,
    pub nodes: Vec<Term>,
    pub literals: Vec<Term>,
}

impl Vocab {
    pub fn new(classes: usize, properties: usize, nodes: usize) -> Self {
        let v = |prefix: &str, n: usize| -> Vec<Iri> { (0..n).map(|i| Iri::new(format!("{EX}{prefix}{i}")).unwrap()).collect() };
        let mut node_terms: Vec<Term> = v("n", nodes).into_iter().map(Term::Iri).collect();
        node_terms.push(Term::blank("b0").unwrap());
        node_terms.push(Term::blank("b1").unwrap());
        Vocab {
            classes: v("C", classes),
            properties: v("p", properties),
            nodes: node_terms,
            literals: vec![
                Term::Literal(Literal::simple("x")),
                Term::Literal(Literal::lang("y", "en").unwrap()),
                Term::Literal(Literal::typed("1", iri("http://www.w3.org/2001/XMLSchema#integer")).unwrap()),
            ],
        }
    }
}

/// Random class and property hierarchies over `vocab`; cycles are allowed.
pub fn random_schema(rng: &mut impl Rng, vocab: &Vocab) -> Schema {
    let mut b = Schema::builder();
    for c in &vocab.classes {
        b.class(c.clone());
    }
    for p in &vocab.properties {
        b.property(p.clone());
    }
    for _ in 0..rng.gen_range(0..=vocab.classes.len()) {
        let a = vocab.classes.choose(rng).unwrap().clone();
        let c = vocab.classes.choose(rng).unwrap().clone();
        b.subclass(a, c);
    }
    for _ in 0..rng.gen_range(0..=vocab.properties.len() / 2) {
        let a = vocab.properties.choose(rng).unwrap().clone();
        let c = vocab.properties.choose(rng).unwrap().clone();
        b.subproperty(a, c);
    }
    b.build()
}

/// Up to `max` distinct triples: typing triples, property triples between
/// nodes, and literal-valued triples.
pub fn random_graph(rng: &mut impl Rng, vocab: &Vocab, max: usize) -> Graph {
    let mut g = Graph::new();
    let n = rng.gen_range(0..=max);
    for _ in 0..n * 3 {
        if g.len() >= n {
            break;
        }
        let s = vocab.nodes.choose(rng).unwrap().clone();
        let t = match rng.gen_range(0..10) {
            0..=2 => Triple::new(s, Iri::rdf_type(), Term::Iri(vocab.classes.choose(rng).unwrap().clone())),
            3 => Triple::new(s, vocab.properties.choose(rng).unwrap().clone(), vocab.literals.choose(rng).unwrap().clone()),
            _ => Triple::new(s, vocab.properties.choose(rng).unwrap().clone(), vocab.nodes.choose(rng).unwrap().clone()),
        };
        g.insert(t.unwrap());
    }
    g
}

const RULE_VARS: [&str; 4] = ["a", "b", "c", "d"];

/// Up to `max_rules` safe rules with 1 to `max_atoms` body atoms each.
pub fn random_rules(rng: &mut impl Rng, vocab: &Vocab, max_rules: usize, max_atoms: usize) -> Vec<Rule> {
    let mut rules = Vec::new();
    let count = rng.gen_range(1..=max_rules);
    let mut attempts = 0;
    while rules.len() < count && attempts < 100 {
        attempts += 1;
        let mut body = Vec::new();
        let arg = |rng: &mut dyn rand::RngCore, allow_const: bool| -> Arg {
            if allow_const && rng.gen_bool(0.15) {
                Arg::Term(vocab.nodes[rng.gen_range(0..vocab.nodes.len())].clone())
            } else {
                Arg::var(RULE_VARS[rng.gen_range(0..RULE_VARS.len())])
            }
        };
        for _ in 0..rng.gen_range(1..=max_atoms) {
            if rng.gen_bool(0.3) {
                let class = vocab.classes.choose(rng).unwrap().clone();
                body.push(RuleAtom::class(class, arg(rng, false)));
            } else {
                let p = vocab.properties.choose(rng).unwrap().clone();
                let s = arg(rng, true);
                let o = arg(rng, true);
                body.push(RuleAtom::property(p, s, o));
            }
        }
        let vars: Vec<String> = {
            let set: BTreeSet<&str> = body.iter().flat_map(|a| a.variables()).collect();
            set.into_iter().map(str::to_string).collect()
        };
        if vars.is_empty() {
            continue;
        }
        let pick = |rng: &mut dyn rand::RngCore| Arg::var(&vars[rng.gen_range(0..vars.len())]);
        let head = PropertyAtom {
            property: vocab.properties.choose(rng).unwrap().clone(),
            subject: pick(rng),
            object: pick(rng),
        };
        if let Ok(rule) = Rule::new(format!("r{}", rules.len()), body, head) {
            rules.push(rule);
        }
    }
    rules
}

const QUERY_VARS: [&str; 3] = ["x", "y", "z"];

/// A BGP of 1 to `max_patterns` patterns over at most three variables.
pub fn random_query(rng: &mut impl Rng, vocab: &Vocab, max_patterns: usize) -> Query {
    loop {
        let mut patterns = Vec::new();
        for _ in 0..rng.gen_range(1..=max_patterns) {
            let var = |rng: &mut dyn rand::RngCore| PatternTerm::Var(QUERY_VARS[rng.gen_range(0..QUERY_VARS.len())].to_string());
            let subject = if rng.gen_bool(0.25) {
                PatternTerm::Term(vocab.nodes.choose(rng).unwrap().clone())
            } else {
                var(rng)
            };
            let (predicate, object) = match rng.gen_range(0..10) {
                0..=2 => (
                    PatternTerm::Term(Term::Iri(Iri::rdf_type())),
                    if rng.gen_bool(0.7) {
                        PatternTerm::Term(Term::Iri(vocab.classes.choose(rng).unwrap().clone()))
                    } else {
                        var(rng)
                    },
                ),
                3 => (var(rng), var(rng)),
                _ => (
                    PatternTerm::Term(Term::Iri(vocab.properties.choose(rng).unwrap().clone())),
                    match rng.gen_range(0..6) {
                        0 => PatternTerm::Term(vocab.nodes.choose(rng).unwrap().clone()),
                        1 => PatternTerm::Term(vocab.literals.choose(rng).unwrap().clone()),
                        _ => var(rng),
                    },
                ),
            };
            patterns.push(TriplePattern { subject, predicate, object });
        }
        if patterns.iter().any(|p| p.variables().next().is_some()) {
            return Query::new(PrefixMap::new(), None, patterns).unwrap();
        }
    }
}

/// Reflexive-transitive closure by Warshall's algorithm over every IRI in
/// `nodes` and `edges`.
pub fn warshall(nodes: &BTreeSet<Iri>, edges: &BTreeSet<(Iri, Iri)>) -> BTreeSet<(Iri, Iri)> {
    let mut all: BTreeSet<Iri> = nodes.clone();
    for (a, b) in edges {
        all.insert(a.clone());
        all.insert(b.clone());
    }
    let idx: Vec<Iri> = all.into_iter().collect();
    let pos: BTreeMap<&Iri, usize> = idx.iter().enumerate().map(|(i, n)| (n, i)).collect();
    let n = idx.len();
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for (a, b) in edges {
        m[pos[a]][pos[b]] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if m[i][j] {
                out.insert((idx[i].clone(), idx[j].clone()));
            }
        }
    }
    out
}

fn holds(pairs: &BTreeSet<(Iri, Iri)>, sub: &Iri, sup: &Iri) -> bool {
    sub == sup || pairs.contains(&(sub.clone(), sup.clone()))
}

/// Derived triples of `rules` over `g`, by repeated full evaluation until
/// nothing changes. Class atoms hold for a node typed with any subclass.
pub fn rule_oracle(g: &Graph, schema: &Schema, rules: &[Rule]) -> BTreeSet<Triple> {
    let sub = warshall(schema.classes(), schema.subclass_edges());
    let rdf_type = Iri::rdf_type();
    let mut known: BTreeSet<Triple> = g.iter().collect();
    let asserted = known.clone();
    loop {
        let facts: Vec<Triple> = known.iter().cloned().collect();
        let mut added = false;
        for rule in rules {
            let mut sols: Vec<BTreeMap<String, Term>> = vec![BTreeMap::new()];
            for atom in rule.body() {
                let mut next = Vec::new();
                for sol in &sols {
                    for f in &facts {
                        let mut s2 = sol.clone();
                        let ok = match atom {
                            RuleAtom::Property(p) => {
                                f.predicate() == &p.property
                                    && bind_arg(&p.subject, f.subject(), &mut s2)
                                    && bind_arg(&p.object, f.object(), &mut s2)
                            }
                            RuleAtom::Class(c) => {
                                f.predicate() == &rdf_type
                                    && matches!(f.object(), Term::Iri(k) if holds(&sub, k, &c.class))
                                    && bind_arg(&c.arg, f.subject(), &mut s2)
                            }
                        };
                        if ok {
                            next.push(s2);
                        }
                    }
                }
                sols = next;
            }
            for sol in sols {
                let head = rule.head();
                let s = arg_value(&head.subject, &sol);
                let o = arg_value(&head.object, &sol);
                if let Ok(t) = Triple::new(s, head.property.clone(), o) {
                    added |= known.insert(t);
                }
            }
        }
        if !added {
            return known.difference(&asserted).cloned().collect();
        }
    }
}

fn bind_arg(arg: &Arg, value: &Term, sol: &mut BTreeMap<String, Term>) -> bool {
    match arg {
        Arg::Term(t) => t == value,
        Arg::Var(v) => match sol.get(v) {
            Some(b) => b == value,
            None => {
                sol.insert(v.clone(), value.clone());
                true
            }
        },
    }
}

fn arg_value(arg: &Arg, sol: &BTreeMap<String, Term>) -> Term {
    match arg {
        Arg::Term(t) => t.clone(),
        Arg::Var(v) => sol[v].clone(),
    }
}

/// The graph extended with every triple implied by subproperty edges and by
/// subclass edges applied to typing triples.
pub fn entailed_graph(g: &Graph, schema: &Schema) -> Graph {
    let props = warshall(schema.properties(), schema.subproperty_edges());
    let classes = warshall(schema.classes(), schema.subclass_edges());
    let rdf_type = Iri::rdf_type();
    let mut out = g.clone();
    for t in g.iter() {
        let p = t.predicate();
        let mut supers: BTreeSet<Iri> = props.iter().filter(|(a, _)| a == p).map(|(_, b)| b.clone()).collect();
        supers.insert(p.clone());
        for sp in &supers {
            out.insert(Triple::new(t.subject().clone(), sp.clone(), t.object().clone()).unwrap());
        }
        if supers.contains(&rdf_type) {
            if let Term::Iri(c) = t.object() {
                out.insert(Triple::new(t.subject().clone(), rdf_type.clone(), t.object().clone()).unwrap());
                for (a, d) in &classes {
                    if a == c {
                        out.insert(Triple::new(t.subject().clone(), rdf_type.clone(), Term::Iri(d.clone())).unwrap());
                    }
                }
            }
        }
    }
    out
}

/// Solutions of `q` over `g` by trying every assignment of the query
/// variables to terms of `g` and keeping those that put every instantiated
/// pattern in `g`. Terms are numbered so the inner loop compares integers.
pub fn brute_force_bgp(q: &Query, g: &Graph) -> BTreeSet<Vec<Term>> {
    let mut domain: BTreeSet<Term> = g.terms();
    domain.extend(g.predicates().map(|p| Term::Iri(p.clone())));
    let domain: Vec<Term> = domain.into_iter().collect();
    let index: BTreeMap<&Term, usize> = domain.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let facts: BTreeSet<[usize; 3]> = g
        .iter()
        .map(|t| [index[t.subject()], index[&Term::Iri(t.predicate().clone())], index[t.object()]])
        .collect();
    let vars: Vec<String> = {
        let set: BTreeSet<&str> = q.patterns().iter().flat_map(|p| p.variables()).collect();
        set.into_iter().map(str::to_string).collect()
    };
    enum Slot {
        Var(usize),
        Fixed(usize),
    }
    let slot = |pt: &PatternTerm| match pt {
        PatternTerm::Var(v) => Slot::Var(vars.iter().position(|x| x == v).unwrap()),
        PatternTerm::Term(t) => Slot::Fixed(index.get(t).copied().unwrap_or(usize::MAX)),
    };
    let patterns: Vec<[Slot; 3]> = q
        .patterns()
        .iter()
        .map(|p| [slot(&p.subject), slot(&p.predicate), slot(&p.object)])
        .collect();
    let projection: Vec<usize> = q.select_vars().iter().map(|v| vars.iter().position(|x| x == v).unwrap()).collect();
    let mut out = BTreeSet::new();
    if domain.is_empty() {
        return out;
    }
    let mut choice = vec![0usize; vars.len()];
    loop {
        let value = |s: &Slot| match s {
            Slot::Var(i) => choice[*i],
            Slot::Fixed(k) => *k,
        };
        if patterns.iter().all(|p| facts.contains(&[value(&p[0]), value(&p[1]), value(&p[2])])) {
            out.insert(projection.iter().map(|&i| domain[choice[i]].clone()).collect());
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < domain.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// A graph stressing the serializer: escapes, language tags, datatypes,
/// non-ASCII text and blank nodes in both positions.
pub fn random_roundtrip_graph(rng: &mut impl Rng) -> Graph {
    const TEXTS: &[&str] = &[
        "plain",
        "Was Ihr Wollt",
        "quote \" inside",
        "back\\slash",
        "line\nbreak",
        "tab\there",
        "carriage\rreturn",
        "caf\u{e9} \u{1F3B5}",
        "",
        "'single'",
        "tri\"\"\"ple",
    ];
    const LANGS: &[&str] = &["en", "de", "en-GB"];
    let datatypes = [
        "http://www.w3.org/2001/XMLSchema#date",
        "http://www.w3.org/2001/XMLSchema#integer",
        "http://www.w3.org/2001/XMLSchema#string",
        "https://example.org/nfdi/custom#type",
    ];
    let mut g = Graph::new();
    let n = rng.gen_range(0..40);
    let subject = |rng: &mut dyn rand::RngCore| -> Term {
        if rng.gen_bool(0.3) {
            Term::blank(format!("b{}", rng.gen_range(0..5))).unwrap()
        } else {
            Term::iri(format!("{EX}s{}", rng.gen_range(0..8))).unwrap()
        }
    };
    for _ in 0..n {
        let s = subject(rng);
        let p = if rng.gen_bool(0.2) {
            Iri::rdf_type()
        } else {
            Iri::new(format!("{EX}p{}", rng.gen_range(0..5))).unwrap()
        };
        let o = match rng.gen_range(0..5) {
            0 | 1 => subject(rng),
            2 => Term::Literal(Literal::simple(TEXTS.choose(rng).unwrap())),
            3 => Term::Literal(Literal::lang(TEXTS.choose(rng).unwrap(), LANGS.choose(rng).unwrap()).unwrap()),
            _ => Term::Literal(Literal::typed(TEXTS.choose(rng).unwrap(), iri(datatypes.choose(rng).unwrap())).unwrap()),
        };
        g.insert(Triple::new(s, p, o).unwrap());
    }
    g
}
