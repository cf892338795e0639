//! `nfdi-forge`: batch front end for parsing, validation, shortcut
//! materialization, querying and competency-question runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nfdi_forge_core::ontology::{apply_intersection_axioms, extract_schema, resolve_modules, ModuleRegistry, Schema};
use nfdi_forge_core::query::{evaluate, parse_query_with, Entailment};
use nfdi_forge_core::rdf::{Graph, Iri, PrefixMap, Term};
use nfdi_forge_core::rules::{inferred_graph, materialize, parse_rules, DerivedTriple, Rule, BUNDLED_RULES};
use nfdi_forge_core::turtle::{parse, serialize, Dialect};
use nfdi_forge_core::{cq, validate};
use serde_json::json;

#[derive(Parser)]
#[command(name = "nfdi-forge", version, about = "Validate, materialize and query NFDIcore-style knowledge graphs")]
struct Cli {
    /// Print structured JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Syntax-check an RDF file and count its triples.
    Parse {
        file: PathBuf,
        #[arg(long, value_parser = parse_dialect)]
        dialect: Option<Dialect>,
    },
    /// Check a data graph against the role, process and domain/range constraints.
    Validate {
        #[command(flatten)]
        input: Input,
        /// Validate the graph after applying the rules.
        #[arg(long)]
        post_materialize: bool,
        #[arg(long)]
        rules: Option<PathBuf>,
    },
    /// Apply the shortcut rules and write Turtle.
    Materialize {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        rules: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Emit::Merged)]
        emit: Emit,
        /// Also apply intersection class definitions until nothing changes.
        #[arg(long)]
        with_intersections: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_parser = parse_dialect, default_value = "turtle")]
        format: Dialect,
    },
    /// Evaluate a SELECT query.
    Query {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        rules: Option<PathBuf>,
        #[arg(short, long)]
        query: PathBuf,
        #[arg(long, default_value = "none")]
        entailment: Entailment,
        /// Query the asserted graph only.
        #[arg(long)]
        no_materialize: bool,
    },
    /// Run a competency-question suite.
    Cq {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        rules: Option<PathBuf>,
        #[arg(long)]
        suite: PathBuf,
    },
    /// Class and property usage counts.
    Stats { data: PathBuf },
}

#[derive(Args)]
struct Input {
    /// Module manifest (JSON). Imports are looked up beside it and in
    /// NFDI_FORGE_MODULE_PATH.
    manifest: PathBuf,
    data: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Asserted,
    Inferred,
    Merged,
}

fn parse_dialect(s: &str) -> Result<Dialect, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(&cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match std::io::stdout().lock().write_all(out.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            eprintln!("error: writing output: {e}");
            ExitCode::from(2)
        }
        _ => code,
    }
}

/// Writes the command's report to `out` and returns whether all checks
/// passed.
fn run(cli: &Cli, out: &mut String) -> Result<bool> {
    match &cli.command {
        Command::Parse { file, dialect } => {
            let dialect = dialect.unwrap_or_else(|| Dialect::from_path(file));
            let g = read_graph(file, dialect)?;
            if cli.json {
                print_json(out, &json!({ "file": file, "triples": g.len() }))?;
            } else {
                writeln!(out, "{} triples", g.len())?;
            }
            Ok(true)
        }
        Command::Validate {
            input,
            post_materialize,
            rules,
        } => {
            let (schema, mut g) = load_input(input)?;
            if *post_materialize {
                let rules = load_rules(rules.as_deref())?;
                g.extend(inferred_graph(&materialize(&g, &schema, &rules)).iter());
            }
            let report = validate::validate(&g, &schema);
            if cli.json {
                print_json(out, &report)?;
            } else {
                let c = &report.counts;
                writeln!(out, 
                    "{} errors, {} warnings, {} notices in {} triples",
                    c.error, c.warning, c.notice, report.graph_size
                )?;
                for v in &report.violations {
                    writeln!(out, "{:7}  {}  {}  {}", v.severity, v.code.as_str(), show(&v.focus, g.prefixes()), v.detail)?;
                }
            }
            Ok(!report.has_errors())
        }
        Command::Materialize {
            input,
            rules,
            emit,
            with_intersections,
            output,
            format,
        } => {
            let (schema, g) = load_input(input)?;
            let rules = load_rules(rules.as_deref())?;
            let (derived, extra) = closure(&g, &schema, &rules, *with_intersections);
            let mut inferred = inferred_graph(&derived);
            inferred.extend(extra.iter());
            let emitted = match emit {
                Emit::Asserted => g.clone(),
                Emit::Inferred => inferred.clone(),
                Emit::Merged => {
                    let mut m = g.clone();
                    m.extend(inferred.iter());
                    m
                }
            };
            let mut prefixes = PrefixMap::standard();
            prefixes.overlay(g.prefixes());
            let text = serialize(&emitted, &prefixes, *format);
            if let Some(path) = output {
                std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            }
            if cli.json {
                print_json(out, &json!({
                    "asserted": g.len(),
                    "inferred": inferred.len(),
                    "emitted": emitted.len(),
                    "derived": derived,
                    "intersections": extra.iter().collect::<Vec<_>>(),
                }))?;
            } else if let Some(path) = output {
                writeln!(out, "{} triples written to {}", emitted.len(), path.display())?;
            } else {
                write!(out, "{text}")?;
            }
            Ok(true)
        }
        Command::Query {
            input,
            rules,
            query,
            entailment,
            no_materialize,
        } => {
            let (schema, mut g) = load_input(input)?;
            if !no_materialize {
                let rules = load_rules(rules.as_deref())?;
                g.extend(inferred_graph(&materialize(&g, &schema, &rules)).iter());
            }
            let mut prefixes = PrefixMap::standard();
            prefixes.overlay(g.prefixes());
            let text = read(query)?;
            let q = parse_query_with(&text, &prefixes).with_context(|| format!("{}", query.display()))?;
            let solutions = evaluate(&q, &g, &schema, *entailment);
            if cli.json {
                print_json(out, &solutions.to_json())?;
            } else {
                let mut shown = prefixes.clone();
                shown.overlay(q.prefixes());
                write!(out, "{}", solutions.to_tsv(&shown))?;
            }
            Ok(true)
        }
        Command::Cq { input, rules, suite } => {
            let (schema, g) = load_input(input)?;
            let rules = load_rules(rules.as_deref())?;
            let cases = cq::load_suite(&read(suite)?).with_context(|| format!("{}", suite.display()))?;
            let report = cq::run_suite(&cases, &g, &schema, &rules);
            if cli.json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                write!(out, "{}", report.to_table())?;
            }
            Ok(report.summary.failed == 0)
        }
        Command::Stats { data } => {
            let g = read_graph(data, Dialect::from_path(data))?;
            let stats = Stats::of(&g);
            if cli.json {
                print_json(out, &json!({
                    "triples": g.len(),
                    "subjects": stats.subjects,
                    "classes": stats.classes,
                    "properties": stats.properties,
                }))?;
            } else {
                writeln!(out, "{} triples, {} subjects", g.len(), stats.subjects)?;
                let mut prefixes = PrefixMap::standard();
                prefixes.overlay(g.prefixes());
                for (title, counts) in [("class", &stats.classes), ("property", &stats.properties)] {
                    writeln!(out, "{title}\tcount")?;
                    let mut rows: Vec<(&String, &usize)> = counts.iter().collect();
                    rows.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
                    for (iri, n) in rows {
                        let term = Term::iri(iri).expect("counted IRIs are valid");
                        writeln!(out, "{}\t{n}", show(&term, &prefixes))?;
                    }
                }
            }
            Ok(true)
        }
    }
}

/// Rule fixpoint, optionally interleaved with intersection axioms until
/// neither adds anything.
fn closure(g: &Graph, schema: &Schema, rules: &[Rule], with_intersections: bool) -> (Vec<DerivedTriple>, Graph) {
    let mut total = g.clone();
    let mut derived = Vec::new();
    let mut extra = Graph::new();
    loop {
        let mut changed = false;
        if with_intersections {
            for t in apply_intersection_axioms(&total, schema) {
                changed |= total.insert(t.clone());
                extra.insert(t);
            }
        }
        let round = materialize(&total, schema, rules);
        changed |= !round.is_empty();
        total.extend(round.iter().map(|d| d.triple.clone()));
        derived.extend(round);
        if !changed || !with_intersections {
            return (derived, extra);
        }
    }
}

struct Stats {
    subjects: usize,
    classes: BTreeMap<String, usize>,
    properties: BTreeMap<String, usize>,
}

impl Stats {
    fn of(g: &Graph) -> Self {
        let rdf_type = Iri::rdf_type();
        let mut classes = BTreeMap::new();
        let mut properties = BTreeMap::new();
        for t in g.iter() {
            *properties.entry(t.predicate().as_str().to_string()).or_insert(0) += 1;
            if t.predicate() == &rdf_type {
                if let Term::Iri(c) = t.object() {
                    *classes.entry(c.as_str().to_string()).or_insert(0) += 1;
                }
            }
        }
        Stats {
            subjects: g.subject_terms().count(),
            classes,
            properties,
        }
    }
}

fn show(term: &Term, prefixes: &PrefixMap) -> String {
    match term {
        Term::Iri(i) => prefixes.compact(i).map_or_else(|| term.to_string(), |(p, local)| format!("{p}:{local}")),
        _ => term.to_string(),
    }
}

fn print_json<T: serde::Serialize>(out: &mut String, value: &T) -> std::fmt::Result {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("reports serialize"))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn file_iri(path: &Path) -> Result<Iri> {
    let abs = std::path::absolute(path).with_context(|| format!("resolving {}", path.display()))?;
    Iri::new(format!("file://{}", abs.display())).with_context(|| format!("{} is not usable as a base IRI", abs.display()))
}

fn read_graph(path: &Path, dialect: Dialect) -> Result<Graph> {
    let text = read(path)?;
    let (mut g, prefixes) = parse(&text, &file_iri(path)?, dialect).with_context(|| format!("{}", path.display()))?;
    *g.prefixes_mut() = prefixes;
    Ok(g)
}

fn load_input(input: &Input) -> Result<(Schema, Graph)> {
    let (registry, root) = ModuleRegistry::discover(&input.manifest)?;
    let ontology = resolve_modules(&root, &registry)?;
    let schema = extract_schema(&ontology)?;
    let data = read_graph(&input.data, Dialect::from_path(&input.data))?;
    Ok((schema, data))
}

fn load_rules(path: Option<&Path>) -> Result<Vec<Rule>> {
    let (text, origin) = match path {
        Some(p) => (read(p)?, p.display().to_string()),
        None => (BUNDLED_RULES.to_string(), "bundled rules".to_string()),
    };
    let rules = parse_rules(&text, &PrefixMap::standard()).with_context(|| origin.clone())?;
    if rules.is_empty() {
        bail!("{origin}: no rules");
    }
    Ok(rules)
}
