use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::rdf::{BlankNode, Graph, Iri, PrefixError, PrefixMap, Term, Triple};
use crate::turtle::{parse, Dialect, ParseError};

/// Environment variable holding extra manifest directories, separated like `PATH`.
pub const MODULE_PATH_ENV: &str = "NFDI_FORGE_MODULE_PATH";

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("module `{module}` imported by `{from}` is not in the registry")]
    Missing { module: String, from: String },
    #[error("import cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("module `{id}` is registered twice ({first} and {second})")]
    DuplicateId { id: String, first: PathBuf, second: PathBuf },
    #[error("prefix conflict while merging module `{module}`: {source}")]
    PrefixConflict {
        module: String,
        #[source]
        source: PrefixError,
    },
    #[error("{}: {message}", path.display())]
    Io { path: PathBuf, message: String },
    #[error("{}: invalid manifest: {message}", path.display())]
    Manifest { path: PathBuf, message: String },
    #[error("{}:{error}", path.display())]
    Parse { path: PathBuf, error: ParseError },
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    id: String,
    graph: PathBuf,
    #[serde(default)]
    imports: Vec<String>,
}

/// One ontology module: an identifier, the graph file it contributes and the
/// modules it imports by identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleManifest {
    pub id: String,
    /// Absolute, or relative to the working directory once loaded from disk.
    pub graph: PathBuf,
    pub imports: Vec<String>,
    /// File the manifest was read from, if any.
    pub source: Option<PathBuf>,
}

impl ModuleManifest {
    /// Reads a JSON manifest. The `graph` path is taken relative to the
    /// manifest's directory.
    pub fn load(path: &Path) -> Result<Self, ModuleError> {
        let text = std::fs::read_to_string(path).map_err(|e| ModuleError::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        let raw: RawManifest = serde_json::from_str(&text).map_err(|e| ModuleError::Manifest {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        if raw.id.is_empty() {
            return Err(ModuleError::Manifest {
                path: path.to_path_buf(),
                message: "empty module id".to_string(),
            });
        }
        let dir = path.parent().unwrap_or(Path::new(""));
        Ok(ModuleManifest {
            id: raw.id,
            graph: dir.join(raw.graph),
            imports: raw.imports,
            source: Some(path.to_path_buf()),
        })
    }
}

/// Known modules, keyed by identifier.
#[derive(Debug, Clone, Default)]
pub struct ModuleRegistry {
    modules: BTreeMap<String, ModuleManifest>,
}

impl ModuleRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, manifest: ModuleManifest) -> Result<(), ModuleError> {
        if let Some(existing) = self.modules.get(&manifest.id) {
            if existing.graph == manifest.graph && existing.imports == manifest.imports {
                return Ok(());
            }
            return Err(ModuleError::DuplicateId {
                id: manifest.id.clone(),
                first: existing.source.clone().unwrap_or_else(|| existing.graph.clone()),
                second: manifest.source.clone().unwrap_or_else(|| manifest.graph.clone()),
            });
        }
        self.modules.insert(manifest.id.clone(), manifest);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&ModuleManifest> {
        self.modules.get(id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.modules.keys().map(String::as_str)
    }

    /// Registers every `*.json` manifest directly inside `dir`.
    pub fn add_dir(&mut self, dir: &Path) -> Result<(), ModuleError> {
        let entries = std::fs::read_dir(dir).map_err(|e| ModuleError::Io {
            path: dir.to_path_buf(),
            message: e.to_string(),
        })?;
        let mut paths: Vec<PathBuf> = entries
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for path in paths {
            self.insert(ModuleManifest::load(&path)?)?;
        }
        Ok(())
    }

    /// Loads `root`, every manifest beside it, and every manifest in the
    /// directories named by [`MODULE_PATH_ENV`]. Returns the registry and the
    /// root module's identifier.
    pub fn discover(root: &Path) -> Result<(Self, String), ModuleError> {
        let manifest = ModuleManifest::load(root)?;
        let id = manifest.id.clone();
        let mut registry = ModuleRegistry::new();
        registry.insert(manifest)?;
        registry.add_dir(root.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new(".")))?;
        if let Some(extra) = std::env::var_os(MODULE_PATH_ENV) {
            for dir in std::env::split_paths(&extra).filter(|d| !d.as_os_str().is_empty()) {
                registry.add_dir(&dir)?;
            }
        }
        Ok((registry, id))
    }
}

/// Dependency-first load order of `root` and its transitive imports. Each
/// module appears once even when reachable along several paths.
pub fn module_order(root: &str, registry: &ModuleRegistry) -> Result<Vec<String>, ModuleError> {
    fn visit(
        id: &str,
        from: &str,
        registry: &ModuleRegistry,
        stack: &mut Vec<String>,
        done: &mut BTreeSet<String>,
        order: &mut Vec<String>,
    ) -> Result<(), ModuleError> {
        if done.contains(id) {
            return Ok(());
        }
        if let Some(pos) = stack.iter().position(|s| s == id) {
            let mut cycle = stack[pos..].to_vec();
            cycle.push(id.to_string());
            return Err(ModuleError::Cycle(cycle));
        }
        let manifest = registry.get(id).ok_or_else(|| ModuleError::Missing {
            module: id.to_string(),
            from: from.to_string(),
        })?;
        stack.push(id.to_string());
        for import in &manifest.imports {
            visit(import, id, registry, stack, done, order)?;
        }
        stack.pop();
        done.insert(id.to_string());
        order.push(id.to_string());
        Ok(())
    }

    let mut order = Vec::new();
    visit(root, "<root>", registry, &mut Vec::new(), &mut BTreeSet::new(), &mut order)?;
    Ok(order)
}

/// Merges `root` and its transitive imports into one graph carrying the union
/// of the modules' prefix maps. Blank node labels that collide across modules
/// are renamed so that distinct modules never share a blank node.
pub fn resolve_modules(root: &str, registry: &ModuleRegistry) -> Result<Graph, ModuleError> {
    resolve_modules_with(root, registry, |manifest| {
        let path = &manifest.graph;
        let text = std::fs::read_to_string(path).map_err(|e| ModuleError::Io {
            path: path.clone(),
            message: e.to_string(),
        })?;
        let base = Iri::new(format!("file://{}", absolute(path).display())).map_err(|e| ModuleError::Io {
            path: path.clone(),
            message: e.to_string(),
        })?;
        parse(&text, &base, Dialect::from_path(path)).map_err(|error| ModuleError::Parse {
            path: path.clone(),
            error,
        })
    })
}

fn absolute(path: &Path) -> PathBuf {
    std::path::absolute(path).unwrap_or_else(|_| path.to_path_buf())
}

/// [`resolve_modules`] with a caller-supplied graph loader.
pub fn resolve_modules_with<F>(root: &str, registry: &ModuleRegistry, mut load: F) -> Result<Graph, ModuleError>
where
    F: FnMut(&ModuleManifest) -> Result<(Graph, PrefixMap), ModuleError>,
{
    let order = module_order(root, registry)?;
    let mut merged = Graph::new();
    let mut prefixes = PrefixMap::new();
    let mut used_labels: BTreeSet<String> = BTreeSet::new();

    for id in &order {
        let manifest = registry.get(id).expect("module_order only yields registered ids");
        let (graph, module_prefixes) = load(manifest)?;
        prefixes
            .merge(&module_prefixes)
            .map_err(|source| ModuleError::PrefixConflict {
                module: id.clone(),
                source,
            })?;

        let mut renames: BTreeMap<BlankNode, BlankNode> = BTreeMap::new();
        let local_labels: BTreeSet<String> = graph
            .terms()
            .into_iter()
            .filter_map(|t| match t {
                Term::BlankNode(b) => Some(b.label().to_string()),
                _ => None,
            })
            .collect();
        for label in &local_labels {
            if used_labels.contains(label) {
                let mut n = 0usize;
                let fresh = loop {
                    let candidate = format!("{}{n}{label}", sanitize(id));
                    if !used_labels.contains(&candidate) && !local_labels.contains(&candidate) {
                        break candidate;
                    }
                    n += 1;
                };
                used_labels.insert(fresh.clone());
                renames.insert(
                    BlankNode::new(label).expect("label came from a parsed blank node"),
                    BlankNode::new(&fresh).expect("sanitized labels are valid"),
                );
            }
        }
        used_labels.extend(local_labels);

        let rename = |t: &Term| -> Term {
            match t {
                Term::BlankNode(b) => renames.get(b).map_or_else(|| t.clone(), |r| Term::BlankNode(r.clone())),
                _ => t.clone(),
            }
        };
        for t in graph.iter() {
            let triple = Triple::new(rename(t.subject()), t.predicate().clone(), rename(t.object()))
                .expect("renaming keeps subjects non-literal");
            merged.insert(triple);
        }
    }
    *merged.prefixes_mut() = prefixes;
    Ok(merged)
}

fn sanitize(id: &str) -> String {
    let mut out: String = id.chars().filter(char::is_ascii_alphanumeric).collect();
    if out.is_empty() || !out.starts_with(|c: char| c.is_ascii_alphabetic()) {
        out.insert(0, 'm');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn manifest(id: &str, imports: &[&str]) -> ModuleManifest {
        ModuleManifest {
            id: id.to_string(),
            graph: PathBuf::from(format!("{id}.ttl")),
            imports: imports.iter().map(|s| s.to_string()).collect(),
            source: None,
        }
    }

    fn registry(entries: &[(&str, &[&str])]) -> ModuleRegistry {
        let mut r = ModuleRegistry::new();
        for (id, imports) in entries {
            r.insert(manifest(id, imports)).unwrap();
        }
        r
    }

    fn loader(texts: BTreeMap<&'static str, &'static str>) -> impl FnMut(&ModuleManifest) -> Result<(Graph, PrefixMap), ModuleError> {
        move |m| {
            let text = texts[m.id.as_str()];
            parse(text, &Iri::new("http://ex.org/").unwrap(), Dialect::Turtle).map_err(|error| ModuleError::Parse {
                path: m.graph.clone(),
                error,
            })
        }
    }

    #[test]
    fn diamond_loads_shared_module_once() {
        let r = registry(&[("a", &["b", "c"]), ("b", &["d"]), ("c", &["d"]), ("d", &[])]);
        assert_eq!(module_order("a", &r).unwrap(), vec!["d", "b", "c", "a"]);
    }

    #[test]
    fn cycle_is_reported() {
        let r = registry(&[("a", &["b"]), ("b", &["a"])]);
        match module_order("a", &r).unwrap_err() {
            ModuleError::Cycle(path) => assert_eq!(path, vec!["a", "b", "a"]),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn missing_import_names_module() {
        let r = registry(&[("a", &["ghost"])]);
        let err = module_order("a", &r).unwrap_err();
        assert!(err.to_string().contains("ghost"));
    }

    #[test]
    fn prefix_conflict_is_an_error() {
        let r = registry(&[("a", &["b"]), ("b", &[])]);
        let texts = BTreeMap::from([
            ("a", "@prefix x: <http://one.org/> .\nx:s x:p x:o ."),
            ("b", "@prefix x: <http://two.org/> .\nx:s x:p x:o ."),
        ]);
        let err = resolve_modules_with("a", &r, loader(texts)).unwrap_err();
        assert!(matches!(err, ModuleError::PrefixConflict { .. }));
    }

    #[test]
    fn colliding_blank_labels_are_kept_apart() {
        let r = registry(&[("a", &["b"]), ("b", &[])]);
        let texts = BTreeMap::from([
            ("a", "@prefix : <http://ex.org/> .\n_:n :p :a ."),
            ("b", "@prefix : <http://ex.org/> .\n_:n :p :b ."),
        ]);
        let g = resolve_modules_with("a", &r, loader(texts)).unwrap();
        assert_eq!(g.len(), 2);
        let subjects: BTreeSet<&Term> = g.subject_terms().collect();
        assert_eq!(subjects.len(), 2);
        assert_eq!(g.prefixes().get(""), Some("http://ex.org/"));
    }
}
