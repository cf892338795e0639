use std::collections::BTreeMap;

use thiserror::Error;

use super::term::{is_valid_iri, Iri};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrefixError {
    #[error("unresolved prefix `{0}`")]
    Unresolved(String),
    #[error("`{0}` is not a prefixed name")]
    NotACurie(String),
    #[error("invalid prefix label `{0}`")]
    InvalidLabel(String),
    #[error("invalid namespace `{0}`")]
    InvalidNamespace(String),
    #[error("prefix `{label}` bound to both <{first}> and <{second}>")]
    Conflict {
        label: String,
        first: String,
        second: String,
    },
}

/// Prefix label to namespace bindings. The empty label is the default prefix.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    entries: BTreeMap<String, String>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// The prefixes declared by every bundled document.
    pub fn standard() -> Self {
        let mut pm = PrefixMap::new();
        for (label, ns) in crate::vocab::STANDARD_PREFIXES {
            pm.insert(label, ns).expect("standard prefixes are valid");
        }
        pm
    }

    /// Binds `label`, replacing an earlier binding of the same label.
    pub fn insert(&mut self, label: &str, namespace: &str) -> Result<(), PrefixError> {
        if !is_valid_prefix_label(label) {
            return Err(PrefixError::InvalidLabel(label.to_string()));
        }
        if !is_valid_iri(namespace) {
            return Err(PrefixError::InvalidNamespace(namespace.to_string()));
        }
        self.entries.insert(label.to_string(), namespace.to_string());
        Ok(())
    }

    pub fn get(&self, label: &str) -> Option<&str> {
        self.entries.get(label).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by label.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn expand(&self, label: &str, local: &str) -> Result<Iri, PrefixError> {
        let ns = self
            .entries
            .get(label)
            .ok_or_else(|| PrefixError::Unresolved(label.to_string()))?;
        Iri::new(format!("{ns}{local}")).map_err(|_| PrefixError::InvalidNamespace(format!("{ns}{local}")))
    }

    /// Expands `label:local`.
    pub fn expand_curie(&self, curie: &str) -> Result<Iri, PrefixError> {
        let (label, local) = curie
            .split_once(':')
            .ok_or_else(|| PrefixError::NotACurie(curie.to_string()))?;
        self.expand(label, local)
    }

    /// Longest-namespace compaction. Returns `None` when no namespace matches
    /// or the remainder is not a plain local name. Ties on namespace length go
    /// to the smallest label.
    pub fn compact(&self, iri: &Iri) -> Option<(&str, String)> {
        let value = iri.as_str();
        self.entries
            .iter()
            .filter(|(_, ns)| value.starts_with(ns.as_str()))
            .filter(|(_, ns)| is_plain_local(&value[ns.len()..]))
            .max_by(|(la, a), (lb, b)| a.len().cmp(&b.len()).then_with(|| lb.cmp(la)))
            .map(|(label, ns)| (label.as_str(), value[ns.len()..].to_string()))
    }

    /// Adds every binding of `other`; a label bound to a different namespace
    /// on each side is an error and leaves `self` unchanged.
    pub fn merge(&mut self, other: &PrefixMap) -> Result<(), PrefixError> {
        for (label, ns) in &other.entries {
            if let Some(existing) = self.entries.get(label) {
                if existing != ns {
                    return Err(PrefixError::Conflict {
                        label: label.clone(),
                        first: existing.clone(),
                        second: ns.clone(),
                    });
                }
            }
        }
        for (label, ns) in &other.entries {
            self.entries.insert(label.clone(), ns.clone());
        }
        Ok(())
    }

    /// Like [`merge`](Self::merge) but bindings in `other` win on conflict.
    pub fn overlay(&mut self, other: &PrefixMap) {
        for (label, ns) in &other.entries {
            self.entries.insert(label.clone(), ns.clone());
        }
    }
}

fn is_valid_prefix_label(label: &str) -> bool {
    if label.is_empty() {
        return true;
    }
    let mut chars = label.chars();
    chars.next().is_some_and(|c| c.is_alphabetic())
        && label.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
        && !label.ends_with('.')
}

/// Local names the serializer can emit without escapes.
pub(crate) fn is_plain_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        None => true,
        Some(first) => {
            (first.is_alphanumeric() || first == '_')
                && local.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
                && !local.ends_with('.')
        }
    }
}
