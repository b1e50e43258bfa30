//! Catalog files: `{"version": 1, "entries": [...]}` in UTF-8 JSON.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use cup_core::catalog::{Catalog, CatalogError, ScenarioEntry};
use cup_core::Diagnostic;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: malformed catalog: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{}: unsupported catalog version {found}", path.display())]
    Version { path: PathBuf, found: u32 },
    #[error("entry {key}: invalid pattern")]
    ValidationFailed { key: String, diagnostics: Vec<Diagnostic> },
    #[error("duplicate entry key {0}")]
    DuplicateKey(String),
}

impl From<CatalogError> for StoreError {
    fn from(err: CatalogError) -> Self {
        match err {
            CatalogError::ValidationFailed(key, diagnostics) => {
                StoreError::ValidationFailed { key, diagnostics }
            }
            CatalogError::DuplicateKey(key) => StoreError::DuplicateKey(key),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CatalogFile {
    version: u32,
    entries: Vec<ScenarioEntry>,
}

/// Reads and validates a catalog file.
pub fn load(path: &Path) -> Result<Catalog, StoreError> {
    let text = fs::read_to_string(path).map_err(|source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    from_json(&text).map_err(|err| match err {
        StoreError::Json { source, .. } => StoreError::Json {
            path: path.to_path_buf(),
            source,
        },
        StoreError::Version { found, .. } => StoreError::Version {
            path: path.to_path_buf(),
            found,
        },
        other => other,
    })
}

pub fn from_json(text: &str) -> Result<Catalog, StoreError> {
    let file: CatalogFile = serde_json::from_str(text).map_err(|source| StoreError::Json {
        path: PathBuf::new(),
        source,
    })?;
    if file.version != FORMAT_VERSION {
        return Err(StoreError::Version {
            path: PathBuf::new(),
            found: file.version,
        });
    }
    Ok(Catalog::new(file.entries)?)
}

/// Serialized form, entries sorted by key, with a trailing newline.
pub fn to_json(catalog: &Catalog) -> String {
    let file = CatalogFile {
        version: FORMAT_VERSION,
        entries: catalog.entries().cloned().collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("catalog serializes");
    text.push('\n');
    text
}

/// Writes the whole file through a temporary sibling and a rename, so
/// readers never see a partial catalog.
pub fn save(catalog: &Catalog, path: &Path) -> Result<(), StoreError> {
    let io = |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(to_json(catalog).as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_round_trips() {
        let text = to_json(&Catalog::builtin());
        let back = from_json(&text).unwrap();
        assert_eq!(back.len(), 10);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn rejects_other_versions() {
        let err = from_json(r#"{"version": 2, "entries": []}"#).unwrap_err();
        assert!(matches!(err, StoreError::Version { found: 2, .. }));
    }

    #[test]
    fn invalid_entry_names_its_key() {
        let err = from_json(r#"{"version":1,"entries":[{"key":"X","title":"x","pattern":"e"}]}"#)
            .unwrap_err();
        match err {
            StoreError::ValidationFailed { key, diagnostics } => {
                assert_eq!(key, "X");
                assert_eq!(diagnostics[0].rule.code(), "E.I.2");
            }
            other => panic!("{other}"),
        }
    }
}
