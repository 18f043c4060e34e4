//! The built-in identity catalog, shipped as text files in the identity language.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use super::ast::{parse_identities, Identity, ParseError};

/// Catalog files bundled into the library, in load order.
pub const BUILTIN_FILES: &[(&str, &str)] = &[
    ("hom_leibniz.hid", include_str!("../../catalog/hom_leibniz.hid")),
    ("manin.hid", include_str!("../../catalog/manin.hid")),
    ("dendriform.hid", include_str!("../../catalog/dendriform.hid")),
    ("bihom_leibniz.hid", include_str!("../../catalog/bihom_leibniz.hid")),
    ("bihom_dendriform.hid", include_str!("../../catalog/bihom_dendriform.hid")),
    ("operators.hid", include_str!("../../catalog/operators.hid")),
];

/// Environment variable naming a directory of `.hid` files that replaces the built-in catalog.
pub const CATALOG_ENV: &str = "HOMLEIB_CATALOG";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("{file}: {source}")]
    Parse { file: String, source: ParseError },
    #[error("{file}: identity `{name}` defined twice")]
    Duplicate { file: String, name: String },
    #[error("{0}")]
    Io(String),
}

/// Named identities, in source order.
#[derive(Debug, Clone)]
pub struct Catalog {
    order: Vec<String>,
    entries: BTreeMap<String, Identity>,
}

impl Catalog {
    /// Parse catalog sources given as (file name, text) pairs.
    pub fn from_sources<'a>(sources: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Catalog, CatalogError> {
        let mut cat = Catalog { order: Vec::new(), entries: BTreeMap::new() };
        for (file, text) in sources {
            let ids = parse_identities(text).map_err(|source| CatalogError::Parse { file: file.into(), source })?;
            for id in ids {
                if cat.entries.contains_key(&id.name) {
                    return Err(CatalogError::Duplicate { file: file.into(), name: id.name });
                }
                cat.order.push(id.name.clone());
                cat.entries.insert(id.name.clone(), id);
            }
        }
        Ok(cat)
    }

    pub fn builtin() -> Catalog {
        Catalog::from_sources(BUILTIN_FILES.iter().copied()).expect("built-in catalog parses")
    }

    /// Load every `.hid` file of a directory, in file-name order.
    pub fn from_dir(dir: &Path) -> Result<Catalog, CatalogError> {
        let mut files: Vec<_> = std::fs::read_dir(dir)
            .map_err(|e| CatalogError::Io(format!("{}: {e}", dir.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "hid"))
            .collect();
        files.sort();
        let mut texts = Vec::new();
        for f in &files {
            let t = std::fs::read_to_string(f).map_err(|e| CatalogError::Io(format!("{}: {e}", f.display())))?;
            texts.push((f.display().to_string(), t));
        }
        Catalog::from_sources(texts.iter().map(|(a, b)| (a.as_str(), b.as_str())))
    }

    /// The built-in catalog, or the directory named by `HOMLEIB_CATALOG`.
    pub fn from_env() -> Result<Catalog, CatalogError> {
        match std::env::var_os(CATALOG_ENV) {
            Some(dir) if !dir.is_empty() => Catalog::from_dir(Path::new(&dir)),
            _ => Ok(Catalog::builtin()),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Identity> {
        self.entries.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.order.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Identity> {
        self.order.iter().map(|n| &self.entries[n])
    }
}

/// The process-wide catalog (built-in unless overridden by `HOMLEIB_CATALOG`).
///
/// # Panics
/// If the override directory cannot be loaded; use [`Catalog::from_env`] to handle that case.
pub fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| Catalog::from_env().unwrap_or_else(|e| panic!("identity catalog: {e}")))
}

/// Look up a catalog identity by name.
///
/// # Panics
/// If the identity is not in the catalog.
pub fn identity(name: &str) -> &'static Identity {
    catalog().get(name).unwrap_or_else(|| panic!("identity `{name}` is not in the catalog"))
}
