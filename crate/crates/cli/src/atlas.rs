//! The bundled atlas: group generators, validated character tables and
//! automorphism files, looked up by a lenient group name.

use std::path::{Component, Path, PathBuf};

use serde::Deserialize;
use weightforge::{Error, Result};

/// Environment variable naming an atlas directory to use instead of the
/// bundled one.
pub const ATLAS_ENV: &str = "WEIGHTFORGE_ATLAS";

const BUNDLED: &[(&str, &str)] = &[
    ("index.json", include_str!("../atlas/index.json")),
    ("groups/A4.json", include_str!("../atlas/groups/A4.json")),
    ("groups/A5.json", include_str!("../atlas/groups/A5.json")),
    ("groups/C2.json", include_str!("../atlas/groups/C2.json")),
    ("groups/C3.json", include_str!("../atlas/groups/C3.json")),
    ("groups/C7_C3.json", include_str!("../atlas/groups/C7_C3.json")),
    ("groups/D8.json", include_str!("../atlas/groups/D8.json")),
    ("groups/J1.json", include_str!("../atlas/groups/J1.json")),
    ("groups/PSL2_7.json", include_str!("../atlas/groups/PSL2_7.json")),
    ("groups/Q8.json", include_str!("../atlas/groups/Q8.json")),
    ("groups/S3.json", include_str!("../atlas/groups/S3.json")),
    ("groups/S4.json", include_str!("../atlas/groups/S4.json")),
    ("groups/SL2_3.json", include_str!("../atlas/groups/SL2_3.json")),
    ("groups/SL2_5.json", include_str!("../atlas/groups/SL2_5.json")),
    ("auts/A5.json", include_str!("../atlas/auts/A5.json")),
    ("auts/C7_C3.json", include_str!("../atlas/auts/C7_C3.json")),
    ("auts/PSL2_7.json", include_str!("../atlas/auts/PSL2_7.json")),
    ("auts/SL2_5.json", include_str!("../atlas/auts/SL2_5.json")),
    ("tables/J1.json", include_str!("../atlas/tables/J1.json")),
];

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtlasEntry {
    pub name: String,
    /// Expected group order, checked on load.
    #[serde(default)]
    pub order: Option<u64>,
    pub group: String,
    #[serde(default)]
    pub table: Option<String>,
    #[serde(default)]
    pub automorphisms: Option<String>,
    #[serde(default)]
    pub character_names: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct Index {
    entries: Vec<AtlasEntry>,
}

#[derive(Clone, Debug)]
enum Store {
    Bundled,
    Dir(PathBuf),
}

#[derive(Clone, Debug)]
pub struct Atlas {
    store: Store,
    entries: Vec<AtlasEntry>,
}

/// Lower-case alphanumerics only, so `SL2(5)`, `sl2_5` and `SL25` agree.
pub fn normalize_name(name: &str) -> String {
    name.chars().filter(|c| c.is_alphanumeric()).flat_map(char::to_lowercase).collect()
}

/// Entries of an `index.json`.
pub fn parse_index(json: &str) -> Result<Vec<AtlasEntry>> {
    let index: Index = serde_json::from_str(json).map_err(|e| Error::Input(format!("atlas index: {e}")))?;
    Ok(index.entries)
}

impl Atlas {
    pub fn bundled() -> Self {
        Self::with_store(Store::Bundled).expect("the bundled atlas index is valid")
    }

    pub fn from_dir(dir: impl Into<PathBuf>) -> Result<Self> {
        Self::with_store(Store::Dir(dir.into()))
    }

    /// The directory in `WEIGHTFORGE_ATLAS` if set, the bundled atlas otherwise.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(ATLAS_ENV) {
            Some(dir) if !dir.is_empty() => Self::from_dir(PathBuf::from(dir)),
            _ => Ok(Self::bundled()),
        }
    }

    fn with_store(store: Store) -> Result<Self> {
        let mut atlas = Atlas { store, entries: Vec::new() };
        atlas.entries = parse_index(&atlas.read("index.json")?)?;
        Ok(atlas)
    }

    pub fn entries(&self) -> &[AtlasEntry] {
        &self.entries
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    pub fn entry(&self, name: &str) -> Result<&AtlasEntry> {
        let key = normalize_name(name);
        self.entries.iter().find(|e| normalize_name(&e.name) == key).ok_or_else(|| {
            Error::Input(format!("no atlas entry {name:?}; available: {}", self.names().join(", ")))
        })
    }

    /// Contents of a file named relative to the atlas root.
    pub fn read(&self, rel: &str) -> Result<String> {
        let path = Path::new(rel);
        if !path.components().all(|c| matches!(c, Component::Normal(_))) {
            return Err(Error::Input(format!("atlas path {rel:?} must be relative and stay inside the atlas")));
        }
        match &self.store {
            Store::Bundled => BUNDLED
                .iter()
                .find(|(p, _)| *p == rel)
                .map(|(_, s)| s.to_string())
                .ok_or_else(|| Error::Input(format!("bundled atlas has no file {rel}"))),
            Store::Dir(dir) => {
                let full = dir.join(path);
                std::fs::read_to_string(&full).map_err(|e| Error::Input(format!("{}: {e}", full.display())))
            }
        }
    }
}

/// Names of the bundled fixtures.
pub fn atlas_list() -> Vec<String> {
    Atlas::bundled().names()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_atlas_file_is_bundled() {
        let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("atlas");
        let mut on_disk = vec!["index.json".to_string()];
        for d in ["groups", "auts", "tables"] {
            for f in std::fs::read_dir(root.join(d)).unwrap() {
                on_disk.push(format!("{d}/{}", f.unwrap().file_name().to_string_lossy()));
            }
        }
        on_disk.sort();
        let mut bundled: Vec<String> = BUNDLED.iter().map(|(p, _)| p.to_string()).collect();
        bundled.sort();
        assert_eq!(on_disk, bundled);
    }

    #[test]
    fn lenient_lookup() {
        let a = Atlas::bundled();
        assert_eq!(a.entry("sl2_5").unwrap().name, "SL2(5)");
        assert_eq!(a.entry("c7c3").unwrap().name, "C7:C3");
        assert!(a.entry("M11").is_err());
        assert!(a.read("../Cargo.toml").is_err());
    }
}
