//! A directory of named JSON documents indexed by `manifest.json`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::{
    as_object, as_str, graph_from_json, graph_to_json, parse_json, quiver_from_json, quiver_to_json,
    seed_from_json, seed_to_json, to_canonical_string, FormatError, Object,
};
use crate::cluster::Seed;
use crate::exchange::OrientedExchangeGraph;
use crate::quiver::ExtMatrix;

const MANIFEST: &str = "manifest.json";

/// Writes `contents` to a temporary file in the target directory and renames
/// it into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EntryKind {
    Quiver,
    Seed,
    Graph,
}

impl EntryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryKind::Quiver => "quiver",
            EntryKind::Seed => "seed",
            EntryKind::Graph => "graph",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "quiver" => Some(EntryKind::Quiver),
            "seed" => Some(EntryKind::Seed),
            "graph" => Some(EntryKind::Graph),
            _ => None,
        }
    }
}

/// Named quivers, seeds and exploration results. Each entry lives in
/// `<name>.<kind>.json`; the manifest maps names to kinds.
#[derive(Debug)]
pub struct Workspace {
    root: PathBuf,
    entries: BTreeMap<String, EntryKind>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

impl Workspace {
    /// Opens the workspace at `root`, creating an empty one if needed.
    pub fn open(root: impl Into<PathBuf>) -> Result<Self, FormatError> {
        let root = root.into();
        fs::create_dir_all(&root)?;
        let manifest = root.join(MANIFEST);
        let mut entries = BTreeMap::new();
        if manifest.exists() {
            let v = parse_json(&fs::read_to_string(&manifest)?)?;
            let obj = Object::open(&v, "/", &["entries"])?;
            let (map, mp) = obj.get("entries")?;
            for (name, kind) in as_object(map, &mp)? {
                let kp = format!("{mp}/{name}");
                let kind = EntryKind::parse(as_str(kind, &kp)?)
                    .ok_or_else(|| FormatError::schema(&kp, "unknown entry kind"))?;
                entries.insert(name.clone(), kind);
            }
        }
        Ok(Workspace { root, entries })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, EntryKind)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }

    fn file(&self, name: &str, kind: EntryKind) -> PathBuf {
        self.root.join(format!("{name}.{}.json", kind.as_str()))
    }

    fn save_manifest(&self) -> Result<(), FormatError> {
        let entries: serde_json::Map<String, Value> = self
            .entries
            .iter()
            .map(|(k, v)| (k.clone(), Value::from(v.as_str())))
            .collect();
        let doc = json!({"entries": entries, "v": super::VERSION});
        write_atomic(&self.root.join(MANIFEST), &to_canonical_string(&doc))?;
        Ok(())
    }

    fn put(&mut self, name: &str, kind: EntryKind, doc: Value) -> Result<(), FormatError> {
        if !valid_name(name) {
            return Err(FormatError::schema(name, "entry names use [A-Za-z0-9_-]"));
        }
        if let Some(old) = self.entries.get(name).copied() {
            if old != kind {
                fs::remove_file(self.file(name, old)).ok();
            }
        }
        write_atomic(&self.file(name, kind), &to_canonical_string(&doc))?;
        self.entries.insert(name.to_string(), kind);
        self.save_manifest()
    }

    fn get(&self, name: &str, kind: EntryKind) -> Result<Option<Value>, FormatError> {
        if self.entries.get(name) != Some(&kind) {
            return Ok(None);
        }
        Ok(Some(parse_json(&fs::read_to_string(self.file(name, kind))?)?))
    }

    pub fn put_quiver(&mut self, name: &str, q: &ExtMatrix) -> Result<(), FormatError> {
        self.put(name, EntryKind::Quiver, quiver_to_json(q))
    }

    pub fn put_seed(&mut self, name: &str, s: &Seed) -> Result<(), FormatError> {
        self.put(name, EntryKind::Seed, seed_to_json(s))
    }

    pub fn put_graph(&mut self, name: &str, g: &OrientedExchangeGraph) -> Result<(), FormatError> {
        self.put(name, EntryKind::Graph, graph_to_json(g))
    }

    pub fn quiver(&self, name: &str) -> Result<Option<ExtMatrix>, FormatError> {
        self.get(name, EntryKind::Quiver)?
            .map(|v| quiver_from_json(&v, "/"))
            .transpose()
    }

    pub fn seed(&self, name: &str) -> Result<Option<Seed>, FormatError> {
        self.get(name, EntryKind::Seed)?
            .map(|v| seed_from_json(&v, "/"))
            .transpose()
    }

    pub fn graph(&self, name: &str) -> Result<Option<OrientedExchangeGraph>, FormatError> {
        self.get(name, EntryKind::Graph)?
            .map(|v| graph_from_json(&v, "/"))
            .transpose()
    }

    pub fn remove(&mut self, name: &str) -> Result<bool, FormatError> {
        let Some(kind) = self.entries.remove(name) else {
            return Ok(false);
        };
        fs::remove_file(self.file(name, kind))?;
        self.save_manifest()?;
        Ok(true)
    }
}
