//! On-disk artifact cache: one JSON file per artifact, tagged with a schema
//! version. Files with another version or kind are ignored and overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::error::Result;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(format!("{name}.json"))
    }

    /// The `data` payload of `name.json`, if present, readable and current.
    pub fn load(&self, name: &str, kind: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(name)).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        if v.get("schema")?.as_u64()? != SCHEMA_VERSION || v.get("kind")?.as_str()? != kind {
            return None;
        }
        v.get("data").cloned()
    }

    /// Writes through a temporary file so readers never see a partial artifact.
    pub fn store(&self, name: &str, kind: &str, data: &Value) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let doc = json!({"schema": SCHEMA_VERSION, "kind": kind, "data": data});
        let tmp = self.dir.join(format!(".{name}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_string_pretty(&doc)?)?;
        fs::rename(&tmp, self.path(name))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_staleness() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path());
        assert!(c.load("x", "k").is_none());
        c.store("x", "k", &json!([1, 2])).unwrap();
        assert_eq!(c.load("x", "k"), Some(json!([1, 2])));
        assert!(c.load("x", "other").is_none());
        fs::write(c.path("x"), r#"{"schema":0,"kind":"k","data":[9]}"#).unwrap();
        assert!(c.load("x", "k").is_none());
    }
}
