//! Content-addressed JSON cache for long-running artifacts (hulls, vertex
//! lists). Entries are keyed by the SHA-256 of a kind tag plus the input.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::budget::Budget;
use crate::error::Result;
use crate::polyhedra::{self, HRep, VRep};

pub const CACHE_DIR_ENV: &str = "BNFACETS_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Cache at `$BNFACETS_CACHE_DIR`, if set and non-empty.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).filter(|v| !v.is_empty()).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(kind: &str, input: &Value) -> String {
        let mut h = Sha256::new();
        h.update(kind.as_bytes());
        h.update([0u8]);
        h.update(input.to_string().as_bytes());
        let digest = h.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        format!("{kind}-{hex}")
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Unreadable or corrupt entries count as misses.
    pub fn get(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Written to a temporary file first, then renamed into place.
    pub fn put(&self, key: &str, value: &Value) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(value)?)?;
        fs::rename(&tmp, self.path(key))?;
        Ok(())
    }
}

/// `facets_from_vertices`, memoized when a cache is given.
pub fn cached_facets(cache: Option<&Cache>, vrep: &VRep, budget: &Budget) -> Result<HRep> {
    let Some(cache) = cache else {
        return polyhedra::facets_from_vertices(vrep, budget);
    };
    let key = Cache::key("facets", &vrep.to_json());
    if let Some(h) = cache.get(&key).and_then(|v| HRep::from_json(&v).ok()) {
        return Ok(h);
    }
    let h = polyhedra::facets_from_vertices(vrep, budget)?;
    cache.put(&key, &h.to_json())?;
    Ok(h)
}

/// `vertices_from_inequalities`, memoized when a cache is given.
pub fn cached_vertices(cache: Option<&Cache>, hrep: &HRep, budget: &Budget) -> Result<VRep> {
    let Some(cache) = cache else {
        return polyhedra::vertices_from_inequalities(hrep, budget);
    };
    let key = Cache::key("vertices", &hrep.to_json());
    if let Some(v) = cache.get(&key).and_then(|v| VRep::from_json(&v).ok()) {
        return Ok(v);
    }
    let v = polyhedra::vertices_from_inequalities(hrep, budget)?;
    cache.put(&key, &v.to_json())?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::to_rationals;

    fn square() -> VRep {
        VRep::new(2, vec![to_rationals(&[0, 0]), to_rationals(&[1, 0]), to_rationals(&[0, 1]), to_rationals(&[1, 1])])
            .unwrap()
    }

    #[test]
    fn keys_depend_on_kind_and_content() {
        let v = square().to_json();
        assert_eq!(Cache::key("facets", &v), Cache::key("facets", &v));
        assert_ne!(Cache::key("facets", &v), Cache::key("vertices", &v));
        assert_ne!(Cache::key("facets", &v), Cache::key("facets", &serde_json::json!([])));
    }

    #[test]
    fn hull_round_trips_through_cache() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let direct = polyhedra::facets_from_vertices(&square(), &Budget::unlimited()).unwrap();
        let first = cached_facets(Some(&cache), &square(), &Budget::unlimited()).unwrap();
        let second = cached_facets(Some(&cache), &square(), &Budget::unlimited()).unwrap();
        assert_eq!(first, direct);
        assert_eq!(second, direct);
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        let verts = cached_vertices(Some(&cache), &direct, &Budget::unlimited()).unwrap();
        assert_eq!(verts, square());
    }

    #[test]
    fn corrupt_entry_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let key = Cache::key("facets", &square().to_json());
        std::fs::write(dir.path().join(format!("{key}.json")), "not json").unwrap();
        let h = cached_facets(Some(&cache), &square(), &Budget::unlimited()).unwrap();
        assert_eq!(h.inequalities.len(), 4);
    }
}
