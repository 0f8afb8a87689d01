//! Integer Hecke polynomials keyed by (N, chi, k, l), held in memory and
//! optionally mirrored to a directory of JSON documents.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::dimformulas::{CharKind, SpaceLabel};
use crate::error::{Error, Result};
use crate::exactlinalg::IntPoly;
use crate::ffpoly::FpPoly;
use crate::modsym::ModularSymbolSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CacheKey {
    pub level: u64,
    pub chi: CharKind,
    pub weight: u32,
    pub ell: u64,
}

impl CacheKey {
    pub fn new(label: &SpaceLabel, ell: u64) -> Self {
        CacheKey { level: label.level, chi: label.chi.kind(), weight: label.weight, ell }
    }

    fn file_name(&self) -> String {
        format!("N{}_{}_k{}_l{}.json", self.level, self.chi, self.weight, self.ell)
    }
}

/// On-disk record, one per key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub level: u64,
    pub chi: CharKind,
    pub weight: u32,
    pub ell: u64,
    pub coeffs: IntPoly,
}

/// Shared store of integer characteristic polynomials and of the modular
/// symbol spaces used to compute them. Safe to use from many threads; disk
/// writes go through a temporary file and an atomic rename.
#[derive(Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
    polys: Mutex<HashMap<CacheKey, IntPoly>>,
    spaces: Mutex<HashMap<SpaceLabel, Arc<Mutex<Option<Arc<ModularSymbolSpace>>>>>>,
    write_lock: Mutex<()>,
    computed: AtomicU64,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl Cache {
    /// Memory-only cache.
    pub fn in_memory() -> Self {
        Cache::default()
    }

    /// Cache backed by `dir`, created if missing.
    pub fn with_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir: Some(dir), ..Cache::default() })
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Number of polynomials computed from scratch (cache misses).
    pub fn computed_count(&self) -> u64 {
        self.computed.load(Ordering::Relaxed)
    }

    pub fn get(&self, key: &CacheKey) -> Result<Option<IntPoly>> {
        if let Some(f) = self.polys.lock().expect("cache lock").get(key) {
            return Ok(Some(f.clone()));
        }
        let Some(dir) = &self.dir else { return Ok(None) };
        let path = dir.join(key.file_name());
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let entry: CacheEntry = serde_json::from_str(&text)?;
        let found = CacheKey { level: entry.level, chi: entry.chi, weight: entry.weight, ell: entry.ell };
        if found != *key {
            return Err(Error::Cache(format!("{} holds a different key", path.display())));
        }
        self.polys.lock().expect("cache lock").insert(*key, entry.coeffs.clone());
        Ok(Some(entry.coeffs))
    }

    pub fn put(&self, key: CacheKey, f: &IntPoly) -> Result<()> {
        self.polys.lock().expect("cache lock").insert(key, f.clone());
        let Some(dir) = &self.dir else { return Ok(()) };
        let entry =
            CacheEntry { level: key.level, chi: key.chi, weight: key.weight, ell: key.ell, coeffs: f.clone() };
        let text = serde_json::to_string(&entry)?;
        let _guard = self.write_lock.lock().expect("cache write lock");
        let tmp = dir.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, text)?;
        fs::rename(&tmp, dir.join(key.file_name()))?;
        Ok(())
    }

    /// The modular symbol space for `label`, built at most once while held.
    pub fn space(&self, label: SpaceLabel) -> Result<Arc<ModularSymbolSpace>> {
        let slot = self.spaces.lock().expect("space lock").entry(label).or_default().clone();
        let mut guard = slot.lock().expect("space slot lock");
        if let Some(s) = guard.as_ref() {
            return Ok(s.clone());
        }
        let s = Arc::new(ModularSymbolSpace::build(label)?);
        *guard = Some(s.clone());
        Ok(s)
    }

    /// Drops the held space for `label`; polynomials are kept.
    pub fn release_space(&self, label: &SpaceLabel) {
        self.spaces.lock().expect("space lock").remove(label);
    }

    /// Integer characteristic polynomial of T_l on S_k(N, chi).
    pub fn charpoly(&self, label: SpaceLabel, ell: u64) -> Result<IntPoly> {
        let key = CacheKey::new(&label, ell);
        if let Some(f) = self.get(&key)? {
            return Ok(f);
        }
        let f = if label.parity_ok() { self.space(label)?.charpoly_hecke(ell)? } else { IntPoly::one() };
        self.computed.fetch_add(1, Ordering::Relaxed);
        self.put(key, &f)?;
        Ok(f)
    }
}

/// Reduction mod p of the Hecke polynomial of T_l on S_k(N, chi).
pub fn charpoly_mod_p(label: SpaceLabel, ell: u64, p: u64, cache: &Cache) -> Result<FpPoly> {
    if label.level.is_multiple_of(p) {
        return Err(Error::PrimeDividesLevel { p, level: label.level });
    }
    cache.charpoly(label, ell)?.reduce_mod(p)
}
