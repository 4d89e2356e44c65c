//! On-disk cache of rational eigen-symbols, guarded by an advisory lock.

use std::fs::{self, File, OpenOptions};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::build::{build_rational, RationalForm};
use super::spec::FormSpec;
use crate::error::Result;

pub const CACHE_ENV: &str = "MT_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$MT_CACHE_DIR`, or `./.mt-cache`.
    pub fn from_env() -> Self {
        Cache::new(std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".mt-cache")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Key over everything that determines the symbols (not `p`).
    pub fn key(spec: &FormSpec) -> String {
        let ident = serde_json::json!({
            "level": spec.level,
            "weight": spec.weight,
            "character": spec.character,
            "field_poly": spec.field_poly,
            "an": spec.an,
        });
        let digest = Sha256::digest(ident.to_string().as_bytes());
        let hex: String = digest.iter().take(12).map(|b| format!("{b:02x}")).collect();
        let safe: String = spec.label.chars().map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' }).collect();
        format!("{safe}-{hex}")
    }

    fn path_for(&self, spec: &FormSpec) -> PathBuf {
        self.dir.join(format!("{}.symbols.json", Self::key(spec)))
    }

    fn lock_file(&self) -> Result<File> {
        fs::create_dir_all(&self.dir)?;
        Ok(OpenOptions::new().create(true).truncate(false).write(true).open(self.dir.join(".lock"))?)
    }

    pub fn load_rational(&self, spec: &FormSpec) -> Result<Option<RationalForm>> {
        let path = self.path_for(spec);
        if !path.exists() {
            return Ok(None);
        }
        let lock = self.lock_file()?;
        lock.lock_shared()?;
        let text = fs::read_to_string(&path);
        lock.unlock()?;
        // an unreadable or stale entry is rebuilt rather than trusted
        Ok(text.ok().and_then(|t| serde_json::from_str(&t).ok()))
    }

    pub fn store_rational(&self, spec: &FormSpec, form: &RationalForm) -> Result<()> {
        let lock = self.lock_file()?;
        lock.lock()?;
        let path = self.path_for(spec);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let res = fs::write(&tmp, serde_json::to_vec(form)?).and_then(|_| fs::rename(&tmp, &path));
        lock.unlock()?;
        Ok(res?)
    }

    /// Cached symbols, building and storing them on a miss. The flag reports a hit.
    pub fn rational(&self, spec: &FormSpec) -> Result<(RationalForm, bool)> {
        if let Some(f) = self.load_rational(spec)? {
            return Ok((f, true));
        }
        let f = build_rational(spec)?;
        self.store_rational(spec, &f)?;
        Ok((f, false))
    }
}
