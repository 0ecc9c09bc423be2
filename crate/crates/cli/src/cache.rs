//! On-disk cache of simple-class data. Purely an optimization: a missing,
//! stale or corrupt entry is recomputed, never trusted over a cold run.

use std::fs;
use std::path::PathBuf;

use wildprim::modrep::SimpleModuleClass;
use wildprim::{BaseFieldSpec, Characteristic};

pub const ENV_VAR: &str = "WILDPRIM_CACHE_DIR";
pub const DEFAULT_DIR: &str = ".wildprim-cache";

#[derive(Clone, Debug)]
pub struct ClassCache {
    dir: Option<PathBuf>,
}

impl ClassCache {
    /// Flag beats environment beats default; `disabled` turns caching off.
    pub fn resolve(flag: Option<PathBuf>, disabled: bool) -> Self {
        if disabled {
            return Self { dir: None };
        }
        let dir = flag
            .or_else(|| std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        Self { dir: Some(dir) }
    }

    fn path(&self, base: BaseFieldSpec, n: u32, seed: u64) -> Option<PathBuf> {
        let c = match base.characteristic {
            Characteristic::Zero => "0",
            Characteristic::P => "p",
        };
        let name = format!("classes-p{}-f{}-c{c}-n{n}-s{seed}-v{}.json", base.p, base.f, env!("CARGO_PKG_VERSION"));
        self.dir.as_ref().map(|d| d.join(name))
    }

    pub fn load(&self, base: BaseFieldSpec, n: u32, seed: u64) -> Option<Vec<SimpleModuleClass>> {
        let path = self.path(base, n, seed)?;
        let bytes = fs::read(path).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    /// Best effort; failures to write are ignored.
    pub fn store(&self, base: BaseFieldSpec, n: u32, seed: u64, classes: &[SimpleModuleClass]) {
        let Some(path) = self.path(base, n, seed) else { return };
        let Ok(json) = serde_json::to_vec(classes) else { return };
        if let Some(dir) = path.parent() {
            if fs::create_dir_all(dir).is_err() {
                return;
            }
        }
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if fs::write(&tmp, json).is_ok() && fs::rename(&tmp, &path).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }
}
