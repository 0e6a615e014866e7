//! On-disk cache of character tables. Entries are validated on load, so a
//! stale or corrupted file only costs a recomputation.

use std::path::PathBuf;

use schurlab::characters::{install_character_table, SymCharacterTable};
use schurlab::groups::{CharacterTable, FiniteGroup};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::failure::CliResult;
use crate::output::write_atomic;

const CACHE_FORMAT: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    format: u32,
    value: T,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// `$SCHURLAB_CACHE`, else the platform cache directory. An empty
    /// `SCHURLAB_CACHE` disables caching.
    pub fn from_env() -> Self {
        let dir = match std::env::var_os("SCHURLAB_CACHE") {
            Some(v) if v.is_empty() => None,
            Some(v) => Some(PathBuf::from(v)),
            None => dirs::cache_dir().map(|d| d.join("schurlab")),
        };
        Cache { dir }
    }

    fn load<T: DeserializeOwned>(&self, name: &str) -> Option<T> {
        let bytes = std::fs::read(self.dir.as_ref()?.join(name)).ok()?;
        let entry: Entry<T> = serde_json::from_slice(&bytes).ok()?;
        (entry.format == CACHE_FORMAT).then_some(entry.value)
    }

    fn store<T: Serialize>(&self, name: &str, value: T) {
        let Some(dir) = &self.dir else { return };
        let entry = Entry {
            format: CACHE_FORMAT,
            value,
        };
        let Ok(bytes) = serde_json::to_vec(&entry) else {
            return;
        };
        // a read-only or missing cache directory is not an error
        if std::fs::create_dir_all(dir).is_ok() {
            let _ = write_atomic(dir, name, &bytes);
        }
    }

    /// Makes the `S_k` character table available to the library.
    pub fn preload_sym_table(&self, k: usize) -> CliResult<()> {
        let name = format!("sym-k{k}.json");
        if let Some(t) = self.load::<SymCharacterTable>(&name) {
            if t.k == k && install_character_table(t).is_ok() {
                return Ok(());
            }
        }
        let table = schurlab::characters::character_table(k)?;
        self.store(&name, &*table);
        Ok(())
    }

    pub fn group_table(&self, group: &FiniteGroup) -> CliResult<CharacterTable> {
        let name = format!(
            "group-{}.json",
            group.family().to_string().replace(':', "-")
        );
        if let Some(t) = self.load::<CharacterTable>(&name) {
            if t.validate(group).is_ok() {
                return Ok(t);
            }
        }
        let table = CharacterTable::of(group)?;
        self.store(&name, &table);
        Ok(table)
    }
}
