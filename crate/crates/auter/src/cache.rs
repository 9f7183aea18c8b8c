//! Complex cache: built complexes are stored as JSON keyed by
//! `(rank, pointing, deg_max)`.

use crate::complex::{build_quotient_complex, ComplexJson, QuotientComplex};
use crate::enumerate::Pointing;
use std::path::{Path, PathBuf};

pub fn cache_key(rank: u32, pointing: Pointing, deg_max: Option<i64>) -> String {
    match deg_max {
        Some(k) => format!("complex-rank{rank}-{pointing}-deg{k}.json"),
        None => format!("complex-rank{rank}-{pointing}.json"),
    }
}

/// Loads the complex from the cache or builds and stores it.  A corrupt
/// cache entry triggers a rebuild with a warning on stderr.
pub fn cached_complex(
    dir: &Path,
    rank: u32,
    pointing: Pointing,
    deg_max: Option<i64>,
    no_cache: bool,
) -> QuotientComplex {
    if no_cache {
        return build_quotient_complex(rank, pointing, deg_max);
    }
    let path: PathBuf = dir.join(cache_key(rank, pointing, deg_max));
    if let Ok(text) = std::fs::read_to_string(&path) {
        match serde_json::from_str::<ComplexJson>(&text)
            .map_err(crate::Error::from)
            .and_then(|json| QuotientComplex::from_json(&json))
        {
            Ok(cx) => return cx,
            Err(e) => {
                eprintln!(
                    "warning: cache entry {} is corrupt ({e}); rebuilding",
                    path.display()
                );
            }
        }
    }
    let cx = build_quotient_complex(rank, pointing, deg_max);
    if std::fs::create_dir_all(dir).is_ok() {
        let json = serde_json::to_string(&cx.to_json()).expect("serializable");
        if let Err(e) = std::fs::write(&path, json) {
            eprintln!("warning: could not write cache {}: {e}", path.display());
        }
    }
    cx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_round_trip_and_corruption_recovery() {
        let dir = std::env::temp_dir().join(format!("auter-cache-test-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let fresh = cached_complex(&dir, 2, Pointing::Single, None, false);
        let reloaded = cached_complex(&dir, 2, Pointing::Single, None, false);
        assert_eq!(fresh.cells, reloaded.cells);
        // Corrupt the entry and confirm the rebuild matches.
        let path = dir.join(cache_key(2, Pointing::Single, None));
        std::fs::write(&path, b"{not json").unwrap();
        let rebuilt = cached_complex(&dir, 2, Pointing::Single, None, false);
        assert_eq!(fresh.cells, rebuilt.cells);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
