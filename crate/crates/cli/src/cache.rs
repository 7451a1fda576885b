//! Persistent polynomial cache: a text file of `code=... poly=...` records
//! under a magic/version/basis header.
//!
//! Loading validates the header and every record; any corruption rejects the
//! whole file with a line-numbered diagnostic so a partial cache can never be
//! trusted. Writing goes through a temp file and an atomic rename.

use std::fmt;
use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use schubert::poly::{parse_beta_poly, parse_int_poly, BetaPoly, Poly};
use schubert::schubert::Basis;
use schubert::{Permutation, PolyCache};

pub const MAGIC: &str = "SCHUBCACHE";
pub const VERSION: u32 = 1;

#[derive(Debug)]
pub enum CacheError {
    Io(std::io::Error),
    Format { line: usize, message: String },
}

impl fmt::Display for CacheError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "cache i/o error: {e}"),
            CacheError::Format { line, message } => {
                write!(f, "cache format error at line {line}: {message}")
            }
        }
    }
}

impl From<std::io::Error> for CacheError {
    fn from(e: std::io::Error) -> Self {
        CacheError::Io(e)
    }
}

/// In-memory image of one cache file.
pub struct CacheFile {
    pub basis: Basis,
    pub int_records: Vec<(Permutation, Poly<BigInt>)>,
    pub beta_records: Vec<(Permutation, Poly<BetaPoly>)>,
}

fn render_code(w: &Permutation) -> String {
    w.lehmer_code()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_code(s: &str, line: usize) -> Result<Permutation, CacheError> {
    if s.is_empty() {
        return Ok(Permutation::identity());
    }
    let code: Vec<u32> = s
        .split(',')
        .map(|tok| {
            tok.parse::<u32>().map_err(|_| CacheError::Format {
                line,
                message: format!("bad code entry {tok:?}"),
            })
        })
        .collect::<Result<_, _>>()?;
    Permutation::from_lehmer_code(&code).map_err(|e| CacheError::Format {
        line,
        message: e.to_string(),
    })
}

/// Serializes the given basis's entries from the in-memory cache and writes
/// them atomically.
pub fn store(path: &Path, cache: &PolyCache, basis: Basis) -> Result<(), CacheError> {
    let mut out = String::new();
    out.push_str(&format!("{MAGIC} {VERSION} {}\n", basis.token()));
    match basis {
        Basis::Schubert => {
            for (w, p) in cache.schubert_entries() {
                out.push_str(&format!("code={} poly={}\n", render_code(&w), p));
            }
        }
        Basis::Grothendieck => {
            for (w, p) in cache.grothendieck_entries() {
                out.push_str(&format!("code={} poly={}\n", render_code(&w), p));
            }
        }
        Basis::BetaGrothendieck => {
            for (w, p) in cache.beta_grothendieck_entries() {
                out.push_str(&format!("code={} poly={}\n", render_code(&w), p));
            }
        }
    }
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(out.as_bytes())?;
    tmp.persist(path).map_err(|e| CacheError::Io(e.error))?;
    Ok(())
}

/// Parses a cache file, validating the header and every record.
pub fn load(path: &Path) -> Result<CacheFile, CacheError> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(CacheError::Format {
        line: 1,
        message: "empty cache file".into(),
    })?;
    let mut parts = header.split_whitespace();
    let magic = parts.next().unwrap_or("");
    if magic != MAGIC {
        return Err(CacheError::Format {
            line: 1,
            message: format!("bad magic {magic:?}"),
        });
    }
    let version: u32 = parts
        .next()
        .and_then(|v| v.parse().ok())
        .ok_or(CacheError::Format {
            line: 1,
            message: "missing format version".into(),
        })?;
    if version != VERSION {
        return Err(CacheError::Format {
            line: 1,
            message: format!("unsupported version {version}"),
        });
    }
    let basis = parts
        .next()
        .and_then(Basis::from_token)
        .ok_or(CacheError::Format {
            line: 1,
            message: "missing or unknown basis tag".into(),
        })?;

    let mut file = CacheFile {
        basis,
        int_records: Vec::new(),
        beta_records: Vec::new(),
    };
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let rest = line.strip_prefix("code=").ok_or(CacheError::Format {
            line: lineno,
            message: "record must start with code=".into(),
        })?;
        let (code_str, poly_str) = rest.split_once(" poly=").ok_or(CacheError::Format {
            line: lineno,
            message: "record missing poly= field".into(),
        })?;
        let w = parse_code(code_str, lineno)?;
        match basis {
            Basis::Schubert | Basis::Grothendieck => {
                let p = parse_int_poly(poly_str).map_err(|e| CacheError::Format {
                    line: lineno,
                    message: e.to_string(),
                })?;
                file.int_records.push((w, p));
            }
            Basis::BetaGrothendieck => {
                let p = parse_beta_poly(poly_str).map_err(|e| CacheError::Format {
                    line: lineno,
                    message: e.to_string(),
                })?;
                file.beta_records.push((w, p));
            }
        }
    }
    Ok(file)
}

/// Feeds loaded records into the in-memory cache.
pub fn seed(cache: &PolyCache, file: CacheFile) {
    match file.basis {
        Basis::Schubert => cache.seed_schubert(file.int_records),
        Basis::Grothendieck => cache.seed_grothendieck(file.int_records),
        Basis::BetaGrothendieck => cache.seed_beta_grothendieck(file.beta_records),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_reproduces_the_cache() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.txt");
        let cache = PolyCache::new();
        for w in Permutation::all(3) {
            cache.schubert(&w);
        }
        store(&path, &cache, Basis::Schubert).unwrap();
        let loaded = load(&path).unwrap();
        assert_eq!(loaded.basis, Basis::Schubert);
        assert_eq!(loaded.int_records.len(), 6);
        for (w, p) in &loaded.int_records {
            assert_eq!(*cache.schubert(w), *p, "w={w}");
        }
        // Storing the loaded records again is byte-identical.
        let first = std::fs::read(&path).unwrap();
        let cache2 = PolyCache::new();
        seed(&cache2, loaded);
        let path2 = dir.path().join("cache2.txt");
        store(&path2, &cache2, Basis::Schubert).unwrap();
        assert_eq!(first, std::fs::read(&path2).unwrap());
    }

    #[test]
    fn beta_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.txt");
        let cache = PolyCache::new();
        for w in Permutation::all(3) {
            cache.beta_grothendieck(&w);
        }
        store(&path, &cache, Basis::BetaGrothendieck).unwrap();
        let loaded = load(&path).unwrap();
        for (w, p) in &loaded.beta_records {
            assert_eq!(*cache.beta_grothendieck(w), *p, "w={w}");
        }
    }

    #[test]
    fn wrong_magic_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt");
        std::fs::write(&path, "NOTACACHE 1 schubert\n").unwrap();
        let err = load(&path).unwrap_err();
        assert!(err.to_string().contains("bad magic"));
    }

    #[test]
    fn wrong_version_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt");
        std::fs::write(&path, "SCHUBCACHE 99 schubert\n").unwrap();
        let err = load(&path).unwrap_err();
        assert!(err.to_string().contains("unsupported version"));
    }

    #[test]
    fn corrupt_record_is_rejected_with_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt");
        std::fs::write(
            &path,
            "SCHUBCACHE 1 schubert\ncode=1 poly=x1\ncode=oops poly=x1\n",
        )
        .unwrap();
        let err = load(&path).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "got: {msg}");
    }
}
