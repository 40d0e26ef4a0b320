//! On-disk prime table cache.
//!
//! Layout, all little-endian:
//!
//! ```text
//! "PIBT"  magic
//! u32     format version (1)
//! u64     sieve limit
//! u64     prime count
//! ...     gaps: one u8 per prime (gap from the previous prime, starting at 0);
//!         a 0x00 byte escapes a following u32 gap
//! ```
//!
//! θ prefixes are not stored; they are recomputed on load so the cache stays
//! independent of the summation mode.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::sum::SumMode;
use crate::table::{build_table_with, PrimeTable, TableConfig, MAX_LIMIT_CAP};

pub const MAGIC: &[u8; 4] = b"PIBT";
pub const VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "PIBOUND_CACHE_DIR";

const ESCAPE: u8 = 0;

pub fn encode(table: &PrimeTable) -> Vec<u8> {
    let primes = table.primes();
    let mut out = Vec::with_capacity(24 + primes.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&table.limit().to_le_bytes());
    out.extend_from_slice(&(primes.len() as u64).to_le_bytes());
    let mut prev = 0u64;
    for &p in primes {
        let gap = p - prev;
        if (1..=255).contains(&gap) {
            out.push(gap as u8);
        } else {
            out.push(ESCAPE);
            out.extend_from_slice(&(gap as u32).to_le_bytes());
        }
        prev = p;
    }
    out
}

fn corrupt<T>(msg: &str) -> Result<T> {
    Err(Error::Cache(msg.to_string()))
}

pub fn decode(bytes: &[u8], mode: SumMode) -> Result<PrimeTable> {
    if bytes.len() < 24 {
        return corrupt("truncated header");
    }
    if &bytes[0..4] != MAGIC {
        return corrupt("bad magic");
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(Error::Cache(format!(
            "unsupported version {version} (expected {VERSION})"
        )));
    }
    let limit = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
    let count = u64::from_le_bytes(bytes[16..24].try_into().unwrap());
    if !(2..=MAX_LIMIT_CAP).contains(&limit) || count > limit {
        return corrupt("implausible limit or count");
    }

    let mut primes = Vec::with_capacity(count as usize);
    let mut rest = &bytes[24..];
    let mut prev = 0u64;
    while let Some((&b, tail)) = rest.split_first() {
        let gap = if b == ESCAPE {
            if tail.len() < 4 {
                return corrupt("truncated escaped gap");
            }
            let g = u32::from_le_bytes(tail[..4].try_into().unwrap());
            rest = &tail[4..];
            g as u64
        } else {
            rest = tail;
            b as u64
        };
        if gap == 0 {
            return corrupt("zero gap");
        }
        prev += gap;
        if prev > limit {
            return corrupt("prime exceeds limit");
        }
        primes.push(prev);
    }
    if primes.len() as u64 != count {
        return corrupt("prime count mismatch");
    }
    Ok(PrimeTable::from_primes(limit, primes, mode))
}

pub fn save(table: &PrimeTable, path: &Path) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(&encode(table))?;
    Ok(())
}

pub fn load(path: &Path, mode: SumMode) -> Result<PrimeTable> {
    let mut buf = Vec::new();
    fs::File::open(path)?.read_to_end(&mut buf)?;
    decode(&buf, mode)
}

pub fn cache_path(dir: &Path, limit: u64) -> PathBuf {
    dir.join(format!("primes-{limit}.pibt"))
}

/// Load the table for `limit` from `dir` if a valid file exists, otherwise
/// sieve and write it. A file that fails validation is rebuilt and replaced.
pub fn load_or_build(dir: &Path, limit: u64, config: &TableConfig) -> Result<PrimeTable> {
    let path = cache_path(dir, limit);
    if path.exists() {
        if let Ok(t) = load(&path, config.sum_mode) {
            if t.limit() == limit {
                return Ok(t);
            }
        }
    }
    let table = build_table_with(limit, config)?;
    fs::create_dir_all(dir)?;
    save(&table, &path)?;
    Ok(table)
}

/// Like [`load_or_build`], using `$PIBOUND_CACHE_DIR` when it is set.
pub fn table_from_env(limit: u64, config: &TableConfig) -> Result<PrimeTable> {
    match std::env::var_os(CACHE_DIR_ENV) {
        Some(dir) if !dir.is_empty() => load_or_build(Path::new(&dir), limit, config),
        _ => build_table_with(limit, config),
    }
}
