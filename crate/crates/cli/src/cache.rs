//! On-disk τ table.
//!
//! ```text
//! TAUTABLE v1
//! N=<decimal>
//! 1 1
//! 2 -24
//! ...
//! ```

use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use ramanujan_tau::tau::{build_tau_table_with, TauTable};
use ramanujan_tau::Parallelism;

pub const HEADER: &str = "TAUTABLE v1";
pub const FILE_NAME: &str = "tau_table.txt";
pub const ENV_DIR: &str = "TAU_CACHE_DIR";

pub fn cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(ENV_DIR).filter(|d| !d.is_empty()) {
        return PathBuf::from(dir);
    }
    dirs::cache_dir()
        .map(|d| d.join("ramanujan-tau"))
        .unwrap_or_else(|| PathBuf::from(".tau-cache"))
}

pub fn cache_file(dir: &Path) -> PathBuf {
    dir.join(FILE_NAME)
}

fn bad(msg: impl Into<String>) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.into())
}

/// Reads only the `N=` header line, `None` if the file does not exist.
pub fn cached_order(path: &Path) -> io::Result<Option<usize>> {
    let file = match fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut lines = BufReader::new(file).lines();
    parse_header(&mut lines).map(Some)
}

fn parse_header(lines: &mut impl Iterator<Item = io::Result<String>>) -> io::Result<usize> {
    match lines.next().transpose()? {
        Some(h) if h == HEADER => {}
        other => return Err(bad(format!("bad cache header {other:?}"))),
    }
    let line = lines.next().transpose()?.unwrap_or_default();
    line.strip_prefix("N=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| bad(format!("bad size line {line:?}")))
}

pub fn read_table(path: &Path) -> io::Result<TauTable> {
    let mut lines = BufReader::new(fs::File::open(path)?).lines();
    let n = parse_header(&mut lines)?;
    let mut coeffs = Vec::with_capacity(n);
    for i in 1..=n {
        let line = lines
            .next()
            .transpose()?
            .ok_or_else(|| bad(format!("cache truncated at record {i}")))?;
        let (idx, val) = line
            .split_once(' ')
            .ok_or_else(|| bad(format!("malformed record {line:?}")))?;
        if idx.parse::<usize>().ok() != Some(i) {
            return Err(bad(format!("record {i} has index {idx:?}")));
        }
        coeffs.push(
            val.parse::<BigInt>()
                .map_err(|_| bad(format!("bad value in record {i}")))?,
        );
    }
    if lines.next().is_some() {
        return Err(bad("trailing data after the last record"));
    }
    TauTable::from_coeffs(coeffs).map_err(|e| bad(e.to_string()))
}

/// Writes atomically through a sibling temporary file.
pub fn write_table(path: &Path, table: &TauTable) -> io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        write!(w, "{HEADER}\nN={}\n", table.order())?;
        for (i, v) in table.coeffs().iter().enumerate() {
            writeln!(w, "{} {v}", i + 1)?;
        }
        w.flush()?;
    }
    fs::rename(tmp, path)
}

#[derive(Debug)]
pub struct Loaded {
    pub table: TauTable,
    pub path: PathBuf,
    /// Whether the file was (re)written by this call.
    pub written: bool,
    pub cached_order: usize,
}

/// A table of order exactly `n`, from the cache when it is large enough.
pub fn ensure_table(dir: &Path, n: usize, mode: Parallelism) -> io::Result<Loaded> {
    let path = cache_file(dir);
    if let Some(cached) = cached_order(&path)? {
        if cached >= n {
            let table = read_table(&path)?;
            return Ok(Loaded {
                table: table.truncated(n),
                path,
                written: false,
                cached_order: cached,
            });
        }
    }
    let table = build_tau_table_with(n, mode).map_err(|e| io::Error::other(e.to_string()))?;
    write_table(&path, &table)?;
    Ok(Loaded {
        table,
        path,
        written: true,
        cached_order: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_format() {
        let dir = tempfile::tempdir().unwrap();
        let loaded = ensure_table(dir.path(), 3, Parallelism::Sequential).unwrap();
        assert!(loaded.written);
        let text = fs::read_to_string(cache_file(dir.path())).unwrap();
        assert_eq!(text, "TAUTABLE v1\nN=3\n1 1\n2 -24\n3 252\n");
    }

    #[test]
    fn reuses_larger_cache() {
        let dir = tempfile::tempdir().unwrap();
        ensure_table(dir.path(), 10, Parallelism::Sequential).unwrap();
        let again = ensure_table(dir.path(), 5, Parallelism::Sequential).unwrap();
        assert!(!again.written);
        assert_eq!(again.table.order(), 5);
        assert_eq!(again.cached_order, 10);
        let grown = ensure_table(dir.path(), 12, Parallelism::Sequential).unwrap();
        assert!(grown.written);
        assert_eq!(read_table(&grown.path).unwrap().order(), 12);
    }

    #[test]
    fn rejects_corrupt_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_file(dir.path());
        fs::write(&path, "TAUTABLE v2\nN=1\n1 1\n").unwrap();
        assert!(read_table(&path).is_err());
        fs::write(&path, "TAUTABLE v1\nN=2\n1 1\n").unwrap();
        assert!(read_table(&path).is_err());
        fs::write(&path, "TAUTABLE v1\nN=1\n1 1\n2 -24\n").unwrap();
        assert!(read_table(&path).is_err());
    }
}
