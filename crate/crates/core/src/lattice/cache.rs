//! On-disk lattice cache.
//!
//! One text file per group, named by a SHA-256 key over the degree and the
//! sorted generator images. Layout:
//!
//! ```text
//! FSQ-LATTICE v1
//! key <hex>
//! order <n>
//! subgroups <m>
//! s <order> <generator element indices...>
//! ...
//! checksum <hex sha256 of every preceding line>
//! ```
//!
//! Any mismatch on load is an [`Error::Cache`]; nothing is silently rebuilt.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::{Lattice, Subgroup};
use crate::table::Table;

const MAGIC: &str = "FSQ-LATTICE v1";
const EXTENSION: &str = "lat";

pub fn cache_key(g: &Group) -> String {
    let mut images: Vec<&[u16]> = g.generators().iter().map(|x| x.images()).collect();
    images.sort_unstable();
    let mut hasher = Sha256::new();
    hasher.update(format!("degree {}\n", g.degree()));
    for im in images {
        let line: Vec<String> = im.iter().map(u16::to_string).collect();
        hasher.update(line.join(" "));
        hasher.update("\n");
    }
    hex::encode(hasher.finalize())
}

pub fn cache_path(dir: &Path, g: &Group) -> PathBuf {
    dir.join(format!("{}.{EXTENSION}", cache_key(g)))
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Cache(format!("{}: {e}", path.display()))
}

fn checksum(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

pub fn encode(g: &Group, lat: &Lattice) -> String {
    let mut body = format!(
        "{MAGIC}\nkey {}\norder {}\nsubgroups {}\n",
        cache_key(g),
        lat.table().size(),
        lat.len()
    );
    for s in lat.subgroups() {
        body.push_str(&format!("s {}", s.order));
        for x in &s.gens {
            body.push_str(&format!(" {x}"));
        }
        body.push('\n');
    }
    let sum = checksum(&body);
    body.push_str(&format!("checksum {sum}\n"));
    body
}

/// Parses a cache file for `g`, rebuilding and checking each subgroup.
pub fn decode(g: &Group, table: Arc<Table>, text: &str) -> Result<Lattice> {
    let bad = |msg: String| Error::Cache(msg);
    let (body, tail) = match text.trim_end_matches('\n').rsplit_once('\n') {
        Some((b, t)) => (format!("{b}\n"), t),
        None => return Err(bad("truncated cache file".into())),
    };
    let sum = tail
        .strip_prefix("checksum ")
        .ok_or_else(|| bad("missing checksum line".into()))?;
    if sum != checksum(&body) {
        return Err(bad("checksum mismatch".into()));
    }
    let mut lines = body.lines();
    if lines.next() != Some(MAGIC) {
        return Err(bad("bad magic header".into()));
    }
    let mut field = |name: &str| -> Result<String> {
        lines
            .next()
            .and_then(|l| l.strip_prefix(name))
            .and_then(|l| l.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| bad(format!("missing {name} line")))
    };
    if field("key")? != cache_key(g) {
        return Err(bad("key does not match the group".into()));
    }
    let order: usize = field("order")?
        .parse()
        .map_err(|_| bad("bad order line".into()))?;
    if order != table.size() {
        return Err(bad(format!("order {order} but group has {}", table.size())));
    }
    let count: usize = field("subgroups")?
        .parse()
        .map_err(|_| bad("bad subgroups line".into()))?;
    let mut subs = Vec::with_capacity(count);
    let mut seen = std::collections::HashSet::new();
    for line in lines {
        let mut parts = line
            .strip_prefix("s ")
            .ok_or_else(|| bad(format!("bad subgroup line {line:?}")))?
            .split_whitespace()
            .map(|t| t.parse::<usize>());
        let sub_order = parts
            .next()
            .and_then(|r| r.ok())
            .ok_or_else(|| bad(format!("bad subgroup line {line:?}")))?;
        let gens: Vec<usize> = parts
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad(format!("bad subgroup line {line:?}")))?;
        if gens.iter().any(|&x| x >= order) {
            return Err(bad(format!("element index out of range in {line:?}")));
        }
        let set = table.generate(&gens);
        if set.len() != sub_order {
            return Err(bad(format!("subgroup order mismatch in {line:?}")));
        }
        if !seen.insert(set.clone()) {
            return Err(bad(format!("duplicate subgroup in {line:?}")));
        }
        subs.push(Subgroup {
            set,
            gens,
            order: sub_order,
        });
    }
    if subs.len() != count {
        return Err(bad(format!(
            "expected {count} subgroups, found {}",
            subs.len()
        )));
    }
    Ok(Lattice::from_subgroups(table, subs))
}

/// Loads the cached lattice of `g`, or builds and stores it.
pub fn load_or_build(g: &Group, dir: &Path) -> Result<Lattice> {
    let path = cache_path(dir, g);
    let table = Arc::new(Table::from_group(g)?);
    if path.exists() {
        let text = fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
        return decode(g, table, &text)
            .map_err(|e| Error::Cache(format!("{}: {e}", path.display())));
    }
    let lat = Lattice::new(table)?;
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, encode(g, &lat)).map_err(|e| io_err(&tmp, e))?;
    fs::rename(&tmp, &path).map_err(|e| io_err(&path, e))?;
    Ok(lat)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub entries: usize,
    pub bytes: u64,
}

fn entries(dir: &Path) -> Result<Vec<PathBuf>> {
    if !dir.exists() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| io_err(dir, e))? {
        let path = entry.map_err(|e| io_err(dir, e))?.path();
        if path.extension().and_then(|e| e.to_str()) == Some(EXTENSION) {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

pub fn stats(dir: &Path) -> Result<CacheStats> {
    let mut s = CacheStats::default();
    for path in entries(dir)? {
        s.entries += 1;
        s.bytes += fs::metadata(&path).map_err(|e| io_err(&path, e))?.len();
    }
    Ok(s)
}

/// Removes every cache file; returns how many were removed.
pub fn clear(dir: &Path) -> Result<usize> {
    let files = entries(dir)?;
    for path in &files {
        fs::remove_file(path).map_err(|e| io_err(path, e))?;
    }
    Ok(files.len())
}
