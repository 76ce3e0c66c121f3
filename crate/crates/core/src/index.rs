//! Append-only fingerprint index.
//!
//! The store is a UTF-8 text file. The first line is a header naming the
//! store format and the hash version; every further line is one record of
//! five tab-separated fields:
//!
//! ```text
//! #graphprint-index<TAB>1<TAB>h1
//! s 2 full hashed h1<TAB>3f0c9a1b22d4e8f1<TAB>-<TAB>catalog.g6:17<TAB>catalog.g6:17
//! ```
//!
//! The fields are the method descriptor, the 64-bit digest, the wide digest
//! (`-` if absent), the graph id and a free-form source. Ids are unique.
//! A matching fingerprint only makes a graph a candidate: confirming
//! isomorphism needs an exact check downstream.

use std::collections::{HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::slabel::{Fingerprint, HashVersion};

const MAGIC: &str = "#graphprint-index";
const FORMAT_VERSION: u32 = 1;

/// One stored fingerprint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexRecord {
    pub fingerprint: Fingerprint,
    pub id: String,
    pub source: String,
}

impl IndexRecord {
    fn to_line(&self) -> String {
        let fp = &self.fingerprint;
        let wide = fp.wide.map(hex::encode).unwrap_or_else(|| "-".into());
        format!("{}\t{:016x}\t{}\t{}\t{}", fp.method, fp.digest, wide, self.id, self.source)
    }
}

#[derive(Debug)]
pub struct IndexStore {
    path: PathBuf,
    version: HashVersion,
    records: Vec<IndexRecord>,
    by_digest: HashMap<(String, u64), Vec<usize>>,
    ids: HashSet<String>,
}

impl IndexStore {
    /// Opens `path`, creating an empty store for `version` if the file does
    /// not exist. An existing store must carry the same hash version.
    pub fn open_or_create(path: impl AsRef<Path>, version: HashVersion) -> Result<Self> {
        let path = path.as_ref();
        if path.exists() {
            let store = Self::open(path)?;
            if store.version != version {
                return Err(store.error(1, format!("store holds {} digests, requested {version}", store.version)));
            }
            return Ok(store);
        }
        let mut f = OpenOptions::new().write(true).create_new(true).open(path)?;
        writeln!(f, "{MAGIC}\t{FORMAT_VERSION}\t{version}")?;
        Ok(IndexStore {
            path: path.to_path_buf(),
            version,
            records: Vec::new(),
            by_digest: HashMap::new(),
            ids: HashSet::new(),
        })
    }

    /// Loads an existing store.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let err = |line: usize, message: String| Error::Store {
            path: path.display().to_string(),
            line,
            message,
        };
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().unwrap_or("").split('\t').collect();
        let version = match header[..] {
            [MAGIC, fmt, hv] if fmt == FORMAT_VERSION.to_string() => {
                hv.parse::<HashVersion>().map_err(|e| err(1, e.to_string()))?
            }
            [MAGIC, fmt, _] => return Err(err(1, format!("unsupported store format {fmt:?}"))),
            _ => return Err(err(1, "missing or malformed header".into())),
        };
        let mut store = IndexStore {
            path: path.to_path_buf(),
            version,
            records: Vec::new(),
            by_digest: HashMap::new(),
            ids: HashSet::new(),
        };
        for (no, line) in lines.enumerate() {
            let line_no = no + 2;
            if line.is_empty() {
                continue;
            }
            let record = parse_record(line).map_err(|m| err(line_no, m))?;
            if record.fingerprint.method.version != version {
                return Err(err(line_no, format!("record uses {} in a {version} store", record.fingerprint.method.version)));
            }
            if store.ids.contains(&record.id) {
                return Err(err(line_no, format!("duplicate id {:?}", record.id)));
            }
            store.insert(record);
        }
        Ok(store)
    }

    fn error(&self, line: usize, message: String) -> Error {
        Error::Store {
            path: self.path.display().to_string(),
            line,
            message,
        }
    }

    fn insert(&mut self, record: IndexRecord) {
        let key = (record.fingerprint.method.descriptor(), record.fingerprint.digest);
        self.by_digest.entry(key).or_default().push(self.records.len());
        self.ids.insert(record.id.clone());
        self.records.push(record);
    }

    pub fn version(&self) -> HashVersion {
        self.version
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn records(&self) -> &[IndexRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Appends records and flushes them to disk. Nothing is written if any
    /// record is invalid.
    pub fn append(&mut self, records: Vec<IndexRecord>) -> Result<()> {
        let mut fresh = HashSet::new();
        for r in &records {
            if r.fingerprint.method.version != self.version {
                return Err(Error::InvalidArgument(format!(
                    "fingerprint uses {}, store holds {}",
                    r.fingerprint.method.version, self.version
                )));
            }
            for field in [&r.id, &r.source] {
                if field.is_empty() || field.contains(['\t', '\n', '\r']) {
                    return Err(Error::InvalidArgument(format!("id or source {field:?} is empty or has tabs or newlines")));
                }
            }
            if self.ids.contains(&r.id) || !fresh.insert(r.id.clone()) {
                return Err(Error::InvalidArgument(format!("id {:?} is already indexed", r.id)));
            }
        }
        let mut out = String::new();
        for r in &records {
            out.push_str(&r.to_line());
            out.push('\n');
        }
        let mut f: File = OpenOptions::new().append(true).open(&self.path)?;
        f.write_all(out.as_bytes())?;
        f.sync_data()?;
        for r in records {
            self.insert(r);
        }
        Ok(())
    }

    /// Ids of all records with the query's method and 64-bit digest, in
    /// insertion order. Records whose wide digest differs from the query's
    /// are dropped when both carry one.
    pub fn query(&self, fp: &Fingerprint) -> Vec<&str> {
        self.by_digest
            .get(&(fp.method.descriptor(), fp.digest))
            .map(|hits| {
                hits.iter()
                    .map(|&i| &self.records[i])
                    .filter(|r| r.fingerprint.matches(fp))
                    .map(|r| r.id.as_str())
                    .collect()
            })
            .unwrap_or_default()
    }
}

fn parse_record(line: &str) -> std::result::Result<IndexRecord, String> {
    let fields: Vec<&str> = line.split('\t').collect();
    let [method, digest, wide, id, source] = fields[..] else {
        return Err(format!("expected 5 tab-separated fields, found {}", fields.len()));
    };
    if id.is_empty() {
        return Err("empty id".into());
    }
    let mut fp_line = format!("{method} {digest}");
    if wide != "-" {
        fp_line.push(' ');
        fp_line.push_str(wide);
    }
    let fingerprint: Fingerprint = fp_line.parse().map_err(|e: Error| e.to_string())?;
    Ok(IndexRecord {
        fingerprint,
        id: id.to_string(),
        source: source.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::slabel::{fingerprint, Family, Method, Mode};

    fn rec(g: &crate::graph::Graph, id: &str, wide: bool) -> IndexRecord {
        IndexRecord {
            fingerprint: fingerprint(g, &Method::new(Family::S, 2, Mode::Hashed), wide).unwrap(),
            id: id.into(),
            source: "test".into(),
        }
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("idx.tsv");
        let mut store = IndexStore::open_or_create(&path, HashVersion::V1).unwrap();
        store
            .append(vec![rec(&fixtures::cycle(6), "c6", true), rec(&fixtures::two_triangles(), "2k3", false)])
            .unwrap();
        let again = IndexStore::open(&path).unwrap();
        assert_eq!(again.records(), store.records());
        let q = rec(&fixtures::cycle(6).permute(&[3, 1, 4, 0, 5, 2]).unwrap(), "q", true);
        assert_eq!(again.query(&q.fingerprint), vec!["c6"]);
        assert!(again.query(&rec(&fixtures::path(6), "p", false).fingerprint).is_empty());
        assert!(store.append(vec![rec(&fixtures::path(3), "c6", false)]).is_err());
        assert!(store.append(vec![rec(&fixtures::path(3), "a\tb", false)]).is_err());
    }

    #[test]
    fn wide_confirmation() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("idx.tsv");
        let mut store = IndexStore::open_or_create(&path, HashVersion::V1).unwrap();
        let mut forged = rec(&fixtures::cycle(5), "forged", true);
        forged.fingerprint.wide = Some([7; 32]);
        store.append(vec![forged]).unwrap();
        let q = rec(&fixtures::cycle(5), "q", true);
        assert!(store.query(&q.fingerprint).is_empty());
        assert_eq!(store.query(&rec(&fixtures::cycle(5), "q", false).fingerprint), vec!["forged"]);
    }

    #[test]
    fn corrupt_and_mismatched() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("idx.tsv");
        std::fs::write(&path, "#graphprint-index\t1\th1\ns 2 full hashed h1\tzz\t-\tx\ty\n").unwrap();
        match IndexStore::open(&path) {
            Err(Error::Store { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        std::fs::write(&path, "#graphprint-index\t1\th1-set\n").unwrap();
        assert!(matches!(
            IndexStore::open_or_create(&path, HashVersion::V1),
            Err(Error::Store { line: 1, .. })
        ));
        std::fs::write(&path, "garbage\n").unwrap();
        assert!(IndexStore::open(&path).is_err());
    }
}
