//! Append-only JSON-lines store of count records.
//!
//! Every store rewrites the file through a temporary sibling that is renamed
//! into place, so readers never observe a torn line. Writers inside one
//! process are serialized by a global lock.

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::sync::Mutex;

use tempfile::NamedTempFile;

use super::CountRecord;
use crate::error::{Error, Result};
use crate::exact::Prime;
use crate::schemes::FamilySpec;

static WRITE_LOCK: Mutex<()> = Mutex::new(());

fn read_text(path: &Path) -> Result<Option<String>> {
    match fs::read_to_string(path) {
        Ok(s) => Ok(Some(s)),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn parse_records(text: &str) -> Result<Vec<CountRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l)
                .map_err(|e| Error::Malformed(format!("cache line {}: {e}", i + 1)))
        })
        .collect()
}

/// All records in file order; a missing file is an empty cache.
pub fn read_records(path: &Path) -> Result<Vec<CountRecord>> {
    match read_text(path)? {
        Some(text) => parse_records(&text),
        None => Ok(Vec::new()),
    }
}

fn check_consistent<'a>(
    records: impl IntoIterator<Item = &'a CountRecord>,
    family: &FamilySpec,
    p: Prime,
) -> Result<()> {
    let mut seen: Option<u64> = None;
    for r in records {
        if r.family != *family || r.p != p {
            continue;
        }
        match seen {
            Some(c) if c != r.count => {
                return Err(Error::CacheIntegrity {
                    family: *family,
                    p: p.get(),
                    first: c,
                    second: r.count,
                })
            }
            _ => seen = Some(r.count),
        }
    }
    Ok(())
}

/// Appends `record`. Fails with an integrity error if the file already holds
/// a different count for the same family and prime.
pub fn cache_store(record: &CountRecord, path: &Path) -> Result<()> {
    let _guard = WRITE_LOCK.lock().unwrap_or_else(|e| e.into_inner());
    let existing = read_text(path)?.unwrap_or_default();
    let records = parse_records(&existing)?;
    check_consistent(records.iter().chain([record]), &record.family, record.p)?;

    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(existing.as_bytes())?;
    if !existing.is_empty() && !existing.ends_with('\n') {
        tmp.write_all(b"\n")?;
    }
    serde_json::to_writer(&mut tmp, record)?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Newest record for `(family, p)`: latest `produced_at`, later lines
/// winning ties.
pub fn cache_lookup(family: &FamilySpec, p: u64, path: &Path) -> Result<Option<CountRecord>> {
    let prime = Prime::new(p)?;
    let records = read_records(path)?;
    check_consistent(&records, family, prime)?;
    Ok(records
        .into_iter()
        .filter(|r| r.family == *family && r.p == prime)
        .reduce(|best, r| if r.produced_at >= best.produced_at { r } else { best }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{count_points, CountMethod};

    fn sample(count: u64, stamp: &str) -> CountRecord {
        CountRecord {
            family: FamilySpec::squarefree(3),
            p: Prime::new(2).unwrap(),
            count,
            method: CountMethod::Brute,
            produced_at: stamp.parse().unwrap(),
        }
    }

    #[test]
    fn store_then_lookup() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let rec = count_points(&FamilySpec::squarefree(3), 2).unwrap();
        cache_store(&rec, &path).unwrap();
        assert_eq!(cache_lookup(&rec.family, 2, &path).unwrap(), Some(rec));
    }

    #[test]
    fn missing_key_or_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        assert_eq!(cache_lookup(&FamilySpec::squarefree(3), 2, &path).unwrap(), None);
        cache_store(&sample(4, "2026-01-01T00:00:00Z"), &path).unwrap();
        assert_eq!(cache_lookup(&FamilySpec::squarefree(3), 3, &path).unwrap(), None);
        assert_eq!(cache_lookup(&FamilySpec::coprime_pairs(3), 2, &path).unwrap(), None);
    }

    #[test]
    fn conflicting_store_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        cache_store(&sample(4, "2026-01-01T00:00:00Z"), &path).unwrap();
        let err = cache_store(&sample(5, "2026-01-02T00:00:00Z"), &path).unwrap_err();
        assert!(matches!(err, Error::CacheIntegrity { first: 4, second: 5, .. }));
        assert_eq!(read_records(&path).unwrap().len(), 1);
    }

    #[test]
    fn injected_conflict_fails_lookup() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        cache_store(&sample(4, "2026-01-01T00:00:00Z"), &path).unwrap();
        let line = serde_json::to_string(&sample(7, "2026-01-03T00:00:00Z")).unwrap();
        let mut text = fs::read_to_string(&path).unwrap();
        text.push_str(&line);
        text.push('\n');
        fs::write(&path, text).unwrap();
        assert!(matches!(
            cache_lookup(&FamilySpec::squarefree(3), 2, &path),
            Err(Error::CacheIntegrity { .. })
        ));
    }

    #[test]
    fn newest_record_wins() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let mut late = sample(4, "2026-03-01T00:00:00Z");
        late.method = CountMethod::ClassSpecialization;
        cache_store(&late, &path).unwrap();
        cache_store(&sample(4, "2026-01-01T00:00:00Z"), &path).unwrap();
        let got = cache_lookup(&FamilySpec::squarefree(3), 2, &path).unwrap().unwrap();
        assert_eq!(got.method, CountMethod::ClassSpecialization);
        assert_eq!(read_records(&path).unwrap().len(), 2);
    }

    #[test]
    fn malformed_line_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        fs::write(&path, "{not json}\n").unwrap();
        assert!(matches!(
            cache_lookup(&FamilySpec::squarefree(3), 2, &path),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn concurrent_writers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        std::thread::scope(|s| {
            for d in 0..8u32 {
                let path = &path;
                s.spawn(move || {
                    let rec = count_points(&FamilySpec::squarefree(d), 2).unwrap();
                    cache_store(&rec, path).unwrap();
                });
            }
        });
        assert_eq!(read_records(&path).unwrap().len(), 8);
    }
}
