//! OEIS search client with an on-disk response cache, a politeness rate
//! limit, and a fully offline mode that consults only the cache.
//!
//! Raw responses are cached as JSON files keyed by the query text, with
//! the retrieval timestamp stored inside the cache entry; warm-cache runs
//! are therefore byte-reproducible, timestamps included.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::domain::ExactInt;

const DEFAULT_BASE_URL: &str = "https://oeis.org";
const MIN_REQUEST_INTERVAL: Duration = Duration::from_secs(1);
const MAX_MATCHES: usize = 10;

static LAST_REQUEST: Mutex<Option<Instant>> = Mutex::new(None);

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("query needs at least 4 terms, got {0}")]
    QueryTooShort(usize),
    #[error("network error querying OEIS: {0}")]
    Network(String),
    #[error("malformed OEIS response: {0}")]
    MalformedResponse(String),
    #[error("cache I/O error at {path}: {source}")]
    CacheIo {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// One candidate sequence returned by a lookup. The matched prefix of the
/// query literally occurs in the candidate's data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OeisMatch {
    /// A-number, e.g. "A000045".
    pub id: String,
    /// Number of leading query terms found contiguously in the data.
    pub matched_prefix_len: usize,
    /// Unix seconds at which the raw response was retrieved.
    pub retrieved_at: u64,
    /// True when the response came from the on-disk cache.
    pub cache_hit: bool,
}

/// How a lookup was answered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum OeisStatus {
    /// Fresh network response (now cached).
    Live,
    /// Served from the on-disk cache.
    CacheHit,
    /// Offline and absent from the cache; no matches available.
    CacheMiss,
    /// All-zero query; lookup skipped by policy.
    SkippedDegenerate,
}

/// Result of one lookup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OeisLookup {
    pub query: String,
    pub status: OeisStatus,
    pub matches: Vec<OeisMatch>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct CacheEntry {
    query: String,
    retrieved_at: u64,
    body: String,
}

/// Search client. Construct once per pipeline run; requests are
/// serialized process-wide with at least one second between them.
pub struct OeisClient {
    cache_dir: PathBuf,
    offline: bool,
    base_url: String,
}

impl OeisClient {
    pub fn new(cache_dir: impl Into<PathBuf>, offline: bool) -> Self {
        OeisClient {
            cache_dir: cache_dir.into(),
            offline,
            base_url: DEFAULT_BASE_URL.to_string(),
        }
    }

    /// Overrides the endpoint; intended for tests.
    pub fn with_base_url(mut self, base_url: impl Into<String>) -> Self {
        self.base_url = base_url.into();
        self
    }

    pub fn offline(&self) -> bool {
        self.offline
    }

    /// Comma-separated signed query text for a term prefix.
    pub fn query_string(terms: &[ExactInt]) -> String {
        terms
            .iter()
            .map(ExactInt::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Cache file for a query, with `-` and `,` mapped to filename-safe
    /// characters.
    pub fn cache_path(&self, query: &str) -> PathBuf {
        let safe: String = query
            .chars()
            .map(|c| match c {
                ',' => '_',
                '-' => 'm',
                other => other,
            })
            .collect();
        self.cache_dir.join(format!("q{safe}.json"))
    }

    /// Looks up a term prefix. Needs at least 4 terms; all-zero prefixes
    /// are skipped by policy rather than queried.
    pub fn lookup(&self, terms: &[ExactInt]) -> Result<OeisLookup, OeisError> {
        if terms.len() < 4 {
            return Err(OeisError::QueryTooShort(terms.len()));
        }
        let query = Self::query_string(terms);
        if terms.iter().all(|t| t.to_string() == "0") {
            return Ok(OeisLookup {
                query,
                status: OeisStatus::SkippedDegenerate,
                matches: Vec::new(),
            });
        }

        let path = self.cache_path(&query);
        if path.exists() {
            let entry = self.read_cache(&path)?;
            let matches = parse_matches(&entry.body, &query, entry.retrieved_at, true)?;
            return Ok(OeisLookup {
                query,
                status: OeisStatus::CacheHit,
                matches,
            });
        }
        if self.offline {
            return Ok(OeisLookup {
                query,
                status: OeisStatus::CacheMiss,
                matches: Vec::new(),
            });
        }

        let body = self.fetch(&query)?;
        let retrieved_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        self.write_cache(&path, &query, retrieved_at, &body)?;
        let matches = parse_matches(&body, &query, retrieved_at, false)?;
        Ok(OeisLookup {
            query,
            status: OeisStatus::Live,
            matches,
        })
    }

    fn fetch(&self, query: &str) -> Result<String, OeisError> {
        rate_limit_gate();
        let url = format!("{}/search", self.base_url);
        let mut response = ureq::get(&url)
            .query("q", query)
            .query("fmt", "json")
            .call()
            .map_err(|e| OeisError::Network(e.to_string()))?;
        response
            .body_mut()
            .read_to_string()
            .map_err(|e| OeisError::Network(e.to_string()))
    }

    fn read_cache(&self, path: &Path) -> Result<CacheEntry, OeisError> {
        let text = fs::read_to_string(path).map_err(|source| OeisError::CacheIo {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text)
            .map_err(|e| OeisError::MalformedResponse(format!("cache entry {path:?}: {e}")))
    }

    fn write_cache(
        &self,
        path: &Path,
        query: &str,
        retrieved_at: u64,
        body: &str,
    ) -> Result<(), OeisError> {
        fs::create_dir_all(&self.cache_dir).map_err(|source| OeisError::CacheIo {
            path: self.cache_dir.clone(),
            source,
        })?;
        let entry = CacheEntry {
            query: query.to_string(),
            retrieved_at,
            body: body.to_string(),
        };
        let text = serde_json::to_string_pretty(&entry).expect("cache entry serializes");
        fs::write(path, text).map_err(|source| OeisError::CacheIo {
            path: path.to_path_buf(),
            source,
        })
    }
}

fn rate_limit_gate() {
    let mut last = LAST_REQUEST.lock().unwrap();
    if let Some(t) = *last {
        let elapsed = t.elapsed();
        if elapsed < MIN_REQUEST_INTERVAL {
            std::thread::sleep(MIN_REQUEST_INTERVAL - elapsed);
        }
    }
    *last = Some(Instant::now());
}

/// Parses an OEIS search response (either the `{"results": [...]}` object
/// form or a bare array) into ranked matches.
fn parse_matches(
    body: &str,
    query: &str,
    retrieved_at: u64,
    cache_hit: bool,
) -> Result<Vec<OeisMatch>, OeisError> {
    let value: Value = serde_json::from_str(body)
        .map_err(|e| OeisError::MalformedResponse(e.to_string()))?;
    let results: &[Value] = match &value {
        Value::Array(items) => items,
        Value::Object(map) => match map.get("results") {
            Some(Value::Array(items)) => items,
            Some(Value::Null) | None => &[],
            Some(other) => {
                return Err(OeisError::MalformedResponse(format!(
                    "unexpected `results` field: {other}"
                )))
            }
        },
        other => {
            return Err(OeisError::MalformedResponse(format!(
                "unexpected response shape: {other}"
            )))
        }
    };

    let query_terms: Vec<&str> = query.split(',').collect();
    let mut matches = Vec::new();
    for result in results {
        let number = result
            .get("number")
            .and_then(Value::as_u64)
            .ok_or_else(|| OeisError::MalformedResponse("result without number".into()))?;
        let data = result.get("data").and_then(Value::as_str).unwrap_or("");
        let data_terms: Vec<&str> = data
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        let len = matched_prefix_len(&query_terms, &data_terms);
        if len == 0 {
            continue;
        }
        matches.push(OeisMatch {
            id: format!("A{number:06}"),
            matched_prefix_len: len,
            retrieved_at,
            cache_hit,
        });
    }
    matches.sort_by(|a, b| {
        b.matched_prefix_len
            .cmp(&a.matched_prefix_len)
            .then_with(|| a.id.cmp(&b.id))
    });
    matches.truncate(MAX_MATCHES);
    Ok(matches)
}

/// Longest p such that query[..p] occurs contiguously in data.
fn matched_prefix_len(query: &[&str], data: &[&str]) -> usize {
    let max = query.len().min(data.len());
    for p in (1..=max).rev() {
        if data.windows(p).any(|w| w == &query[..p]) {
            return p;
        }
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::TempDir;

    fn int(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    fn terms(vs: &[i64]) -> Vec<ExactInt> {
        vs.iter().copied().map(ExactInt::from).collect()
    }

    fn seed_cache(dir: &Path, query: &str, body: &str) {
        let client = OeisClient::new(dir, true);
        let path = client.cache_path(query);
        let entry = CacheEntry {
            query: query.to_string(),
            retrieved_at: 1_700_000_000,
            body: body.to_string(),
        };
        fs::create_dir_all(dir).unwrap();
        fs::write(path, serde_json::to_string_pretty(&entry).unwrap()).unwrap();
    }

    #[test]
    fn query_string_signs() {
        assert_eq!(
            OeisClient::query_string(&terms(&[-1, -1, -2, -3, -5])),
            "-1,-1,-2,-3,-5"
        );
    }

    #[test]
    fn cache_path_is_filename_safe() {
        let client = OeisClient::new("/tmp/cache", true);
        let path = client.cache_path("-1,2,-3");
        assert_eq!(path.file_name().unwrap(), "qm1_2_m3.json");
    }

    #[test]
    fn too_short_query_rejected() {
        let dir = TempDir::new().unwrap();
        let client = OeisClient::new(dir.path(), true);
        assert!(matches!(
            client.lookup(&terms(&[1, 2, 3])),
            Err(OeisError::QueryTooShort(3))
        ));
    }

    #[test]
    fn degenerate_query_skipped() {
        let dir = TempDir::new().unwrap();
        let client = OeisClient::new(dir.path(), true);
        let lookup = client.lookup(&terms(&[0, 0, 0, 0])).unwrap();
        assert_eq!(lookup.status, OeisStatus::SkippedDegenerate);
        assert!(lookup.matches.is_empty());
    }

    #[test]
    fn offline_miss_is_flagged() {
        let dir = TempDir::new().unwrap();
        let client = OeisClient::new(dir.path(), true);
        let lookup = client.lookup(&terms(&[1, 1, 2, 3, 5, 8])).unwrap();
        assert_eq!(lookup.status, OeisStatus::CacheMiss);
        assert!(lookup.matches.is_empty());
    }

    #[test]
    fn cache_hit_parses_fixture() {
        let dir = TempDir::new().unwrap();
        let body = r#"{"count": 1, "results": [
            {"number": 45, "data": "0,1,1,2,3,5,8,13,21,34,55", "name": "Fibonacci numbers"}
        ]}"#;
        seed_cache(dir.path(), "1,1,2,3,5,8", body);
        let client = OeisClient::new(dir.path(), true);
        let lookup = client.lookup(&terms(&[1, 1, 2, 3, 5, 8])).unwrap();
        assert_eq!(lookup.status, OeisStatus::CacheHit);
        assert_eq!(lookup.matches.len(), 1);
        let m = &lookup.matches[0];
        assert_eq!(m.id, "A000045");
        assert_eq!(m.matched_prefix_len, 6);
        assert!(m.cache_hit);
        assert_eq!(m.retrieved_at, 1_700_000_000);
    }

    #[test]
    fn bare_array_response_accepted() {
        let dir = TempDir::new().unwrap();
        let body = r#"[{"number": 12, "data": "1,1,1,1,1,1,1"}]"#;
        seed_cache(dir.path(), "1,1,1,1,1", body);
        let client = OeisClient::new(dir.path(), true);
        let lookup = client.lookup(&terms(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(lookup.matches[0].id, "A000012");
        assert_eq!(lookup.matches[0].matched_prefix_len, 5);
    }

    #[test]
    fn malformed_cache_body_is_a_parse_error() {
        let dir = TempDir::new().unwrap();
        seed_cache(dir.path(), "1,2,4,8", "{not json");
        let client = OeisClient::new(dir.path(), true);
        assert!(matches!(
            client.lookup(&terms(&[1, 2, 4, 8])),
            Err(OeisError::MalformedResponse(_))
        ));
    }

    #[test]
    fn prefix_matching() {
        assert_eq!(
            matched_prefix_len(&["1", "2", "3"], &["0", "1", "2", "3", "4"]),
            3
        );
        assert_eq!(matched_prefix_len(&["1", "2"], &["2", "1"]), 1);
        assert_eq!(matched_prefix_len(&["7"], &["1", "2"]), 0);
        assert_eq!(
            matched_prefix_len(&["1", "2", "9"], &["1", "2", "3"]),
            2
        );
    }

    #[test]
    fn degenerate_zero_rational_text() {
        assert_eq!(int(0).to_string(), "0");
    }
}
