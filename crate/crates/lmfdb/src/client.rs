use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fixture::{FixtureDoc, FixtureStore, Query, Source};
use crate::record::{Label, NewformOrbitRecord};

pub const DEFAULT_BASE_URL: &str = "https://www.lmfdb.org/api";
pub const DEFAULT_DELAY: Duration = Duration::from_millis(1500);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Read fixtures only.
    Offline,
    /// Use fixtures when present, otherwise fetch and cache.
    Online,
    /// Fetch even when a fixture exists, overwriting it.
    Refresh,
}

/// All weight-2 orbits of level dividing `n` known to the fixtures or the API.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSet {
    pub n: u64,
    pub records: Vec<NewformOrbitRecord>,
    /// Levels whose fixture is marked incomplete.
    pub incomplete_levels: Vec<u64>,
    /// Fixture digests consulted, by level.
    pub sources: Vec<(u64, String)>,
}

impl OrbitSet {
    pub fn complete(&self) -> bool {
        self.incomplete_levels.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&NewformOrbitRecord> {
        self.records.iter().find(|r| r.label == label)
    }
}

/// Sequential, rate-limited client in front of a [`FixtureStore`].
pub struct Client {
    store: FixtureStore,
    mode: Mode,
    base_url: String,
    delay: Duration,
    http: Option<reqwest::blocking::Client>,
    last_request: Mutex<Option<Instant>>,
}

impl Client {
    pub fn new(store: FixtureStore, mode: Mode) -> Self {
        let http = (mode != Mode::Offline).then(|| {
            reqwest::blocking::Client::builder()
                .user_agent(concat!("torsion-sieve-lmfdb/", env!("CARGO_PKG_VERSION")))
                .timeout(Duration::from_secs(60))
                .build()
                .expect("TLS backend initializes")
        });
        Client { store, mode, base_url: DEFAULT_BASE_URL.into(), delay: DEFAULT_DELAY, http, last_request: Mutex::new(None) }
    }

    pub fn offline(store: FixtureStore) -> Self {
        Client::new(store, Mode::Offline)
    }

    pub fn with_delay(mut self, delay: Duration) -> Self {
        self.delay = delay;
        self
    }

    pub fn with_base_url(mut self, url: impl Into<String>) -> Self {
        self.base_url = url.into();
        self
    }

    pub fn store(&self) -> &FixtureStore {
        &self.store
    }

    pub fn fetch(&self, query: &Query) -> Result<FixtureDoc> {
        if self.mode != Mode::Refresh {
            if let Some(doc) = self.store.load(query)? {
                return Ok(doc);
            }
        }
        let Some(http) = &self.http else {
            return Err(Error::MissingFixture { query: query.canonical(), digest: query.digest() });
        };
        let doc = self.download(http, query)?;
        self.store.save(query, &doc)?;
        Ok(doc)
    }

    /// Holding the lock across the request keeps the client single-flight.
    fn download(&self, http: &reqwest::blocking::Client, query: &Query) -> Result<FixtureDoc> {
        let mut last = self.last_request.lock().unwrap_or_else(|e| e.into_inner());
        let mut data = Vec::new();
        loop {
            if let Some(t) = *last {
                thread::sleep(self.delay.saturating_sub(t.elapsed()));
            }
            let mut params: Vec<(String, String)> = query.params.clone().into_iter().collect();
            params.push(("_format".into(), "json".into()));
            params.push(("_offset".into(), data.len().to_string()));
            let url = format!("{}/{}/", self.base_url, query.collection);
            let net = |source| Error::Network { query: query.canonical(), source };
            *last = Some(Instant::now());
            let page: Value = http
                .get(&url)
                .query(&params)
                .send()
                .and_then(|r| r.error_for_status())
                .map_err(net)?
                .json()
                .map_err(net)?;
            let (records, more) = parse_page(query, &page)?;
            let empty = records.is_empty();
            data.extend(records);
            if !more || empty {
                break;
            }
        }
        data.sort_by_key(label_key);
        Ok(FixtureDoc { query: query.canonical(), source: Source::Api, complete: true, data })
    }

    pub fn fetch_orbits(&self, n: u64) -> Result<OrbitSet> {
        if n == 0 {
            return Err(Error::Claim { id: "fetch_orbits".into(), reason: "level must be positive".into() });
        }
        let mut set = OrbitSet { n, records: Vec::new(), incomplete_levels: Vec::new(), sources: Vec::new() };
        for d in (1..=n).filter(|d| n % d == 0) {
            let q = Query::newforms_of_level(d);
            let doc = self.fetch(&q)?;
            if !doc.complete {
                set.incomplete_levels.push(d);
            }
            set.sources.push((d, q.digest()));
            set.records.extend(doc.data);
        }
        set.records.sort_by_key(label_key);
        Ok(set)
    }
}

fn label_key(r: &NewformOrbitRecord) -> Option<Label> {
    r.parsed_label().ok()
}

/// Records of one API page and whether a further page exists.
fn parse_page(query: &Query, page: &Value) -> Result<(Vec<NewformOrbitRecord>, bool)> {
    let schema = |reason: String| Error::Schema { query: query.canonical(), reason };
    let data = page.get("data").and_then(Value::as_array).ok_or_else(|| schema("response has no data array".into()))?;
    let records = data
        .iter()
        .map(|v| {
            let r: NewformOrbitRecord = serde_json::from_value(v.clone()).map_err(|e| schema(e.to_string()))?;
            r.validate().map_err(schema)?;
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    let more = page.get("next").is_some_and(|v| !v.is_null());
    Ok((records, more))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parses_api_page() {
        let q = Query::newforms_of_level(11);
        let page = json!({"data": [{"label": "11.2.a.a", "level": 11, "weight": 2, "char_order": 1,
            "analytic_rank": 0, "dim": 1, "fricke_eigenval": -1}], "next": null});
        let (r, more) = parse_page(&q, &page).unwrap();
        assert!(!more);
        assert_eq!(r[0].analytic_rank, Some(0));
    }

    #[test]
    fn schema_drift_is_rejected() {
        let q = Query::newforms_of_level(11);
        for page in [
            json!({"results": []}),
            json!({"data": [{"label": "11.2.a.a", "level": 11, "weight": 2, "char_order": "one", "analytic_rank": 0, "dim": 1}]}),
            json!({"data": [{"label": "11.2.a.a", "level": 11, "weight": 2, "char_order": 1, "analytic_rank": 0, "dim": 1, "extra": 3}]}),
            json!({"data": [{"label": "11.4.a.a", "level": 11, "weight": 4, "char_order": 1, "analytic_rank": 0, "dim": 2}]}),
        ] {
            assert!(matches!(parse_page(&q, &page), Err(Error::Schema { .. })), "{page}");
        }
    }

    #[test]
    fn offline_miss_is_explicit() {
        let dir = std::env::temp_dir().join(format!("lmfdb-miss-{}", std::process::id()));
        let c = Client::offline(FixtureStore::new(&dir));
        match c.fetch(&Query::newforms_of_level(999)) {
            Err(Error::MissingFixture { digest, .. }) => assert_eq!(digest, Query::newforms_of_level(999).digest()),
            other => panic!("{other:?}"),
        }
    }
}
