use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::record::NewformOrbitRecord;

/// Fields requested from `mf_newforms`.
pub const NEWFORM_FIELDS: &str = "analytic_rank,char_order,dim,fricke_eigenval,label,level,weight";

/// An API query: a collection name and its parameters, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub collection: String,
    pub params: BTreeMap<String, String>,
}

impl Query {
    /// Weight-2 newform orbits of exact level `n`.
    pub fn newforms_of_level(n: u64) -> Self {
        let params = [("level", n.to_string()), ("weight", "2".into()), ("_fields", NEWFORM_FIELDS.into())];
        Query {
            collection: "mf_newforms".into(),
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }

    /// `collection?k1=v1&k2=v2…` with keys sorted; the hash input for fixture names.
    pub fn canonical(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}?{}", self.collection, params.join("&"))
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }
}

/// Where a fixture's records came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Downloaded by [`crate::Client`].
    Api,
    /// Entered by hand from the LMFDB web pages.
    Curated,
}

/// One fixture file: the query, its records, and whether they are the whole answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureDoc {
    pub query: String,
    pub source: Source,
    /// False when the records are a subset of what the API returns.
    pub complete: bool,
    pub data: Vec<NewformOrbitRecord>,
}

impl FixtureDoc {
    pub fn validate(&self, query: &Query) -> Result<()> {
        let schema = |reason: String| Error::Schema { query: query.canonical(), reason };
        if self.query != query.canonical() {
            return Err(schema(format!("fixture records query {:?}", self.query)));
        }
        let level: Option<u64> = query.params.get("level").and_then(|s| s.parse().ok());
        for r in &self.data {
            r.validate().map_err(schema)?;
            if level.is_some_and(|n| n != r.level) {
                return Err(schema(format!("{} is not of the queried level", r.label)));
            }
        }
        Ok(())
    }

    /// Pretty JSON with sorted keys and a trailing newline, so rewrites are byte-stable.
    pub fn to_canonical_json(&self) -> Result<String> {
        let value = serde_json::to_value(self)?;
        Ok(serde_json::to_string_pretty(&value)? + "\n")
    }
}

/// A directory of fixtures named `<sha256 of canonical query>.json`.
#[derive(Clone, Debug)]
pub struct FixtureStore {
    dir: PathBuf,
}

impl FixtureStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FixtureStore { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, query: &Query) -> PathBuf {
        self.dir.join(format!("{}.json", query.digest()))
    }

    pub fn load(&self, query: &Query) -> Result<Option<FixtureDoc>> {
        let path = self.path_for(query);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let doc: FixtureDoc = serde_json::from_str(&text)
            .map_err(|e| Error::Schema { query: query.canonical(), reason: e.to_string() })?;
        doc.validate(query)?;
        Ok(Some(doc))
    }

    /// Writes through a temporary file so concurrent readers never see a partial fixture.
    pub fn save(&self, query: &Query, doc: &FixtureDoc) -> Result<PathBuf> {
        doc.validate(query)?;
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(query);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, doc.to_canonical_json()?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_query_is_sorted() {
        let q = Query::newforms_of_level(65);
        assert_eq!(q.canonical(), format!("mf_newforms?_fields={NEWFORM_FIELDS}&level=65&weight=2"));
        assert_eq!(q.digest().len(), 64);
        assert_ne!(q.digest(), Query::newforms_of_level(63).digest());
    }
}
