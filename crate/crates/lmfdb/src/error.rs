use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed label {0:?}")]
    Label(String),
    #[error("schema validation failed for {query}: {reason}")]
    Schema { query: String, reason: String },
    #[error("no fixture for {query} ({digest}) and the client is offline")]
    MissingFixture { query: String, digest: String },
    #[error("request for {query} failed: {source}")]
    Network {
        query: String,
        #[source]
        source: reqwest::Error,
    },
    #[error("level {0} is beyond the LMFDB coverage bound")]
    UncoveredLevel(u64),
    #[error("claim {id}: {reason}")]
    Claim { id: String, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
