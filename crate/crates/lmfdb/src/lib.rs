//! Weight-2 newform data from the LMFDB, cached as content-addressed JSON
//! fixtures, and declarative audits of the rank and character hypotheses
//! drawn from it.

pub mod audit;
pub mod client;
pub mod error;
pub mod fixture;
pub mod record;

pub use audit::{rank_audit, AuditResult, Claim, Filter, Manifest, Predicate};
pub use client::{Client, Mode, OrbitSet};
pub use error::{Error, Result};
pub use fixture::{FixtureDoc, FixtureStore, Query};
pub use record::{Label, NewformOrbitRecord};

/// Levels for which the LMFDB stores analytic-rank bounds of every weight-2 newform.
pub const COVERED_LEVEL: u64 = 1000;

/// Fixtures shipped with the crate.
pub fn default_fixture_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// The claims manifest whose fixtures ship with the crate.
pub fn default_manifest() -> Manifest {
    serde_json::from_str(include_str!("../claims.json")).expect("shipped manifest parses")
}

/// Further claims whose fixtures must be fetched live.
pub fn extended_manifest() -> Manifest {
    serde_json::from_str(include_str!("../claims-extended.json")).expect("shipped manifest parses")
}
