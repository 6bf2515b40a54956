use serde::{Deserialize, Serialize};

use crate::client::Client;
use crate::error::{Error, Result};
use crate::record::NewformOrbitRecord;
use crate::COVERED_LEVEL;

/// Selects orbits by character order, exact level and Fricke sign.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Filter {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_orders: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exclude_char_orders: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fricke: Option<i64>,
}

impl Filter {
    pub fn matches(&self, r: &NewformOrbitRecord) -> bool {
        self.char_orders.as_ref().is_none_or(|o| o.contains(&r.char_order))
            && !self.exclude_char_orders.contains(&r.char_order)
            && self.levels.as_ref().is_none_or(|l| l.contains(&r.level))
            && self.fricke.is_none_or(|e| r.fricke_eigenval == Some(e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Predicate {
    /// Every selected orbit has analytic-rank bound 0.
    AllRankZero { filter: Filter },
    /// `Σ rank · [K_f : Q]` over the selected orbits equals `rank`.
    RankSum { filter: Filter, rank: u64 },
    /// The selected orbits of possibly positive rank are exactly `labels`.
    PositiveRankSet { filter: Filter, labels: Vec<String> },
    /// The orbit `label` is present and its character has order `order`.
    CharOrder { label: String, order: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    /// The audit reads every orbit of level dividing this.
    pub level_divides: u64,
    pub predicate: Predicate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub claims: Vec<Claim>,
}

impl Manifest {
    pub fn get(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn audit_all(&self, client: &Client) -> Result<Vec<AuditResult>> {
        self.claims.iter().map(|c| rank_audit(c, client)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditResult {
    pub id: String,
    pub statement: String,
    pub pass: bool,
    pub detail: String,
    /// The records the verdict rests on.
    pub evidence: Vec<NewformOrbitRecord>,
    /// Levels whose fixture is a curated subset of the API answer.
    pub incomplete_levels: Vec<u64>,
}

/// Evaluates `claim` on the orbits of level dividing `claim.level_divides`.
/// Rank fields are upper bounds, so a rank-sum pass says the bound is attained
/// by the listed orbits, not that the algebraic rank is proven.
pub fn rank_audit(claim: &Claim, client: &Client) -> Result<AuditResult> {
    if claim.level_divides == 0 || claim.level_divides > COVERED_LEVEL {
        return Err(Error::UncoveredLevel(claim.level_divides));
    }
    let set = client.fetch_orbits(claim.level_divides)?;
    let err = |reason: String| Error::Claim { id: claim.id.clone(), reason };
    let select = |f: &Filter| -> Vec<NewformOrbitRecord> { set.records.iter().filter(|r| f.matches(r)).cloned().collect() };
    let (pass, detail, evidence) = match &claim.predicate {
        Predicate::AllRankZero { filter } => {
            let selected = select(filter);
            let bad: Vec<_> = selected.iter().filter(|r| r.possibly_positive_rank()).cloned().collect();
            if bad.is_empty() {
                (true, format!("{} orbits, all with rank bound 0", selected.len()), selected)
            } else {
                let labels: Vec<&str> = bad.iter().map(|r| r.label.as_str()).collect();
                (false, format!("possibly positive rank: {}", labels.join(", ")), bad)
            }
        }
        Predicate::RankSum { filter, rank } => {
            let selected = select(filter);
            let mut sum = 0;
            for r in &selected {
                let (Some(a), Some(d)) = (r.analytic_rank, r.dim) else {
                    return Err(err(format!("{} lacks a rank bound or dimension", r.label)));
                };
                sum += a * d;
            }
            let contributing: Vec<_> = selected.into_iter().filter(|r| r.analytic_rank != Some(0)).collect();
            (sum == *rank, format!("rank bound sum {sum}, expected {rank}"), contributing)
        }
        Predicate::PositiveRankSet { filter, labels } => {
            let positive: Vec<_> = select(filter).into_iter().filter(|r| r.possibly_positive_rank()).collect();
            let mut found: Vec<&str> = positive.iter().map(|r| r.label.as_str()).collect();
            let mut want: Vec<&str> = labels.iter().map(String::as_str).collect();
            found.sort_unstable();
            want.sort_unstable();
            (found == want, format!("possibly positive rank: [{}]", found.join(", ")), positive)
        }
        Predicate::CharOrder { label, order } => match set.get(label) {
            Some(r) => (r.char_order == *order, format!("{label} has character order {}", r.char_order), vec![r.clone()]),
            None => (false, format!("{label} not found"), Vec::new()),
        },
    };
    Ok(AuditResult {
        id: claim.id.clone(),
        statement: claim.statement.clone(),
        pass,
        detail,
        evidence,
        incomplete_levels: set.incomplete_levels,
    })
}
