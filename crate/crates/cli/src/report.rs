use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    OutOfScope,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn word(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::OutOfScope => "out-of-scope",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimStatus {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

impl ClaimStatus {
    pub fn check(id: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        ClaimStatus { id: id.into(), status: Status::from_bool(ok), detail: detail.into() }
    }
}

/// A markdown table; the JSON body carries the same rows under `data`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub command: String,
    /// The resolved arguments, so identical inputs give identical bodies.
    pub args: Value,
    pub claims: Vec<ClaimStatus>,
    pub data: Value,
    #[serde(skip)]
    pub tables: Vec<Table>,
}

impl ReportDocument {
    pub fn new(command: &str, args: Value) -> Self {
        ReportDocument { command: command.into(), args, claims: Vec::new(), data: Value::Null, tables: Vec::new() }
    }

    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    /// Keys sorted at every level, two-space indentation, trailing newline.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value serializes") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# {}\n", self.command);
        for t in &self.tables {
            let _ = write!(s, "\n## {}\n\n| {} |\n|{}|\n", t.title, t.columns.join(" | "), vec!["---"; t.columns.len()].join("|"));
            for r in &t.rows {
                let _ = writeln!(s, "| {} |", r.join(" | "));
            }
        }
        if !self.claims.is_empty() {
            s.push_str("\n## Claims\n\n| id | status | detail |\n|---|---|---|\n");
            for c in &self.claims {
                let _ = writeln!(s, "| {} | {} | {} |", c.id, c.status.word(), c.detail.replace('|', "\\|"));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_keys_are_sorted_and_stable() {
        let mut r = ReportDocument::new("x", json!({"z": 1, "a": 2}));
        r.claims.push(ClaimStatus::check("c", true, "ok"));
        r.data = json!({"b": [1, 2], "a": null});
        let s = r.to_json();
        assert!(s.find("\"a\"").unwrap() < s.find("\"z\"").unwrap());
        assert!(s.find("\"args\"").unwrap() < s.find("\"claims\"").unwrap());
        assert_eq!(s, r.clone().to_json());
        assert_eq!(r.exit_code(), 0);
        r.claims.push(ClaimStatus::check("d", false, "no"));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn markdown_tables() {
        let mut r = ReportDocument::new("gonality-table", json!({}));
        let mut t = Table::new("T", &["n", "b"]);
        t.push(vec!["77".into(), "5".into()]);
        r.tables.push(t);
        assert!(r.to_markdown().contains("| n | b |\n|---|---|\n| 77 | 5 |\n"));
    }
}
