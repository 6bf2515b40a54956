use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A newform orbit label `level.weight.char.orbit`, e.g. `65.2.a.a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Label {
    pub level: u64,
    pub weight: u64,
    pub char_orbit: String,
    pub orbit: String,
}

/// LMFDB orbit letters count in base 26 with `a = 0`: `a, …, z, ba, bb, …`.
fn letters_index(s: &str) -> u64 {
    s.bytes().fold(0, |acc, b| acc * 26 + (b - b'a') as u64)
}

fn valid_letters(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_lowercase()) && (s.len() == 1 || !s.starts_with('a'))
}

impl Label {
    /// The character orbit label `level.char`, e.g. `143.h`.
    pub fn char_orbit_label(&self) -> String {
        format!("{}.{}", self.level, self.char_orbit)
    }

    fn sort_key(&self) -> (u64, u64, u64, u64) {
        (self.level, self.weight, letters_index(&self.char_orbit), letters_index(&self.orbit))
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Label(s.to_string());
        let parts: Vec<&str> = s.split('.').collect();
        let [level, weight, c, x] = parts[..] else { return Err(bad()) };
        let num = |t: &str| t.parse::<u64>().ok().filter(|&v| v > 0 && !t.starts_with('0'));
        let (Some(level), Some(weight)) = (num(level), num(weight)) else { return Err(bad()) };
        if !valid_letters(c) || !valid_letters(x) {
            return Err(bad());
        }
        Ok(Label { level, weight, char_orbit: c.to_string(), orbit: x.to_string() })
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}.{}", self.level, self.weight, self.char_orbit, self.orbit)
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One Galois orbit of newforms, restricted to the audited fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NewformOrbitRecord {
    pub label: String,
    pub level: u64,
    pub weight: u64,
    pub char_order: u64,
    /// Upper bound on the analytic rank of each form in the orbit; `None` when
    /// no bound is recorded, which audits treat as possibly positive.
    pub analytic_rank: Option<u64>,
    /// `[K_f : Q]`, the dimension of the orbit.
    pub dim: Option<u64>,
    /// Eigenvalue of the Fricke involution, recorded for trivial character only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fricke_eigenval: Option<i64>,
}

impl NewformOrbitRecord {
    pub fn parsed_label(&self) -> Result<Label> {
        self.label.parse()
    }

    /// Checks the label against the stored level and weight.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let l = self.parsed_label().map_err(|e| e.to_string())?;
        if (l.level, l.weight) != (self.level, self.weight) {
            return Err(format!("{} disagrees with level {} weight {}", self.label, self.level, self.weight));
        }
        if self.weight != 2 {
            return Err(format!("{} has weight {}", self.label, self.weight));
        }
        if self.char_order == 0 {
            return Err(format!("{} has character order 0", self.label));
        }
        if (self.char_order == 1) != (l.char_orbit == "a") {
            return Err(format!("{}: character orbit a is exactly the trivial character", self.label));
        }
        if matches!(self.fricke_eigenval, Some(e) if e != 1 && e != -1) {
            return Err(format!("{} has Fricke eigenvalue outside ±1", self.label));
        }
        Ok(())
    }

    pub fn possibly_positive_rank(&self) -> bool {
        self.analytic_rank != Some(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_round_trip() {
        for s in ["65.2.a.a", "143.2.h.a", "997.2.bz.ba", "1.12.a.a"] {
            let l: Label = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        for s in ["65.2.a", "65.2.A.a", "065.2.a.a", "65.2.ab.a", "0.2.a.a", "65.2..a", "65.2.a.a.a"] {
            assert!(s.parse::<Label>().is_err(), "{s}");
        }
    }

    #[test]
    fn label_order_is_numeric_in_letters() {
        let mut v: Vec<Label> =
            ["65.2.ba.a", "65.2.b.a", "13.2.e.a", "65.2.z.b", "65.2.a.c"].iter().map(|s| s.parse().unwrap()).collect();
        v.sort();
        let s: Vec<String> = v.iter().map(ToString::to_string).collect();
        assert_eq!(s, ["13.2.e.a", "65.2.a.c", "65.2.b.a", "65.2.z.b", "65.2.ba.a"]);
        assert_eq!(v[0].char_orbit_label(), "13.e");
    }
}
