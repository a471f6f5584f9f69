//! Exact count tables keyed by cycle type, with their JSON and CSV renderings.
//!
//! Counts are serialized as decimal strings so that consumers limited to
//! 53-bit numbers never truncate them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize, Serializer};

use crate::partition::{partitions_of, Partition};

pub(crate) fn serialize_count<S: Serializer>(
    value: &BigUint,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&value.to_str_radix(10))
}

mod count_string {
    use super::*;
    use serde::Deserializer;

    pub fn serialize<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        serialize_count(value, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::parse_bytes(text.as_bytes(), 10)
            .ok_or_else(|| serde::de::Error::custom(format!("not a decimal count: {text:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Oracle,
    Recurrence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statistic {
    ByType,
    ByTypeAndExceedance,
}

/// `p^{(n)}_μ` (or any other per-type count) for every μ ⊢ n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub n: usize,
    pub source: Source,
    pub entries: BTreeMap<Partition, BigUint>,
}

#[derive(Serialize, Deserialize)]
struct TableEntry {
    #[serde(rename = "type")]
    cycle_type: Partition,
    #[serde(with = "count_string")]
    count: BigUint,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    n: usize,
    source: Source,
    statistic: Statistic,
    entries: Vec<TableEntry>,
}

impl CountTable {
    /// A table with every partition of `n` present and set to zero.
    pub fn zeroed(n: usize, source: Source) -> Self {
        let entries = partitions_of(n)
            .into_iter()
            .map(|p| (p, BigUint::default()))
            .collect();
        CountTable { n, source, entries }
    }

    /// The count for `lambda`; zero when absent.
    pub fn get(&self, lambda: &Partition) -> BigUint {
        self.entries.get(lambda).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Sum of the entries whose key has exactly `k` parts.
    pub fn length_marginal(&self, k: usize) -> BigUint {
        self.entries
            .iter()
            .filter(|(p, _)| p.len() == k)
            .map(|(_, c)| c)
            .sum()
    }

    /// True when both tables hold the same counts, regardless of source tag.
    pub fn same_counts(&self, other: &CountTable) -> bool {
        self.n == other.n && self.entries == other.entries
    }

    pub fn to_json(&self) -> String {
        let doc = TableJson {
            n: self.n,
            source: self.source,
            statistic: Statistic::ByType,
            entries: self
                .entries
                .iter()
                .map(|(p, c)| TableEntry {
                    cycle_type: p.clone(),
                    count: c.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("table serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        let doc: TableJson = serde_json::from_str(text)?;
        let entries = doc
            .entries
            .into_iter()
            .map(|e| (e.cycle_type, e.count))
            .collect();
        Ok(CountTable {
            n: doc.n,
            source: doc.source,
            entries,
        })
    }

    /// CSV with columns `type,length,count`; parts are space separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("type,length,count\n");
        for (p, c) in &self.entries {
            let parts: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
            writeln!(out, "{},{},{}", parts.join(" "), p.len(), c).unwrap();
        }
        out
    }
}

/// `p^η_{λ,a}` for one fixed λ: counts keyed by diagonal type η and number of
/// exceedances `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceedanceProfile {
    pub n: usize,
    pub lambda: Partition,
    pub entries: BTreeMap<(Partition, usize), BigUint>,
}

#[derive(Serialize)]
struct ProfileEntry<'a> {
    #[serde(rename = "type")]
    cycle_type: &'a Partition,
    exceedances: usize,
    #[serde(serialize_with = "serialize_count")]
    count: &'a BigUint,
}

#[derive(Serialize)]
struct ProfileJson<'a> {
    n: usize,
    source: Source,
    statistic: Statistic,
    lambda: &'a Partition,
    entries: Vec<ProfileEntry<'a>>,
}

impl ExceedanceProfile {
    pub fn get(&self, eta: &Partition, a: usize) -> BigUint {
        self.entries
            .get(&(eta.clone(), a))
            .cloned()
            .unwrap_or_default()
    }

    /// `p^η_λ`, summing over the number of exceedances.
    pub fn by_diagonal(&self, eta: &Partition) -> BigUint {
        self.entries
            .iter()
            .filter(|((e, _), _)| e == eta)
            .map(|(_, c)| c)
            .sum()
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    pub fn to_json(&self) -> String {
        let doc = ProfileJson {
            n: self.n,
            source: Source::Oracle,
            statistic: Statistic::ByTypeAndExceedance,
            lambda: &self.lambda,
            entries: self
                .entries
                .iter()
                .map(|((eta, a), c)| ProfileEntry {
                    cycle_type: eta,
                    exceedances: *a,
                    count: c,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("profile serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let mut t = CountTable::zeroed(3, Source::Oracle);
        t.entries.insert("3".parse().unwrap(), BigUint::from(2u32));
        let json = t.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["n"], 3);
        assert_eq!(v["source"], "oracle");
        assert_eq!(v["statistic"], "by-type");
        assert_eq!(v["entries"][0]["type"], serde_json::json!([1, 1, 1]));
        assert_eq!(v["entries"][2]["type"], serde_json::json!([3]));
        assert_eq!(v["entries"][2]["count"], "2");
        assert_eq!(CountTable::from_json(&json).unwrap(), t);
    }

    #[test]
    fn csv_shape() {
        let mut t = CountTable::zeroed(3, Source::Recurrence);
        t.entries.insert("3".parse().unwrap(), BigUint::from(2u32));
        assert_eq!(t.to_csv(), "type,length,count\n1 1 1,3,0\n2 1,2,0\n3,1,2\n");
    }
}
