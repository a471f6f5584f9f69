//! Cost envelopes: the largest `n` each exhaustive computation accepts without
//! an explicit override. All limits live in [`ENVELOPES`].

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Envelope {
    pub name: &'static str,
    pub max_n: usize,
    pub note: &'static str,
}

pub const TABLE_ORACLE: &str = "table-oracle";
pub const TABLE_RECURRENCE: &str = "table-recurrence";
pub const EXCEEDANCE_PROFILE: &str = "exceedance-profile";
pub const COUNT_FIXED_S: &str = "count-fixed-s";
pub const FACTORIZATIONS: &str = "factorizations";
pub const SEPARATED_STIRLING: &str = "separated-stirling";
pub const SEPARATION_PAIRS: &str = "separation-pairs";
pub const KEY_LEMMA_SETS: &str = "key-lemma-sets";

pub const ENVELOPES: &[Envelope] = &[
    Envelope { name: TABLE_ORACLE, max_n: 12, note: "(n-1)! products of long cycles" },
    Envelope { name: TABLE_RECURRENCE, max_n: 60, note: "polynomial in the number of partitions" },
    Envelope { name: EXCEEDANCE_PROFILE, max_n: 8, note: "n! arrangements per cycle type" },
    Envelope { name: COUNT_FIXED_S, max_n: 8, note: "n! arrangements per cycle type" },
    Envelope { name: FACTORIZATIONS, max_n: 12, note: "(N-1)! long cycles" },
    Envelope { name: SEPARATED_STIRLING, max_n: 10, note: "all n! permutations" },
    Envelope { name: SEPARATION_PAIRS, max_n: 8, note: "((n-1)!)^2 ordered pairs" },
    Envelope { name: KEY_LEMMA_SETS, max_n: 8, note: "explicit permutation sets on [n+1]" },
    Envelope { name: "theorem_main", max_n: 11, note: "recurrence tables" },
    Envelope { name: "zagier_stanley", max_n: 11, note: "oracle by-type tables" },
    Envelope { name: "gen_eq", max_n: 8, note: "exceedance profiles" },
    Envelope { name: "long_eq", max_n: 11, note: "oracle by-type tables" },
    Envelope { name: "exceedance_sum", max_n: 8, note: "exceedance profiles" },
    Envelope { name: "base_recur", max_n: 30, note: "partition arithmetic only" },
    Envelope { name: "downarrow_eq", max_n: 11, note: "recurrence tables" },
    Envelope { name: "key_lemma", max_n: 11, note: "recurrence tables" },
    Envelope { name: "recur_T", max_n: 11, note: "recurrence tables" },
    Envelope { name: "inverse_pairing", max_n: 8, note: "all n! permutations" },
    Envelope { name: "separation", max_n: 8, note: "((n-1)!)^2 ordered pairs" },
];

pub fn max_n(name: &str) -> usize {
    ENVELOPES
        .iter()
        .find(|e| e.name == name)
        .map(|e| e.max_n)
        .unwrap_or_else(|| panic!("no envelope named {name}"))
}

/// Fails unless `n` is within the named envelope or `force` is set.
pub fn check(name: &str, n: usize, force: bool) -> Result<()> {
    let max = max_n(name);
    if n > max && !force {
        return Err(Error::EnvelopeExceeded {
            what: name.to_string(),
            n,
            max,
        });
    }
    Ok(())
}

/// Human-readable rendering of [`ENVELOPES`] for `--help`.
pub fn describe() -> String {
    ENVELOPES
        .iter()
        .map(|e| format!("  {:<20} n <= {:<3} {}", e.name, e.max_n, e.note))
        .collect::<Vec<_>>()
        .join("\n")
}
