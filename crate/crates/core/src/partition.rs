//! Integer partitions, doubling as cycle types.
//!
//! A [`Partition`] is always stored canonically as a non-increasing sequence of
//! positive parts. The exponent notation `1^2 2^1` is accepted on input only.
//!
//! Partitions are totally ordered by decreasing length first, then
//! lexicographically on the part sequence. This is the order in which the
//! recurrence engine needs to visit them (finer partitions first), and it is the
//! order [`partitions_of`] returns.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

impl Partition {
    /// Builds a partition from parts in any order.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::NonPositivePart(0));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    /// Builds a partition from an already non-increasing sequence of positive parts.
    ///
    /// Only for internal callers that maintain the invariant themselves.
    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        let n = parts.iter().sum();
        Partition { parts, n }
    }

    /// `1^n`, the cycle type of the identity.
    pub fn ones(n: usize) -> Self {
        Partition::from_sorted(vec![1; n])
    }

    /// Builds `1^{m_1} 2^{m_2} ...` from `(part, multiplicity)` pairs.
    pub fn from_multiplicities<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut parts = Vec::new();
        for (part, mult) in pairs {
            if part == 0 {
                return Err(Error::NonPositivePart(0));
            }
            parts.extend(std::iter::repeat(part).take(mult));
        }
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of parts, written ℓ(λ) in the literature.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `m_i(λ)`: how many parts equal `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        // parts are sorted, so a binary search brackets the run of i's
        let start = self.parts.partition_point(|&p| p > i);
        let end = self.parts.partition_point(|&p| p >= i);
        end - start
    }

    /// Distinct part values with their multiplicities, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn largest_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// True when every part is 1 or 2, i.e. λ = 1^a 2^b.
    pub fn is_one_two(&self) -> bool {
        self.largest_part() <= 2
    }

    /// λ↓(j): one part `j` becomes `j - 1` (a part 1 simply disappears would
    /// need `j = 1`, which is rejected).
    pub fn down_shift(&self, j: usize) -> Result<Partition> {
        if j < 2 || self.multiplicity(j) == 0 {
            return Err(Error::DownShift {
                partition: self.to_string(),
                part: j,
            });
        }
        let mut parts = self.parts.clone();
        // the last occurrence of j keeps the sequence sorted after decrementing
        let idx = self.parts.partition_point(|&p| p >= j) - 1;
        parts[idx] = j - 1;
        Ok(Partition::from_sorted(parts))
    }

    /// Inverse of [`down_shift`](Self::down_shift): one part `j - 1` becomes `j`.
    pub fn up_shift(&self, j: usize) -> Result<Partition> {
        if j < 2 || self.multiplicity(j - 1) == 0 {
            return Err(Error::DownShift {
                partition: self.to_string(),
                part: j,
            });
        }
        let mut parts = self.parts.clone();
        let idx = self.parts.partition_point(|&p| p > j - 1);
        parts[idx] = j;
        Ok(Partition::from_sorted(parts))
    }

    /// Removes the multiset `other` from `self`, or `None` if it is not contained.
    fn difference(&self, other: &[usize]) -> Option<Vec<usize>> {
        let mut rest = Vec::with_capacity(self.parts.len());
        let mut j = 0;
        for &p in &self.parts {
            if j < other.len() && other[j] == p {
                j += 1;
            } else if j < other.len() && other[j] > p {
                return None;
            } else {
                rest.push(p);
            }
        }
        (j == other.len()).then_some(rest)
    }

    /// Exponent notation, e.g. `1^2 2^1`.
    pub fn exponent_form(&self) -> String {
        let mut m = self.multiplicities();
        m.reverse();
        m.iter()
            .map(|(v, k)| format!("{v}^{k}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .parts
            .len()
            .cmp(&self.parts.len())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Parses either a comma list `3,2,1` or exponent form `1^2 2^1`.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let malformed = |reason: &str| Error::ParsePartition {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let trimmed = text.trim();
    let trimmed = trimmed
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .or_else(|| trimmed.strip_prefix('[').and_then(|t| t.strip_suffix(']')))
        .unwrap_or(trimmed)
        .trim();
    if trimmed.is_empty() {
        return Ok(Partition::default());
    }
    let number = |tok: &str| -> Result<i64> {
        tok.trim()
            .parse::<i64>()
            .map_err(|_| malformed(&format!("not an integer: {tok:?}")))
    };

    let mut parts = Vec::new();
    if trimmed.contains('^') {
        for factor in trimmed.split_whitespace() {
            let (base, exp) = factor
                .split_once('^')
                .ok_or_else(|| malformed(&format!("factor {factor:?} lacks '^'")))?;
            let base = number(base)?;
            let exp = number(exp)?;
            if base <= 0 {
                return Err(Error::NonPositivePart(base));
            }
            if exp < 0 {
                return Err(malformed("negative exponent"));
            }
            parts.extend(std::iter::repeat(base as usize).take(exp as usize));
        }
    } else {
        for tok in trimmed.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let v = number(tok)?;
            if v <= 0 {
                return Err(Error::NonPositivePart(v));
            }
            parts.push(v as usize);
        }
        if parts.is_empty() {
            return Err(malformed("no parts"));
        }
    }
    Partition::new(parts)
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_partition(s)
    }
}

/// All partitions of `n`, ordered by decreasing length, then lexicographically.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn extend(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_sorted(prefix.clone()));
            return;
        }
        for part in (1..=max.min(remaining)).rev() {
            prefix.push(part);
            extend(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Partitions of `n` into exactly `k` parts, in no particular order.
pub(crate) fn partitions_into(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn extend(
        remaining: usize,
        slots: usize,
        max: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slots == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // each remaining slot needs at least 1 and at most `part`
        let hi = max.min(remaining + 1 - slots);
        for part in (1..=hi).rev() {
            if part * slots < remaining {
                break;
            }
            prefix.push(part);
            extend(remaining - part, slots - 1, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n && k > 0 {
        extend(n, k, n, &mut Vec::new(), &mut out);
    }
    out
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `z_λ = n! / ∏ i^{m_i} m_i!`, the size of the conjugacy class of type λ.
pub fn z(lambda: &Partition) -> BigUint {
    let denom = lambda
        .multiplicities()
        .into_iter()
        .fold(BigUint::one(), |acc, (i, m)| {
            acc * BigUint::from(i).pow(m as u32) * factorial(m)
        });
    factorial(lambda.n()) / denom
}

/// `μ ⊳_arity λ` together with κ_{μ,λ}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinementEdge {
    pub finer: Partition,
    pub coarser: Partition,
    pub arity: usize,
    #[serde(serialize_with = "crate::table::serialize_count")]
    pub kappa: BigUint,
}

/// κ_{μ,λ}: the number of ways of merging labeled parts of `mu` into one part so
/// that the result is `lambda`. The number of merged parts is `ℓ(μ) - ℓ(λ) + 1`.
///
/// Parts of `mu` with equal value are distinguished. For each distinct part `v`
/// of `lambda`, the merged sub-multiset is forced to be `μ − (λ − {v})`, and it
/// is realized by `∏_u C(m_u(μ), m_u(S))` labeled choices.
pub fn kappa(mu: &Partition, lambda: &Partition) -> BigUint {
    let mut total = BigUint::default();
    if mu.n() != lambda.n() || mu.len() < lambda.len() + 1 {
        return total;
    }
    let arity = mu.len() - lambda.len() + 1;
    for (v, _) in lambda.multiplicities() {
        let Some(rest) = lambda.difference(&[v]) else {
            continue;
        };
        let Some(merged) = mu.difference(&rest) else {
            continue;
        };
        if merged.len() != arity || merged.iter().sum::<usize>() != v {
            continue;
        }
        let merged = Partition::from_sorted(merged);
        let ways = merged
            .multiplicities()
            .into_iter()
            .fold(BigUint::one(), |acc, (u, s)| {
                acc * binomial(mu.multiplicity(u), s)
            });
        total += ways;
    }
    total
}

/// Every μ obtained from `lambda` by splitting one part into `arity` parts,
/// each paired with κ_{μ,λ}. `arity` must be odd and at least 3.
pub fn refinements_with_kappa(lambda: &Partition, arity: usize) -> Result<Vec<RefinementEdge>> {
    if arity < 3 || arity % 2 == 0 {
        return Err(Error::EvenArity(arity));
    }
    Ok(refinements_of_arity(lambda, arity))
}

/// Like [`refinements_with_kappa`] but for any arity ≥ 2.
pub fn refinements_any_arity(lambda: &Partition, arity: usize) -> Result<Vec<RefinementEdge>> {
    if arity < 2 {
        return Err(Error::ArityTooSmall(arity));
    }
    Ok(refinements_of_arity(lambda, arity))
}

fn refinements_of_arity(lambda: &Partition, arity: usize) -> Vec<RefinementEdge> {
    let mut finer = BTreeSet::new();
    for (v, _) in lambda.multiplicities() {
        if v < arity {
            continue;
        }
        let rest = lambda.difference(&[v]).expect("v is a part");
        for split in partitions_into(v, arity) {
            let mut parts = rest.clone();
            parts.extend(split);
            finer.insert(Partition::new(parts).expect("positive parts"));
        }
    }
    finer
        .into_iter()
        .map(|mu| {
            let kappa = kappa(&mu, lambda);
            debug_assert!(kappa > BigUint::default());
            RefinementEdge {
                finer: mu,
                coarser: lambda.clone(),
                arity,
                kappa,
            }
        })
        .collect()
}

/// All refinements by odd arities 3, 5, …, up to the largest part.
pub fn odd_refinements(lambda: &Partition) -> Vec<RefinementEdge> {
    (3..=lambda.largest_part())
        .step_by(2)
        .flat_map(|arity| refinements_of_arity(lambda, arity))
        .collect()
}
