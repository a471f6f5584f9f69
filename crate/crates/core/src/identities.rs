//! Named identity checks. Each compares two exactly computed integers over a
//! full sweep for one `n` and reports every disagreement as a witness.
//!
//! Identities with a rational coefficient are checked after multiplying both
//! sides by 2. Cases of the wrong parity (where the counts are known to vanish)
//! are checked as verified zeros unless the identity is only stated for the
//! admissible parity.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::envelope;
use crate::error::{Error, Result};
use crate::oracle::{
    exceedance_profile_oracle, p_long_table_oracle, separated_stirling_table,
    separation_pairs_table,
};
use crate::partition::{factorial, odd_refinements, partitions_of, z, Partition};
use crate::permutation::{enumerate_by_type, Permutation};
use crate::recurrence::{
    compute_twice_t, down_shift_terms, p_long_table_recurrence, separation_pairs_formula,
    zagier_stanley_count,
};
use crate::table::{CountTable, ExceedanceProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityTag {
    TheoremMain,
    ZagierStanley,
    GenEq,
    LongEq,
    ExceedanceSum,
    BaseRecur,
    DownarrowEq,
    KeyLemma,
    RecurT,
    InversePairing,
    Separation,
}

impl IdentityTag {
    pub const ALL: [IdentityTag; 11] = [
        IdentityTag::TheoremMain,
        IdentityTag::ZagierStanley,
        IdentityTag::GenEq,
        IdentityTag::LongEq,
        IdentityTag::ExceedanceSum,
        IdentityTag::BaseRecur,
        IdentityTag::DownarrowEq,
        IdentityTag::KeyLemma,
        IdentityTag::RecurT,
        IdentityTag::InversePairing,
        IdentityTag::Separation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityTag::TheoremMain => "theorem_main",
            IdentityTag::ZagierStanley => "zagier_stanley",
            IdentityTag::GenEq => "gen_eq",
            IdentityTag::LongEq => "long_eq",
            IdentityTag::ExceedanceSum => "exceedance_sum",
            IdentityTag::BaseRecur => "base_recur",
            IdentityTag::DownarrowEq => "downarrow_eq",
            IdentityTag::KeyLemma => "key_lemma",
            IdentityTag::RecurT => "recur_T",
            IdentityTag::InversePairing => "inverse_pairing",
            IdentityTag::Separation => "separation",
        }
    }

    /// Largest `n` run without an override.
    pub fn max_n(self) -> usize {
        envelope::max_n(self.as_str())
    }
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

fn serialize_signed<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    #[serde(serialize_with = "serialize_signed")]
    pub lhs: BigInt,
    #[serde(serialize_with = "serialize_signed")]
    pub rhs: BigInt,
    pub context: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub n: usize,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, usize>,
    pub status: Status,
    pub cases_checked: usize,
    pub failures: Vec<Failure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Single-line JSON; byte-stable for fixed inputs.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Ignore the cost envelope.
    pub force: bool,
    /// Largest `m` for the separation sweep.
    pub m_max: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            force: false,
            m_max: 3,
        }
    }
}

#[derive(Default)]
struct Sweep {
    cases: usize,
    failures: Vec<Failure>,
}

impl Sweep {
    fn check<L, R>(&mut self, lhs: L, rhs: R, context: impl FnOnce() -> String)
    where
        L: Into<BigInt>,
        R: Into<BigInt>,
    {
        self.cases += 1;
        let (lhs, rhs) = (lhs.into(), rhs.into());
        if lhs != rhs {
            self.failures.push(Failure {
                lhs,
                rhs,
                context: context(),
            });
        }
    }

    fn finish(self, tag: &str, n: usize, params: BTreeMap<String, usize>) -> Result<IdentityReport> {
        if self.cases == 0 {
            return Err(Error::VacuousSweep {
                identity: tag.to_string(),
                n,
            });
        }
        Ok(IdentityReport {
            identity: tag.to_string(),
            n,
            params,
            status: if self.failures.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            },
            cases_checked: self.cases,
            failures: self.failures,
        })
    }
}

fn same_parity(a: usize, b: usize) -> bool {
    a % 2 == b % 2
}

pub fn run_identity(tag: IdentityTag, n: usize) -> Result<IdentityReport> {
    run_identity_with(tag, n, &RunOptions::default())
}

pub fn run_identity_with(tag: IdentityTag, n: usize, opts: &RunOptions) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::TooSmall {
            what: tag.to_string(),
            n,
            min: 1,
        });
    }
    envelope::check(tag.as_str(), n, opts.force)?;
    match tag {
        IdentityTag::TheoremMain => theorem_main(&p_long_table_recurrence(n)?),
        IdentityTag::ZagierStanley => zagier_stanley(&p_long_table_oracle(n)),
        IdentityTag::GenEq => gen_eq(&profiles(n)?),
        IdentityTag::LongEq => long_eq(&p_long_table_oracle(n), &p_long_table_recurrence(n)?),
        IdentityTag::ExceedanceSum => exceedance_sum(&profiles(n)?),
        IdentityTag::BaseRecur => base_recur(n),
        IdentityTag::DownarrowEq => downarrow_eq(&p_long_table_recurrence(n)?),
        IdentityTag::KeyLemma => key_lemma(&p_long_table_recurrence(n)?),
        IdentityTag::RecurT => recur_t(&p_long_table_recurrence(n)?),
        IdentityTag::InversePairing => inverse_pairing(n),
        IdentityTag::Separation => separation(n, opts.m_max.min(n)),
    }
}

/// Exceedance profiles for every `λ ⊢ n`, the inputs of `gen_eq` and
/// `exceedance_sum`.
pub fn profiles(n: usize) -> Result<BTreeMap<Partition, ExceedanceProfile>> {
    partitions_of(n)
        .into_iter()
        .map(|lambda| {
            let prof = exceedance_profile_oracle(&lambda, n)?;
            Ok((lambda, prof))
        })
        .collect()
}

/// `(n+1) Σ_{i>0} i m_i(μ) p_μ = 2 (n-1)! z_λ` over `μ = λ↓(i+1)`, for every
/// `λ ⊢ n+1` with `ℓ(λ) ≡ n (mod 2)`. `table` may come from either route.
pub fn theorem_main(table: &CountTable) -> Result<IdentityReport> {
    let n = table.n;
    let scale = factorial(n - 1);
    let mut sweep = Sweep::default();
    for lambda in partitions_of(n + 1) {
        if !same_parity(lambda.len(), n) {
            continue;
        }
        let lhs = compute_twice_t(&lambda, table)?;
        let rhs = &scale * z(&lambda) * 2u32;
        sweep.check(lhs, rhs, || format!("lambda={lambda}"));
    }
    sweep.finish("theorem_main", n, BTreeMap::new())
}

/// Length marginals of `table` against `(n-1)!` times the long-cycle count by
/// number of cycles, for every `k ∈ 1..=n`.
pub fn zagier_stanley(table: &CountTable) -> Result<IdentityReport> {
    let n = table.n;
    let scale = factorial(n - 1);
    let mut sweep = Sweep::default();
    for k in 1..=n {
        let rhs = &scale * zagier_stanley_count(n, k)?;
        sweep.check(table.length_marginal(k), rhs, || format!("k={k}"));
    }
    sweep.finish("zagier_stanley", n, BTreeMap::new())
}

/// `Σ_a (n-ℓ(λ)-a) p^η_{λ,a} = Σ_{μ ⊳_{2i+1} λ} κ_{μ,λ} p^η_μ` for all `λ, η ⊢ n`.
pub fn gen_eq(profiles: &BTreeMap<Partition, ExceedanceProfile>) -> Result<IdentityReport> {
    let n = profiles.keys().next().map(Partition::n).unwrap_or(0);
    let etas = partitions_of(n);
    let mut sweep = Sweep::default();
    for (lambda, prof) in profiles {
        let edges = odd_refinements(lambda);
        for eta in &etas {
            let mut lhs = BigInt::zero();
            for ((e, a), count) in &prof.entries {
                if e == eta {
                    let coeff = n as i64 - lambda.len() as i64 - *a as i64;
                    lhs += BigInt::from(coeff) * BigInt::from(count.clone());
                }
            }
            let rhs: BigUint = edges
                .iter()
                .map(|edge| &edge.kappa * profiles[&edge.finer].by_diagonal(eta))
                .sum();
            sweep.check(lhs, rhs, || format!("lambda={lambda} eta={eta}"));
        }
    }
    sweep.finish("gen_eq", n, BTreeMap::new())
}

/// The refinement recurrence evaluated on oracle counts, plus entry-wise
/// agreement between the oracle and recurrence tables.
pub fn long_eq(oracle: &CountTable, recurrence: &CountTable) -> Result<IdentityReport> {
    let n = oracle.n;
    let scale = factorial(n - 1);
    let mut sweep = Sweep::default();
    for lambda in partitions_of(n) {
        let edges = odd_refinements(&lambda);
        if same_parity(lambda.len(), n) {
            let lhs = oracle.get(&lambda) * (n + 1 - lambda.len());
            let mut rhs = &scale * z(&lambda);
            for edge in &edges {
                rhs += &edge.kappa * oracle.get(&edge.finer);
            }
            sweep.check(lhs, rhs, || format!("recurrence at lambda={lambda}"));
        } else {
            sweep.check(oracle.get(&lambda), 0u32, || {
                format!("wrong-parity oracle entry lambda={lambda}")
            });
        }
        sweep.check(oracle.get(&lambda), recurrence.get(&lambda), || {
            format!("oracle vs recurrence lambda={lambda}")
        });
    }
    sweep.finish("long_eq", n, BTreeMap::new())
}

/// Total exceedances over all plane permutations with vertical type `λ`,
/// against `(n - m_1(λ))/2 · (n-1)! z_λ` and against the `η`-summed form of
/// `gen_eq`.
pub fn exceedance_sum(profiles: &BTreeMap<Partition, ExceedanceProfile>) -> Result<IdentityReport> {
    let n = profiles.keys().next().map(Partition::n).unwrap_or(0);
    let scale = factorial(n - 1);
    let mut sweep = Sweep::default();
    for (lambda, prof) in profiles {
        let total: BigUint = prof.entries.iter().map(|((_, a), c)| c * *a).sum();
        let class = &scale * z(lambda);
        sweep.check(total.clone() * 2u32, &class * (n - lambda.multiplicity(1)), || {
            format!("2*total vs (n-m1)(n-1)!z at lambda={lambda}")
        });
        let mut rhs = BigInt::from(&class * (n - lambda.len()));
        for edge in odd_refinements(lambda) {
            rhs -= BigInt::from(&edge.kappa * &scale * z(&edge.finer));
        }
        sweep.check(total, rhs, || format!("eta-summed refinement form at lambda={lambda}"));
    }
    sweep.finish("exceedance_sum", n, BTreeMap::new())
}

/// `2(n+1-ℓ(λ)) z_λ = 2 Σ κ_{μ,λ} z_μ + z_λ Σ_{i>0} (i+1) m_{i+1}(λ)` for
/// every `λ ⊢ n+1`. Pure partition arithmetic.
pub fn base_recur(n: usize) -> Result<IdentityReport> {
    let mut sweep = Sweep::default();
    for lambda in partitions_of(n + 1) {
        let zl = z(&lambda);
        let lhs = &zl * (n + 1 - lambda.len()) * 2u32;
        let mut rhs = &zl * (n + 1 - lambda.multiplicity(1));
        for edge in odd_refinements(&lambda) {
            rhs += &edge.kappa * z(&edge.finer) * 2u32;
        }
        sweep.check(lhs, rhs, || format!("lambda={lambda}"));
    }
    sweep.finish("base_recur", n, BTreeMap::new())
}

/// The refinement recurrence at `λ↓(i+1)`, rescaled by `(n+1)/2 · i m_i`, for
/// every `λ ⊢ n+1` and `i > 0`.
pub fn downarrow_eq(table: &CountTable) -> Result<IdentityReport> {
    let n = table.n;
    let scale = factorial(n - 1);
    let mut sweep = Sweep::default();
    for lambda in partitions_of(n + 1) {
        let admissible = same_parity(lambda.len(), n);
        let zl = z(&lambda);
        for term in down_shift_terms(&lambda) {
            let nu = &term.shifted;
            let edges = odd_refinements(nu);
            if admissible {
                let factor = (n + 1) * term.weight;
                let lhs = table.get(nu) * factor * (n + 1 - lambda.len());
                let mut rhs = &scale * &zl * ((term.i + 1) * lambda.multiplicity(term.i + 1));
                for edge in &edges {
                    rhs += &edge.kappa * table.get(&edge.finer) * factor;
                }
                sweep.check(lhs, rhs, || format!("lambda={lambda} i={}", term.i));
            } else {
                let vanishing: BigUint = table.get(nu)
                    + edges.iter().map(|e| table.get(&e.finer)).sum::<BigUint>();
                sweep.check(vanishing, 0u32, || {
                    format!("wrong-parity terms lambda={lambda} i={}", term.i)
                });
            }
        }
    }
    sweep.finish("downarrow_eq", n, BTreeMap::new())
}

/// The formal coefficients of each `p_μ` (`μ ⊢ n`) on the two sides of the key
/// lemma for `λ ⊢ n+1`: down-shift then refine, versus refine then down-shift.
pub fn key_lemma_coefficients(
    lambda: &Partition,
) -> (BTreeMap<Partition, BigUint>, BTreeMap<Partition, BigUint>) {
    let mut left: BTreeMap<Partition, BigUint> = BTreeMap::new();
    for term in down_shift_terms(lambda) {
        for edge in odd_refinements(&term.shifted) {
            *left.entry(edge.finer).or_default() += &edge.kappa * term.weight;
        }
    }
    let mut right: BTreeMap<Partition, BigUint> = BTreeMap::new();
    for edge in odd_refinements(lambda) {
        for term in down_shift_terms(&edge.finer) {
            *right.entry(term.shifted).or_default() += &edge.kappa * term.weight;
        }
    }
    (left, right)
}

/// Both double sums of the key lemma evaluated on `table`, plus agreement of
/// the formal coefficient of every `p_μ`.
pub fn key_lemma(table: &CountTable) -> Result<IdentityReport> {
    let n = table.n;
    let mut sweep = Sweep::default();
    for lambda in partitions_of(n + 1) {
        let (left, right) = key_lemma_coefficients(&lambda);
        let evaluate = |coeffs: &BTreeMap<Partition, BigUint>| -> BigUint {
            coeffs.iter().map(|(mu, c)| c * table.get(mu)).sum()
        };
        sweep.check(evaluate(&left), evaluate(&right), || format!("lambda={lambda}"));
        for mu in partitions_of(n) {
            let l = left.get(&mu).cloned().unwrap_or_default();
            let r = right.get(&mu).cloned().unwrap_or_default();
            sweep.check(l, r, || format!("coefficient of p_{mu} at lambda={lambda}"));
        }
    }
    sweep.finish("key_lemma", n, BTreeMap::new())
}

/// `(n+1-ℓ(λ)) T_λ = Σ κ_{μ,λ} T_μ + (n-1)! z_λ / 2 · Σ_{i>0} (i+1) m_{i+1}(λ)`,
/// doubled, for every `λ ⊢ n+1`.
pub fn recur_t(table: &CountTable) -> Result<IdentityReport> {
    let n = table.n;
    let scale = factorial(n - 1);
    let twice_t: BTreeMap<Partition, BigUint> = partitions_of(n + 1)
        .into_iter()
        .map(|lambda| {
            let t = compute_twice_t(&lambda, table)?;
            Ok((lambda, t))
        })
        .collect::<Result<_>>()?;
    let mut sweep = Sweep::default();
    for (lambda, t) in &twice_t {
        let edges = odd_refinements(lambda);
        if same_parity(lambda.len(), n) {
            let lhs = t * (n + 1 - lambda.len());
            let mut rhs = &scale * z(lambda) * (n + 1 - lambda.multiplicity(1));
            for edge in &edges {
                rhs += &edge.kappa * &twice_t[&edge.finer];
            }
            sweep.check(lhs, rhs, || format!("lambda={lambda}"));
        } else {
            let vanishing: BigUint = t + edges.iter().map(|e| &twice_t[&e.finer]).sum::<BigUint>();
            sweep.check(vanishing, 0u32, || format!("wrong-parity T at lambda={lambda}"));
        }
    }
    sweep.finish("recur_T", n, BTreeMap::new())
}

/// For every permutation `π ⊢ n` (natural order):
/// `exc(π⁻¹) = n - m_1(λ) - exc(π)`.
pub fn inverse_pairing(n: usize) -> Result<IdentityReport> {
    let exc = |p: &Permutation| p.images().iter().enumerate().filter(|(x, &y)| *x < y).count();
    let mut sweep = Sweep::default();
    for lambda in partitions_of(n) {
        let fixed = lambda.multiplicity(1);
        for pi in enumerate_by_type(&lambda) {
            let forward = exc(&pi);
            let backward = exc(&pi.inverse());
            sweep.check(BigInt::from(backward), BigInt::from(n - fixed - forward), || {
                format!("pi={pi}")
            });
        }
    }
    sweep.finish("inverse_pairing", n, BTreeMap::new())
}

/// Separation formula against exhaustive pair enumeration for `m ∈ 1..=m_max`
/// and every `k`.
pub fn separation(n: usize, m_max: usize) -> Result<IdentityReport> {
    let m_max = m_max.clamp(1, n);
    let pairs = separation_pairs_table(n, m_max)?;
    let stirling = separated_stirling_table(n + 1, m_max)?;
    let mut sweep = Sweep::default();
    for m in 1..=m_max {
        for k in 1..=n {
            let cm = stirling[m - 1].get(&k).cloned().unwrap_or_default();
            let rhs = separation_pairs_formula(n, m, k, &cm)?;
            sweep.check(pairs[m - 1][&k].clone(), rhs, || format!("m={m} k={k}"));
        }
    }
    let params = BTreeMap::from([("m_max".to_string(), m_max)]);
    sweep.finish("separation", n, params)
}

/// How the chosen cycles are ordered before their words are concatenated into
/// one cycle. Each word always starts at the cycle's minimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Concatenation {
    /// Longer cycles first, ties broken by smaller minimum.
    LengthThenMinimum,
    /// Smaller minimum first, lengths ignored.
    MinimumOnly,
}

/// The convention under which the two set constructions coincide.
pub const PINNED_CONCATENATION: Concatenation = Concatenation::MinimumOnly;

/// Merges the cycles of `perm` selected by `chosen` (indices into
/// `perm.cycles()`) into a single cycle.
pub fn merge_cycles(perm: &Permutation, chosen: &[usize], convention: Concatenation) -> Permutation {
    let cycles = perm.cycles();
    let mut picked: Vec<&Vec<usize>> = chosen.iter().map(|&c| &cycles[c]).collect();
    match convention {
        Concatenation::LengthThenMinimum => {
            picked.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])))
        }
        Concatenation::MinimumOnly => picked.sort_by_key(|c| c[0]),
    }
    let word: Vec<usize> = picked.into_iter().flatten().copied().collect();
    let mut images = perm.images().to_vec();
    for i in 0..word.len() {
        images[word[i]] = word[(i + 1) % word.len()];
    }
    Permutation::from_images_unchecked(images)
}

/// Index sets of odd size ≥ 3 drawn from `0..count`.
fn odd_subsets(count: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..(1u32 << count)).filter_map(move |mask| {
        let size = mask.count_ones() as usize;
        (size >= 3 && size % 2 == 1).then(|| (0..count).filter(|&c| mask >> c & 1 == 1).collect())
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyLemmaSets {
    pub lambda: Partition,
    pub mu: Partition,
    /// `|A_i|`, keyed by the length `i` of the cycle that receives `n+1`.
    pub a_sizes: BTreeMap<usize, usize>,
    /// `|B_i|`, keyed the same way.
    pub b_sizes: BTreeMap<usize, usize>,
    pub a_coefficient: BigUint,
    pub b_coefficient: BigUint,
    pub a_disjoint: bool,
    pub b_disjoint: bool,
    pub a_equals_b: bool,
}

impl KeyLemmaSets {
    pub fn a_total(&self) -> usize {
        self.a_sizes.values().sum()
    }

    pub fn b_total(&self) -> usize {
        self.b_sizes.values().sum()
    }

    /// Sizes match the arithmetic coefficients and the two sets coincide.
    pub fn consistent(&self) -> bool {
        self.a_disjoint
            && self.b_disjoint
            && self.a_equals_b
            && BigUint::from(self.a_total()) == self.a_coefficient
            && BigUint::from(self.b_total()) == self.b_coefficient
    }
}

/// Builds the two permutation sets behind the coefficient of `p_μ` in the key
/// lemma, with `μ` identified with its block permutation `(1..μ_1)(μ_1+1..)..`.
///
/// * `A`: merge an odd number ≥ 3 of cycles of `μ` into one, then splice `n+1`
///   into a cycle of length `i`.
/// * `B`: splice `n+1` into a cycle of `μ` of length `i`, then merge an odd
///   number ≥ 3 of cycles.
///
/// Only results of type `λ` are kept.
pub fn key_lemma_sets(lambda: &Partition, mu: &Partition) -> Result<KeyLemmaSets> {
    key_lemma_sets_with(lambda, mu, PINNED_CONCATENATION)
}

pub fn key_lemma_sets_with(
    lambda: &Partition,
    mu: &Partition,
    convention: Concatenation,
) -> Result<KeyLemmaSets> {
    let n = mu.n();
    if lambda.n() != n + 1 {
        return Err(Error::SizeMismatch {
            left: lambda.n(),
            right: n + 1,
        });
    }
    let gap = mu.len() as isize - lambda.len() as isize;
    if gap <= 0 || gap % 2 == 1 {
        return Err(Error::NoAdmissibleSplit {
            lambda: lambda.to_string(),
            mu: mu.to_string(),
        });
    }
    let base = Permutation::canonical_of_type(mu);

    let mut a_parts: BTreeMap<usize, HashSet<Permutation>> = BTreeMap::new();
    let mut a_pushed = 0usize;
    let targets: BTreeMap<Partition, usize> = down_shift_terms(lambda)
        .into_iter()
        .map(|t| (t.shifted, t.i))
        .collect();
    for chosen in odd_subsets(base.cycles().len()) {
        let merged = merge_cycles(&base, &chosen, convention);
        let merged_type = merged.cycle_type();
        let Some(&i) = targets.get(&merged_type) else {
            continue;
        };
        for cycle in merged.cycles().iter().filter(|c| c.len() == i) {
            for &x in cycle {
                let gamma = merged.insert_element(n, x)?;
                if gamma.cycle_type() != *lambda {
                    return Err(Error::Canonicalization(format!(
                        "A produced {gamma} of type {}",
                        gamma.cycle_type()
                    )));
                }
                a_parts.entry(i).or_default().insert(gamma);
                a_pushed += 1;
            }
        }
    }

    let mut b_parts: BTreeMap<usize, HashSet<Permutation>> = BTreeMap::new();
    let mut b_pushed = 0usize;
    for cycle in base.cycles() {
        let i = cycle.len();
        for &x in &cycle {
            let grown = base.insert_element(n, x)?;
            for chosen in odd_subsets(grown.cycles().len()) {
                let gamma = merge_cycles(&grown, &chosen, convention);
                if gamma.cycle_type() == *lambda {
                    b_parts.entry(i).or_default().insert(gamma);
                    b_pushed += 1;
                }
            }
        }
    }

    let union = |parts: &BTreeMap<usize, HashSet<Permutation>>| -> HashSet<Permutation> {
        parts.values().flatten().cloned().collect()
    };
    let a_all = union(&a_parts);
    let b_all = union(&b_parts);
    let sizes = |parts: &BTreeMap<usize, HashSet<Permutation>>| -> BTreeMap<usize, usize> {
        parts.iter().map(|(&i, s)| (i, s.len())).collect()
    };
    let a_sizes = sizes(&a_parts);
    let b_sizes = sizes(&b_parts);
    let (left, right) = key_lemma_coefficients(lambda);
    Ok(KeyLemmaSets {
        lambda: lambda.clone(),
        mu: mu.clone(),
        // each construction must also be injective: no duplicates within a part
        a_disjoint: a_all.len() == a_sizes.values().sum::<usize>() && a_all.len() == a_pushed,
        b_disjoint: b_all.len() == b_sizes.values().sum::<usize>() && b_all.len() == b_pushed,
        a_equals_b: a_all == b_all,
        a_sizes,
        b_sizes,
        a_coefficient: left.get(mu).cloned().unwrap_or_default(),
        b_coefficient: right.get(mu).cloned().unwrap_or_default(),
    })
}

/// Every admissible `(λ ⊢ n+1, μ ⊢ n)` pair, i.e. `ℓ(μ) - ℓ(λ)` positive and even.
pub fn key_lemma_pairs(n: usize) -> Vec<(Partition, Partition)> {
    let mus = partitions_of(n);
    let mut out = Vec::new();
    for lambda in partitions_of(n + 1) {
        for mu in &mus {
            if mu.len() > lambda.len() && same_parity(mu.len(), lambda.len()) {
                out.push((lambda.clone(), mu.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Partition {
        text.parse().unwrap()
    }

    #[test]
    fn tags_round_trip() {
        for tag in IdentityTag::ALL {
            assert_eq!(tag.as_str().parse::<IdentityTag>().unwrap(), tag);
        }
        assert!(matches!(
            "nosuch".parse::<IdentityTag>(),
            Err(Error::UnknownIdentity(_))
        ));
    }

    #[test]
    fn theorem_main_n3() {
        let report = run_identity(IdentityTag::TheoremMain, 3).unwrap();
        assert!(report.passed());
        assert_eq!(report.cases_checked, 2);
    }

    #[test]
    fn report_json_shape() {
        let report = run_identity(IdentityTag::TheoremMain, 4).unwrap();
        assert_eq!(
            report.to_json(),
            r#"{"identity":"theorem_main","n":4,"status":"pass","cases_checked":3,"failures":[]}"#
        );
    }

    #[test]
    fn failures_carry_witnesses() {
        let mut table = p_long_table_recurrence(3).unwrap();
        table.entries.insert(p("3"), BigUint::from(3u32));
        let report = theorem_main(&table).unwrap();
        assert_eq!(report.status, Status::Fail);
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].context, "lambda=(4)");
        assert_eq!(report.failures[0].lhs, BigInt::from(36));
        assert_eq!(report.failures[0].rhs, BigInt::from(24));
    }

    #[test]
    fn envelope_and_zero_are_rejected() {
        assert!(matches!(
            run_identity(IdentityTag::GenEq, 9),
            Err(Error::EnvelopeExceeded { .. })
        ));
        assert!(matches!(
            run_identity(IdentityTag::GenEq, 0),
            Err(Error::TooSmall { .. })
        ));
    }

    #[test]
    fn vacuous_sweep_is_an_error() {
        let sweep = Sweep::default();
        assert!(matches!(
            sweep.finish("x", 3, BTreeMap::new()),
            Err(Error::VacuousSweep { .. })
        ));
    }

    #[test]
    fn gen_eq_spot_case() {
        let profs = profiles(3).unwrap();
        let lambda = p("3");
        let eta = p("3");
        let lhs: i64 = profs[&lambda]
            .entries
            .iter()
            .filter(|((e, _), _)| *e == eta)
            .map(|((_, a), c)| (3 - 1 - *a as i64) * i64::try_from(c.clone()).unwrap())
            .sum();
        assert_eq!(lhs, 2);
        assert_eq!(profs[&p("1,1,1")].by_diagonal(&eta), BigUint::from(2u32));
        assert!(gen_eq(&profs).unwrap().passed());
    }

    #[test]
    fn key_lemma_sets_small_example() {
        let sets = key_lemma_sets(&p("4"), &p("1,1,1")).unwrap();
        assert_eq!(sets.a_total(), 3);
        assert_eq!(sets.b_total(), 3);
        assert!(sets.a_equals_b);
        assert!(sets.consistent());
        assert_eq!(sets.a_sizes, BTreeMap::from([(3, 3)]));
        assert_eq!(sets.b_sizes, BTreeMap::from([(1, 3)]));
    }

    /// Ordering merged cycles by length breaks `A = B` already here: after
    /// inserting 4 into the cycle of 2, `(2 4)` sorts ahead of `(1)`.
    #[test]
    fn length_first_concatenation_breaks_set_equality() {
        let sets = key_lemma_sets_with(&p("4"), &p("1,1,1"), Concatenation::LengthThenMinimum)
            .unwrap();
        assert_eq!(sets.a_total(), 3);
        assert_eq!(sets.b_total(), 3);
        assert!(!sets.a_equals_b);
    }

    #[test]
    fn key_lemma_sets_preconditions() {
        assert!(matches!(
            key_lemma_sets(&p("2,2"), &p("2,1")),
            Err(Error::NoAdmissibleSplit { .. })
        ));
        assert!(matches!(
            key_lemma_sets(&p("3,1"), &p("1,1,1")),
            Err(Error::NoAdmissibleSplit { .. })
        ));
        assert!(matches!(
            key_lemma_sets(&p("3"), &p("1,1,1")),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn merge_cycles_word_order() {
        let base = Permutation::canonical_of_type(&p("2,1,1"));
        // cycles (1 2)(3)(4): min-only gives (1 2 3 4), length-first too
        let merged = merge_cycles(&base, &[0, 1, 2], Concatenation::MinimumOnly);
        assert_eq!(merged.to_string(), "(1 2 3 4)");
        let base = Permutation::canonical_of_type(&p("1,1,1")).insert_element(3, 1).unwrap();
        // (1)(2 4)(3)
        let a = merge_cycles(&base, &[0, 1, 2], Concatenation::MinimumOnly);
        let b = merge_cycles(&base, &[0, 1, 2], Concatenation::LengthThenMinimum);
        assert_eq!(a.to_string(), "(1 2 4 3)");
        assert_eq!(b.to_string(), "(1 3 2 4)");
    }
}
