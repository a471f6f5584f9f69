//! Brute-force ground truth by exhaustive enumeration over the symmetric group.
//!
//! Nothing here uses the recurrences. Pair counts that are invariant under
//! simultaneous conjugation are computed with one coordinate fixed to the
//! canonical long cycle and scaled by `(n-1)!`; the separation counts are not
//! conjugation invariant and enumerate every ordered pair.
//!
//! Parallel runs split the long-cycle stream by word prefix and merge per-chunk
//! `u64` tallies by addition, so results do not depend on the worker count.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::{factorial, partitions_of, Partition};
use crate::permutation::{
    cycle_count, enumerate_by_type, is_long_cycle, n_cycle_prefixes, write_cycle_images,
    AllPermutations, NCycles, Permutation,
};
use crate::table::{CountTable, ExceedanceProfile, Source};

/// Prefix depth used to split the long-cycle stream into parallel chunks.
const CHUNK_DEPTH: usize = 2;

/// Maps a cycle type, read straight off an image array, to its index in
/// [`partitions_of`].
struct TypeIndex {
    partitions: Vec<Partition>,
    by_multiplicity: HashMap<Vec<u8>, usize>,
}

impl TypeIndex {
    fn new(n: usize) -> Self {
        assert!(n < 256, "cycle-type index supports n < 256");
        let partitions = partitions_of(n);
        let by_multiplicity = partitions
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut key = vec![0u8; n + 1];
                for &part in p.parts() {
                    key[part] += 1;
                }
                (key, i)
            })
            .collect();
        TypeIndex {
            partitions,
            by_multiplicity,
        }
    }

    fn len(&self) -> usize {
        self.partitions.len()
    }

    /// `seen` and `key` are scratch buffers of length `n` and `n + 1`.
    fn classify(&self, images: &[usize], seen: &mut [bool], key: &mut [u8]) -> usize {
        seen.fill(false);
        key.fill(0);
        for start in 0..images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = images[x];
                len += 1;
            }
            key[len] += 1;
        }
        self.by_multiplicity[&key[..]]
    }

    fn into_table(self, n: usize, counts: &[u64], scale: &BigUint) -> CountTable {
        let entries = self
            .partitions
            .into_iter()
            .zip(counts)
            .map(|(p, &c)| (p, BigUint::from(c) * scale))
            .collect();
        CountTable {
            n,
            source: Source::Oracle,
            entries,
        }
    }
}

fn add_vecs(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn check_sizes(eta: &Partition, lambda: &Partition, n: usize) -> Result<()> {
    for p in [eta, lambda] {
        if p.n() != n {
            return Err(Error::SizeMismatch {
                left: p.n(),
                right: n,
            });
        }
    }
    Ok(())
}

/// The number of `π` of type `lambda` whose diagonal `s₀ ∘ π⁻¹` has type `eta`,
/// with `s₀` the canonical long cycle. Multiply by `(n-1)!` for `p^η_λ`.
pub fn count_fixed_s(eta: &Partition, lambda: &Partition, n: usize) -> Result<BigUint> {
    check_sizes(eta, lambda, n)?;
    if n == 0 {
        return Ok(BigUint::from(1u32));
    }
    let mut diag = vec![0; n];
    let mut count = 0u64;
    for pi in enumerate_by_type(lambda) {
        // s₀(π⁻¹(y)) = π⁻¹(y) + 1
        for (x, &y) in pi.images().iter().enumerate() {
            diag[y] = (x + 1) % n;
        }
        if Permutation::from_images_unchecked(diag.clone()).cycle_type() == *eta {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// `p^{(n)}_μ` for every `μ ⊢ n`: ordered pairs of long cycles by the type of
/// their product, computed as `(n-1)!` times the count of long cycles `v` with
/// `c ∘ v` of type `μ`, `c` canonical.
pub fn p_long_table_oracle(n: usize) -> CountTable {
    assert!(n >= 1, "p_long_table_oracle needs n >= 1");
    p_long_table_with_first_images(n, &Permutation::canonical_long_cycle(n))
}

/// Same as [`p_long_table_oracle`] but with an arbitrary long cycle `u` as the
/// fixed first factor.
pub fn p_long_table_oracle_with_first(u: &Permutation) -> Result<CountTable> {
    if !u.is_long_cycle() {
        return Err(Error::ParsePermutation {
            text: u.to_string(),
            reason: "fixed first factor must be a long cycle".into(),
        });
    }
    Ok(p_long_table_with_first_images(u.n(), u))
}

fn p_long_table_with_first_images(n: usize, u: &Permutation) -> CountTable {
    let index = TypeIndex::new(n);
    let u = u.images();
    let counts = n_cycle_prefixes(n, CHUNK_DEPTH)
        .into_par_iter()
        .map(|prefix| {
            let mut counts = vec![0u64; index.len()];
            let mut v = vec![0; n];
            let mut w = vec![0; n];
            let mut seen = vec![false; n];
            let mut key = vec![0u8; n + 1];
            let mut cycles = NCycles::with_prefix(n, &prefix);
            while let Some(word) = cycles.next_word() {
                write_cycle_images(word, &mut v);
                for x in 0..n {
                    w[x] = u[v[x]];
                }
                counts[index.classify(&w, &mut seen, &mut key)] += 1;
            }
            counts
        })
        .reduce(|| vec![0u64; index.len()], add_vecs);
    index.into_table(n, &counts, &factorial(n - 1))
}

/// `p^η_{λ,a}` for all `(η, a)`: plane permutations with vertical type `lambda`,
/// diagonal type `η` and `a` exceedances. Counted with the canonical upper row
/// and scaled by `(n-1)!`.
pub fn exceedance_profile_oracle(lambda: &Partition, n: usize) -> Result<ExceedanceProfile> {
    if lambda.n() != n {
        return Err(Error::SizeMismatch {
            left: lambda.n(),
            right: n,
        });
    }
    let mut tally: BTreeMap<(Partition, usize), u64> = BTreeMap::new();
    let mut diag = vec![0; n];
    for pi in enumerate_by_type(lambda) {
        let images = pi.images();
        let mut exceedances = 0;
        for (x, &y) in images.iter().enumerate() {
            diag[y] = (x + 1) % n.max(1);
            if x < y {
                exceedances += 1;
            }
        }
        let eta = Permutation::from_images_unchecked(diag.clone()).cycle_type();
        *tally.entry((eta, exceedances)).or_default() += 1;
    }
    let scale = factorial(n.saturating_sub(1));
    Ok(ExceedanceProfile {
        n,
        lambda: lambda.clone(),
        entries: tally
            .into_iter()
            .map(|(k, c)| (k, BigUint::from(c) * &scale))
            .collect(),
    })
}

/// `|{(u, v) : u, v long cycles on [N], u ∘ v = γ}|`.
pub fn factorization_count_oracle(gamma: &Permutation) -> BigUint {
    let n = gamma.n();
    if n == 0 {
        return BigUint::default();
    }
    let g = gamma.images();
    let count: u64 = n_cycle_prefixes(n, CHUNK_DEPTH)
        .into_par_iter()
        .map(|prefix| {
            let mut u_inv = vec![0; n];
            let mut v = vec![0; n];
            let mut count = 0u64;
            let mut cycles = NCycles::with_prefix(n, &prefix);
            while let Some(word) = cycles.next_word() {
                // the inverse of the cycle with word w is the cycle with w reversed
                for i in 0..n {
                    u_inv[word[(i + 1) % n]] = word[i];
                }
                for x in 0..n {
                    v[x] = u_inv[g[x]];
                }
                if is_long_cycle(&v) {
                    count += 1;
                }
            }
            count
        })
        .sum();
    BigUint::from(count)
}

/// Largest `t` such that `0, .., t-1` lie in pairwise distinct cycles.
fn separated_prefix(images: &[usize], cycle_id: &mut [usize]) -> usize {
    let n = images.len();
    cycle_id.fill(usize::MAX);
    let mut next = 0;
    for start in 0..n {
        if cycle_id[start] != usize::MAX {
            continue;
        }
        let mut x = start;
        while cycle_id[x] == usize::MAX {
            cycle_id[x] = next;
            x = images[x];
        }
        next += 1;
    }
    // cycles are numbered by first visit, so 0..t-1 are separated iff
    // cycle_id[i] == i for each i < t
    (0..n).take_while(|&i| cycle_id[i] == i).count()
}

fn check_separation(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::SeparationRange { n, m });
    }
    Ok(())
}

/// Per-`m` tallies indexed `[m][k]` for `m ∈ 1..=m_max`, `k ∈ 0..=n`.
type SeparationTally = Vec<Vec<u64>>;

fn tally_to_maps(tally: SeparationTally, n: usize, scale: &BigUint) -> Vec<BTreeMap<usize, BigUint>> {
    tally
        .into_iter()
        .skip(1)
        .map(|row| {
            (1..=n)
                .map(|k| (k, BigUint::from(row[k]) * scale))
                .collect()
        })
        .collect()
}

/// `C_m(n, k)` for every `m ∈ 1..=m_max` and `k ∈ 1..=n`, as `result[m-1][k]`:
/// permutations of `[n]` with `k` cycles in which `1, .., m` lie in distinct
/// cycles.
pub fn separated_stirling_table(n: usize, m_max: usize) -> Result<Vec<BTreeMap<usize, BigUint>>> {
    check_separation(n, m_max)?;
    let mut tally = vec![vec![0u64; n + 1]; m_max + 1];
    let mut cycle_id = vec![0; n];
    let mut perms = AllPermutations::new(n);
    while let Some(images) = perms.next_images() {
        let k = cycle_count(images);
        let sep = separated_prefix(images, &mut cycle_id).min(m_max);
        for row in &mut tally[1..=sep] {
            row[k] += 1;
        }
    }
    Ok(tally_to_maps(tally, n, &BigUint::from(1u32)))
}

/// `C_m(n, k)`.
pub fn separated_stirling_oracle(n: usize, m: usize, k: usize) -> Result<BigUint> {
    check_separation(n, m)?;
    let table = separated_stirling_table(n, m)?;
    Ok(table[m - 1].get(&k).cloned().unwrap_or_default())
}

/// For every `m ∈ 1..=m_max`, the map `k ↦` number of ordered pairs of long
/// cycles on `[n]` whose product has `k` cycles and separates `1, .., m`.
pub fn separation_pairs_table(n: usize, m_max: usize) -> Result<Vec<BTreeMap<usize, BigUint>>> {
    check_separation(n, m_max)?;
    let tally = n_cycle_prefixes(n, CHUNK_DEPTH)
        .into_par_iter()
        .map(|prefix| {
            let mut tally = vec![vec![0u64; n + 1]; m_max + 1];
            let mut u = vec![0; n];
            let mut v = vec![0; n];
            let mut w = vec![0; n];
            let mut cycle_id = vec![0; n];
            let mut first = NCycles::with_prefix(n, &prefix);
            while let Some(word) = first.next_word() {
                write_cycle_images(word, &mut u);
                let mut second = NCycles::new(n);
                while let Some(word) = second.next_word() {
                    write_cycle_images(word, &mut v);
                    for x in 0..n {
                        w[x] = u[v[x]];
                    }
                    let sep = separated_prefix(&w, &mut cycle_id).min(m_max);
                    if sep == 0 {
                        continue;
                    }
                    let k = cycle_count(&w);
                    for row in &mut tally[1..=sep] {
                        row[k] += 1;
                    }
                }
            }
            tally
        })
        .reduce(
            || vec![vec![0u64; n + 1]; m_max + 1],
            |a, b| a.into_iter().zip(b).map(|(x, y)| add_vecs(x, y)).collect(),
        );
    Ok(tally_to_maps(tally, n, &BigUint::from(1u32)))
}

pub fn separation_pairs_oracle(n: usize, m: usize) -> Result<BTreeMap<usize, BigUint>> {
    check_separation(n, m)?;
    let mut table = separation_pairs_table(n, m)?;
    Ok(table.swap_remove(m - 1))
}
