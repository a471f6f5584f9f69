//! Closed forms and recurrences for long-cycle products.
//!
//! Every division here is checked for exactness. A remainder means either a
//! bug or a false identity, and is reported as [`Error::InexactDivision`]
//! rather than rounded away. Coefficients such as `(n+1)/2` are handled by
//! computing twice the quantity and asserting evenness.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{factorial, odd_refinements, partitions_of, z, Partition};
use crate::table::{CountTable, Source};

/// Grow-only triangle of unsigned Stirling numbers of the first kind.
///
/// Reads take a shared lock; growth takes the write lock and appends rows.
#[derive(Default)]
pub struct StirlingCache {
    rows: RwLock<Vec<Vec<BigUint>>>,
}

impl StirlingCache {
    pub fn new() -> Self {
        StirlingCache {
            rows: RwLock::new(vec![vec![BigUint::one()]]),
        }
    }

    /// `C(n, k)`: permutations of `[n]` with exactly `k` cycles.
    pub fn get(&self, n: usize, k: usize) -> Result<BigUint> {
        if k > n {
            return Err(Error::StirlingRange { n, k });
        }
        {
            let rows = self.rows.read().expect("stirling cache poisoned");
            if let Some(row) = rows.get(n) {
                return Ok(row[k].clone());
            }
        }
        let mut rows = self.rows.write().expect("stirling cache poisoned");
        if rows.is_empty() {
            rows.push(vec![BigUint::one()]);
        }
        while rows.len() <= n {
            let m = rows.len();
            let prev = &rows[m - 1];
            let mut row = vec![BigUint::zero(); m + 1];
            for j in 1..=m {
                let carry = if j < m { prev[j].clone() * (m - 1) } else { BigUint::zero() };
                row[j] = prev[j - 1].clone() + carry;
            }
            rows.push(row);
        }
        Ok(rows[n][k].clone())
    }
}

fn global_stirling() -> &'static StirlingCache {
    static CACHE: OnceLock<StirlingCache> = OnceLock::new();
    CACHE.get_or_init(StirlingCache::new)
}

/// `C(n, k)`, memoized in a process-wide cache.
pub fn stirling_first_unsigned(n: usize, k: usize) -> Result<BigUint> {
    global_stirling().get(n, k)
}

pub(crate) fn exact_div(num: &BigUint, den: &BigUint, context: impl FnOnce() -> String) -> Result<BigUint> {
    if den.is_zero() {
        return Err(Error::InexactDivision {
            context: format!("{} (division by zero)", context()),
        });
    }
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::InexactDivision { context: context() });
    }
    Ok(q)
}

pub(crate) fn exact_half(value: &BigUint, context: impl FnOnce() -> String) -> Result<BigUint> {
    if value.is_odd() {
        return Err(Error::OddIntermediate { context: context() });
    }
    Ok(value >> 1u32)
}

/// Number of long cycles `v` on `[n]` such that `(1 2 .. n) v` has `k` cycles:
/// `2 C(n+1, k) / (n (n+1))` when `k ≡ n (mod 2)`, and 0 otherwise.
pub fn zagier_stanley_count(n: usize, k: usize) -> Result<BigUint> {
    if n == 0 || k > n {
        return Err(Error::StirlingRange { n, k });
    }
    if (n - k) % 2 == 1 {
        return Ok(BigUint::zero());
    }
    let num = stirling_first_unsigned(n + 1, k)? * 2u32;
    exact_div(&num, &BigUint::from(n * (n + 1)), || {
        format!("2*C({}, {k}) / ({n}*{})", n + 1, n + 1)
    })
}

/// Factorizations of one fixed permutation of type `lambda = 1^a 2^b ⊢ N` into
/// two `N`-cycles: `(N-1)! / (N+1-ℓ(λ))` when `N ≡ ℓ(λ) (mod 2)`, else 0.
pub fn closed_form_1a2b(lambda: &Partition) -> Result<BigUint> {
    if !lambda.is_one_two() {
        return Err(Error::NotOneTwoType(lambda.to_string()));
    }
    let big_n = lambda.n();
    if big_n == 0 {
        return Err(Error::TooSmall {
            what: "closed_form_1a2b".into(),
            n: 0,
            min: 1,
        });
    }
    if (big_n - lambda.len()) % 2 == 1 {
        return Ok(BigUint::zero());
    }
    exact_div(
        &factorial(big_n - 1),
        &BigUint::from(big_n + 1 - lambda.len()),
        || format!("closed form for {lambda}"),
    )
}

/// `p^{(n)}_λ` for every `λ ⊢ n`, from the refinement recurrence
///
/// `(n+1-ℓ(λ)) p_λ = Σ_{i>0} Σ_{μ ⊳_{2i+1} λ} κ_{μ,λ} p_μ + (n-1)! z_λ`.
///
/// Partitions with `ℓ(λ) ≢ n (mod 2)` are zero and never fed to the recurrence.
/// The others are visited by decreasing length, so every `p_μ` on the right is
/// already known. For `λ = 1^a 2^b` the sum is empty.
pub fn p_long_table_recurrence(n: usize) -> Result<CountTable> {
    if n == 0 {
        return Err(Error::TooSmall {
            what: "p_long_table_recurrence".into(),
            n,
            min: 1,
        });
    }
    let scale = factorial(n - 1);
    let mut table = CountTable::zeroed(n, Source::Recurrence);
    // partitions_of yields decreasing length, so refinements come first
    for lambda in partitions_of(n) {
        if (n - lambda.len()) % 2 == 1 {
            continue;
        }
        let mut rhs = &scale * z(&lambda);
        for edge in odd_refinements(&lambda) {
            rhs += &edge.kappa * table.get(&edge.finer);
        }
        let value = exact_div(&rhs, &BigUint::from(n + 1 - lambda.len()), || {
            format!("recurrence at {lambda} for n={n}")
        })?;
        table.entries.insert(lambda, value);
    }
    Ok(table)
}

/// One summand of the down-shift sums: `μ = λ↓(i+1)` with weight `i·m_i(μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DownShiftTerm {
    pub i: usize,
    pub shifted: Partition,
    pub weight: usize,
}

/// All `λ↓(i+1)` for `i > 0` with `m_{i+1}(λ) > 0`.
pub fn down_shift_terms(lambda: &Partition) -> Vec<DownShiftTerm> {
    lambda
        .multiplicities()
        .into_iter()
        .filter(|&(part, _)| part >= 2)
        .map(|(part, _)| {
            let i = part - 1;
            let shifted = lambda.down_shift(part).expect("part present");
            let weight = i * shifted.multiplicity(i);
            DownShiftTerm { i, shifted, weight }
        })
        .collect()
}

/// `Σ_{i>0} i·m_i(λ↓(i+1))·p_{λ↓(i+1)}`, i.e. `2 T_λ / (n+1)`.
pub fn down_shift_sum(lambda: &Partition, table: &CountTable) -> BigUint {
    down_shift_terms(lambda)
        .iter()
        .map(|t| table.get(&t.shifted) * t.weight)
        .sum()
}

fn check_table_for(lambda: &Partition, table: &CountTable) -> Result<()> {
    if lambda.n() != table.n + 1 {
        return Err(Error::SizeMismatch {
            left: lambda.n(),
            right: table.n + 1,
        });
    }
    Ok(())
}

/// `2 T_λ = (n+1) Σ_{i>0} i·m_i(λ↓(i+1))·p^{(n)}_{λ↓(i+1)}` for `λ ⊢ n+1`.
pub fn compute_twice_t(lambda: &Partition, table: &CountTable) -> Result<BigUint> {
    check_table_for(lambda, table)?;
    Ok(down_shift_sum(lambda, table) * (table.n + 1))
}

/// `T_λ = Σ_{i>0} (n+1)/2 · i·m_i(λ↓(i+1))·p^{(n)}_{λ↓(i+1)}` for `λ ⊢ n+1`.
pub fn compute_t(lambda: &Partition, table: &CountTable) -> Result<BigUint> {
    let twice = compute_twice_t(lambda, table)?;
    exact_half(&twice, || format!("2*T at {lambda} for n={}", table.n))
}

/// Pairs of `n`-cycles whose product has `k` cycles and separates `[m]`:
/// `2 (n-1)! C_m(n+1, k) / ((n+m)(n+1-m))`, with `cm = C_m(n+1, k)`.
/// Zero when `k ≢ n (mod 2)`.
pub fn separation_pairs_formula(n: usize, m: usize, k: usize, cm: &BigUint) -> Result<BigUint> {
    if m == 0 || m > n {
        return Err(Error::SeparationRange { n, m });
    }
    if k > n || (n - k) % 2 == 1 {
        return Ok(BigUint::zero());
    }
    let num = factorial(n - 1) * 2u32 * cm;
    exact_div(&num, &BigUint::from((n + m) * (n + 1 - m)), || {
        format!("separation formula n={n} m={m} k={k}")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Partition {
        text.parse().unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn stirling_values() {
        for n in 0..10 {
            assert_eq!(stirling_first_unsigned(n, n).unwrap(), big(1));
        }
        assert_eq!(stirling_first_unsigned(4, 2).unwrap(), big(11));
        assert_eq!(stirling_first_unsigned(5, 2).unwrap(), big(50));
        assert_eq!(stirling_first_unsigned(3, 0).unwrap(), big(0));
        assert!(matches!(
            stirling_first_unsigned(3, 4),
            Err(Error::StirlingRange { n: 3, k: 4 })
        ));
    }

    #[test]
    fn fresh_cache_grows_out_of_order() {
        let cache = StirlingCache::new();
        assert_eq!(cache.get(6, 3).unwrap(), big(225));
        assert_eq!(cache.get(2, 1).unwrap(), big(1));
    }

    #[test]
    fn zagier_stanley_examples() {
        assert_eq!(zagier_stanley_count(3, 3).unwrap(), big(1));
        assert_eq!(zagier_stanley_count(3, 1).unwrap(), big(1));
        assert_eq!(zagier_stanley_count(3, 2).unwrap(), big(0));
        assert_eq!(zagier_stanley_count(4, 2).unwrap(), big(5));
        assert_eq!(zagier_stanley_count(4, 4).unwrap(), big(1));
    }

    #[test]
    fn recurrence_small_tables() {
        let t = p_long_table_recurrence(3).unwrap();
        assert_eq!(t.get(&p("1,1,1")), big(2));
        assert_eq!(t.get(&p("3")), big(2));
        assert_eq!(t.get(&p("2,1")), big(0));

        let t = p_long_table_recurrence(4).unwrap();
        assert_eq!(t.get(&p("1,1,1,1")), big(6));
        assert_eq!(t.get(&p("2,2")), big(6));
        assert_eq!(t.get(&p("3,1")), big(24));
        assert_eq!(t.source, Source::Recurrence);
        assert!(p_long_table_recurrence(0).is_err());
    }

    /// Without the parity guard the recurrence produces nonzero values where
    /// the true count is zero.
    #[test]
    fn parity_guard_is_load_bearing() {
        let lambda = p("2,1");
        let unguarded = factorial(2) * z(&lambda);
        assert!(unguarded > BigUint::zero());
        assert_eq!(p_long_table_recurrence(3).unwrap().get(&lambda), big(0));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_1a2b(&p("1,1,1")).unwrap(), big(2));
        assert_eq!(closed_form_1a2b(&p("2,2")).unwrap(), big(2));
        assert_eq!(closed_form_1a2b(&p("2,1")).unwrap(), big(0));
        assert!(matches!(
            closed_form_1a2b(&p("3,1")),
            Err(Error::NotOneTwoType(_))
        ));
    }

    #[test]
    fn t_examples() {
        let t3 = p_long_table_recurrence(3).unwrap();
        assert_eq!(compute_t(&p("4"), &t3).unwrap(), big(12));
        assert_eq!(compute_t(&p("2,1,1"), &t3).unwrap(), big(12));
        let t4 = p_long_table_recurrence(4).unwrap();
        assert_eq!(compute_t(&p("4,1"), &t4).unwrap(), big(180));
        assert!(compute_t(&p("4"), &t4).is_err());
    }

    #[test]
    fn down_shift_term_weights() {
        let terms = down_shift_terms(&p("4,2,1"));
        let summary: Vec<_> = terms.iter().map(|t| (t.i, t.weight)).collect();
        // 4 -> 3: m_3(3,2,1) = 1; 2 -> 1: m_1(4,1,1) = 2
        assert_eq!(summary, vec![(3, 3), (1, 2)]);
    }

    #[test]
    fn separation_formula_reduces_to_zagier_stanley() {
        for n in 1..=8 {
            for k in 1..=n {
                let c = stirling_first_unsigned(n + 1, k).unwrap();
                let lhs = separation_pairs_formula(n, 1, k, &c).unwrap();
                let rhs = factorial(n - 1) * zagier_stanley_count(n, k).unwrap();
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn separation_formula_rejects_inexact() {
        assert!(matches!(
            separation_pairs_formula(3, 3, 3, &big(1)),
            Err(Error::InexactDivision { .. })
        ));
        assert!(separation_pairs_formula(3, 4, 3, &big(3)).is_err());
    }

    #[test]
    fn exact_division_guards() {
        assert!(exact_div(&big(7), &big(2), || "t".into()).is_err());
        assert!(exact_div(&big(7), &big(0), || "t".into()).is_err());
        assert!(exact_half(&big(7), || "t".into()).is_err());
        assert_eq!(exact_half(&big(8), || "t".into()).unwrap(), big(4));
    }
}
