//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//!
//! Every comparison is exact integer equality. Run with
//! `cargo test -p cyclefactor-core --test acceptance`; pass a substring
//! (e.g. `AC7`) to run a subset.

use std::process::ExitCode;
use std::time::Instant;

use cyclefactor::identities::{
    self, key_lemma_pairs, key_lemma_sets, run_identity, run_identity_with, IdentityTag,
    RunOptions,
};
use cyclefactor::oracle::{
    count_fixed_s, factorization_count_oracle, p_long_table_oracle, separation_pairs_table,
};
use cyclefactor::partition::{factorial, partitions_of, z};
use cyclefactor::recurrence::{closed_form_1a2b, compute_t, p_long_table_recurrence};
use cyclefactor::{Partition, Permutation};
use num_bigint::BigUint;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passes(tag: IdentityTag, n: usize) -> Result<(), String> {
    let report = run_identity(tag, n).map_err(|e| format!("{tag} n={n}: {e}"))?;
    ensure(report.passed(), || format!("{tag} n={n}: {}", report.to_json()))
}

fn p(text: &str) -> Partition {
    text.parse().unwrap()
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// AC1: recurrence and oracle tables agree entry for entry.
fn ac1() -> Outcome {
    for n in 1..=11 {
        let oracle = p_long_table_oracle(n);
        let recurrence = p_long_table_recurrence(n).map_err(|e| e.to_string())?;
        ensure(oracle.same_counts(&recurrence), || {
            format!("n={n}: tables differ")
        })?;
    }
    Ok("n=1..11 exact".into())
}

/// AC2: main theorem from recurrence tables (n <= 11) and oracle tables (n <= 8).
fn ac2() -> Outcome {
    for n in 1..=11 {
        passes(IdentityTag::TheoremMain, n)?;
    }
    for n in 1..=8 {
        let report = identities::theorem_main(&p_long_table_oracle(n)).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("oracle n={n}: {}", report.to_json()))?;
    }
    let t3 = p_long_table_recurrence(3).unwrap();
    for lambda in ["4", "2,1,1"] {
        let lambda = p(lambda);
        let lhs = compute_t(&lambda, &t3).unwrap();
        let rhs = factorial(2) * z(&lambda);
        ensure(lhs == big(12) && rhs == big(12), || {
            format!("n=3 {lambda}: {lhs} vs {rhs}")
        })?;
    }
    let t4 = p_long_table_recurrence(4).unwrap();
    let lhs = compute_t(&p("4,1"), &t4).unwrap();
    let rhs = factorial(3) * z(&p("4,1"));
    ensure(lhs == big(180) && rhs == big(180), || {
        format!("n=4 (4,1): {lhs} vs {rhs}")
    })?;
    Ok("recurrence n<=11, oracle n<=8, spots 12=12, 180=180".into())
}

/// AC3: length marginals against the long-cycle count by number of cycles.
fn ac3() -> Outcome {
    for n in 1..=11 {
        passes(IdentityTag::ZagierStanley, n)?;
        let report = identities::zagier_stanley(&p_long_table_recurrence(n).unwrap())
            .map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("recurrence n={n}: {}", report.to_json()))?;
    }
    let t4 = p_long_table_oracle(4);
    ensure(t4.length_marginal(2) == big(30), || "n=4 k=2 marginal".into())?;
    Ok("n<=11 on both tables, divisions exact, n=4 k=2: 30 = 6*5".into())
}

/// AC4: refinement identity with exceedances, every (lambda, eta), n <= 7.
fn ac4() -> Outcome {
    for n in 1..=7 {
        passes(IdentityTag::GenEq, n)?;
    }
    Ok("n<=7".into())
}

/// AC5: total exceedances.
fn ac5() -> Outcome {
    for n in 1..=8 {
        passes(IdentityTag::ExceedanceSum, n)?;
    }
    let prof = cyclefactor::oracle::exceedance_profile_oracle(&p("3"), 3).unwrap();
    let total: BigUint = prof.entries.iter().map(|((_, a), c)| c * *a).sum();
    ensure(total == big(6), || format!("n=3 (3): total {total}"))?;
    Ok("n<=8, n=3 (3): total 6".into())
}

/// AC6: base recurrence, down-shift identity, key lemma, recurrence for T.
fn ac6() -> Outcome {
    for n in 1..=30 {
        passes(IdentityTag::BaseRecur, n)?;
    }
    for n in 1..=11 {
        passes(IdentityTag::DownarrowEq, n)?;
        passes(IdentityTag::KeyLemma, n)?;
        passes(IdentityTag::RecurT, n)?;
    }
    Ok("base_recur n<=30; downarrow_eq, key_lemma, recur_T n<=11".into())
}

/// AC7: explicit set realization of the key lemma.
fn ac7() -> Outcome {
    let mut pairs = 0;
    for n in 1..=6 {
        for (lambda, mu) in key_lemma_pairs(n) {
            let sets = key_lemma_sets(&lambda, &mu).map_err(|e| e.to_string())?;
            ensure(sets.consistent(), || format!("{sets:?}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} admissible pairs, n<=6"))
}

/// AC8: closed form for 1^a 2^b against the recurrence table and direct
/// factorization counts.
fn ac8() -> Outcome {
    let mut cases = 0;
    for big_n in 1..=9 {
        let table = p_long_table_recurrence(big_n).unwrap();
        for lambda in partitions_of(big_n).into_iter().filter(Partition::is_one_two) {
            let closed = closed_form_1a2b(&lambda).map_err(|e| e.to_string())?;
            ensure(z(&lambda) * &closed == table.get(&lambda), || {
                format!("table at {lambda}")
            })?;
            let direct = factorization_count_oracle(&Permutation::canonical_of_type(&lambda));
            ensure(direct == closed, || format!("oracle at {lambda}: {direct} vs {closed}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} types, N<=9"))
}

/// AC9: separation formula, n <= 8, m <= 3.
fn ac9() -> Outcome {
    let opts = RunOptions {
        m_max: 3,
        ..RunOptions::default()
    };
    for n in 1..=8 {
        let report = run_identity_with(IdentityTag::Separation, n, &opts).map_err(|e| e.to_string())?;
        ensure(report.passed(), || report.to_json())?;
    }
    Ok("n<=8, m<=3, all k".into())
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

/// AC10: exhaustive property suites, n <= 7, deterministic across worker counts.
fn ac10() -> Outcome {
    for n in 1..=7 {
        let parts = partitions_of(n);
        let scale = factorial(n - 1);
        let mut fixed_s = std::collections::BTreeMap::new();
        for eta in &parts {
            for lambda in &parts {
                let c = count_fixed_s(eta, lambda, n).unwrap();
                fixed_s.insert((eta.clone(), lambda.clone()), c);
            }
        }
        for ((eta, lambda), c) in &fixed_s {
            if (eta.len() + lambda.len()) % 2 != (n + 1) % 2 {
                ensure(*c == BigUint::default(), || {
                    format!("parity n={n} eta={eta} lambda={lambda}")
                })?;
            }
            let swapped = &fixed_s[&(lambda.clone(), eta.clone())];
            ensure(&scale * c == &scale * swapped, || {
                format!("symmetry n={n} eta={eta} lambda={lambda}")
            })?;
        }
        for lambda in &parts {
            let row: BigUint = parts.iter().map(|eta| &fixed_s[&(eta.clone(), lambda.clone())]).sum();
            ensure(&scale * row == &scale * z(lambda), || {
                format!("row sum n={n} lambda={lambda}")
            })?;
        }
        passes(IdentityTag::InversePairing, n)?;

        let mass = &scale * &scale;
        let oracle = p_long_table_oracle(n);
        ensure(oracle.total() == mass, || format!("oracle mass n={n}"))?;
        ensure(p_long_table_recurrence(n).unwrap().total() == mass, || {
            format!("recurrence mass n={n}")
        })?;

        let single = with_threads(1, || (p_long_table_oracle(n), separation_pairs_table(n, n.min(3))));
        for threads in [2, 3, 8] {
            let multi = with_threads(threads, || {
                (p_long_table_oracle(n), separation_pairs_table(n, n.min(3)))
            });
            ensure(single.0 == multi.0, || format!("table differs at {threads} threads, n={n}"))?;
            ensure(single.1.as_ref().unwrap() == multi.1.as_ref().unwrap(), || {
                format!("separation tally differs at {threads} threads, n={n}")
            })?;
        }
    }
    Ok("parity, symmetry, row sums, inverse complement, mass; 1/2/3/8 workers".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Outcome); 10] = [
        ("AC1", "oracle-recurrence equivalence", ac1),
        ("AC2", "main theorem", ac2),
        ("AC3", "long-cycle count by number of cycles", ac3),
        ("AC4", "exceedance refinement identity", ac4),
        ("AC5", "total exceedances", ac5),
        ("AC6", "base recurrence, down-shift, key lemma, T recurrence", ac6),
        ("AC7", "key lemma set realization", ac7),
        ("AC8", "1^a 2^b closed form", ac8),
        ("AC9", "separation formula", ac9),
        ("AC10", "property suites", ac10),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (id, name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| id == f || name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {id} {name}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {name}: {why} ({secs:.2}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
