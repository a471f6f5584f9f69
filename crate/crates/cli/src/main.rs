use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cyclefactor::envelope;
use cyclefactor::identities::{self, IdentityTag, RunOptions};
use cyclefactor::oracle;
use cyclefactor::partition::{kappa, refinements_any_arity, z};
use cyclefactor::recurrence::p_long_table_recurrence;
use cyclefactor::{parse_partition, parse_permutation, Error, Partition};
use num_bigint::BigUint;
use serde_json::{json, Value};

fn after_help() -> String {
    format!(
        "Exit status: 0 all checks pass, 1 a check failed, 2 usage error.\n\n\
         Cost envelopes (largest n accepted without --force):\n{}",
        envelope::describe()
    )
}

#[derive(Parser)]
#[command(name = "cyclefactor", version, about = "Exact counts of long-cycle products by cycle type")]
#[command(after_help = after_help())]
struct Cli {
    /// Worker threads for the enumeration oracles (0 = all cores).
    #[arg(long, global = true, env = "CYCLEFACTOR_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the table of long-cycle products by cycle type.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = SourceArg::Recurrence)]
        source: SourceArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        force: bool,
    },
    /// Check identities for every n up to --n-max, one JSON report per line.
    Verify {
        /// Identity tag, or `all`.
        #[arg(long, default_value = "all", value_parser = parse_identity)]
        identity: IdentitySel,
        /// Largest n; defaults to each identity's envelope.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: Option<u64>,
        #[arg(long)]
        force: bool,
        /// Largest m for the separation identity.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        m_max: u64,
    },
    /// Query the brute-force oracles directly.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
        #[arg(long, global = true)]
        force: bool,
    },
    /// Partition operators.
    Partition {
        #[command(subcommand)]
        action: PartitionAction,
    },
}

#[derive(Subcommand)]
enum OracleAction {
    /// Vertical permutations of type lambda whose diagonal has type eta, for one fixed upper row.
    CountFixedS {
        #[arg(long)]
        eta: String,
        #[arg(long)]
        lambda: String,
    },
    /// The by-type table computed by enumeration.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Ways to write gamma as a product of two long cycles.
    Factorizations {
        /// Cycle notation or one-line form.
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Permutations of [n] with k cycles and 1..m in distinct cycles, by k.
    SeparatedStirling {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// Pairs of long cycles whose product separates 1..m, by number of cycles.
    SeparationPairs {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// Counts by diagonal type and exceedance number for one vertical type.
    ExceedanceProfile {
        #[arg(long)]
        lambda: String,
    },
    /// Explicit sets behind the key lemma for one admissible pair.
    KeyLemmaSets {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
}

#[derive(Subcommand)]
enum PartitionAction {
    /// Size of the conjugacy class of the given type.
    Z {
        #[arg(long)]
        lambda: String,
    },
    /// Replace one part j by a part j-1.
    Downshift {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        j: usize,
    },
    /// Ways to merge k labeled parts of mu into lambda.
    Kappa {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// All refinements of lambda splitting one part into k parts, with weights.
    Splits {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Oracle,
    Recurrence,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone)]
enum IdentitySel {
    All,
    One(IdentityTag),
}

fn parse_identity(text: &str) -> Result<IdentitySel, String> {
    if text == "all" {
        return Ok(IdentitySel::All);
    }
    text.parse().map(IdentitySel::One).map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InexactDivision { .. } | Error::OddIntermediate { .. } | Error::Canonicalization(_) => {
                Failure::Check(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn partition_arg(text: &str) -> Result<Partition, Failure> {
    Ok(parse_partition(text)?)
}

fn emit(value: &Value) {
    println!("{value}");
}


fn counts_json(n: usize, m: usize, counts: &BTreeMap<usize, BigUint>) -> Value {
    let by_k: serde_json::Map<String, Value> = counts
        .iter()
        .map(|(k, c)| (k.to_string(), Value::String(c.to_string())))
        .collect();
    json!({ "n": n, "m": m, "counts": by_k })
}

fn cmd_table(n: usize, source: SourceArg, format: Format, force: bool) -> Outcome {
    let table = match source {
        SourceArg::Oracle => {
            envelope::check(envelope::TABLE_ORACLE, n, force)?;
            oracle::p_long_table_oracle(n)
        }
        SourceArg::Recurrence => {
            envelope::check(envelope::TABLE_RECURRENCE, n, force)?;
            p_long_table_recurrence(n)?
        }
    };
    match format {
        Format::Json => println!("{}", table.to_json()),
        Format::Csv => print!("{}", table.to_csv()),
    }
    Ok(true)
}

fn cmd_verify(selection: IdentitySel, n_max: Option<usize>, force: bool, m_max: usize) -> Outcome {
    let tags = match selection {
        IdentitySel::All => IdentityTag::ALL.to_vec(),
        IdentitySel::One(tag) => vec![tag],
    };
    let opts = RunOptions { force, m_max };
    let mut all_pass = true;
    for tag in tags {
        let cap = tag.max_n();
        let top = match n_max {
            Some(n) if force => n,
            Some(n) => {
                if n > cap {
                    eprintln!("{tag}: capped at n={cap} (use --force to go further)");
                }
                n.min(cap)
            }
            None => cap,
        };
        for n in 1..=top {
            match identities::run_identity_with(tag, n, &opts) {
                Ok(report) => {
                    all_pass &= report.passed();
                    println!("{}", report.to_json());
                }
                Err(e) => match Failure::from(e) {
                    Failure::Check(why) => {
                        eprintln!("{tag} n={n}: {why}");
                        all_pass = false;
                    }
                    usage => return Err(usage),
                },
            }
        }
    }
    Ok(all_pass)
}

fn cmd_oracle(action: OracleAction, force: bool) -> Outcome {
    let value = match action {
        OracleAction::CountFixedS { eta, lambda } => {
            let eta = partition_arg(&eta)?;
            let lambda = partition_arg(&lambda)?;
            envelope::check(envelope::COUNT_FIXED_S, lambda.n(), force)?;
            let count = oracle::count_fixed_s(&eta, &lambda, lambda.n())?;
            Value::String(count.to_string())
        }
        OracleAction::Table { n } => {
            let n = n as usize;
            envelope::check(envelope::TABLE_ORACLE, n, force)?;
            println!("{}", oracle::p_long_table_oracle(n).to_json());
            return Ok(true);
        }
        OracleAction::Factorizations { gamma, n } => {
            let gamma = parse_permutation(&gamma, n)?;
            envelope::check(envelope::FACTORIZATIONS, gamma.n(), force)?;
            Value::String(oracle::factorization_count_oracle(&gamma).to_string())
        }
        OracleAction::SeparatedStirling { n, m } => {
            let (n, m) = (n as usize, m as usize);
            envelope::check(envelope::SEPARATED_STIRLING, n, force)?;
            let rows = oracle::separated_stirling_table(n, m)?;
            counts_json(n, m, &rows[m - 1])
        }
        OracleAction::SeparationPairs { n, m } => {
            let (n, m) = (n as usize, m as usize);
            envelope::check(envelope::SEPARATION_PAIRS, n, force)?;
            counts_json(n, m, &oracle::separation_pairs_oracle(n, m)?)
        }
        OracleAction::ExceedanceProfile { lambda } => {
            let lambda = partition_arg(&lambda)?;
            envelope::check(envelope::EXCEEDANCE_PROFILE, lambda.n(), force)?;
            println!("{}", oracle::exceedance_profile_oracle(&lambda, lambda.n())?.to_json());
            return Ok(true);
        }
        OracleAction::KeyLemmaSets { lambda, mu } => {
            let lambda = partition_arg(&lambda)?;
            let mu = partition_arg(&mu)?;
            envelope::check(envelope::KEY_LEMMA_SETS, lambda.n(), force)?;
            let sets = identities::key_lemma_sets(&lambda, &mu)?;
            let sizes = |m: &BTreeMap<usize, usize>| -> serde_json::Map<String, Value> {
                m.iter().map(|(i, s)| (i.to_string(), json!(s))).collect()
            };
            let consistent = sets.consistent();
            emit(&json!({
                "lambda": sets.lambda,
                "mu": sets.mu,
                "a_sizes": sizes(&sets.a_sizes),
                "b_sizes": sizes(&sets.b_sizes),
                "a_coefficient": sets.a_coefficient.to_string(),
                "b_coefficient": sets.b_coefficient.to_string(),
                "a_disjoint": sets.a_disjoint,
                "b_disjoint": sets.b_disjoint,
                "a_equals_b": sets.a_equals_b,
                "consistent": consistent,
            }));
            return Ok(consistent);
        }
    };
    emit(&value);
    Ok(true)
}

fn cmd_partition(action: PartitionAction) -> Outcome {
    let value = match action {
        PartitionAction::Z { lambda } => Value::String(z(&partition_arg(&lambda)?).to_string()),
        PartitionAction::Downshift { lambda, j } => json!(partition_arg(&lambda)?.down_shift(j)?),
        PartitionAction::Kappa { mu, lambda, k } => {
            let mu = partition_arg(&mu)?;
            let lambda = partition_arg(&lambda)?;
            if mu.n() != lambda.n() {
                return Err(Error::SizeMismatch {
                    left: mu.n(),
                    right: lambda.n(),
                }
                .into());
            }
            let arity_matches = k.map_or(true, |k| mu.len() + 1 == lambda.len() + k);
            let count = if arity_matches { kappa(&mu, &lambda) } else { BigUint::default() };
            Value::String(count.to_string())
        }
        PartitionAction::Splits { lambda, k } => {
            json!(refinements_any_arity(&partition_arg(&lambda)?, k)?)
        }
    };
    emit(&value);
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Table { n, source, format, force } => cmd_table(n as usize, source, format, force),
        Command::Verify { identity, n_max, force, m_max } => {
            cmd_verify(identity, n_max.map(|n| n as usize), force, m_max as usize)
        }
        Command::Oracle { action, force } => cmd_oracle(action, force),
        Command::Partition { action } => cmd_partition(action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(why)) => {
            eprintln!("error: {why}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(why)) => {
            eprintln!("error: {why}");
            ExitCode::from(2)
        }
    }
}
