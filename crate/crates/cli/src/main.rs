//! Command-line front door: per-element statistics, distribution
//! polynomials, series coefficients, and the identity verification suite.
//!
//! Exit codes: 0 on success (and all checks passing), 1 when a verification
//! run finds a failing identity, 2 for usage or validation errors.
//!
//! The `structured` format emits one JSON document per invocation and never
//! includes timing, so identical inputs produce byte-identical output
//! regardless of thread count or machine load. The `human` format includes
//! per-verdict timings.

use clap::{Parser, Subcommand, ValueEnum};
use mahonian::identities::Discrepancy;
use mahonian::polyring::carlitz_lhs;
use mahonian::signed_perm::flag_decompose;
use mahonian::statistics::ndes_multiset;
use mahonian::{
    distribution, full_stats, verify, BiPoly, DistributionSpec, ExecOptions, GroupKind, IdentityId,
    SignedPermutation, StatKind, Verdict, DEFAULT_RANK_CAP,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "mahonian",
    version,
    about = "Signed-permutation statistics, distribution polynomials, and identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Worker threads for enumeration (defaults to machine parallelism).
    /// Results never depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Largest rank enumeration may touch.
    #[arg(long, global = true, default_value_t = DEFAULT_RANK_CAP)]
    rank_cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Every statistic of one element, from its comma-separated window.
    Stats {
        /// Window text, e.g. -3,1,-6,2,-4,-5
        #[arg(allow_hyphen_values = true)]
        window: String,
    },
    /// Joint distribution polynomial of two statistics over a group.
    Dist {
        /// Rank of the group.
        #[arg(long)]
        n: usize,
        /// S for permutations, B for signed permutations.
        #[arg(long)]
        group: String,
        /// Statistic for the t exponent.
        #[arg(long)]
        t_stat: Option<String>,
        /// Statistic for the q exponent.
        #[arg(long)]
        q_stat: Option<String>,
    },
    /// Coefficients of sum over r of [r+1]_q^n t^r, truncated in t.
    Series {
        #[arg(long)]
        n: usize,
        /// Highest power of t to print.
        #[arg(long, default_value_t = 20)]
        trunc: usize,
    },
    /// Check one identity, or all of them, over a range of ranks.
    Verify {
        /// An identity id, or "all".
        #[arg(long)]
        identity: String,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Truncation order for the series-based identities.
        #[arg(long, default_value_t = 20)]
        trunc: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    let threads = match cli.threads {
        Some(0) => return Err("--threads must be at least 1".to_string()),
        Some(k) => k,
        None => ExecOptions::default().threads,
    };
    let opts = ExecOptions {
        rank_cap: cli.rank_cap,
        threads,
    };
    match cli.command {
        Command::Stats { window } => run_stats(&window, cli.format),
        Command::Dist {
            n,
            group,
            t_stat,
            q_stat,
        } => run_dist(
            n,
            &group,
            t_stat.as_deref(),
            q_stat.as_deref(),
            cli.format,
            &opts,
        ),
        Command::Series { n, trunc } => Ok(run_series(n, trunc, cli.format)),
        Command::Verify {
            identity,
            n_min,
            n_max,
            trunc,
        } => run_verify(&identity, n_min, n_max, trunc, cli.format, &opts),
    }
}

fn poly_terms_json(p: &BiPoly) -> Value {
    Value::Array(p.terms().map(|(dt, dq, c)| json!([dt, dq, c])).collect())
}

fn print_document(document: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(document).expect("report serializes")
    );
}

fn run_stats(window: &str, format: Format) -> Result<i32, String> {
    let pi: SignedPermutation = window.parse().map_err(|e| format!("{e}"))?;
    let record = full_stats(&pi);
    let ndes = ndes_multiset(&pi);
    let exponents = flag_decompose(&pi);
    match format {
        Format::Human => {
            println!("window {pi}");
            for kind in StatKind::ALL {
                println!("  {:<8} {}", kind.as_str(), record.get(kind));
            }
            println!("  NDes     {ndes}");
            println!(
                "  flag exponents {}",
                exponents
                    .exponents()
                    .iter()
                    .map(|k| k.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
        }
        Format::Structured => {
            let mut stats = serde_json::Map::new();
            for kind in StatKind::ALL {
                stats.insert(kind.as_str().to_string(), json!(record.get(kind)));
            }
            let document = json!({
                "command": "stats",
                "inputs": { "window": window },
                "result": {
                    "stats": stats,
                    "ndes_multiset": ndes.iter().map(|(v, m)| json!([v, m])).collect::<Vec<_>>(),
                    "flag_exponents": exponents.exponents(),
                },
            });
            print_document(&document);
        }
    }
    Ok(0)
}

fn parse_stat(name: Option<&str>) -> Result<Option<StatKind>, String> {
    name.map(str::parse).transpose()
}

fn run_dist(
    n: usize,
    group: &str,
    t_stat: Option<&str>,
    q_stat: Option<&str>,
    format: Format,
    opts: &ExecOptions,
) -> Result<i32, String> {
    let group: GroupKind = group.parse()?;
    let spec = DistributionSpec {
        group,
        n,
        t_stat: parse_stat(t_stat)?,
        q_stat: parse_stat(q_stat)?,
    };
    let poly = distribution(&spec, opts).map_err(|e| format!("{e}"))?;
    let mass = poly.evaluate(1, 1);
    match format {
        Format::Human => {
            println!(
                "group {}, n {}, t {}, q {}",
                group.as_str(),
                n,
                t_stat.unwrap_or("-"),
                q_stat.unwrap_or("-"),
            );
            println!("polynomial {poly}");
            println!("mass at q = t = 1: {mass}");
        }
        Format::Structured => {
            let document = json!({
                "command": "dist",
                "inputs": {
                    "group": group.as_str(),
                    "n": n,
                    "t_stat": t_stat,
                    "q_stat": q_stat,
                },
                "result": {
                    "polynomial": poly.to_string(),
                    "terms": poly_terms_json(&poly),
                    "mass": mass,
                },
            });
            print_document(&document);
        }
    }
    Ok(0)
}

fn run_series(n: usize, trunc: usize, format: Format) -> i32 {
    let series = carlitz_lhs(n, trunc);
    match format {
        Format::Human => {
            println!("sum over r of [r+1]_q^{n} t^r, truncated at t^{trunc}");
            for (r, row) in series.coefficients().iter().enumerate() {
                println!("t^{r}: {row}");
            }
        }
        Format::Structured => {
            let rows: Vec<Value> = series
                .coefficients()
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    json!({
                        "power": r,
                        "polynomial": row.to_string(),
                        "terms": poly_terms_json(row),
                    })
                })
                .collect();
            let document = json!({
                "command": "series",
                "inputs": { "n": n, "trunc": trunc },
                "result": { "coefficients": rows },
            });
            print_document(&document);
        }
    }
    0
}

fn discrepancy_json(d: &Discrepancy) -> Value {
    match d {
        Discrepancy::Coefficient {
            deg_t,
            deg_q,
            lhs,
            rhs,
        } => json!({
            "kind": "coefficient",
            "deg_t": deg_t,
            "deg_q": deg_q,
            "lhs": lhs,
            "rhs": rhs,
        }),
        Discrepancy::Element { window, lhs, rhs } => json!({
            "kind": "element",
            "window": window,
            "lhs": lhs,
            "rhs": rhs,
        }),
    }
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "identity": v.identity.as_str(),
        "n": v.n,
        "order": v.order,
        "pass": v.pass,
        "first_discrepancy": v.first_discrepancy.as_ref().map(discrepancy_json),
    })
}

fn run_verify(
    identity: &str,
    n_min: usize,
    n_max: usize,
    trunc: usize,
    format: Format,
    opts: &ExecOptions,
) -> Result<i32, String> {
    if n_min == 0 {
        return Err("--n-min must be at least 1".to_string());
    }
    if n_min > n_max {
        return Err(format!("--n-min {n_min} exceeds --n-max {n_max}"));
    }
    let ids: Vec<IdentityId> = if identity == "all" {
        IdentityId::ALL.to_vec()
    } else {
        vec![identity.parse()?]
    };
    let mut verdicts = Vec::new();
    for &id in &ids {
        for n in n_min..=n_max {
            verdicts.push(verify(id, n, trunc, opts).map_err(|e| format!("{e}"))?);
        }
    }
    let all_pass = verdicts.iter().all(|v| v.pass);
    match format {
        Format::Human => {
            for v in &verdicts {
                let order = v.order.map_or(String::new(), |r| format!(" R={r}"));
                let outcome = if v.pass {
                    "pass".to_string()
                } else {
                    match &v.first_discrepancy {
                        Some(d) => format!("FAIL at {d}"),
                        None => "FAIL".to_string(),
                    }
                };
                println!(
                    "{} n={}{}: {} ({:.1?})",
                    v.identity.as_str(),
                    v.n,
                    order,
                    outcome,
                    v.elapsed
                );
            }
            let passed = verdicts.iter().filter(|v| v.pass).count();
            println!("{passed}/{} verdicts pass", verdicts.len());
        }
        Format::Structured => {
            let document = json!({
                "command": "verify",
                "inputs": {
                    "identity": identity,
                    "n_min": n_min,
                    "n_max": n_max,
                    "trunc": trunc,
                },
                "result": {
                    "verdicts": verdicts.iter().map(verdict_json).collect::<Vec<_>>(),
                    "all_pass": all_pass,
                },
            });
            print_document(&document);
        }
    }
    Ok(if all_pass { 0 } else { 1 })
}
