//! Command-line front end for the chain-basis order-series toolkit.
//!
//! Non-interactive by design: every invocation runs exactly one subcommand
//! and produces deterministic output.  Exit codes: 0 on success, 1 on domain
//! errors (syntax errors, infeasible searches, failed verifications), 2 on
//! usage errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use chaincalc::hstar::chain_to_hstar;
use chaincalc::identities::{all_checks, check_by_name, IdentityReport, IDENTITY_NAMES};
use chaincalc::inverse::{solve, solve_sp, DoppelgangerClass};
use chaincalc::oracle::IdealLattice;
use chaincalc::poset::PosetExpr;
use chaincalc::probability::{
    format_rational, nhg_expectation, nhg_normalization, nhg_pmf, NHGParams,
};
use chaincalc::series::ChainSeries;
use chaincalc::CalcError;

#[derive(Parser)]
#[command(
    name = "chaincalc",
    version,
    about = "Exact order-series calculator for series-parallel posets in the chain basis"
)]
struct Cli {
    /// Output format: `text` prints bare results, `structured` prints
    /// self-describing key=value lines.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for parallel search (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a poset expression to its strict order series.
    ///
    /// Grammar: `1` (point), `cN` (chain on N points), `mu(e1,e2,...)`
    /// (concatenation), `u(e1,e2,...)` (disjoint union), `d(e)` (handle).
    Eval {
        /// Poset expression, e.g. "d(mu(1,1))".
        expr: String,
    },

    /// Print the coefficients of the strict order polynomial at n = 0..=N.
    Expand {
        /// Poset expression.
        expr: String,
        /// Largest argument N to evaluate.
        #[arg(long, default_value_t = 10)]
        to: u32,
    },

    /// Print the h*-vector of a poset expression's order series.
    Hstar {
        /// Poset expression.
        expr: String,
    },

    /// Print structural invariants of a poset expression.
    Invariants {
        /// Poset expression.
        expr: String,
    },

    /// Search for posets whose strict order series equals the given series.
    ///
    /// By default searches handle words (built from points with `mu` and
    /// `d`); `--sp` switches to exhaustive series-parallel search bounded by
    /// `--max-points`.  Prints one line per isomorphism-closed class of
    /// solutions.
    Solve {
        /// Target series, e.g. "3*z[6] + 4*z[7]".
        series: String,
        /// Search all series-parallel posets up to the point cap.
        #[arg(long)]
        sp: bool,
        /// Point cap for --sp search.
        #[arg(long, default_value_t = 10)]
        max_points: u32,
    },

    /// Run exact binomial-identity sweeps.
    ///
    /// NAME is one of the built-in identity names or "all".  Each report is
    /// one line: `pass <name> cases=<n> sweep: <ranges>` or `fail <name>
    /// counterexample: <params> lhs=<a> rhs=<b> cases=<n>`.
    Verify {
        /// Identity name or "all".
        name: String,
        /// Shift every right-hand side by +1; a healthy checker must then
        /// report a counterexample (sensitivity self-test).
        #[arg(long)]
        perturb: bool,
    },

    /// Exact negative hypergeometric probabilities, printed as `num/den`.
    ///
    /// With --counts prints the pmf of that composition; with --group
    /// prints the closed-form expectation of that group's count; with
    /// neither prints the normalization sum and every expectation.
    Nhg {
        /// Comma-separated positive group sizes, e.g. "2,3,1".
        groups: String,
        /// Number of draws W.
        draws: u64,
        /// Composition of W to evaluate the pmf at, e.g. "1,2,1".
        #[arg(long)]
        counts: Option<String>,
        /// 1-based group index to print the expectation of.
        #[arg(long)]
        group: Option<usize>,
    },

    /// Count order-preserving maps directly on the lattice of order ideals.
    ///
    /// Prints strict and non-strict counts for n = 0..=N; an independent
    /// check of `eval`/`expand`, which work in the chain basis.
    Oracle {
        /// Poset expression.
        expr: String,
        /// Largest argument N to count at.
        #[arg(long, default_value_t = 10)]
        to: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // Best-effort hint; fails only if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let structured = cli.format == Format::Structured;
    match run(cli.command, structured) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, structured: bool) -> Result<ExitCode, CalcError> {
    match command {
        Command::Eval { expr } => {
            let e: PosetExpr = expr.parse()?;
            let series = e.eval_strict();
            if structured {
                println!("command=eval");
                println!("input={expr}");
                println!("expr={e}");
                println!("series={series}");
            } else {
                println!("{series}");
            }
        }
        Command::Expand { expr, to } => {
            let e: PosetExpr = expr.parse()?;
            let coeffs = join(&e.eval_strict().expand(to), ",");
            if structured {
                println!("command=expand");
                println!("input={expr}");
                println!("to={to}");
                println!("coefficients={coeffs}");
            } else {
                println!("{coeffs}");
            }
        }
        Command::Hstar { expr } => {
            let e: PosetExpr = expr.parse()?;
            let h = chain_to_hstar(&e.eval_strict(), e.n_points())?;
            if structured {
                println!("command=hstar");
                println!("input={expr}");
                println!("points={}", e.n_points());
                println!("hstar={h}");
            } else {
                println!("{h}");
            }
        }
        Command::Invariants { expr } => {
            let e: PosetExpr = expr.parse()?;
            let inv = e.invariants();
            let fields = [
                ("points", inv.n_points),
                ("max_chain", inv.max_chain),
                ("betti", inv.betti),
                ("components", inv.components),
                ("mu_count", inv.mu_count),
                ("dee_count", inv.dee_count),
                ("leaf_count", inv.leaf_count),
            ];
            if structured {
                println!("command=invariants");
                println!("input={expr}");
                for (key, value) in fields {
                    println!("{key}={value}");
                }
            } else {
                let line: Vec<String> =
                    fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!("{}", line.join(" "));
            }
        }
        Command::Solve { series, sp, max_points } => {
            let f: ChainSeries = series.parse()?;
            let classes = if sp { solve_sp(&f, max_points)? } else { solve(&f)? };
            if structured {
                println!("command=solve");
                println!("input={series}");
                println!("target={f}");
                println!("sp={sp}");
                if sp {
                    println!("max_points={max_points}");
                }
                println!("classes={}", classes.len());
                for (idx, class) in classes.iter().enumerate() {
                    println!("class{}={}", idx + 1, class_members(class));
                }
            } else {
                for class in &classes {
                    println!("{}", class_members(class));
                }
            }
        }
        Command::Verify { name, perturb } => {
            let reports: Vec<IdentityReport> = if name == "all" {
                all_checks(perturb)
            } else {
                match check_by_name(&name, perturb) {
                    Some(report) => vec![report],
                    None => {
                        eprintln!(
                            "error: unknown identity \"{name}\"; expected \"all\" or one of: {}",
                            IDENTITY_NAMES.join(", ")
                        );
                        return Ok(ExitCode::from(2));
                    }
                }
            };
            for report in &reports {
                println!("{report}");
            }
            if perturb {
                let insensitive: Vec<&str> =
                    reports.iter().filter(|r| r.pass).map(|r| r.name).collect();
                if !insensitive.is_empty() {
                    return Err(CalcError::Domain(format!(
                        "perturbed checker reported no counterexample: {}",
                        insensitive.join(", ")
                    )));
                }
            } else {
                let failed: Vec<&str> =
                    reports.iter().filter(|r| !r.pass).map(|r| r.name).collect();
                if !failed.is_empty() {
                    return Err(CalcError::Domain(format!(
                        "identity check failed: {}",
                        failed.join(", ")
                    )));
                }
            }
        }
        Command::Nhg { groups, draws, counts, group } => {
            let sizes = parse_u64_list(&groups, "group sizes")?;
            let params = NHGParams::new(sizes, draws)?;
            if structured {
                println!("command=nhg");
                println!("groups={groups}");
                println!("draws={draws}");
            }
            match (counts, group) {
                (Some(list), _) => {
                    let v = parse_u64_list(&list, "counts")?;
                    let p = nhg_pmf(&params, &v)?;
                    if structured {
                        println!("counts={list}");
                        println!("pmf={p}");
                    } else {
                        println!("{p}");
                    }
                }
                (None, Some(j)) => {
                    let e = nhg_expectation(&params, j)?;
                    if structured {
                        println!("group={j}");
                        println!("expectation={}", format_rational(&e));
                    } else {
                        println!("{}", format_rational(&e));
                    }
                }
                (None, None) => {
                    println!("normalization={}", nhg_normalization(&params));
                    for j in 1..=params.group_count() {
                        let e = nhg_expectation(&params, j)?;
                        println!("expectation{j}={}", format_rational(&e));
                    }
                }
            }
        }
        Command::Oracle { expr, to } => {
            let e: PosetExpr = expr.parse()?;
            let lattice = IdealLattice::new(&e.hasse())?;
            let strict = join(&lattice.counts_strict(to), ",");
            let nonstrict = join(&lattice.counts_nonstrict(to), ",");
            if structured {
                println!("command=oracle");
                println!("input={expr}");
                println!("to={to}");
            }
            println!("strict={strict}");
            println!("nonstrict={nonstrict}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn class_members(class: &DoppelgangerClass) -> String {
    let members: Vec<String> = class.members.iter().map(|m| m.to_string()).collect();
    members.join(" ")
}

fn join<T: std::fmt::Display>(items: &[T], sep: &str) -> String {
    let rendered: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    rendered.join(sep)
}

fn parse_u64_list(text: &str, what: &str) -> Result<Vec<u64>, CalcError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| CalcError::Domain(format!("invalid {what} entry \"{part}\"")))
        })
        .collect()
}
