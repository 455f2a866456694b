//! Command-line front-end. Every subcommand reads one model file, runs
//! one analysis, and prints a deterministic result (aligned table by
//! default, the documented JSON schema with `--json`).
//!
//! Exit codes: 0 success, 2 analysis completed but could not be
//! verified (flooding failure), 1 everything else.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dtnv::benchgen::{gen_gcs, gen_random, gen_star, RandomLimits};
use dtnv::flooding::{certify_all, cutoff, CertifyError};
use dtnv::minreach::{solve_minreach, solve_minreach_traced, MinReachMap, SolveOptions};
use dtnv::model::{Gta, LocationId};
use dtnv::oracle::product_minreach;
use dtnv::parse::parse_gta;
use dtnv::render::{export_dot, write_gta};
use dtnv::report::{
    check_report, check_table, certificate_json, flood_report_unverified, flood_report_verified,
    flood_table, minreach_report, minreach_table, oracle_report, oracle_table, CutoffReport,
};
use dtnv::summary::{build_summary, check_reachability, Soundness, SummaryAutomaton};
use dtnv::zone_graph::PopRecord;

#[derive(Parser)]
#[command(name = "dtnv", version, about = "Analyses for networks of guarded timed automata")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimum time at which each location is reachable in some network
    Minreach {
        file: PathBuf,
        /// Emit the JSON result schema instead of a table
        #[arg(long)]
        json: bool,
        /// Include a minimal-time witness run per reachable location
        #[arg(long)]
        witness: bool,
        /// Dump every popped search node to stderr as JSON
        #[arg(long)]
        trace: bool,
    },
    /// Build the summary automaton and write it out
    Summary {
        file: PathBuf,
        /// Output path for the summary model
        #[arg(short, long)]
        output: PathBuf,
        /// Write Graphviz DOT instead of model text
        #[arg(long)]
        dot: bool,
    },
    /// Network size beyond which no new behaviour appears
    Cutoff {
        file: PathBuf,
        /// Number of interchangeable target processes to track
        #[arg(short)]
        m: u64,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force product of n copies (cross-validation baseline)
    Oracle {
        file: PathBuf,
        /// Number of copies in the explicit product
        #[arg(short)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Certify that every guard location can be kept occupied
    Floodcheck {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Query reachability of target locations in a bounded summary network
    Check {
        file: PathBuf,
        /// Target location (repeatable)
        #[arg(long = "target", required = true)]
        targets: Vec<String>,
        /// Number of summary copies
        #[arg(long, default_value_t = 1)]
        copies: usize,
        #[arg(long)]
        json: bool,
    },
    /// Generate benchmark models
    Gen {
        #[command(subcommand)]
        family: GenCmd,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Synchronised-rings family
    Gcs {
        k: usize,
        /// Put the tight invariant on the fast ring
        #[arg(long)]
        invariants: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Hub-and-branches family
    Star {
        k: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Seeded random model
    Random {
        seed: u64,
        /// Keep guard locations free of invariants
        #[arg(long)]
        persistent: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load(path: &Path) -> Result<Gta, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_gta(&text).map_err(|diags| {
        let mut msg = format!("{} is not a valid model", path.display());
        for d in diags {
            let _ = write!(msg, "\n  {d}");
        }
        msg
    })
}

fn save(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn solve(model: &Gta) -> Result<MinReachMap, String> {
    solve_minreach(model).map_err(|e| e.to_string())
}

fn summarize(model: &Gta) -> Result<(MinReachMap, SummaryAutomaton), String> {
    let map = solve(model)?;
    let sa = build_summary(model, &map);
    Ok((map, sa))
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize") + "\n"
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Minreach { file, json, witness, trace } => {
            let model = load(&file)?;
            let mut pops: Vec<PopRecord> = Vec::new();
            let map = solve_minreach_traced(
                &model,
                SolveOptions::default(),
                trace.then_some(&mut pops),
            )
            .map_err(|e| e.to_string())?;
            if trace {
                eprint!("{}", json_line(&pops));
            }
            if json {
                print!("{}", json_line(&minreach_report(&map, witness)));
            } else {
                print!("{}", minreach_table(&map, witness));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Summary { file, output, dot } => {
            let model = load(&file)?;
            let (map, mut sa) = summarize(&model)?;
            // Location invariants make the summary construction an
            // over-approximation unless every guard location can be
            // flooded; a successful certification upgrades the tag.
            if sa.soundness == Soundness::Unverified && certify_all(&model, &sa, &map).is_ok() {
                sa.soundness = Soundness::Sound;
            }
            let soundness = match sa.soundness {
                Soundness::Sound => "sound",
                Soundness::Unverified => "unverified",
            };
            let text = if dot {
                export_dot(&sa.base)
            } else {
                format!("# soundness: {soundness}\n{}", write_gta(&sa.base))
            };
            save(&output, &text)?;
            println!("{soundness}");
            Ok(match sa.soundness {
                Soundness::Sound => ExitCode::SUCCESS,
                Soundness::Unverified => ExitCode::from(2),
            })
        }
        Cmd::Cutoff { file, m, json } => {
            let model = load(&file)?;
            let map = solve(&model)?;
            let (method, certs) = if model.has_persistent_guards() {
                ("persistent_guards", None)
            } else {
                let (_, sa) = summarize(&model)?;
                match certify_all(&model, &sa, &map) {
                    Ok(certs) => ("flooding_certificates", Some(certs)),
                    Err(e) => return flooding_failure(&model, e, json),
                }
            };
            let bound = cutoff(&model, &map, certs.as_ref(), m).map_err(|e| e.to_string())?;
            if json {
                let certificates = certs.map(|certs| {
                    certs.values().map(|c| certificate_json(&model, c)).collect()
                });
                let report = CutoffReport {
                    model: model.name.clone(),
                    m,
                    cutoff: bound,
                    method,
                    certificates,
                };
                print!("{}", json_line(&report));
            } else {
                println!("{bound}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Oracle { file, n, json } => {
            let model = load(&file)?;
            let result = product_minreach(&model, n).map_err(|e| e.to_string())?;
            if json {
                print!("{}", json_line(&oracle_report(&model, &result)));
            } else {
                print!("{}", oracle_table(&model, &result));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Floodcheck { file, json } => {
            let model = load(&file)?;
            let (map, sa) = summarize(&model)?;
            match certify_all(&model, &sa, &map) {
                Ok(certs) => {
                    let ordered: Vec<_> = certs.values().collect();
                    let report = flood_report_verified(&model, &ordered);
                    if json {
                        print!("{}", json_line(&report));
                    } else {
                        print!("{}", flood_table(&report));
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => flooding_failure(&model, e, json),
            }
        }
        Cmd::Check { file, targets, copies, json } => {
            let model = load(&file)?;
            let (_, sa) = summarize(&model)?;
            let targets = targets
                .iter()
                .map(|name| {
                    model
                        .location_index(name)
                        .ok_or_else(|| format!("no location named `{name}`"))
                })
                .collect::<Result<Vec<LocationId>, String>>()?;
            let result = check_reachability(&sa, &targets, copies);
            if json {
                print!("{}", json_line(&check_report(&sa.base.name, &result)));
            } else {
                print!("{}", check_table(&sa.base.name, &result));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gen { family } => {
            let (model, output) = match family {
                GenCmd::Gcs { k, invariants, output } => (gen_gcs(k, invariants), output),
                GenCmd::Star { k, output } => (gen_star(k), output),
                GenCmd::Random { seed, persistent, output } => {
                    let limits = RandomLimits { persistent, ..RandomLimits::default() };
                    (gen_random(seed, &limits), output)
                }
            };
            save(&output, &write_gta(&model))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// A flooding analysis that finished but could not verify its goal exits
/// with code 2, never 0: unsound success must be impossible to miss.
fn flooding_failure(model: &Gta, err: CertifyError, json: bool) -> Result<ExitCode, String> {
    let failures = match err {
        CertifyError::Unverified { failures } => failures,
        CertifyError::MultiClockUnsupported { .. } => return Err(err.to_string()),
        other => vec![other.to_string()],
    };
    let report = flood_report_unverified(model, failures);
    if json {
        print!("{}", json_line(&report));
    } else {
        print!("{}", flood_table(&report));
    }
    Ok(ExitCode::from(2))
}
