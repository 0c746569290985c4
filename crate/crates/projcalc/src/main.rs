//! Command-line driver.
//!
//! Exit codes: 0 = all checks passed, 1 = a verified statement hard
//! failed, 2 = no failures but at least one inconclusive verdict,
//! 3 = operational error (bad arguments, unreadable files, invalid
//! config). The verification outcomes own 0/1/2 so scripts can branch on
//! them without parsing output.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::exit;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use projcalc::campaign::{run_campaign, CampaignConfig};
use projcalc::gen;
use projcalc::io::{
    read_matrix_file, read_pair_file, write_pair_file, BackendKind, LoadedMatrix, MatrixJson,
    PairJson,
};
use projcalc::verify::PairHandle;
use projcalc_core::float::ToleranceConfig;
use projcalc_core::idempotent::{check_equality_equivalence, orth_decomposition, EquivalenceClause};
use projcalc_core::report::{StatementId, Verdict, SCHEMA};
use projcalc_core::ring::StarRing;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "projcalc", version, about = "Projection and idempotent calculus verifier")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a seeded random projection pair and write it as a pair file.
    Gen {
        #[arg(long, value_enum)]
        backend: BackendKind,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        rank_p: usize,
        #[arg(long)]
        rank_q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Moore-Penrose inverse of a matrix file, printed as JSON.
    Mp {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Override the relative equality tolerance (float backend).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Verify one statement against a pair file.
    Verify {
        /// Statement id, e.g. L2.2 or T3.11.2.
        #[arg(long)]
        statement: String,
        #[arg(long = "in", value_name = "PAIRFILE")]
        input: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run a campaign from a config file, streaming reports to a file.
    Campaign {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        #[arg(long, value_name = "FILE")]
        report: PathBuf,
    },
    /// Join, meet, or orthogonal-decomposition projection of a pair.
    Subspace {
        #[arg(long, value_enum)]
        op: SubspaceOp,
        #[arg(long = "in", value_name = "PAIRFILE")]
        input: PathBuf,
    },
    /// Sample pairs and tally how the three formula equalities track their
    /// subspace conditions; documents that no divergence shows up here.
    Probe {
        #[arg(long, value_enum, default_value_t = BackendKind::Float)]
        backend: BackendKind,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SubspaceOp {
    Join,
    Meet,
    Decomp,
}

/// Resolve the tolerance for a command: the --tol flag wins, then the
/// PROJCALC_TOL environment variable, then the default. Both override
/// only the relative equality tolerance.
fn tolerance(tol_flag: Option<f64>) -> Result<ToleranceConfig> {
    let mut t = ToleranceConfig::default();
    if let Some(v) = tol_flag {
        t.equality_rel_tol = v;
    } else if let Ok(s) = std::env::var("PROJCALC_TOL") {
        let v: f64 = s
            .parse()
            .with_context(|| format!("PROJCALC_TOL={s:?} is not a number"))?;
        t.equality_rel_tol = v;
    }
    t.validate()?;
    Ok(t)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                0
            } else {
                3
            };
            let _ = e.print();
            exit(code);
        }
    };
    match run(cli) {
        Ok(code) => exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            exit(3);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Gen { backend, dim, rank_p, rank_q, seed, out } => {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let pair = match backend {
                BackendKind::Exact => {
                    let p = gen::random_exact_projection(dim, rank_p, &mut rng)?;
                    let q = gen::random_exact_projection(dim, rank_q, &mut rng)?;
                    PairJson { p: MatrixJson::from_exact(&p), q: MatrixJson::from_exact(&q) }
                }
                BackendKind::Float => {
                    let tol = ToleranceConfig::default();
                    let p = gen::random_float_projection(dim, rank_p, &mut rng, tol)?;
                    let q = gen::random_float_projection(dim, rank_q, &mut rng, tol)?;
                    PairJson { p: MatrixJson::from_float(&p), q: MatrixJson::from_float(&q) }
                }
            };
            write_pair_file(&out, &pair)?;
            Ok(0)
        }
        Cmd::Mp { input, tol } => {
            let tol = tolerance(tol)?;
            let matrix = read_matrix_file(&input)?;
            let out = match matrix.load(tol)? {
                LoadedMatrix::Exact(m) => MatrixJson::from_exact(&m.mp()?),
                LoadedMatrix::Float(m) => MatrixJson::from_float(&m.mp()?),
            };
            println!("{}", serde_json::to_string(&out)?);
            Ok(0)
        }
        Cmd::Verify { statement, input, tol } => {
            let id: StatementId = statement.parse().map_err(|e: String| anyhow!(e))?;
            let tol = tolerance(tol)?;
            let pair = read_pair_file(&input)?;
            let handle = PairHandle::load(&pair, tol)?;
            let report = handle.verify(id);
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(match report.verdict {
                Verdict::Pass => 0,
                Verdict::Fail => 1,
                Verdict::Inconclusive => 2,
            })
        }
        Cmd::Campaign { config, report } => {
            let text = std::fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let config: CampaignConfig = serde_json::from_str(&text).context("parsing config")?;
            let file = File::create(&report)
                .with_context(|| format!("creating {}", report.display()))?;
            let mut out = BufWriter::new(file);
            let summary = run_campaign(&config, &mut out)?;
            out.flush()?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
            Ok(summary.exit_code())
        }
        Cmd::Subspace { op, input } => {
            let pair = read_pair_file(&input)?;
            let handle = PairHandle::load(&pair, ToleranceConfig::default())?;
            let out = match &handle {
                PairHandle::Exact(pair) => MatrixJson::from_exact(&match op {
                    SubspaceOp::Join => pair.join_projection()?,
                    SubspaceOp::Meet => pair.meet_projection()?,
                    SubspaceOp::Decomp => orth_decomposition(pair)?,
                }),
                PairHandle::Float(pair) => MatrixJson::from_float(&match op {
                    SubspaceOp::Join => pair.join_projection()?,
                    SubspaceOp::Meet => pair.meet_projection()?,
                    SubspaceOp::Decomp => orth_decomposition(pair)?,
                }),
            };
            println!("{}", serde_json::to_string(&out)?);
            Ok(0)
        }
        Cmd::Probe { backend, dim, trials, seed } => probe(backend, dim, trials, seed),
    }
}

#[derive(Default, Serialize)]
struct ClauseTally {
    condition_true: u64,
    condition_false: u64,
    inconclusive: u64,
    mismatches: u64,
    mismatch_at: Vec<String>,
}

#[derive(Serialize)]
struct ProbeSummary {
    schema: String,
    record: String,
    backend: BackendKind,
    dim: usize,
    trials: u64,
    seed: u64,
    clauses: BTreeMap<String, ClauseTally>,
}

/// Sample random pairs and compare, for each of the three equality
/// equivalences, the formula side against the subspace condition. In
/// these matrix backends the involution is star-reducing, so the two
/// sides must track each other; the probe quantifies that no divergence
/// appears in sampling, and would surface one as a mismatch if a backend
/// without that property were ever plugged in.
fn probe(backend: BackendKind, dim: usize, trials: u64, seed: u64) -> Result<i32> {
    let clauses = [
        EquivalenceClause::JoinIsWhole,
        EquivalenceClause::MeetIsTrivial,
        EquivalenceClause::Complemented,
    ];
    let mut tallies: BTreeMap<String, ClauseTally> = clauses
        .iter()
        .map(|c| (c.statement_id().as_str().to_string(), ClauseTally::default()))
        .collect();
    let tol = ToleranceConfig::default();
    for trial in 0..trials {
        let child = gen::child_seed(seed, dim, trial);
        let mut rng = ChaCha12Rng::seed_from_u64(child);
        let rank_p = rng.gen_range(0..=dim);
        let rank_q = rng.gen_range(0..=dim);
        let reports = match backend {
            BackendKind::Exact => {
                let pair = gen::exact_pair(dim, rank_p, rank_q, gen::PairKind::Random, &mut rng)?;
                clauses.map(|c| check_equality_equivalence(&pair, c))
            }
            BackendKind::Float => {
                let pair =
                    gen::float_pair(dim, rank_p, rank_q, gen::PairKind::Random, &mut rng, tol)?;
                clauses.map(|c| check_equality_equivalence(&pair, c))
            }
        };
        for report in reports {
            let tally = tallies
                .get_mut(report.statement_id.as_str())
                .expect("tallies preseeded");
            match report.hypothesis_flags.get("subspace_condition") {
                Some(true) => tally.condition_true += 1,
                Some(false) => tally.condition_false += 1,
                None => {}
            }
            match report.verdict {
                Verdict::Pass => {}
                Verdict::Inconclusive => tally.inconclusive += 1,
                Verdict::Fail => {
                    tally.mismatches += 1;
                    tally.mismatch_at.push(format!("{dim}/{trial}/random"));
                }
            }
        }
    }
    let summary = ProbeSummary {
        schema: SCHEMA.to_string(),
        record: "equivalence_probe".to_string(),
        backend,
        dim,
        trials,
        seed,
        clauses: tallies,
    };
    println!("{}", serde_json::to_string_pretty(&summary)?);
    let any_mismatch = summary.clauses.values().any(|t| t.mismatches > 0);
    let any_inconclusive = summary.clauses.values().any(|t| t.inconclusive > 0);
    Ok(if any_mismatch {
        1
    } else if any_inconclusive {
        2
    } else {
        0
    })
}
