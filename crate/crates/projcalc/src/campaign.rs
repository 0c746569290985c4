//! Campaign execution: a seeded sweep of generated pairs through a set of
//! statements, streamed out as line-delimited JSON reports.
//!
//! Determinism is the contract here. Trials are visited in (dimension,
//! trial) order, each derives its own child seed, residual maps are
//! ordered, and nothing records wall-clock state, so an exact-backend
//! campaign rerun with the same config writes byte-identical output.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use anyhow::{bail, Context, Result};
use projcalc_core::float::ToleranceConfig;
use projcalc_core::report::{SeedPath, StatementId, Verdict, SCHEMA};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::gen::{self, PairKind};
use crate::io::BackendKind;
use crate::verify::PairHandle;

/// How (rank p, rank q) are chosen per trial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankRule {
    /// Each rank drawn uniformly from 0..=n.
    #[default]
    Uniform,
    /// Both ranks pinned (must fit the smallest configured dimension).
    Fixed { rank_p: usize, rank_q: usize },
}

fn default_theorems() -> Vec<StatementId> {
    StatementId::ALL.to_vec()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub backend: BackendKind,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub ranks: RankRule,
    pub trials_per_dim: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub tolerance: ToleranceConfig,
    #[serde(default = "default_theorems")]
    pub theorems: Vec<StatementId>,
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            bail!("dims must be nonempty");
        }
        if self.dims.iter().any(|&n| n == 0) {
            bail!("dimensions must be at least 1");
        }
        if self.trials_per_dim == 0 {
            bail!("trials_per_dim must be at least 1");
        }
        if self.theorems.is_empty() {
            bail!("no statements requested");
        }
        let mut seen = BTreeSet::new();
        for id in &self.theorems {
            if !seen.insert(id) {
                bail!("statement {id} listed twice");
            }
        }
        if let RankRule::Fixed { rank_p, rank_q } = self.ranks {
            let min_dim = *self.dims.iter().min().expect("dims nonempty");
            if rank_p > min_dim || rank_q > min_dim {
                bail!("fixed ranks ({rank_p}, {rank_q}) exceed the smallest dimension {min_dim}");
            }
        }
        self.tolerance.validate()?;
        Ok(())
    }
}

/// Per-statement aggregate over a campaign.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct StatementStats {
    pub pass: u64,
    pub fail: u64,
    pub inconclusive: u64,
    pub max_residual: f64,
    /// dim/trial/kind coordinates of every inconclusive report.
    pub inconclusive_at: Vec<String>,
}

/// Coordinates of one hard failure, enough to regenerate the pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FailureRecord {
    pub statement_id: StatementId,
    pub coord: String,
    pub child_seed: u64,
    pub pair_fingerprint: String,
    pub max_residual: f64,
}

/// Final record of a campaign, also appended as the last report line.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub schema: String,
    pub record: String,
    pub backend: BackendKind,
    pub dims: Vec<usize>,
    pub trials_per_dim: u64,
    pub seed: u64,
    pub tolerance: ToleranceConfig,
    pub total_reports: u64,
    pub statements: BTreeMap<String, StatementStats>,
    pub hard_failures: Vec<FailureRecord>,
}

impl CampaignSummary {
    /// 0 when everything passed, 1 on any hard failure, 2 when the only
    /// blemishes are inconclusive reports.
    pub fn exit_code(&self) -> i32 {
        if !self.hard_failures.is_empty() {
            1
        } else if self.statements.values().any(|s| s.inconclusive > 0) {
            2
        } else {
            0
        }
    }
}

fn generate(
    config: &CampaignConfig,
    n: usize,
    kind: PairKind,
    rng: &mut ChaCha12Rng,
) -> Result<PairHandle> {
    let (rank_p, rank_q) = match config.ranks {
        RankRule::Uniform => (rng.gen_range(0..=n), rng.gen_range(0..=n)),
        RankRule::Fixed { rank_p, rank_q } => (rank_p, rank_q),
    };
    match config.backend {
        BackendKind::Exact => {
            gen::exact_pair(n, rank_p, rank_q, kind, rng).map(PairHandle::Exact)
        }
        BackendKind::Float => {
            gen::float_pair(n, rank_p, rank_q, kind, rng, config.tolerance).map(PairHandle::Float)
        }
    }
}

/// Run a campaign, streaming one JSON report per (pair, statement) plus a
/// final summary line into `out`, and returning the summary.
pub fn run_campaign<W: Write>(config: &CampaignConfig, out: &mut W) -> Result<CampaignSummary> {
    config.validate()?;
    let mut stats: BTreeMap<String, StatementStats> = config
        .theorems
        .iter()
        .map(|id| (id.as_str().to_string(), StatementStats::default()))
        .collect();
    let mut hard_failures = Vec::new();
    let mut total_reports = 0u64;

    for &dim in &config.dims {
        let trials = (0..config.trials_per_dim).map(|t| (t, PairKind::Random)).chain(
            PairKind::FIXTURES
                .iter()
                .enumerate()
                .map(|(i, &kind)| (config.trials_per_dim + i as u64, kind)),
        );
        for (trial, kind) in trials {
            let child = gen::child_seed(config.seed, dim, trial);
            let mut rng = ChaCha12Rng::seed_from_u64(child);
            let handle = generate(config, dim, kind, &mut rng)
                .with_context(|| format!("generating pair dim={dim} trial={trial}"))?;
            let coord = format!("{dim}/{trial}/{}", kind.label());
            for &id in &config.theorems {
                let report = handle.verify(id).with_seed_path(SeedPath {
                    dim,
                    trial,
                    child_seed: child,
                    pair_kind: kind.label().to_string(),
                });
                let line = serde_json::to_string(&report)?;
                out.write_all(line.as_bytes())?;
                out.write_all(b"\n")?;
                total_reports += 1;

                let entry = stats.get_mut(id.as_str()).expect("stats preseeded from config");
                entry.max_residual = entry.max_residual.max(report.max_residual());
                match report.verdict {
                    Verdict::Pass => entry.pass += 1,
                    Verdict::Fail => {
                        entry.fail += 1;
                        hard_failures.push(FailureRecord {
                            statement_id: id,
                            coord: coord.clone(),
                            child_seed: child,
                            pair_fingerprint: report.pair_fingerprint.clone(),
                            max_residual: report.max_residual(),
                        });
                    }
                    Verdict::Inconclusive => {
                        entry.inconclusive += 1;
                        entry.inconclusive_at.push(coord.clone());
                    }
                }
            }
        }
    }

    let summary = CampaignSummary {
        schema: SCHEMA.to_string(),
        record: "campaign_summary".to_string(),
        backend: config.backend,
        dims: config.dims.clone(),
        trials_per_dim: config.trials_per_dim,
        seed: config.seed,
        tolerance: config.tolerance,
        total_reports,
        statements: stats,
        hard_failures,
    };
    let line = serde_json::to_string(&summary)?;
    out.write_all(line.as_bytes())?;
    out.write_all(b"\n")?;
    Ok(summary)
}
