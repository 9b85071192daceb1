//! Trials: generate, run, verify, and write the results.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use pldg_core::protocol::ProtocolOptions;
use pldg_core::sim::{run_with, Executor, RunReport};
use pldg_core::verify::{graphs_equal, verify_run};
use pldg_core::{PointSet, Sequential, Variant};
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::error::{io_at, Result};
use crate::generate::generate;
use crate::record::{self, edges, histogram, xy, TrialRecord, TrialVerdict, VerdictRecord};
use crate::summary::{to_csv, SummaryRow};
use crate::svg;

/// Everything one trial produced.
#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub points: PointSet,
    pub reports: Vec<RunReport>,
    pub record: TrialRecord,
}

/// Runs every configured variant on `ps` and assembles the record.
pub fn evaluate<E: Executor>(
    config: &ExperimentConfig,
    trial: usize,
    ps: &PointSet,
    executor: &E,
) -> Result<TrialOutcome> {
    let mut reports = Vec::new();
    let mut variants = BTreeMap::new();
    let mut pldg_edges = BTreeMap::new();
    let mut message_histogram = BTreeMap::new();
    let mut certificates = BTreeMap::new();
    for &variant in config.variant.variants() {
        let report = run_with(ps, variant, executor, ProtocolOptions::default())?;
        if !report.connected {
            log::warn!("unit-disk graph is disconnected; checks apply per component");
        }
        let verdict = verify_run(ps, &report)?;
        let name = variant.name().to_owned();
        variants.insert(name.clone(), VerdictRecord::from(&verdict));
        pldg_edges.insert(name.clone(), edges(&report.graph(ps)));
        message_histogram.insert(name.clone(), histogram(&report));
        certificates.insert(name, report.certificates.iter().map(Into::into).collect());
        reports.push(report);
    }
    let graphs_equal = match &reports[..] {
        [a, b] => Some(graphs_equal(&a.graph(ps), &b.graph(ps))),
        _ => None,
    };
    let passed = variants.values().all(|v: &VerdictRecord| v.passed) && graphs_equal != Some(false);
    let record = TrialRecord {
        config: config.clone(),
        trial,
        seed: ps.seed.unwrap_or_else(|| config.trial_seed(trial)),
        points: ps.points.iter().copied().map(xy).collect(),
        udg_edges: record::udg_edges(ps),
        pldg_edges,
        verdict: TrialVerdict {
            passed,
            graphs_equal,
            variants,
        },
        message_histogram,
        certificates,
    };
    Ok(TrialOutcome {
        points: ps.clone(),
        reports,
        record,
    })
}

/// Generates and evaluates trial `t` of `config`.
pub fn run_trial(config: &ExperimentConfig, t: usize) -> Result<TrialOutcome> {
    let ps = generate(config, t)?;
    evaluate(config, t, &ps, &Sequential)
}

#[derive(Clone, Debug)]
pub struct ExperimentOptions {
    pub out_dir: PathBuf,
    /// Also draw each variant of each trial.
    pub svg: bool,
    /// Run trials on the rayon pool.
    pub parallel: bool,
}

#[derive(Clone, Debug)]
pub struct ExperimentSummary {
    pub rows: Vec<SummaryRow>,
    pub failed: usize,
}

pub fn trial_path(dir: &Path, t: usize) -> PathBuf {
    dir.join(format!("trial_{t:05}.json"))
}

pub fn svg_path(dir: &Path, t: usize, variant: Variant) -> PathBuf {
    let slug = match variant {
        Variant::Pldg => "pldg",
        Variant::PldgPrime => "pldg_prime",
    };
    dir.join(format!("trial_{t:05}_{slug}.svg"))
}

/// Runs all trials, writing one JSON record per trial, optional SVGs, and `summary.csv`.
pub fn run_experiment(
    config: &ExperimentConfig,
    opts: &ExperimentOptions,
) -> Result<ExperimentSummary> {
    config.validate()?;
    fs::create_dir_all(&opts.out_dir).map_err(io_at(&opts.out_dir))?;
    let one = |t: usize| -> Result<SummaryRow> {
        let out = run_trial(config, t)?;
        record::write_atomic(
            &trial_path(&opts.out_dir, t),
            record::to_json(&out.record).as_bytes(),
        )?;
        if opts.svg {
            for report in &out.reports {
                let path = svg_path(&opts.out_dir, t, report.variant);
                record::write_atomic(&path, svg::render(&out.points, report).as_bytes())?;
            }
        }
        if !out.record.verdict.passed {
            log::error!("trial {t} (seed {}) failed verification", out.record.seed);
        }
        Ok(SummaryRow::from_record(&out.record))
    };
    let rows: Vec<SummaryRow> = if opts.parallel {
        (0..config.trials)
            .into_par_iter()
            .map(one)
            .collect::<Result<_>>()?
    } else {
        (0..config.trials).map(one).collect::<Result<_>>()?
    };
    let csv = to_csv(&rows)?;
    record::write_atomic(&opts.out_dir.join("summary.csv"), &csv)?;
    let failed = rows.iter().filter(|r| !r.passed).count();
    Ok(ExperimentSummary { rows, failed })
}
