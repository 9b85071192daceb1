use pldg::config::{ExperimentConfig, GeneratorKind, VariantChoice};
use pldg::experiment::{evaluate, run_experiment, run_trial, trial_path, ExperimentOptions};
use pldg::record::{read_json, to_json, PointsFile, TrialRecord};
use pldg::summary::SummaryRow;
use pldg::{svg, PldgError};
use pldg_core::Sequential;

fn config(n: usize, side: f64) -> ExperimentConfig {
    ExperimentConfig {
        seed: 17,
        n,
        side,
        ..Default::default()
    }
}

#[test]
fn records_round_trip_bit_for_bit() {
    let cfg = config(60, 3.2);
    let dir = tempfile::tempdir().unwrap();
    for t in 0..5 {
        let out = run_trial(&cfg, t).unwrap();
        let text = to_json(&out.record);
        let path = dir.path().join(format!("{t}.json"));
        std::fs::write(&path, &text).unwrap();

        let back: TrialRecord = read_json(&path).unwrap();
        assert_eq!(back, out.record);
        let pts: PointsFile = read_json(&path).unwrap();
        let ps = pts.point_set().unwrap();
        for (a, b) in ps.points.iter().zip(&out.points.points) {
            assert_eq!(a.x.to_bits(), b.x.to_bits());
            assert_eq!(a.y.to_bits(), b.y.to_bits());
        }
        let again = evaluate(&cfg, t, &ps, &Sequential).unwrap();
        assert_eq!(to_json(&again.record), text);
    }
}

#[test]
fn record_has_every_field() {
    let out = run_trial(&config(30, 2.5), 0).unwrap();
    let v: serde_json::Value = serde_json::from_str(&to_json(&out.record)).unwrap();
    for key in [
        "config",
        "points",
        "udg_edges",
        "pldg_edges",
        "verdict",
        "message_histogram",
        "certificates",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["verdict"]["graphs_equal"].as_bool().unwrap());
    assert_eq!(v["config"]["variant"], "both");

    let single = ExperimentConfig {
        variant: VariantChoice::PldgPrime,
        ..config(30, 2.5)
    };
    let out = run_trial(&single, 0).unwrap();
    assert_eq!(out.record.verdict.graphs_equal, None);
    assert_eq!(out.record.pldg_edges.len(), 1);
}

#[test]
fn experiment_writes_a_record_per_trial() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig {
        trials: 100,
        ..config(50, 3.0)
    };
    let opts = ExperimentOptions {
        out_dir: dir.path().to_owned(),
        svg: false,
        parallel: true,
    };
    let summary = run_experiment(&cfg, &opts).unwrap();
    assert_eq!(summary.failed, 0);
    assert_eq!(summary.rows.len(), 100);
    for t in 0..100 {
        let r: TrialRecord = read_json(&trial_path(dir.path(), t)).unwrap();
        assert!(r.verdict.passed);
        assert_eq!(r.seed, 17 + t as u64);
    }
    let mut reader = csv::Reader::from_path(dir.path().join("summary.csv")).unwrap();
    let headers = reader.headers().unwrap().clone();
    for col in [
        "seed",
        "n",
        "max_messages",
        "stretch",
        "plane",
        "consistent",
        "passed",
    ] {
        assert!(headers.iter().any(|h| h == col), "{col}");
    }
    let rows: Vec<SummaryRow> = reader.deserialize().collect::<Result<_, _>>().unwrap();
    assert_eq!(rows, summary.rows);
    // no temporary files left behind
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 101);
}

#[test]
fn invalid_config_fails_before_any_trial() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never");
    let opts = ExperimentOptions {
        out_dir: out.clone(),
        svg: false,
        parallel: false,
    };
    let err = run_experiment(&config(1, 2.0), &opts).unwrap_err();
    assert!(matches!(err, PldgError::Config(_)));
    assert!(!out.exists());
}

#[test]
fn svg_draws_each_edge_once() {
    let cfg = ExperimentConfig {
        generator: GeneratorKind::Clustered,
        ..config(60, 3.0)
    };
    let mut removed_somewhere = false;
    for t in 0..5 {
        let out = run_trial(&cfg, t).unwrap();
        for report in &out.reports {
            let text = svg::render(&out.points, report);
            assert!(text.contains(r#"version="1.1""#));
            let kept = text.matches(r#"class="kept""#).count();
            assert_eq!(kept, report.graph(&out.points).edge_count());
            assert_eq!(text.matches(r#"class="node""#).count(), out.points.len());
            let removed = text.matches(r#"class="removed""#).count();
            let mut distinct: Vec<_> = report
                .certificates
                .iter()
                .map(|c| {
                    (
                        c.removed_edge.0.min(c.removed_edge.1),
                        c.removed_edge.0.max(c.removed_edge.1),
                    )
                })
                .collect();
            distinct.sort_unstable();
            distinct.dedup();
            assert_eq!(removed, distinct.len());
            removed_somewhere |= removed > 0;
            assert!(text.contains("scale-bar"));
        }
    }
    assert!(removed_somewhere);
}
