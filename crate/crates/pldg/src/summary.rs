//! One CSV row per trial.

use serde::{Deserialize, Serialize};

use crate::record::TrialRecord;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub variant: String,
    /// Largest per-node broadcast over the variants run.
    pub max_messages: usize,
    /// Largest stretch over the variants run; empty when a pair is disconnected.
    pub stretch: Option<f64>,
    pub plane: bool,
    pub consistent: bool,
    pub supergraph_of_udel: bool,
    pub messages_ok: bool,
    pub one_round: bool,
    pub stretch_ok: bool,
    /// Empty unless both variants ran.
    pub graphs_equal: Option<bool>,
    pub passed: bool,
}

impl SummaryRow {
    pub fn from_record(r: &TrialRecord) -> Self {
        let v = r.verdict.variants.values();
        let all = |f: fn(&crate::record::VerdictRecord) -> bool| v.clone().all(f);
        let stretch = v
            .clone()
            .map(|x| x.stretch)
            .try_fold(1.0f64, |acc, s| s.map(|s| acc.max(s)));
        SummaryRow {
            trial: r.trial,
            seed: r.seed,
            n: r.points.len(),
            variant: variant_label(r),
            max_messages: v.clone().map(|x| x.max_messages).max().unwrap_or(0),
            stretch,
            plane: all(|x| x.plane),
            consistent: all(|x| x.consistent),
            supergraph_of_udel: all(|x| x.supergraph_of_udel),
            messages_ok: all(|x| x.messages_ok),
            one_round: all(|x| x.round_count == 1),
            stretch_ok: all(|x| {
                x.stretch.is_some_and(|s| {
                    s <= pldg_core::SPANNER_BOUND + pldg_core::verify::STRETCH_TOLERANCE
                })
            }),
            graphs_equal: r.verdict.graphs_equal,
            passed: r.verdict.passed,
        }
    }
}

fn variant_label(r: &TrialRecord) -> String {
    r.verdict
        .variants
        .keys()
        .cloned()
        .collect::<Vec<_>>()
        .join("+")
}

/// Renders `rows` as CSV text with a header line.
pub fn to_csv(rows: &[SummaryRow]) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}
