//! The per-trial JSON record.
//!
//! Floats are written in shortest round-trip form, so reading a record back
//! reproduces every coordinate bit for bit.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use pldg_core::protocol::RemovalCertificate;
use pldg_core::sim::{count_messages, RunReport};
use pldg_core::udg::{build_udg, Graph};
use pldg_core::verify::VerificationVerdict;
use pldg_core::{Disk, Point, PointSet};
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::error::{io_at, PldgError, Result};

pub type Edge = [usize; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskRecord {
    pub center: [f64; 2],
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub removed_edge: Edge,
    pub v: [f64; 2],
    pub y: [f64; 2],
    pub triggering_center: [f64; 2],
    pub boundary_pair: [[f64; 2]; 2],
    pub z_prime: [f64; 2],
    pub witness_disk: DiskRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub plane: bool,
    pub crossing: Option<[Edge; 2]>,
    pub consistent: bool,
    pub inconsistency: Option<Edge>,
    pub supergraph_of_udel: bool,
    pub missing_udel_edge: Option<Edge>,
    /// `null` when some unit-disk edge has no path in the output.
    pub stretch: Option<f64>,
    pub worst_edge: Option<Edge>,
    pub messages_ok: bool,
    pub max_messages: usize,
    pub round_count: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialVerdict {
    /// Every variant passed and, when both ran, their graphs agree.
    pub passed: bool,
    /// Present when both variants ran.
    pub graphs_equal: Option<bool>,
    pub variants: BTreeMap<String, VerdictRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub config: ExperimentConfig,
    pub trial: usize,
    pub seed: u64,
    pub points: Vec<[f64; 2]>,
    pub udg_edges: Vec<Edge>,
    /// Output edges per variant name.
    pub pldg_edges: BTreeMap<String, Vec<Edge>>,
    pub verdict: TrialVerdict,
    /// Per variant: point locations broadcast → number of nodes.
    pub message_histogram: BTreeMap<String, BTreeMap<usize, usize>>,
    pub certificates: BTreeMap<String, Vec<CertificateRecord>>,
}

/// Just the instance, as written by `generate`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub config: ExperimentConfig,
    pub trial: usize,
    pub seed: u64,
    pub points: Vec<[f64; 2]>,
}

/// Any file carrying points: a trial record or an instance.
#[derive(Clone, Debug, Deserialize)]
pub struct PointsFile {
    pub config: Option<ExperimentConfig>,
    pub seed: Option<u64>,
    pub points: Vec<[f64; 2]>,
    pub pldg_edges: Option<BTreeMap<String, Vec<Edge>>>,
}

impl PointsFile {
    pub fn point_set(&self) -> Result<PointSet> {
        let ps = points_from_xy(&self.points)?;
        Ok(match self.seed {
            Some(s) => ps.with_seed(s),
            None => ps,
        })
    }
}

pub fn xy(p: Point) -> [f64; 2] {
    [p.x, p.y]
}

pub fn points_from_xy(points: &[[f64; 2]]) -> Result<PointSet> {
    Ok(PointSet::new(
        points.iter().map(|&[x, y]| Point::new(x, y)).collect(),
    )?)
}

pub fn edges(g: &Graph) -> Vec<Edge> {
    g.edges().map(|(u, v)| [u, v]).collect()
}

pub fn udg_edges(ps: &PointSet) -> Vec<Edge> {
    edges(&build_udg(ps))
}

pub fn histogram(report: &RunReport) -> BTreeMap<usize, usize> {
    count_messages(report).1
}

impl From<&Disk> for DiskRecord {
    fn from(d: &Disk) -> Self {
        DiskRecord {
            center: xy(d.center),
            radius: d.radius,
        }
    }
}

impl From<&RemovalCertificate> for CertificateRecord {
    fn from(c: &RemovalCertificate) -> Self {
        CertificateRecord {
            removed_edge: [c.removed_edge.0, c.removed_edge.1],
            v: xy(c.v),
            y: xy(c.y),
            triggering_center: xy(c.triggering_center),
            boundary_pair: [xy(c.boundary_pair.0), xy(c.boundary_pair.1)],
            z_prime: xy(c.z_prime),
            witness_disk: (&c.witness_disk).into(),
        }
    }
}

impl From<&VerificationVerdict> for VerdictRecord {
    fn from(v: &VerificationVerdict) -> Self {
        let pair = |(a, b): (usize, usize)| [a, b];
        VerdictRecord {
            plane: v.plane,
            crossing: v.crossing.map(|(e, f)| [pair(e), pair(f)]),
            consistent: v.consistent,
            inconsistency: v.inconsistency.map(pair),
            supergraph_of_udel: v.supergraph_of_udel,
            missing_udel_edge: v.missing_udel_edge.map(pair),
            stretch: v.stretch.is_finite().then_some(v.stretch),
            worst_edge: v.worst_edge.map(pair),
            messages_ok: v.messages_ok,
            max_messages: v.max_messages,
            round_count: v.round_count,
            passed: v.passed(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(io_at(path))?;
    serde_json::from_str(&text).map_err(|source| PldgError::Json {
        path: path.to_owned(),
        source,
    })
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_at(dir))?;
    tmp.write_all(contents).map_err(io_at(tmp.path()))?;
    tmp.as_file().sync_all().map_err(io_at(tmp.path()))?;
    tmp.persist(path).map_err(|e| PldgError::Io {
        path: path.to_owned(),
        source: e.error,
    })?;
    Ok(())
}
