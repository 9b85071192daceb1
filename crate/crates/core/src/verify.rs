//! Ground-truth oracles and property checks for the constructed graph.
//!
//! The oracles are deliberately naive: the unit Delaunay graph comes from
//! exhaustive empty-circumdisk enumeration for small inputs and from a
//! per-pair empty-disk interval test otherwise. Neither shares code with the
//! gift-wrapping triangulation the protocol uses.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::geom::{in_circle, orient, segments_cross};
use crate::sim::RunReport;
use crate::udg::{build_udg, Graph, PointSet};
use crate::{Error, Result, SPANNER_BOUND};

/// Largest input handled by exhaustive triple enumeration.
pub const BRUTE_FORCE_LIMIT: usize = 60;

/// Slack allowed on the stretch bound.
pub const STRETCH_TOLERANCE: f64 = 1e-9;

/// `UDel(V)`: edges of the global Delaunay triangulation of length at most 1.
pub fn udel_oracle(ps: &PointSet) -> Result<Graph> {
    if ps.len() <= BRUTE_FORCE_LIMIT {
        udel_by_enumeration(ps)
    } else {
        udel_by_pair_test(ps)
    }
}

/// `O(n⁴)`: every triple whose circumdisk is empty of all other points is a face.
pub fn udel_by_enumeration(ps: &PointSet) -> Result<Graph> {
    let pts = &ps.points;
    let n = pts.len();
    let mut edges = BTreeSet::new();
    if n == 2 {
        edges.insert((0, 1));
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut empty = true;
                for m in 0..n {
                    if m == i || m == j || m == k {
                        continue;
                    }
                    match in_circle(pts[i], pts[j], pts[k], pts[m])? {
                        0 => {
                            return Err(Error::Cocircular {
                                a: pts[i],
                                b: pts[j],
                                c: pts[k],
                                d: pts[m],
                            })
                        }
                        1 => {
                            empty = false;
                            break;
                        }
                        _ => {}
                    }
                }
                if empty {
                    edges.extend([(i, j), (i, k), (j, k)]);
                }
            }
        }
    }
    Ok(unit_edges(ps, edges))
}

/// For each unit-length pair `(a, b)`, decides whether some disk through `a`
/// and `b` avoids every other point. Centers lie on the bisector `m + t·n`;
/// each point bounds `t` from above (left side) or below (right side), and
/// the edge exists iff the resulting interval is nonempty.
pub fn udel_by_pair_test(ps: &PointSet) -> Result<Graph> {
    let pts = &ps.points;
    let udg = build_udg(ps);
    let mut edges = BTreeSet::new();
    for (a, b) in udg.edges() {
        let (pa, pb) = (pts[a], pts[b]);
        let m = pa.midpoint(pb);
        let normal = (pb - pa).perp();
        let base = m.dist2(pa);
        let mut lower = f64::NEG_INFINITY;
        let mut upper = f64::INFINITY;
        for (w, &pw) in pts.iter().enumerate() {
            if w == a || w == b {
                continue;
            }
            let side = orient(pa, pb, pw);
            if side == 0 {
                return Err(Error::Collinear {
                    a: pa,
                    b: pb,
                    c: pw,
                });
            }
            let t = (m.dist2(pw) - base) / (2.0 * normal.dot(pw - m));
            if side > 0 {
                upper = upper.min(t);
            } else {
                lower = lower.max(t);
            }
        }
        if lower < upper {
            edges.insert((a, b));
        }
    }
    Ok(Graph::from_edges(ps, edges))
}

fn unit_edges(ps: &PointSet, edges: BTreeSet<(usize, usize)>) -> Graph {
    Graph::from_edges(
        ps,
        edges.into_iter().filter(|&(u, v)| ps[u].dist(ps[v]) <= 1.0),
    )
}

/// First pair of properly crossing edges, if any. `O(E²)`.
pub fn find_crossing(g: &Graph, ps: &PointSet) -> Option<((usize, usize), (usize, usize))> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if segments_cross(ps[a], ps[b], ps[c], ps[d]) {
                return Some(((a, b), (c, d)));
            }
        }
    }
    None
}

pub fn is_plane(g: &Graph, ps: &PointSet) -> bool {
    find_crossing(g, ps).is_none()
}

/// First `(u, v)` with `v ∈ E(u)` but `u ∉ E(v)`, if any.
pub fn find_inconsistency(edge_sets: &[BTreeSet<usize>]) -> Option<(usize, usize)> {
    edge_sets.iter().enumerate().find_map(|(u, set)| {
        set.iter()
            .copied()
            .find(|&v| !edge_sets.get(v).is_some_and(|back| back.contains(&u)))
            .map(|v| (u, v))
    })
}

pub fn is_consistent(edge_sets: &[BTreeSet<usize>]) -> bool {
    find_inconsistency(edge_sets).is_none()
}

/// Worst ratio `δ_g(u, v) / |uv|` over the edges of `udg`, with the edge
/// attaining it. Infinite when some edge's endpoints are disconnected in `g`.
pub fn stretch_factor(g: &Graph, udg: &Graph, ps: &PointSet) -> (f64, Option<(usize, usize)>) {
    let mut worst = f64::NEG_INFINITY;
    let mut witness = None;
    for u in 0..udg.vertex_count() {
        let later: Vec<usize> = udg
            .neighbors(u)
            .iter()
            .map(|&(v, _)| v)
            .filter(|&v| v > u)
            .collect();
        if later.is_empty() {
            continue;
        }
        let dist = g.distances_from(u, f64::INFINITY);
        for v in later {
            let ratio = match dist[v] {
                Some(d) => d / ps[u].dist(ps[v]),
                None => f64::INFINITY,
            };
            if ratio > worst {
                worst = ratio;
                witness = Some((u, v));
            }
        }
    }
    if witness.is_none() {
        worst = 1.0;
    }
    (worst, witness)
}

/// First edge of `sub` missing from `g`, if any.
pub fn missing_edge(g: &Graph, sub: &Graph) -> Option<(usize, usize)> {
    sub.edges().find(|&(u, v)| !g.has_edge(u, v))
}

pub fn is_supergraph(g: &Graph, sub: &Graph) -> bool {
    missing_edge(g, sub).is_none()
}

/// First edge in exactly one of the graphs, if any.
pub fn first_difference(g1: &Graph, g2: &Graph) -> Option<(usize, usize)> {
    let a = g1.edge_set();
    let b = g2.edge_set();
    a.symmetric_difference(&b).next().copied()
}

pub fn graphs_equal(g1: &Graph, g2: &Graph) -> bool {
    g1.vertex_count() == g2.vertex_count() && first_difference(g1, g2).is_none()
}

/// Everything checked about one run.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationVerdict {
    pub plane: bool,
    pub crossing: Option<((usize, usize), (usize, usize))>,
    pub consistent: bool,
    pub inconsistency: Option<(usize, usize)>,
    pub supergraph_of_udel: bool,
    pub missing_udel_edge: Option<(usize, usize)>,
    pub stretch: f64,
    pub worst_edge: Option<(usize, usize)>,
    pub messages_ok: bool,
    pub max_messages: usize,
    pub round_count: usize,
}

impl VerificationVerdict {
    /// All properties hold and the stretch is within the spanner bound.
    pub fn passed(&self) -> bool {
        self.plane
            && self.consistent
            && self.supergraph_of_udel
            && self.messages_ok
            && self.round_count == 1
            && self.stretch <= SPANNER_BOUND + STRETCH_TOLERANCE
    }
}

/// Runs every check on `report`, which must come from `ps`.
pub fn verify_run(ps: &PointSet, report: &RunReport) -> Result<VerificationVerdict> {
    let udg = build_udg(ps);
    let udel = udel_oracle(ps)?;
    let g = report.graph(ps);
    let crossing = find_crossing(&g, ps);
    let inconsistency = find_inconsistency(&report.final_edge_sets);
    let missing = missing_edge(&g, &udel);
    let (stretch, worst_edge) = stretch_factor(&g, &udg, ps);
    let max_messages = report.max_messages();
    Ok(VerificationVerdict {
        plane: crossing.is_none(),
        crossing,
        consistent: inconsistency.is_none(),
        inconsistency,
        supergraph_of_udel: missing.is_none(),
        missing_udel_edge: missing,
        stretch,
        worst_edge,
        messages_ok: max_messages <= report.variant.message_budget(),
        max_messages,
        round_count: report.round_count,
    })
}
