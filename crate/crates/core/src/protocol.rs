//! The per-node protocol: a broadcast phase and a prune phase.
//!
//! In the broadcast phase node `v` triangulates `N_v`, keeps every incident
//! edge of the local triangulation, and broadcasts the circumcenters of the
//! incident faces whose angle at `v` exceeds `π/3`. [`Variant::Pldg`] prefixes
//! the sender location; [`Variant::PldgPrime`] sends the centers alone and
//! the receiver recovers the carrier circle from its nearest neighbor.
//!
//! In the prune phase `v` turns every received center into a carrier circle
//! through two of its neighbors, takes the open arc of that circle outside its
//! unit disk (where the unseen third vertex must lie), stands a proxy vertex
//! `z'` on the arc, and drops each edge `(v, y)` whose empty-disk witness
//! swallows the arc while `vy` crosses a proxy segment.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::geom::arc::splitmix64;
use crate::geom::{
    arc_in_disk_interior, arc_outside_disk, choose_z_prime_with, circumcenter, delaunay,
    segments_cross, CircularArc, Disk, LocalTriangulation, Membership, Point, ZRule,
};
use crate::trace::{Digest, Trace};
use crate::udg::{Graph, PointSet};
use crate::{Error, Result, EPS};

/// Which of the two protocol variants to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    /// Broadcasts `(v, c_1, …, c_k)`.
    Pldg,
    /// Broadcasts `(c_1, …, c_k)`; receivers infer the sender's circle.
    PldgPrime,
}

impl Variant {
    /// Upper bound on point locations a node may broadcast.
    pub fn message_budget(self) -> usize {
        match self {
            Variant::Pldg => 6,
            Variant::PldgPrime => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Pldg => "PLDG",
            Variant::PldgPrime => "PLDG'",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One node's single broadcast: a sequence of point locations.
#[derive(Clone, Debug, PartialEq)]
pub struct BroadcastMessage {
    /// Present for [`Variant::Pldg`] only.
    pub sender: Option<Point>,
    pub centers: Vec<Point>,
}

impl BroadcastMessage {
    /// Number of point locations carried.
    pub fn message_count(&self) -> usize {
        self.centers.len() + usize::from(self.sender.is_some())
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        let sender = match (self.sender, other.sender) {
            (Some(a), Some(b)) => a.total_cmp(&b),
            (a, b) => a.is_some().cmp(&b.is_some()),
        };
        sender.then_with(|| {
            self.centers
                .iter()
                .zip(&other.centers)
                .map(|(a, b)| a.total_cmp(b))
                .find(|o| o.is_ne())
                .unwrap_or(self.centers.len().cmp(&other.centers.len()))
        })
    }

    fn digest(&self, d: Digest) -> Digest {
        let mut d = match self.sender {
            Some(s) => d.u64(1).point(s),
            None => d.u64(0),
        };
        d = d.u64(self.centers.len() as u64);
        for &c in &self.centers {
            d = d.point(c);
        }
        d
    }
}

/// `N_v` with global ids; `center` is the local index of `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct Neighborhood {
    pub ids: Vec<usize>,
    pub points: Vec<Point>,
    pub center: usize,
}

impl Neighborhood {
    /// `N_1(v)` read off the unit-disk graph, in increasing id order.
    pub fn from_udg(ps: &PointSet, udg: &Graph, v: usize) -> Self {
        let mut ids: Vec<usize> = udg.neighbors(v).iter().map(|&(w, _)| w).collect();
        ids.push(v);
        ids.sort_unstable();
        let center = ids.binary_search(&v).expect("v was inserted");
        let points = ids.iter().map(|&i| ps[i]).collect();
        Neighborhood {
            ids,
            points,
            center,
        }
    }

    pub fn location(&self) -> Point {
        self.points[self.center]
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// How to place the empty-disk witness `Del_v(v, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WitnessRule {
    /// Midpoint of the two adjacent circumcenters; hull edges push the adjacent
    /// circumcenter outward by `max(1, its distance from the edge)`.
    #[default]
    Standard,
    /// A pseudo-random valid witness from the same one-parameter family.
    Seeded(u64),
}

/// Order in which a node works through the received centers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InboxOrder {
    /// By sender location, then by position within the message.
    #[default]
    Canonical,
    /// A seeded shuffle of all received centers.
    Shuffled(u64),
}

/// Arbitrary choices the protocol leaves open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ProtocolOptions {
    pub z_rule: ZRule,
    pub witness_rule: WitnessRule,
    pub inbox_order: InboxOrder,
}

/// Why a received center was skipped without being used.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Diagnostic {
    /// The center sits on a neighborhood point, so the carrier has radius 0.
    ZeroRadiusCarrier { center: Point },
    /// The attached sender location is not in `N_v`.
    UnknownSender { sender: Point },
    /// A [`Variant::Pldg`] message arrived without a sender location.
    MissingSender,
}

/// The evidence behind one edge removal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RemovalCertificate {
    /// The removing node `v` and the removed edge's other endpoint `y`, as global ids.
    pub removed_edge: (usize, usize),
    pub v: Point,
    pub y: Point,
    pub triggering_center: Point,
    /// `(x', p')`: the two neighborhood points on the carrier circle.
    pub boundary_pair: (Point, Point),
    pub z_prime: Point,
    pub witness_disk: Disk,
}

impl RemovalCertificate {
    /// Re-evaluates the removal test from the recorded fields alone.
    pub fn replay(&self) -> bool {
        let (x, p) = self.boundary_pair;
        let carrier = Disk::through(self.triggering_center, x);
        let arc = arc_outside_disk(carrier, Disk::new(self.v, 1.0));
        !arc.is_empty()
            && arc_in_disk_interior(&arc, self.witness_disk)
            && (segments_cross(self.v, self.y, x, self.z_prime)
                || segments_cross(self.v, self.y, p, self.z_prime))
    }
}

/// Everything node `v` knows and has decided.
#[derive(Clone, Debug)]
pub struct NodeState {
    pub id: usize,
    pub location: Point,
    pub neighborhood: Neighborhood,
    pub ldt: LocalTriangulation,
    /// `E(v)`: local indices `y` of the surviving edges `(v, y)`.
    pub edge_set: BTreeSet<usize>,
    pub trace: Trace,
    pub certificates: Vec<RemovalCertificate>,
    pub diagnostics: Vec<Diagnostic>,
    witnesses: BTreeMap<usize, Disk>,
}

impl NodeState {
    /// Global ids of the surviving neighbors.
    pub fn edge_targets(&self) -> BTreeSet<usize> {
        self.edge_set
            .iter()
            .map(|&y| self.neighborhood.ids[y])
            .collect()
    }

    fn edge_digest(&self) -> Digest {
        Digest::new().point_set(self.edge_set.iter().map(|&y| self.neighborhood.points[y]))
    }
}

/// Whether the angle at `v` in triangle `(u, v, w)` exceeds `π/3`, i.e. `cos < 1/2`.
pub(crate) fn wide_apex(v: Point, u: Point, w: Point) -> bool {
    let a = u - v;
    let b = w - v;
    let dot = a.dot(b);
    dot < 0.0 || 4.0 * dot * dot < a.norm2() * b.norm2()
}

/// First phase: triangulate `N_v`, initialize `E(v)`, and emit the broadcast.
///
/// Centers are ordered by their polar angle around `v`. No message is
/// produced when no incident face is wide.
pub fn broadcast_phase(
    v: usize,
    neighborhood: Neighborhood,
    variant: Variant,
    options: ProtocolOptions,
) -> Result<(NodeState, Option<BroadcastMessage>)> {
    let location = neighborhood.location();
    let s = neighborhood.center;
    let mut trace = Trace::default();
    let n_digest = Digest::new().point_set(neighborhood.points.iter().copied());
    trace.record("neighborhood", Digest::new().point(location), n_digest);

    let ldt = delaunay(&neighborhood.points)?;
    let pts = &neighborhood.points;
    trace.record(
        "triangulate",
        n_digest,
        Digest::new().segment_set(ldt.edges.iter().map(|&(a, b)| (pts[a], pts[b]))),
    );

    let edge_set: BTreeSet<usize> = ldt.neighbors(s).collect();
    let mut witnesses = BTreeMap::new();
    for &y in &edge_set {
        witnesses.insert(y, empty_disk_witness(&ldt, s, y, options.witness_rule)?);
    }

    let mut centers = Vec::new();
    for face in ldt.faces_at(s) {
        let (u, w) = face.opposite(s).expect("face contains v");
        if wide_apex(location, pts[u], pts[w]) {
            centers.push(circumcenter(location, pts[u], pts[w])?);
        }
    }
    assert!(
        centers.len() <= 5,
        "more than five wide faces at one vertex"
    );
    centers.sort_by(|a, b| {
        a.angle_from(location)
            .total_cmp(&b.angle_from(location))
            .then(a.total_cmp(b))
    });

    let message = (!centers.is_empty()).then(|| BroadcastMessage {
        sender: (variant == Variant::Pldg).then_some(location),
        centers,
    });

    let mut state = NodeState {
        id: v,
        location,
        neighborhood,
        ldt,
        edge_set,
        trace,
        certificates: Vec::new(),
        diagnostics: Vec::new(),
        witnesses,
    };
    let edges = state.edge_digest();
    state.trace.record("init-edges", n_digest, edges);
    let out = match &message {
        Some(m) => m.digest(Digest::new()),
        None => Digest::new(),
    };
    state.trace.record("broadcast", edges, out);
    Ok((state, message))
}

/// `Del_v(v, y)` for the edge from `v` to local index `y`.
pub fn candidate_empty_disk(state: &NodeState, y: usize) -> Result<Disk> {
    match state.witnesses.get(&y) {
        Some(&d) => Ok(d),
        None => empty_disk_witness(
            &state.ldt,
            state.neighborhood.center,
            y,
            WitnessRule::Standard,
        ),
    }
}

/// A disk with exactly `{v, y}` of the triangulated set on its boundary and
/// none inside. The construction is checked before it is returned.
pub fn empty_disk_witness(
    ldt: &LocalTriangulation,
    v: usize,
    y: usize,
    rule: WitnessRule,
) -> Result<Disk> {
    let pts = &ldt.points;
    let (pv, py) = (pts[v], pts[y]);
    let mut rng = match rule {
        WitnessRule::Standard => None,
        WitnessRule::Seeded(seed) => Some(
            seed ^ pv.x.to_bits()
                ^ pv.y.to_bits().rotate_left(13)
                ^ py.x.to_bits().rotate_left(29)
                ^ py.y.to_bits().rotate_left(47),
        ),
    };
    let mut unit = |lo: f64, hi: f64, standard: f64| match rng.as_mut() {
        None => standard,
        Some(state) => lo + (hi - lo) * ((splitmix64(state) >> 11) as f64 / (1u64 << 53) as f64),
    };
    // Centers on the bisector of vy, parameterized by signed distance from its midpoint.
    let mid = pv.midpoint(py);
    let mut normal = (py - pv).perp();
    normal = normal * (1.0 / normal.norm());
    let offset = match (ldt.left_apex(v, y), ldt.left_apex(y, v)) {
        (Some(a), Some(b)) => {
            let ta = (circumcenter(pv, py, pts[a])? - mid).dot(normal);
            let tb = (circumcenter(py, pv, pts[b])? - mid).dot(normal);
            ta + (tb - ta) * unit(0.1, 0.9, 0.5)
        }
        (Some(a), None) | (None, Some(a)) => {
            if normal.dot(pts[a] - pv) > 0.0 {
                normal = normal * -1.0;
            }
            // Any center beyond the face's circumcenter works. A nearly flat face has a
            // huge circumcircle, so the step grows with it to keep the apex clear.
            let ta = (circumcenter(pv, py, pts[a])? - mid).dot(normal);
            ta + ta.abs().max(1.0) * unit(0.25, 4.0, 1.0)
        }
        (None, None) => 0.0,
    };
    let disk = Disk::through(mid + normal * offset, pv);
    let check = |q: Point| disk.classify_within(q, EPS);
    let valid = check(py) == Membership::Boundary
        && pts
            .iter()
            .enumerate()
            .all(|(i, &q)| i == v || i == y || check(q) == Membership::Exterior);
    if valid {
        Ok(disk)
    } else {
        Err(Error::WitnessFailure { v: pv, y: py })
    }
}

/// Second phase: process every received center and prune `E(v)`.
///
/// Centers are handled in the order chosen by [`ProtocolOptions::inbox_order`].
pub fn prune_phase(
    mut state: NodeState,
    received: &[BroadcastMessage],
    variant: Variant,
    options: ProtocolOptions,
) -> Result<NodeState> {
    let mut inbox: Vec<&BroadcastMessage> = received.iter().collect();
    inbox.sort_by(|a, b| a.canonical_cmp(b));
    let inbox_digest = inbox
        .iter()
        .fold(Digest::new().u64(inbox.len() as u64), |d, m| m.digest(d));
    state
        .trace
        .record("receive", Digest::new().point(state.location), inbox_digest);

    let mut work: Vec<(Option<usize>, Point)> = Vec::new();
    for message in inbox {
        let sender = match variant {
            Variant::Pldg => match message.sender {
                None => {
                    state.diagnostics.push(Diagnostic::MissingSender);
                    state
                        .trace
                        .record("reject", message.digest(Digest::new()), Digest::new());
                    continue;
                }
                Some(s) => match state.neighborhood.points.iter().position(|&q| q == s) {
                    Some(i) => Some(i),
                    None => {
                        state
                            .diagnostics
                            .push(Diagnostic::UnknownSender { sender: s });
                        state
                            .trace
                            .record("reject", message.digest(Digest::new()), Digest::new());
                        continue;
                    }
                },
            },
            Variant::PldgPrime => None,
        };
        work.extend(message.centers.iter().map(|&c| (sender, c)));
    }
    if let InboxOrder::Shuffled(seed) = options.inbox_order {
        let mut rng =
            seed ^ state.location.x.to_bits() ^ state.location.y.to_bits().rotate_left(32);
        for i in (1..work.len()).rev() {
            let j = (splitmix64(&mut rng) % (i as u64 + 1)) as usize;
            work.swap(i, j);
        }
    }
    for (sender, center) in work {
        process_center(&mut state, center, sender, options)?;
    }
    let final_edges = state.edge_digest();
    state.trace.record("final", inbox_digest, final_edges);
    Ok(state)
}

/// Nearest point of `N_v \ {v}` to `c`.
///
/// Points tied within the boundary tolerance lie on the same carrier circle
/// and are interchangeable. A runner-up just outside that tolerance would make
/// the carrier ambiguous and is rejected as degenerate.
fn nearest_neighbor(state: &NodeState, c: Point) -> Result<Option<usize>> {
    let pts = &state.neighborhood.points;
    let mut ranked: Vec<(f64, usize)> = pts
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != state.neighborhood.center)
        .map(|(i, &q)| (c.dist(q), i))
        .collect();
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then(pts[a.1].total_cmp(&pts[b.1])));
    let Some(&(best, x)) = ranked.first() else {
        return Ok(None);
    };
    let tol = Disk::new(c, best).tolerance();
    let ambiguous = ranked[1..]
        .iter()
        .any(|&(d, _)| d - best > tol && d - best <= AMBIGUITY_FACTOR * tol);
    if ambiguous {
        return Err(Error::Degenerate(
            "neighbor just off a received carrier circle",
        ));
    }
    Ok(Some(x))
}

/// Width of the rejection band around a carrier boundary, in tolerances.
const AMBIGUITY_FACTOR: f64 = 10.0;

fn process_center(
    state: &mut NodeState,
    center: Point,
    sender: Option<usize>,
    options: ProtocolOptions,
) -> Result<()> {
    let input = Digest::new().point(center);
    let x = match sender {
        Some(x) => x,
        None => match nearest_neighbor(state, center)? {
            Some(x) => x,
            None => return Ok(()),
        },
    };
    let pts = &state.neighborhood.points;
    let px = pts[x];
    let radius = center.dist(px);
    if radius <= crate::EPS {
        state
            .diagnostics
            .push(Diagnostic::ZeroRadiusCarrier { center });
        state.trace.record("reject", input, Digest::new());
        return Ok(());
    }
    let carrier = Disk::new(center, radius);
    let on_boundary: Vec<usize> = (0..pts.len())
        .filter(|&i| i == x || carrier.classify(pts[i]) == Membership::Boundary)
        .collect();
    let boundary = Digest::new().point_set(on_boundary.iter().map(|&i| pts[i]));
    if on_boundary.len() != 2 {
        state.trace.record("carrier", input.point(px), boundary);
        return Ok(());
    }
    let p = on_boundary
        .iter()
        .copied()
        .find(|&i| i != x)
        .expect("two points");
    let pp = pts[p];
    let arc: CircularArc = arc_outside_disk(carrier, Disk::new(state.location, 1.0));
    let z = choose_z_prime_with(&arc, px, pp, options.z_rule);
    let Some(z) = z.filter(|_| !arc.is_empty()) else {
        state
            .trace
            .record("carrier", input.point(px), boundary.u64(0));
        return Ok(());
    };
    state
        .trace
        .record("carrier", input.point(px), boundary.point(z));

    let v = state.location;
    let mut removed = Vec::new();
    let snapshot: Vec<usize> = state.edge_set.iter().copied().collect();
    for y in snapshot {
        let py = state.neighborhood.points[y];
        let witness = candidate_empty_disk(state, y)?;
        if arc_in_disk_interior(&arc, witness)
            && (segments_cross(v, py, px, z) || segments_cross(v, py, pp, z))
        {
            state.edge_set.remove(&y);
            removed.push(py);
            state.certificates.push(RemovalCertificate {
                removed_edge: (state.id, state.neighborhood.ids[y]),
                v,
                y: py,
                triggering_center: center,
                boundary_pair: (px, pp),
                z_prime: z,
                witness_disk: witness,
            });
        }
    }
    state
        .trace
        .record("prune", input, Digest::new().point_set(removed));
    Ok(())
}
