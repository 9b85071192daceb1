//! Plane localized Delaunay graphs over unit-disk graphs.
//!
//! Every node of a wireless network, modeled as a point with radio range 1,
//! triangulates its one-hop neighborhood, broadcasts the circumcenters of its
//! wide-angled local faces in a single round, and then prunes the incident
//! edges that could cross an edge it cannot see. The union of the surviving
//! edges is a plane, consistent supergraph of the unit Delaunay graph and
//! therefore a `4π√3/9`-spanner of the unit-disk graph.
//!
//! The crate is `no_std` (it needs `alloc`). Modules:
//!
//! - [`geom`]: exact predicates, circles, arcs, and the local Delaunay triangulation.
//! - [`udg`]: point sets, unit-disk graphs, weighted neighborhoods, and shortest paths.
//! - [`protocol`]: the per-node broadcast and prune phases of both protocol variants.
//! - [`sim`]: the synchronous one-round engine, message accounting, and locality checks.
//! - [`verify`]: brute-force oracles and property checks for the final graph.

#![no_std]

extern crate alloc;

mod error;
pub mod geom;
pub mod protocol;
pub mod sim;
pub mod trace;
pub mod udg;
pub mod verify;

pub use error::Error;
pub use geom::{CircularArc, Disk, LocalTriangulation, Point, Triangle};
pub use protocol::{BroadcastMessage, NodeState, RemovalCertificate, Variant};
pub use sim::{RunReport, Sequential};
pub use udg::{Graph, PointSet};
pub use verify::VerificationVerdict;

/// `4π√3/9`, the stretch bound of the unit Delaunay graph.
pub const SPANNER_BOUND: f64 = 2.418_399_152_312_290_3;

/// Absolute/relative tolerance for metric (non-predicate) decisions.
pub const EPS: f64 = 1e-9;

pub type Result<T> = core::result::Result<T, Error>;
