//! Synchronous one-round execution over all nodes.
//!
//! Every node runs its broadcast phase, each message is delivered to exactly
//! `N_1(sender) \ {sender}`, and after a barrier every node runs its prune
//! phase. The [`Executor`] decides how node work is scheduled; results never
//! depend on it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::protocol::{
    broadcast_phase, prune_phase, BroadcastMessage, Diagnostic, Neighborhood, NodeState,
    ProtocolOptions, RemovalCertificate, Variant,
};
use crate::trace::Trace;
use crate::udg::{build_udg, neighborhood, Graph, PointSet};
use crate::{Error, Result};

/// Runs a batch of independent node computations.
pub trait Executor: Sync {
    fn map<T, U, F>(&self, items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(usize, T) -> U + Sync + Send;
}

/// Runs node work in index order on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, U, F>(&self, items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(usize, T) -> U + Sync + Send,
    {
        items
            .into_iter()
            .enumerate()
            .map(|(i, t)| f(i, t))
            .collect()
    }
}

/// Outcome of one full run.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub variant: Variant,
    /// Point locations broadcast by each node.
    pub per_node_message_count: Vec<usize>,
    /// Synchronized broadcasting steps executed.
    pub round_count: usize,
    /// Surviving neighbors of each node, as global ids.
    pub final_edge_sets: Vec<BTreeSet<usize>>,
    /// Edges of each node's local triangulation incident on it, before pruning.
    pub initial_edge_sets: Vec<BTreeSet<usize>>,
    pub messages: Vec<Option<BroadcastMessage>>,
    pub certificates: Vec<RemovalCertificate>,
    pub diagnostics: Vec<(usize, Diagnostic)>,
    pub traces: Vec<Trace>,
    /// Whether the unit-disk graph was connected.
    pub connected: bool,
}

impl RunReport {
    /// The union of all `E(v)`.
    pub fn graph(&self, ps: &PointSet) -> Graph {
        Graph::from_edges(
            ps,
            self.final_edge_sets
                .iter()
                .enumerate()
                .flat_map(|(v, set)| set.iter().map(move |&y| (v, y))),
        )
    }

    pub fn max_messages(&self) -> usize {
        self.per_node_message_count
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
    }
}

/// Runs `variant` on every node of `ps` sequentially with default options.
pub fn run(ps: &PointSet, variant: Variant) -> Result<RunReport> {
    run_with(ps, variant, &Sequential, ProtocolOptions::default())
}

pub fn run_with<E: Executor>(
    ps: &PointSet,
    variant: Variant,
    executor: &E,
    options: ProtocolOptions,
) -> Result<RunReport> {
    let n = ps.len();
    let udg = build_udg(ps);

    let neighborhoods: Vec<Neighborhood> = (0..n)
        .map(|v| Neighborhood::from_udg(ps, &udg, v))
        .collect();
    let broadcast: Vec<(NodeState, Option<BroadcastMessage>)> = executor
        .map(neighborhoods, |v, nb| {
            broadcast_phase(v, nb, variant, options)
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let round_count = 1;

    let (states, messages): (Vec<NodeState>, Vec<Option<BroadcastMessage>>) =
        broadcast.into_iter().unzip();
    let per_node_message_count: Vec<usize> = messages
        .iter()
        .map(|m| m.as_ref().map_or(0, BroadcastMessage::message_count))
        .collect();
    if let Some(&worst) = per_node_message_count.iter().max() {
        assert!(
            worst <= variant.message_budget(),
            "{variant} node broadcast {worst} locations"
        );
    }
    let initial_edge_sets: Vec<BTreeSet<usize>> =
        states.iter().map(NodeState::edge_targets).collect();

    // barrier: every message exists before any node prunes
    let inboxes: Vec<(NodeState, Vec<BroadcastMessage>)> = states
        .into_iter()
        .map(|state| {
            let inbox = udg
                .neighbors(state.id)
                .iter()
                .filter_map(|&(x, _)| messages[x].clone())
                .collect();
            (state, inbox)
        })
        .collect();
    let pruned: Vec<NodeState> = executor
        .map(inboxes, |_, (state, inbox)| {
            prune_phase(state, &inbox, variant, options)
        })
        .into_iter()
        .collect::<Result<_>>()?;

    let mut report = RunReport {
        variant,
        per_node_message_count,
        round_count,
        final_edge_sets: Vec::with_capacity(n),
        initial_edge_sets,
        messages,
        certificates: Vec::new(),
        diagnostics: Vec::new(),
        traces: Vec::with_capacity(n),
        connected: udg.is_connected(),
    };
    for state in pruned {
        report.final_edge_sets.push(state.edge_targets());
        report.certificates.extend(state.certificates);
        report
            .diagnostics
            .extend(state.diagnostics.into_iter().map(|d| (state.id, d)));
        report.traces.push(state.trace);
    }
    Ok(report)
}

/// Result of re-running the protocol on a neighborhood of one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityOutcome {
    /// Size of `N_k(u)`.
    pub restricted_size: usize,
    /// First trace entry at which `u` behaved differently, if any.
    pub first_difference: Option<usize>,
}

impl LocalityOutcome {
    pub fn holds(&self) -> bool {
        self.first_difference.is_none()
    }
}

/// Re-runs the whole protocol on `N_k(u)` and compares `u`'s trace to `full`.
pub fn locality_probe(
    ps: &PointSet,
    full: &RunReport,
    u: usize,
    k: u32,
    options: ProtocolOptions,
) -> Result<LocalityOutcome> {
    if u >= ps.len() {
        return Err(Error::InvalidVertex(u));
    }
    let udg = build_udg(ps);
    let ids = neighborhood(&udg, u, k);
    let local_u = ids.binary_search(&u).expect("u is in its own neighborhood");
    let restricted = ps.restrict(&ids);
    let sub = run_with(&restricted, full.variant, &Sequential, options)?;
    Ok(LocalityOutcome {
        restricted_size: ids.len(),
        first_difference: full.traces[u].first_difference(&sub.traces[local_u]),
    })
}

/// Whether `u`'s computation is unchanged when the input shrinks to `N_2(u)`.
pub fn locality_check(ps: &PointSet, variant: Variant, u: usize) -> Result<bool> {
    let full = run(ps, variant)?;
    Ok(locality_probe(ps, &full, u, 2, ProtocolOptions::default())?.holds())
}

/// Maximum per-node message count and the histogram `count → nodes`.
pub fn count_messages(report: &RunReport) -> (usize, BTreeMap<usize, usize>) {
    let mut hist = BTreeMap::new();
    for &c in &report.per_node_message_count {
        *hist.entry(c).or_insert(0) += 1;
    }
    (report.max_messages(), hist)
}
