//! Unit-disk graphs, Euclidean-weighted neighborhoods `N_k(u)`, and shortest paths.

use alloc::collections::{BTreeSet, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::geom::Point;
use crate::{Error, Result, EPS};

/// An indexed set of distinct points.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PointSet {
    pub points: Vec<Point>,
    /// Generator seed, when the set came from one.
    pub seed: Option<u64>,
}

impl PointSet {
    /// Validates finiteness, distinctness, and that no pairwise distance is
    /// within [`EPS`] of the radio range.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let d = points[i].dist(points[j]);
                if d == 0.0 {
                    return Err(Error::DuplicatePoint {
                        first: i,
                        second: j,
                    });
                }
                if (d - 1.0).abs() <= EPS {
                    return Err(Error::AmbiguousRange {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(PointSet { points, seed: None })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The subset at `ids`, in the given order; no revalidation needed.
    pub fn restrict(&self, ids: &[usize]) -> PointSet {
        PointSet {
            points: ids.iter().map(|&i| self.points[i]).collect(),
            seed: self.seed,
        }
    }
}

impl core::ops::Index<usize> for PointSet {
    type Output = Point;
    fn index(&self, i: usize) -> &Point {
        &self.points[i]
    }
}

/// An undirected graph on vertex indices with Euclidean edge lengths.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Graph {
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl Graph {
    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            adjacency: alloc::vec![Vec::new(); vertex_count],
        }
    }

    /// Builds a graph on `ps` from unordered edges; duplicates and self-loops are dropped.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(ps: &PointSet, edges: I) -> Self {
        let set: BTreeSet<(usize, usize)> = edges
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        let mut g = Graph::empty(ps.len());
        for (u, v) in set {
            let len = ps[u].dist(ps[v]);
            g.adjacency[u].push((v, len));
            g.adjacency[v].push((u, len));
        }
        for adj in &mut g.adjacency {
            adj.sort_by_key(|&(w, _)| w);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// `(neighbor, length)` pairs sorted by neighbor.
    pub fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adjacency[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|adj| adj.binary_search_by_key(&v, |&(w, _)| w).is_ok())
    }

    /// Edges as `(lo, hi)` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, adj)| {
            adj.iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, _)| (u, v))
        })
    }

    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges().collect()
    }

    /// Single-source Euclidean shortest-path distances; `None` for unreachable vertices.
    /// Exploration stops past `limit`.
    pub fn distances_from(&self, source: usize, limit: f64) -> Vec<Option<f64>> {
        let mut dist: Vec<Option<f64>> = alloc::vec![None; self.vertex_count()];
        let mut heap = BinaryHeap::new();
        dist[source] = Some(0.0);
        heap.push(Entry(0.0, source));
        while let Some(Entry(d, u)) = heap.pop() {
            if dist[u].is_some_and(|best| d > best) {
                continue;
            }
            for &(v, w) in &self.adjacency[u] {
                let nd = d + w;
                if nd > limit {
                    continue;
                }
                if dist[v].is_none_or(|old| nd < old) {
                    dist[v] = Some(nd);
                    heap.push(Entry(nd, v));
                }
            }
        }
        dist
    }

    /// Vertices of each connected component, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = alloc::vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &(v, _) in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Min-heap entry ordered by distance.
#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `UDG(V)`: an edge between every pair at distance at most 1.
pub fn build_udg(ps: &PointSet) -> Graph {
    let n = ps.len();
    // sweep over x-sorted points; pairs more than 1 apart in x are skipped
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| ps[i].x.total_cmp(&ps[j].x));
    let mut edges = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if ps[j].x - ps[i].x > 1.0 {
                break;
            }
            if ps[i].dist(ps[j]) <= 1.0 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(ps, edges)
}

/// `N_k(u)`: all vertices whose weighted shortest-path distance from `u` is at most `k`.
/// Sorted, and always contains `u`.
pub fn neighborhood(g: &Graph, u: usize, k: u32) -> Vec<usize> {
    g.distances_from(u, f64::from(k))
        .iter()
        .enumerate()
        .filter_map(|(v, d)| d.map(|_| v))
        .collect()
}

/// `δ(u, v)` in `g`; `None` when unreachable.
pub fn shortest_path_length(g: &Graph, u: usize, v: usize) -> Option<f64> {
    g.distances_from(u, f64::INFINITY)[v]
}
