use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{in_circle, orient, Point};
use crate::{Error, Result};

/// A triangle by vertex index, stored counterclockwise starting at its smallest index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Triangle {
    /// Canonical form of a counterclockwise triple.
    fn from_ccw(a: usize, b: usize, c: usize) -> Self {
        if a < b && a < c {
            Triangle { a, b, c }
        } else if b < a && b < c {
            Triangle { a: b, b: c, c: a }
        } else {
            Triangle { a: c, b: a, c: b }
        }
    }

    pub fn vertices(&self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a == v || self.b == v || self.c == v
    }

    /// The two other vertices, in counterclockwise order after `v`.
    pub fn opposite(&self, v: usize) -> Option<(usize, usize)> {
        match v {
            _ if v == self.a => Some((self.b, self.c)),
            _ if v == self.b => Some((self.c, self.a)),
            _ if v == self.c => Some((self.a, self.b)),
            _ => None,
        }
    }
}

/// The Delaunay triangulation of a small point set.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalTriangulation {
    pub points: Vec<Point>,
    pub faces: BTreeSet<Triangle>,
    /// Unordered edges stored as `(lo, hi)`.
    pub edges: BTreeSet<(usize, usize)>,
    /// For each directed edge `(a, b)`, the vertex completing the face on its left.
    apex: BTreeMap<(usize, usize), usize>,
}

impl LocalTriangulation {
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Third vertex of the face to the left of the directed edge `a → b`, if any.
    pub fn left_apex(&self, a: usize, b: usize) -> Option<usize> {
        self.apex.get(&(a, b)).copied()
    }

    /// Neighbors of `v` in the triangulation, in increasing index order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.into_iter()
    }

    pub fn faces_at(&self, v: usize) -> impl Iterator<Item = &Triangle> + '_ {
        self.faces.iter().filter(move |t| t.contains(v))
    }
}

/// Delaunay triangulation by gift wrapping with exact predicates.
///
/// Starting from a nearest-neighbor edge, each directed edge is completed by
/// the left-side point whose circle through the edge contains no other
/// left-side point. Runs in `O(n²)`, which suits neighborhoods of tens of points.
///
/// Fewer than two points give an empty triangulation. Duplicates, and any
/// collinear or cocircular configuration met during construction, are errors.
pub fn delaunay(pts: &[Point]) -> Result<LocalTriangulation> {
    let n = pts.len();
    let mut tri = LocalTriangulation {
        points: pts.to_vec(),
        faces: BTreeSet::new(),
        edges: BTreeSet::new(),
        apex: BTreeMap::new(),
    };
    if pts.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    if n < 2 {
        return Ok(tri);
    }
    // sort-based duplicate scan
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| pts[i].total_cmp(&pts[j]));
    for w in order.windows(2) {
        if pts[w[0]] == pts[w[1]] {
            return Err(Error::DuplicatePoint {
                first: w[0].min(w[1]),
                second: w[0].max(w[1]),
            });
        }
    }

    let start = order[0];
    let nearest = (0..n)
        .filter(|&j| j != start)
        .min_by(|&i, &j| {
            pts[start]
                .dist2(pts[i])
                .total_cmp(&pts[start].dist2(pts[j]))
        })
        .expect("n >= 2");
    if n == 2 {
        tri.edges.insert((start.min(nearest), start.max(nearest)));
        return Ok(tri);
    }

    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut queue = alloc::vec![(start, nearest), (nearest, start)];
    tri.edges.insert((start.min(nearest), start.max(nearest)));
    while let Some((a, b)) = queue.pop() {
        if done.contains(&(a, b)) {
            continue;
        }
        let apex = left_apex(pts, a, b)?;
        done.insert((a, b));
        let Some(c) = apex else { continue };
        done.insert((b, c));
        done.insert((c, a));
        for (s, t) in [(a, b), (b, c), (c, a)] {
            tri.apex.insert((s, t), c_of(s, t, a, b, c));
            tri.edges.insert((s.min(t), s.max(t)));
            if !done.contains(&(t, s)) {
                queue.push((t, s));
            }
        }
        tri.faces.insert(Triangle::from_ccw(a, b, c));
    }
    Ok(tri)
}

fn c_of(s: usize, t: usize, a: usize, b: usize, c: usize) -> usize {
    [a, b, c].into_iter().find(|&v| v != s && v != t).unwrap()
}

fn left_apex(pts: &[Point], a: usize, b: usize) -> Result<Option<usize>> {
    let (pa, pb) = (pts[a], pts[b]);
    let mut best: Option<usize> = None;
    for (w, &pw) in pts.iter().enumerate() {
        if w == a || w == b {
            continue;
        }
        match orient(pa, pb, pw) {
            0 => {
                return Err(Error::Collinear {
                    a: pa,
                    b: pb,
                    c: pw,
                })
            }
            o if o < 0 => continue,
            _ => {}
        }
        best = match best {
            None => Some(w),
            Some(c) => match in_circle(pa, pb, pts[c], pw)? {
                0 => {
                    return Err(Error::Cocircular {
                        a: pa,
                        b: pb,
                        c: pts[c],
                        d: pw,
                    })
                }
                s if s > 0 => Some(w),
                _ => Some(c),
            },
        };
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::{Rng, SeedableRng};

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    /// Exhaustive oracle: a triple is a face iff its circumdisk has no other point inside.
    fn brute_faces(pts: &[Point]) -> BTreeSet<Triangle> {
        let n = pts.len();
        let mut out = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let empty = (0..n)
                        .filter(|&m| m != i && m != j && m != k)
                        .all(|m| in_circle(pts[i], pts[j], pts[k], pts[m]).unwrap() < 0);
                    if empty {
                        let t = if orient(pts[i], pts[j], pts[k]) > 0 {
                            Triangle::from_ccw(i, j, k)
                        } else {
                            Triangle::from_ccw(i, k, j)
                        };
                        out.insert(t);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn single_triangle() {
        let t = delaunay(&[p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]).unwrap();
        assert_eq!(t.faces.len(), 1);
        assert_eq!(
            t.faces.iter().next().unwrap(),
            &Triangle { a: 0, b: 1, c: 2 }
        );
        assert_eq!(t.edges.len(), 3);
    }

    #[test]
    fn two_points() {
        let t = delaunay(&[p(0.0, 0.0), p(1.0, 0.0)]).unwrap();
        assert!(t.faces.is_empty());
        assert_eq!(t.edges.iter().copied().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn four_points_match_enumeration() {
        let pts = [p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(1.1, 1.1)];
        let t = delaunay(&pts).unwrap();
        let want = brute_faces(&pts);
        // frozen from the enumeration oracle: the diagonal is 1-2
        assert_eq!(
            want,
            [Triangle { a: 0, b: 1, c: 2 }, Triangle { a: 1, b: 3, c: 2 }]
                .into_iter()
                .collect()
        );
        assert_eq!(t.faces, want);
        assert_eq!(
            t.edges.iter().copied().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
        );
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            delaunay(&[p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)]),
            Err(Error::Collinear { .. })
        ));
        assert!(matches!(
            delaunay(&[p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]),
            Err(Error::Cocircular { .. })
        ));
        assert_eq!(
            delaunay(&[p(0.0, 0.0), p(1.0, 0.0), p(0.0, 0.0)]),
            Err(Error::DuplicatePoint {
                first: 0,
                second: 2
            })
        );
        assert!(delaunay(&[p(0.0, 0.0)]).unwrap().edges.is_empty());
    }

    #[test]
    fn random_sets_match_enumeration() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(3..=12);
            let pts: Vec<Point> = (0..n)
                .map(|_| p(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let t = delaunay(&pts).unwrap();
            assert_eq!(t.faces, brute_faces(&pts));
            // every face is empty and every edge is adjacent to a face
            for f in &t.faces {
                for m in 0..n {
                    if !f.contains(m) {
                        assert_eq!(in_circle(pts[f.a], pts[f.b], pts[f.c], pts[m]).unwrap(), -1);
                    }
                }
            }
            for &(a, b) in &t.edges {
                assert!(t.left_apex(a, b).is_some() || t.left_apex(b, a).is_some());
            }
            // Euler: E = 3n - 3 - h, F = 2n - 2 - h
            let hull = t
                .edges
                .iter()
                .filter(|&&(a, b)| t.left_apex(a, b).is_none() || t.left_apex(b, a).is_none())
                .count();
            assert_eq!(t.edges.len(), 3 * n - 3 - hull);
            assert_eq!(t.faces.len(), 2 * n - 2 - hull);
        }
    }
}
