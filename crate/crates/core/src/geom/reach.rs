//! Distance facts about small configurations that the pruning argument relies on.

use super::{orient, segments_cross, Disk, Point};

/// For crossing segments `uv` and `wz` of length at most 1, the index into
/// `[u, v, w, z]` of a point within distance 1 of the other three.
///
/// Returns `None` when the segments do not cross, either one is longer than
/// 1, or (contrary to the four-point property) no such point exists.
pub fn crossing_hub(u: Point, v: Point, w: Point, z: Point) -> Option<usize> {
    if u.dist(v) > 1.0 || w.dist(z) > 1.0 || !segments_cross(u, v, w, z) {
        return None;
    }
    let s = [u, v, w, z];
    (0..4).find(|&i| (0..4).all(|j| s[i].dist(s[j]) <= 1.0))
}

/// Whether `x` lies in the closed region of `d` cut off by the chord `pq` on
/// the side of the minor arc. `p` and `q` must lie on ∂`d`.
///
/// When the chord is a diameter both halves qualify; the one to the right of
/// `p → q` is used.
pub fn in_minor_cap(p: Point, q: Point, d: Disk, x: Point) -> bool {
    if !d.contains_closed(x) {
        return false;
    }
    let center_side = orient(p, q, d.center);
    let side = orient(p, q, x);
    side == 0 || side == -center_side || (center_side == 0 && side < 0)
}
