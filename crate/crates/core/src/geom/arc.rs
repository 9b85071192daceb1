use core::f64::consts::{PI, TAU};

use super::{circle_circle_intersections, normalize_angle, Disk, Point};

/// Angular slack when deciding whether a computed angle is strictly inside an arc.
const ANGLE_TOL: f64 = 1e-12;

/// Angular extent of an open arc, counterclockwise from `start` to `end`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ArcSpan {
    Empty,
    Full,
    /// Both angles in `[0, 2π)`; the arc runs counterclockwise and excludes its endpoints.
    Range {
        start: f64,
        end: f64,
    },
}

/// An open arc on the boundary of `circle`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircularArc {
    pub circle: Disk,
    pub span: ArcSpan,
}

impl CircularArc {
    pub fn empty(circle: Disk) -> Self {
        CircularArc {
            circle,
            span: ArcSpan::Empty,
        }
    }

    pub fn full(circle: Disk) -> Self {
        CircularArc {
            circle,
            span: ArcSpan::Full,
        }
    }

    /// The counterclockwise open arc from `start` to `end`. Equal angles give the empty arc.
    pub fn range(circle: Disk, start: f64, end: f64) -> Self {
        let (start, end) = (normalize_angle(start), normalize_angle(end));
        let span = if start == end {
            ArcSpan::Empty
        } else {
            ArcSpan::Range { start, end }
        };
        CircularArc { circle, span }
    }

    pub fn is_empty(&self) -> bool {
        self.span == ArcSpan::Empty
    }

    pub fn start_angle(&self) -> f64 {
        match self.span {
            ArcSpan::Range { start, .. } => start,
            _ => 0.0,
        }
    }

    pub fn sweep(&self) -> f64 {
        match self.span {
            ArcSpan::Empty => 0.0,
            ArcSpan::Full => TAU,
            ArcSpan::Range { start, end } => {
                let s = normalize_angle(end - start);
                if s == 0.0 {
                    TAU
                } else {
                    s
                }
            }
        }
    }

    /// Whether the direction `angle` lies strictly inside the open arc.
    pub fn contains_angle(&self, angle: f64) -> bool {
        self.contains_angle_with(angle, 0.0)
    }

    fn contains_angle_with(&self, angle: f64, tol: f64) -> bool {
        match self.span {
            ArcSpan::Empty => false,
            ArcSpan::Full => true,
            ArcSpan::Range { start, .. } => {
                let off = normalize_angle(angle - start);
                off > tol && off < self.sweep() - tol
            }
        }
    }

    pub fn point_at(&self, angle: f64) -> Point {
        self.circle.point_at(angle)
    }

    /// The point halfway along the arc; `None` for the empty arc.
    pub fn midpoint(&self) -> Option<Point> {
        match self.span {
            ArcSpan::Empty => None,
            _ => Some(self.point_at(self.start_angle() + 0.5 * self.sweep())),
        }
    }

    /// The two endpoints of a proper sub-arc.
    pub fn endpoints(&self) -> Option<(Point, Point)> {
        match self.span {
            ArcSpan::Range { start, end } => Some((self.point_at(start), self.point_at(end))),
            _ => None,
        }
    }

    /// `count` evenly spaced points strictly inside the arc.
    pub fn sample(&self, count: usize) -> impl Iterator<Item = Point> + '_ {
        let sweep = self.sweep();
        let start = self.start_angle();
        let n = if self.is_empty() { 0 } else { count };
        (0..n).map(move |i| self.point_at(start + sweep * (i as f64 + 0.5) / count as f64))
    }

    /// The complementary open arc on the same circle (endpoints excluded from both).
    fn complement(&self) -> CircularArc {
        match self.span {
            ArcSpan::Empty => CircularArc::full(self.circle),
            ArcSpan::Full => CircularArc::empty(self.circle),
            ArcSpan::Range { start, end } => CircularArc::range(self.circle, end, start),
        }
    }

    /// Pieces of `self ∩ other` as `(start, sweep)` pairs; both arcs must share a circle.
    fn intersect(&self, other: &CircularArc) -> ([(f64, f64); 2], usize) {
        let mut out = [(0.0, 0.0); 2];
        let mut n = 0;
        match (self.span, other.span) {
            (ArcSpan::Empty, _) | (_, ArcSpan::Empty) => {}
            (ArcSpan::Full, _) => {
                out[0] = (other.start_angle(), other.sweep());
                n = 1;
            }
            (_, ArcSpan::Full) => {
                out[0] = (self.start_angle(), self.sweep());
                n = 1;
            }
            _ => {
                let (s1, w1) = (self.start_angle(), self.sweep());
                let (s2, w2) = (other.start_angle(), other.sweep());
                for k in [-1.0, 0.0, 1.0] {
                    let lo = s1.max(s2 + k * TAU);
                    let hi = (s1 + w1).min(s2 + k * TAU + w2);
                    if hi > lo && n < 2 {
                        out[n] = (lo, hi - lo);
                        n += 1;
                    }
                }
            }
        }
        (out, n)
    }
}

/// The open part of ∂`carrier` lying strictly outside the closed disk `clip`.
///
/// Two circles meet at most twice, so the result is a single arc, the empty
/// arc (carrier inside clip), or the full circle (no crossing otherwise).
pub fn arc_outside_disk(carrier: Disk, clip: Disk) -> CircularArc {
    let pts = match circle_circle_intersections(carrier, clip) {
        Ok(pts) => pts,
        Err(_) => return CircularArc::empty(carrier),
    };
    if pts.len() < 2 {
        let reach = carrier.center.dist(clip.center) + carrier.radius;
        return if reach <= clip.radius + clip.tolerance() {
            CircularArc::empty(carrier)
        } else {
            CircularArc::full(carrier)
        };
    }
    let [a, b] = [pts.as_slice()[0], pts.as_slice()[1]];
    let ta = a.angle_from(carrier.center);
    let tb = b.angle_from(carrier.center);
    // The carrier point farthest from the clip center is outside; the arc must contain it.
    let far = carrier.center.angle_from(clip.center);
    let arc = CircularArc::range(carrier, ta, tb);
    if arc.contains_angle(far) {
        arc
    } else {
        CircularArc::range(carrier, tb, ta)
    }
}

/// Whether every point of the open `arc` lies in the interior of `d`.
///
/// No boundary intersection may fall strictly inside the arc, the arc midpoint
/// must be interior, and both endpoints must be in the closed disk.
pub fn arc_in_disk_interior(arc: &CircularArc, d: Disk) -> bool {
    if arc.is_empty() {
        return true;
    }
    let pts = match circle_circle_intersections(arc.circle, d) {
        Ok(pts) => pts,
        Err(_) => return false,
    };
    for q in pts.as_slice() {
        if arc.contains_angle_with(q.angle_from(arc.circle.center), ANGLE_TOL) {
            return false;
        }
    }
    let Some(mid) = arc.midpoint() else {
        return true;
    };
    if !d.contains_interior(mid) {
        return false;
    }
    match arc.endpoints() {
        Some((s, e)) => d.contains_closed(s) && d.contains_closed(e),
        None => true,
    }
}

/// How to pick `z'` among the feasible arc points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ZRule {
    /// Angular midpoint of `arc ∩ D(x;1)`, falling back to `arc ∩ D(p;1)`.
    #[default]
    Midpoint,
    /// A pseudo-random feasible point, keyed by the seed and the carrier circle.
    Seeded(u64),
}

/// Picks `z'` on the open `arc` with `|xz'| ≤ 1` or `|pz'| ≤ 1` using [`ZRule::Midpoint`].
pub fn choose_z_prime(arc: &CircularArc, x: Point, p: Point) -> Option<Point> {
    choose_z_prime_with(arc, x, p, ZRule::Midpoint)
}

pub fn choose_z_prime_with(arc: &CircularArc, x: Point, p: Point, rule: ZRule) -> Option<Point> {
    if arc.is_empty() {
        return None;
    }
    let reachable = |q: Point| {
        let inside = arc_outside_disk(arc.circle, Disk::new(q, 1.0)).complement();
        arc.intersect(&inside)
    };
    let (from_x, nx) = reachable(x);
    let (from_p, np) = reachable(p);
    let angle = match rule {
        ZRule::Midpoint => {
            let longest =
                |pieces: &[(f64, f64)]| pieces.iter().copied().max_by(|a, b| a.1.total_cmp(&b.1));
            let (s, w) = longest(&from_x[..nx]).or_else(|| longest(&from_p[..np]))?;
            if w >= TAU {
                PI
            } else {
                s + 0.5 * w
            }
        }
        ZRule::Seeded(seed) => {
            let pieces = from_x[..nx].iter().chain(&from_p[..np]);
            let count = nx + np;
            if count == 0 {
                return None;
            }
            let mut h = seed
                ^ arc.circle.center.x.to_bits().rotate_left(17)
                ^ arc.circle.center.y.to_bits().rotate_left(41);
            let pick = (splitmix64(&mut h) % count as u64) as usize;
            let (s, w) = *pieces.clone().nth(pick)?;
            // stay clear of the open endpoints
            let frac = 0.01 + 0.98 * ((splitmix64(&mut h) >> 11) as f64 / (1u64 << 53) as f64);
            s + frac * w
        }
    };
    let z = arc.point_at(angle);
    Some(z)
}

pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
