//! Planar geometry with exact decisions where topology depends on them.
//!
//! [`orient`] and [`in_circle`] return the sign of the exact determinant
//! (adaptive-precision evaluation). Constructions such as circumcenters and
//! circle intersections are plain `f64` and are compared with [`EPS`].

pub(crate) mod arc;
mod delaunay;
mod reach;

use core::fmt;
use core::ops::{Add, Mul, Sub};

use robust::Coord;

use crate::{Error, Result, EPS};

pub use arc::{
    arc_in_disk_interior, arc_outside_disk, choose_z_prime, choose_z_prime_with, ArcSpan,
    CircularArc, ZRule,
};
pub use delaunay::{delaunay, LocalTriangulation, Triangle};
pub use reach::{crossing_hub, in_minor_cap};

/// A location in the plane. The unit of length is the radio range.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Like [`Point::new`] but rejects NaN and infinite coordinates.
    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn dist2(self, other: Point) -> f64 {
        (self - other).norm2()
    }

    /// Counterclockwise rotation by a right angle.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    /// Polar angle of `self - origin`, normalized to `[0, 2π)`.
    pub fn angle_from(self, origin: Point) -> f64 {
        let d = self - origin;
        normalize_angle(libm::atan2(d.y, d.x))
    }

    /// Lexicographic total order on `(x, y)`, used wherever a canonical order is needed.
    pub fn total_cmp(&self, other: &Point) -> core::cmp::Ordering {
        self.x.total_cmp(&other.x).then(self.y.total_cmp(&other.y))
    }

    pub(crate) fn coord(self) -> Coord<f64> {
        Coord {
            x: self.x,
            y: self.y,
        }
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub(crate) fn normalize_angle(a: f64) -> f64 {
    let mut r = libm::fmod(a, core::f64::consts::TAU);
    if r < 0.0 {
        r += core::f64::consts::TAU;
    }
    if r >= core::f64::consts::TAU {
        0.0
    } else {
        r
    }
}

/// Where a point sits relative to a closed disk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Interior,
    Boundary,
    Exterior,
}

/// The disk `D(center; radius)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Point, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Disk { center, radius }
    }

    /// `D(center; |center p|)`: the disk centered at `center` with `p` on its boundary.
    pub fn through(center: Point, p: Point) -> Self {
        Disk::new(center, center.dist(p))
    }

    /// The circumdisk `D(a, b, c)`.
    pub fn circumscribed(a: Point, b: Point, c: Point) -> Result<Self> {
        let center = circumcenter(a, b, c)?;
        Ok(Disk::through(center, a))
    }

    /// Boundary tolerance, relative for large circles.
    pub fn tolerance(&self) -> f64 {
        EPS * self.radius.max(1.0)
    }

    /// Classifies `p` against ∂D with [`Disk::tolerance`].
    pub fn classify(&self, p: Point) -> Membership {
        self.classify_within(p, self.tolerance())
    }

    /// Classifies `p` against ∂D with a boundary band of half-width `tol`.
    pub fn classify_within(&self, p: Point, tol: f64) -> Membership {
        let d = self.center.dist(p) - self.radius;
        if d < -tol {
            Membership::Interior
        } else if d > tol {
            Membership::Exterior
        } else {
            Membership::Boundary
        }
    }

    pub fn contains_closed(&self, p: Point) -> bool {
        self.classify(p) != Membership::Exterior
    }

    pub fn contains_interior(&self, p: Point) -> bool {
        self.classify(p) == Membership::Interior
    }

    pub fn point_at(&self, angle: f64) -> Point {
        self.center + Point::new(libm::cos(angle), libm::sin(angle)) * self.radius
    }
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Sign of the turn `p → q → r`: `+1` left, `-1` right, `0` collinear. Exact.
pub fn orient(p: Point, q: Point, r: Point) -> i8 {
    sign(robust::orient2d(p.coord(), q.coord(), r.coord()))
}

/// Whether `d` is inside (`+1`), on (`0`), or outside (`-1`) the circle through
/// `a`, `b`, `c`, regardless of their orientation. Exact.
pub fn in_circle(a: Point, b: Point, c: Point, d: Point) -> Result<i8> {
    let o = orient(a, b, c);
    if o == 0 {
        return Err(Error::Collinear { a, b, c });
    }
    Ok(o * sign(robust::incircle(a.coord(), b.coord(), c.coord(), d.coord())))
}

/// Center of the circle through `a`, `b`, `c`.
pub fn circumcenter(a: Point, b: Point, c: Point) -> Result<Point> {
    // Adaptive orient2d gives twice the signed area to full relative precision.
    let det = robust::orient2d(a.coord(), b.coord(), c.coord());
    if det == 0.0 {
        return Err(Error::Collinear { a, b, c });
    }
    let ba = b - a;
    let ca = c - a;
    let bl = ba.norm2();
    let cl = ca.norm2();
    let ux = (ca.y * bl - ba.y * cl) / (2.0 * det);
    let uy = (ba.x * cl - ca.x * bl) / (2.0 * det);
    Ok(Point::new(a.x + ux, a.y + uy))
}

/// Proper crossing: the segments are not collinear and share a point in the
/// relative interior of both. Touching at an endpoint does not count.
pub fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o1 * o2 < 0 && o3 * o4 < 0
}

/// Up to two boundary intersection points of a pair of circles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CirclePoints {
    pts: [Point; 2],
    len: usize,
}

impl CirclePoints {
    const NONE: CirclePoints = CirclePoints {
        pts: [Point::new(0.0, 0.0); 2],
        len: 0,
    };

    pub fn as_slice(&self) -> &[Point] {
        &self.pts[..self.len]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Intersections of ∂d1 and ∂d2. Tangency yields a single point.
pub fn circle_circle_intersections(d1: Disk, d2: Disk) -> Result<CirclePoints> {
    let delta = d2.center - d1.center;
    let d = delta.norm();
    let tol = EPS * d1.radius.max(d2.radius).max(1.0);
    if d <= tol {
        if (d1.radius - d2.radius).abs() <= tol {
            return Err(Error::CoincidentCircles);
        }
        return Ok(CirclePoints::NONE);
    }
    let (r1, r2) = (d1.radius, d2.radius);
    if d > r1 + r2 + tol || d < (r1 - r2).abs() - tol {
        return Ok(CirclePoints::NONE);
    }
    let u = delta * (1.0 / d);
    let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let base = d1.center + u * a;
    let h2 = r1 * r1 - a * a;
    let tangent = (d - (r1 + r2)).abs() <= tol || (d - (r1 - r2).abs()).abs() <= tol;
    if tangent || h2 <= 0.0 {
        return Ok(CirclePoints {
            pts: [base, base],
            len: 1,
        });
    }
    let h = libm::sqrt(h2);
    let off = u.perp() * h;
    Ok(CirclePoints {
        pts: [base + off, base - off],
        len: 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQ3: f64 = 1.732_050_807_568_877_2;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn close(a: Point, b: Point) -> bool {
        a.dist(b) < 1e-12
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient(p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)), 1);
        assert_eq!(orient(p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)), 0);
        assert_eq!(orient(p(0.0, 0.0), p(0.0, 1.0), p(1.0, 0.0)), -1);
    }

    #[test]
    fn in_circle_examples() {
        let (a, b, c) = (p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0));
        assert_eq!(in_circle(a, b, c, p(0.25, 0.25)), Ok(1));
        assert_eq!(in_circle(a, b, c, p(1.0, 1.0)), Ok(0));
        assert_eq!(in_circle(a, b, c, p(2.0, 2.0)), Ok(-1));
        // clockwise input gives the same answer
        assert_eq!(in_circle(a, c, b, p(0.25, 0.25)), Ok(1));
        assert!(matches!(
            in_circle(a, b, p(2.0, 0.0), p(0.5, 0.5)),
            Err(Error::Collinear { .. })
        ));
    }

    #[test]
    fn circumcenter_examples() {
        assert!(close(
            circumcenter(p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)).unwrap(),
            p(0.5, 0.5)
        ));
        assert!(close(
            circumcenter(p(0.0, 0.0), p(2.0, 0.0), p(1.0, 1.0)).unwrap(),
            p(1.0, 0.0)
        ));
        assert!(close(
            circumcenter(p(0.0, 0.0), p(1.0, 0.0), p(0.5, SQ3 / 2.0)).unwrap(),
            p(0.5, SQ3 / 6.0)
        ));
        assert!(circumcenter(p(0.0, 0.0), p(1.0, 0.0), p(3.0, 0.0)).is_err());
    }

    #[test]
    fn crossing_examples() {
        assert!(segments_cross(
            p(0.0, 0.0),
            p(1.0, 1.0),
            p(0.0, 1.0),
            p(1.0, 0.0)
        ));
        assert!(!segments_cross(
            p(0.0, 0.0),
            p(1.0, 0.0),
            p(1.0, 0.0),
            p(2.0, 1.0)
        ));
        assert!(!segments_cross(
            p(0.0, 0.0),
            p(2.0, 0.0),
            p(1.0, 0.0),
            p(1.0, 1.0)
        ));
        // overlapping collinear segments are not a crossing
        assert!(!segments_cross(
            p(0.0, 0.0),
            p(2.0, 0.0),
            p(1.0, 0.0),
            p(3.0, 0.0)
        ));
    }

    #[test]
    fn circle_intersection_examples() {
        let unit = Disk::new(p(0.0, 0.0), 1.0);
        let pts = circle_circle_intersections(unit, Disk::new(p(1.0, 0.0), 1.0)).unwrap();
        assert_eq!(pts.len(), 2);
        let s = pts.as_slice();
        let want = [p(0.5, SQ3 / 2.0), p(0.5, -SQ3 / 2.0)];
        assert!(want.iter().all(|w| s.iter().any(|q| close(*q, *w))));

        assert!(
            circle_circle_intersections(unit, Disk::new(p(3.0, 0.0), 1.0))
                .unwrap()
                .is_empty()
        );
        assert!(
            circle_circle_intersections(unit, Disk::new(p(0.0, 0.0), 0.5))
                .unwrap()
                .is_empty()
        );
        assert_eq!(
            circle_circle_intersections(unit, Disk::new(p(2.0, 0.0), 1.0))
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            circle_circle_intersections(unit, unit),
            Err(Error::CoincidentCircles)
        );
    }

    #[test]
    fn disk_membership() {
        let d = Disk::new(p(0.0, 0.0), 1.0);
        assert_eq!(d.classify(p(0.5, 0.0)), Membership::Interior);
        assert_eq!(d.classify(p(1.0, 0.0)), Membership::Boundary);
        assert_eq!(d.classify(p(0.0, 1.5)), Membership::Exterior);
    }

    #[test]
    fn rejects_non_finite() {
        assert_eq!(Point::try_new(f64::NAN, 0.0), Err(Error::NonFinite));
        assert!(Point::try_new(0.0, 1.0).is_ok());
    }
}
