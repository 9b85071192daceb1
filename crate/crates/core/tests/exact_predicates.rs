//! `orient` and `in_circle` against determinants evaluated in exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use pldg_core::geom::{in_circle, orient};
use pldg_core::Point;
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn q(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite")
}

fn sign(v: &BigRational) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

fn exact_orient(p: Point, r: Point, s: Point) -> i8 {
    let (ax, ay) = (q(r.x) - q(p.x), q(r.y) - q(p.y));
    let (bx, by) = (q(s.x) - q(p.x), q(s.y) - q(p.y));
    sign(&(ax * by - ay * bx))
}

fn exact_in_circle(a: Point, b: Point, c: Point, d: Point) -> i8 {
    let row = |p: Point| {
        let x = q(p.x) - q(d.x);
        let y = q(p.y) - q(d.y);
        let l = &x * &x + &y * &y;
        (x, y, l)
    };
    let (ax, ay, al) = row(a);
    let (bx, by, bl) = row(b);
    let (cx, cy, cl) = row(c);
    let det = &ax * (&by * &cl - &bl * &cy) - &ay * (&bx * &cl - &bl * &cx)
        + &al * (&bx * &cy - &by * &cx);
    sign(&det) * exact_orient(a, b, c)
}

/// `v` moved by `k` units in the last place.
fn nudge(v: f64, k: i64) -> f64 {
    if v == 0.0 {
        let tiny = f64::from_bits(k.unsigned_abs());
        return if k < 0 { -tiny } else { tiny };
    }
    let bits = v.to_bits() as i64;
    let moved = if v >= 0.0 { bits + k } else { bits - k };
    f64::from_bits(moved as u64)
}

fn random_point(rng: &mut StdRng) -> Point {
    Point::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0))
}

#[test]
fn rational_oracle_is_sane() {
    assert!(
        BigRational::from_float(0.1).unwrap()
            != BigRational::new(BigInt::from(1), BigInt::from(10))
    );
    let (a, b, c) = (
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(0.0, 1.0),
    );
    assert_eq!(exact_orient(a, b, c), 1);
    assert_eq!(exact_in_circle(a, b, c, Point::new(1.0, 1.0)), 0);
    assert_eq!(exact_in_circle(a, b, c, Point::new(0.25, 0.25)), 1);
}

#[test]
fn orient_matches_exact_on_near_collinear_triples() {
    let mut rng = StdRng::seed_from_u64(0x0123);
    let mut zeros = 0;
    for i in 0..20_000 {
        let (p, r, t) = if i % 2 == 0 {
            (
                random_point(&mut rng),
                random_point(&mut rng),
                rng.gen_range(-2.0..3.0),
            )
        } else {
            // dyadic grid: the unperturbed third point is exactly collinear
            let g = |rng: &mut StdRng| {
                Point::new(
                    rng.gen_range(-64..64) as f64 / 8.0,
                    rng.gen_range(-64..64) as f64 / 8.0,
                )
            };
            (g(&mut rng), g(&mut rng), rng.gen_range(-2..4) as f64)
        };
        let s = Point::new(
            nudge(p.x + t * (r.x - p.x), rng.gen_range(-3..=3)),
            nudge(p.y + t * (r.y - p.y), rng.gen_range(-3..=3)),
        );
        let exact = exact_orient(p, r, s);
        zeros += (exact == 0) as usize;
        assert_eq!(orient(p, r, s), exact, "{p:?} {r:?} {s:?}");
    }
    assert!(
        zeros > 0,
        "the sample never hit an exactly collinear triple"
    );
}

#[test]
fn in_circle_matches_exact_on_near_cocircular_quadruples() {
    let mut rng = StdRng::seed_from_u64(0x4567);
    let mut checked = 0;
    while checked < 20_000 {
        let c = random_point(&mut rng);
        let r: f64 = rng.gen_range(0.1..5.0);
        let on = |rng: &mut StdRng| {
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            Point::new(
                nudge(c.x + r * t.cos(), rng.gen_range(-2..=2)),
                nudge(c.y + r * t.sin(), rng.gen_range(-2..=2)),
            )
        };
        let (a, b, cc, d) = (on(&mut rng), on(&mut rng), on(&mut rng), on(&mut rng));
        if exact_orient(a, b, cc) == 0 {
            assert!(in_circle(a, b, cc, d).is_err());
            continue;
        }
        assert_eq!(
            in_circle(a, b, cc, d).unwrap(),
            exact_in_circle(a, b, cc, d)
        );
        checked += 1;
    }
}

#[test]
fn in_circle_matches_exact_on_integer_grid_cocircles() {
    // points of the circle x² + y² = 25 are exactly cocircular
    let pts = [
        (5.0, 0.0),
        (3.0, 4.0),
        (0.0, 5.0),
        (-4.0, 3.0),
        (-5.0, 0.0),
        (0.0, -5.0),
        (4.0, -3.0),
    ];
    let pts: Vec<Point> = pts.iter().map(|&(x, y)| Point::new(x, y)).collect();
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            for k in 0..pts.len() {
                for l in 0..pts.len() {
                    let (a, b, c, d) = (pts[i], pts[j], pts[k], pts[l]);
                    if exact_orient(a, b, c) == 0 {
                        continue;
                    }
                    assert_eq!(in_circle(a, b, c, d).unwrap(), 0);
                }
            }
        }
    }
}

fn coord() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e3..1e3f64,
        -1.0..1.0f64,
        (-1000i32..1000).prop_map(|v| v as f64 * 0.125)
    ]
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn orient_agrees_with_exact(p in point(), r in point(), s in point()) {
        prop_assert_eq!(orient(p, r, s), exact_orient(p, r, s));
    }

    #[test]
    fn in_circle_agrees_with_exact(a in point(), b in point(), c in point(), d in point()) {
        prop_assume!(exact_orient(a, b, c) != 0);
        prop_assert_eq!(in_circle(a, b, c, d).unwrap(), exact_in_circle(a, b, c, d));
    }
}
