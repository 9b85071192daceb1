//! Random instances with clearance from every degeneracy the metric tolerance cares about.

use std::collections::HashSet;

use pldg_core::protocol::Neighborhood;
use pldg_core::sim::run;
use pldg_core::udg::{build_udg, Graph};
use pldg_core::{Disk, Point, PointSet, Variant, EPS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::config::{ExperimentConfig, GeneratorKind};
use crate::error::{PldgError, Result};

/// Whole-instance resamples before giving up.
pub const MAX_ATTEMPTS: usize = 1000;

/// Spread of each cluster of the clustered generator.
const CLUSTER_SIGMA: f64 = 0.5;
/// Generated circumradii above this are treated as near-collinear.
const MAX_CIRCUMRADIUS: f64 = 1e4;

/// The instance for trial `t` of `config`.
pub fn generate(config: &ExperimentConfig, t: usize) -> Result<PointSet> {
    config.validate()?;
    let seed = config.trial_seed(t);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = config.clearance * EPS;
    let mut reason = String::new();
    for _ in 0..MAX_ATTEMPTS {
        let pts = sample(config, &mut rng);
        match check(pts, tol) {
            Ok(ps) => return Ok(ps.with_seed(seed)),
            Err(why) => reason = why,
        }
    }
    Err(PldgError::GenerationExhausted {
        attempts: MAX_ATTEMPTS,
        reason,
    })
}

fn sample(config: &ExperimentConfig, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let side = config.side;
    let uniform =
        |rng: &mut ChaCha8Rng| Point::new(rng.gen_range(0.0..side), rng.gen_range(0.0..side));
    match config.generator {
        GeneratorKind::Uniform => (0..config.n).map(|_| uniform(rng)).collect(),
        GeneratorKind::Clustered => {
            let k = config.n.div_ceil(8);
            let centers: Vec<Point> = (0..k).map(|_| uniform(rng)).collect();
            let normal = Normal::new(0.0, CLUSTER_SIGMA).expect("positive spread");
            (0..config.n)
                .map(|i| loop {
                    let c = centers[i % k];
                    let p = Point::new(c.x + normal.sample(rng), c.y + normal.sample(rng));
                    if (0.0..side).contains(&p.x) && (0.0..side).contains(&p.y) {
                        break p;
                    }
                })
                .collect()
        }
    }
}

/// Accepts `pts` if it is valid, with every check made at clearance `tol`.
pub fn check(pts: Vec<Point>, tol: f64) -> std::result::Result<PointSet, String> {
    let ps = PointSet::new(pts).map_err(|e| e.to_string())?;
    range_clearance(&ps, tol)?;
    let udg = build_udg(&ps);
    if !udg.is_connected() {
        return Err("unit-disk graph is disconnected".into());
    }
    triangle_clearance(&ps, &udg, tol)?;
    run(&ps, Variant::PldgPrime).map_err(|e| e.to_string())?;
    Ok(ps)
}

/// No pairwise distance within `tol` of the radio range.
pub fn range_clearance(ps: &PointSet, tol: f64) -> std::result::Result<(), String> {
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            if (ps[i].dist(ps[j]) - 1.0).abs() <= tol {
                return Err(format!("|p{i} p{j}| is within {tol:e} of 1"));
            }
        }
    }
    Ok(())
}

/// Clearance of everything any node can triangulate, in the full instance or
/// in any sub-instance: no near-collinear triple inside an `N_v`, no point
/// near the circle through such a triple, and no pair of neighbors seen from
/// `v` at an angle near `π/3`.
pub fn triangle_clearance(ps: &PointSet, udg: &Graph, tol: f64) -> std::result::Result<(), String> {
    let mut triples = HashSet::new();
    for v in 0..ps.len() {
        let nb = Neighborhood::from_udg(ps, udg, v);
        let pts = &nb.points;
        let o = pts[nb.center];
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                if a != nb.center && b != nb.center {
                    let (du, dw) = (pts[a] - o, pts[b] - o);
                    let cos = du.dot(dw) / (du.norm() * dw.norm());
                    if (cos - 0.5).abs() <= tol {
                        return Err(format!("angle near π/3 at {v}"));
                    }
                }
                for c in b + 1..pts.len() {
                    if min_altitude(pts[a], pts[b], pts[c]) <= tol {
                        return Err(format!("near-collinear triple in N_{v}"));
                    }
                    triples.insert([nb.ids[a], nb.ids[b], nb.ids[c]]);
                }
            }
        }
    }
    for [a, b, c] in triples {
        let d = Disk::circumscribed(ps[a], ps[b], ps[c]).map_err(|e| e.to_string())?;
        if d.radius > MAX_CIRCUMRADIUS {
            return Err(format!("circumradius {:e} of ({a}, {b}, {c})", d.radius));
        }
        let band = tol * d.radius.max(1.0);
        let (lo, hi) = ((d.radius - band).powi(2), (d.radius + band).powi(2));
        for (i, &q) in ps.points.iter().enumerate() {
            let d2 = q.dist2(d.center);
            if (lo..=hi).contains(&d2) && i != a && i != b && i != c {
                return Err(format!("p{i} is near the circle through ({a}, {b}, {c})"));
            }
        }
    }
    Ok(())
}

/// Smallest altitude of the triangle.
fn min_altitude(a: Point, b: Point, c: Point) -> f64 {
    let area2 = (b - a).cross(c - a).abs();
    let longest = a.dist(b).max(b.dist(c)).max(c.dist(a));
    area2 / longest
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_in_a_small_square() {
        let cfg = ExperimentConfig {
            n: 2,
            side: 0.5,
            ..Default::default()
        };
        let ps = generate(&cfg, 0).unwrap();
        assert_eq!(ps.len(), 2);
        assert!(ps[0].dist(ps[1]) < 1.0);
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let cfg = ExperimentConfig {
            n: 30,
            side: 2.5,
            seed: 99,
            ..Default::default()
        };
        let a = generate(&cfg, 3).unwrap();
        let b = generate(&cfg, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed, Some(102));
        assert_ne!(a, generate(&cfg, 4).unwrap());
    }

    #[test]
    fn clustered_points_stay_in_the_region() {
        let cfg = ExperimentConfig {
            n: 40,
            side: 3.0,
            generator: GeneratorKind::Clustered,
            ..Default::default()
        };
        let ps = generate(&cfg, 0).unwrap();
        assert!(ps
            .points
            .iter()
            .all(|p| (0.0..3.0).contains(&p.x) && (0.0..3.0).contains(&p.y)));
    }

    #[test]
    fn sparse_regions_exhaust_the_retries() {
        let cfg = ExperimentConfig {
            n: 3,
            side: 1000.0,
            ..Default::default()
        };
        assert!(matches!(
            generate(&cfg, 0),
            Err(PldgError::GenerationExhausted { .. })
        ));
    }

    #[test]
    fn checks_reject_degenerate_sets() {
        let p = Point::new;
        // exactly collinear
        assert!(check(vec![p(0.0, 0.0), p(0.3, 0.0), p(0.6, 0.0)], 1e-8).is_err());
        // four points on a circle
        assert!(check(
            vec![p(0.0, 0.0), p(0.6, 0.0), p(0.6, 0.6), p(0.0, 0.6)],
            1e-8
        )
        .is_err());
        // distance within tolerance of the range
        assert!(check(vec![p(0.0, 0.0), p(1.0 + 1e-9, 0.0), p(0.5, 0.3)], 1e-8).is_err());
        assert!(check(vec![p(0.0, 0.0), p(0.6, 0.05), p(0.25, 0.4)], 1e-8).is_ok());
    }
}
