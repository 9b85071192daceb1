//! Per-node computation traces.
//!
//! A trace is the ordered list of operations a node performed, each reduced
//! to `(operation, input digest, output digest)`. Digests hash coordinates,
//! never vertex indices, so traces from runs on different subsets of the same
//! point set are directly comparable.

use alloc::vec::Vec;

use crate::geom::Point;

/// 64-bit FNV-1a, fed with the bit patterns of coordinates.
#[derive(Clone, Copy, Debug)]
pub struct Digest(u64);

impl Default for Digest {
    fn default() -> Self {
        Digest(0xcbf2_9ce4_8422_2325)
    }
}

impl Digest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn u64(mut self, v: u64) -> Self {
        for b in v.to_le_bytes() {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
        self
    }

    pub fn point(self, p: Point) -> Self {
        self.u64(p.x.to_bits()).u64(p.y.to_bits())
    }

    /// Hashes a set of points in canonical order.
    pub fn point_set<I: IntoIterator<Item = Point>>(self, pts: I) -> Self {
        let mut v: Vec<Point> = pts.into_iter().collect();
        v.sort_by(Point::total_cmp);
        let mut d = self.u64(v.len() as u64);
        for p in v {
            d = d.point(p);
        }
        d
    }

    /// Hashes a set of segments in canonical order.
    pub fn segment_set<I: IntoIterator<Item = (Point, Point)>>(self, segs: I) -> Self {
        let mut v: Vec<(Point, Point)> = segs
            .into_iter()
            .map(|(a, b)| {
                if a.total_cmp(&b).is_le() {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        v.sort_by(|s, t| s.0.total_cmp(&t.0).then(s.1.total_cmp(&t.1)));
        let mut d = self.u64(v.len() as u64);
        for (a, b) in v {
            d = d.point(a).point(b);
        }
        d
    }

    pub fn finish(self) -> u64 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub op: &'static str,
    pub input: u64,
    pub output: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub entries: Vec<TraceEntry>,
}

impl Trace {
    pub fn record(&mut self, op: &'static str, input: Digest, output: Digest) {
        self.entries.push(TraceEntry {
            op,
            input: input.finish(),
            output: output.finish(),
        });
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Index of the first entry where the traces differ, if any.
    pub fn first_difference(&self, other: &Trace) -> Option<usize> {
        let common = self.entries.len().min(other.entries.len());
        (0..common)
            .find(|&i| self.entries[i] != other.entries[i])
            .or((self.entries.len() != other.entries.len()).then_some(common))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_digest_ignores_order() {
        let a = Point::new(0.1, 0.2);
        let b = Point::new(-3.0, 4.0);
        assert_eq!(
            Digest::new().point_set([a, b]).finish(),
            Digest::new().point_set([b, a]).finish()
        );
        assert_eq!(
            Digest::new().segment_set([(a, b)]).finish(),
            Digest::new().segment_set([(b, a)]).finish()
        );
        assert_ne!(
            Digest::new().point(a).finish(),
            Digest::new().point(b).finish()
        );
    }

    #[test]
    fn first_difference() {
        let mut t = Trace::default();
        t.record("a", Digest::new(), Digest::new());
        let mut u = t.clone();
        assert_eq!(t.first_difference(&u), None);
        u.record("b", Digest::new(), Digest::new());
        assert_eq!(t.first_difference(&u), Some(1));
        let mut w = Trace::default();
        w.record("a", Digest::new().u64(1), Digest::new());
        assert_eq!(t.first_difference(&w), Some(0));
    }
}
