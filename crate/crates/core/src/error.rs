use core::fmt;

use crate::geom::Point;

/// Errors raised by geometry, protocol, and simulation code.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A coordinate was NaN or infinite.
    NonFinite,
    /// Two input points share a location.
    DuplicatePoint { first: usize, second: usize },
    /// Three points lie on a common line.
    Collinear { a: Point, b: Point, c: Point },
    /// Four points lie on a common circle.
    Cocircular {
        a: Point,
        b: Point,
        c: Point,
        d: Point,
    },
    /// Two circles coincide, so their intersection is not finite.
    CoincidentCircles,
    /// A pairwise distance is too close to the radio range to classify.
    AmbiguousRange { first: usize, second: usize },
    /// The constructed empty-disk witness for edge `(v, y)` failed its own check.
    WitnessFailure { v: Point, y: Point },
    /// Input violates the clearance assumptions the metric tolerance relies on.
    Degenerate(&'static str),
    /// A vertex index is out of range.
    InvalidVertex(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite => f.write_str("coordinate is not finite"),
            Error::DuplicatePoint { first, second } => {
                write!(f, "points {first} and {second} coincide")
            }
            Error::Collinear { a, b, c } => write!(f, "collinear points {a}, {b}, {c}"),
            Error::Cocircular { a, b, c, d } => {
                write!(f, "cocircular points {a}, {b}, {c}, {d}")
            }
            Error::CoincidentCircles => f.write_str("circles coincide"),
            Error::AmbiguousRange { first, second } => write!(
                f,
                "distance between points {first} and {second} is within tolerance of the radio range"
            ),
            Error::WitnessFailure { v, y } => {
                write!(f, "no valid empty-disk witness for edge {v}-{y}")
            }
            Error::Degenerate(what) => write!(f, "degenerate instance: {what}"),
            Error::InvalidVertex(v) => write!(f, "vertex {v} out of range"),
        }
    }
}

impl core::error::Error for Error {}
