//! Isogonal cubics of planar quadrilaterals.
//!
//! A point `X` is *excellent* for a quadrilateral `ABCD` when the line pairs
//! `(XA, XC)` and `(XB, XD)` share angle bisectors. The excellent points of a
//! generic quadrilateral form a real cubic curve. This crate builds that
//! cubic, recovers its intrinsic data (spiral center, involution constant,
//! real asymptote), runs the classical ruler-style constructions on it
//! numerically, and decides whether an arbitrary real cubic is one.
//!
//! Module map:
//!
//! * [`geom`]: points, directions, lines, circles, conics and tolerances.
//! * [`quad`]: everything computed straight from four labeled points.
//! * [`cubic`]: coefficient-level algebra and classification.
//! * [`constructions`]: conjugation, tangents, chords, circles, addition.
//! * [`degenerate`]: the collinear and parallelogram loci.
//! * [`oracle`]: independent brute-force checks used by tests and `verify`.
//! * [`verify`]: the batch property suite run by the CLI.
//! * [`render`]: marching-squares tracing and SVG/CSV output.

pub mod constructions;
pub mod cubic;
pub mod degenerate;
pub mod error;
pub mod exec;
pub mod geom;
pub mod oracle;
pub mod quad;
pub mod render;
pub mod roots;
pub mod verify;

pub use constructions::{ConjugatePair, CurveContext};
pub use cubic::{ClassificationReport, CubicCurve, HomogeneousPoint, Reason};
pub use error::{Error, Result};
pub use exec::Exec;
pub use geom::{Circle, Complex, Conic, Direction, Line, PlanePoint, ProjPoint, Tolerance};
pub use quad::{DegeneracyClass, IsoCubicProfile, Quadrilateral};
