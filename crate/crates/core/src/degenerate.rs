//! Loci of excellent points when the cubic degenerates.
//!
//! Four collinear points give their common line plus, when it exists, the
//! circle centered on that line whose inversion swaps `A` with `C` and `B`
//! with `D`. A parallelogram gives the line at infinity plus a hyperbola
//! through the four vertices.

use crate::error::{Error, Result};
use crate::geom::{Circle, Conic, Direction, Line, PlanePoint, Tolerance};
use crate::quad::{self, DegeneracyClass, Quadrilateral};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DegenerateLocus {
    LineAndCircle { line: Line, circle: Option<Circle> },
    LineAtInfinityAndHyperbola { conic: Conic },
}

/// Dispatches on [`quad::classify`]; a generic or reducible quadrilateral
/// has no degenerate locus here.
pub fn locus_for(q: &Quadrilateral, tol: Tolerance) -> Result<DegenerateLocus> {
    match quad::classify(q, tol) {
        DegeneracyClass::Collinear => collinear_locus(q, tol),
        DegeneracyClass::Parallelogram => parallelogram_locus(q, tol),
        _ => Err(Error::WrongBranch),
    }
}

pub fn collinear_locus(q: &Quadrilateral, tol: Tolerance) -> Result<DegenerateLocus> {
    if !q.is_collinear(tol) {
        return Err(Error::WrongBranch);
    }
    let v = q.vertices();
    let (mut i0, mut j0, mut far) = (0, 1, 0.0);
    for i in 0..4 {
        for j in i + 1..4 {
            if v[i].dist(v[j]) > far {
                (i0, j0, far) = (i, j, v[i].dist(v[j]));
            }
        }
    }
    let line = Line::through(v[i0], v[j0])?;
    let origin = q.a;
    let e = Direction::between(v[i0], v[j0])?.as_complex() / far;
    let e = PlanePoint::from_complex(e);
    let [a, b, c, d] = v.map(|p| (p - origin).dot(e));
    let den = a + c - b - d;
    if den.abs() <= tol.at(far) {
        return Ok(DegenerateLocus::LineAndCircle { line, circle: None });
    }
    let o = (a * c - b * d) / den;
    let r2 = (a - o) * (c - o);
    let circle = (r2 > tol.at(far * far)).then(|| Circle::new(origin + e * o, r2));
    Ok(DegenerateLocus::LineAndCircle { line, circle })
}

/// The hyperbola from its center `M = (A + C)/2`, the bisector directions
/// of `∠BAD` as asymptotes, and the point `A`: `l1 * l2 = l1(A) * l2(A)`
/// where `l1`, `l2` are the asymptote lines through `M`.
pub fn parallelogram_locus(q: &Quadrilateral, tol: Tolerance) -> Result<DegenerateLocus> {
    if q.is_collinear(tol) || !q.is_parallelogram(tol) {
        return Err(Error::WrongBranch);
    }
    let m = q.a.midpoint(q.c);
    let [d1, d2] = Direction::between(q.a, q.b)?.bisectors(Direction::between(q.a, q.d)?);
    // line through m along d: -dy x + dx y + (dy mx - dx my)
    let coeffs = |d: Direction| {
        let u = d.unit();
        (-u.im, u.re, u.im * m.x - u.re * m.y)
    };
    let (a1, b1, g1) = coeffs(d1);
    let (a2, b2, g2) = coeffs(d2);
    let l = |a: f64, b: f64, g: f64, p: PlanePoint| a * p.x + b * p.y + g;
    let kappa = l(a1, b1, g1, q.a) * l(a2, b2, g2, q.a);
    let conic = Conic::new([
        a1 * a2,
        a1 * b2 + a2 * b1,
        b1 * b2,
        a1 * g2 + a2 * g1,
        b1 * g2 + b2 * g1,
        g1 * g2 - kappa,
    ]);
    Ok(DegenerateLocus::LineAtInfinityAndHyperbola { conic })
}
