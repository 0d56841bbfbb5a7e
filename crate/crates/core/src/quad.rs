//! Everything computed directly from four labeled points.
//!
//! The diagonals of `ABCD` are `AC` and `BD`. A point `z` is excellent when
//! `Im[(a-z)(c-z) conj((b-z)(d-z))] = 0`; expanding that in `z = x + iy`
//! gives the cubic. The spiral center `P` and the constant
//! `k = (a-P)(c-P) = (b-P)(d-P)` define the involution
//! `z -> P + k/(z-P)`, which is isogonal conjugation on the curve.

use crate::cubic::{self, CubicCurve};
use crate::error::{Error, Result};
use crate::geom::{isogonal_direction, Complex, Direction, Line, PlanePoint, ProjPoint, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegeneracyClass {
    Generic,
    Parallelogram,
    Collinear,
    ReducibleCubic,
}

impl DegeneracyClass {
    pub fn as_str(self) -> &'static str {
        match self {
            DegeneracyClass::Generic => "Generic",
            DegeneracyClass::Parallelogram => "Parallelogram",
            DegeneracyClass::Collinear => "Collinear",
            DegeneracyClass::ReducibleCubic => "ReducibleCubic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrilateral {
    pub a: PlanePoint,
    pub b: PlanePoint,
    pub c: PlanePoint,
    pub d: PlanePoint,
}

impl Quadrilateral {
    /// Requires finite, pairwise distinct vertices.
    pub fn new(a: PlanePoint, b: PlanePoint, c: PlanePoint, d: PlanePoint) -> Result<Self> {
        let q = Quadrilateral { a, b, c, d };
        if q.vertices().iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let tol = Tolerance::default();
        let vs = q.vertices();
        let scale = q.scale();
        for i in 0..4 {
            for j in i + 1..4 {
                if vs[i].dist(vs[j]) <= tol.at(scale) {
                    return Err(Error::InvalidQuadrilateral("coincident vertices"));
                }
            }
        }
        Ok(q)
    }

    pub fn from_coords(coords: [(f64, f64); 4]) -> Result<Self> {
        let [a, b, c, d] = coords.map(PlanePoint::from);
        Quadrilateral::new(a, b, c, d)
    }

    pub fn vertices(&self) -> [PlanePoint; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Largest vertex modulus; the coordinate scale for tolerances.
    pub fn scale(&self) -> f64 {
        self.vertices().iter().fold(0.0f64, |m, v| m.max(v.norm()))
    }

    fn complex(&self) -> [Complex; 4] {
        self.vertices().map(PlanePoint::to_complex)
    }

    /// Vertex `i` with its two neighbours in the cyclic order `ABCD`.
    fn corner(&self, i: usize) -> (PlanePoint, PlanePoint, PlanePoint) {
        let v = self.vertices();
        (v[i], v[(i + 3) % 4], v[(i + 1) % 4])
    }

    pub fn is_collinear(&self, tol: Tolerance) -> bool {
        let v = self.vertices();
        let mut best = (0, 1, 0.0);
        for i in 0..4 {
            for j in i + 1..4 {
                let d = v[i].dist(v[j]);
                if d > best.2 {
                    best = (i, j, d);
                }
            }
        }
        let (p, q) = (v[best.0], v[best.1]);
        let base = q - p;
        v.iter().all(|&w| {
            let r = w - p;
            base.cross(r).abs() <= tol.at(base.norm() * r.norm().max(base.norm()))
        })
    }

    pub fn is_parallelogram(&self, tol: Tolerance) -> bool {
        let [a, b, c, d] = self.complex();
        (a + c - b - d).norm() <= tol.at(self.scale())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoCubicProfile {
    /// Coefficient of `x^3` (and of `xy^2`).
    pub u: f64,
    /// Coefficient of `x^2y` (and of `y^3`).
    pub v: f64,
    pub spiral_center: PlanePoint,
    pub involution_k: Complex,
    pub asymptote: Line,
    pub infinity_direction: Direction,
}

/// Collinear first, then parallelogram, then reducibility of the cubic.
pub fn classify(q: &Quadrilateral, tol: Tolerance) -> DegeneracyClass {
    if q.is_collinear(tol) {
        return DegeneracyClass::Collinear;
    }
    if q.is_parallelogram(tol) {
        return DegeneracyClass::Parallelogram;
    }
    let curve = expand_locus(q);
    match CubicCurve::new(curve) {
        Ok(c) if cubic::reducibility(&c, tol).is_none() => DegeneracyClass::Generic,
        _ => DegeneracyClass::ReducibleCubic,
    }
}

fn screen(q: &Quadrilateral, tol: Tolerance) -> Result<()> {
    if q.is_collinear(tol) {
        return Err(Error::Degenerate(DegeneracyClass::Collinear));
    }
    if q.is_parallelogram(tol) {
        return Err(Error::Degenerate(DegeneracyClass::Parallelogram));
    }
    Ok(())
}

/// Complex polynomial in `x, y`, indexed `[i][j]` for `x^i y^j`.
type BiPoly = [[Complex; 5]; 5];

fn bipoly_mul(p: &BiPoly, q: &BiPoly) -> BiPoly {
    let mut out = [[Complex::new(0.0, 0.0); 5]; 5];
    for i in 0..5 {
        for j in 0..5 - i {
            for k in 0..5 - i - j {
                for l in 0..5 - i - j - k {
                    out[i + k][j + l] += p[i][j] * q[k][l];
                }
            }
        }
    }
    out
}

/// `z^2 - s z + p` (or its conjugate in `z`) as a polynomial in `x, y`.
fn quadratic_in_z(s: Complex, p: Complex, conjugate: bool) -> BiPoly {
    let i = Complex::i();
    let iy = if conjugate { -i } else { i };
    let mut out = [[Complex::new(0.0, 0.0); 5]; 5];
    // z^2 = x^2 + 2 (±i) x y - y^2
    out[2][0] += 1.0;
    out[1][1] += 2.0 * iy;
    out[0][2] += -1.0;
    // -s z
    out[1][0] += -s;
    out[0][1] += -s * iy;
    out[0][0] += p;
    out
}

fn expand_locus(q: &Quadrilateral) -> [f64; 10] {
    let [a, b, c, d] = q.complex();
    let left = quadratic_in_z(a + c, a * c, false);
    let right = quadratic_in_z((b + d).conj(), (b * d).conj(), true);
    let prod = bipoly_mul(&left, &right);
    cubic::MONOMIALS.map(|(i, j)| prod[i as usize][j as usize].im)
}

/// Raw expansion of `Im[(a-z)(c-z) conj((b-z)(d-z))]` with no degeneracy
/// screening. For a parallelogram the cubic part vanishes and the rest is
/// the finite part of the locus.
pub fn locus_polynomial(q: &Quadrilateral) -> [f64; 10] {
    expand_locus(q)
}

/// The isogonal cubic of `q`: the expansion of
/// `Im[(a-z)(c-z) conj((b-z)(d-z))]` in the monomial order of
/// [`cubic::MONOMIALS`]. Its cubic part is `(x^2+y^2)(ux+vy)` with
/// `u = Im(b+d-a-c)` and `v = Re(a+c-b-d)`.
pub fn cubic_from_quadrilateral(q: &Quadrilateral, tol: Tolerance) -> Result<CubicCurve> {
    screen(q, tol)?;
    CubicCurve::new(expand_locus(q)).map_err(|_| Error::Degenerate(DegeneracyClass::Parallelogram))
}

/// `P = (ac - bd) / (a + c - b - d)`, the center of the spiral similarity
/// taking `A -> B` and `D -> C`.
pub fn spiral_center(q: &Quadrilateral, tol: Tolerance) -> Result<PlanePoint> {
    if q.is_parallelogram(tol) {
        return Err(Error::Degenerate(DegeneracyClass::Parallelogram));
    }
    let [a, b, c, d] = q.complex();
    Ok(PlanePoint::from_complex((a * c - b * d) / (a + c - b - d)))
}

/// Image of `x` under `z -> P + k/(z - P)`.
///
/// On the curve this is isogonal conjugation. At `x = P` the image is the
/// curve's real point at infinity.
pub fn spiral_inverse(x: PlanePoint, profile: &IsoCubicProfile, tol: Tolerance) -> ProjPoint {
    let p = profile.spiral_center.to_complex();
    let w = x.to_complex() - p;
    let scale = profile
        .spiral_center
        .norm()
        .max(x.norm())
        .max(profile.involution_k.norm().sqrt());
    if w.norm() <= tol.at(scale) {
        return ProjPoint::Infinite(profile.infinity_direction);
    }
    ProjPoint::Finite(PlanePoint::from_complex(p + profile.involution_k / w))
}

/// Line through the midpoints of the diagonals.
pub fn newton_line(q: &Quadrilateral, tol: Tolerance) -> Result<Line> {
    let m = q.a.midpoint(q.c);
    let n = q.b.midpoint(q.d);
    if m.dist(n) <= tol.at(q.scale()) {
        return Err(Error::Degenerate(DegeneracyClass::Parallelogram));
    }
    Line::through(m, n)
}

pub fn profile_from_quadrilateral(q: &Quadrilateral, tol: Tolerance) -> Result<IsoCubicProfile> {
    match classify(q, tol) {
        DegeneracyClass::Generic => {}
        other => return Err(Error::Degenerate(other)),
    }
    let curve = cubic_from_quadrilateral(q, tol)?;
    let center = spiral_center(q, tol)?;
    let [a, _, c, _] = q.complex();
    let pc = center.to_complex();
    Ok(IsoCubicProfile {
        u: curve.c30(),
        v: curve.c21(),
        spiral_center: center,
        involution_k: (a - pc) * (c - pc),
        asymptote: cubic::asymptote_of(&curve, tol)?,
        infinity_direction: newton_line(q, tol)?.direction(),
    })
}

/// True when `x` and `y` are isogonal conjugates in `q`: at every vertex
/// `V` the pair `(VX, VY)` shares bisectors with the two sides at `V`.
pub fn is_isogonal_pair_in_quad(x: PlanePoint, y: PlanePoint, q: &Quadrilateral, tol: Tolerance) -> Result<bool> {
    let names = ["a", "b", "c", "d"];
    for (i, name) in names.iter().enumerate() {
        let (v, prev, next) = q.corner(i);
        if x.close_to(v, tol) || y.close_to(v, tol) {
            return Err(Error::Coincident(name));
        }
        let wx = Direction::between(v, x)?;
        let wy = Direction::between(v, y)?;
        let img = isogonal_direction(wx, Direction::between(v, prev)?, Direction::between(v, next)?);
        if !img.parallel_to(wy, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}
