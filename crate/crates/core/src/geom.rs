//! Plane primitives and the tolerance policy.
//!
//! Points double as complex numbers `x + iy`. Line directions are nonzero
//! complex numbers taken modulo real scaling, so "reflect a direction" and
//! "compare two directions" are products and conjugates with no angle
//! branch cuts anywhere.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Relative tolerance with an absolute floor.
///
/// Every comparison in the crate is made against `at(scale)` where `scale`
/// is the natural magnitude of the quantity being tested (a product of
/// factor moduli, a monomial sum, a coordinate extent).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel_eps: f64,
    pub abs_floor: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel_eps: 1e-9,
            abs_floor: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(rel_eps: f64, abs_floor: f64) -> Result<Self> {
        if !(rel_eps > 0.0 && abs_floor > 0.0 && rel_eps.is_finite() && abs_floor.is_finite()) {
            return Err(Error::DegenerateInput("tolerances must be finite and positive"));
        }
        Ok(Tolerance { rel_eps, abs_floor })
    }

    #[inline]
    pub fn at(&self, scale: f64) -> f64 {
        (self.rel_eps * scale.abs()).max(self.abs_floor)
    }

    #[inline]
    pub fn is_small(&self, value: f64, scale: f64) -> bool {
        value.abs() <= self.at(scale)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub const ORIGIN: PlanePoint = PlanePoint { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        PlanePoint { x, y }
    }

    #[inline]
    pub fn to_complex(self) -> Complex {
        Complex::new(self.x, self.y)
    }

    #[inline]
    pub fn from_complex(z: Complex) -> Self {
        PlanePoint { x: z.re, y: z.im }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: PlanePoint) -> f64 {
        (self - other).norm()
    }

    pub fn midpoint(self, other: PlanePoint) -> PlanePoint {
        PlanePoint::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    pub fn dot(self, other: PlanePoint) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: PlanePoint) -> f64 {
        self.x * other.y - self.y * other.x
    }

    /// Coincidence test at the larger of the two magnitudes.
    pub fn close_to(self, other: PlanePoint, tol: Tolerance) -> bool {
        self.dist(other) <= tol.at(self.norm().max(other.norm()))
    }
}

impl From<(f64, f64)> for PlanePoint {
    fn from((x, y): (f64, f64)) -> Self {
        PlanePoint::new(x, y)
    }
}

impl From<Complex> for PlanePoint {
    fn from(z: Complex) -> Self {
        PlanePoint::from_complex(z)
    }
}

impl From<PlanePoint> for Complex {
    fn from(p: PlanePoint) -> Self {
        p.to_complex()
    }
}

impl Add for PlanePoint {
    type Output = PlanePoint;
    fn add(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for PlanePoint {
    type Output = PlanePoint;
    fn sub(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for PlanePoint {
    type Output = PlanePoint;
    fn mul(self, s: f64) -> PlanePoint {
        PlanePoint::new(self.x * s, self.y * s)
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A line direction: a nonzero complex number modulo nonzero real scaling.
#[derive(Debug, Clone, Copy)]
pub struct Direction(Complex);

impl Direction {
    pub fn new(z: Complex) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if z.norm_sqr() == 0.0 {
            return Err(Error::InvalidDirection);
        }
        Ok(Direction(z))
    }

    pub fn from_xy(dx: f64, dy: f64) -> Result<Self> {
        Direction::new(Complex::new(dx, dy))
    }

    /// Direction of the line from `from` to `to`.
    pub fn between(from: PlanePoint, to: PlanePoint) -> Result<Self> {
        Direction::new(to.to_complex() - from.to_complex())
    }

    #[inline]
    pub fn as_complex(self) -> Complex {
        self.0
    }

    /// Unit representative with the sign fixed so the first nonzero
    /// component is positive.
    pub fn unit(self) -> Complex {
        let u = self.0 / self.0.norm();
        if u.re < 0.0 || (u.re == 0.0 && u.im < 0.0) {
            -u
        } else {
            u
        }
    }

    pub fn perpendicular(self) -> Direction {
        Direction(self.0 * Complex::i())
    }

    /// `|sin|` of the angle between the two lines.
    pub fn sine_to(self, other: Direction) -> f64 {
        (self.0 * other.0.conj()).im.abs() / (self.0.norm() * other.0.norm())
    }

    /// Unsigned angle between the two lines, in `[0, pi/2]`.
    pub fn angle_to(self, other: Direction) -> f64 {
        let w = self.0 * other.0.conj();
        w.im.abs().atan2(w.re.abs())
    }

    pub fn parallel_to(self, other: Direction, tol: Tolerance) -> bool {
        self.sine_to(other) <= tol.rel_eps
    }

    /// The two angle bisectors of the line pair `(self, other)`.
    pub fn bisectors(self, other: Direction) -> [Direction; 2] {
        let s = (self.0 * other.0).sqrt();
        [Direction(s), Direction(s * Complex::i())]
    }
}

impl PartialEq for Direction {
    /// Exact test: the ratio of representatives is real.
    fn eq(&self, other: &Self) -> bool {
        (self.0 * other.0.conj()).im == 0.0
    }
}

/// The line `l1*x + l2*y + l0 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub l0: f64,
    pub l1: f64,
    pub l2: f64,
}

impl Line {
    /// Builds `l1*x + l2*y + l0 = 0`.
    pub fn new(l1: f64, l2: f64, l0: f64) -> Result<Self> {
        if !(l0.is_finite() && l1.is_finite() && l2.is_finite()) {
            return Err(Error::NonFinite);
        }
        if l1 == 0.0 && l2 == 0.0 {
            return Err(Error::DegenerateInput("line normal is zero"));
        }
        Ok(Line { l0, l1, l2 })
    }

    pub fn through(p: PlanePoint, q: PlanePoint) -> Result<Self> {
        Line::through_dir(p, Direction::between(p, q)?)
    }

    pub fn through_dir(p: PlanePoint, dir: Direction) -> Result<Self> {
        let d = dir.as_complex();
        let (l1, l2) = (d.im, -d.re);
        Line::new(l1, l2, -(l1 * p.x + l2 * p.y))
    }

    /// Coefficients in `(l1, l2, l0)` order.
    pub fn coefficients(&self) -> [f64; 3] {
        [self.l1, self.l2, self.l0]
    }

    pub fn eval(&self, p: PlanePoint) -> f64 {
        self.l1 * p.x + self.l2 * p.y + self.l0
    }

    pub fn normal_norm(&self) -> f64 {
        self.l1.hypot(self.l2)
    }

    pub fn distance(&self, p: PlanePoint) -> f64 {
        self.eval(p).abs() / self.normal_norm()
    }

    pub fn direction(&self) -> Direction {
        Direction(Complex::new(-self.l2, self.l1))
    }

    /// A point of the line closest to the origin.
    pub fn foot(&self) -> PlanePoint {
        let n2 = self.l1 * self.l1 + self.l2 * self.l2;
        PlanePoint::new(-self.l0 * self.l1 / n2, -self.l0 * self.l2 / n2)
    }

    /// Unit normal, with the sign fixed like [`Direction::unit`].
    pub fn normalized(&self) -> Line {
        let n = self.normal_norm();
        let s = if self.l1 < 0.0 || (self.l1 == 0.0 && self.l2 < 0.0) {
            -1.0 / n
        } else {
            1.0 / n
        };
        Line {
            l0: self.l0 * s,
            l1: self.l1 * s,
            l2: self.l2 * s,
        }
    }

    /// `None` when the lines are parallel at tolerance.
    pub fn intersect(&self, other: &Line, tol: Tolerance) -> Option<PlanePoint> {
        let w = self.l1 * other.l2 - self.l2 * other.l1;
        if w.abs() <= tol.rel_eps * self.normal_norm() * other.normal_norm() {
            return None;
        }
        let x = self.l2 * other.l0 - self.l0 * other.l2;
        let y = self.l0 * other.l1 - self.l1 * other.l0;
        Some(PlanePoint::new(x / w, y / w))
    }

    /// Largest 2x2 minor of the stacked coefficient triples, relative.
    pub fn proportionality_residual(&self, other: &Line) -> f64 {
        let a = [self.l1, self.l2, self.l0];
        let b = [other.l1, other.l2, other.l0];
        let na = a.iter().map(|v| v * v).sum::<f64>().sqrt();
        let nb = b.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in i + 1..3 {
                worst = worst.max((a[i] * b[j] - a[j] * b[i]).abs());
            }
        }
        worst / (na * nb)
    }

    pub fn proportional_to(&self, other: &Line, tol: Tolerance) -> bool {
        self.proportionality_residual(other) <= tol.rel_eps
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: PlanePoint,
    /// Negative for imaginary circles, zero for a point circle.
    pub radius_sq: f64,
}

impl Circle {
    pub fn new(center: PlanePoint, radius_sq: f64) -> Self {
        Circle { center, radius_sq }
    }

    /// Circumcircle; fails for coincident or collinear points.
    pub fn through(p: PlanePoint, q: PlanePoint, r: PlanePoint, tol: Tolerance) -> Result<Self> {
        let (b, c) = (q - p, r - p);
        let d = 2.0 * b.cross(c);
        if d.abs() <= tol.at(b.norm() * c.norm()) {
            return Err(Error::DegenerateInput("circle through collinear points"));
        }
        let (b2, c2) = (b.dot(b), c.dot(c));
        let ux = (c.y * b2 - b.y * c2) / d;
        let uy = (b.x * c2 - c.x * b2) / d;
        let center = PlanePoint::new(p.x + ux, p.y + uy);
        Ok(Circle {
            center,
            radius_sq: ux * ux + uy * uy,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius_sq.max(0.0).sqrt()
    }

    /// Signed distance from `p` to the circle (positive outside).
    pub fn residual(&self, p: PlanePoint) -> f64 {
        p.dist(self.center) - self.radius()
    }

    pub fn power(&self, p: PlanePoint) -> f64 {
        let d = p - self.center;
        d.dot(d) - self.radius_sq
    }

    /// Implicit form in the order `(x^2, xy, y^2, x, y, 1)`.
    pub fn to_conic(&self) -> Conic {
        let (a, b) = (self.center.x, self.center.y);
        Conic::new([1.0, 0.0, 1.0, -2.0 * a, -2.0 * b, a * a + b * b - self.radius_sq])
    }
}

/// A real conic `cxx x^2 + cxy xy + cyy y^2 + cx x + cy y + c0 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conic {
    pub coeffs: [f64; 6],
}

impl Conic {
    pub fn new(coeffs: [f64; 6]) -> Self {
        Conic { coeffs }
    }

    pub fn eval(&self, p: PlanePoint) -> f64 {
        let [a, b, c, d, e, f] = self.coeffs;
        a * p.x * p.x + b * p.x * p.y + c * p.y * p.y + d * p.x + e * p.y + f
    }

    /// Sum of the absolute monomial contributions at `p`.
    pub fn monomial_scale(&self, p: PlanePoint) -> f64 {
        let [a, b, c, d, e, f] = self.coeffs.map(f64::abs);
        let (x, y) = (p.x.abs(), p.y.abs());
        a * x * x + b * x * y + c * y * y + d * x + e * y + f
    }

    /// `B^2 - 4AC` of the quadratic part; positive for hyperbolas.
    pub fn discriminant(&self) -> f64 {
        let [a, b, c, ..] = self.coeffs;
        b * b - 4.0 * a * c
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Conic {
        let m = self.coeffs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        Conic::new(self.coeffs.map(|v| v / m))
    }

    /// `1 - |cos|` between coefficient vectors; zero iff proportional.
    pub fn proportionality_gap(&self, other: &Conic) -> f64 {
        let dot: f64 = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum();
        1.0 - (dot / (self.norm() * other.norm())).abs()
    }
}

/// A point of the real projective plane: finite, or at infinity along a
/// direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProjPoint {
    Finite(PlanePoint),
    Infinite(Direction),
}

impl ProjPoint {
    pub fn finite(self) -> Option<PlanePoint> {
        match self {
            ProjPoint::Finite(p) => Some(p),
            ProjPoint::Infinite(_) => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ProjPoint::Infinite(_))
    }
}

impl From<PlanePoint> for ProjPoint {
    fn from(p: PlanePoint) -> Self {
        ProjPoint::Finite(p)
    }
}

/// Reflects `w` across the bisectors of `(u, v)`.
///
/// The result is `u * v * conj(w)` taken as a direction. Applying it twice
/// gives back `w`, and `w = u` maps to `v`.
pub fn isogonal_direction(w: Direction, u: Direction, v: Direction) -> Direction {
    Direction(u.0 * v.0 * w.0.conj())
}

/// `Im[(a-x)(c-x) conj((b-x)(d-x))]`: zero iff `(XA, XC)` and `(XB, XD)` are
/// isogonal line pairs at `x`.
pub fn isogonality_residual(x: PlanePoint, a: PlanePoint, c: PlanePoint, b: PlanePoint, d: PlanePoint) -> Result<f64> {
    for (v, name) in [(a, "a"), (b, "b"), (c, "c"), (d, "d")] {
        if x == v {
            return Err(Error::Coincident(name));
        }
    }
    let z = x.to_complex();
    let ac = (a.to_complex() - z) * (c.to_complex() - z);
    let bd = (b.to_complex() - z) * (d.to_complex() - z);
    Ok((ac * bd.conj()).im)
}

/// Natural magnitude of [`isogonality_residual`]: the product of the four
/// distances from `x`.
pub fn isogonality_scale(x: PlanePoint, a: PlanePoint, c: PlanePoint, b: PlanePoint, d: PlanePoint) -> f64 {
    x.dist(a) * x.dist(b) * x.dist(c) * x.dist(d)
}

/// `2o - x`.
pub fn reflect_point_over_point(x: PlanePoint, o: PlanePoint) -> PlanePoint {
    PlanePoint::new(2.0 * o.x - x.x, 2.0 * o.y - x.y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dir(x: f64, y: f64) -> Direction {
        Direction::from_xy(x, y).unwrap()
    }

    fn p(x: f64, y: f64) -> PlanePoint {
        PlanePoint::new(x, y)
    }

    #[test]
    fn isogonal_of_one_arm_is_the_other() {
        let (u, v) = (dir(1.0, 0.0), dir(1.0, 3.0));
        assert_eq!(isogonal_direction(u, u, v), v);
        assert_eq!(isogonal_direction(v, u, v), u);
    }

    #[test]
    fn bisector_is_fixed() {
        let (u, v) = (dir(2.0, 1.0), dir(-1.0, 4.0));
        for b in u.bisectors(v) {
            let img = isogonal_direction(b, u, v);
            assert!(img.sine_to(b) < 1e-15);
        }
    }

    #[test]
    fn worked_vertex_direction() {
        // theta_u + theta_v - theta_w mod pi, computed with atan2
        let t = 0.0f64 + 3.0f64.atan2(1.0) - 2.0f64.atan2(3.0);
        let expected = dir(t.cos(), t.sin());
        let got = isogonal_direction(dir(3.0, 2.0), dir(1.0, 0.0), dir(1.0, 3.0));
        assert!(got.sine_to(expected) < 1e-15);
        assert_eq!(got, dir(9.0, 7.0));
    }

    #[test]
    fn zero_direction_rejected() {
        assert_eq!(Direction::from_xy(0.0, 0.0).unwrap_err(), Error::InvalidDirection);
        assert!(Direction::between(p(1.0, 1.0), p(1.0, 1.0)).is_err());
    }

    #[test]
    fn residual_examples() {
        let r = isogonality_residual(p(0.0, -3.0), p(-1.0, 0.0), p(1.0, 0.0), p(0.0, 2.0), p(0.0, -1.0));
        assert_eq!(r.unwrap(), 0.0);
        let r = isogonality_residual(p(4.0, 4.0), p(0.0, 0.0), p(3.0, 2.0), p(4.0, 0.0), p(1.0, 3.0));
        assert_eq!(r.unwrap(), 0.0);
        // a = c is not special-cased
        let (a, b, d, x) = (p(1.0, 2.0), p(-1.0, 0.5), p(3.0, -2.0), p(0.3, 0.7));
        let direct = {
            let z = x.to_complex();
            ((a.to_complex() - z).powu(2) * ((b.to_complex() - z) * (d.to_complex() - z)).conj()).im
        };
        assert_eq!(isogonality_residual(x, a, a, b, d).unwrap(), direct);
    }

    #[test]
    fn residual_rejects_vertex() {
        let a = p(1.0, 1.0);
        assert_eq!(
            isogonality_residual(a, a, p(2.0, 0.0), p(0.0, 3.0), p(4.0, 4.0)),
            Err(Error::Coincident("a"))
        );
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(reflect_point_over_point(p(2.0, 5.0), p(2.0, 5.0)), p(2.0, 5.0));
        assert_eq!(reflect_point_over_point(p(1.0, 0.0), p(0.0, 0.0)), p(-1.0, 0.0));
        assert_eq!(reflect_point_over_point(p(3.0, 2.0), p(2.0, 1.0)), p(1.0, 0.0));
    }

    #[test]
    fn line_basics() {
        let tol = Tolerance::default();
        let l = Line::through(p(1.5, 1.0), p(2.5, 1.5)).unwrap();
        assert!(l.proportional_to(&Line::new(1.0, -2.0, 0.5).unwrap(), tol));
        let m = Line::new(1.0, 1.0, -3.0).unwrap();
        let x = l.intersect(&m, tol).unwrap();
        assert!(l.eval(x).abs() < 1e-14 && m.eval(x).abs() < 1e-14);
        assert!(l.intersect(&l, tol).is_none());
        assert!(l.direction().parallel_to(dir(2.0, 1.0), tol));
    }

    #[test]
    fn circumcircle() {
        let tol = Tolerance::default();
        let c = Circle::through(p(1.0, 0.0), p(0.0, 1.0), p(-1.0, 0.0), tol).unwrap();
        assert!(c.center.norm() < 1e-15);
        assert!((c.radius_sq - 1.0).abs() < 1e-15);
        assert!(Circle::through(p(0.0, 0.0), p(1.0, 1.0), p(2.0, 2.0), tol).is_err());
    }

    fn arb_dir() -> impl Strategy<Value = Direction> {
        (-10.0..10.0f64, -10.0..10.0f64)
            .prop_filter("nonzero", |(x, y)| x.hypot(*y) > 1e-3)
            .prop_map(|(x, y)| Direction::from_xy(x, y).unwrap())
    }

    fn arb_point() -> impl Strategy<Value = PlanePoint> {
        (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| PlanePoint::new(x, y))
    }

    proptest! {
        #[test]
        fn isogonal_direction_is_an_involution(w in arb_dir(), u in arb_dir(), v in arb_dir()) {
            let back = isogonal_direction(isogonal_direction(w, u, v), u, v);
            prop_assert!(back.sine_to(w) < 1e-12);
        }

        #[test]
        fn isogonal_direction_is_symmetric(w in arb_dir(), u in arb_dir(), v in arb_dir()) {
            prop_assert!(isogonal_direction(w, u, v).sine_to(isogonal_direction(w, v, u)) < 1e-12);
        }

        #[test]
        fn direction_equality_ignores_real_scale(d in arb_dir(), s in prop_oneof![-1e3..-1e-3f64, 1e-3..1e3f64]) {
            let scaled = Direction::new(d.as_complex() * s).unwrap();
            prop_assert!(scaled.parallel_to(d, Tolerance::default()));
        }

        #[test]
        fn residual_is_antisymmetric(x in arb_point(), a in arb_point(), b in arb_point(), c in arb_point(), d in arb_point()) {
            prop_assume!([a, b, c, d].iter().all(|v| *v != x));
            let r1 = isogonality_residual(x, a, c, b, d).unwrap();
            let r2 = isogonality_residual(x, b, d, a, c).unwrap();
            prop_assert_eq!(r1, -r2);
        }
    }
}
