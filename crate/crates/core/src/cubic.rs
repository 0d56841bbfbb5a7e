//! Coefficient-level algebra on real Cartesian cubics.
//!
//! Coefficients are stored in the fixed monomial order
//! `(x^3, x^2y, xy^2, y^3, x^2, xy, y^2, x, y, 1)`. An isogonal cubic has
//! cubic part `(x^2 + y^2)(u x + v y)`: it passes through both circular
//! points at infinity and has a single real point at infinity `(v : -u : 0)`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::geom::{Complex, Conic, Direction, Line, PlanePoint, Tolerance};
use crate::quad::IsoCubicProfile;
use crate::roots;

/// Exponents `(i, j)` of `x^i y^j` for each coefficient slot.
pub const MONOMIALS: [(u32, u32); 10] = [
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
    (2, 0),
    (1, 1),
    (0, 2),
    (1, 0),
    (0, 1),
    (0, 0),
];

pub const MONOMIAL_NAMES: [&str; 10] = ["x^3", "x^2y", "xy^2", "y^3", "x^2", "xy", "y^2", "x", "y", "1"];

/// Index of `x^i y^j` in the coefficient array.
pub fn monomial_index(i: u32, j: u32) -> Option<usize> {
    MONOMIALS.iter().position(|&m| m == (i, j))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCurve {
    coeffs: [f64; 10],
}

impl CubicCurve {
    /// Rejects non-finite input and polynomials whose cubic part vanishes.
    pub fn new(coeffs: [f64; 10]) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let all = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let top = coeffs[..4].iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if top == 0.0 || top <= f64::EPSILON * all {
            return Err(Error::NotCubic);
        }
        Ok(CubicCurve { coeffs })
    }

    pub fn coeffs(&self) -> &[f64; 10] {
        &self.coeffs
    }

    pub fn c30(&self) -> f64 {
        self.coeffs[0]
    }
    pub fn c21(&self) -> f64 {
        self.coeffs[1]
    }
    pub fn c12(&self) -> f64 {
        self.coeffs[2]
    }
    pub fn c03(&self) -> f64 {
        self.coeffs[3]
    }
    pub fn c20(&self) -> f64 {
        self.coeffs[4]
    }
    pub fn c11(&self) -> f64 {
        self.coeffs[5]
    }
    pub fn c02(&self) -> f64 {
        self.coeffs[6]
    }
    pub fn c10(&self) -> f64 {
        self.coeffs[7]
    }
    pub fn c01(&self) -> f64 {
        self.coeffs[8]
    }
    pub fn c00(&self) -> f64 {
        self.coeffs[9]
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Scaled so the largest coefficient magnitude is 1.
    pub fn normalized(&self) -> CubicCurve {
        self.scaled(1.0 / self.max_abs())
    }

    pub fn scaled(&self, s: f64) -> CubicCurve {
        CubicCurve {
            coeffs: self.coeffs.map(|c| c * s),
        }
    }

    /// Cosine similarity of coefficient vectors, up to sign.
    pub fn cosine_similarity(&self, other: &CubicCurve) -> f64 {
        let dot: f64 = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum();
        (dot / (self.norm() * other.norm())).abs()
    }

    fn abs_curve(&self) -> CubicCurve {
        CubicCurve {
            coeffs: self.coeffs.map(f64::abs),
        }
    }

    /// Sum of `|c_k| |m_k(p)|` over all monomials: the scale against which
    /// `f(p)` is compared when testing membership.
    pub fn monomial_scale(&self, p: PlanePoint) -> f64 {
        evaluate(&self.abs_curve(), PlanePoint::new(p.x.abs(), p.y.abs()))
    }

    /// Relative residual `|f(p)| / monomial_scale(p)`.
    pub fn relative_residual(&self, p: PlanePoint) -> f64 {
        let s = self.monomial_scale(p);
        if s == 0.0 {
            0.0
        } else {
            evaluate(self, p).abs() / s
        }
    }

    pub fn contains(&self, p: PlanePoint, tol: Tolerance) -> bool {
        tol.is_small(evaluate(self, p), self.monomial_scale(p))
    }

    /// Magnitude bound for the gradient at `p`.
    pub fn gradient_scale(&self, p: PlanePoint) -> f64 {
        let (gx, gy) = gradient(&self.abs_curve(), PlanePoint::new(p.x.abs(), p.y.abs()));
        gx.hypot(gy)
    }

    pub fn is_singular_at(&self, p: PlanePoint, tol: Tolerance) -> bool {
        let (gx, gy) = gradient(self, p);
        tol.is_small(gx.hypot(gy), self.gradient_scale(p))
    }

    /// Homogeneous value at a complex projective point.
    pub fn eval_homogeneous(&self, pt: [Complex; 3]) -> Complex {
        let [x, y, z] = pt;
        MONOMIALS
            .iter()
            .zip(&self.coeffs)
            .map(|(&(i, j), &c)| x.powu(i) * y.powu(j) * z.powu(3 - i - j) * c)
            .sum()
    }

    /// Homogeneous partial derivatives at a complex projective point.
    pub fn gradient_homogeneous(&self, pt: [Complex; 3]) -> [Complex; 3] {
        let [x, y, z] = pt;
        let pw = |b: Complex, e: u32| if e == 0 { Complex::new(1.0, 0.0) } else { b.powu(e) };
        let mut g = [Complex::new(0.0, 0.0); 3];
        for (&(i, j), &c) in MONOMIALS.iter().zip(&self.coeffs) {
            let k = 3 - i - j;
            if i > 0 {
                g[0] += pw(x, i - 1) * pw(y, j) * pw(z, k) * (c * i as f64);
            }
            if j > 0 {
                g[1] += pw(x, i) * pw(y, j - 1) * pw(z, k) * (c * j as f64);
            }
            if k > 0 {
                g[2] += pw(x, i) * pw(y, j) * pw(z, k - 1) * (c * k as f64);
            }
        }
        g
    }

    /// Sum of `|c_k| |m_k|` at a normalized complex projective point.
    fn homogeneous_scale(&self, pt: [Complex; 3]) -> f64 {
        let n = pt.map(|c| c.norm());
        MONOMIALS
            .iter()
            .zip(&self.coeffs)
            .map(|(&(i, j), &c)| c.abs() * n[0].powi(i as i32) * n[1].powi(j as i32) * n[2].powi((3 - i - j) as i32))
            .sum()
    }

    /// Coefficients `(g0, g1, g2, g3)` of `t -> f(base + t dir)`.
    pub fn restriction(&self, base: PlanePoint, dir: PlanePoint) -> [f64; 4] {
        let [c30, c21, c12, c03, c20, c11, c02, ..] = self.coeffs;
        let (x, y) = (base.x, base.y);
        let (dx, dy) = (dir.x, dir.y);
        let g0 = evaluate(self, base);
        let (fx, fy) = gradient(self, base);
        let g1 = fx * dx + fy * dy;
        let fxx = 6.0 * c30 * x + 2.0 * c21 * y + 2.0 * c20;
        let fxy = 2.0 * c21 * x + 2.0 * c12 * y + c11;
        let fyy = 2.0 * c12 * x + 6.0 * c03 * y + 2.0 * c02;
        let g2 = 0.5 * (fxx * dx * dx + 2.0 * fxy * dx * dy + fyy * dy * dy);
        let g3 = cubic_form(self, dx, dy);
        [g0, g1, g2, g3]
    }

    /// Termwise magnitude bounds for [`restriction`](Self::restriction).
    pub fn restriction_scale(&self, base: PlanePoint, dir: PlanePoint) -> [f64; 4] {
        self.abs_curve().restriction(
            PlanePoint::new(base.x.abs(), base.y.abs()),
            PlanePoint::new(dir.x.abs(), dir.y.abs()),
        )
    }

    /// The polynomial after the affine change `p -> p + offset`, i.e. the
    /// coefficients of `g(p) = f(p + offset)`.
    pub fn translated(&self, offset: PlanePoint) -> CubicCurve {
        let [c30, c21, c12, c03, c20, c11, c02, ..] = self.coeffs;
        let (a, b) = (offset.x, offset.y);
        let (fx, fy) = gradient(self, offset);
        let n20 = c20 + 3.0 * c30 * a + c21 * b;
        let n11 = c11 + 2.0 * c21 * a + 2.0 * c12 * b;
        let n02 = c02 + c12 * a + 3.0 * c03 * b;
        CubicCurve {
            coeffs: [c30, c21, c12, c03, n20, n11, n02, fx, fy, evaluate(self, offset)],
        }
    }
}

fn cubic_form(curve: &CubicCurve, x: f64, y: f64) -> f64 {
    let [c30, c21, c12, c03, ..] = curve.coeffs;
    ((c30 * x + c21 * y) * x + c12 * y * y) * x + c03 * y * y * y
}

pub fn evaluate(curve: &CubicCurve, p: PlanePoint) -> f64 {
    let [c30, c21, c12, c03, c20, c11, c02, c10, c01, c00] = curve.coeffs;
    let (x, y) = (p.x, p.y);
    let cubic = ((c30 * x + c21 * y) * x + c12 * y * y) * x + c03 * y * y * y;
    let quad = (c20 * x + c11 * y) * x + c02 * y * y;
    cubic + quad + c10 * x + c01 * y + c00
}

pub fn gradient(curve: &CubicCurve, p: PlanePoint) -> (f64, f64) {
    let [c30, c21, c12, c03, c20, c11, c02, c10, c01, _] = curve.coeffs;
    let (x, y) = (p.x, p.y);
    let fx = 3.0 * c30 * x * x + 2.0 * c21 * x * y + c12 * y * y + 2.0 * c20 * x + c11 * y + c10;
    let fy = c21 * x * x + 2.0 * c12 * x * y + 3.0 * c03 * y * y + c11 * x + 2.0 * c02 * y + c01;
    (fx, fy)
}

pub(crate) fn ensure_on_curve(curve: &CubicCurve, p: PlanePoint, tol: Tolerance) -> Result<()> {
    if curve.contains(p, tol) {
        Ok(())
    } else {
        Err(Error::NotOnCurve {
            residual: curve.relative_residual(p),
        })
    }
}

/// Tangent line at a non-singular curve point.
pub fn tangent_line_at(curve: &CubicCurve, p: PlanePoint, tol: Tolerance) -> Result<Line> {
    ensure_on_curve(curve, p, tol)?;
    if curve.is_singular_at(p, tol) {
        return Err(Error::SingularPoint);
    }
    let (gx, gy) = gradient(curve, p);
    Line::new(gx, gy, -(gx * p.x + gy * p.y))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineHit {
    pub t: f64,
    pub point: PlanePoint,
    /// First-order estimate of the distance error from rounding in the
    /// line's coefficients; zero for the caller's known roots.
    pub spread: f64,
}

/// Real intersections of a line with a cubic.
#[derive(Debug, Clone, PartialEq)]
pub struct LineMeet {
    /// Finite intersections in ascending parameter order, repeated by
    /// multiplicity. Known roots supplied by the caller are included.
    pub hits: Vec<LineHit>,
    /// Multiplicity of the intersection at the curve's real point at
    /// infinity (0 unless the line is asymptotic).
    pub at_infinity: usize,
}

impl LineMeet {
    /// Parameters that were not among the caller's known roots.
    pub fn new_hits<'a>(&'a self, known: &'a [f64]) -> impl Iterator<Item = &'a LineHit> + 'a {
        let mut used = vec![false; known.len()];
        self.hits.iter().filter(move |h| {
            for (k, u) in known.iter().zip(used.iter_mut()) {
                if !*u && h.t == *k {
                    *u = true;
                    return false;
                }
            }
            true
        })
    }
}

/// Intersects the line `base + t * dir` with the curve.
///
/// The restriction of `f` to the line is a real cubic in `t`. Each entry of
/// `known_roots` is divided out first, so with two known roots the third
/// comes from Vieta's formula; otherwise the remainder is solved in closed
/// form. If the leading coefficient vanishes at tolerance the line is
/// asymptotic and the missing roots are counted at infinity.
pub fn line_intersections(
    curve: &CubicCurve,
    base: PlanePoint,
    dir: Direction,
    known_roots: &[f64],
    tol: Tolerance,
) -> Result<LineMeet> {
    let d = PlanePoint::from_complex(dir.as_complex());
    // work along the unit direction so the coefficients share one length
    // scale; `tau = t * len`
    let len = d.norm();
    let e = d * (1.0 / len);
    let g = curve.restriction(base, e);
    let s = curve.restriction_scale(base, e);
    if g.iter().zip(&s).all(|(v, sc)| v.abs() <= tol.rel_eps * sc) {
        return Err(Error::ReducibleLine);
    }
    let mut degree = 3;
    while degree > 0 && g[degree].abs() <= tol.rel_eps * s[degree] {
        degree -= 1;
    }
    let at_infinity = 3 - degree;
    if known_roots.len() > degree {
        return Err(Error::DegenerateInput("more known roots than the line meets the curve"));
    }
    let full = &g[..=degree];
    let known: Vec<f64> = known_roots.iter().map(|t| t * len).collect();
    let mut rest = full.to_vec();
    for &r in &known {
        rest = roots::deflate(&rest, r);
    }
    let eps = tol.rel_eps * 0.1;
    let mut found: Vec<f64> = match rest.len() {
        0 | 1 => Vec::new(),
        2 => vec![-rest[0] / rest[1]],
        3 => roots::quadratic(rest[0], rest[1], rest[2], eps),
        _ => roots::cubic(rest[0], rest[1], rest[2], rest[3], eps),
    };
    // Newton along the line with `f` evaluated at the point itself, so the
    // rounding is that of the root's neighbourhood rather than the base's.
    let local = |tau: f64| {
        let q = PlanePoint::new(base.x + tau * e.x, base.y + tau * e.y);
        let (fx, fy) = gradient(curve, q);
        (evaluate(curve, q), fx * e.x + fy * e.y, curve.monomial_scale(q))
    };
    if !known.is_empty() {
        for t in found.iter_mut() {
            // beside a known root the restriction is nearly flat
            let gap = known.iter().map(|k| (*t - k).abs()).fold(f64::INFINITY, f64::min);
            for _ in 0..2 {
                let (v, dv, _) = local(*t);
                let step = v / dv;
                if !step.is_finite() || step.abs() > 1e-3 * gap {
                    break;
                }
                let next = *t - step;
                if local(next).0.abs() >= v.abs() {
                    break;
                }
                *t = next;
            }
        }
    }
    let spread = |tau: f64| {
        let (_, dv, mag) = local(tau);
        f64::EPSILON * mag / dv.abs()
    };
    let mut ts: Vec<(f64, f64)> = found.into_iter().map(|tau| (tau / len, spread(tau))).collect();
    ts.extend(known_roots.iter().map(|&t| (t, 0.0)));
    ts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let hits = ts
        .into_iter()
        .filter(|(t, _)| t.is_finite())
        .map(|(t, spread)| LineHit {
            t,
            point: PlanePoint::new(base.x + t * d.x, base.y + t * d.y),
            spread,
        })
        .collect();
    Ok(LineMeet { hits, at_infinity })
}

/// `(u, v)` when the cubic part is `(x^2 + y^2)(u x + v y)` at tolerance.
pub fn leading_pair(curve: &CubicCurve, tol: Tolerance) -> Option<(f64, f64)> {
    let [c30, c21, c12, c03, ..] = curve.coeffs;
    let scale = c30.abs().max(c21.abs()).max(c12.abs()).max(c03.abs());
    if (c30 - c12).abs() > tol.at(scale) || (c21 - c03).abs() > tol.at(scale) {
        return None;
    }
    if c30.hypot(c21) <= tol.at(scale) {
        return None;
    }
    Some((c30, c21))
}

fn require_pair(curve: &CubicCurve, tol: Tolerance) -> Result<(f64, f64)> {
    leading_pair(curve, tol).ok_or(Error::NotIsogonalForm)
}

/// The closed-form spiral center `(p, q)` read off the coefficients.
pub fn spiral_center_from_coefficients(curve: &CubicCurve, tol: Tolerance) -> Result<PlanePoint> {
    let (u, v) = require_pair(curve, tol)?;
    let (c20, c11, c02) = (curve.c20(), curve.c11(), curve.c02());
    let den = 2.0 * (u * u + v * v);
    Ok(PlanePoint::new(
        (u * c02 - u * c20 - v * c11) / den,
        (v * c20 - u * c11 - v * c02) / den,
    ))
}

/// The unique real asymptote, tangent to the curve at `(v : -u : 0)`.
pub fn asymptote_of(curve: &CubicCurve, tol: Tolerance) -> Result<Line> {
    let (u, v) = require_pair(curve, tol)?;
    let (c20, c11, c02) = (curve.c20(), curve.c11(), curve.c02());
    let r = u * u + v * v;
    Line::new(r * u, r * v, u * u * c02 - u * v * c11 + v * v * c20)
}

/// Direction of the real point at infinity `(v : -u : 0)`.
pub fn infinity_direction(curve: &CubicCurve, tol: Tolerance) -> Result<Direction> {
    let (u, v) = require_pair(curve, tol)?;
    Direction::from_xy(v, -u)
}

/// A point of the complex projective plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousPoint {
    pub coords: [Complex; 3],
}

impl HomogeneousPoint {
    pub const I: HomogeneousPoint = HomogeneousPoint {
        coords: [Complex::new(1.0, 0.0), Complex::new(0.0, 1.0), Complex::new(0.0, 0.0)],
    };
    pub const J: HomogeneousPoint = HomogeneousPoint {
        coords: [Complex::new(1.0, 0.0), Complex::new(0.0, -1.0), Complex::new(0.0, 0.0)],
    };

    /// Representative whose first non-negligible coordinate is 1.
    pub fn normalized(&self) -> HomogeneousPoint {
        let m = self.coords.iter().fold(0.0f64, |m, c| m.max(c.norm()));
        let lead = self
            .coords
            .iter()
            .find(|c| c.norm() > 1e-14 * m)
            .copied()
            .unwrap_or(Complex::new(1.0, 0.0));
        HomogeneousPoint {
            coords: self.coords.map(|c| c / lead),
        }
    }

    /// Representative with the largest coordinate of modulus 1.
    pub fn balanced(&self) -> HomogeneousPoint {
        let (idx, _) =
            self.coords.iter().enumerate().fold(
                (0, 0.0f64),
                |(bi, bm), (i, c)| if c.norm() > bm { (i, c.norm()) } else { (bi, bm) },
            );
        let lead = self.coords[idx];
        HomogeneousPoint {
            coords: self.coords.map(|c| c / lead),
        }
    }

    /// Cross-product residual of two representatives, relative.
    pub fn distance_to(&self, other: &HomogeneousPoint) -> f64 {
        let a = self.balanced().coords;
        let b = other.balanced().coords;
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in i + 1..3 {
                worst = worst.max((a[i] * b[j] - a[j] * b[i]).norm());
            }
        }
        worst
    }

    /// The affine point, when `Z` is not negligible and the ratio is real.
    pub fn to_plane(&self, tol: Tolerance) -> Option<PlanePoint> {
        let b = self.balanced().coords;
        if b[2].norm() <= tol.rel_eps {
            return None;
        }
        let x = b[0] / b[2];
        let y = b[1] / b[2];
        if x.im.abs() > tol.at(x.norm()) || y.im.abs() > tol.at(y.norm()) {
            return None;
        }
        Some(PlanePoint::new(x.re, y.re))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangencyCheck {
    pub holds: bool,
    pub meet: HomogeneousPoint,
}

/// Intersects the tangents at the circular points `I = (1:i:0)`,
/// `J = (1:-i:0)` and tests whether the meet lies on the curve.
pub fn circular_tangency_check(curve: &CubicCurve, tol: Tolerance) -> Result<TangencyCheck> {
    require_pair(curve, tol)?;
    let ti = curve.gradient_homogeneous(HomogeneousPoint::I.coords);
    let tj = curve.gradient_homogeneous(HomogeneousPoint::J.coords);
    let meet = [
        ti[1] * tj[2] - ti[2] * tj[1],
        ti[2] * tj[0] - ti[0] * tj[2],
        ti[0] * tj[1] - ti[1] * tj[0],
    ];
    let ni = ti.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let nj = tj.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let nm = meet.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if nm <= tol.rel_eps * ni * nj {
        return Err(Error::NotIsogonal(Reason::LeadingAllZero));
    }
    let meet = HomogeneousPoint { coords: meet }.balanced();
    let value = curve.eval_homogeneous(meet.coords);
    let holds = tol.is_small(value.norm(), curve.homogeneous_scale(meet.coords));
    Ok(TangencyCheck { holds, meet })
}

/// A factorization `f = line * conic`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factorization {
    pub line: Line,
    pub conic: Conic,
}

/// Searches for a real linear factor.
///
/// Any linear factor `l1 x + l2 y + l0` has its direction `(-l2, l1)` among
/// the real roots of the cubic part, so only those directions are tried.
/// Along each one the restriction of `f` to the parallel line at offset `s`
/// has coefficients polynomial in `s`; the offsets where they vanish are
/// the candidates, and each is confirmed by least-squares division.
pub fn reducibility(curve: &CubicCurve, tol: Tolerance) -> Option<Factorization> {
    let f = curve.normalized();
    let mut best: Option<(f64, Factorization)> = None;
    for d in asymptotic_directions(&f) {
        let n = PlanePoint::new(-d.y, d.x);
        for s in line_offsets(&f, n, d) {
            let line = match Line::new(n.x, n.y, -s) {
                Ok(l) => l,
                Err(_) => continue,
            };
            let (conic, resid) = divide_by_line(&f, &line);
            if best.as_ref().is_none_or(|(r, _)| resid < *r) {
                best = Some((resid, Factorization { line, conic }));
            }
        }
    }
    let thresh = tol.rel_eps * f.norm();
    best.filter(|(r, _)| *r <= thresh).map(|(_, mut fac)| {
        let scale = curve.max_abs();
        fac.conic.coeffs = fac.conic.coeffs.map(|c| c * scale);
        fac
    })
}

/// Unit directions where the cubic part of `f` vanishes.
fn asymptotic_directions(f: &CubicCurve) -> Vec<PlanePoint> {
    let [c30, c21, c12, c03, ..] = f.coeffs;
    let eps = 1e-10;
    let top = c30.abs().max(c21.abs()).max(c12.abs()).max(c03.abs());
    let mut ts: Vec<f64> = Vec::new();
    let mut dirs = Vec::new();
    // h(t, 1) = c30 t^3 + c21 t^2 + c12 t + c03; a vanishing c30 means
    // (1, 0) is a root.
    if c30.abs() <= eps * top {
        dirs.push(PlanePoint::new(1.0, 0.0));
        if c21.abs() > eps * top {
            ts = roots::quadratic(c03, c12, c21, eps);
        } else if c12.abs() > eps * top {
            ts = vec![-c03 / c12];
        }
    } else {
        ts = roots::cubic(c03, c12, c21, c30, eps);
    }
    ts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + a.abs()));
    for t in ts {
        let n = t.hypot(1.0);
        dirs.push(PlanePoint::new(t / n, 1.0 / n));
    }
    dirs
}

/// Offsets `s` for which the line `{s n + t d}` may be a component.
fn line_offsets(f: &CubicCurve, n: PlanePoint, d: PlanePoint) -> Vec<f64> {
    // restriction coefficients g1, g2, g0 sampled at s = -1, 0, 1, 2, then
    // interpolated as polynomials in s of degree <= 3
    let samples = [-1.0, 0.0, 1.0, 2.0];
    let vals: Vec<[f64; 4]> = samples.iter().map(|&s| f.restriction(n * s, d)).collect();
    let interp = |k: usize| -> [f64; 4] {
        let y: Vec<f64> = vals.iter().map(|g| g[k]).collect();
        newton_interp_cubic(&samples, &y)
    };
    let eps = 1e-10;
    for k in [2usize, 1, 0] {
        let p = interp(k);
        let m = p.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if m <= 1e-12 {
            continue;
        }
        let mut deg = 3;
        while deg > 0 && p[deg].abs() <= eps * m {
            deg -= 1;
        }
        return match deg {
            0 => Vec::new(),
            1 => vec![-p[0] / p[1]],
            2 => roots::quadratic(p[0], p[1], p[2], eps),
            _ => roots::cubic(p[0], p[1], p[2], p[3], eps),
        };
    }
    // the whole family is contained in the curve; any offset will do
    vec![0.0]
}

/// Power-basis coefficients of the cubic through four samples.
fn newton_interp_cubic(xs: &[f64; 4], ys: &[f64]) -> [f64; 4] {
    let m = nalgebra::Matrix4::from_fn(|r, c| xs[r].powi(c as i32));
    let b = nalgebra::Vector4::from_iterator(ys.iter().copied());
    let sol = m.lu().solve(&b).unwrap_or_else(nalgebra::Vector4::zeros);
    [sol[0], sol[1], sol[2], sol[3]]
}

/// Least-squares conic `q` minimizing `|line * q - f|`; returns the
/// residual norm alongside.
fn divide_by_line(f: &CubicCurve, line: &Line) -> (Conic, f64) {
    const CONIC: [(u32, u32); 6] = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)];
    let mut a = nalgebra::SMatrix::<f64, 10, 6>::zeros();
    for (col, &(i, j)) in CONIC.iter().enumerate() {
        for (&(di, dj), lc) in [(1, 0), (0, 1), (0, 0)].iter().zip([line.l1, line.l2, line.l0]) {
            let row = monomial_index(i + di, j + dj).expect("degree <= 3");
            a[(row, col)] += lc;
        }
    }
    let b = nalgebra::SVector::<f64, 10>::from_iterator(f.coeffs.iter().copied());
    let svd = a.svd(true, true);
    let q = svd
        .solve(&b, 1e-14)
        .unwrap_or_else(|_| nalgebra::SVector::<f64, 6>::zeros());
    let resid = (a * q - b).norm();
    (Conic::new([q[0], q[1], q[2], q[3], q[4], q[5]]), resid)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    LeadingPairMismatch,
    LeadingAllZero,
    SpiralCenterOffCurve,
    Reducible,
    Ok,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::LeadingPairMismatch => "LeadingPairMismatch",
            Reason::LeadingAllZero => "LeadingAllZero",
            Reason::SpiralCenterOffCurve => "SpiralCenterOffCurve",
            Reason::Reducible => "Reducible",
            Reason::Ok => "Ok",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassificationReport {
    pub is_isogonal: bool,
    pub reason: Reason,
    pub profile: Option<IsoCubicProfile>,
}

impl ClassificationReport {
    fn reject(reason: Reason) -> Self {
        ClassificationReport {
            is_isogonal: false,
            reason,
            profile: None,
        }
    }
}

/// Decides whether `curve` is the isogonal cubic of some quadrilateral.
///
/// The curve must have cubic part `(x^2+y^2)(ux+vy)`, have no linear
/// factor, and pass through its own spiral center. On success the profile
/// carries the recovered involution constant as well.
pub fn classify_cubic(curve: &CubicCurve, tol: Tolerance) -> ClassificationReport {
    let (u, v) = match leading_pair(curve, tol) {
        Some(pair) => pair,
        None => {
            let [c30, c21, c12, c03, ..] = curve.coeffs;
            let reason = if c30 == 0.0 && c21 == 0.0 && c12 == 0.0 && c03 == 0.0 {
                Reason::LeadingAllZero
            } else {
                Reason::LeadingPairMismatch
            };
            return ClassificationReport::reject(reason);
        }
    };
    if reducibility(curve, tol).is_some() {
        return ClassificationReport::reject(Reason::Reducible);
    }
    let center = match spiral_center_from_coefficients(curve, tol) {
        Ok(p) => p,
        Err(_) => return ClassificationReport::reject(Reason::LeadingAllZero),
    };
    if !curve.contains(center, tol) {
        return ClassificationReport::reject(Reason::SpiralCenterOffCurve);
    }
    let (asymptote, infinity_direction) = match (asymptote_of(curve, tol), infinity_direction(curve, tol)) {
        (Ok(a), Ok(d)) => (a, d),
        _ => return ClassificationReport::reject(Reason::LeadingAllZero),
    };
    let sampled = recover_involution_constant(curve, center, infinity_direction, tol);
    let closed = involution_constant_from_coefficients(curve, center, tol);
    let involution_k = match (sampled, closed) {
        (Ok(ks), Ok(kc)) => {
            // both describe the same map; keep the one whose images sit on
            // the curve more tightly
            if involution_misfit(curve, center, kc, tol) < involution_misfit(curve, center, ks, tol) {
                kc
            } else {
                ks
            }
        }
        (Ok(k), Err(_)) | (Err(_), Ok(k)) => k,
        (Err(_), Err(_)) => Complex::new(0.0, 0.0),
    };
    ClassificationReport {
        is_isogonal: true,
        reason: Reason::Ok,
        profile: Some(IsoCubicProfile {
            u,
            v,
            spiral_center: center,
            involution_k,
            asymptote,
            infinity_direction,
        }),
    }
}

/// Recovers `k` of the involution `z -> P + k/(z - P)` from curve points.
///
/// For a sample `X`, `Y` is the third point of line `PX` and `X'` the
/// second point of the line through `Y` toward the point at infinity; then
/// `k = (X - P)(X' - P)`. Five well-spread samples must agree.
pub fn recover_involution_constant(
    curve: &CubicCurve,
    center: PlanePoint,
    infinity: Direction,
    tol: Tolerance,
) -> Result<Complex> {
    let scale = curve_extent(curve, center);
    let mut ks: Vec<Complex> = Vec::new();
    let pc = center.to_complex();
    for x in probe_points(curve, center, scale, tol) {
        if x.dist(center) <= 1e-3 * scale {
            continue;
        }
        let Ok(dir) = Direction::between(center, x) else {
            continue;
        };
        let Ok(meet) = line_intersections(curve, center, dir, &[0.0, 1.0], tol) else {
            continue;
        };
        if meet.at_infinity > 0 {
            continue;
        }
        let Some(y) = meet.new_hits(&[0.0, 1.0]).next().map(|h| h.point) else {
            continue;
        };
        // a far intermediate point costs digits in the second chord
        if y.dist(center) > 4.0 * scale {
            continue;
        }
        let Ok(m2) = line_intersections(curve, y, infinity, &[0.0], tol) else {
            continue;
        };
        if m2.at_infinity != 1 {
            continue;
        }
        let Some(xc) = m2.new_hits(&[0.0]).next().map(|h| h.point) else {
            continue;
        };
        if xc.dist(center) > 4.0 * scale {
            continue;
        }
        ks.push((x.to_complex() - pc) * (xc.to_complex() - pc));
        if ks.len() == 5 {
            break;
        }
    }
    if ks.len() < 5 {
        return Err(Error::DegenerateInput(
            "too few curve samples to recover the involution",
        ));
    }
    let k = ks[2];
    let spread = ks.iter().map(|kj| (kj - k).norm()).fold(0.0f64, f64::max);
    if spread > 1e3 * tol.at(k.norm()) {
        return Err(Error::DegenerateInput(
            "involution constant is not constant along the curve",
        ));
    }
    let n = ks.len() as f64;
    Ok(ks.iter().sum::<Complex>() / n)
}

/// Worst relative residual of `P + k/(X - P)` over the probe points.
fn involution_misfit(curve: &CubicCurve, center: PlanePoint, k: Complex, tol: Tolerance) -> f64 {
    let scale = curve_extent(curve, center);
    let pc = center.to_complex();
    probe_points(curve, center, scale, tol)
        .into_iter()
        .filter(|x| x.dist(center) > 1e-3 * scale)
        .map(|x| PlanePoint::from_complex(pc + k / (x.to_complex() - pc)))
        .filter(|y| y.dist(center) <= 4.0 * scale)
        .map(|y| curve.relative_residual(y))
        .fold(0.0, f64::max)
}

/// Closed form of the involution constant.
///
/// Centered at `P`, a quadrilateral's cubic is
/// `Im[(z^2 - s1 z + k)(conj(z)^2 - conj(s2 z) + conj(k))]`, whose linear
/// part is `Im(conj(k) sigma z)` with `sigma = s2 - s1 = -v + iu`. Reading
/// the translated linear coefficients `F x + G y` gives
/// `k = conj((G + iF) / sigma)`, independent of the curve's overall scale.
pub fn involution_constant_from_coefficients(
    curve: &CubicCurve,
    center: PlanePoint,
    tol: Tolerance,
) -> Result<Complex> {
    let (u, v) = require_pair(curve, tol)?;
    let t = curve.translated(center);
    let sigma = Complex::new(-v, u);
    Ok((Complex::new(t.c01(), t.c10()) / sigma).conj())
}

/// Rough size of the interesting part of the curve around `center`.
pub(crate) fn curve_extent(curve: &CubicCurve, center: PlanePoint) -> f64 {
    let f = curve.normalized().translated(center);
    let top = f.c30().hypot(f.c21());
    let quad = f.coeffs[4..7].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let lin = f.c10().abs().max(f.c01().abs());
    (quad / top).max((lin / top).sqrt()).max(center.norm() * 1e-3).max(1e-6)
}

/// Deterministic curve points from horizontal and vertical scanlines
/// around `center`.
fn probe_points(curve: &CubicCurve, center: PlanePoint, scale: f64, tol: Tolerance) -> Vec<PlanePoint> {
    const OFFSETS: [f64; 8] = [0.37, -0.61, 1.13, -1.71, 0.23, 2.39, -0.89, -2.93];
    let mut out = Vec::new();
    for &o in &OFFSETS {
        for (base, dir) in [
            (
                PlanePoint::new(center.x, center.y + o * scale),
                Direction::from_xy(1.0, 0.0),
            ),
            (
                PlanePoint::new(center.x + o * scale, center.y),
                Direction::from_xy(0.0, 1.0),
            ),
        ] {
            let dir = dir.expect("axis direction");
            if let Ok(meet) = line_intersections(curve, base, dir, &[], tol) {
                out.extend(meet.hits.iter().map(|h| h.point));
            }
        }
    }
    out
}

/// Random curve points: horizontal scanlines at uniform heights in
/// `[ymin, ymax]`, keeping roots with `|x - xmid| <= xhalf`.
pub fn scanline_samples<R: Rng + ?Sized>(
    curve: &CubicCurve,
    rng: &mut R,
    count: usize,
    window: [f64; 4],
    tol: Tolerance,
) -> Vec<PlanePoint> {
    let [x0, x1, y0, y1] = window;
    let dir = Direction::from_xy(1.0, 0.0).expect("axis direction");
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 50 * count.max(1) {
        attempts += 1;
        let y = rng.gen_range(y0..y1);
        let Ok(meet) = line_intersections(curve, PlanePoint::new(0.0, y), dir, &[], tol) else {
            continue;
        };
        let hits: Vec<_> = meet.hits.iter().filter(|h| h.t >= x0 && h.t <= x1).collect();
        if hits.is_empty() {
            continue;
        }
        let h = hits[rng.gen_range(0..hits.len())];
        out.push(h.point);
    }
    out
}
