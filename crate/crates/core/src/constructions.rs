//! Straightedge-style constructions on an isogonal cubic.
//!
//! Points at infinity are explicit: the only real one on the curve is the
//! point `P∞` in the direction of the Newton line, returned as
//! [`ProjPoint::Infinite`]. Chords follow the multiplicity convention: the
//! "third point" of a tangent chord is the remaining intersection, and a
//! chord through a singular point returns that point.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cubic::{self, CubicCurve};
use crate::error::{Error, Result};
use crate::geom::{
    isogonal_direction, reflect_point_over_point, Circle, Complex, Direction, Line, PlanePoint, ProjPoint, Tolerance,
};
use crate::quad::{self, IsoCubicProfile, Quadrilateral};

/// A curve point and its isogonal conjugate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugatePair {
    pub x: PlanePoint,
    pub x_conj: ProjPoint,
}

/// An isogonal cubic with the data every construction needs.
#[derive(Debug, Clone)]
pub struct CurveContext {
    curve: CubicCurve,
    profile: IsoCubicProfile,
    quad: Option<Quadrilateral>,
    pairs: Vec<(PlanePoint, PlanePoint)>,
    newton: Line,
    extent: f64,
    tol: Tolerance,
}

const SYNTHESIZED_PAIRS: usize = 3;

impl CurveContext {
    pub fn from_quadrilateral(q: &Quadrilateral, tol: Tolerance) -> Result<Self> {
        let curve = quad::cubic_from_quadrilateral(q, tol)?;
        let profile = quad::profile_from_quadrilateral(q, tol)?;
        let newton = quad::newton_line(q, tol)?;
        let extent = cubic::curve_extent(&curve, profile.spiral_center).max(q.scale() * 1e-3);
        let mut ctx = CurveContext {
            curve,
            profile,
            quad: Some(*q),
            pairs: vec![(q.a, q.c), (q.b, q.d)],
            newton,
            extent,
            tol,
        };
        ctx.pairs.extend(ctx.synthesize_pairs());
        Ok(ctx)
    }

    /// Fails with `NotIsogonal` unless the curve classifies as isogonal.
    pub fn from_curve(curve: &CubicCurve, tol: Tolerance) -> Result<Self> {
        let report = cubic::classify_cubic(curve, tol);
        let profile = match report.profile {
            Some(p) if report.is_isogonal => p,
            _ => return Err(Error::NotIsogonal(report.reason)),
        };
        let extent = cubic::curve_extent(curve, profile.spiral_center);
        let mut ctx = CurveContext {
            curve: *curve,
            profile,
            quad: None,
            pairs: Vec::new(),
            // replaced below once a conjugate pair is known
            newton: Line::through_dir(profile.spiral_center, profile.infinity_direction)?,
            extent,
            tol,
        };
        ctx.pairs = ctx.synthesize_pairs();
        let Some(&(x, y)) = ctx.pairs.first() else {
            return Err(Error::DegenerateInput("no conjugate pair found on the curve"));
        };
        ctx.newton = Line::through_dir(x.midpoint(y), profile.infinity_direction)?;
        Ok(ctx)
    }

    /// Deterministic conjugate pairs from scanline samples near `P`.
    fn synthesize_pairs(&self) -> Vec<(PlanePoint, PlanePoint)> {
        let p = self.profile.spiral_center;
        let r = 3.0 * self.extent;
        let window = [p.x - r, p.x + r, p.y - r, p.y + r];
        let mut rng = ChaCha8Rng::seed_from_u64(0x1509_0c0b);
        let mut out: Vec<(PlanePoint, PlanePoint)> = Vec::new();
        for x in cubic::scanline_samples(&self.curve, &mut rng, 64, window, self.tol) {
            if out.len() == SYNTHESIZED_PAIRS {
                break;
            }
            let Some(y) = quad::spiral_inverse(x, &self.profile, self.tol).finite() else {
                continue;
            };
            let far = |a: PlanePoint, b: PlanePoint| a.dist(b) > 1e-2 * self.extent;
            if !far(x, y) || !far(x, p) || !far(y, p) || y.dist(p) > 1e2 * self.extent {
                continue;
            }
            if !self.curve.contains(y, self.tol) {
                continue;
            }
            if out
                .iter()
                .any(|&(a, b)| !far(a, x) || !far(b, x) || !far(a, y) || !far(b, y))
            {
                continue;
            }
            out.push((x, y));
        }
        out
    }

    pub fn curve(&self) -> &CubicCurve {
        &self.curve
    }

    pub fn profile(&self) -> &IsoCubicProfile {
        &self.profile
    }

    pub fn quadrilateral(&self) -> Option<&Quadrilateral> {
        self.quad.as_ref()
    }

    /// Known conjugate pairs used as the reference angle `∠AXC`.
    pub fn reference_pairs(&self) -> &[(PlanePoint, PlanePoint)] {
        &self.pairs
    }

    pub fn newton_line(&self) -> Line {
        self.newton
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    pub fn spiral_center(&self) -> PlanePoint {
        self.profile.spiral_center
    }

    pub fn infinity(&self) -> ProjPoint {
        ProjPoint::Infinite(self.profile.infinity_direction)
    }

    /// Coordinate scale of the curve's interesting region.
    pub fn scale(&self) -> f64 {
        self.extent.max(self.profile.spiral_center.norm())
    }

    fn ensure_on_curve(&self, p: PlanePoint) -> Result<()> {
        cubic::ensure_on_curve(&self.curve, p, self.tol)
    }

    fn ensure_proj_on_curve(&self, p: ProjPoint) -> Result<()> {
        match p {
            ProjPoint::Finite(x) => self.ensure_on_curve(x),
            ProjPoint::Infinite(d) if d.parallel_to(self.profile.infinity_direction, self.tol) => Ok(()),
            ProjPoint::Infinite(_) => Err(Error::NotOnCurve {
                residual: f64::INFINITY,
            }),
        }
    }

    fn same(&self, a: PlanePoint, b: PlanePoint) -> bool {
        a.dist(b) <= 1e3 * self.tol.at(self.scale().max(a.norm()).max(b.norm()))
    }

    /// The reference pair farthest (by its nearer member) from `x`.
    fn reference_pair_for(&self, x: PlanePoint) -> Option<(PlanePoint, PlanePoint)> {
        self.pairs
            .iter()
            .copied()
            .filter(|&(r, s)| !self.same(r, x) && !self.same(s, x))
            .max_by(|a, b| {
                let da = x.dist(a.0).min(x.dist(a.1));
                let db = x.dist(b.0).min(x.dist(b.1));
                da.total_cmp(&db)
            })
    }

    /// The two sides of the reference angle at `x`.
    pub fn reference_angle_at(&self, x: PlanePoint) -> Option<(Direction, Direction)> {
        let (r, s) = self.reference_pair_for(x)?;
        Some((Direction::between(x, r).ok()?, Direction::between(x, s).ok()?))
    }

    /// Angle bisectors of the reference angle at `x`.
    pub fn bisectors_at(&self, x: PlanePoint) -> Result<[Direction; 2]> {
        let (u, v) = self
            .reference_angle_at(x)
            .ok_or(Error::DegenerateInput("no reference pair avoids the point"))?;
        Ok(u.bisectors(v))
    }
}

/// Third intersection of the chord `xy` with the curve.
pub fn chord_third_point(ctx: &CurveContext, x: ProjPoint, y: ProjPoint) -> Result<ProjPoint> {
    ctx.ensure_proj_on_curve(x)?;
    ctx.ensure_proj_on_curve(y)?;
    third_unchecked(ctx, x, y)
}

fn third_unchecked(ctx: &CurveContext, x: ProjPoint, y: ProjPoint) -> Result<ProjPoint> {
    third_with_spread(ctx, x, y).map(|(p, _)| p)
}

/// The third point and a rough bound on its rounding error.
fn third_with_spread(ctx: &CurveContext, x: ProjPoint, y: ProjPoint) -> Result<(ProjPoint, f64)> {
    let curve = &ctx.curve;
    let tol = ctx.tol;
    let inf = ctx.profile.infinity_direction;
    match (x, y) {
        (ProjPoint::Finite(x), ProjPoint::Finite(y)) => {
            if curve.is_singular_at(x, tol) {
                return Ok((ProjPoint::Finite(x), 0.0));
            }
            if curve.is_singular_at(y, tol) {
                return Ok((ProjPoint::Finite(y), 0.0));
            }
            if ctx.same(x, y) {
                let t = cubic::tangent_line_at(curve, x, Tolerance::new(1e-6, tol.abs_floor)?)?;
                let meet = cubic::line_intersections(curve, x, t.direction(), &[0.0, 0.0], tol)?;
                return Ok(third_from_meet(&meet, &[0.0, 0.0], inf));
            }
            let meet = cubic::line_intersections(curve, x, Direction::between(x, y)?, &[0.0, 1.0], tol)?;
            Ok(third_from_meet(&meet, &[0.0, 1.0], inf))
        }
        (ProjPoint::Finite(x), ProjPoint::Infinite(_)) | (ProjPoint::Infinite(_), ProjPoint::Finite(x)) => {
            if curve.is_singular_at(x, tol) {
                return Ok((ProjPoint::Finite(x), 0.0));
            }
            let meet = cubic::line_intersections(curve, x, inf, &[0.0], tol)?;
            if meet.at_infinity >= 2 {
                return Ok((ProjPoint::Infinite(inf), 0.0));
            }
            Ok(third_from_meet(&meet, &[0.0], inf))
        }
        (ProjPoint::Infinite(_), ProjPoint::Infinite(_)) => {
            let asym = ctx.profile.asymptote;
            let meet = cubic::line_intersections(curve, asym.foot(), asym.direction(), &[], tol)?;
            Ok(meet
                .hits
                .first()
                .map(|h| (ProjPoint::Finite(h.point), h.spread))
                .unwrap_or((ProjPoint::Infinite(inf), 0.0)))
        }
    }
}

fn third_from_meet(meet: &cubic::LineMeet, known: &[f64], inf: Direction) -> (ProjPoint, f64) {
    match meet.new_hits(known).next() {
        Some(h) => (ProjPoint::Finite(h.point), h.spread),
        None => (ProjPoint::Infinite(inf), 0.0),
    }
}

/// Isogonal conjugate of a curve point: `Y = PX ∩ C`, then `X' = P∞Y ∩ C`.
pub fn conjugate(ctx: &CurveContext, x: ProjPoint) -> Result<ProjPoint> {
    ctx.ensure_proj_on_curve(x)?;
    conjugate_unchecked(ctx, x)
}

fn conjugate_unchecked(ctx: &CurveContext, x: ProjPoint) -> Result<ProjPoint> {
    let p = ctx.profile.spiral_center;
    let xf = match x {
        ProjPoint::Infinite(_) => return Ok(ProjPoint::Finite(p)),
        ProjPoint::Finite(xf) => xf,
    };
    if ctx.curve.is_singular_at(xf, ctx.tol) {
        return Ok(x);
    }
    if ctx.same(xf, p) {
        return Ok(ctx.infinity());
    }
    // Conjugation is the chord map through any conjugate pair, taken in
    // either order: (P, P∞) or a reference pair. Keep the best conditioned.
    // An error in the middle point shifts (P∞ first) or tilts (finite
    // first) the second chord; the root moves by that offset times the
    // cotangent of the crossing angle.
    let route = |first: ProjPoint, second: ProjPoint| -> Result<(ProjPoint, f64)> {
        let (y, e1) = third_with_spread(ctx, first, x)?;
        let (w, e2) = third_with_spread(ctx, second, y)?;
        let (ProjPoint::Finite(yf), ProjPoint::Finite(wf)) = (y, w) else {
            return Ok((w, e1 + e2));
        };
        let (offset, dir) = match second {
            ProjPoint::Finite(g) => (e1 * wf.dist(g) / yf.dist(g).max(f64::MIN_POSITIVE), wf - g),
            ProjPoint::Infinite(d) => (e1, PlanePoint::from_complex(d.as_complex())),
        };
        let (gx, gy) = cubic::gradient(&ctx.curve, wf);
        let along = (gx * dir.x + gy * dir.y).abs();
        let across = (gy * dir.x - gx * dir.y).abs();
        Ok((w, offset * (1.0 + across / along.max(f64::MIN_POSITIVE)) + e2))
    };
    let mut pairs = vec![(ProjPoint::Finite(p), ctx.infinity())];
    pairs.extend(
        ctx.pairs
            .iter()
            .filter(|&&(r, s)| !ctx.same(r, xf) && !ctx.same(s, xf))
            .map(|&(r, s)| (ProjPoint::Finite(r), ProjPoint::Finite(s))),
    );
    let mut best: Option<(ProjPoint, f64)> = None;
    let mut first_err = None;
    for (a, b) in pairs {
        for (first, second) in [(a, b), (b, a)] {
            match route(first, second) {
                Ok((w, e)) if best.is_none_or(|(_, be)| e < be) => best = Some((w, e)),
                Ok(_) => {}
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
    }
    match (best, first_err) {
        (Some((w, _)), _) => Ok(w),
        (None, Some(e)) => Err(e),
        (None, None) => Err(Error::DegenerateInput("no chord route for the conjugate")),
    }
}

pub fn conjugate_on_curve(ctx: &CurveContext, x: PlanePoint) -> Result<ConjugatePair> {
    Ok(ConjugatePair {
        x,
        x_conj: conjugate(ctx, ProjPoint::Finite(x))?,
    })
}

/// Tangent line from the isogonal-reflection construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectedTangent {
    pub line: Line,
    /// Set when no reference pair was usable and the gradient was used.
    pub used_gradient: bool,
}

/// The isogonal of `XX'` in the reference angle at `X` is the tangent at
/// `X`. At `P∞` the tangent is the asymptote.
pub fn tangent_by_reflection(ctx: &CurveContext, x: ProjPoint) -> Result<ReflectedTangent> {
    let xf = match x {
        ProjPoint::Infinite(_) => {
            ctx.ensure_proj_on_curve(x)?;
            return Ok(ReflectedTangent {
                line: ctx.profile.asymptote,
                used_gradient: false,
            });
        }
        ProjPoint::Finite(xf) => xf,
    };
    ctx.ensure_on_curve(xf)?;
    if ctx.curve.is_singular_at(xf, ctx.tol) {
        return Err(Error::SingularPoint);
    }
    let w = match conjugate_unchecked(ctx, x)? {
        ProjPoint::Infinite(d) => Some(d),
        ProjPoint::Finite(y) if !ctx.same(xf, y) => Direction::between(xf, y).ok(),
        ProjPoint::Finite(_) => None,
    };
    if let (Some(w), Some((u, v))) = (w, ctx.reference_angle_at(xf)) {
        return Ok(ReflectedTangent {
            line: Line::through_dir(xf, isogonal_direction(w, u, v))?,
            used_gradient: false,
        });
    }
    Ok(ReflectedTangent {
        line: cubic::tangent_line_at(&ctx.curve, xf, ctx.tol)?,
        used_gradient: true,
    })
}

/// Result of the line-intersection construction on a chord `XY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectedThird {
    /// Third point of the chord on the curve.
    pub w: ProjPoint,
    /// Meet of the isogonals of `XY` at `X` and at `Y`; the conjugate of `w`.
    pub z: ProjPoint,
}

/// Reflects the chord `XY` over the reference bisectors at both ends; the
/// two reflected lines meet at `Z`, and the third point of the chord is
/// the conjugate of `Z`.
pub fn third_point_by_reflection(ctx: &CurveContext, x: PlanePoint, y: PlanePoint) -> Result<ReflectedThird> {
    ctx.ensure_on_curve(x)?;
    ctx.ensure_on_curve(y)?;
    if ctx.same(x, y) {
        return Err(Error::Coincident("x"));
    }
    for p in [x, y] {
        if ctx.curve.is_singular_at(p, ctx.tol) {
            return Ok(ReflectedThird {
                w: ProjPoint::Finite(p),
                z: ProjPoint::Finite(p),
            });
        }
    }
    let isogonal_at = |from: PlanePoint, to: PlanePoint| -> Result<Line> {
        let (u, v) = ctx
            .reference_angle_at(from)
            .ok_or(Error::DegenerateInput("no reference pair avoids the point"))?;
        Line::through_dir(from, isogonal_direction(Direction::between(from, to)?, u, v))
    };
    let lx = isogonal_at(x, y)?;
    let ly = isogonal_at(y, x)?;
    let z = match lx.intersect(&ly, ctx.tol) {
        Some(z) => ProjPoint::Finite(z),
        None => ctx.infinity(),
    };
    let w = match conjugate_unchecked(ctx, z)? {
        ProjPoint::Finite(w) => ProjPoint::Finite(polish_on_chord(ctx, x, y, w)),
        w => w,
    };
    Ok(ReflectedThird { w, z })
}

/// Newton steps along the chord `xy` starting from the projection of `w`.
/// The conjugate of a point close to `P` carries its error magnified.
fn polish_on_chord(ctx: &CurveContext, x: PlanePoint, y: PlanePoint, w: PlanePoint) -> PlanePoint {
    let d = y - x;
    let len2 = d.dot(d);
    let mut t = (w - x).dot(d) / len2;
    for _ in 0..6 {
        let q = x + d * t;
        let (gx, gy) = cubic::gradient(&ctx.curve, q);
        let step = cubic::evaluate(&ctx.curve, q) / (gx * d.x + gy * d.y);
        if !step.is_finite() {
            break;
        }
        t -= step;
        if step.abs() <= 4.0 * f64::EPSILON * t.abs().max(1.0) {
            break;
        }
    }
    let out = x + d * t;
    let gap = out.dist(x).min(out.dist(y));
    let ok = out.is_finite()
        && ctx.curve.relative_residual(out) <= ctx.tol.rel_eps
        && out.dist(w) <= 1e-2 * ctx.scale().max(w.norm())
        && out.dist(w) < 0.5 * gap;
    if ok {
        out
    } else {
        w
    }
}

/// Fourth meet of the circle `(EFG)` with the curve.
///
/// The point also lies on `(E'F'G)`, `(EF'G')` and `(E'FG')`, so it is the
/// reflection of the shared point over the line of centers of `(EFG)` and
/// one of those. When every one of them is degenerate (a conjugate at
/// infinity, a collinear triple, or a circle equal to `(EFG)`), the point
/// comes from Vieta on the circle: with `z = c + R w`, `|w| = 1`, the
/// curve restricts to a Laurent polynomial in `w` of degrees `-2..2`, so
/// the product of the four roots is `conj(a_2)/a_2`.
pub fn circle_fourth_point(ctx: &CurveContext, e: PlanePoint, f: PlanePoint, g: PlanePoint) -> Result<PlanePoint> {
    for p in [e, f, g] {
        ctx.ensure_on_curve(p)?;
        if ctx.curve.is_singular_at(p, ctx.tol) {
            return Err(Error::SingularPoint);
        }
    }
    let base = Circle::through(e, f, g, ctx.tol)?;
    let conj = |p: PlanePoint| {
        conjugate_unchecked(ctx, ProjPoint::Finite(p))
            .ok()
            .and_then(ProjPoint::finite)
    };
    let (ec, fc, gc) = (conj(e), conj(f), conj(g));
    let routes = [(ec, fc, Some(g), g), (Some(e), fc, gc, e), (ec, Some(f), gc, f)];
    let mut best: Option<(f64, PlanePoint)> = None;
    for (p1, p2, p3, shared) in routes {
        let (Some(p1), Some(p2), Some(p3)) = (p1, p2, p3) else {
            continue;
        };
        let Ok(other) = Circle::through(p1, p2, p3, ctx.tol) else {
            continue;
        };
        let sep = base.center.dist(other.center) / base.radius().max(other.radius());
        if sep.is_nan() || sep <= 1e-6 {
            continue;
        }
        let Ok(axis) = Line::through(base.center, other.center) else {
            continue;
        };
        let h = reflect_over_line(shared, &axis);
        if sep > 1e-3 {
            return Ok(h);
        }
        if best.is_none_or(|(s, _)| sep > s) {
            best = Some((sep, h));
        }
    }
    if let Some((_, h)) = best {
        return Ok(h);
    }
    circle_fourth_by_vieta(ctx, &base, [e, f, g])
}

fn reflect_over_line(p: PlanePoint, line: &Line) -> PlanePoint {
    let n2 = line.l1 * line.l1 + line.l2 * line.l2;
    let s = 2.0 * line.eval(p) / n2;
    PlanePoint::new(p.x - s * line.l1, p.y - s * line.l2)
}

fn circle_fourth_by_vieta(ctx: &CurveContext, circle: &Circle, known: [PlanePoint; 3]) -> Result<PlanePoint> {
    const N: usize = 8;
    let c = circle.center.to_complex();
    let r = circle.radius();
    let mut a2 = Complex::new(0.0, 0.0);
    let mut scale: f64 = 0.0;
    for n in 0..N {
        let w = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * n as f64 / N as f64);
        let p = PlanePoint::from_complex(c + w * r);
        a2 += w.powi(-2) * cubic::evaluate(&ctx.curve, p);
        scale = scale.max(ctx.curve.monomial_scale(p));
    }
    a2 /= N as f64;
    if a2.norm() <= ctx.tol.at(scale) {
        return Err(Error::DegenerateInput(
            "circle meets the curve in fewer than four points",
        ));
    }
    let prod: Complex = known.iter().map(|p| (p.to_complex() - c) / r).product();
    let wh = a2.conj() / a2 / prod;
    Ok(PlanePoint::from_complex(c + wh / wh.norm() * r))
}

/// Chord-and-tangent sum with `P` as the zero: the third point of the
/// line through `P` and the third point of `XY`.
pub fn cubic_add(ctx: &CurveContext, x: ProjPoint, y: ProjPoint) -> Result<ProjPoint> {
    let z = chord_third_point(ctx, x, y)?;
    third_unchecked(ctx, ProjPoint::Finite(ctx.profile.spiral_center), z)
}

/// Relative size of `f` and its derivative at `x` along the line toward
/// `z`; both vanish when the line `zx` is tangent at `x`.
pub fn double_root_residual(curve: &CubicCurve, x: PlanePoint, z: PlanePoint) -> f64 {
    let d = z - x;
    let n = d.norm();
    if n == 0.0 {
        return f64::INFINITY;
    }
    let d = d * (1.0 / n);
    let g = curve.restriction(x, d);
    let s = curve.restriction_scale(x, d);
    let rel = |v: f64, sc: f64| if sc == 0.0 { v.abs() } else { v.abs() / sc };
    rel(g[0], s[0]).max(rel(g[1], s[1]))
}

/// Curve points whose tangent passes through `z`.
///
/// With `X` the conjugate of `Z`, the candidates are the meets of the
/// curve with the two bisectors of the reference angle at `X`. When
/// `Z = P`, `X = P∞` and the bisector is the Newton line. Each candidate
/// is kept only if the line from `z` is tangent there.
pub fn tangent_points_from(ctx: &CurveContext, z: PlanePoint) -> Result<Vec<PlanePoint>> {
    ctx.ensure_on_curve(z)?;
    if ctx.curve.is_singular_at(z, ctx.tol) {
        return Err(Error::SingularPoint);
    }
    let mut candidates: Vec<PlanePoint> = Vec::new();
    match conjugate_unchecked(ctx, ProjPoint::Finite(z))? {
        ProjPoint::Infinite(d) => {
            let meet = cubic::line_intersections(&ctx.curve, ctx.newton.foot(), d, &[], ctx.tol)?;
            candidates.extend(meet.hits.iter().map(|h| h.point));
        }
        ProjPoint::Finite(x) => {
            for dir in ctx.bisectors_at(x)? {
                let meet = cubic::line_intersections(&ctx.curve, x, dir, &[0.0], ctx.tol)?;
                candidates.extend(meet.new_hits(&[0.0]).map(|h| h.point));
            }
        }
    }
    let mut out: Vec<PlanePoint> = Vec::new();
    for c in candidates {
        if ctx.same(c, z) || out.iter().any(|&o| ctx.same(o, c)) {
            continue;
        }
        if double_root_residual(&ctx.curve, c, z) <= 1e-8 {
            out.push(c);
        }
    }
    Ok(out)
}

/// The reflection of `X` over `PX ∩ MN`; the reference bisectors at the
/// two points are parallel.
pub fn parallel_bisector_partner(ctx: &CurveContext, x: PlanePoint) -> Result<ProjPoint> {
    ctx.ensure_on_curve(x)?;
    let p = ctx.profile.spiral_center;
    if ctx.same(x, p) {
        return Err(Error::DegenerateInput("the line PX is undefined at the spiral center"));
    }
    let px = Line::through(p, x)?;
    Ok(match px.intersect(&ctx.newton, ctx.tol) {
        Some(o) => ProjPoint::Finite(reflect_point_over_point(x, o)),
        None => ctx.infinity(),
    })
}

/// `(S1, S2, S1', S2')`: a quadrilateral whose diagonals are the two
/// conjugate pairs, and whose isogonal cubic is the context's curve.
pub fn generating_quadrilateral(ctx: &CurveContext, seed1: PlanePoint, seed2: PlanePoint) -> Result<Quadrilateral> {
    let mut conj = [seed1, seed2];
    for (slot, s) in conj.iter_mut().zip([seed1, seed2]) {
        if ctx.curve.is_singular_at(s, ctx.tol) {
            return Err(Error::SingularPoint);
        }
        *slot = match conjugate(ctx, ProjPoint::Finite(s))? {
            ProjPoint::Finite(c) => c,
            ProjPoint::Infinite(d) => return Err(Error::AtInfinity(d)),
        };
    }
    Quadrilateral::new(seed1, seed2, conj[0], conj[1])
}
