//! Randomized property suite for one curve.
//!
//! Each trial draws its own points from a ChaCha stream keyed by
//! `(seed, trial)`, so results do not depend on how trials are scheduled.
//! Residuals are relative: distances are divided by the curve's scale,
//! curve membership uses the monomial-scale residual.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constructions::{self as cons, CurveContext};
use crate::cubic::{self, CubicCurve};
use crate::error::Error;
use crate::exec::Exec;
use crate::geom::{Circle, PlanePoint, ProjPoint, Tolerance};
use crate::oracle;
use crate::quad;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            trials: 100,
            seed: 1,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Trials in which the property was checked.
    pub checked: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub trials: usize,
    pub seed: u64,
    pub properties: Vec<PropertyOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }
}

/// Name and pass threshold of every property, in report order.
pub const PROPERTIES: [(&str, f64); 14] = [
    ("classification", 0.0),
    ("spiral_center_on_curve", 1e-9),
    ("conjugation_involution", 1e-9),
    ("conjugate_midpoint_on_newton_line", 1e-9),
    ("tangent_by_reflection", 1e-7),
    ("third_point_by_reflection", 1e-8),
    ("spiral_center_concyclic", 1e-8),
    ("circle_fourth_point", 1e-8),
    ("circle_meets_at_most_four", 4.0),
    ("cubic_addition_equidistant", 1e-8),
    ("cubic_addition_associative", 1e-7),
    ("parallel_bisector_partner_on_curve", 1e-9),
    ("parallel_bisector_partner_bisectors", 1e-7),
    ("regeneration", 1e-9),
];

const CHECKED_PER_TRIAL: usize = PROPERTIES.len() - 2;

pub fn verify_curve(curve: &CubicCurve, tol: Tolerance, cfg: VerifyConfig) -> VerifyReport {
    let mut props: Vec<PropertyOutcome> = PROPERTIES
        .iter()
        .map(|&(name, threshold)| PropertyOutcome {
            name,
            passed: true,
            checked: 0,
            failures: 0,
            max_residual: 0.0,
            threshold,
        })
        .collect();
    let ctx = match CurveContext::from_curve(curve, tol) {
        Ok(ctx) => ctx,
        Err(_) => {
            props[0].checked = 1;
            props[0].failures = 1;
            props[0].passed = false;
            props[0].max_residual = 1.0;
            props.truncate(1);
            return VerifyReport {
                trials: cfg.trials,
                seed: cfg.seed,
                properties: props,
            };
        }
    };
    props[0].checked = 1;
    record(&mut props[1], Some(curve.relative_residual(ctx.spiral_center())));

    let rows = cfg.exec.map_range(cfg.trials, |i| run_trial(&ctx, cfg.seed, i as u64));
    for row in rows {
        for (slot, r) in props[2..].iter_mut().zip(row) {
            record(slot, r);
        }
    }
    VerifyReport {
        trials: cfg.trials,
        seed: cfg.seed,
        properties: props,
    }
}

fn record(p: &mut PropertyOutcome, r: Option<f64>) {
    let Some(r) = r else { return };
    p.checked += 1;
    if r.is_nan() || r > p.threshold {
        p.failures += 1;
        p.passed = false;
    }
    p.max_residual = if r.is_nan() {
        f64::INFINITY
    } else {
        p.max_residual.max(r)
    };
}

/// Random curve points that are well conditioned for the constructions.
pub fn admissible_points(ctx: &CurveContext, rng: &mut ChaCha8Rng, count: usize) -> Vec<PlanePoint> {
    let scale = ctx.scale();
    let p = ctx.spiral_center();
    let r = 3.0 * scale;
    let window = [p.x - r, p.x + r, p.y - r, p.y + r];
    let loose = Tolerance::new(1e-6, 1e-300).expect("valid tolerance");
    let mut out = Vec::with_capacity(count);
    for _ in 0..20 {
        for x in cubic::scanline_samples(ctx.curve(), rng, count, window, ctx.tolerance()) {
            if out.len() == count {
                return out;
            }
            if x.dist(p) < 1e-2 * scale || ctx.curve().is_singular_at(x, loose) {
                continue;
            }
            let Some(xc) = quad::spiral_inverse(x, ctx.profile(), ctx.tolerance()).finite() else {
                continue;
            };
            if xc.dist(p) > 1e2 * scale || xc.dist(x) < 1e-3 * scale {
                continue;
            }
            if out.iter().any(|o: &PlanePoint| o.dist(x) < 1e-2 * scale) {
                continue;
            }
            out.push(x);
        }
    }
    out
}

/// Maps a construction result to a residual: inputs the construction does
/// not accept skip the check, anything else is a failure.
fn check<T>(r: Result<T, Error>, f: impl FnOnce(T) -> Option<f64>) -> Option<f64> {
    match r {
        Ok(v) => f(v),
        Err(
            Error::DegenerateInput(_) | Error::AtInfinity(_) | Error::Coincident(_) | Error::InvalidQuadrilateral(_),
        ) => None,
        Err(_) => Some(f64::INFINITY),
    }
}

/// Distance between the lifts `(x, y, s)` on the unit sphere, so sums that
/// land near the point at infinity compare projectively.
fn chordal(a: PlanePoint, b: PlanePoint, s: f64) -> f64 {
    let lift = |q: PlanePoint| (s * s + q.dot(q)).sqrt();
    a.dist(b) * s / (lift(a) * lift(b))
}

fn run_trial(ctx: &CurveContext, seed: u64, trial: u64) -> [Option<f64>; CHECKED_PER_TRIAL] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut out = [None; CHECKED_PER_TRIAL];
    let pts = admissible_points(ctx, &mut rng, 3);
    if pts.len() < 3 {
        return out;
    }
    let (x, y, w) = (pts[0], pts[1], pts[2]);
    let curve = ctx.curve();
    let p = ctx.spiral_center();
    let s = ctx.scale().max(x.norm()).max(y.norm());
    let fin = ProjPoint::finite;

    out[0] = check(cons::conjugate(ctx, x.into()), |xc| {
        let xc = fin(xc)?;
        let back = fin(cons::conjugate(ctx, xc.into()).ok()?)?;
        let oracle = fin(quad::spiral_inverse(x, ctx.profile(), ctx.tolerance()))?;
        Some(
            (back.dist(x) / s)
                .max(xc.dist(oracle) / s.max(oracle.norm()))
                .max(curve.relative_residual(xc)),
        )
    });
    out[1] = check(cons::conjugate(ctx, x.into()), |xc| {
        let xc = fin(xc)?;
        Some(ctx.newton_line().distance(x.midpoint(xc)) / s)
    });
    out[2] = check(cons::tangent_by_reflection(ctx, x.into()), |t| {
        let g = cubic::tangent_line_at(curve, x, ctx.tolerance()).ok()?;
        Some(if t.used_gradient {
            f64::INFINITY
        } else {
            t.line.direction().angle_to(g.direction())
        })
    });
    let third = cons::third_point_by_reflection(ctx, x, y);
    out[3] = check(third.clone(), |r| {
        let w = fin(r.w)?;
        let vieta = fin(cons::chord_third_point(ctx, x.into(), y.into()).ok()?)?;
        Some(w.dist(vieta) / s.max(vieta.norm()))
    });
    out[4] = check(third.clone(), |r| {
        let z = fin(r.z)?;
        let c = Circle::through(p, x, y, ctx.tolerance()).ok()?;
        if c.radius() > 1e3 * s {
            return None;
        }
        Some((z.dist(c.center) - c.radius()).abs() / c.radius().max(s))
    });
    out[5] = check(cons::circle_fourth_point(ctx, x, y, w), |h| {
        let c = Circle::through(x, y, w, ctx.tolerance()).ok()?;
        let mut worst = curve
            .relative_residual(h)
            .max((h.dist(c.center) - c.radius()).abs() / c.radius());
        let conj = |q: PlanePoint| fin(cons::conjugate(ctx, q.into()).ok()?);
        let (xc, yc, wc) = (conj(x)?, conj(y)?, conj(w)?);
        for (a, b, d) in [(xc, yc, w), (x, yc, wc), (xc, y, wc)] {
            if let Ok(k) = Circle::through(a, b, d, ctx.tolerance()) {
                worst = worst.max((h.dist(k.center) - k.radius()).abs() / k.radius().max(s));
            }
        }
        Some(worst)
    });
    {
        use rand::Rng;
        let center = PlanePoint::new(p.x + rng.gen_range(-3.0..3.0) * s, p.y + rng.gen_range(-3.0..3.0) * s);
        let radius = rng.gen_range(0.05..3.0) * s;
        out[6] = check(
            oracle::circle_curve_intersections(curve, &Circle::new(center, radius * radius)),
            |h| Some(h.len() as f64),
        );
    }
    out[7] = check(cons::conjugate(ctx, x.into()), |xc| {
        let xc = fin(xc)?;
        let sum = fin(cons::cubic_add(ctx, x.into(), xc.into()).ok()?)?;
        Some((sum.dist(x) - sum.dist(xc)).abs() / s.max(sum.norm()))
    });
    out[8] = (|| {
        let left = cons::cubic_add(ctx, cons::cubic_add(ctx, x.into(), y.into()).ok()?, w.into()).ok()?;
        let right = cons::cubic_add(ctx, x.into(), cons::cubic_add(ctx, y.into(), w.into()).ok()?).ok()?;
        match (left, right) {
            (ProjPoint::Finite(a), ProjPoint::Finite(b)) => Some(chordal(a, b, s)),
            (ProjPoint::Infinite(_), ProjPoint::Infinite(_)) => Some(0.0),
            _ => None,
        }
    })();
    let partner = cons::parallel_bisector_partner(ctx, x).map(|yp| yp.finite().filter(|yp| yp.dist(p) <= 1e2 * s));
    out[9] = check(partner.clone(), |yp| Some(curve.relative_residual(yp?)));
    out[10] = check(partner, |yp| {
        let [bx, _] = ctx.bisectors_at(x).ok()?;
        let by = ctx.bisectors_at(yp?).ok()?;
        Some(by.iter().map(|d| d.sine_to(bx)).fold(f64::INFINITY, f64::min))
    });
    out[11] = check(cons::generating_quadrilateral(ctx, x, y), |q| {
        let c = quad::cubic_from_quadrilateral(&q, ctx.tolerance()).ok()?;
        Some(1.0 - c.cosine_similarity(curve))
    });
    out
}
