//! Property tests over random quadrilaterals and curve points.

use isocubic::constructions as cons;
use isocubic::cubic;
use isocubic::degenerate::{self, DegenerateLocus};
use isocubic::verify::admissible_points;
use isocubic::{
    oracle, quad, CurveContext, DegeneracyClass, Direction, Line, PlanePoint, ProjPoint, Quadrilateral, Tolerance,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn arb_point() -> impl Strategy<Value = PlanePoint> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| PlanePoint::new(x, y))
}

fn arb_generic_quad() -> impl Strategy<Value = Quadrilateral> {
    (arb_point(), arb_point(), arb_point(), arb_point()).prop_filter_map("generic quadrilateral", |(a, b, c, d)| {
        let q = Quadrilateral::new(a, b, c, d).ok()?;
        (quad::classify(&q, tol()) == DegeneracyClass::Generic).then_some(q)
    })
}

/// A context with a handful of well-conditioned curve points.
fn arb_sampled() -> impl Strategy<Value = (CurveContext, Vec<PlanePoint>)> {
    (arb_generic_quad(), any::<u64>()).prop_filter_map("enough curve points", |(q, seed)| {
        let ctx = CurveContext::from_quadrilateral(&q, tol()).ok()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = admissible_points(&ctx, &mut rng, 4);
        (pts.len() == 4).then_some((ctx, pts))
    })
}

fn conj(ctx: &CurveContext, x: PlanePoint) -> Option<PlanePoint> {
    cons::conjugate(ctx, x.into()).ok().and_then(ProjPoint::finite)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vertices_lie_on_the_cubic(q in arb_generic_quad()) {
        let c = quad::cubic_from_quadrilateral(&q, tol()).unwrap();
        for v in q.vertices() {
            prop_assert!(c.relative_residual(v) <= 1e-9);
        }
    }

    #[test]
    fn spiral_center_balances_the_diagonals(q in arb_generic_quad()) {
        let p = quad::spiral_center(&q, tol()).unwrap().to_complex();
        let [a, b, c, d] = q.vertices().map(PlanePoint::to_complex);
        let lhs = (a - p) * (c - p);
        let rhs = (b - p) * (d - p);
        prop_assert!((lhs - rhs).norm() <= 1e-9 * lhs.norm().max(rhs.norm()).max(1.0));
        let curve = quad::cubic_from_quadrilateral(&q, tol()).unwrap();
        prop_assert!(curve.relative_residual(PlanePoint::from_complex(p)) <= 1e-9);
    }

    #[test]
    fn spiral_inverse_is_an_involution(q in arb_generic_quad(), x in arb_point()) {
        let prof = quad::profile_from_quadrilateral(&q, tol()).unwrap();
        prop_assume!(x.dist(prof.spiral_center) > 1e-2 * q.scale());
        let Some(y) = quad::spiral_inverse(x, &prof, tol()).finite() else { return Ok(()) };
        let back = quad::spiral_inverse(y, &prof, tol()).finite().unwrap();
        prop_assert!(back.dist(x) <= 1e-9 * q.scale().max(x.norm()).max(y.norm()));
    }

    #[test]
    fn classification_recovers_the_profile(q in arb_generic_quad()) {
        let curve = quad::cubic_from_quadrilateral(&q, tol()).unwrap();
        let want = quad::profile_from_quadrilateral(&q, tol()).unwrap();
        let report = cubic::classify_cubic(&curve, tol());
        prop_assert!(report.is_isogonal);
        let got = report.profile.unwrap();
        prop_assert!(got.spiral_center.dist(want.spiral_center) <= 1e-8 * q.scale());
        prop_assert!(got.asymptote.proportional_to(&want.asymptote, Tolerance::new(1e-8, 1e-300).unwrap()));
        prop_assert!((got.u * want.v - got.v * want.u).abs() <= 1e-9 * got.u.hypot(got.v) * want.u.hypot(want.v));
    }

    #[test]
    fn tangency_meet_is_the_spiral_center(q in arb_generic_quad()) {
        let curve = quad::cubic_from_quadrilateral(&q, tol()).unwrap();
        let meet = cubic::circular_tangency_check(&curve, tol()).unwrap();
        prop_assert!(meet.holds);
        let p = cubic::spiral_center_from_coefficients(&curve, tol()).unwrap();
        prop_assert!(meet.meet.to_plane(tol()).unwrap().dist(p) <= 1e-8 * q.scale());
    }

    #[test]
    fn lines_meet_the_cubic_at_most_thrice(q in arb_generic_quad(), base in arb_point(), angle in 0.0..std::f64::consts::PI) {
        let curve = quad::cubic_from_quadrilateral(&q, tol()).unwrap();
        let dir = Direction::from_xy(angle.cos(), angle.sin()).unwrap();
        let Ok(meet) = cubic::line_intersections(&curve, base, dir, &[], tol()) else { return Ok(()) };
        prop_assert!(meet.hits.len() + meet.at_infinity <= 3);
        if meet.hits.len() == 3 {
            let g = curve.restriction(base, PlanePoint::new(angle.cos(), angle.sin()));
            let sum: f64 = meet.hits.iter().map(|h| h.t).sum();
            let scale = meet.hits.iter().map(|h| h.t.abs()).sum::<f64>().max(1.0);
            prop_assert!((sum + g[2] / g[3]).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn gradient_matches_finite_differences((ctx, pts) in arb_sampled()) {
        let h = 1e-6 * ctx.scale();
        for x in pts {
            let (gx, gy) = cubic::gradient(ctx.curve(), x);
            let (fx, fy) = oracle::fd_gradient(ctx.curve(), x, h);
            prop_assert!((gx - fx).hypot(gy - fy) <= 1e-5 * gx.hypot(gy).max(ctx.curve().gradient_scale(x)));
        }
    }

    #[test]
    fn conjugation_preserves_the_curve((ctx, pts) in arb_sampled()) {
        for x in pts {
            let xc = conj(&ctx, x).unwrap();
            prop_assert!(ctx.curve().relative_residual(xc) <= 1e-9);
            let s = ctx.scale().max(x.norm()).max(xc.norm());
            prop_assert!(ctx.newton_line().distance(x.midpoint(xc)) <= 1e-9 * s);
        }
    }

    #[test]
    fn cross_intersections_of_two_pairs_lie_on_the_curve((ctx, pts) in arb_sampled()) {
        let (x, y) = (pts[0], pts[1]);
        let (Some(xc), Some(yc)) = (conj(&ctx, x), conj(&ctx, y)) else { return Ok(()) };
        for (l1, l2) in [((x, y), (xc, yc)), ((x, yc), (xc, y))] {
            let (Ok(a), Ok(b)) = (Line::through(l1.0, l1.1), Line::through(l2.0, l2.1)) else { continue };
            let Some(m) = a.intersect(&b, tol()) else { continue };
            if m.dist(ctx.spiral_center()) > 1e3 * ctx.scale() {
                continue;
            }
            prop_assert!(ctx.curve().relative_residual(m) <= 1e-9);
        }
    }

    #[test]
    fn pairs_regenerate_the_curve((ctx, pts) in arb_sampled()) {
        let q = cons::generating_quadrilateral(&ctx, pts[0], pts[1]).unwrap();
        let c = quad::cubic_from_quadrilateral(&q, tol()).unwrap();
        prop_assert!(c.cosine_similarity(ctx.curve()) >= 1.0 - 1e-9);
    }

    #[test]
    fn third_point_conjugates_to_the_reflection_meet((ctx, pts) in arb_sampled()) {
        let (x, y) = (pts[0], pts[1]);
        let r = cons::third_point_by_reflection(&ctx, x, y).unwrap();
        let (Some(w), Some(z)) = (r.w.finite(), r.z.finite()) else { return Ok(()) };
        let Some(wc) = conj(&ctx, w) else { return Ok(()) };
        prop_assert!(wc.dist(z) <= 1e-8 * ctx.scale().max(z.norm()));
    }

    #[test]
    fn tangents_at_a_pair_meet_at_a_conjugate((ctx, pts) in arb_sampled()) {
        // tangents at X and X' meet at the conjugate of the third point of XX'
        let x = pts[0];
        let xc = conj(&ctx, x).unwrap();
        let tx = cons::tangent_by_reflection(&ctx, x.into()).unwrap().line;
        let Ok(txc) = cons::tangent_by_reflection(&ctx, xc.into()) else { return Ok(()) };
        let Some(meet) = tx.intersect(&txc.line, tol()) else { return Ok(()) };
        let Ok(ProjPoint::Finite(w)) = cons::chord_third_point(&ctx, x.into(), xc.into()) else { return Ok(()) };
        let Some(wc) = conj(&ctx, w) else { return Ok(()) };
        let s = ctx.scale().max(meet.norm()).max(wc.norm());
        prop_assume!(s <= 1e3 * ctx.scale());
        prop_assert!(meet.dist(wc) <= 1e-7 * s);
    }

    #[test]
    fn collinear_circle_inverts_one_diagonal_pair_onto_the_other(
        xs in prop::array::uniform4(-10.0..10.0f64),
        angle in 0.0..std::f64::consts::PI,
    ) {
        let (cos, sin) = (angle.cos(), angle.sin());
        let on = |t: f64| PlanePoint::new(1.0 + t * cos, -2.0 + t * sin);
        let Ok(q) = Quadrilateral::new(on(xs[0]), on(xs[1]), on(xs[2]), on(xs[3])) else { return Ok(()) };
        prop_assume!(quad::classify(&q, tol()) == DegeneracyClass::Collinear);
        let Ok(DegenerateLocus::LineAndCircle { circle: Some(c), .. }) = degenerate::collinear_locus(&q, tol()) else {
            return Ok(());
        };
        let invert = |p: PlanePoint| {
            let w = p - c.center;
            c.center + w * (c.radius_sq / w.dot(w))
        };
        prop_assert!(invert(q.a).dist(q.c) <= 1e-9 * q.scale());
        prop_assert!(invert(q.b).dist(q.d) <= 1e-9 * q.scale());
    }

    #[test]
    fn parallelograms_give_hyperbolas(a in arb_point(), u in arb_point(), v in arb_point()) {
        prop_assume!(u.cross(v).abs() > 1.0);
        let q = Quadrilateral::new(a, a + u, a + u + v, a + v).unwrap();
        prop_assume!(quad::classify(&q, tol()) == DegeneracyClass::Parallelogram);
        let DegenerateLocus::LineAtInfinityAndHyperbola { conic } = degenerate::parallelogram_locus(&q, tol()).unwrap() else {
            return Err(TestCaseError::fail("expected a hyperbola"));
        };
        prop_assert!(conic.discriminant() > 0.0);
        for v in q.vertices() {
            prop_assert!(conic.eval(v).abs() <= 1e-9 * conic.monomial_scale(v));
        }
    }
}
