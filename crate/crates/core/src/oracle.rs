//! Brute-force verifiers that share no code path with the closed forms
//! they check.
//!
//! Root finding here isolates roots between critical points (found
//! recursively from the derivative) and bisects sign changes, so it never
//! touches the Cardano/quadratic formulas in [`crate::roots`].

use crate::cubic::{self, CubicCurve, MONOMIALS};
use crate::error::{Error, Result};
use crate::geom::{Circle, Conic, PlanePoint};

/// All real roots of a polynomial given lowest degree first, repeated by
/// multiplicity, ascending.
pub fn real_roots(coeffs: &[f64]) -> Result<Vec<f64>> {
    let max = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if max == 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    let mut p: Vec<f64> = coeffs.iter().map(|c| c / max).collect();
    while p.last().is_some_and(|c| c.abs() <= 1e-14) {
        p.pop();
    }
    let mut out = Vec::new();
    for (r, m) in isolate(&p) {
        out.extend(std::iter::repeat_n(r, m));
    }
    Ok(out)
}

fn derivative(p: &[f64]) -> Vec<f64> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect()
}

fn horner(p: &[f64], t: f64) -> f64 {
    p.iter().rev().fold(0.0, |v, &c| v * t + c)
}

fn abs_horner(p: &[f64], t: f64) -> f64 {
    p.iter().rev().fold(0.0, |v, &c| v * t.abs() + c.abs())
}

fn isolate(p: &[f64]) -> Vec<(f64, usize)> {
    let deg = p.len().saturating_sub(1);
    match deg {
        0 => return Vec::new(),
        1 => return vec![(-p[0] / p[1], 1)],
        _ => {}
    }
    let lead = p[deg];
    let bound = 1.0 + p[..deg].iter().fold(0.0f64, |m, c| m.max((c / lead).abs()));
    let crit = isolate(&derivative(p));

    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut breaks: Vec<(f64, bool)> = vec![(-bound, false)];
    for &(c, m) in &crit {
        let is_root = horner(p, c).abs() <= 1e-11 * abs_horner(p, c);
        if is_root {
            out.push((c, m + 1));
        }
        breaks.push((c, is_root));
    }
    breaks.push((bound, false));
    breaks.sort_by(|a, b| a.0.total_cmp(&b.0));

    for w in breaks.windows(2) {
        let ((l, l_root), (r, r_root)) = (w[0], w[1]);
        if l_root || r_root || r <= l {
            continue;
        }
        let (vl, vr) = (horner(p, l), horner(p, r));
        if vl == 0.0 || vr == 0.0 || (vl > 0.0) == (vr > 0.0) {
            continue;
        }
        out.push((bisect(p, l, r, vl), 1));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

fn bisect(p: &[f64], mut l: f64, mut r: f64, mut vl: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (l + r);
        if m <= l || m >= r {
            break;
        }
        let vm = horner(p, m);
        if vm == 0.0 {
            return m;
        }
        if (vm > 0.0) == (vl > 0.0) {
            l = m;
            vl = vm;
        } else {
            r = m;
        }
    }
    0.5 * (l + r)
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(a: &[f64], e: u32) -> Vec<f64> {
    (0..e).fold(vec![1.0], |acc, _| poly_mul(&acc, a))
}

/// Real points where a circle meets the curve, with multiplicity.
///
/// The circle is parametrized rationally by
/// `s -> c + r((1-s^2), 2s)/(1+s^2)`; clearing denominators gives a
/// degree-6 polynomial in `s`. The point `s = infinity` is `c - (r, 0)`.
/// Each root is polished by 2-D Newton on the pair (curve, circle).
pub fn circle_curve_intersections(curve: &CubicCurve, circle: &Circle) -> Result<Vec<PlanePoint>> {
    if circle.radius_sq <= 0.0 {
        return Err(Error::DegenerateInput("circle must have positive radius"));
    }
    let r = circle.radius();
    let (cx, cy) = (circle.center.x, circle.center.y);
    let xs = [cx + r, 0.0, cx - r];
    let ys = [cy, 2.0 * r, cy];
    let ws = [1.0, 0.0, 1.0];
    let build = |coeffs: &[f64; 10], xs: &[f64], ys: &[f64]| -> Vec<f64> {
        let mut poly = vec![0.0; 7];
        for (&(i, j), &c) in MONOMIALS.iter().zip(coeffs) {
            let term = poly_mul(&poly_mul(&poly_pow(xs, i), &poly_pow(ys, j)), &poly_pow(&ws, 3 - i - j));
            for (k, t) in term.iter().enumerate() {
                poly[k] += c * t;
            }
        }
        poly
    };
    let poly = build(curve.coeffs(), &xs, &ys);
    let abs_coeffs = curve.coeffs().map(f64::abs);
    let scale_poly = build(&abs_coeffs, &xs.map(f64::abs), &ys.map(f64::abs));
    let scale = scale_poly.iter().fold(0.0f64, |m, v| m.max(*v));
    if poly.iter().all(|c| c.abs() <= 1e-10 * scale) {
        return Err(Error::ComponentCircle);
    }
    let mut out: Vec<PlanePoint> = real_roots(&poly)?
        .into_iter()
        .map(|s| {
            let w = 1.0 + s * s;
            PlanePoint::new(cx + r * (1.0 - s * s) / w, cy + 2.0 * r * s / w)
        })
        .collect();
    if poly[6].abs() <= 1e-10 * scale_poly[6].max(1e-300) {
        out.push(PlanePoint::new(cx - r, cy));
    }
    Ok(out.into_iter().map(|p| newton_polish(curve, circle, p)).collect())
}

fn newton_polish(curve: &CubicCurve, circle: &Circle, mut p: PlanePoint) -> PlanePoint {
    for _ in 0..4 {
        let f = cubic::evaluate(curve, p);
        let g = circle.power(p);
        let (fx, fy) = cubic::gradient(curve, p);
        let (gx, gy) = (2.0 * (p.x - circle.center.x), 2.0 * (p.y - circle.center.y));
        let det = fx * gy - fy * gx;
        if det.abs() <= 1e-14 * (fx.hypot(fy) * gx.hypot(gy)) {
            break;
        }
        let dx = (f * gy - fy * g) / det;
        let dy = (fx * g - f * gx) / det;
        let next = PlanePoint::new(p.x - dx, p.y - dy);
        let before = curve.relative_residual(p) + g.abs() / circle.radius_sq;
        let after = curve.relative_residual(next) + circle.power(next).abs() / circle.radius_sq;
        if after.is_nan() || after >= before {
            break;
        }
        p = next;
    }
    p
}

/// Central finite-difference gradient.
pub fn fd_gradient(curve: &CubicCurve, p: PlanePoint, h: f64) -> (f64, f64) {
    let f = |x: f64, y: f64| cubic::evaluate(curve, PlanePoint::new(x, y));
    let gx = (f(p.x + h, p.y) - f(p.x - h, p.y)) / (2.0 * h);
    let gy = (f(p.x, p.y + h) - f(p.x, p.y - h)) / (2.0 * h);
    (gx, gy)
}

/// The conic through five points, from the null space of the 5x6 design
/// matrix.
pub fn conic_through_five(points: [PlanePoint; 5]) -> Result<Conic> {
    let len = points.iter().fold(0.0f64, |m, p| m.max(p.norm())).max(1e-300);
    let mut a = nalgebra::Matrix6::<f64>::zeros();
    for (row, p) in points.iter().enumerate() {
        let (x, y) = (p.x / len, p.y / len);
        let r = [x * x, x * y, y * y, x, y, 1.0];
        for (col, v) in r.iter().enumerate() {
            a[(row, col)] = *v;
        }
    }
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..6).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let top = svd.singular_values[order[0]];
    if svd.singular_values[order[4]] <= 1e-10 * top {
        return Err(Error::DegenerateInput("five points do not determine a unique conic"));
    }
    let n = vt.row(order[5]);
    let l2 = len * len;
    Ok(Conic::new([n[0] / l2, n[1] / l2, n[2] / l2, n[3] / len, n[4] / len, n[5]]).normalized())
}
