//! Closed-form real roots of quadratics and cubics.
//!
//! Coefficients are given lowest degree first. Roots come back ascending,
//! repeated according to multiplicity. A pair of complex roots whose
//! imaginary parts are lost in rounding (discriminant within `eps` of zero
//! relative to its own scale) is reported as a real double root, which is
//! what tangency detection needs.

/// Roots of `c0 + c1 t + c2 t^2`, `c2 != 0`.
pub fn quadratic(c0: f64, c1: f64, c2: f64, eps: f64) -> Vec<f64> {
    debug_assert!(c2 != 0.0);
    let disc = c1 * c1 - 4.0 * c2 * c0;
    let scale = c1 * c1 + 4.0 * (c2 * c0).abs();
    if disc.abs() <= eps * scale {
        let r = -c1 / (2.0 * c2);
        return vec![r, r];
    }
    if disc < 0.0 {
        return Vec::new();
    }
    let q = -0.5 * (c1 + c1.signum() * disc.sqrt());
    let (mut r1, mut r2) = if q == 0.0 { (0.0, 0.0) } else { (q / c2, c0 / q) };
    if r1 > r2 {
        std::mem::swap(&mut r1, &mut r2);
    }
    vec![r1, r2]
}

/// Roots of `c0 + c1 t + c2 t^2 + c3 t^3`, `c3 != 0`, with one Newton
/// polish step per simple root.
pub fn cubic(c0: f64, c1: f64, c2: f64, c3: f64, eps: f64) -> Vec<f64> {
    debug_assert!(c3 != 0.0);
    let (a, b, c) = (c2 / c3, c1 / c3, c0 / c3);
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let half_q = 0.5 * q;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;
    let disc_scale = half_q * half_q + third_p.abs().powi(3);

    let mut depressed: Vec<f64> = if disc.abs() <= eps * disc_scale {
        let p_scale = a * a + b.abs();
        if p.abs() <= eps.sqrt() * p_scale.max(f64::MIN_POSITIVE) {
            vec![0.0; 3]
        } else {
            let simple = 3.0 * q / p;
            let double = -1.5 * q / p;
            vec![simple, double, double]
        }
    } else if disc > 0.0 {
        let sq = disc.sqrt();
        let w = if half_q > 0.0 { -half_q - sq } else { -half_q + sq };
        let u = w.cbrt();
        let s = if u == 0.0 { 0.0 } else { u - p / (3.0 * u) };
        vec![s]
    } else {
        let r = 2.0 * (-third_p).sqrt();
        let cos_arg = (3.0 * q / (p * r)).clamp(-1.0, 1.0);
        let phi = cos_arg.acos() / 3.0;
        (0..3)
            .map(|k| r * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos())
            .collect()
    };

    let coeffs = [c0, c1, c2, c3];
    for s in depressed.iter_mut() {
        *s = polish(&coeffs, *s - shift);
    }
    depressed.sort_by(|x, y| x.total_cmp(y));
    depressed
}

/// Horner evaluation of a polynomial (lowest degree first) and its
/// derivative.
pub fn eval_with_derivative(coeffs: &[f64], t: f64) -> (f64, f64) {
    let mut v = 0.0;
    let mut dv = 0.0;
    for &c in coeffs.iter().rev() {
        dv = dv * t + v;
        v = v * t + c;
    }
    (v, dv)
}

pub fn eval(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |v, &c| v * t + c)
}

/// One Newton step, kept only if it lowers the residual.
pub fn polish(coeffs: &[f64], t: f64) -> f64 {
    let (v, dv) = eval_with_derivative(coeffs, t);
    if v == 0.0 || dv == 0.0 || !dv.is_finite() {
        return t;
    }
    let next = t - v / dv;
    if next.is_finite() && eval(coeffs, next).abs() < v.abs() {
        next
    } else {
        t
    }
}

/// Divides by `(t - r)`, dropping the remainder. Lowest degree first.
pub fn deflate(coeffs: &[f64], r: f64) -> Vec<f64> {
    let n = coeffs.len();
    if n <= 1 {
        return Vec::new();
    }
    let mut out = vec![0.0; n - 1];
    let mut carry = coeffs[n - 1];
    out[n - 2] = carry;
    for i in (1..n - 1).rev() {
        carry = coeffs[i] + carry * r;
        out[i - 1] = carry;
    }
    out
}
