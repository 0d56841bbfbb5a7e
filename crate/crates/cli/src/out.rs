//! JSON encoding of geometric values.
//!
//! Every real is written with 17 significant digits, which round-trips
//! an `f64` exactly. Lines and directions are scaled so the larger of the
//! first two components is 1 in magnitude with the first nonzero one
//! positive; cubic coefficients so the largest magnitude is 1.

use std::str::FromStr;

use isocubic::degenerate::DegenerateLocus;
use isocubic::{Complex, Conic, CubicCurve, Direction, IsoCubicProfile, Line, PlanePoint, ProjPoint};
use serde_json::{json, Number, Value};

pub fn num(v: f64) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    // `{:e}` with 16 fraction digits: 17 significant digits
    let text = format!("{:.16e}", if v == 0.0 { 0.0 } else { v });
    Value::Number(Number::from_str(&text).expect("formatted float is a JSON number"))
}

pub fn nums(vs: impl IntoIterator<Item = f64>) -> Value {
    Value::Array(vs.into_iter().map(num).collect())
}

pub fn point(p: PlanePoint) -> Value {
    nums([p.x, p.y])
}

fn leading_scale(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    let lead = if a != 0.0 { a } else { b };
    if lead < 0.0 {
        -m
    } else {
        m
    }
}

pub fn direction(d: Direction) -> Value {
    let z = d.as_complex();
    let s = leading_scale(z.re, z.im);
    nums([z.re / s, z.im / s])
}

pub fn proj(p: ProjPoint) -> Value {
    match p {
        ProjPoint::Finite(p) => point(p),
        ProjPoint::Infinite(d) => json!({ "infinity": { "direction": direction(d) } }),
    }
}

pub fn line(l: &Line) -> Value {
    let [l1, l2, l0] = l.coefficients();
    let s = leading_scale(l1, l2);
    nums([l1 / s, l2 / s, l0 / s])
}

pub fn complex(z: Complex) -> Value {
    nums([z.re, z.im])
}

pub fn coefficients(c: &CubicCurve) -> Value {
    nums(*c.normalized().coeffs())
}

pub fn conic(c: &Conic) -> Value {
    nums(c.normalized().coeffs)
}

pub fn profile(p: &IsoCubicProfile) -> Value {
    json!({
        "P": point(p.spiral_center),
        "u": num(p.u),
        "v": num(p.v),
        "asymptote": line(&p.asymptote),
        "k": complex(p.involution_k),
        "infinity_direction": direction(p.infinity_direction),
    })
}

pub fn locus(l: &DegenerateLocus) -> Value {
    match l {
        DegenerateLocus::LineAndCircle { line: ln, circle } => json!({
            "variant": "LineAndCircle",
            "line": line(ln),
            "circle": circle.map(|c| json!({ "center": point(c.center), "radius_sq": num(c.radius_sq) })),
        }),
        DegenerateLocus::LineAtInfinityAndHyperbola { conic: c } => json!({
            "variant": "LineAtInfinityAndHyperbola",
            "conic": conic(c),
        }),
    }
}
