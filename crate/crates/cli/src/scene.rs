//! Scene files: a quadrilateral or a cubic plus named extras.

use std::collections::BTreeMap;

use isocubic::{Circle, CubicCurve, Line, PlanePoint, ProjPoint, Quadrilateral, Tolerance};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleSpec {
    pub center: [f64; 2],
    pub radius: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    quad: Option<[[f64; 2]; 4]>,
    cubic: Option<[f64; 10]>,
    #[serde(default)]
    points: BTreeMap<String, [f64; 2]>,
    #[serde(default)]
    lines: BTreeMap<String, [f64; 3]>,
    #[serde(default)]
    circles: BTreeMap<String, CircleSpec>,
    tol: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
pub enum Source {
    Quad(Quadrilateral),
    Cubic(CubicCurve),
}

#[derive(Debug, Clone)]
pub struct Scene {
    pub source: Source,
    pub points: BTreeMap<String, PlanePoint>,
    pub lines: BTreeMap<String, Line>,
    pub circles: BTreeMap<String, Circle>,
    pub tol: Option<f64>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn finite(values: impl IntoIterator<Item = f64>, what: &str) -> Result<(), CliError> {
    if values.into_iter().all(f64::is_finite) {
        Ok(())
    } else {
        Err(usage(format!("non-finite number in {what}")))
    }
}

impl Scene {
    pub fn parse(text: &str) -> Result<Scene, CliError> {
        let file: SceneFile = serde_json::from_str(text).map_err(|e| usage(format!("malformed scene: {e}")))?;
        let source = match (file.quad, file.cubic) {
            (Some(q), None) => {
                finite(q.iter().flatten().copied(), "quad")?;
                let q = Quadrilateral::from_coords(q.map(|[x, y]| (x, y))).map_err(|e| usage(e.to_string()))?;
                Source::Quad(q)
            }
            (None, Some(c)) => {
                finite(c, "cubic")?;
                Source::Cubic(CubicCurve::new(c).map_err(|e| usage(e.to_string()))?)
            }
            _ => return Err(usage("scene needs exactly one of \"quad\" and \"cubic\"")),
        };
        let mut points = BTreeMap::new();
        for (name, [x, y]) in file.points {
            finite([x, y], "points")?;
            points.insert(name, PlanePoint::new(x, y));
        }
        let mut lines = BTreeMap::new();
        for (name, [l1, l2, l0]) in file.lines {
            finite([l1, l2, l0], "lines")?;
            lines.insert(name, Line::new(l1, l2, l0).map_err(|e| usage(e.to_string()))?);
        }
        let mut circles = BTreeMap::new();
        for (name, c) in file.circles {
            finite([c.center[0], c.center[1], c.radius], "circles")?;
            if c.radius < 0.0 {
                return Err(usage("circle radius must be non-negative"));
            }
            circles.insert(
                name,
                Circle::new(PlanePoint::new(c.center[0], c.center[1]), c.radius * c.radius),
            );
        }
        if let Some(t) = file.tol {
            finite([t], "tol")?;
        }
        Ok(Scene {
            source,
            points,
            lines,
            circles,
            tol: file.tol,
        })
    }

    /// `--tol` wins over the scene's own value.
    pub fn tolerance(&self, flag: Option<f64>) -> Result<Tolerance, CliError> {
        match flag.or(self.tol) {
            None => Ok(Tolerance::default()),
            Some(rel) => Tolerance::new(rel, Tolerance::default().abs_floor).map_err(|e| usage(e.to_string())),
        }
    }

    /// A point argument: a scene name, `x,y`, or `inf` for the curve's point
    /// at infinity (`infinity` is supplied by the caller).
    pub fn resolve(&self, arg: &str, infinity: Option<ProjPoint>) -> Result<ProjPoint, CliError> {
        if let Some(p) = self.points.get(arg) {
            return Ok(ProjPoint::Finite(*p));
        }
        if arg == "inf" {
            return infinity.ok_or_else(|| usage("no point at infinity for this scene"));
        }
        let inner = arg.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .or_else(|| inner.strip_prefix('[').and_then(|s| s.strip_suffix(']')))
            .unwrap_or(inner);
        let parts: Vec<&str> = inner.split(',').collect();
        if let [x, y] = parts[..] {
            let parse = |s: &str| s.trim().parse::<f64>().ok().filter(|v| v.is_finite());
            if let (Some(x), Some(y)) = (parse(x), parse(y)) {
                return Ok(ProjPoint::Finite(PlanePoint::new(x, y)));
            }
        }
        Err(usage(format!("`{arg}` is neither a scene point nor x,y")))
    }
}
