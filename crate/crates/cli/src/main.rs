//! `isocubic`: synthesize, classify, construct on, render and verify
//! isogonal cubics from JSON scenes.

mod out;
mod scene;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use isocubic::constructions as cons;
use isocubic::render::{self, Overlays, Window};
use isocubic::verify::{self, VerifyConfig};
use isocubic::{cubic, degenerate, quad, CubicCurve, CurveContext, DegeneracyClass, Error, Exec, ProjPoint, Tolerance};
use serde_json::{json, Value};
use thiserror::Error;

use scene::{Scene, Source};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("verification failed")]
    VerifyFailed(Value),
    #[error("degenerate: {message}")]
    Degenerate { message: String, report: Option<Value> },
    #[error("not an isogonal cubic: {message}")]
    NotIsogonal { message: String, report: Option<Value> },
    #[error("{0}")]
    NotOnCurve(String),
    #[error("{0}")]
    Singular(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Degenerate { .. } => 2,
            CliError::NotIsogonal { .. } => 3,
            CliError::NotOnCurve(_) => 4,
            CliError::Singular(_) => 5,
            CliError::Usage(_) => 64,
            CliError::Io(_) => 73,
        }
    }

    fn report(&self) -> Option<&Value> {
        match self {
            CliError::VerifyFailed(v) => Some(v),
            CliError::Degenerate { report, .. } | CliError::NotIsogonal { report, .. } => report.as_ref(),
            _ => None,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::NotIsogonal(_) => CliError::NotIsogonal { message, report: None },
            Error::NotOnCurve { .. } => CliError::NotOnCurve(message),
            Error::SingularPoint => CliError::Singular(message),
            Error::InvalidDirection | Error::NonFinite | Error::InvalidQuadrilateral(_) => CliError::Usage(message),
            _ => CliError::Degenerate { message, report: None },
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "isocubic", version, about = "Isogonal cubics of quadrilaterals")]
struct Cli {
    /// Scene file; stdin when absent.
    #[arg(long = "in", global = true, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Relative tolerance, overriding the scene's.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Cubic, class and profile of a quadrilateral scene.
    Synthesize,
    /// Decide whether a cubic is an isogonal cubic.
    Classify,
    /// Run one construction on curve points.
    Construct {
        verb: Verb,
        /// Scene point names, `x,y` or `(x,y)` literals, or `inf`. Put a
        /// literal starting with `-` in parentheses or after `--`.
        args: Vec<String>,
    },
    /// Trace the curve into an SVG.
    Render {
        #[arg(long, num_args = 4, allow_hyphen_values = true, value_names = ["XMIN", "XMAX", "YMIN", "YMAX"])]
        window: Option<Vec<f64>>,
        #[arg(long, default_value_t = 512)]
        resolution: usize,
        /// SVG destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the traced vertices as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Randomized property suite.
    Verify {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verb {
    Conjugate,
    Tangent,
    Third,
    Circle4,
    Add,
    TangentsFrom,
    Partner,
    Requad,
}

impl Verb {
    fn arity(self) -> usize {
        match self {
            Verb::Conjugate | Verb::Tangent | Verb::TangentsFrom | Verb::Partner => 1,
            Verb::Third | Verb::Add | Verb::Requad => 2,
            Verb::Circle4 => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Verb::Conjugate => "conjugate",
            Verb::Tangent => "tangent",
            Verb::Third => "third",
            Verb::Circle4 => "circle4",
            Verb::Add => "add",
            Verb::TangentsFrom => "tangents-from",
            Verb::Partner => "partner",
            Verb::Requad => "requad",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(Some(v)) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(v) = e.report() {
                emit(v);
            }
            if !matches!(e, CliError::VerifyFailed(_)) {
                eprintln!("isocubic: {e}");
            }
            ExitCode::from(e.code())
        }
    }
}

fn emit(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn read_scene(cli: &Cli) -> Result<Scene, CliError> {
    let text = match &cli.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            s
        }
    };
    Scene::parse(&text)
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::File::create(path)
        .and_then(|mut f| f.write_all(text.as_bytes()))
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<Option<Value>, CliError> {
    let scene = read_scene(cli)?;
    let tol = scene.tolerance(cli.tol)?;
    match &cli.cmd {
        Cmd::Synthesize => synthesize(&scene, tol).map(Some),
        Cmd::Classify => classify(&scene, tol).map(Some),
        Cmd::Construct { verb, args } => construct(&scene, tol, *verb, args).map(Some),
        Cmd::Render {
            window,
            resolution,
            out,
            csv,
        } => render_cmd(&scene, tol, window.as_deref(), *resolution, out.as_ref(), csv.as_ref()),
        Cmd::Verify { trials, seed } => verify_cmd(&scene, tol, *trials, *seed).map(Some),
    }
}

/// The quadrilateral's cubic, or exit 2 with the degenerate locus.
fn quad_curve(q: &isocubic::Quadrilateral, tol: Tolerance) -> Result<CubicCurve, CliError> {
    let class = quad::classify(q, tol);
    if class == DegeneracyClass::Generic {
        return Ok(quad::cubic_from_quadrilateral(q, tol)?);
    }
    let locus = match class {
        DegeneracyClass::Collinear | DegeneracyClass::Parallelogram => {
            Some(out::locus(&degenerate::locus_for(q, tol)?))
        }
        _ => None,
    };
    let mut report = json!({ "class": class.as_str(), "locus": locus });
    if class == DegeneracyClass::ReducibleCubic {
        report["coefficients"] = out::nums(normalize(quad::locus_polynomial(q)));
    }
    Err(CliError::Degenerate {
        message: format!("quadrilateral is {}", class.as_str()),
        report: Some(report),
    })
}

fn normalize(c: [f64; 10]) -> [f64; 10] {
    let m = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if m > 0.0 {
        c.map(|v| v / m)
    } else {
        c
    }
}

fn scene_curve(scene: &Scene, tol: Tolerance) -> Result<CubicCurve, CliError> {
    match &scene.source {
        Source::Quad(q) => quad_curve(q, tol),
        Source::Cubic(c) => Ok(*c),
    }
}

fn context(scene: &Scene, tol: Tolerance) -> Result<CurveContext, CliError> {
    match &scene.source {
        Source::Quad(q) => {
            quad_curve(q, tol)?;
            Ok(CurveContext::from_quadrilateral(q, tol)?)
        }
        Source::Cubic(c) => {
            let normalized = c.normalized();
            CurveContext::from_curve(&normalized, tol).map_err(|e| match e {
                Error::NotIsogonal(_) => CliError::NotIsogonal {
                    message: e.to_string(),
                    report: Some(classification_json(&normalized, tol)),
                },
                e => e.into(),
            })
        }
    }
}

fn classification_json(curve: &CubicCurve, tol: Tolerance) -> Value {
    let r = cubic::classify_cubic(curve, tol);
    json!({
        "is_isogonal": r.is_isogonal,
        "reason": r.reason.as_str(),
        "coefficients": out::coefficients(curve),
        "profile": r.profile.as_ref().map(out::profile),
    })
}

fn synthesize(scene: &Scene, tol: Tolerance) -> Result<Value, CliError> {
    let Source::Quad(q) = &scene.source else {
        return Err(CliError::Usage("synthesize needs a scene with \"quad\"".into()));
    };
    let curve = quad_curve(q, tol)?.normalized();
    let mut profile = quad::profile_from_quadrilateral(q, tol)?;
    // report u, v for the normalized coefficients
    profile.u = curve.c30();
    profile.v = curve.c21();
    let residuals: Vec<f64> = q.vertices().iter().map(|&v| curve.relative_residual(v)).collect();
    Ok(json!({
        "class": DegeneracyClass::Generic.as_str(),
        "coefficients": out::coefficients(&curve),
        "profile": out::profile(&profile),
        "newton_line": out::line(&quad::newton_line(q, tol)?),
        "residuals": {
            "vertices": out::nums(residuals),
            "spiral_center": out::num(curve.relative_residual(profile.spiral_center)),
        },
    }))
}

fn classify(scene: &Scene, tol: Tolerance) -> Result<Value, CliError> {
    let curve = scene_curve(scene, tol)?.normalized();
    let report = classification_json(&curve, tol);
    if report["is_isogonal"] == Value::Bool(true) {
        Ok(report)
    } else {
        Err(CliError::NotIsogonal {
            message: report["reason"].as_str().unwrap_or_default().to_string(),
            report: Some(report),
        })
    }
}

fn construct(scene: &Scene, tol: Tolerance, verb: Verb, args: &[String]) -> Result<Value, CliError> {
    if args.len() != verb.arity() {
        return Err(CliError::Usage(format!(
            "{} takes {} point argument(s), got {}",
            verb.name(),
            verb.arity(),
            args.len()
        )));
    }
    let ctx = context(scene, tol)?;
    let pts: Vec<ProjPoint> = args
        .iter()
        .map(|a| scene.resolve(a, Some(ctx.infinity())))
        .collect::<Result<_, _>>()?;
    let curve = ctx.curve();
    let finite = |p: ProjPoint| -> Result<isocubic::PlanePoint, CliError> {
        p.finite()
            .ok_or_else(|| CliError::Usage(format!("{} needs finite points", verb.name())))
    };
    let on_curve = |p: ProjPoint| match p {
        ProjPoint::Finite(q) => out::num(curve.relative_residual(q)),
        ProjPoint::Infinite(_) => out::num(0.0),
    };
    for &p in &pts {
        if let ProjPoint::Finite(q) = p {
            if !curve.contains(q, tol) {
                return Err(Error::NotOnCurve {
                    residual: curve.relative_residual(q),
                }
                .into());
            }
        }
    }
    let (result, residuals) = match verb {
        Verb::Conjugate => {
            let c = cons::conjugate(&ctx, pts[0])?;
            let back = cons::conjugate(&ctx, c)?;
            let involution = match (back, pts[0]) {
                (ProjPoint::Finite(a), ProjPoint::Finite(b)) => a.dist(b) / ctx.scale().max(b.norm()),
                (ProjPoint::Infinite(_), ProjPoint::Infinite(_)) => 0.0,
                _ => f64::INFINITY,
            };
            (
                out::proj(c),
                json!({ "on_curve": on_curve(c), "involution": out::num(involution) }),
            )
        }
        Verb::Tangent => {
            let t = cons::tangent_by_reflection(&ctx, pts[0])?;
            let angle = match pts[0] {
                ProjPoint::Finite(x) => cubic::tangent_line_at(curve, x, tol)
                    .map(|g| t.line.direction().angle_to(g.direction()))
                    .unwrap_or(f64::INFINITY),
                ProjPoint::Infinite(_) => t.line.direction().angle_to(ctx.profile().infinity_direction),
            };
            (
                json!({ "line": out::line(&t.line), "used_gradient": t.used_gradient }),
                json!({ "angle_to_gradient_tangent": out::num(angle) }),
            )
        }
        Verb::Third => {
            let (x, y) = (finite(pts[0])?, finite(pts[1])?);
            let r = cons::third_point_by_reflection(&ctx, x, y)?;
            let vieta = cons::chord_third_point(&ctx, pts[0], pts[1])?;
            let gap = match (r.w, vieta) {
                (ProjPoint::Finite(a), ProjPoint::Finite(b)) => a.dist(b) / ctx.scale().max(b.norm()),
                (ProjPoint::Infinite(_), ProjPoint::Infinite(_)) => 0.0,
                _ => f64::INFINITY,
            };
            (
                json!({ "point": out::proj(r.w), "isogonal_meet": out::proj(r.z) }),
                json!({ "on_curve": on_curve(r.w), "chord_third_point_gap": out::num(gap) }),
            )
        }
        Verb::Circle4 => {
            let (e, f, g) = (finite(pts[0])?, finite(pts[1])?, finite(pts[2])?);
            let h = cons::circle_fourth_point(&ctx, e, f, g)?;
            let circle = isocubic::Circle::through(e, f, g, tol)?;
            (
                out::point(h),
                json!({
                    "on_curve": on_curve(h.into()),
                    "on_circle": out::num((h.dist(circle.center) - circle.radius()).abs() / circle.radius()),
                }),
            )
        }
        Verb::Add => {
            let s = cons::cubic_add(&ctx, pts[0], pts[1])?;
            (out::proj(s), json!({ "on_curve": on_curve(s) }))
        }
        Verb::TangentsFrom => {
            let z = finite(pts[0])?;
            let found = cons::tangent_points_from(&ctx, z)?;
            let tangency: Vec<f64> = found.iter().map(|&x| cons::double_root_residual(curve, x, z)).collect();
            let membership: Vec<f64> = found.iter().map(|&x| curve.relative_residual(x)).collect();
            (
                Value::Array(found.iter().map(|&p| out::point(p)).collect()),
                json!({ "on_curve": out::nums(membership), "double_root": out::nums(tangency) }),
            )
        }
        Verb::Partner => {
            let x = finite(pts[0])?;
            let y = cons::parallel_bisector_partner(&ctx, x)?;
            (out::proj(y), json!({ "on_curve": on_curve(y) }))
        }
        Verb::Requad => {
            let (s1, s2) = (finite(pts[0])?, finite(pts[1])?);
            let q = cons::generating_quadrilateral(&ctx, s1, s2)?;
            let regenerated = quad::cubic_from_quadrilateral(&q, tol)?;
            (
                Value::Array(q.vertices().iter().map(|&p| out::point(p)).collect()),
                json!({ "cosine_gap": out::num(1.0 - regenerated.cosine_similarity(curve)) }),
            )
        }
    };
    Ok(json!({
        "verb": verb.name(),
        "inputs": Value::Array(pts.iter().map(|&p| out::proj(p)).collect()),
        "result": result,
        "residuals": residuals,
    }))
}

fn render_cmd(
    scene: &Scene,
    tol: Tolerance,
    window: Option<&[f64]>,
    resolution: usize,
    out_path: Option<&PathBuf>,
    csv_path: Option<&PathBuf>,
) -> Result<Option<Value>, CliError> {
    render::check_resolution(resolution).map_err(|e| CliError::Usage(e.to_string()))?;
    let window = match window {
        Some(&[x0, x1, y0, y1]) => Window::new(x0, x1, y0, y1),
        Some(_) => return Err(CliError::Usage("--window takes four numbers".into())),
        None => Window::square(10.0),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let curve = scene_curve(scene, tol)?;
    let report = cubic::classify_cubic(&curve.normalized(), tol);
    let overlays = Overlays {
        points: scene.points.iter().map(|(k, v)| (k.clone(), *v)).collect(),
        lines: scene.lines.iter().map(|(k, v)| (k.clone(), *v)).collect(),
        circles: scene.circles.iter().map(|(k, v)| (k.clone(), *v)).collect(),
        asymptote: report.profile.map(|p| p.asymptote),
    };
    let trace = render::trace_curve(&curve, &window, resolution, Exec::default())?;
    let svg = render::to_svg(&trace, &window, &overlays);
    if let Some(path) = csv_path {
        write_file(path, &render::to_csv(&trace))?;
    }
    match out_path {
        Some(path) => {
            write_file(path, &svg)?;
            Ok(Some(json!({
                "out": path.display().to_string(),
                "polylines": trace.polylines.len(),
                "vertices": trace.vertex_count(),
                "resolution": resolution,
                "window": out::nums([window.xmin, window.xmax, window.ymin, window.ymax]),
            })))
        }
        None => {
            let _ = std::io::stdout().lock().write_all(svg.as_bytes());
            Ok(None)
        }
    }
}

fn verify_cmd(scene: &Scene, tol: Tolerance, trials: usize, seed: u64) -> Result<Value, CliError> {
    let curve = scene_curve(scene, tol)?.normalized();
    let cfg = VerifyConfig {
        trials,
        seed,
        exec: Exec::default(),
    };
    let r = verify::verify_curve(&curve, tol, cfg);
    let props: Vec<Value> = r
        .properties
        .iter()
        .map(|p| {
            json!({
                "name": p.name,
                "passed": p.passed,
                "checked": p.checked,
                "failures": p.failures,
                "max_residual": out::num(p.max_residual),
                "threshold": out::num(p.threshold),
            })
        })
        .collect();
    let report = json!({
        "trials": r.trials,
        "seed": r.seed,
        "all_passed": r.all_passed(),
        "properties": props,
    });
    if r.all_passed() {
        Ok(report)
    } else {
        Err(CliError::VerifyFailed(report))
    }
}
