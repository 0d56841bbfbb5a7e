//! Marching-squares tracing of `f = 0` and SVG/CSV output.
//!
//! The grid is sampled row by row (rows may run in parallel), each cell
//! contributes at most two segments between linearly interpolated sign
//! changes, and segments sharing a grid edge are chained into polylines.
//! Everything after the grid evaluation is sequential and visits cells in
//! row-major order, so output is identical for every [`Exec`].

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::cubic::{self, CubicCurve};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geom::{Circle, Line, PlanePoint};

pub const MIN_RESOLUTION: usize = 16;
pub const MAX_RESOLUTION: usize = 8192;

/// Axis-aligned plotting window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Window {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        if ![xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !(xmax > xmin && ymax > ymin) {
            return Err(Error::DegenerateInput("empty window"));
        }
        Ok(Window { xmin, xmax, ymin, ymax })
    }

    pub fn square(half: f64) -> Result<Self> {
        Window::new(-half, half, -half, half)
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn contains(&self, p: PlanePoint) -> bool {
        (self.xmin..=self.xmax).contains(&p.x) && (self.ymin..=self.ymax).contains(&p.y)
    }

    /// The part of `line` inside the window, if any.
    pub fn clip(&self, line: &Line) -> Option<(PlanePoint, PlanePoint)> {
        let d = line.direction().unit();
        let o = line.foot();
        // Liang-Barsky on a segment long enough to span the window
        let reach = o
            .dist(PlanePoint::new(self.xmin, self.ymin))
            .max(o.dist(PlanePoint::new(self.xmax, self.ymax)))
            + self.width()
            + self.height();
        let (mut t0, mut t1) = (-reach, reach);
        for (p, q) in [
            (-d.re, o.x - self.xmin),
            (d.re, self.xmax - o.x),
            (-d.im, o.y - self.ymin),
            (d.im, self.ymax - o.y),
        ] {
            if p == 0.0 {
                if q < 0.0 {
                    return None;
                }
                continue;
            }
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
        (t0 < t1).then(|| {
            let at = |t: f64| PlanePoint::new(o.x + t * d.re, o.y + t * d.im);
            (at(t0), at(t1))
        })
    }
}

/// Traced zero set: one polyline per connected piece inside the window.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trace {
    pub polylines: Vec<Vec<PlanePoint>>,
    /// Grid cells per axis.
    pub resolution: usize,
}

impl Trace {
    pub fn vertex_count(&self) -> usize {
        self.polylines.iter().map(Vec::len).sum()
    }
}

pub fn check_resolution(resolution: usize) -> Result<()> {
    if (MIN_RESOLUTION..=MAX_RESOLUTION).contains(&resolution) {
        Ok(())
    } else {
        Err(Error::DegenerateInput("resolution outside [16, 8192]"))
    }
}

/// Values of `f` on the `(n + 1) x (n + 1)` grid nodes, rows bottom to top.
pub fn sample_grid(curve: &CubicCurve, window: &Window, resolution: usize, exec: Exec) -> Vec<Vec<f64>> {
    let f = curve.normalized();
    let n = resolution;
    let (dx, dy) = (window.width() / n as f64, window.height() / n as f64);
    exec.map_range(n + 1, |j| {
        let y = window.ymin + j as f64 * dy;
        (0..=n)
            .map(|i| cubic::evaluate(&f, PlanePoint::new(window.xmin + i as f64 * dx, y)))
            .collect()
    })
}

// Grid edges: horizontal (i, j)-(i+1, j) and vertical (i, j)-(i, j+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Edge {
    H(usize, usize),
    V(usize, usize),
}

pub fn trace_curve(curve: &CubicCurve, window: &Window, resolution: usize, exec: Exec) -> Result<Trace> {
    check_resolution(resolution)?;
    let grid = sample_grid(curve, window, resolution, exec);
    Ok(trace_grid(&grid, window, resolution))
}

fn trace_grid(grid: &[Vec<f64>], window: &Window, n: usize) -> Trace {
    let (dx, dy) = (window.width() / n as f64, window.height() / n as f64);
    let node = |i: usize, j: usize| PlanePoint::new(window.xmin + i as f64 * dx, window.ymin + j as f64 * dy);
    let pos = |v: f64| v >= 0.0;
    let crossing = |e: Edge| -> PlanePoint {
        let (a, b, pa, pb) = match e {
            Edge::H(i, j) => (grid[j][i], grid[j][i + 1], node(i, j), node(i + 1, j)),
            Edge::V(i, j) => (grid[j][i], grid[j + 1][i], node(i, j), node(i, j + 1)),
        };
        let t = if a == b { 0.5 } else { (a / (a - b)).clamp(0.0, 1.0) };
        pa + (pb - pa) * t
    };

    let mut segments: Vec<(Edge, Edge)> = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let v = [grid[j][i], grid[j][i + 1], grid[j + 1][i + 1], grid[j + 1][i]];
            // edges in counterclockwise order: bottom, right, top, left
            let edges = [Edge::H(i, j), Edge::V(i + 1, j), Edge::H(i, j + 1), Edge::V(i, j)];
            let cut: Vec<usize> = (0..4).filter(|&k| pos(v[k]) != pos(v[(k + 1) % 4])).collect();
            match cut.len() {
                2 => segments.push((edges[cut[0]], edges[cut[1]])),
                4 => {
                    // saddle: the center value decides which corners connect
                    let center = v.iter().sum::<f64>() / 4.0;
                    if pos(center) == pos(v[0]) {
                        segments.push((edges[0], edges[1]));
                        segments.push((edges[2], edges[3]));
                    } else {
                        segments.push((edges[3], edges[0]));
                        segments.push((edges[1], edges[2]));
                    }
                }
                _ => {}
            }
        }
    }

    let mut adjacent: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (s, &(a, b)) in segments.iter().enumerate() {
        adjacent.entry(a).or_default().push(s);
        adjacent.entry(b).or_default().push(s);
    }
    let mut used = vec![false; segments.len()];
    let mut polylines = Vec::new();
    let walk = |start: usize, from: Edge, used: &mut Vec<bool>| -> Vec<PlanePoint> {
        let mut pts = vec![crossing(from)];
        let (mut seg, mut at) = (start, from);
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            let next = if a == at { b } else { a };
            pts.push(crossing(next));
            at = next;
            match adjacent[&at].iter().copied().find(|&s| !used[s]) {
                Some(s) => seg = s,
                None => break,
            }
        }
        pts
    };
    // open chains start at a boundary edge; whatever remains is closed
    for s in 0..segments.len() {
        if used[s] {
            continue;
        }
        let (a, b) = segments[s];
        let end = [a, b].into_iter().find(|e| adjacent[e].len() == 1);
        if let Some(e) = end {
            polylines.push(walk(s, e, &mut used));
        }
    }
    for s in 0..segments.len() {
        if !used[s] {
            polylines.push(walk(s, segments[s].0, &mut used));
        }
    }
    Trace {
        polylines,
        resolution: n,
    }
}

/// Named extras drawn on top of the curve.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overlays {
    pub points: Vec<(String, PlanePoint)>,
    pub lines: Vec<(String, Line)>,
    pub circles: Vec<(String, Circle)>,
    pub asymptote: Option<Line>,
}

const SVG_WIDTH: f64 = 800.0;

fn escape(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            '&' => "&amp;".to_string(),
            '<' => "&lt;".to_string(),
            '>' => "&gt;".to_string(),
            '"' => "&quot;".to_string(),
            c => c.to_string(),
        })
        .collect()
}

pub fn to_svg(trace: &Trace, window: &Window, overlays: &Overlays) -> String {
    let w = SVG_WIDTH;
    let h = (SVG_WIDTH * window.height() / window.width()).max(1.0);
    let sx = w / window.width();
    let px = |p: PlanePoint| ((p.x - window.xmin) * sx, (window.ymax - p.y) * sx);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r##"<g id="curve" fill="none" stroke="#1f4e99" stroke-width="1.5">"##
    );
    for (k, poly) in trace.polylines.iter().enumerate() {
        let pts: Vec<String> = poly
            .iter()
            .map(|&p| {
                let (x, y) = px(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="branch" data-branch="{k}" points="{}"/>"#,
            pts.join(" ")
        );
    }
    let _ = writeln!(out, "</g>");
    let segment = |out: &mut String, line: &Line, extra: &str| {
        if let Some((a, b)) = window.clip(line) {
            let ((x1, y1), (x2, y2)) = (px(a), px(b));
            let _ = writeln!(
                out,
                r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"{extra}/>"#
            );
        }
    };
    if let Some(asym) = &overlays.asymptote {
        let _ = writeln!(
            out,
            r##"<g id="asymptote" stroke="#888888" stroke-width="1" stroke-dasharray="6 4">"##
        );
        segment(&mut out, asym, "");
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(
        out,
        r##"<g id="overlays" fill="none" stroke="#b03030" stroke-width="1">"##
    );
    for (name, line) in &overlays.lines {
        segment(&mut out, line, &format!(r#" data-name="{}""#, escape(name)));
    }
    for (name, c) in &overlays.circles {
        let (x, y) = px(c.center);
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.3}" data-name="{}"/>"#,
            c.radius() * sx,
            escape(name)
        );
    }
    for (name, p) in &overlays.points {
        let (x, y) = px(*p);
        let name = escape(name);
        let _ = writeln!(
            out,
            r##"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="#b03030" data-name="{name}"/>"##
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.3}" y="{:.3}" font-size="12" fill="#b03030" stroke="none">{name}</text>"##,
            x + 5.0,
            y - 5.0
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

/// `x,y,branch` rows, one per traced vertex.
pub fn to_csv(trace: &Trace) -> String {
    let mut out = String::from("x,y,branch\n");
    for (k, poly) in trace.polylines.iter().enumerate() {
        for p in poly {
            let _ = writeln!(out, "{},{},{k}", p.x, p.y);
        }
    }
    out
}
