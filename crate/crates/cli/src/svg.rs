//! SVG figures of planar instances: `E^2` as is, `H^2` in the Poincare disk
//! and the upper hemisphere of `S^2` in orthographic projection.

use std::fmt::Write;

use curvball::exact2d::ArcPolygon;
use curvball::geom::{Ball, Curvature, OrientedHyperplane, Point, Space};
use curvball::oracle::SetOracle;

const PANEL: f64 = 480.0;
const RASTER: usize = 180;

pub struct Style<'a> {
    pub stroke: &'a str,
    pub fill: &'a str,
    pub width: f64,
    pub opacity: f64,
}

impl<'a> Style<'a> {
    pub fn line(stroke: &'a str) -> Self {
        Style { stroke, fill: "none", width: 1.2, opacity: 1.0 }
    }

    pub fn area(fill: &'a str, opacity: f64) -> Self {
        Style { stroke: "none", fill, width: 0.0, opacity }
    }
}

/// One square panel. `half` is the half-width of the view in projected
/// coordinates (fixed to 1 for the curved models).
pub struct Panel {
    space: Space,
    half: f64,
    title: String,
    body: String,
}

impl Panel {
    pub fn new(space: Space, half: f64, title: &str) -> Panel {
        let half = if space.curvature == Curvature::Euclidean { half } else { 1.05 };
        let mut p = Panel { space, half, title: title.to_string(), body: String::new() };
        if space.curvature != Curvature::Euclidean {
            let (cx, cy) = p.px(0.0, 0.0);
            let r = PANEL / (2.0 * p.half);
            let _ = writeln!(p.body, r##"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r:.2}" fill="none" stroke="#888" stroke-dasharray="4 3"/>"##);
        }
        p
    }

    fn px(&self, u: f64, v: f64) -> (f64, f64) {
        let s = PANEL / (2.0 * self.half);
        (PANEL / 2.0 + s * u, PANEL / 2.0 - s * v)
    }

    /// Projected coordinates, or `None` on the far hemisphere.
    pub fn project(&self, p: &Point) -> Option<(f64, f64)> {
        let c = p.coords();
        match self.space.curvature {
            Curvature::Euclidean => Some((c[0], c[1])),
            Curvature::Hyperbolic => Some((c[0] / (1.0 + c[2]), c[1] / (1.0 + c[2]))),
            Curvature::Spherical => (c[2] >= 0.0).then_some((c[0], c[1])),
        }
    }

    fn unproject(&self, u: f64, v: f64) -> Option<Point> {
        let r2 = u * u + v * v;
        match self.space.curvature {
            Curvature::Euclidean => Some(Point::from_raw(vec![u, v])),
            Curvature::Hyperbolic => (r2 < 1.0).then(|| {
                let k = 1.0 - r2;
                Point::from_raw(vec![2.0 * u / k, 2.0 * v / k, (1.0 + r2) / k])
            }),
            Curvature::Spherical => (r2 <= 1.0).then(|| Point::from_raw(vec![u, v, (1.0 - r2).sqrt()])),
        }
    }

    fn path(&mut self, pts: &[Point], closed: bool, style: &Style) {
        let mut d = String::new();
        let mut pen_down = false;
        for p in pts {
            match self.project(p) {
                Some((u, v)) => {
                    let (x, y) = self.px(u, v);
                    let _ = write!(d, "{}{x:.2},{y:.2} ", if pen_down { "L" } else { "M" });
                    pen_down = true;
                }
                None => pen_down = false,
            }
        }
        if d.is_empty() {
            return;
        }
        if closed {
            d.push('Z');
        }
        let _ = writeln!(
            self.body,
            r#"<path d="{}" fill="{}" fill-opacity="{}" stroke="{}" stroke-width="{}"/>"#,
            d.trim_end(),
            style.fill,
            style.opacity,
            style.stroke,
            style.width
        );
    }

    pub fn ball(&mut self, b: &Ball, style: &Style) {
        if b.is_empty() {
            return;
        }
        let s = self.space;
        let basis = s.tangent_basis(&b.center);
        let pts: Vec<Point> = (0..=180)
            .map(|i| {
                let t = i as f64 * std::f64::consts::TAU / 180.0;
                let dir: Vec<f64> = basis[0].iter().zip(&basis[1]).map(|(a, c)| t.cos() * a + t.sin() * c).collect();
                s.exp_at(&b.center, &dir, b.radius)
            })
            .collect();
        self.path(&pts, true, style);
    }

    pub fn hyperplane(&mut self, h: &OrientedHyperplane, style: &Style) {
        let s = self.space;
        let foot = s.foot_on_hyperplane(h);
        // Tangent at the foot orthogonal to the normal.
        let basis = s.tangent_basis(&foot);
        let n = h.normal();
        let form = |a: &[f64], b: &[f64]| {
            let k = a.len();
            let head: f64 = a[..k - 1].iter().zip(&b[..k - 1]).map(|(x, y)| x * y).sum();
            if s.curvature == Curvature::Hyperbolic { head - a[k - 1] * b[k - 1] } else { head + a[k - 1] * b[k - 1] }
        };
        let pick = basis.iter().max_by(|a, b| {
            let ra = form(a, a) - form(a, n).powi(2);
            let rb = form(b, b) - form(b, n).powi(2);
            ra.total_cmp(&rb)
        });
        let Some(e) = pick else { return };
        let c = form(e, n);
        let mut w: Vec<f64> = e.iter().zip(n).map(|(a, b)| a - c * b).collect();
        let q = form(&w, &w).sqrt();
        w.iter_mut().for_each(|v| *v /= q);
        let reach = match s.curvature {
            Curvature::Euclidean => 3.0 * self.half,
            Curvature::Spherical => std::f64::consts::PI,
            Curvature::Hyperbolic => 6.0,
        };
        let pts: Vec<Point> = (0..=240).map(|i| s.exp_at(&foot, &w, -reach + 2.0 * reach * i as f64 / 240.0)).collect();
        self.path(&pts, false, style);
    }

    pub fn point(&mut self, p: &Point, fill: &str) {
        if let Some((u, v)) = self.project(p) {
            let (x, y) = self.px(u, v);
            let _ = writeln!(self.body, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{fill}"/>"#);
        }
    }

    pub fn arc_polygon(&mut self, a: &ArcPolygon, style: &Style) {
        let pts: Vec<Point> = a.boundary(48).into_iter().map(|p| Point::from_raw(p.to_vec())).collect();
        self.path(&pts, true, style);
    }

    /// Fills the members of `set` on a raster grid, merging runs per row.
    pub fn region(&mut self, set: &SetOracle, style: &Style) {
        let cell = 2.0 * self.half / RASTER as f64;
        let side = PANEL / RASTER as f64;
        let _ = writeln!(self.body, r#"<g fill="{}" fill-opacity="{}">"#, style.fill, style.opacity);
        for row in 0..RASTER {
            let v = self.half - (row as f64 + 0.5) * cell;
            let mut run: Option<usize> = None;
            for col in 0..=RASTER {
                let inside = col < RASTER && {
                    let u = -self.half + (col as f64 + 0.5) * cell;
                    self.unproject(u, v).is_some_and(|p| set.contains(&p))
                };
                match (inside, run) {
                    (true, None) => run = Some(col),
                    (false, Some(start)) => {
                        let _ = writeln!(
                            self.body,
                            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/>"#,
                            start as f64 * side,
                            row as f64 * side,
                            (col - start) as f64 * side,
                            side
                        );
                        run = None;
                    }
                    _ => {}
                }
            }
        }
        self.body.push_str("</g>\n");
    }
}

/// Lays panels out left to right, one `<g>` per panel.
pub fn document(panels: &[Panel]) -> String {
    let width = PANEL * panels.len() as f64;
    let height = PANEL + 28.0;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#);
    let _ = writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    for (i, p) in panels.iter().enumerate() {
        let _ = writeln!(out, r#"<g class="panel" transform="translate({},28)">"#, i as f64 * PANEL);
        let _ = writeln!(out, r#"<text x="8" y="-8" font-family="sans-serif" font-size="14">{} ({})</text>"#, p.title, p.space);
        out.push_str(&p.body);
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
