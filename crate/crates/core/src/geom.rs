//! Points, geodesics, hyperplanes and reflections in the three model spaces.
//!
//! * Euclidean space `E^d` uses flat coordinates of length `d`.
//! * The sphere `S^d` is the unit sphere in `R^{d+1}`.
//! * Hyperbolic space `H^d` is the upper sheet of `<x,x>_L = -1` in `R^{d+1}`
//!   with the Lorentz form `<x,y>_L = x_0 y_0 + ... + x_{d-1} y_{d-1} - x_d y_d`.
//!
//! Every operation is linear algebra in the bilinear form of the model, so
//! one code path handles each geometry.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Tolerance for model membership of points and hyperplane normals.
pub const MODEL_TOL: f64 = 1e-9;
/// Form values at or below this magnitude put a point on the hyperplane.
pub const SIDE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Curvature {
    Euclidean,
    Spherical,
    Hyperbolic,
}

impl Curvature {
    pub fn kappa(self) -> i8 {
        match self {
            Curvature::Euclidean => 0,
            Curvature::Spherical => 1,
            Curvature::Hyperbolic => -1,
        }
    }

    pub fn from_kappa(kappa: i8) -> Result<Self> {
        match kappa {
            0 => Ok(Curvature::Euclidean),
            1 => Ok(Curvature::Spherical),
            -1 => Ok(Curvature::Hyperbolic),
            k => Err(GeomError::InvalidInput(format!("curvature must be -1, 0 or 1, got {k}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Curvature::Euclidean => "euclidean",
            Curvature::Spherical => "spherical",
            Curvature::Hyperbolic => "hyperbolic",
        }
    }
}

impl std::str::FromStr for Curvature {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" | "e" | "0" => Ok(Curvature::Euclidean),
            "spherical" | "s" | "1" | "+1" => Ok(Curvature::Spherical),
            "hyperbolic" | "h" | "-1" => Ok(Curvature::Hyperbolic),
            other => Err(GeomError::InvalidInput(format!("unknown space '{other}'"))),
        }
    }
}

/// A constant-curvature space of dimension `dim`.
///
/// `k_cap` is the hyperbolic working scale used by the Kneser-Poulsen
/// thresholds; it is only meaningful for `H^d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Space {
    pub curvature: Curvature,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_cap: Option<f64>,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.curvature {
            Curvature::Euclidean => "E",
            Curvature::Spherical => "S",
            Curvature::Hyperbolic => "H",
        };
        write!(f, "{sym}^{}", self.dim)
    }
}

/// A point in the embedding model of its space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    /// Wraps raw coordinates without validation. Prefer [`Space::point`].
    pub fn from_raw(coords: Vec<f64>) -> Self {
        Point { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// An oriented totally geodesic hyperplane.
///
/// For `E^d` the plane is `{x : <x,n> = offset}`; for the curved models it is
/// `{x : form(x, n) = 0}` with `n` unit in the respective form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrientedHyperplane {
    normal: Vec<f64>,
    offset: f64,
}

impl OrientedHyperplane {
    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Same plane with the orientation reversed (swaps `H+` and `H-`).
    pub fn flipped(&self) -> Self {
        OrientedHyperplane {
            normal: self.normal.iter().map(|v| -v).collect(),
            offset: -self.offset,
        }
    }
}

/// A closed geodesic ball. Negative nominal radii produce the empty ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
    pub empty: bool,
    // Comparison value for the fast membership test: r^2, cos r or cosh r.
    #[serde(skip)]
    threshold: f64,
}

impl Ball {
    pub fn is_empty(&self) -> bool {
        self.empty
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn lorentz(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len();
    dot(&a[..n - 1], &b[..n - 1]) - a[n - 1] * b[n - 1]
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

impl Space {
    pub fn new(curvature: Curvature, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(GeomError::InvalidInput(format!("dimension must be at least 2, got {dim}")));
        }
        Ok(Space { curvature, dim, k_cap: None })
    }

    pub fn euclidean(dim: usize) -> Self {
        Space::new(Curvature::Euclidean, dim).expect("dimension >= 2")
    }

    pub fn spherical(dim: usize) -> Self {
        Space::new(Curvature::Spherical, dim).expect("dimension >= 2")
    }

    pub fn hyperbolic(dim: usize) -> Self {
        Space::new(Curvature::Hyperbolic, dim).expect("dimension >= 2")
    }

    pub fn with_k_cap(mut self, k: f64) -> Result<Self> {
        if self.curvature != Curvature::Hyperbolic {
            return Err(GeomError::InvalidInput("k is only defined for hyperbolic space".into()));
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(GeomError::InvalidInput(format!("k must be positive, got {k}")));
        }
        self.k_cap = Some(k);
        Ok(self)
    }

    pub fn kappa(&self) -> i8 {
        self.curvature.kappa()
    }

    /// Length of a coordinate vector in this model.
    pub fn ambient_len(&self) -> usize {
        match self.curvature {
            Curvature::Euclidean => self.dim,
            _ => self.dim + 1,
        }
    }

    /// Largest admissible dual radius: unbounded for `kappa <= 0`, `pi/2` on the sphere.
    pub fn max_dual_radius(&self) -> f64 {
        match self.curvature {
            Curvature::Spherical => FRAC_PI_2,
            _ => f64::INFINITY,
        }
    }

    pub fn check_dual_radius(&self, r: f64) -> Result<()> {
        if r > 0.0 && r <= self.max_dual_radius() && r.is_finite() {
            Ok(())
        } else {
            Err(GeomError::InadmissibleRadius { radius: r, space: self.to_string() })
        }
    }

    /// The base point: the origin of `E^d`, or `e_d` in the curved models.
    pub fn origin(&self) -> Point {
        let mut c = vec![0.0; self.ambient_len()];
        if self.curvature != Curvature::Euclidean {
            c[self.dim] = 1.0;
        }
        Point { coords: c }
    }

    /// Validates coordinates and snaps them onto the manifold.
    pub fn point(&self, coords: Vec<f64>) -> Result<Point> {
        self.point_with_tol(coords, MODEL_TOL)
    }

    /// Like [`Space::point`] but with a caller-chosen membership tolerance.
    pub fn point_with_tol(&self, coords: Vec<f64>, tol: f64) -> Result<Point> {
        let p = Point { coords };
        self.check_point_tol(&p, tol)?;
        Ok(self.project(p))
    }

    pub fn check_point(&self, p: &Point) -> Result<()> {
        self.check_point_tol(p, MODEL_TOL)
    }

    fn check_point_tol(&self, p: &Point, tol: f64) -> Result<()> {
        let x = p.coords();
        if x.len() != self.ambient_len() {
            return Err(GeomError::OffManifold(format!(
                "{} expects {} coordinates, got {}",
                self,
                self.ambient_len(),
                x.len()
            )));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::OffManifold("non-finite coordinate".into()));
        }
        match self.curvature {
            Curvature::Euclidean => Ok(()),
            Curvature::Spherical => {
                let n = norm(x);
                if (n - 1.0).abs() <= tol {
                    Ok(())
                } else {
                    Err(GeomError::OffManifold(format!("|x| = {n}, expected 1")))
                }
            }
            Curvature::Hyperbolic => {
                let q = lorentz(x, x);
                if (q + 1.0).abs() <= tol && x[self.dim] > 0.0 {
                    Ok(())
                } else {
                    Err(GeomError::OffManifold(format!(
                        "<x,x>_L = {q}, last coordinate {}; expected -1 on the upper sheet",
                        x[self.dim]
                    )))
                }
            }
        }
    }

    /// Snaps a nearly-valid point back onto the manifold.
    pub fn project(&self, mut p: Point) -> Point {
        match self.curvature {
            Curvature::Euclidean => {}
            Curvature::Spherical => {
                let n = norm(&p.coords);
                p.coords.iter_mut().for_each(|v| *v /= n);
            }
            Curvature::Hyperbolic => {
                let d = self.dim;
                let s = dot(&p.coords[..d], &p.coords[..d]);
                p.coords[d] = (1.0 + s).sqrt();
            }
        }
        p
    }

    /// Intrinsic coordinates of `E^d` or a tangent-free chart of the curved
    /// models: builds the point at geodesic distance `|v|` from the origin in
    /// direction `v` (`v` has length `dim`).
    pub fn exp_origin(&self, v: &[f64]) -> Point {
        assert_eq!(v.len(), self.dim);
        let t = norm(v);
        match self.curvature {
            Curvature::Euclidean => Point { coords: v.to_vec() },
            Curvature::Spherical | Curvature::Hyperbolic => {
                let (c, s) = match self.curvature {
                    Curvature::Spherical => (t.cos(), if t > 0.0 { t.sin() / t } else { 1.0 }),
                    _ => (t.cosh(), if t > 0.0 { t.sinh() / t } else { 1.0 }),
                };
                let mut coords: Vec<f64> = v.iter().map(|x| x * s).collect();
                coords.push(c);
                self.project(Point { coords })
            }
        }
    }

    pub fn distance(&self, x: &Point, y: &Point) -> f64 {
        debug_assert_eq!(x.len(), self.ambient_len());
        debug_assert_eq!(y.len(), self.ambient_len());
        let (a, b) = (x.coords(), y.coords());
        match self.curvature {
            Curvature::Euclidean => a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum::<f64>().sqrt(),
            Curvature::Spherical => {
                // atan2 form stays accurate near 0 and pi where arccos loses digits.
                let c = dot(a, b);
                let diff: f64 = a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum::<f64>();
                let sum: f64 = a.iter().zip(b).map(|(u, v)| (u + v) * (u + v)).sum::<f64>();
                if c.abs() < 0.9 {
                    c.clamp(-1.0, 1.0).acos()
                } else {
                    2.0 * diff.sqrt().atan2(sum.sqrt())
                }
            }
            Curvature::Hyperbolic => {
                let c = -lorentz(a, b);
                if c < 1.5 {
                    // arccosh(c) = 2 asinh(sqrt((c-1)/2)), with c - 1 = <x-y,x-y>_L / 2
                    let mut q = 0.0;
                    let n = a.len();
                    for i in 0..n - 1 {
                        q += (a[i] - b[i]) * (a[i] - b[i]);
                    }
                    q -= (a[n - 1] - b[n - 1]) * (a[n - 1] - b[n - 1]);
                    2.0 * (q.max(0.0).sqrt() / 2.0).asinh()
                } else {
                    c.max(1.0).acosh()
                }
            }
        }
    }

    /// Distance with input validation.
    pub fn checked_distance(&self, x: &Point, y: &Point) -> Result<f64> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(self.distance(x, y))
    }

    /// Builds an oriented hyperplane. `offset` is only used for `E^d` and must
    /// be zero otherwise.
    pub fn hyperplane(&self, normal: Vec<f64>, offset: f64) -> Result<OrientedHyperplane> {
        if normal.len() != self.ambient_len() {
            return Err(GeomError::InvalidInput(format!(
                "normal needs {} coordinates, got {}",
                self.ambient_len(),
                normal.len()
            )));
        }
        let q = match self.curvature {
            Curvature::Hyperbolic => lorentz(&normal, &normal),
            _ => dot(&normal, &normal),
        };
        if !(q > 1e-24) {
            return Err(GeomError::InvalidInput(format!(
                "hyperplane normal must be nonzero (spacelike for H^d), got form value {q}"
            )));
        }
        if self.curvature != Curvature::Euclidean && offset != 0.0 {
            return Err(GeomError::InvalidInput("curved hyperplanes pass through the model origin; offset must be 0".into()));
        }
        let s = q.sqrt();
        Ok(OrientedHyperplane { normal: normal.into_iter().map(|v| v / s).collect(), offset: offset / s })
    }

    /// Signed form value whose sign decides the side of `h`.
    pub fn form(&self, h: &OrientedHyperplane, x: &Point) -> f64 {
        match self.curvature {
            Curvature::Euclidean => dot(x.coords(), &h.normal) - h.offset,
            Curvature::Spherical => dot(x.coords(), &h.normal),
            Curvature::Hyperbolic => lorentz(x.coords(), &h.normal),
        }
    }

    /// `+1` in the open positive side, `-1` in the open negative side, `0` on the plane.
    pub fn side(&self, h: &OrientedHyperplane, x: &Point) -> i8 {
        let v = self.form(h, x);
        if v.abs() <= SIDE_TOL {
            0
        } else if v > 0.0 {
            1
        } else {
            -1
        }
    }

    pub fn reflect(&self, h: &OrientedHyperplane, x: &Point) -> Point {
        let v = self.form(h, x);
        let coords = x.coords().iter().zip(&h.normal).map(|(xi, ni)| xi - 2.0 * v * ni).collect();
        self.project(Point { coords })
    }

    /// Point at fraction `t` of the way from `x` to `y` along the geodesic.
    pub fn geodesic_point(&self, x: &Point, y: &Point, t: f64) -> Result<Point> {
        let (a, b) = (x.coords(), y.coords());
        match self.curvature {
            Curvature::Euclidean => Ok(Point { coords: a.iter().zip(b).map(|(u, v)| u + t * (v - u)).collect() }),
            Curvature::Spherical | Curvature::Hyperbolic => {
                let theta = self.distance(x, y);
                if theta < 1e-15 {
                    return Ok(x.clone());
                }
                if self.curvature == Curvature::Spherical && PI - theta < 1e-9 {
                    return Err(GeomError::DegenerateGeodesic("antipodal points have no unique geodesic".into()));
                }
                let (wa, wb) = if self.curvature == Curvature::Spherical {
                    let s = theta.sin();
                    (((1.0 - t) * theta).sin() / s, (t * theta).sin() / s)
                } else {
                    let s = theta.sinh();
                    (((1.0 - t) * theta).sinh() / s, (t * theta).sinh() / s)
                };
                let coords = a.iter().zip(b).map(|(u, v)| wa * u + wb * v).collect();
                Ok(self.project(Point { coords }))
            }
        }
    }

    /// Perpendicular bisector of `a` and `b`, oriented with `b` on the positive side.
    pub fn bisector(&self, a: &Point, b: &Point) -> Result<OrientedHyperplane> {
        let dist = self.distance(a, b);
        if dist < 1e-12 {
            return Err(GeomError::InvalidInput("bisector of coincident points".into()));
        }
        let diff: Vec<f64> = b.coords().iter().zip(a.coords()).map(|(u, v)| u - v).collect();
        match self.curvature {
            Curvature::Euclidean => {
                let n = norm(&diff);
                let normal: Vec<f64> = diff.iter().map(|v| v / n).collect();
                let mid: Vec<f64> = a.coords().iter().zip(b.coords()).map(|(u, v)| 0.5 * (u + v)).collect();
                let offset = dot(&normal, &mid);
                Ok(OrientedHyperplane { normal, offset })
            }
            _ => self.hyperplane(diff, 0.0),
        }
    }

    /// A ball; a negative radius yields the canonical empty ball.
    pub fn ball(&self, center: Point, radius: f64) -> Ball {
        let empty = radius < 0.0;
        let radius = if empty {
            0.0
        } else if self.curvature == Curvature::Spherical {
            radius.min(PI)
        } else {
            radius
        };
        let threshold = match self.curvature {
            Curvature::Euclidean => radius * radius,
            Curvature::Spherical => radius.cos(),
            Curvature::Hyperbolic => radius.cosh(),
        };
        Ball { center, radius, empty, threshold }
    }

    /// Exact closed-ball membership test.
    #[inline]
    pub fn contains(&self, ball: &Ball, x: &Point) -> bool {
        if ball.empty {
            return false;
        }
        let (a, b) = (ball.center.coords(), x.coords());
        match self.curvature {
            Curvature::Euclidean => {
                let mut s = 0.0;
                for (u, v) in a.iter().zip(b) {
                    s += (u - v) * (u - v);
                }
                s <= ball.threshold
            }
            // Inner products decide membership without a transcendental call;
            // fall back to the accurate distance only in the thin ambiguous band.
            Curvature::Spherical => {
                let c = dot(a, b);
                if (c - ball.threshold).abs() > 1e-9 {
                    c >= ball.threshold
                } else {
                    self.distance(&ball.center, x) <= ball.radius
                }
            }
            Curvature::Hyperbolic => {
                let c = -lorentz(a, b);
                if (c - ball.threshold).abs() > 1e-9 * ball.threshold {
                    c <= ball.threshold
                } else {
                    self.distance(&ball.center, x) <= ball.radius
                }
            }
        }
    }

    pub fn reflect_ball(&self, h: &OrientedHyperplane, b: &Ball) -> Ball {
        if b.empty {
            return b.clone();
        }
        self.ball(self.reflect(h, &b.center), b.radius)
    }

    /// Smallest ball containing two balls (exact in all three geometries).
    pub fn enclose_balls(&self, a: &Ball, b: &Ball) -> Ball {
        if a.empty {
            return b.clone();
        }
        if b.empty {
            return a.clone();
        }
        let d = self.distance(&a.center, &b.center);
        if d + b.radius <= a.radius {
            return a.clone();
        }
        if d + a.radius <= b.radius {
            return b.clone();
        }
        let radius = 0.5 * (d + a.radius + b.radius);
        if self.curvature == Curvature::Spherical && radius >= PI - 1e-9 {
            return self.ball(a.center.clone(), PI);
        }
        let along = 0.5 * (d + b.radius - a.radius);
        match self.geodesic_point(&a.center, &b.center, along / d) {
            Ok(c) => self.ball(c, radius),
            Err(_) => self.ball(a.center.clone(), (d + b.radius).min(PI)),
        }
    }

    /// Uniformly distributed unit tangent vector at `c`, as an ambient vector.
    pub fn random_unit_tangent<R: Rng + ?Sized>(&self, c: &Point, rng: &mut R) -> Vec<f64> {
        let d = self.dim;
        loop {
            let u: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
            let n = norm(&u);
            if n < 1e-12 {
                continue;
            }
            match self.curvature {
                Curvature::Euclidean => return u.into_iter().map(|v| v / n).collect(),
                Curvature::Spherical => {
                    // Orthonormal tangent direction by projecting an isotropic
                    // ambient Gaussian; the extra coordinate keeps it isotropic.
                    let mut g = u;
                    g.push(rng.sample::<f64, _>(StandardNormal));
                    let cg = dot(&g, c.coords());
                    for (gi, ci) in g.iter_mut().zip(c.coords()) {
                        *gi -= cg * ci;
                    }
                    let m = norm(&g);
                    if m < 1e-12 {
                        continue;
                    }
                    return g.into_iter().map(|v| v / m).collect();
                }
                Curvature::Hyperbolic => {
                    // Boost the tangent space at the origin onto c.
                    let x = &c.coords()[..d];
                    let c_last = c.coords()[d];
                    let u: Vec<f64> = u.into_iter().map(|v| v / n).collect();
                    let xu = dot(x, &u);
                    let a = xu / (1.0 + c_last);
                    let mut v: Vec<f64> = u.iter().zip(x).map(|(ui, xi)| ui + a * xi).collect();
                    v.push(xu);
                    return v;
                }
            }
        }
    }

    /// Orthonormal basis of the tangent space at `c`, as ambient vectors.
    pub fn tangent_basis(&self, c: &Point) -> Vec<Vec<f64>> {
        let d = self.dim;
        let unit = |i: usize, n: usize| {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            e
        };
        match self.curvature {
            Curvature::Euclidean => (0..d).map(|i| unit(i, d)).collect(),
            Curvature::Hyperbolic => {
                let (x, last) = (&c.coords()[..d], c.coords()[d]);
                (0..d)
                    .map(|i| {
                        let a = x[i] / (1.0 + last);
                        let mut v: Vec<f64> = x.iter().map(|xj| a * xj).collect();
                        v[i] += 1.0;
                        v.push(x[i]);
                        v
                    })
                    .collect()
            }
            Curvature::Spherical => {
                let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d);
                for i in 0..=d {
                    let mut v = unit(i, d + 1);
                    for b in std::iter::once(c.coords()).chain(basis.iter().map(|b| b.as_slice())) {
                        let k = dot(&v, b);
                        for (vj, bj) in v.iter_mut().zip(b) {
                            *vj -= k * bj;
                        }
                    }
                    let n = norm(&v);
                    if n > 1e-6 {
                        basis.push(v.into_iter().map(|x| x / n).collect());
                    }
                    if basis.len() == d {
                        break;
                    }
                }
                basis
            }
        }
    }

    /// The point of `h` closest to the base point.
    pub fn foot_on_hyperplane(&self, h: &OrientedHyperplane) -> Point {
        let n = &h.normal;
        match self.curvature {
            Curvature::Euclidean => Point { coords: n.iter().map(|v| v * h.offset).collect() },
            _ => {
                let o = self.origin();
                let a = self.form(h, &o);
                let mut p: Vec<f64> = o.coords().iter().zip(n).map(|(x, v)| x - a * v).collect();
                if self.curvature == Curvature::Spherical && norm(&p) < 1e-9 {
                    p = self.tangent_basis(&o)[0].clone();
                }
                let q = match self.curvature {
                    Curvature::Hyperbolic => (-lorentz(&p, &p)).sqrt() * p[self.dim].signum(),
                    _ => norm(&p),
                };
                Point { coords: p.into_iter().map(|v| v / q).collect() }
            }
        }
    }

    /// Unit tangent at `from` pointing along the geodesic towards `to`, or
    /// `None` when the direction is undefined (coincident or antipodal points).
    pub fn direction_to(&self, from: &Point, to: &Point) -> Option<Vec<f64>> {
        let (x, y) = (from.coords(), to.coords());
        let u: Vec<f64> = match self.curvature {
            Curvature::Euclidean => y.iter().zip(x).map(|(b, a)| b - a).collect(),
            Curvature::Spherical => {
                let c = dot(x, y);
                y.iter().zip(x).map(|(b, a)| b - c * a).collect()
            }
            Curvature::Hyperbolic => {
                let c = lorentz(x, y);
                y.iter().zip(x).map(|(b, a)| b + c * a).collect()
            }
        };
        let q = match self.curvature {
            Curvature::Hyperbolic => lorentz(&u, &u),
            _ => dot(&u, &u),
        };
        if !(q > 1e-28) {
            return None;
        }
        let n = q.sqrt();
        Some(u.into_iter().map(|v| v / n).collect())
    }

    /// Exponential map at `c` applied to `t * dir` with `dir` a unit tangent.
    pub fn exp_at(&self, c: &Point, dir: &[f64], t: f64) -> Point {
        let coords: Vec<f64> = match self.curvature {
            Curvature::Euclidean => c.coords().iter().zip(dir).map(|(ci, di)| ci + t * di).collect(),
            Curvature::Spherical => {
                let (s, co) = t.sin_cos();
                c.coords().iter().zip(dir).map(|(ci, di)| co * ci + s * di).collect()
            }
            Curvature::Hyperbolic => {
                let (s, co) = (t.sinh(), t.cosh());
                c.coords().iter().zip(dir).map(|(ci, di)| co * ci + s * di).collect()
            }
        };
        self.project(Point { coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_point(s: &Space, rng: &mut ChaCha8Rng, spread: f64) -> Point {
        let v: Vec<f64> = (0..s.dim).map(|_| rng.random_range(-spread..spread)).collect();
        s.exp_origin(&v)
    }

    #[test]
    fn tangent_basis_is_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for s in spaces() {
            let c = random_point(&s, &mut rng, 0.9);
            let b = s.tangent_basis(&c);
            assert_eq!(b.len(), s.dim);
            let f = |x: &[f64], y: &[f64]| if s.curvature == Curvature::Hyperbolic { lorentz(x, y) } else { dot(x, y) };
            for (i, u) in b.iter().enumerate() {
                if s.curvature != Curvature::Euclidean {
                    assert!(f(u, c.coords()).abs() < 1e-12);
                }
                for (j, v) in b.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((f(u, v) - want).abs() < 1e-12);
                }
            }
            let n = s.random_unit_tangent(&c, &mut rng);
            let h = if s.curvature == Curvature::Euclidean {
                let off = dot(&n, c.coords());
                s.hyperplane(n, off).unwrap()
            } else {
                s.hyperplane(n, 0.0).unwrap()
            };
            let foot = s.foot_on_hyperplane(&h);
            s.check_point(&foot).unwrap();
            assert_eq!(s.side(&h, &foot), 0, "{s} {}", s.form(&h, &foot));
        }
    }

    fn spaces() -> Vec<Space> {
        vec![Space::euclidean(2), Space::spherical(2), Space::hyperbolic(2), Space::euclidean(4), Space::spherical(3), Space::hyperbolic(5)]
    }

    #[test]
    fn distance_examples() {
        let e = Space::euclidean(2);
        assert!((e.distance(&Point::from_raw(vec![0.0, 0.0]), &Point::from_raw(vec![3.0, 4.0])) - 5.0).abs() < 1e-15);
        let s = Space::spherical(2);
        let d = s.distance(&s.point(vec![1.0, 0.0, 0.0]).unwrap(), &s.point(vec![0.0, 1.0, 0.0]).unwrap());
        assert!((d - FRAC_PI_2).abs() < 1e-15);
        let h = Space::hyperbolic(2);
        let y = h.point(vec![0.0, 1f64.sinh(), 1f64.cosh()]).unwrap();
        assert!((h.distance(&h.origin(), &y) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn invalid_points_are_rejected() {
        let s = Space::spherical(2);
        assert!(matches!(s.point(vec![1.0, 1.0, 0.0]), Err(GeomError::OffManifold(_))));
        assert!(s.point(vec![1.0, 0.0]).is_err());
        let h = Space::hyperbolic(2);
        assert!(h.point(vec![0.0, 0.0, -1.0]).is_err());
        assert!(h.point(vec![0.0, 0.0, 2.0]).is_err());
        let p = Point::from_raw(vec![0.0, 0.0, 1.0]);
        assert!(h.checked_distance(&p, &Point::from_raw(vec![1.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn reflect_examples() {
        let e = Space::euclidean(2);
        let h = e.hyperplane(vec![1.0, 0.0], 0.0).unwrap();
        assert_eq!(e.reflect(&h, &Point::from_raw(vec![2.0, 3.0])).coords(), &[-2.0, 3.0]);
        assert_eq!(e.side(&h, &Point::from_raw(vec![2.0, 3.0])), 1);
        assert_eq!(e.side(&h, &Point::from_raw(vec![0.0, 3.0])), 0);

        let s = Space::spherical(2);
        let hs = s.hyperplane(vec![1.0, 0.0, 0.0], 0.0).unwrap();
        let r = s.reflect(&hs, &s.point(vec![1.0, 0.0, 0.0]).unwrap());
        assert!((r.coords()[0] + 1.0).abs() < 1e-15);
        assert_eq!(s.side(&hs, &s.point(vec![0.0, 1.0, 0.0]).unwrap()), 0);

        let hh = Space::hyperbolic(2);
        let plane = hh.hyperplane(vec![1.0, 0.0, 0.0], 0.0).unwrap();
        let on = hh.point(vec![0.0, 1f64.sinh(), 1f64.cosh()]).unwrap();
        let fixed = hh.reflect(&plane, &on);
        assert!(hh.distance(&on, &fixed) < 1e-12);
    }

    #[test]
    fn geodesic_point_examples() {
        let e = Space::euclidean(2);
        let m = e.geodesic_point(&Point::from_raw(vec![0.0, 0.0]), &Point::from_raw(vec![2.0, 0.0]), 0.5).unwrap();
        assert_eq!(m.coords(), &[1.0, 0.0]);
        let s = Space::spherical(2);
        let a = s.point(vec![1.0, 0.0, 0.0]).unwrap();
        let b = s.point(vec![0.0, 1.0, 0.0]).unwrap();
        let m = s.geodesic_point(&a, &b, 0.5).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((m.coords()[0] - r).abs() < 1e-15 && (m.coords()[1] - r).abs() < 1e-15);
        assert!(s.distance(&s.geodesic_point(&a, &b, 0.0).unwrap(), &a) < 1e-12);
        assert!(s.distance(&s.geodesic_point(&a, &b, 1.0).unwrap(), &b) < 1e-12);
        let anti = s.point(vec![-1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(s.geodesic_point(&a, &anti, 0.5), Err(GeomError::DegenerateGeodesic(_))));
    }

    #[test]
    fn bisector_examples() {
        let e = Space::euclidean(2);
        let h = e.bisector(&Point::from_raw(vec![0.0, 0.0]), &Point::from_raw(vec![2.0, 0.0])).unwrap();
        assert_eq!(h.normal(), &[1.0, 0.0]);
        assert!((h.offset() - 1.0).abs() < 1e-15);
        let hh = Space::hyperbolic(2);
        let a = hh.origin();
        let b = hh.point(vec![0.0, 1f64.sinh(), 1f64.cosh()]).unwrap();
        let plane = hh.bisector(&a, &b).unwrap();
        assert!(hh.distance(&hh.reflect(&plane, &a), &b) < 1e-9);
        assert_eq!(hh.side(&plane, &b), 1);
        assert!(hh.bisector(&a, &a).is_err());
    }

    #[test]
    fn isometry_involution_and_model_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for s in spaces() {
            for _ in 0..200 {
                let x = random_point(&s, &mut rng, 1.2);
                let y = random_point(&s, &mut rng, 1.2);
                let z = random_point(&s, &mut rng, 1.2);
                let a = random_point(&s, &mut rng, 1.0);
                let b = random_point(&s, &mut rng, 1.0);
                let h = s.bisector(&a, &b).unwrap();
                let (rx, ry) = (s.reflect(&h, &x), s.reflect(&h, &y));
                assert!((s.distance(&x, &y) - s.distance(&rx, &ry)).abs() < 1e-8, "{s}");
                assert!(s.distance(&s.reflect(&h, &rx), &x) < 1e-9, "{s}");
                assert!(s.check_point(&rx).is_ok());
                assert_eq!(s.side(&h, &rx), -s.side(&h, &x));
                assert!(s.distance(&x, &z) <= s.distance(&x, &y) + s.distance(&y, &z) + 1e-9);
                let g = s.geodesic_point(&x, &y, 0.3).unwrap();
                assert!(s.check_point(&g).is_ok());
                assert!((s.distance(&x, &g) - 0.3 * s.distance(&x, &y)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn tangent_and_exp_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for s in spaces() {
            let c = random_point(&s, &mut rng, 1.0);
            for _ in 0..50 {
                let dir = s.random_unit_tangent(&c, &mut rng);
                let q = s.exp_at(&c, &dir, 0.7);
                assert!(s.check_point(&q).is_ok());
                assert!((s.distance(&c, &q) - 0.7).abs() < 1e-9, "{s}");
            }
        }
    }

    #[test]
    fn ball_membership_and_enclosure() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for s in spaces() {
            for _ in 0..100 {
                let a = s.ball(random_point(&s, &mut rng, 1.0), rng.random_range(0.0..0.8));
                let b = s.ball(random_point(&s, &mut rng, 1.0), rng.random_range(0.0..0.8));
                let e = s.enclose_balls(&a, &b);
                for ball in [&a, &b] {
                    let d = s.distance(&e.center, &ball.center) + ball.radius;
                    assert!(d <= e.radius + 1e-9);
                }
                let x = random_point(&s, &mut rng, 1.5);
                assert_eq!(s.contains(&a, &x), s.distance(&a.center, &x) <= a.radius);
            }
        }
        let e = Space::euclidean(2);
        let empty = e.ball(e.origin(), -1.0);
        assert!(empty.is_empty());
        assert!(!e.contains(&empty, &e.origin()));
    }
}
