//! Python bindings. Points cross the boundary as lists of model coordinates.

use curvball::exact2d::{self, ArcPolygon, Disk};
use curvball::kp::{self, KPParams};
use curvball::minimax;
use curvball::oracle::dual_of_points;
use curvball::{Curvature, GeomError, Point, RngSpec};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: GeomError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn curvature(name: &str) -> PyResult<Curvature> {
    match name {
        "euclidean" | "E" => Ok(Curvature::Euclidean),
        "spherical" | "S" => Ok(Curvature::Spherical),
        "hyperbolic" | "H" => Ok(Curvature::Hyperbolic),
        _ => Err(PyValueError::new_err(format!("unknown space {name:?}; expected euclidean, spherical or hyperbolic"))),
    }
}

#[pyclass(name = "VolumeEstimate", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct PyVolumeEstimate {
    value: f64,
    std_err: f64,
    ci95: (f64, f64),
    n_samples: u64,
    hits: u64,
}

impl From<curvball::VolumeEstimate> for PyVolumeEstimate {
    fn from(e: curvball::VolumeEstimate) -> Self {
        PyVolumeEstimate { value: e.value, std_err: e.std_err, ci95: e.ci95, n_samples: e.n_samples, hits: e.hits }
    }
}

#[pymethods]
impl PyVolumeEstimate {
    fn __repr__(&self) -> String {
        format!("VolumeEstimate(value={}, std_err={}, n_samples={})", self.value, self.std_err, self.n_samples)
    }
}

#[pyclass(name = "KPReport", frozen, get_all)]
pub struct PyKPReport {
    verdict: String,
    threshold_n: u64,
    above_threshold: bool,
    f_lower: f64,
    g_upper: f64,
    vol_p_dual: PyVolumeEstimate,
    vol_q_dual: PyVolumeEstimate,
    p_dual_certified_empty: bool,
    p_below_g: bool,
    q_above_f: bool,
}

/// `E^d`, `S^d` or `H^d`.
#[pyclass(name = "Space", frozen)]
pub struct PySpace {
    inner: curvball::Space,
}

impl PySpace {
    fn point(&self, coords: Vec<f64>) -> PyResult<Point> {
        self.inner.point(coords).map_err(py_err)
    }

    fn points(&self, pts: Vec<Vec<f64>>) -> PyResult<Vec<Point>> {
        pts.into_iter().map(|c| self.point(c)).collect()
    }

    fn params(&self, n: u64, lam: f64, delta: f64, k: Option<f64>) -> PyResult<KPParams> {
        KPParams::new(self.inner, n, lam, delta, k).map_err(py_err)
    }
}

#[pymethods]
impl PySpace {
    #[new]
    fn new(curvature_name: &str, dim: usize) -> PyResult<Self> {
        let inner = curvball::Space::new(curvature(curvature_name)?, dim).map_err(py_err)?;
        Ok(PySpace { inner })
    }

    #[getter]
    fn curvature(&self) -> &'static str {
        self.inner.curvature.name()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }

    fn __repr__(&self) -> String {
        format!("Space({:?}, {})", self.inner.curvature.name(), self.inner.dim)
    }

    fn origin(&self) -> Vec<f64> {
        self.inner.origin().into_coords()
    }

    /// Point at distance `|v|` from the origin in direction `v`.
    fn exp_origin(&self, v: Vec<f64>) -> PyResult<Vec<f64>> {
        if v.len() != self.inner.dim {
            return Err(PyValueError::new_err(format!("expected {} intrinsic coordinates", self.inner.dim)));
        }
        Ok(self.inner.exp_origin(&v).into_coords())
    }

    fn distance(&self, x: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
        Ok(self.inner.distance(&self.point(x)?, &self.point(y)?))
    }

    fn reflect(&self, normal: Vec<f64>, offset: f64, x: Vec<f64>) -> PyResult<Vec<f64>> {
        let h = self.inner.hyperplane(normal, offset).map_err(py_err)?;
        Ok(self.inner.reflect(&h, &self.point(x)?).into_coords())
    }

    fn ball_volume(&self, r: f64) -> PyResult<f64> {
        curvball::ball_volume(&self.inner, r).map_err(py_err)
    }

    fn ball_volume_inverse(&self, v: f64) -> PyResult<f64> {
        curvball::ball_volume_inverse(&self.inner, v).map_err(py_err)
    }

    /// Radius of the ball whose volume is `n` times that of a `lam/2` ball.
    fn mu_solve(&self, n: u64, lam: f64) -> PyResult<f64> {
        curvball::mu_solve(&self.inner, n, lam).map_err(py_err)
    }

    /// Smallest enclosing ball as `(center, radius)`.
    #[pyo3(signature = (points, iters = 20_000))]
    fn circumradius(&self, points: Vec<Vec<f64>>, iters: u64) -> PyResult<(Vec<f64>, f64)> {
        let meb = minimax::circumradius(&self.inner, &self.points(points)?, iters).map_err(py_err)?;
        Ok((meb.ball.center.into_coords(), meb.ball.radius))
    }

    fn jung_bound(&self, diameter: f64) -> PyResult<f64> {
        minimax::jung_bound(&self.inner, diameter).map_err(py_err)
    }

    #[pyo3(signature = (diameter, k = None))]
    fn relaxed_jung_bound(&self, diameter: f64, k: Option<f64>) -> PyResult<f64> {
        minimax::relaxed_jung_bound(&self.inner, diameter, k).map_err(py_err)
    }

    /// Whether `y` lies within `r` of every point.
    fn in_dual(&self, points: Vec<Vec<f64>>, r: f64, y: Vec<f64>) -> PyResult<bool> {
        let dual = dual_of_points(&self.inner, &self.points(points)?, r).map_err(py_err)?;
        Ok(dual.contains(&self.point(y)?))
    }

    /// Monte Carlo volume of the intersection of the `r`-balls around `points`.
    #[pyo3(signature = (points, r, n_mc = 1_000_000, seed = 0))]
    fn dual_volume(&self, py: Python<'_>, points: Vec<Vec<f64>>, r: f64, n_mc: u64, seed: u64) -> PyResult<PyVolumeEstimate> {
        let pts = self.points(points)?;
        let s = self.inner;
        py.detach(move || {
            let dual = dual_of_points(&s, &pts, r)?;
            let oracle = dual.to_oracle();
            match oracle.bound() {
                Some(b) => curvball::estimate_volume(&oracle, &b.clone(), n_mc, &RngSpec::new(seed, 0)),
                None => Ok(curvball::VolumeEstimate::from_counts(0, n_mc, 0.0)),
            }
        })
        .map(PyVolumeEstimate::from)
        .map_err(py_err)
    }

    /// Threshold count and the two radius bounds as `(threshold, f_lower, g_upper)`.
    #[pyo3(signature = (n, lam, delta, k = None))]
    fn kp_bounds(&self, n: u64, lam: f64, delta: f64, k: Option<f64>) -> PyResult<(u64, f64, f64)> {
        let p = self.params(n, lam, delta, k)?;
        Ok((kp::threshold_n(&p), kp::f_lower_bound(&p).map_err(py_err)?, kp::g_upper_bound(&p).map_err(py_err)?))
    }

    #[pyo3(signature = (n, lam, delta, k = None, n_mc = 1_000_000, seed = 0))]
    fn verify_kp(&self, py: Python<'_>, n: u64, lam: f64, delta: f64, k: Option<f64>, n_mc: u64, seed: u64) -> PyResult<PyKPReport> {
        let p = self.params(n, lam, delta, k)?;
        let rep = py.detach(move || kp::verify_kp(&p, n_mc, &RngSpec::new(seed, 0))).map_err(py_err)?;
        Ok(PyKPReport {
            verdict: format!("{:?}", rep.verdict).to_lowercase(),
            threshold_n: rep.threshold_n,
            above_threshold: rep.above_threshold,
            f_lower: rep.f_lower,
            g_upper: rep.g_upper,
            vol_p_dual: rep.vol_p_dual.into(),
            vol_q_dual: rep.vol_q_dual.into(),
            p_dual_certified_empty: rep.p_dual_certified_empty,
            p_below_g: rep.p_below_g,
            q_above_f: rep.q_above_f,
        })
    }
}

/// Area of the intersection of two radius-`r` disks at distance `delta`.
#[pyfunction]
#[pyo3(signature = (delta, r = 1.0))]
fn lens_area(delta: f64, r: f64) -> PyResult<f64> {
    exact2d::lens_area(delta, r).map_err(py_err)
}

#[pyfunction]
fn reuleaux_area(side: f64) -> f64 {
    exact2d::reuleaux_area(side)
}

/// Exact area of the intersection of planar disks.
#[pyfunction]
fn disk_intersection_area(centers: Vec<(f64, f64)>, radii: Vec<f64>) -> PyResult<f64> {
    if centers.len() != radii.len() {
        return Err(PyValueError::new_err("centers and radii differ in length"));
    }
    let disks: Vec<Disk> = centers.iter().zip(&radii).map(|(&(x, y), &r)| Disk::new([x, y], r)).collect();
    Ok(ArcPolygon::intersection_of_disks(&disks).map_err(py_err)?.area())
}

/// `(lhs, mu, holds)` for the spherical packing estimate.
#[pyfunction]
fn check_packing_spherical(dim: usize, n: u64, lam: f64) -> PyResult<(f64, f64, bool)> {
    let c = kp::check_prop_spherical(dim, n, lam).map_err(py_err)?;
    Ok((c.lhs, c.mu, c.holds))
}

/// `(lhs, mu, holds)` for the hyperbolic packing estimate.
#[pyfunction]
fn check_packing_hyperbolic(dim: usize, k: f64, n: u64, lam: f64, delta: f64) -> PyResult<(f64, f64, bool)> {
    let c = kp::check_prop_hyperbolic(dim, k, n, lam, delta).map_err(py_err)?;
    Ok((c.lhs, c.mu, c.holds))
}

#[pymodule]
#[pyo3(name = "curvball")]
fn curvball_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpace>()?;
    m.add_class::<PyVolumeEstimate>()?;
    m.add_class::<PyKPReport>()?;
    m.add_function(wrap_pyfunction!(lens_area, m)?)?;
    m.add_function(wrap_pyfunction!(reuleaux_area, m)?)?;
    m.add_function(wrap_pyfunction!(disk_intersection_area, m)?)?;
    m.add_function(wrap_pyfunction!(check_packing_spherical, m)?)?;
    m.add_function(wrap_pyfunction!(check_packing_hyperbolic, m)?)?;
    Ok(())
}
