//! Ball volumes, their inverse, uniform sampling in geodesic balls and
//! hit-or-miss Monte Carlo volume estimation.
//!
//! In all three geometries the volume of a ball of radius `r` is
//! `d * omega_d * integral_0^r g(t) dt` with radial density `g(t)` equal to
//! `t^(d-1)`, `sin^(d-1) t` or `sinh^(d-1) t`. The curved cases are integrated
//! numerically; the same density drives the inverse and the radial sampler.

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geom::{Ball, Curvature, Point, Space};
use crate::oracle::SetOracle;
use crate::quad::integrate;
use crate::rng::RngSpec;

const QUAD_TOL: f64 = 1e-13;
/// Samples per independently seeded Monte Carlo chunk.
pub const MC_CHUNK: u64 = 1 << 14;
/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// Volume of the Euclidean unit ball `omega_d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    // omega_d = 2 pi / d * omega_{d-2}
    let (mut w, start) = if d.is_multiple_of(2) { (1.0, 2) } else { (2.0, 3) };
    let mut k = start;
    while k <= d {
        w *= 2.0 * PI / k as f64;
        k += 2;
    }
    w
}

fn radial_density(c: Curvature, d: usize, t: f64) -> f64 {
    let p = (d - 1) as i32;
    match c {
        Curvature::Euclidean => t.powi(p),
        Curvature::Spherical => t.sin().powi(p),
        Curvature::Hyperbolic => t.sinh().powi(p),
    }
}

/// `d/dr` of [`ball_volume`]: the area of the bounding sphere.
pub fn ball_volume_derivative(s: &Space, r: f64) -> f64 {
    s.dim as f64 * unit_ball_volume(s.dim) * radial_density(s.curvature, s.dim, r)
}

/// Total volume of the space (finite only for the sphere).
pub fn total_volume(s: &Space) -> f64 {
    match s.curvature {
        Curvature::Spherical => (s.dim + 1) as f64 * unit_ball_volume(s.dim + 1),
        _ => f64::INFINITY,
    }
}

fn check_radius(s: &Space, r: f64) -> Result<()> {
    let ok = r >= 0.0 && r.is_finite() && (s.curvature != Curvature::Spherical || r <= PI);
    if ok {
        Ok(())
    } else {
        Err(GeomError::InadmissibleRadius { radius: r, space: s.to_string() })
    }
}

fn ball_volume_unchecked(s: &Space, r: f64) -> f64 {
    let d = s.dim;
    match s.curvature {
        Curvature::Euclidean => unit_ball_volume(d) * r.powi(d as i32),
        c => {
            let w = d as f64 * unit_ball_volume(d);
            // Split at pi/2 so each panel sees a monotone integrand.
            if c == Curvature::Spherical && r > PI / 2.0 {
                w * (integrate(|t| radial_density(c, d, t), 0.0, PI / 2.0, QUAD_TOL)
                    + integrate(|t| radial_density(c, d, t), PI / 2.0, r, QUAD_TOL))
            } else {
                w * integrate(|t| radial_density(c, d, t), 0.0, r, QUAD_TOL)
            }
        }
    }
}

/// Volume of a geodesic ball of radius `r`.
pub fn ball_volume(s: &Space, r: f64) -> Result<f64> {
    check_radius(s, r)?;
    Ok(ball_volume_unchecked(s, r))
}

/// Volume of a [`Ball`]; the empty ball has volume zero.
pub fn volume_of(s: &Space, b: &Ball) -> f64 {
    if b.is_empty() {
        0.0
    } else {
        ball_volume_unchecked(s, b.radius)
    }
}

/// Closed-form ball volume where one is elementary: all `d` for `E^d`,
/// `d` in {2, 3} for the curved models.
pub fn closed_form_ball_volume(s: &Space, r: f64) -> Option<f64> {
    match (s.curvature, s.dim) {
        (Curvature::Euclidean, d) => Some(unit_ball_volume(d) * r.powi(d as i32)),
        (Curvature::Spherical, 2) => Some(2.0 * PI * (1.0 - r.cos())),
        (Curvature::Spherical, 3) => Some(PI * (2.0 * r - (2.0 * r).sin())),
        (Curvature::Hyperbolic, 2) => Some(2.0 * PI * (r.cosh() - 1.0)),
        (Curvature::Hyperbolic, 3) => Some(PI * ((2.0 * r).sinh() - 2.0 * r)),
        _ => None,
    }
}

/// Radius of the ball with volume `v`.
///
/// Bisection narrows the bracket to `1e-12`, then three Newton steps with the
/// analytic derivative polish the root.
pub fn ball_volume_inverse(s: &Space, v: f64) -> Result<f64> {
    let total = total_volume(s);
    if !(v > 0.0) || !v.is_finite() || v > total * (1.0 + 1e-12) {
        return Err(GeomError::VolumeOutOfRange { volume: v, space: s.to_string() });
    }
    if s.curvature == Curvature::Euclidean {
        return Ok((v / unit_ball_volume(s.dim)).powf(1.0 / s.dim as f64));
    }
    if v >= total {
        return Ok(PI);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    match s.curvature {
        Curvature::Spherical => hi = PI,
        _ => {
            while ball_volume_unchecked(s, hi) < v {
                lo = hi;
                hi *= 2.0;
            }
        }
    }
    while hi - lo > 1e-12 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if ball_volume_unchecked(s, mid) < v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut r = 0.5 * (lo + hi);
    for _ in 0..3 {
        let dv = ball_volume_derivative(s, r);
        if dv <= 0.0 {
            break;
        }
        let next = r - (ball_volume_unchecked(s, r) - v) / dv;
        if next.is_finite() && next > 0.0 {
            r = next;
        }
    }
    Ok(r)
}

/// Radius `mu` with `V(B[mu]) = N * V(B[lambda/2])`.
pub fn mu_solve(s: &Space, n: u64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) || n == 0 {
        return Err(GeomError::InvalidInput(format!("need N >= 1 and lambda > 0, got N={n}, lambda={lambda}")));
    }
    let half = 0.5 * lambda;
    check_radius(s, half)?;
    if n == 1 {
        return Ok(half);
    }
    if s.curvature == Curvature::Euclidean {
        return Ok(half * (n as f64).powf(1.0 / s.dim as f64));
    }
    let target = n as f64 * ball_volume_unchecked(s, half);
    let total = total_volume(s);
    if target > total {
        return Err(GeomError::Saturated { requested: target, total });
    }
    ball_volume_inverse(s, target)
}

const TABLE_NODES: usize = 256;

/// Inverse-CDF table for the geodesic radius of a uniform point in a ball.
///
/// Cumulative volume is tabulated on a uniform grid and interpolated by a
/// cubic Hermite spline whose node slopes are the exact density.
#[derive(Debug, Clone)]
pub struct RadialSampler {
    curvature: Curvature,
    dim: usize,
    radius: f64,
    cumulative: Vec<f64>,
    density: Vec<f64>,
}

impl RadialSampler {
    pub fn new(s: &Space, radius: f64) -> Self {
        let (c, d) = (s.curvature, s.dim);
        let mut cumulative = Vec::new();
        let mut density = Vec::new();
        if c != Curvature::Euclidean && radius > 0.0 {
            let h = radius / TABLE_NODES as f64;
            cumulative.reserve(TABLE_NODES + 1);
            let mut acc = 0.0;
            cumulative.push(0.0);
            density.push(radial_density(c, d, 0.0));
            for i in 1..=TABLE_NODES {
                let (a, b) = ((i - 1) as f64 * h, i as f64 * h);
                acc += integrate(|t| radial_density(c, d, t), a, b, QUAD_TOL);
                cumulative.push(acc);
                density.push(radial_density(c, d, b));
            }
        }
        RadialSampler { curvature: c, dim: d, radius, cumulative, density }
    }

    /// Radius whose cumulative mass fraction is `u` in `[0, 1]`.
    pub fn quantile(&self, u: f64) -> f64 {
        if self.radius <= 0.0 {
            return 0.0;
        }
        if self.curvature == Curvature::Euclidean {
            return self.radius * u.powf(1.0 / self.dim as f64);
        }
        let total = *self.cumulative.last().unwrap();
        let target = u * total;
        let i = match self.cumulative.binary_search_by(|c| c.partial_cmp(&target).unwrap()) {
            Ok(i) => return i as f64 * self.radius / TABLE_NODES as f64,
            Err(i) => i.clamp(1, TABLE_NODES) - 1,
        };
        let h = self.radius / TABLE_NODES as f64;
        let (c0, c1) = (self.cumulative[i], self.cumulative[i + 1]);
        let (m0, m1) = (self.density[i] * h, self.density[i + 1] * h);
        let hermite = |s: f64| {
            let (s2, s3) = (s * s, s * s * s);
            (2.0 * s3 - 3.0 * s2 + 1.0) * c0 + (s3 - 2.0 * s2 + s) * m0 + (-2.0 * s3 + 3.0 * s2) * c1 + (s3 - s2) * m1
        };
        let slope = |s: f64| {
            let s2 = s * s;
            (6.0 * s2 - 6.0 * s) * c0 + (3.0 * s2 - 4.0 * s + 1.0) * m0 + (-6.0 * s2 + 6.0 * s) * c1 + (3.0 * s2 - 2.0 * s) * m1
        };
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut s = if c1 > c0 { ((target - c0) / (c1 - c0)).clamp(0.0, 1.0) } else { 0.5 };
        for _ in 0..40 {
            let f = hermite(s) - target;
            if f.abs() <= 1e-15 * total {
                break;
            }
            if f > 0.0 {
                hi = s;
            } else {
                lo = s;
            }
            let g = slope(s);
            let next = if g > 0.0 { s - f / g } else { f64::NAN };
            s = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
            if hi - lo < 1e-15 {
                break;
            }
        }
        ((i as f64 + s) * h).min(self.radius)
    }
}

/// Draws uniform points from a fixed geodesic ball.
#[derive(Debug, Clone)]
pub struct BallSampler {
    space: Space,
    center: Point,
    radial: RadialSampler,
}

impl BallSampler {
    pub fn new(s: &Space, ball: &Ball) -> Self {
        BallSampler { space: *s, center: ball.center.clone(), radial: RadialSampler::new(s, ball.radius) }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let dir = self.space.random_unit_tangent(&self.center, rng);
        let t = self.radial.quantile(rng.random::<f64>());
        self.space.exp_at(&self.center, &dir, t)
    }
}

/// One uniform point of `B[c, r]` drawn from the start of stream `rng`.
pub fn sample_uniform_ball(s: &Space, c: &Point, r: f64, rng: &RngSpec) -> Result<Point> {
    check_radius(s, r)?;
    let ball = s.ball(c.clone(), r);
    Ok(BallSampler::new(s, &ball).sample(&mut rng.rng()))
}

/// Hit-or-miss Monte Carlo volume estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    pub value: f64,
    pub n_samples: u64,
    pub hits: u64,
    pub std_err: f64,
    pub ci95: (f64, f64),
    pub sampling_ball_volume: f64,
}

impl VolumeEstimate {
    pub fn from_counts(hits: u64, n: u64, sampling_ball_volume: f64) -> Self {
        let p = if n == 0 { 0.0 } else { hits as f64 / n as f64 };
        let value = sampling_ball_volume * p;
        let std_err = if n == 0 { 0.0 } else { sampling_ball_volume * (p * (1.0 - p) / n as f64).sqrt() };
        let lo = (value - Z95 * std_err).max(0.0);
        let hi = (value + Z95 * std_err).min(sampling_ball_volume);
        VolumeEstimate { value, n_samples: n, hits, std_err, ci95: (lo, hi), sampling_ball_volume }
    }

    /// `value + k * std_err`.
    pub fn upper(&self, k: f64) -> f64 {
        self.value + k * self.std_err
    }

    /// `value - k * std_err`.
    pub fn lower(&self, k: f64) -> f64 {
        self.value - k * self.std_err
    }
}

/// Estimates the volume of `set` by sampling `n` uniform points of `sampling`.
///
/// The `n` samples are split into fixed chunks of [`MC_CHUNK`] that each draw
/// from their own block of `rng`, and only integer hit counts are merged, so the
/// estimate is bit-identical for any thread count.
pub fn estimate_volume(set: &SetOracle, sampling: &Ball, n: u64, rng: &RngSpec) -> Result<VolumeEstimate> {
    let s = set.space();
    let sampling_volume = volume_of(&s, sampling);
    let Some(bound) = set.bound() else {
        return Ok(VolumeEstimate::from_counts(0, n, sampling_volume));
    };
    if sampling.is_empty() {
        return Err(GeomError::SamplingBallTooSmall);
    }
    let reach = s.distance(&sampling.center, &bound.center) + bound.radius;
    let whole_sphere = s.curvature == Curvature::Spherical && sampling.radius >= PI;
    if !whole_sphere && reach > sampling.radius + 1e-9 {
        return Err(GeomError::SamplingBallTooSmall);
    }
    let sampler = BallSampler::new(&s, sampling);
    let n_chunks = n.div_ceil(MC_CHUNK);
    let hits = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut r = rng.chunk_rng(chunk);
            let count = MC_CHUNK.min(n - chunk * MC_CHUNK);
            let mut hits = 0u64;
            for _ in 0..count {
                let x = sampler.sample(&mut r);
                if set.contains(&x) {
                    let d = s.distance(&bound.center, &x);
                    if d > bound.radius + 1e-9 {
                        return Err(GeomError::BoundViolation { distance: d, radius: bound.radius });
                    }
                    hits += 1;
                }
            }
            Ok(hits)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(VolumeEstimate::from_counts(hits, n, sampling_volume))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_ball_volumes() {
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-15);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn volume_examples() {
        let e = Space::euclidean(2);
        assert!((ball_volume(&e, 2.0).unwrap() - 4.0 * PI).abs() < 1e-12);
        let s = Space::spherical(2);
        assert!((ball_volume(&s, 1.0).unwrap() - 2.888_365_797_513_640).abs() < 1e-12);
        let h = Space::hyperbolic(2);
        assert!((ball_volume(&h, 1.0).unwrap() - 3.412_276_265_284_902).abs() < 1e-12);
        assert!(ball_volume(&s, 3.5).is_err());
        assert!(ball_volume(&e, -0.1).is_err());
        assert_eq!(volume_of(&e, &e.ball(e.origin(), -1.0)), 0.0);
    }

    #[test]
    fn inverse_examples() {
        let e = Space::euclidean(2);
        assert!((ball_volume_inverse(&e, PI).unwrap() - 1.0).abs() < 1e-15);
        let s = Space::spherical(2);
        assert!((ball_volume_inverse(&s, 2.0 * PI).unwrap() - PI / 2.0).abs() < 1e-12);
        let h = Space::hyperbolic(2);
        assert!((ball_volume_inverse(&h, 3.412_276_265_284_902).unwrap() - 1.0).abs() < 1e-6);
        assert!(ball_volume_inverse(&s, 4.0 * PI + 1.0).is_err());
        assert!(ball_volume_inverse(&h, 0.0).is_err());
    }

    #[test]
    fn mu_examples() {
        let e = Space::euclidean(2);
        assert!((mu_solve(&e, 6, 1.0).unwrap() - 1.224_744_871_391_589).abs() < 1e-12);
        let s = Space::spherical(2);
        assert!((mu_solve(&s, 89, 0.1).unwrap() - 0.476_134_770_131_946_5).abs() < 1e-9);
        for sp in [e, s, Space::hyperbolic(3)] {
            assert_eq!(mu_solve(&sp, 1, 0.4).unwrap(), 0.2);
        }
        assert!(matches!(mu_solve(&s, 10_000, 1.0), Err(GeomError::Saturated { .. })));
    }

    #[test]
    fn radial_quantile_matches_cdf() {
        for s in [Space::spherical(3), Space::hyperbolic(4), Space::spherical(2)] {
            let r = 1.3;
            let rs = RadialSampler::new(&s, r);
            let total = ball_volume(&s, r).unwrap();
            for k in 1..20 {
                let u = k as f64 / 20.0;
                let t = rs.quantile(u);
                let frac = ball_volume(&s, t).unwrap() / total;
                assert!((frac - u).abs() < 1e-9, "{s} u={u} frac={frac}");
            }
            assert_eq!(rs.quantile(0.0), 0.0);
            assert!((rs.quantile(1.0) - r).abs() < 1e-12);
        }
    }
}
