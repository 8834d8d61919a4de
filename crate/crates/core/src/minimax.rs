//! Circumradius (minimum enclosing geodesic ball) and Jung-type bounds.

use std::f64::consts::{PI, SQRT_2};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::geom::{Ball, Curvature, Point, Space};

#[derive(Debug, Clone, Serialize)]
pub struct EnclosingBall {
    pub ball: Ball,
    /// `max_i dist(center, p_i) - radius`; never positive on return.
    pub max_violation: f64,
    pub iterations: u64,
}

fn finish(s: &Space, points: &[Point], center: Point, iterations: u64) -> EnclosingBall {
    let radius = points.iter().map(|p| s.distance(&center, p)).fold(0.0, f64::max);
    EnclosingBall { ball: s.ball(center, radius), max_violation: 0.0, iterations }
}

/// Circumcenter of affinely independent points, or `None` when the Gram
/// system is singular.
fn circumcenter(support: &[&[f64]]) -> Option<Vec<f64>> {
    let p0 = support[0];
    let k = support.len() - 1;
    if k == 0 {
        return Some(p0.to_vec());
    }
    let v: Vec<Vec<f64>> = support[1..].iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    // Augmented system 2 G lambda = |v_i|^2.
    let mut m: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            let mut row: Vec<f64> = (0..k).map(|j| 2.0 * dot(&v[i], &v[j])).collect();
            row.push(dot(&v[i], &v[i]));
            row
        })
        .collect();
    let scale = m.iter().map(|r| r[..k].iter().fold(0.0f64, |a, b| a.max(b.abs()))).fold(0.0, f64::max);
    for col in 0..k {
        let piv = (col..k).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col].abs() <= 1e-13 * scale.max(1e-300) {
            return None;
        }
        m.swap(col, piv);
        for row in 0..k {
            if row != col {
                let f = m[row][col] / m[col][col];
                if f != 0.0 {
                    for c in col..=k {
                        m[row][c] -= f * m[col][c];
                    }
                }
            }
        }
    }
    let lambda: Vec<f64> = (0..k).map(|i| m[i][k] / m[i][i]).collect();
    let mut c = p0.to_vec();
    for (l, vi) in lambda.iter().zip(&v) {
        for (cj, vij) in c.iter_mut().zip(vi) {
            *cj += l * vij;
        }
    }
    Some(c)
}

struct Mtf<'a> {
    dim: usize,
    pts: Vec<&'a [f64]>,
}

impl<'a> Mtf<'a> {
    fn ball(&self, support: &[&[f64]]) -> Option<(Vec<f64>, f64)> {
        if support.is_empty() {
            return None;
        }
        let mut sup = support.to_vec();
        loop {
            if let Some(c) = circumcenter(&sup) {
                let r2 = support.iter().map(|p| dist2(&c, p)).fold(0.0, f64::max);
                return Some((c, r2));
            }
            // Numerically dependent support: drop the newest point; the radius
            // still covers every support point.
            sup.pop();
        }
    }

    fn run(&mut self, end: usize, support: &mut Vec<&'a [f64]>) -> Option<(Vec<f64>, f64)> {
        let mut ball = self.ball(support);
        if support.len() == self.dim + 1 {
            return ball;
        }
        for i in 0..end {
            let p = self.pts[i];
            let inside = match &ball {
                Some((c, r2)) => dist2(c, p) <= r2 * (1.0 + 1e-12) + 1e-300,
                None => false,
            };
            if !inside {
                support.push(p);
                ball = self.run(i, support);
                support.pop();
                self.pts[..=i].rotate_right(1);
            }
        }
        ball
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Exact minimum enclosing ball in `E^d` (move-to-front Welzl on a fixed
/// pseudo-random permutation).
pub fn meb_euclidean(points: &[Point]) -> Result<EnclosingBall> {
    if points.is_empty() {
        return Err(GeomError::InvalidInput("minimum enclosing ball of an empty set".into()));
    }
    let dim = points[0].len();
    if dim == 0 || points.iter().any(|p| p.len() != dim) {
        return Err(GeomError::InvalidInput("points must share a nonzero dimension".into()));
    }
    let mut pts: Vec<&[f64]> = points.iter().map(|p| p.coords()).collect();
    pts.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5EED_BA11));
    let n = pts.len();
    let mut mtf = Mtf { dim, pts };
    let (c, _) = mtf.run(n, &mut Vec::with_capacity(dim + 1)).expect("nonempty input");
    let s = Space { curvature: Curvature::Euclidean, dim, k_cap: None };
    Ok(finish(&s, points, Point::from_raw(c), n as u64))
}

/// Approximate minimum enclosing geodesic ball by farthest-point iteration:
/// `center <- geodesic_point(center, farthest, 1/(t+1))`.
///
/// The reported ball is the best iterate seen, so the radius is monotone
/// nonincreasing in `iters` and always encloses every input point.
pub fn meb_geodesic(s: &Space, points: &[Point], iters: u64) -> Result<EnclosingBall> {
    if points.is_empty() {
        return Err(GeomError::InvalidInput("minimum enclosing ball of an empty set".into()));
    }
    if iters == 0 {
        return Err(GeomError::InvalidInput("iters must be at least 1".into()));
    }
    if s.curvature == Curvature::Spherical {
        for (i, p) in points.iter().enumerate() {
            for q in &points[i + 1..] {
                let d = s.distance(p, q);
                if d >= PI - 1e-6 {
                    return Err(GeomError::HemisphereViolation { distance: d });
                }
            }
        }
    }
    let farthest = |c: &Point| {
        let mut best = (0usize, -1.0);
        for (i, p) in points.iter().enumerate() {
            let d = s.distance(c, p);
            if d > best.1 {
                best = (i, d);
            }
        }
        best
    };
    let mut center = points[0].clone();
    let mut best_center = center.clone();
    let mut best_radius = f64::INFINITY;
    let mut done = 0;
    for t in 1..=iters {
        done = t;
        let (far, radius) = farthest(&center);
        if radius < best_radius {
            best_radius = radius;
            best_center = center.clone();
        }
        if radius == 0.0 {
            break;
        }
        center = s.geodesic_point(&center, &points[far], 1.0 / (t as f64 + 1.0))?;
    }
    let (_, last) = farthest(&center);
    if last < best_radius {
        best_center = center;
    }
    Ok(finish(s, points, best_center, done))
}

/// Circumradius in any of the three geometries: exact for `E^d`, iterative
/// (`iters` steps) for the curved models.
pub fn circumradius(s: &Space, points: &[Point], iters: u64) -> Result<EnclosingBall> {
    match s.curvature {
        Curvature::Euclidean => meb_euclidean(points),
        _ => meb_geodesic(s, points, iters),
    }
}

fn jung_factor(d: usize) -> f64 {
    (2.0 * d as f64 / (d as f64 + 1.0)).sqrt()
}

/// Jung's bound on the circumradius of a set of diameter at most `lambda`.
pub fn jung_bound(s: &Space, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(GeomError::InvalidInput(format!("lambda must be positive, got {lambda}")));
    }
    let f = jung_factor(s.dim);
    match s.curvature {
        Curvature::Euclidean => Ok(f * lambda / 2.0),
        Curvature::Spherical => {
            let x = f * (lambda / 2.0).sin();
            if lambda > PI || x > 1.0 {
                return Err(GeomError::InvalidInput(format!("arcsin argument {x} out of domain for lambda {lambda}")));
            }
            Ok(x.asin())
        }
        Curvature::Hyperbolic => Ok((f * (lambda / 2.0).sinh()).asinh()),
    }
}

/// The weakened, dimension-free circumradius bounds used by the
/// Kneser-Poulsen thresholds: `lambda/sqrt 2`, `pi lambda/(2 sqrt 2)` and
/// `sinh k/(sqrt 2 k) lambda`.
pub fn relaxed_jung_bound(s: &Space, lambda: f64, k: Option<f64>) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(GeomError::InvalidInput(format!("lambda must be positive, got {lambda}")));
    }
    match s.curvature {
        Curvature::Euclidean => Ok(lambda / SQRT_2),
        Curvature::Spherical => {
            if lambda >= PI / 2.0 {
                return Err(GeomError::Hypothesis(format!("need 0 < lambda < pi/2, got {lambda}")));
            }
            Ok(PI / (2.0 * SQRT_2) * lambda)
        }
        Curvature::Hyperbolic => {
            let k = k.or(s.k_cap).ok_or_else(|| GeomError::InvalidInput("hyperbolic bound needs k".into()))?;
            if !(k > 0.0) || lambda >= 2.0 * k {
                return Err(GeomError::Hypothesis(format!("need k > 0 and lambda < 2k, got k={k}, lambda={lambda}")));
            }
            Ok(k.sinh() / (SQRT_2 * k) * lambda)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e2(x: f64, y: f64) -> Point {
        Point::from_raw(vec![x, y])
    }

    #[test]
    fn euclidean_examples() {
        let one = meb_euclidean(&[e2(1.0, 2.0)]).unwrap();
        assert_eq!(one.ball.radius, 0.0);
        let two = meb_euclidean(&[e2(0.0, 0.0), e2(2.0, 0.0)]).unwrap();
        assert!((two.ball.radius - 1.0).abs() < 1e-15);
        assert!((two.ball.center.coords()[0] - 1.0).abs() < 1e-15);
        let h = 3f64.sqrt() / 2.0;
        let tri = meb_euclidean(&[e2(0.0, 0.0), e2(1.0, 0.0), e2(0.5, h)]).unwrap();
        assert!((tri.ball.radius - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        // obtuse triangle: the longest side is a diameter
        let obtuse = meb_euclidean(&[e2(0.0, 0.0), e2(4.0, 0.0), e2(2.0, 0.5)]).unwrap();
        assert!((obtuse.ball.radius - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cocircular_and_duplicate_points() {
        let mut pts: Vec<Point> = (0..12).map(|i| {
            let a = i as f64 * PI / 6.0;
            e2(a.cos(), a.sin())
        }).collect();
        pts.push(e2(1.0, 0.0));
        pts.push(e2(0.0, 0.0));
        let b = meb_euclidean(&pts).unwrap();
        assert!((b.ball.radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn geodesic_examples() {
        let s = Space::spherical(2);
        let p = s.origin();
        assert_eq!(meb_geodesic(&s, std::slice::from_ref(&p), 10).unwrap().ball.radius, 0.0);
        let lambda = 0.8;
        let q = s.exp_origin(&[lambda, 0.0]);
        let b = meb_geodesic(&s, &[p.clone(), q], 10_000).unwrap();
        assert!((b.ball.radius - lambda / 2.0).abs() < 1e-4);

        let h = Space::hyperbolic(2);
        // equilateral triangle of side 1 around the origin: circumradius R with
        // sinh R = (2/sqrt 3) sinh(1/2)
        let r = 0.570_289_827_114_129_4;
        let tri: Vec<Point> = (0..3).map(|i| {
            let a = i as f64 * 2.0 * PI / 3.0;
            h.exp_origin(&[r * a.cos(), r * a.sin()])
        }).collect();
        assert!((h.distance(&tri[0], &tri[1]) - 1.0).abs() < 1e-12);
        let b = meb_geodesic(&h, &tri, 10_000).unwrap();
        assert!((b.ball.radius - r).abs() < 1e-3, "{}", b.ball.radius);
    }

    #[test]
    fn hemisphere_violation() {
        let s = Space::spherical(2);
        let a = s.point(vec![1.0, 0.0, 0.0]).unwrap();
        let b = s.point(vec![-1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(meb_geodesic(&s, &[a, b], 10), Err(GeomError::HemisphereViolation { .. })));
    }

    #[test]
    fn jung_examples() {
        let e = Space::euclidean(2);
        assert!((jung_bound(&e, 1.0).unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        for d in 2..10 {
            assert!(jung_bound(&Space::euclidean(d), 1.0).unwrap() < 1.0 / SQRT_2);
        }
        let h = Space::hyperbolic(2);
        assert!((jung_bound(&h, 1.0).unwrap() - 0.570_289_827_114_129_4).abs() < 1e-12);
        assert!(jung_bound(&Space::spherical(2), 3.0).is_err());
    }

    #[test]
    fn relaxed_examples() {
        assert!((relaxed_jung_bound(&Space::euclidean(2), 1.0, None).unwrap() - 0.707_106_781_186_547_5).abs() < 1e-15);
        assert!((relaxed_jung_bound(&Space::spherical(2), 0.1, None).unwrap() - 0.111_072_073_453_959_16).abs() < 1e-15);
        let h = Space::hyperbolic(2);
        assert!((relaxed_jung_bound(&h, 1.0, Some(1.0)).unwrap() - 0.830_992_733_284_057).abs() < 1e-14);
        assert!(relaxed_jung_bound(&h, 1.0, None).is_err());
        assert!(relaxed_jung_bound(&h, 3.0, Some(1.0)).is_err());
        assert!(relaxed_jung_bound(&Space::spherical(2), 2.0, None).is_err());
    }
}
