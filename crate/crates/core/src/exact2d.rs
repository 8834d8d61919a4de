//! Exact intersections of disks in the Euclidean plane (arc polygons).

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geom::Curvature;
use crate::oracle::BallIntersection;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: [f64; 2],
    pub radius: f64,
}

impl Disk {
    pub fn new(center: [f64; 2], radius: f64) -> Self {
        Disk { center, radius }
    }

    pub fn contains(&self, p: [f64; 2], tol: f64) -> bool {
        let (dx, dy) = (p[0] - self.center[0], p[1] - self.center[1]);
        (dx * dx + dy * dy).sqrt() <= self.radius + tol
    }

    fn at(&self, theta: f64) -> [f64; 2] {
        [self.center[0] + self.radius * theta.cos(), self.center[1] + self.radius * theta.sin()]
    }
}

/// A boundary arc of disk `disk`, counterclockwise from angle `start`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub disk: usize,
    pub start: f64,
    pub sweep: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "at")]
pub enum Shape {
    Empty,
    SinglePoint([f64; 2]),
    Region,
}

/// Intersection of finitely many closed disks, as a cyclic list of arcs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcPolygon {
    pub disks: Vec<Disk>,
    pub arcs: Vec<Arc>,
    /// Arc start points, in the order of `arcs`.
    pub vertices: Vec<[f64; 2]>,
    pub shape: Shape,
}

type Intervals = Vec<(f64, f64)>;

fn arc_intervals(lo: f64, hi: f64) -> Intervals {
    if hi - lo >= TAU {
        return vec![(0.0, TAU)];
    }
    let a = lo.rem_euclid(TAU);
    let b = a + (hi - lo);
    if b <= TAU {
        vec![(a, b)]
    } else {
        vec![(0.0, b - TAU), (a, TAU)]
    }
}

fn intersect(a: &Intervals, b: &Intervals) -> Intervals {
    let mut out = Vec::new();
    for &(a0, a1) in a {
        for &(b0, b1) in b {
            let (lo, hi) = (a0.max(b0), a1.min(b1));
            if hi > lo {
                out.push((lo, hi));
            }
        }
    }
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    out
}

impl ArcPolygon {
    pub fn intersection_of_disks(disks: &[Disk]) -> Result<ArcPolygon> {
        if disks.is_empty() {
            return Err(GeomError::InvalidInput("intersection of no disks".into()));
        }
        let mut uniq: Vec<Disk> = Vec::new();
        for d in disks {
            if !(d.radius >= 0.0) || !d.center.iter().all(|v| v.is_finite()) {
                return Err(GeomError::InvalidInput(format!("invalid disk {d:?}")));
            }
            let dup = uniq.iter().any(|u| {
                (u.center[0] - d.center[0]).abs() <= 1e-15
                    && (u.center[1] - d.center[1]).abs() <= 1e-15
                    && (u.radius - d.radius).abs() <= 1e-15
            });
            if !dup {
                uniq.push(*d);
            }
        }
        let empty = |disks: Vec<Disk>| ArcPolygon { disks, arcs: vec![], vertices: vec![], shape: Shape::Empty };
        for (i, a) in uniq.iter().enumerate() {
            for b in &uniq[i + 1..] {
                let dd = ((a.center[0] - b.center[0]).powi(2) + (a.center[1] - b.center[1]).powi(2)).sqrt();
                if dd > a.radius + b.radius + 1e-12 {
                    return Ok(empty(uniq));
                }
            }
        }

        let mut arcs = Vec::new();
        for (i, ci) in uniq.iter().enumerate() {
            if ci.radius == 0.0 {
                continue;
            }
            let mut allowed: Intervals = vec![(0.0, TAU)];
            for (j, cj) in uniq.iter().enumerate() {
                if i == j {
                    continue;
                }
                let (dx, dy) = (cj.center[0] - ci.center[0], cj.center[1] - ci.center[1]);
                let dd = (dx * dx + dy * dy).sqrt();
                if dd <= 1e-15 {
                    if ci.radius > cj.radius {
                        allowed.clear();
                    }
                    continue;
                }
                let q = (ci.radius * ci.radius + dd * dd - cj.radius * cj.radius) / (2.0 * ci.radius * dd);
                if q <= -1.0 {
                    continue;
                }
                if q >= 1.0 {
                    allowed.clear();
                    break;
                }
                let phi = dy.atan2(dx);
                let alpha = q.acos();
                allowed = intersect(&allowed, &arc_intervals(phi - alpha, phi + alpha));
                if allowed.is_empty() {
                    break;
                }
            }
            // Join the piece ending at 2 pi with the one starting at 0.
            if allowed.len() >= 2 && allowed[0].0 == 0.0 && allowed[allowed.len() - 1].1 == TAU {
                let first = allowed.remove(0);
                let last = allowed.last_mut().expect("nonempty");
                last.1 = TAU + first.1;
            }
            for (lo, hi) in allowed {
                if hi - lo > 1e-14 {
                    arcs.push(Arc { disk: i, start: lo, sweep: hi - lo });
                }
            }
        }

        if arcs.is_empty() {
            // Either a tangency point or no common point at all.
            let single = uniq.len() == 1 && uniq[0].radius == 0.0;
            let mut candidates = Vec::new();
            if single {
                candidates.push(uniq[0].center);
            }
            for (i, a) in uniq.iter().enumerate() {
                for b in &uniq[i + 1..] {
                    let (dx, dy) = (b.center[0] - a.center[0], b.center[1] - a.center[1]);
                    let dd = (dx * dx + dy * dy).sqrt();
                    if dd > 0.0 {
                        let t = a.radius / dd;
                        candidates.push([a.center[0] + t * dx, a.center[1] + t * dy]);
                    } else {
                        candidates.push(a.center);
                    }
                }
            }
            let hit = candidates.into_iter().find(|p| uniq.iter().all(|d| d.contains(*p, 1e-9)));
            return Ok(match hit {
                Some(p) => ArcPolygon { disks: uniq, arcs: vec![], vertices: vec![p], shape: Shape::SinglePoint(p) },
                None => empty(uniq),
            });
        }

        // Cyclic order around an interior point.
        let mids: Vec<[f64; 2]> = arcs.iter().map(|a| uniq[a.disk].at(a.start + 0.5 * a.sweep)).collect();
        let cx = mids.iter().map(|p| p[0]).sum::<f64>() / mids.len() as f64;
        let cy = mids.iter().map(|p| p[1]).sum::<f64>() / mids.len() as f64;
        let mut order: Vec<usize> = (0..arcs.len()).collect();
        order.sort_by(|&a, &b| {
            let ta = (mids[a][1] - cy).atan2(mids[a][0] - cx);
            let tb = (mids[b][1] - cy).atan2(mids[b][0] - cx);
            ta.total_cmp(&tb)
        });
        let arcs: Vec<Arc> = order
            .into_iter()
            .map(|k| Arc { start: arcs[k].start.rem_euclid(TAU), ..arcs[k] })
            .collect();
        let vertices = arcs.iter().map(|a| uniq[a.disk].at(a.start)).collect();
        Ok(ArcPolygon { disks: uniq, arcs, vertices, shape: Shape::Region })
    }

    pub fn congruent(centers: &[[f64; 2]], radius: f64) -> Result<ArcPolygon> {
        let disks: Vec<Disk> = centers.iter().map(|&c| Disk::new(c, radius)).collect();
        ArcPolygon::intersection_of_disks(&disks)
    }

    /// The arc polygon of a ball intersection in `E^2`.
    pub fn from_intersection(b: &BallIntersection) -> Result<ArcPolygon> {
        if b.space.curvature != Curvature::Euclidean || b.space.dim != 2 {
            return Err(GeomError::NotRepresentable(format!("arc polygons live in E^2, not {}", b.space)));
        }
        if b.has_empty_ball() {
            return Ok(ArcPolygon { disks: vec![], arcs: vec![], vertices: vec![], shape: Shape::Empty });
        }
        let disks: Vec<Disk> = b
            .balls
            .iter()
            .map(|ball| Disk::new([ball.center.coords()[0], ball.center.coords()[1]], ball.radius))
            .collect();
        ArcPolygon::intersection_of_disks(&disks)
    }

    /// Area by Green's theorem over the boundary arcs.
    pub fn area(&self) -> f64 {
        self.arcs
            .iter()
            .map(|a| {
                let d = &self.disks[a.disk];
                let (r, [cx, cy]) = (d.radius, d.center);
                let (s, e) = (a.start, a.start + a.sweep);
                0.5 * (r * (cx * (e.sin() - s.sin()) - cy * (e.cos() - s.cos())) + r * r * a.sweep)
            })
            .sum()
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        !matches!(self.shape, Shape::Empty) && self.disks.iter().all(|d| d.contains(p, 0.0))
    }

    /// Boundary polyline with `per_arc` segments per arc.
    pub fn boundary(&self, per_arc: usize) -> Vec<[f64; 2]> {
        let n = per_arc.max(1);
        let mut out = Vec::new();
        for a in &self.arcs {
            let d = &self.disks[a.disk];
            for k in 0..n {
                out.push(d.at(a.start + a.sweep * k as f64 / n as f64));
            }
        }
        out
    }
}

/// Area of the intersection of two radius-`r` disks with centers `delta` apart.
pub fn lens_area(delta: f64, r: f64) -> Result<f64> {
    if !(delta >= 0.0) || !(r > 0.0) {
        return Err(GeomError::InvalidInput(format!("lens needs delta >= 0 and r > 0, got {delta}, {r}")));
    }
    if delta >= 2.0 * r {
        return Ok(0.0);
    }
    Ok(2.0 * r * r * (delta / (2.0 * r)).acos() - 0.5 * delta * (4.0 * r * r - delta * delta).sqrt())
}

/// Area of the intersection of three unit disks centred at the vertices of an
/// equilateral triangle of side 1 (the Reuleaux triangle).
pub fn reuleaux_area(side: f64) -> f64 {
    0.5 * (PI - 3f64.sqrt()) * side * side
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lens_examples() {
        assert!((lens_area(1.0, 1.0).unwrap() - 1.228_369_698_608_756_9).abs() < 1e-12);
        assert_eq!(lens_area(2.0, 1.0).unwrap(), 0.0);
        assert!((lens_area(0.0, 1.0).unwrap() - PI).abs() < 1e-15);
        assert!(lens_area(-1.0, 1.0).is_err());
    }

    #[test]
    fn two_disks_match_lens() {
        for k in 1..20 {
            let delta = k as f64 * 0.1;
            let p = ArcPolygon::congruent(&[[0.3, -0.2], [0.3 + delta, -0.2]], 1.0).unwrap();
            assert!((p.area() - lens_area(delta, 1.0).unwrap()).abs() < 1e-12, "{delta}");
        }
    }

    #[test]
    fn reuleaux_triangle() {
        let h = 3f64.sqrt() / 2.0;
        let p = ArcPolygon::congruent(&[[0.0, 0.0], [1.0, 0.0], [0.5, h]], 1.0).unwrap();
        assert_eq!(p.arcs.len(), 3);
        assert!((p.area() - 0.704_770_923_010_458).abs() < 1e-12);
        assert!((reuleaux_area(1.0) - 0.704_770_923_010_458).abs() < 1e-15);
    }

    #[test]
    fn degenerate_cases() {
        let full = ArcPolygon::congruent(&[[1.0, 1.0]], 2.0).unwrap();
        assert!((full.area() - 4.0 * PI).abs() < 1e-12);
        let tangent = ArcPolygon::congruent(&[[0.0, 0.0], [2.0, 0.0]], 1.0).unwrap();
        assert!(matches!(tangent.shape, Shape::SinglePoint(p) if (p[0] - 1.0).abs() < 1e-12));
        assert_eq!(tangent.area(), 0.0);
        let apart = ArcPolygon::congruent(&[[0.0, 0.0], [2.5, 0.0]], 1.0).unwrap();
        assert_eq!(apart.shape, Shape::Empty);
        let h = 3f64.sqrt() / 2.0;
        let s = 1.9;
        let tri = ArcPolygon::congruent(&[[0.0, 0.0], [s, 0.0], [s / 2.0, s * h]], 1.0).unwrap();
        assert_eq!(tri.shape, Shape::Empty);
        let nested = ArcPolygon::intersection_of_disks(&[Disk::new([0.0, 0.0], 2.0), Disk::new([0.5, 0.0], 0.5)]).unwrap();
        assert!((nested.area() - PI * 0.25).abs() < 1e-12);
    }

    #[test]
    fn area_shrinks_as_disks_are_added() {
        let mut centers = vec![[0.0, 0.0]];
        let mut last = PI;
        for k in 1..8 {
            let a = k as f64 * 0.9;
            centers.push([0.6 * a.cos(), 0.6 * a.sin()]);
            let area = ArcPolygon::congruent(&centers, 1.0).unwrap().area();
            assert!(area <= last + 1e-12);
            last = area;
        }
    }
}
