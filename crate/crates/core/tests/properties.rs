use approx::assert_abs_diff_eq;
use curvball::exact2d::{ArcPolygon, Disk};
use curvball::measure::{ball_volume, ball_volume_inverse};
use curvball::minimax::{circumradius, jung_bound};
use curvball::oracle::{dual_of_points, dual_of_union, symmetrize, UnionOfBalls};
use curvball::{Curvature, Point, Space};
use proptest::prelude::*;

const CURVATURES: [Curvature; 3] = [Curvature::Euclidean, Curvature::Spherical, Curvature::Hyperbolic];

fn space() -> impl Strategy<Value = Space> {
    (0usize..3, 2usize..=3).prop_map(|(c, d)| Space::new(CURVATURES[c], d).unwrap())
}

/// Points within geodesic distance `reach` of the origin.
fn points(s: Space, n: std::ops::RangeInclusive<usize>, reach: f64) -> impl Strategy<Value = Vec<Point>> {
    let side = reach / (s.dim as f64).sqrt();
    prop::collection::vec(prop::collection::vec(-side..side, s.dim), n).prop_map(move |vs| vs.iter().map(|v| s.exp_origin(v)).collect())
}

fn space_and_points(n: std::ops::RangeInclusive<usize>, reach: f64) -> impl Strategy<Value = (Space, Vec<Point>)> {
    space().prop_flat_map(move |s| (Just(s), points(s, n.clone(), reach)))
}

fn dist(a: &Point, b: &Point) -> f64 {
    a.coords().iter().zip(b.coords()).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reflections_are_isometric_involutions((s, p) in space_and_points(4..=4, 1.2)) {
        prop_assume!(s.distance(&p[0], &p[1]) > 1e-3);
        let h = s.bisector(&p[0], &p[1]).unwrap();
        let (x, y) = (&p[2], &p[3]);
        let (rx, ry) = (s.reflect(&h, x), s.reflect(&h, y));
        prop_assert!((s.distance(&rx, &ry) - s.distance(x, y)).abs() < 1e-9);
        prop_assert!(dist(&s.reflect(&h, &rx), x) < 1e-9);
        prop_assert!(s.distance(&s.reflect(&h, &p[0]), &p[1]) < 1e-9);
        prop_assert_eq!(s.side(&h, x), -s.side(&h, &rx));
    }

    #[test]
    fn distance_is_a_metric((s, p) in space_and_points(3..=3, 1.5)) {
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        prop_assert!(s.distance(a, a) < 1e-7);
        prop_assert!((s.distance(a, b) - s.distance(b, a)).abs() < 1e-12);
        prop_assert!(s.distance(a, c) <= s.distance(a, b) + s.distance(b, c) + 1e-9);
    }

    #[test]
    fn geodesic_points_split_distance((s, p) in space_and_points(2..=2, 1.4), t in 0.0..1.0f64) {
        let m = s.geodesic_point(&p[0], &p[1], t).unwrap();
        let d = s.distance(&p[0], &p[1]);
        prop_assert!((s.distance(&p[0], &m) - t * d).abs() < 1e-8);
        prop_assert!((s.distance(&m, &p[1]) - (1.0 - t) * d).abs() < 1e-8);
    }

    #[test]
    fn volume_is_increasing_and_invertible(s in space(), a in 0.01..3.0f64, b in 0.01..3.0f64) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(hi - lo > 1e-9);
        let (vl, vh) = (ball_volume(&s, lo).unwrap(), ball_volume(&s, hi).unwrap());
        prop_assert!(vl < vh);
        let back = ball_volume_inverse(&s, vh).unwrap();
        prop_assert!((back - hi).abs() < 1e-9 * hi.max(1.0));
    }

    #[test]
    fn enclosing_ball_covers_and_respects_jung((s, p) in space_and_points(2..=8, 0.7)) {
        let meb = circumradius(&s, &p, 20_000).unwrap();
        for x in &p {
            prop_assert!(s.distance(&meb.ball.center, x) <= meb.ball.radius + 1e-9);
        }
        let mut diam = 0.0f64;
        for (i, a) in p.iter().enumerate() {
            for b in &p[i + 1..] {
                diam = diam.max(s.distance(a, b));
            }
        }
        prop_assert!(meb.ball.radius >= diam / 2.0 - 1e-9);
        prop_assert!(meb.ball.radius <= jung_bound(&s, diam).unwrap() + 1e-6);
    }

    #[test]
    fn duals_shrink_as_sets_grow((s, p) in space_and_points(2..=6, 0.5), probes in points(Space::euclidean(2), 16..=16, 1.0), r in 0.6..1.2f64) {
        let small = dual_of_points(&s, &p[..1], r).unwrap();
        let big = dual_of_points(&s, &p, r).unwrap();
        let wider = dual_of_points(&s, &p, r + 0.1).unwrap();
        for v in &probes {
            let mut t = v.coords().to_vec();
            t.resize(s.dim, 0.0);
            let y = s.exp_origin(&t);
            if big.contains(&y) {
                prop_assert!(small.contains(&y));
                prop_assert!(wider.contains(&y));
            }
        }
    }

    #[test]
    fn dual_of_thickened_points((s, p) in space_and_points(1..=6, 0.5), probes in points(Space::euclidean(3), 32..=32, 1.5), lambda in 0.05..0.5f64, delta in 0.3..1.0f64) {
        let direct = dual_of_points(&s, &p, delta).unwrap();
        let union = UnionOfBalls::congruent(s, &p, lambda / 2.0).unwrap();
        let via = dual_of_union(&union, delta + lambda / 2.0).unwrap();
        for v in &probes {
            let y = s.exp_origin(&v.coords()[..s.dim]);
            let margin = p.iter().map(|c| (s.distance(c, &y) - delta).abs()).fold(f64::INFINITY, f64::min);
            if margin > 1e-9 {
                prop_assert_eq!(direct.contains(&y), via.contains(&y));
            }
        }
    }

    #[test]
    fn symmetrization_keeps_pair_counts((s, c) in space_and_points(1..=4, 0.6), h in points(Space::euclidean(3), 2..=2, 0.8), probes in points(Space::euclidean(3), 24..=24, 1.2), r in 0.1..0.5f64) {
        let a = s.exp_origin(&h[0].coords()[..s.dim]);
        let b = s.exp_origin(&h[1].coords()[..s.dim]);
        prop_assume!(s.distance(&a, &b) > 1e-3);
        let plane = s.bisector(&a, &b).unwrap();
        let k = UnionOfBalls::congruent(s, &c, r).unwrap().to_oracle();
        let t = symmetrize(&k, &plane);
        for v in &probes {
            let x = s.exp_origin(&v.coords()[..s.dim]);
            let rx = s.reflect(&plane, &x);
            if s.distance(&x, &rx) < 1e-9 {
                continue;
            }
            let count = |set: &curvball::SetOracle| set.contains(&x) as u8 + set.contains(&rx) as u8;
            prop_assert_eq!(count(&k), count(&t));
            if count(&t) == 1 {
                let inside = if t.contains(&x) { &x } else { &rx };
                prop_assert!(s.side(&plane, inside) >= 0);
            }
        }
    }

    #[test]
    fn disk_polygons_are_monotone(c in prop::collection::vec((-0.8..0.8f64, -0.8..0.8f64, 0.5..1.5f64), 1..=6), probe in prop::collection::vec((-1.5..1.5f64, -1.5..1.5f64), 16)) {
        let disks: Vec<Disk> = c.iter().map(|&(x, y, r)| Disk::new([x, y], r)).collect();
        let all = ArcPolygon::intersection_of_disks(&disks).unwrap();
        let fewer = ArcPolygon::intersection_of_disks(&disks[..disks.len().div_ceil(2)]).unwrap();
        prop_assert!(all.area() <= fewer.area() + 1e-12);
        let smallest = disks.iter().map(|d| d.radius).fold(f64::INFINITY, f64::min);
        prop_assert!(all.area() <= std::f64::consts::PI * smallest * smallest + 1e-12);
        for &(x, y) in &probe {
            let strict = disks.iter().all(|d| d.contains([x, y], -1e-9));
            let loose = disks.iter().all(|d| d.contains([x, y], 1e-9));
            let got = all.contains([x, y]);
            prop_assert!(!strict || got);
            prop_assert!(loose || !got);
        }
    }
}

#[test]
fn lens_limits() {
    let touching = ArcPolygon::congruent(&[[0.0, 0.0], [2.0, 0.0]], 1.0).unwrap();
    assert_abs_diff_eq!(touching.area(), 0.0, epsilon = 1e-12);
    let same = ArcPolygon::congruent(&[[0.3, 0.1], [0.3, 0.1]], 1.0).unwrap();
    assert_abs_diff_eq!(same.area(), std::f64::consts::PI, epsilon = 1e-12);
}
