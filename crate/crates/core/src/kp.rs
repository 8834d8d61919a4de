//! Kneser-Poulsen thresholds and bounds for uniform contractions, the
//! supporting propositions, configuration generators and the statistical
//! verification pipelines for the dual-volume inequalities.

use std::f64::consts::{E, PI, SQRT_2};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geom::{Curvature, OrientedHyperplane, Point, Space};
use crate::measure::{ball_volume, ball_volume_derivative, ball_volume_inverse, estimate_volume, mu_solve, BallSampler, VolumeEstimate};
use crate::minimax::relaxed_jung_bound;
use crate::oracle::{dual_of_points, dual_of_union_general, subset_of_ball, symmetrize, Emptiness, SetOracle, SubsetProbe, UnionOfBalls};
use crate::rng::RngSpec;

/// Standard errors required to separate two Monte Carlo estimates.
pub const SIGMAS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KPParams {
    pub space: Space,
    pub n: u64,
    pub lambda: f64,
    pub delta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
}

impl KPParams {
    /// Checks the hypotheses for the space. For `H^d` a missing `k` defaults
    /// to `max(1.0001 delta, 1)`.
    pub fn new(space: Space, n: u64, lambda: f64, delta: f64, k: Option<f64>) -> Result<KPParams> {
        if n == 0 {
            return Err(GeomError::Hypothesis("N must be at least 1".into()));
        }
        if !(lambda > 0.0 && delta > 0.0 && lambda.is_finite() && delta.is_finite()) {
            return Err(GeomError::Hypothesis(format!("need lambda, delta > 0, got {lambda}, {delta}")));
        }
        let k = match space.curvature {
            Curvature::Hyperbolic => Some(k.or(space.k_cap).unwrap_or_else(|| (delta * 1.0001).max(1.0))),
            _ if k.is_some() => return Err(GeomError::Hypothesis("k is only used in hyperbolic space".into())),
            _ => None,
        };
        match space.curvature {
            Curvature::Euclidean => {
                if lambda > SQRT_2 * delta {
                    return Err(GeomError::Hypothesis(format!("need lambda <= sqrt(2) delta, got {lambda} > {}", SQRT_2 * delta)));
                }
            }
            Curvature::Spherical => {
                if delta >= PI / 2.0 {
                    return Err(GeomError::Hypothesis(format!("need delta < pi/2, got {delta}")));
                }
                let cap = (2.0 * SQRT_2 / PI * delta).min(PI - 2.0 * delta);
                if lambda >= cap {
                    return Err(GeomError::Hypothesis(format!("need lambda < {cap}, got {lambda}")));
                }
            }
            Curvature::Hyperbolic => {
                let k = k.expect("set above");
                if !(k > 0.0) || delta >= k {
                    return Err(GeomError::Hypothesis(format!("need delta < k, got delta={delta}, k={k}")));
                }
                let lhs = k.sinh() / (SQRT_2 * k) * lambda;
                if lhs > delta {
                    return Err(GeomError::Hypothesis(format!("need sinh(k)/(sqrt(2) k) lambda <= delta, got {lhs} > {delta}")));
                }
            }
        }
        Ok(KPParams { space, n, lambda, delta, k })
    }

    fn d(&self) -> f64 {
        self.space.dim as f64
    }
}

/// Smallest `N` covered by the uniform-contraction theorem.
pub fn threshold_n(p: &KPParams) -> u64 {
    let d = p.d();
    let x = match p.space.curvature {
        Curvature::Euclidean => (1.0 + SQRT_2).powf(d),
        Curvature::Spherical => 2.0 * E * d * PI.powf(d - 1.0) * (0.5 + PI / (2.0 * SQRT_2)).powf(d),
        Curvature::Hyperbolic => {
            let k = p.k.expect("validated");
            ((2.0 * k).sinh() / (2.0 * k)).powf(d - 1.0) * (SQRT_2 * k.sinh() / k + 1.0).powf(d)
        }
    };
    x.ceil() as u64
}

/// Radius of the ball whose volume bounds `V(Q^delta)` from below.
pub fn f_lower_radius(p: &KPParams) -> Result<f64> {
    Ok(p.delta - relaxed_jung_bound(&p.space, p.lambda, p.k)?)
}

pub fn f_lower_bound(p: &KPParams) -> Result<f64> {
    let r = f_lower_radius(p)?;
    if r < 0.0 {
        return Err(GeomError::Hypothesis(format!("lower-bound radius {r} is negative")));
    }
    ball_volume(&p.space, r)
}

/// Radius of the ball whose volume bounds `V(P^delta)` from above.
pub fn g_upper_radius(p: &KPParams) -> f64 {
    let (d, n, lambda) = (p.d(), p.n as f64, p.lambda);
    let nd = n.powf(1.0 / d);
    match p.space.curvature {
        Curvature::Euclidean => p.delta - (nd - 1.0) / 2.0 * lambda,
        Curvature::Spherical => {
            let c = (1.0 / (2.0 * E * d * PI.powf(d - 1.0))).powf(1.0 / d);
            p.delta - (c * nd - 0.5) * lambda
        }
        Curvature::Hyperbolic => {
            let k = p.k.expect("validated");
            let c = (2.0 * k / (2.0 * k).sinh()).powf((d - 1.0) / d);
            p.delta - (c * nd - 1.0) * (lambda / 2.0)
        }
    }
}

/// Upper bound for `V(P^delta)`; zero once the radius is negative.
pub fn g_upper_bound(p: &KPParams) -> Result<f64> {
    let r = g_upper_radius(p);
    if r < 0.0 {
        return Ok(0.0);
    }
    ball_volume(&p.space, r)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropCheck {
    pub lhs: f64,
    pub mu: f64,
    pub holds: bool,
}

/// Spherical packing estimate: `(1/(2 e d pi^(d-1)))^(1/d) N^(1/d) lambda < mu`.
pub fn check_prop_spherical(d: usize, n: u64, lambda: f64) -> Result<PropCheck> {
    let s = Space::new(Curvature::Spherical, d)?;
    let mu = match mu_solve(&s, n, lambda) {
        Ok(mu) => mu,
        Err(GeomError::Saturated { requested, total }) => {
            return Err(GeomError::PreconditionUnmet(format!("N V(lambda/2) = {requested} exceeds the sphere volume {total}")))
        }
        Err(e) => return Err(e),
    };
    if mu >= PI / 2.0 {
        return Err(GeomError::PreconditionUnmet(format!("mu = {mu} is not below pi/2")));
    }
    let df = d as f64;
    let lhs = (1.0 / (2.0 * E * df * PI.powf(df - 1.0))).powf(1.0 / df) * (n as f64).powf(1.0 / df) * lambda;
    Ok(PropCheck { lhs, mu, holds: lhs < mu })
}

/// Hyperbolic packing estimate: `(2k/sinh 2k)^((d-1)/d) N^(1/d) lambda/2 < mu`.
pub fn check_prop_hyperbolic(d: usize, k: f64, n: u64, lambda: f64, delta: f64) -> Result<PropCheck> {
    let s = Space::new(Curvature::Hyperbolic, d)?;
    KPParams::new(s, n, lambda, delta, Some(k)).map_err(|e| GeomError::PreconditionUnmet(e.to_string()))?;
    let mu = mu_solve(&s, n, lambda)?;
    if mu > delta + lambda / 2.0 {
        return Err(GeomError::PreconditionUnmet(format!("mu = {mu} exceeds delta + lambda/2 = {}", delta + lambda / 2.0)));
    }
    let df = d as f64;
    let lhs = (2.0 * k / (2.0 * k).sinh()).powf((df - 1.0) / df) * (n as f64).powf(1.0 / df) * lambda / 2.0;
    Ok(PropCheck { lhs, mu, holds: lhs < mu })
}

fn pairwise_extremes(s: &Space, pts: &[Point]) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let d = s.distance(a, b);
            lo = lo.min(d);
            hi = hi.max(d);
        }
    }
    (lo, hi)
}

/// `N` points uniform in `B[o, lambda/2]`, so all pairwise distances are at most `lambda`.
pub fn gen_contracted(p: &KPParams, rng: &RngSpec) -> Result<Vec<Point>> {
    let s = &p.space;
    let ball = s.ball(s.origin(), 0.5 * p.lambda * (1.0 - 1e-9));
    let sampler = BallSampler::new(s, &ball);
    let mut g = rng.rng();
    let pts: Vec<Point> = (0..p.n).map(|_| sampler.sample(&mut g)).collect();
    let (_, hi) = pairwise_extremes(s, &pts);
    if hi > p.lambda {
        return Err(GeomError::InvalidContraction(format!("generated diameter {hi} exceeds lambda")));
    }
    Ok(pts)
}

fn lattice_patch(d: usize, n: usize, spacing: f64) -> Vec<Vec<f64>> {
    let reach = (n as f64).powf(1.0 / d as f64).ceil() as i64 + 2;
    let mut pts: Vec<Vec<f64>> = Vec::new();
    if d == 2 {
        let h = 3f64.sqrt() / 2.0;
        for a in -reach..=reach {
            for b in -reach..=reach {
                pts.push(vec![spacing * (a as f64 + 0.5 * b as f64), spacing * h * b as f64]);
            }
        }
    } else {
        let side = (2 * reach + 1) as usize;
        for idx in 0..side.pow(d as u32) {
            let mut rem = idx;
            let mut v = Vec::with_capacity(d);
            for _ in 0..d {
                v.push(spacing * ((rem % side) as i64 - reach) as f64);
                rem /= side;
            }
            pts.push(v);
        }
    }
    let norm2 = |v: &Vec<f64>| v.iter().map(|x| x * x).sum::<f64>();
    pts.sort_by(|a, b| norm2(a).total_cmp(&norm2(b)).then_with(|| a.partial_cmp(b).expect("finite")));
    pts.truncate(n);
    pts
}

/// `N` points with all pairwise distances at least `lambda`: a lattice patch
/// in `E^d`, greedy rejection packing in an expanding ball otherwise.
pub fn gen_separated(p: &KPParams, rng: &RngSpec) -> Result<Vec<Point>> {
    let s = &p.space;
    let n = p.n as usize;
    let min_sep = p.lambda * (1.0 + 1e-12);
    let pts = if s.curvature == Curvature::Euclidean {
        lattice_patch(s.dim, n, min_sep).into_iter().map(Point::from_raw).collect()
    } else {
        let mut g = rng.rng();
        let mut radius = 0.5 * p.lambda * (n as f64).powf(1.0 / s.dim as f64);
        let mut pts: Vec<Point> = vec![s.origin()];
        let mut failures = 0u64;
        let mut tries = 0u64;
        while pts.len() < n {
            tries += 1;
            if tries > 5_000_000 {
                return Err(GeomError::Infeasible(format!("placed {} of {n} points", pts.len())));
            }
            let sampler_ball = s.ball(s.origin(), radius);
            let x = BallSampler::new(s, &sampler_ball).sample(&mut g);
            if pts.iter().all(|q| s.distance(q, &x) >= min_sep) {
                pts.push(x);
                failures = 0;
            } else {
                failures += 1;
                if failures > 200 {
                    radius *= 1.1;
                    failures = 0;
                    if s.curvature == Curvature::Spherical && radius >= PI {
                        return Err(GeomError::Infeasible(format!("cap packing saturated after {} of {n} points", pts.len())));
                    }
                }
            }
        }
        pts
    };
    let (lo, _) = pairwise_extremes(s, &pts);
    if lo < p.lambda {
        return Err(GeomError::Infeasible(format!("minimum separation {lo} below lambda")));
    }
    Ok(pts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Inconclusive,
    Violated,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Verified => 0,
            Verdict::Inconclusive => 2,
            Verdict::Violated => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KPReport {
    pub params: KPParams,
    pub threshold_n: u64,
    pub above_threshold: bool,
    pub f_lower: f64,
    pub g_upper: f64,
    pub vol_p_dual: VolumeEstimate,
    pub vol_q_dual: VolumeEstimate,
    pub p_dual_certified_empty: bool,
    /// `V(P^delta) <= g_upper` within the Monte Carlo error.
    pub p_below_g: bool,
    /// `V(Q^delta) >= f_lower` within the Monte Carlo error.
    pub q_above_f: bool,
    /// `P` is itself a contraction (all distances equal `lambda`).
    pub equality_config: bool,
    pub verdict: Verdict,
    pub n_mc: u64,
    pub rng: RngSpec,
}

fn dual_volume(s: &Space, pts: &[Point], r: f64, n_mc: u64, rng: &RngSpec) -> Result<(VolumeEstimate, bool)> {
    let dual = dual_of_points(s, pts, r)?;
    if dual.is_empty(0, rng) == Emptiness::EmptyCertified {
        return Ok((VolumeEstimate::from_counts(0, n_mc, 0.0), true));
    }
    let oracle = dual.to_oracle();
    let sampling = oracle.bound().expect("nonempty bound").clone();
    Ok((estimate_volume(&oracle, &sampling, n_mc, rng)?, false))
}

/// Compares `V(P^delta)` and `V(Q^delta)` for `lambda`-separated `P` and
/// `lambda`-contracted `Q`.
pub fn verify_kp_instance(p: &KPParams, pp: &[Point], qq: &[Point], n_mc: u64, rng: &RngSpec) -> Result<KPReport> {
    let s = &p.space;
    if pp.len() as u64 != p.n || qq.len() as u64 != p.n {
        return Err(GeomError::InvalidContraction(format!("need N = {} points in P and Q, got {} and {}", p.n, pp.len(), qq.len())));
    }
    for x in pp.iter().chain(qq) {
        s.check_point(x)?;
    }
    let (p_lo, p_hi) = pairwise_extremes(s, pp);
    let (_, q_hi) = pairwise_extremes(s, qq);
    if p_lo < p.lambda {
        return Err(GeomError::InvalidContraction(format!("P has a pair at distance {p_lo} < lambda")));
    }
    if q_hi > p.lambda {
        return Err(GeomError::InvalidContraction(format!("Q has a pair at distance {q_hi} > lambda")));
    }
    let threshold = threshold_n(p);
    let f_lower = f_lower_bound(p)?;
    let g_upper = g_upper_bound(p)?;
    let (vp, p_empty) = dual_volume(s, pp, p.delta, n_mc, &rng.derive(1))?;
    let (vq, _) = dual_volume(s, qq, p.delta, n_mc, &rng.derive(2))?;
    let equality_config = p.n > 1 && p_hi <= p.lambda;
    let verdict = if equality_config {
        Verdict::Inconclusive
    } else if vp.upper(SIGMAS) < vq.lower(SIGMAS) {
        Verdict::Verified
    } else if vp.lower(SIGMAS) > vq.upper(SIGMAS) {
        Verdict::Violated
    } else {
        Verdict::Inconclusive
    };
    Ok(KPReport {
        params: *p,
        threshold_n: threshold,
        above_threshold: p.n >= threshold,
        f_lower,
        g_upper,
        p_below_g: vp.lower(SIGMAS) <= g_upper,
        q_above_f: vq.upper(SIGMAS) >= f_lower,
        vol_p_dual: vp,
        vol_q_dual: vq,
        p_dual_certified_empty: p_empty,
        equality_config,
        verdict,
        n_mc,
        rng: *rng,
    })
}

/// Generates `P` and `Q` from `rng` and runs [`verify_kp_instance`].
pub fn verify_kp(p: &KPParams, n_mc: u64, rng: &RngSpec) -> Result<KPReport> {
    let pp = gen_separated(p, &rng.derive(10))?;
    let qq = gen_contracted(p, &rng.derive(11))?;
    verify_kp_instance(p, &pp, &qq, n_mc, rng)
}

fn random_union<R: Rng + ?Sized>(s: &Space, g: &mut R, spread: f64, radii: (f64, f64)) -> Result<UnionOfBalls> {
    let count = g.random_range(1..=5);
    let sampler = BallSampler::new(s, &s.ball(s.origin(), spread));
    let balls = (0..count)
        .map(|_| {
            let c = sampler.sample(g);
            s.ball(c, g.random_range(radii.0..=radii.1))
        })
        .collect();
    UnionOfBalls::new(*s, balls)
}

/// Drops balls contained in another ball of the union.
fn drop_nested(u: &UnionOfBalls) -> UnionOfBalls {
    let s = &u.space;
    let mut keep: Vec<crate::geom::Ball> = Vec::new();
    for (i, b) in u.balls.iter().enumerate() {
        let inside = u.balls.iter().enumerate().any(|(j, o)| {
            j != i && s.distance(&b.center, &o.center) + b.radius <= o.radius && (o.radius > b.radius || j < i)
        });
        if !inside {
            keep.push(b.clone());
        }
    }
    UnionOfBalls { space: *s, balls: keep }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MainTrial {
    pub n_balls: usize,
    /// The union reduced to a single ball, handled in closed form.
    pub exact: bool,
    pub vol_a: f64,
    pub vol_a_std_err: f64,
    pub equal_volume_radius: f64,
    pub vol_a_dual: f64,
    pub vol_a_dual_std_err: f64,
    pub vol_b_dual: f64,
    pub vol_b_dual_std_err: f64,
    pub z: f64,
    pub violation: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MainReport {
    pub space: Space,
    pub r: f64,
    pub n_mc: u64,
    pub rng: RngSpec,
    pub violations: u64,
    pub max_z: f64,
    pub trials: Vec<MainTrial>,
}

/// Random unions `A` of 1-5 balls against the ball `B` of equal volume:
/// flags `V(A^r) > V(B^r)` beyond `3` combined standard errors.
pub fn verify_main_random(s: &Space, r: f64, trials: u64, n_mc: u64, rng: &RngSpec) -> Result<MainReport> {
    s.check_dual_radius(r)?;
    let mut out = Vec::with_capacity(trials as usize);
    for t in 0..trials {
        let tr = rng.derive(t);
        let mut g = tr.rng();
        let raw = random_union(s, &mut g, 0.8 * r, (0.1 * r, 0.4 * r))?;
        let a = drop_nested(&raw);
        let trial = if a.balls.len() == 1 {
            let b = &a.balls[0];
            let va = ball_volume(s, b.radius)?;
            let vd = ball_volume(s, r - b.radius)?;
            MainTrial {
                n_balls: raw.balls.len(),
                exact: true,
                vol_a: va,
                vol_a_std_err: 0.0,
                equal_volume_radius: b.radius,
                vol_a_dual: vd,
                vol_a_dual_std_err: 0.0,
                vol_b_dual: vd,
                vol_b_dual_std_err: 0.0,
                z: 0.0,
                violation: false,
            }
        } else {
            let oracle = a.to_oracle();
            let bound = oracle.bound().expect("nonempty").clone();
            let va = estimate_volume(&oracle, &bound, n_mc, &tr.derive(1))?;
            let rad = ball_volume_inverse(s, va.value)?;
            let (vb, sb) = if rad < r {
                let slope = ball_volume_derivative(s, r - rad) / ball_volume_derivative(s, rad);
                (ball_volume(s, r - rad)?, slope * va.std_err)
            } else {
                (0.0, 0.0)
            };
            let dual = dual_of_union_general(&a, r)?.to_oracle();
            let vd = match dual.bound() {
                Some(b) => estimate_volume(&dual, &b.clone(), n_mc, &tr.derive(2))?,
                None => VolumeEstimate::from_counts(0, n_mc, 0.0),
            };
            let diff = vd.value - vb;
            let sigma = (vd.std_err.powi(2) + sb.powi(2)).sqrt();
            let z = if sigma > 0.0 { diff / sigma } else if diff > 1e-12 { f64::INFINITY } else { 0.0 };
            MainTrial {
                n_balls: raw.balls.len(),
                exact: false,
                vol_a: va.value,
                vol_a_std_err: va.std_err,
                equal_volume_radius: rad,
                vol_a_dual: vd.value,
                vol_a_dual_std_err: vd.std_err,
                vol_b_dual: vb,
                vol_b_dual_std_err: sb,
                z,
                violation: z > SIGMAS,
            }
        };
        out.push(trial);
    }
    let violations = out.iter().filter(|t| t.violation).count() as u64;
    let max_z = out.iter().map(|t| t.z).fold(f64::NEG_INFINITY, f64::max);
    Ok(MainReport { space: *s, r, n_mc, rng: *rng, violations, max_z, trials: out })
}

/// A random hyperplane through a uniform point of `B[o, spread]`.
pub fn random_hyperplane<R: Rng + ?Sized>(s: &Space, g: &mut R, spread: f64) -> Result<OrientedHyperplane> {
    let p = BallSampler::new(s, &s.ball(s.origin(), spread)).sample(g);
    let u = s.random_unit_tangent(&p, g);
    match s.curvature {
        Curvature::Euclidean => {
            let offset = u.iter().zip(p.coords()).map(|(a, b)| a * b).sum();
            s.hyperplane(u, offset)
        }
        _ => s.hyperplane(u, 0.0),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoreLemmaReport {
    pub space: Space,
    pub r: f64,
    pub trials: u64,
    pub samples_per_trial: u64,
    pub inner_samples: u64,
    pub rng: RngSpec,
    pub probes: u64,
    pub certified: u64,
    pub refutations: u64,
    pub counterexample: Option<(Point, Point)>,
}

/// Searches for `y` on the boundary of `tau_H(K^r)` and a point of
/// `tau_H(K)` farther than `r` from `y`.
pub fn verify_core_lemma(s: &Space, r: f64, trials: u64, samples: u64, inner: u64, rng: &RngSpec) -> Result<CoreLemmaReport> {
    s.check_dual_radius(r)?;
    let mut report = CoreLemmaReport {
        space: *s,
        r,
        trials,
        samples_per_trial: samples,
        inner_samples: inner,
        rng: *rng,
        probes: 0,
        certified: 0,
        refutations: 0,
        counterexample: None,
    };
    for t in 0..trials {
        let tr = rng.derive(t);
        let mut g = tr.rng();
        let k = random_union(s, &mut g, 0.2 * r, (0.2 * r, 0.4 * r))?;
        let h = random_hyperplane(s, &mut g, 0.3 * r)?;
        let tk = symmetrize(&k.to_oracle(), &h);
        let dual = dual_of_union_general(&k, r)?.to_oracle();
        let td = symmetrize(&dual, &h);
        let sampler = BallSampler::new(s, td.bound().expect("dual of a small union is nonempty"));
        for j in 0..samples {
            let Some(x) = td.sample_member(&sampler, &mut g, 100_000) else {
                return Err(GeomError::DegenerateSet { rejections: 100_000 });
            };
            let dir = s.random_unit_tangent(&x, &mut g);
            let y = td.push_to_boundary(&x, &dir);
            report.probes += 1;
            match subset_of_ball(&tk, &y, r, inner, &tr.derive(j + 1))? {
                SubsetProbe::Certified => report.certified += 1,
                SubsetProbe::Refuted(z) => {
                    report.refutations += 1;
                    report.counterexample.get_or_insert((y, z));
                }
                SubsetProbe::Unrefuted { .. } => {}
            }
        }
    }
    Ok(report)
}

/// `V(tau_H K)` and `V(K)` from common random numbers on one sampling ball.
pub fn symmetrization_volumes(k: &SetOracle, h: &OrientedHyperplane, n_mc: u64, rng: &RngSpec) -> Result<(VolumeEstimate, VolumeEstimate)> {
    let t = symmetrize(k, h);
    let Some(sampling) = t.bound().cloned() else {
        let zero = VolumeEstimate::from_counts(0, n_mc, 0.0);
        return Ok((zero.clone(), zero));
    };
    Ok((estimate_volume(k, &sampling, n_mc, rng)?, estimate_volume(&t, &sampling, n_mc, rng)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        let e = KPParams::new(Space::euclidean(2), 6, 1.0, 1.0, None).unwrap();
        assert_eq!(threshold_n(&e), 6);
        let s = KPParams::new(Space::spherical(2), 89, 0.1, 0.5, None).unwrap();
        assert_eq!(threshold_n(&s), 89);
        let h = KPParams::new(Space::hyperbolic(2), 13, 0.3, 0.6, Some(1.0)).unwrap();
        assert_eq!(threshold_n(&h), 13);
    }

    #[test]
    fn bound_values() {
        let e = KPParams::new(Space::euclidean(2), 6, 1.0, 1.0, None).unwrap();
        assert!((f_lower_bound(&e).unwrap() - 0.269_506_042_226_323_6).abs() < 1e-12);
        assert!((g_upper_bound(&e).unwrap() - 0.238_023_979_504_947_8).abs() < 1e-12);
        let big = KPParams { n: 10_000, ..e };
        assert_eq!(g_upper_bound(&big).unwrap(), 0.0);
    }

    #[test]
    fn hypotheses() {
        assert!(KPParams::new(Space::euclidean(2), 6, 1.5, 1.0, None).is_err());
        assert!(KPParams::new(Space::spherical(2), 6, 0.5, 0.5, None).is_err());
        assert!(KPParams::new(Space::hyperbolic(2), 6, 0.3, 1.2, Some(1.0)).is_err());
        assert!(KPParams::new(Space::euclidean(2), 0, 1.0, 1.0, None).is_err());
        let h = KPParams::new(Space::hyperbolic(2), 13, 0.3, 0.6, None).unwrap();
        assert_eq!(h.k, Some(1.0));
    }

    #[test]
    fn generators_respect_lambda() {
        let s = KPParams::new(Space::spherical(2), 89, 0.1, 0.5, None).unwrap();
        let rng = RngSpec::new(5, 0);
        let q = gen_contracted(&s, &rng).unwrap();
        assert_eq!(q.len(), 89);
        let p = gen_separated(&s, &rng).unwrap();
        let (lo, _) = pairwise_extremes(&s.space, &p);
        assert!(lo >= 0.1);
        let e = KPParams::new(Space::euclidean(2), 6, 1.0, 1.0, None).unwrap();
        let p = gen_separated(&e, &rng).unwrap();
        let (lo, _) = pairwise_extremes(&e.space, &p);
        assert!((1.0..1.0 + 1e-9).contains(&lo));
        let one = KPParams { n: 1, ..e };
        assert_eq!(gen_contracted(&one, &rng).unwrap().len(), 1);
    }
}
