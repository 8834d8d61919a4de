//! Membership oracles for sets built from balls, reflections and
//! two-point symmetrization, and the `r`-dual operations on them.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geom::{Ball, Curvature, OrientedHyperplane, Point, Space};
use crate::measure::BallSampler;
use crate::minimax::circumradius;
use crate::rng::RngSpec;

/// Slack used when a sampled point is compared against a claimed bound.
pub const REFUTE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Descriptor {
    Empty,
    UnionOfBalls,
    BallIntersection,
    Symmetrized,
    Reflected,
    Composite,
}

/// A finite union of closed balls; points are balls of radius zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnionOfBalls {
    pub space: Space,
    pub balls: Vec<Ball>,
}

impl UnionOfBalls {
    pub fn new(space: Space, balls: Vec<Ball>) -> Result<Self> {
        for b in &balls {
            space.check_point(&b.center)?;
        }
        let balls: Vec<Ball> = balls.into_iter().filter(|b| !b.is_empty()).collect();
        if balls.is_empty() {
            return Err(GeomError::InvalidInput("a union of balls needs at least one nonempty ball".into()));
        }
        Ok(UnionOfBalls { space, balls })
    }

    pub fn from_points(space: Space, points: &[Point]) -> Result<Self> {
        UnionOfBalls::new(space, points.iter().map(|p| space.ball(p.clone(), 0.0)).collect())
    }

    pub fn congruent(space: Space, centers: &[Point], radius: f64) -> Result<Self> {
        if radius < 0.0 {
            return Err(GeomError::InvalidInput(format!("ball radius must be nonnegative, got {radius}")));
        }
        UnionOfBalls::new(space, centers.iter().map(|p| space.ball(p.clone(), radius)).collect())
    }

    pub fn centers(&self) -> Vec<Point> {
        self.balls.iter().map(|b| b.center.clone()).collect()
    }

    /// The common radius if all balls are congruent.
    pub fn common_radius(&self) -> Option<f64> {
        let r = self.balls[0].radius;
        self.balls.iter().all(|b| (b.radius - r).abs() <= 1e-15).then_some(r)
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.balls.iter().any(|b| self.space.contains(b, x))
    }

    /// `(X u Y)`; duals turn this into an intersection.
    pub fn union(&self, other: &UnionOfBalls) -> Result<UnionOfBalls> {
        if self.space != other.space {
            return Err(GeomError::InvalidInput("union of sets in different spaces".into()));
        }
        let mut balls = self.balls.clone();
        balls.extend(other.balls.iter().cloned());
        Ok(UnionOfBalls { space: self.space, balls })
    }

    /// A ball containing the union, centred at the (approximate) circumcenter
    /// of the centers.
    pub fn bounding_ball(&self) -> Ball {
        let s = &self.space;
        let center = circumradius(s, &self.centers(), 200)
            .map(|e| e.ball.center)
            .unwrap_or_else(|_| self.balls[0].center.clone());
        let radius = self
            .balls
            .iter()
            .map(|b| s.distance(&center, &b.center) + b.radius)
            .fold(0.0, f64::max);
        s.ball(center, radius)
    }

    pub fn to_oracle(&self) -> SetOracle {
        let bound = Some(self.bounding_ball());
        SetOracle { space: self.space, node: Arc::new(Node::Union(self.clone())), bound }
    }
}

/// A finite intersection of closed balls, possibly empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallIntersection {
    pub space: Space,
    pub balls: Vec<Ball>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Emptiness {
    EmptyCertified,
    NonemptyWitness(Point),
    Unknown,
}

impl BallIntersection {
    pub fn new(space: Space, balls: Vec<Ball>) -> Result<Self> {
        if balls.is_empty() {
            return Err(GeomError::InvalidInput("an intersection needs at least one ball".into()));
        }
        for b in &balls {
            space.check_point(&b.center)?;
        }
        Ok(BallIntersection { space, balls })
    }

    /// Contains the canonical empty ball.
    pub fn has_empty_ball(&self) -> bool {
        self.balls.iter().any(Ball::is_empty)
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.balls.iter().all(|b| self.space.contains(b, x))
    }

    pub fn intersect(&self, other: &BallIntersection) -> Result<BallIntersection> {
        if self.space != other.space {
            return Err(GeomError::InvalidInput("intersection of sets in different spaces".into()));
        }
        let mut balls = self.balls.clone();
        balls.extend(other.balls.iter().cloned());
        Ok(BallIntersection { space: self.space, balls })
    }

    pub fn smallest_ball(&self) -> Option<&Ball> {
        if self.has_empty_ball() {
            return None;
        }
        self.balls.iter().min_by(|a, b| a.radius.total_cmp(&b.radius))
    }

    pub fn to_oracle(&self) -> SetOracle {
        let bound = self.smallest_ball().cloned();
        let node = if bound.is_none() { Node::Empty } else { Node::Intersection(self.clone()) };
        SetOracle { space: self.space, node: Arc::new(node), bound }
    }

    /// Decides emptiness where a certificate exists and otherwise searches
    /// for a witness with up to `budget` uniform samples of the smallest ball.
    pub fn is_empty(&self, budget: u64, rng: &RngSpec) -> Emptiness {
        let s = &self.space;
        let Some(smallest) = self.smallest_ball() else {
            return Emptiness::EmptyCertified;
        };
        if self.balls.len() == 1 {
            return Emptiness::NonemptyWitness(smallest.center.clone());
        }
        let mut candidates = Vec::new();
        for (i, a) in self.balls.iter().enumerate() {
            for b in &self.balls[i + 1..] {
                let d = s.distance(&a.center, &b.center);
                if d > a.radius + b.radius + 1e-12 {
                    return Emptiness::EmptyCertified;
                }
                if d > 0.0 {
                    let lo = (d - b.radius).max(0.0);
                    let hi = a.radius.min(d);
                    if let Ok(p) = s.geodesic_point(&a.center, &b.center, 0.5 * (lo + hi) / d) {
                        candidates.push(p);
                    }
                }
            }
        }
        let centers: Vec<Point> = self.balls.iter().map(|b| b.center.clone()).collect();
        if let Ok(meb) = circumradius(s, &centers, 1000) {
            let r = smallest.radius;
            let congruent = self.balls.iter().all(|b| (b.radius - r).abs() <= 1e-15);
            // Exact certificate: congruent Euclidean balls meet iff the
            // circumradius of their centers is at most the radius.
            if s.curvature == Curvature::Euclidean && congruent && meb.ball.radius > r + 1e-9 {
                return Emptiness::EmptyCertified;
            }
            candidates.push(meb.ball.center);
        }
        candidates.extend(centers);
        if let Some(p) = candidates.into_iter().find(|p| self.contains(p)) {
            return Emptiness::NonemptyWitness(p);
        }
        let sampler = BallSampler::new(s, smallest);
        let mut r = rng.rng();
        for _ in 0..budget {
            let x = sampler.sample(&mut r);
            if self.contains(&x) {
                return Emptiness::NonemptyWitness(x);
            }
        }
        Emptiness::Unknown
    }
}

pub type Predicate = Arc<dyn Fn(&Point) -> bool + Send + Sync>;

enum Node {
    Empty,
    Union(UnionOfBalls),
    Intersection(BallIntersection),
    Reflected(SetOracle, OrientedHyperplane),
    Symmetrized(SetOracle, OrientedHyperplane),
    All(Vec<SetOracle>),
    Any(Vec<SetOracle>),
    Minus(SetOracle, SetOracle),
    HalfSpace(SetOracle, OrientedHyperplane, bool),
    Predicate(Predicate),
}

/// A compact set given by an exact membership test and a bounding ball.
///
/// `bound` is `None` exactly for sets known to be empty.
#[derive(Clone)]
pub struct SetOracle {
    space: Space,
    node: Arc<Node>,
    bound: Option<Ball>,
}

impl fmt::Debug for SetOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetOracle")
            .field("space", &self.space)
            .field("descriptor", &self.descriptor())
            .field("bound", &self.bound)
            .finish()
    }
}

impl SetOracle {
    pub fn empty(space: Space) -> SetOracle {
        SetOracle { space, node: Arc::new(Node::Empty), bound: None }
    }

    pub fn ball(space: Space, ball: Ball) -> SetOracle {
        if ball.is_empty() {
            return SetOracle::empty(space);
        }
        BallIntersection { space, balls: vec![ball] }.to_oracle()
    }

    /// A set given by a predicate; `bound` must contain every member.
    pub fn from_predicate<F>(space: Space, bound: Ball, f: F) -> SetOracle
    where
        F: Fn(&Point) -> bool + Send + Sync + 'static,
    {
        SetOracle { space, node: Arc::new(Node::Predicate(Arc::new(f))), bound: Some(bound) }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn bound(&self) -> Option<&Ball> {
        self.bound.as_ref()
    }

    pub fn descriptor(&self) -> Descriptor {
        match &*self.node {
            Node::Empty => Descriptor::Empty,
            Node::Union(_) => Descriptor::UnionOfBalls,
            Node::Intersection(_) => Descriptor::BallIntersection,
            Node::Reflected(..) => Descriptor::Reflected,
            Node::Symmetrized(..) => Descriptor::Symmetrized,
            _ => Descriptor::Composite,
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        let s = &self.space;
        match &*self.node {
            Node::Empty => false,
            Node::Union(u) => u.contains(x),
            Node::Intersection(b) => b.contains(x),
            Node::Reflected(k, h) => k.contains(&s.reflect(h, x)),
            Node::Symmetrized(k, h) => {
                let a = k.contains(x);
                let b = k.contains(&s.reflect(h, x));
                (a && b) || ((a || b) && s.side(h, x) >= 0)
            }
            Node::All(v) => v.iter().all(|k| k.contains(x)),
            Node::Any(v) => v.iter().any(|k| k.contains(x)),
            Node::Minus(a, b) => a.contains(x) && !b.contains(x),
            Node::HalfSpace(k, h, positive) => {
                let side = s.side(h, x);
                k.contains(x) && if *positive { side >= 0 } else { side <= 0 }
            }
            Node::Predicate(f) => f(x),
        }
    }

    /// Intersection of several sets in the same space.
    pub fn all(space: Space, parts: Vec<SetOracle>) -> SetOracle {
        let bound = if parts.iter().any(|p| p.bound.is_none()) {
            None
        } else {
            parts.iter().filter_map(|p| p.bound.clone()).min_by(|a, b| a.radius.total_cmp(&b.radius))
        };
        match bound {
            None => SetOracle::empty(space),
            Some(b) => SetOracle { space, node: Arc::new(Node::All(parts)), bound: Some(b) },
        }
    }

    /// Union of several sets in the same space.
    pub fn any(space: Space, parts: Vec<SetOracle>) -> SetOracle {
        let bound = parts.iter().filter_map(|p| p.bound.clone()).reduce(|a, b| space.enclose_balls(&a, &b));
        match bound {
            None => SetOracle::empty(space),
            Some(b) => SetOracle { space, node: Arc::new(Node::Any(parts)), bound: Some(b) },
        }
    }

    pub fn minus(&self, other: &SetOracle) -> SetOracle {
        if self.bound.is_none() {
            return self.clone();
        }
        SetOracle { space: self.space, node: Arc::new(Node::Minus(self.clone(), other.clone())), bound: self.bound.clone() }
    }

    /// `K n H+` (`positive`) or `K n H-`, both closed.
    pub fn restrict(&self, h: &OrientedHyperplane, positive: bool) -> SetOracle {
        if self.bound.is_none() {
            return self.clone();
        }
        SetOracle {
            space: self.space,
            node: Arc::new(Node::HalfSpace(self.clone(), h.clone(), positive)),
            bound: self.bound.clone(),
        }
    }

    /// Draws a member by rejection from the bounding ball, giving up after
    /// `max_tries` proposals.
    pub fn sample_member<R: Rng + ?Sized>(&self, sampler: &BallSampler, rng: &mut R, max_tries: u64) -> Option<Point> {
        (0..max_tries).map(|_| sampler.sample(rng)).find(|x| self.contains(x))
    }

    /// Moves from the member `from` along the unit tangent `dir` to the last
    /// member point before leaving the set (bisection to `1e-12`).
    pub fn push_to_boundary(&self, from: &Point, dir: &[f64]) -> Point {
        let s = &self.space;
        let Some(bound) = &self.bound else { return from.clone() };
        let mut hi = (2.0 * bound.radius).max(1e-12);
        if s.curvature == Curvature::Spherical {
            hi = hi.min(std::f64::consts::PI);
        }
        if self.contains(&s.exp_at(from, dir, hi)) {
            return s.exp_at(from, dir, hi);
        }
        let mut lo = 0.0;
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            if self.contains(&s.exp_at(from, dir, mid)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        s.exp_at(from, dir, lo)
    }
}

/// `P^r`, the set of centers of radius-`r` balls containing `P`.
pub fn dual_of_points(space: &Space, points: &[Point], r: f64) -> Result<BallIntersection> {
    space.check_dual_radius(r)?;
    if points.is_empty() {
        return Err(GeomError::InvalidInput("dual of an empty point set".into()));
    }
    let balls = points
        .iter()
        .map(|p| space.check_point(p).map(|_| space.ball(p.clone(), r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BallIntersection { space: *space, balls })
}

/// `t`-dual of a union of congruent balls of radius `s`:
/// the intersection of the balls of radius `t - s` (empty when `s > t`).
pub fn dual_of_union(u: &UnionOfBalls, t: f64) -> Result<BallIntersection> {
    if u.common_radius().is_none() {
        return Err(GeomError::InvalidInput("dual_of_union needs congruent balls; use dual_of_union_general".into()));
    }
    dual_of_union_general(u, t)
}

/// `t`-dual of an arbitrary union of balls, `n_i B[c_i, t - s_i]`.
pub fn dual_of_union_general(u: &UnionOfBalls, t: f64) -> Result<BallIntersection> {
    let s = &u.space;
    s.check_dual_radius(t)?;
    let balls = u.balls.iter().map(|b| s.ball(b.center.clone(), t - b.radius)).collect();
    Ok(BallIntersection { space: *s, balls })
}

/// Reflection `sigma_H(K)`.
pub fn reflect_set(k: &SetOracle, h: &OrientedHyperplane) -> SetOracle {
    let s = k.space;
    let bound = k.bound.as_ref().map(|b| s.reflect_ball(h, b));
    SetOracle { space: s, node: Arc::new(Node::Reflected(k.clone(), h.clone())), bound }
}

/// Two-point symmetrization `tau_H(K)`: `(K n sigma K) u ((K u sigma K) n H+)`.
pub fn symmetrize(k: &SetOracle, h: &OrientedHyperplane) -> SetOracle {
    let s = k.space;
    let Some(b) = &k.bound else { return k.clone() };
    let bound = s.enclose_balls(b, &s.reflect_ball(h, b));
    SetOracle { space: s, node: Arc::new(Node::Symmetrized(k.clone(), h.clone())), bound: Some(bound) }
}

/// The canonical decomposition of `tau_H(K)`.
#[derive(Debug, Clone)]
pub struct CanonicalParts {
    /// `K n sigma K`
    pub core: SetOracle,
    /// `(K n H+) \ core`, kept in place
    pub plus: SetOracle,
    /// `sigma((K n H-) \ core)`, moved across `H`
    pub moved: SetOracle,
}

pub fn canonical_parts(k: &SetOracle, h: &OrientedHyperplane) -> CanonicalParts {
    let s = k.space;
    let sk = reflect_set(k, h);
    let core = match &k.bound {
        None => SetOracle::empty(s),
        Some(b) => SetOracle { space: s, node: Arc::new(Node::All(vec![k.clone(), sk])), bound: Some(b.clone()) },
    };
    let plus = k.restrict(h, true).minus(&core);
    let moved = reflect_set(&k.restrict(h, false).minus(&core), h);
    CanonicalParts { core, plus, moved }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SubsetProbe {
    /// The bounding ball of `K` already lies in `B[y, r]`.
    Certified,
    /// A member of `K` farther than `r + REFUTE_TOL` from `y`.
    Refuted(Point),
    /// No counterexample among the sampled members.
    Unrefuted { samples: u64 },
}

/// Probabilistic test of `K subset B[y, r]` using `m` members of `K`, each
/// pushed to the boundary of `K` away from `y`.
///
/// Fails with [`GeomError::DegenerateSet`] after `100 m` rejected proposals.
pub fn subset_of_ball(k: &SetOracle, y: &Point, r: f64, m: u64, rng: &RngSpec) -> Result<SubsetProbe> {
    let s = k.space;
    let Some(bound) = k.bound() else { return Ok(SubsetProbe::Certified) };
    if s.distance(y, &bound.center) + bound.radius <= r {
        return Ok(SubsetProbe::Certified);
    }
    let sampler = BallSampler::new(&s, bound);
    let mut g = rng.rng();
    let mut rejections = 0u64;
    let mut accepted = 0u64;
    while accepted < m {
        let x = sampler.sample(&mut g);
        if !k.contains(&x) {
            rejections += 1;
            if rejections > 100 * m {
                return Err(GeomError::DegenerateSet { rejections });
            }
            continue;
        }
        accepted += 1;
        if s.distance(y, &x) > r + REFUTE_TOL {
            return Ok(SubsetProbe::Refuted(x));
        }
        if let Some(away) = s.direction_to(&x, y) {
            let dir: Vec<f64> = away.iter().map(|v| -v).collect();
            let z = k.push_to_boundary(&x, &dir);
            if s.distance(y, &z) > r + REFUTE_TOL {
                return Ok(SubsetProbe::Refuted(z));
            }
        }
    }
    Ok(SubsetProbe::Unrefuted { samples: m })
}

#[derive(Debug, Clone, PartialEq)]
pub enum DoubleDual {
    /// `y` lies in `K`, hence in `K^{rr}`.
    InSet,
    /// `K^r` is empty so `K^{rr}` is the whole space.
    WholeSpace,
    /// A point of `K^r` farther than `r` from `y`.
    Refuted(Point),
    Unrefuted { samples: u64 },
}

impl DoubleDual {
    pub fn is_member(&self) -> bool {
        !matches!(self, DoubleDual::Refuted(_))
    }
}

/// Membership of `y` in `K^{rr}` for a union of balls `K`.
pub fn double_dual_member(k: &UnionOfBalls, r: f64, y: &Point, m: u64, rng: &RngSpec) -> Result<DoubleDual> {
    if k.contains(y) {
        return Ok(DoubleDual::InSet);
    }
    let dual = dual_of_union_general(k, r)?;
    if let Emptiness::EmptyCertified = dual.is_empty(0, rng) {
        return Ok(DoubleDual::WholeSpace);
    }
    Ok(match subset_of_ball(&dual.to_oracle(), y, r, m, rng)? {
        SubsetProbe::Refuted(z) => DoubleDual::Refuted(z),
        SubsetProbe::Certified => DoubleDual::Unrefuted { samples: 0 },
        SubsetProbe::Unrefuted { samples } => DoubleDual::Unrefuted { samples },
    })
}
