//! Geometry of constant-curvature spaces: `r`-dual sets, two-point
//! symmetrization, circumradii and ball volumes in `E^d`, `S^d` and `H^d`,
//! with Monte Carlo verification of volume inequalities.

pub mod error;
pub mod exact2d;
pub mod geom;
pub mod kp;
pub mod measure;
pub mod minimax;
pub mod oracle;
pub mod quad;
pub mod rng;

pub use error::{GeomError, Result};
pub use geom::{Ball, Curvature, OrientedHyperplane, Point, Space};
pub use measure::{ball_volume, ball_volume_inverse, estimate_volume, mu_solve, VolumeEstimate};
pub use oracle::{BallIntersection, SetOracle, UnionOfBalls};
pub use rng::RngSpec;
