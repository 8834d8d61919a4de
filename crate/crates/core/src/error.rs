use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("point is not on the model manifold: {0}")]
    OffManifold(String),

    #[error("degenerate geodesic: {0}")]
    DegenerateGeodesic(String),

    #[error("radius {radius} is not admissible for {space}")]
    InadmissibleRadius { radius: f64, space: String },

    #[error("volume {volume} is out of range for {space}")]
    VolumeOutOfRange { volume: f64, space: String },

    #[error("ball volumes saturate the sphere: N * V(lambda/2) = {requested} exceeds the total volume {total}")]
    Saturated { requested: f64, total: f64 },

    #[error("sampling ball does not contain the set bound")]
    SamplingBallTooSmall,

    #[error("member point at distance {distance} lies outside the declared bound of radius {radius}")]
    BoundViolation { distance: f64, radius: f64 },

    #[error("rejection sampling starved after {rejections} rejections; the set has no effective volume")]
    DegenerateSet { rejections: u64 },

    #[error("point set is not contained in an open hemisphere (pair at distance {distance})")]
    HemisphereViolation { distance: f64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("invalid contraction: {0}")]
    InvalidContraction(String),

    #[error("configuration infeasible: {0}")]
    Infeasible(String),

    #[error("operation not representable: {0}")]
    NotRepresentable(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
