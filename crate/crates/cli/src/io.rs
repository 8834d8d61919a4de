use std::fs;
use std::path::Path;

use curvball::{Curvature, Point, Space};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Points further than this from the model are rejected on load.
pub const LOAD_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coordinates {
    #[default]
    Embedded,
    Intrinsic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSetFile {
    pub space: Curvature,
    pub dim: usize,
    #[serde(default)]
    pub coordinates: Coordinates,
    pub points: Vec<Vec<f64>>,
}

impl PointSetFile {
    pub fn new(space: &Space, points: &[Point]) -> Self {
        PointSetFile {
            space: space.curvature,
            dim: space.dim,
            coordinates: Coordinates::Embedded,
            points: points.iter().map(|p| p.coords().to_vec()).collect(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Json(path.display().to_string(), e))
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).expect("point sets serialize") + "\n";
        fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))
    }

    /// Validated points. Coordinates within `1e-9` of the model are kept
    /// verbatim (so load/save is idempotent); up to [`LOAD_TOL`] they are
    /// renormalized.
    pub fn resolve(&self) -> Result<(Space, Vec<Point>), CliError> {
        let space = Space::new(self.space, self.dim)?;
        if self.coordinates == Coordinates::Intrinsic && self.space != Curvature::Euclidean {
            return Err(CliError::Usage("intrinsic coordinates are only defined for euclidean point sets".into()));
        }
        if self.points.is_empty() {
            return Err(CliError::Usage("point set is empty".into()));
        }
        let points = self
            .points
            .iter()
            .map(|c| {
                let raw = Point::from_raw(c.clone());
                if space.check_point(&raw).is_ok() {
                    Ok(raw)
                } else {
                    space.point_with_tol(c.clone(), LOAD_TOL).map_err(CliError::from)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((space, points))
    }
}
