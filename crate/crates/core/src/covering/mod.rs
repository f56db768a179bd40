//! Covering radii `cov_X(k)` and covering numbers `numCover_X(delta)` for
//! spheres and projective spaces: a database of known exact values, a
//! multistart minimax solver with grid certification, and the derived
//! covering-number search.
//!
//! Certification is one-sided: the solver produces rigorous *upper* bounds
//! (`radius_achieved + grid_mesh`); lower bounds come only from the known
//! value database.

mod known;
mod mesh;
mod solver;

pub use known::{known_cov, KnownCoveringValue};
pub use mesh::grid_mesh;
pub use solver::{solve_cov, SolveConfig};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    covering_radius_of_sample, Ambient, FinitePointCloud, GeometryError,
};

#[derive(Debug, Error)]
pub enum CoveringError {
    #[error("covering solver supports sphere/projective ambients with n in 1..=3, got {0}")]
    UnsupportedAmbient(String),
    #[error("k must be >= 1")]
    ZeroCenters,
    #[error("k = {k} exceeds the {grid}-point search grid")]
    TooManyCenters { k: usize, grid: usize },
    #[error("certification grid of {size} points has mesh {mesh:.2e}, coarser than the requested tolerance {requested:.2e}")]
    MeshTooCoarse {
        size: usize,
        mesh: f64,
        requested: f64,
    },
    #[error("empty certification grid")]
    EmptyGrid,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A solved covering instance with its grid-based coverage certificate.
/// The true covering radius of `centers` is at most `radius_certified`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoveringSolution {
    pub ambient: Ambient,
    pub k: usize,
    /// Unit-vector coordinates of the centers (canonical reps when projective).
    pub centers: Vec<Vec<f64>>,
    pub radius_achieved: f64,
    pub grid_mesh: f64,
    pub radius_certified: f64,
    pub status: SolutionStatus,
    pub cert_grid_size: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionStatus {
    HeuristicUpperBound,
    MatchesKnownExact,
}

impl CoveringSolution {
    /// Centers as a point cloud, for re-certification.
    pub fn centers_cloud(&self) -> Result<FinitePointCloud, GeometryError> {
        centers_to_cloud(self.ambient, &self.centers)
    }
}

pub(crate) fn centers_to_cloud(
    ambient: Ambient,
    centers: &[Vec<f64>],
) -> Result<FinitePointCloud, GeometryError> {
    use crate::geometry::{ProjectivePoint, SpherePoint};
    match ambient {
        Ambient::Sphere { n } => FinitePointCloud::from_sphere_points(
            n,
            centers
                .iter()
                .map(|c| SpherePoint::new(c.clone()))
                .collect::<Result<_, _>>()?,
        ),
        Ambient::Projective { n } => FinitePointCloud::from_projective_points(
            n,
            centers
                .iter()
                .map(|c| ProjectivePoint::from_coords(c.clone()))
                .collect::<Result<_, _>>()?,
        ),
        Ambient::Abstract => Err(GeometryError::AbstractAmbient),
    }
}

/// Max over the grid of the distance to the nearest center. The true covering
/// radius of the center set is at most the returned value plus the grid mesh.
pub fn certify_cover(
    centers: &FinitePointCloud,
    grid: &FinitePointCloud,
) -> Result<f64, CoveringError> {
    if grid.is_empty() {
        return Err(CoveringError::EmptyGrid);
    }
    Ok(covering_radius_of_sample(centers, grid)?)
}

/// Like [`certify_cover`] against the standard certification grid of
/// `grid_size` points, but without materializing the grid as a point cloud
/// (whose pairwise matrix would be quadratic in the grid size).
pub fn certify_cover_on_grid(
    centers: &FinitePointCloud,
    grid_size: usize,
) -> Result<f64, CoveringError> {
    use crate::geometry::PointSet;
    use rayon::prelude::*;

    let ambient = centers.ambient();
    let grid = mesh::grid_coords(ambient, grid_size)?;
    let (coords, proj): (Vec<[f64; 4]>, bool) = match centers.points() {
        PointSet::Sphere(pts) => (pts.iter().map(|p| pad4(p.coords())).collect(), false),
        PointSet::Projective(pts) => {
            (pts.iter().map(|p| pad4(p.rep().coords())).collect(), true)
        }
        PointSet::None => return Err(CoveringError::Geometry(GeometryError::AbstractAmbient)),
    };
    if coords.is_empty() {
        return Err(CoveringError::Geometry(GeometryError::EmptyCloud));
    }
    // max-min via the cosine score; a single acos at the end
    let worst = grid
        .par_iter()
        .map(|g| {
            coords
                .iter()
                .map(|c| {
                    let d = g[0] * c[0] + g[1] * c[1] + g[2] * c[2] + g[3] * c[3];
                    if proj {
                        d.abs()
                    } else {
                        d
                    }
                })
                .fold(-1.0f64, f64::max)
        })
        .reduce(|| 1.0, f64::min);
    Ok(worst.clamp(-1.0, 1.0).acos())
}

fn pad4(coords: &[f64]) -> [f64; 4] {
    let mut out = [0.0; 4];
    out[..coords.len()].copy_from_slice(coords);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NumCoverStatus {
    Exact,
    HeuristicUpperBound,
    Unresolved,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NumCoverResult {
    pub k: Option<usize>,
    pub status: NumCoverStatus,
}

/// Least `k <= k_max` with a certified covering radius `<= delta`; an upper
/// bound on `numCover(delta)`. Exact when closed forms or bracketing known
/// values decide it.
pub fn num_cover(
    ambient: Ambient,
    delta: f64,
    k_max: usize,
    config: &SolveConfig,
) -> Result<NumCoverResult, CoveringError> {
    assert!(delta > 0.0, "delta must be positive");
    use std::f64::consts::PI;
    // closed forms on the circle ambients
    let closed_form = match ambient {
        Ambient::Sphere { n: 1 } => Some((PI / delta).ceil().max(1.0) as usize),
        Ambient::Projective { n: 1 } => Some((PI / (2.0 * delta)).ceil().max(1.0) as usize),
        _ => None,
    };
    if let Some(k) = closed_form {
        return Ok(if k <= k_max {
            NumCoverResult {
                k: Some(k),
                status: NumCoverStatus::Exact,
            }
        } else {
            NumCoverResult {
                k: None,
                status: NumCoverStatus::Unresolved,
            }
        });
    }

    // bracketing by tight known values: cov(k) <= delta < cov(k-1)
    for k in 1..=k_max {
        let here = known_cov(ambient, k);
        let below = if k > 1 { known_cov(ambient, k - 1) } else { None };
        if let Some(v) = &here {
            if v.tight && v.value <= delta {
                let lower_ok = match (&below, k) {
                    (_, 1) => true,
                    (Some(b), _) => b.tight && b.value > delta,
                    (None, _) => false,
                };
                if lower_ok {
                    return Ok(NumCoverResult {
                        k: Some(k),
                        status: NumCoverStatus::Exact,
                    });
                }
                break;
            }
        }
    }

    // solver sweep: first k whose certified radius fits
    for k in 1..=k_max {
        let sol = solve_cov(ambient, k, config)?;
        if sol.radius_certified <= delta {
            return Ok(NumCoverResult {
                k: Some(k),
                status: NumCoverStatus::HeuristicUpperBound,
            });
        }
    }
    Ok(NumCoverResult {
        k: None,
        status: NumCoverStatus::Unresolved,
    })
}
