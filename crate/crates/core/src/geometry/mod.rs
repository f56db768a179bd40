//! Points on `S^n` and `RP^n`, geodesic metrics, sampling strategies, and
//! finite metric spaces with precomputed distance matrices.

mod cloud;
mod nn;
mod point;
mod sample;

pub use cloud::{DistanceMatrix, FinitePointCloud, PointSet};
pub use nn::NnIndex3;
pub use point::{proj_dist, sphere_dist, ProjectivePoint, SpherePoint};
pub use sample::{
    covering_radius_of_sample, perturb_within, sample_space, SampleStrategy,
};
pub(crate) use sample::fibonacci_lattice;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The space a finite sample lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Ambient {
    Sphere { n: usize },
    Projective { n: usize },
    Abstract,
}

impl Ambient {
    pub fn diameter(&self) -> Option<f64> {
        match self {
            Ambient::Sphere { .. } => Some(std::f64::consts::PI),
            Ambient::Projective { .. } => Some(std::f64::consts::FRAC_PI_2),
            Ambient::Abstract => None,
        }
    }

    /// Intrinsic dimension, when geodesic.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Ambient::Sphere { n } | Ambient::Projective { n } => Some(*n),
            Ambient::Abstract => None,
        }
    }

    pub fn is_geodesic(&self) -> bool {
        !matches!(self, Ambient::Abstract)
    }

    /// Inverse of the `Display` form: `s1`..`s3`, `rp1`..`rp3`, `abstract`.
    pub fn parse(s: &str) -> Option<Ambient> {
        match s {
            "abstract" => Some(Ambient::Abstract),
            _ => {
                let (kind, n) = if let Some(n) = s.strip_prefix("rp") {
                    ("rp", n)
                } else if let Some(n) = s.strip_prefix('s') {
                    ("s", n)
                } else {
                    return None;
                };
                let n: usize = n.parse().ok()?;
                match kind {
                    "s" => Some(Ambient::Sphere { n }),
                    _ => Some(Ambient::Projective { n }),
                }
            }
        }
    }
}

impl std::fmt::Display for Ambient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ambient::Sphere { n } => write!(f, "s{n}"),
            Ambient::Projective { n } => write!(f, "rp{n}"),
            Ambient::Abstract => write!(f, "abstract"),
        }
    }
}

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("a point on S^n needs n >= 1, got {0} coordinates")]
    TooFewCoordinates(usize),
    #[error("cannot normalize a (near-)zero vector")]
    ZeroVector,
    #[error("strategy {strategy} is unsupported on {ambient}")]
    UnsupportedStrategy { strategy: String, ambient: String },
    #[error("operation requires a nonempty point cloud")]
    EmptyCloud,
    #[error("operation requires a geodesic ambient, got abstract")]
    AbstractAmbient,
    #[error("clouds live in different ambients: {0} vs {1}")]
    AmbientMismatch(String, String),
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}
