use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::point::{proj_dist, sphere_dist, ProjectivePoint, SpherePoint};
use super::{Ambient, GeometryError};

/// Dense symmetric distance matrix, row-major.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn from_rows(n: usize, data: Vec<f64>) -> Result<Self, GeometryError> {
        if data.len() != n * n {
            return Err(GeometryError::InvalidMatrix(format!(
                "expected {} entries, got {}",
                n * n,
                data.len()
            )));
        }
        let m = Self { n, data };
        for i in 0..n {
            if m.get(i, i) != 0.0 {
                return Err(GeometryError::InvalidMatrix(format!(
                    "nonzero diagonal at {i}"
                )));
            }
            for j in 0..i {
                let d = m.get(i, j);
                if d < 0.0 {
                    return Err(GeometryError::InvalidMatrix(format!(
                        "negative entry at ({i},{j})"
                    )));
                }
                if (d - m.get(j, i)).abs() > 1e-12 {
                    return Err(GeometryError::InvalidMatrix(format!(
                        "asymmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// Concrete coordinates behind a cloud, when it has any.
#[derive(Debug, Clone)]
pub enum PointSet {
    Sphere(Vec<SpherePoint>),
    Projective(Vec<ProjectivePoint>),
    None,
}

impl PointSet {
    pub fn len(&self) -> usize {
        match self {
            PointSet::Sphere(v) => v.len(),
            PointSet::Projective(v) => v.len(),
            PointSet::None => 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Distance between points `i` of `self` and `j` of `other`, which must be
    /// the same variant.
    pub fn cross_dist(&self, i: usize, other: &PointSet, j: usize) -> Result<f64, GeometryError> {
        match (self, other) {
            (PointSet::Sphere(a), PointSet::Sphere(b)) => sphere_dist(&a[i], &b[j]),
            (PointSet::Projective(a), PointSet::Projective(b)) => proj_dist(&a[i], &b[j]),
            _ => Err(GeometryError::AbstractAmbient),
        }
    }
}

/// A finite geodesic (or abstract) sample with its symmetric distance matrix;
/// the vertex set of every complex built by this crate.
#[derive(Debug, Clone)]
pub struct FinitePointCloud {
    ambient: Ambient,
    points: PointSet,
    dist: DistanceMatrix,
    seed: Option<u64>,
    strategy: Option<String>,
}

impl FinitePointCloud {
    pub fn from_sphere_points(
        n: usize,
        points: Vec<SpherePoint>,
    ) -> Result<Self, GeometryError> {
        for p in &points {
            if p.dim() != n {
                return Err(GeometryError::DimensionMismatch(p.dim(), n));
            }
        }
        let dist = pairwise(&points, |a, b| sphere_dist(a, b).unwrap());
        Ok(Self {
            ambient: Ambient::Sphere { n },
            points: PointSet::Sphere(points),
            dist,
            seed: None,
            strategy: None,
        })
    }

    pub fn from_projective_points(
        n: usize,
        points: Vec<ProjectivePoint>,
    ) -> Result<Self, GeometryError> {
        for p in &points {
            if p.dim() != n {
                return Err(GeometryError::DimensionMismatch(p.dim(), n));
            }
        }
        let dist = pairwise(&points, |a, b| proj_dist(a, b).unwrap());
        Ok(Self {
            ambient: Ambient::Projective { n },
            points: PointSet::Projective(points),
            dist,
            seed: None,
            strategy: None,
        })
    }

    /// Abstract finite metric space given by its matrix alone.
    pub fn from_matrix(dist: DistanceMatrix) -> Self {
        Self {
            ambient: Ambient::Abstract,
            points: PointSet::None,
            dist,
            seed: None,
            strategy: None,
        }
    }

    pub(crate) fn with_provenance(mut self, seed: u64, strategy: &str) -> Self {
        self.seed = Some(seed);
        self.strategy = Some(strategy.to_string());
        self
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist.get(i, j)
    }

    pub fn matrix(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn diameter(&self) -> f64 {
        let n = self.len();
        let mut d = 0.0f64;
        for i in 0..n {
            for j in 0..i {
                d = d.max(self.dist(i, j));
            }
        }
        d
    }

    pub fn to_json(&self) -> Result<String, GeometryError> {
        let points: Vec<Vec<f64>> = match &self.points {
            PointSet::Sphere(v) => v.iter().map(|p| p.coords().to_vec()).collect(),
            PointSet::Projective(v) => v.iter().map(|p| p.rep().coords().to_vec()).collect(),
            PointSet::None => {
                return Err(GeometryError::AbstractAmbient);
            }
        };
        let doc = CloudJson {
            ambient: self.ambient,
            points,
            seed: self.seed,
            strategy: self.strategy.clone(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    /// Distance matrices are recomputed on load, never serialized.
    pub fn from_json(s: &str) -> Result<Self, GeometryError> {
        let doc: CloudJson = serde_json::from_str(s)?;
        let mut cloud = match doc.ambient {
            Ambient::Sphere { n } => {
                let pts = doc
                    .points
                    .into_iter()
                    .map(SpherePoint::new)
                    .collect::<Result<Vec<_>, _>>()?;
                Self::from_sphere_points(n, pts)?
            }
            Ambient::Projective { n } => {
                let pts = doc
                    .points
                    .into_iter()
                    .map(ProjectivePoint::from_coords)
                    .collect::<Result<Vec<_>, _>>()?;
                Self::from_projective_points(n, pts)?
            }
            Ambient::Abstract => {
                return Err(GeometryError::AbstractAmbient);
            }
        };
        cloud.seed = doc.seed;
        cloud.strategy = doc.strategy;
        Ok(cloud)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<(), GeometryError> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Self, GeometryError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[derive(Serialize, Deserialize)]
struct CloudJson {
    ambient: Ambient,
    points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    strategy: Option<String>,
}

fn pairwise<P: Sync>(points: &[P], d: impl Fn(&P, &P) -> f64 + Sync) -> DistanceMatrix {
    let n = points.len();
    let data: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            if i == j {
                0.0
            } else if i < j {
                d(&points[i], &points[j])
            } else {
                d(&points[j], &points[i])
            }
        })
        .collect();
    DistanceMatrix { n, data }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_validation() {
        assert!(DistanceMatrix::from_rows(2, vec![0.0, 1.0, 1.0, 0.0]).is_ok());
        assert!(DistanceMatrix::from_rows(2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(DistanceMatrix::from_rows(2, vec![0.1, 1.0, 1.0, 0.0]).is_err());
        assert!(DistanceMatrix::from_rows(2, vec![0.0, -1.0, -1.0, 0.0]).is_err());
    }

    #[test]
    fn cloud_json_round_trip() {
        let pts = (0..5)
            .map(|i| SpherePoint::circle(i as f64))
            .collect::<Vec<_>>();
        let cloud = FinitePointCloud::from_sphere_points(1, pts).unwrap();
        let s = cloud.to_json().unwrap();
        let back = FinitePointCloud::from_json(&s).unwrap();
        assert_eq!(back.len(), 5);
        for i in 0..5 {
            for j in 0..5 {
                assert!((back.dist(i, j) - cloud.dist(i, j)).abs() < 1e-15);
            }
        }
    }
}
