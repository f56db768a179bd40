use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::cloud::{FinitePointCloud, PointSet};
use super::point::{ProjectivePoint, SpherePoint};
use super::{Ambient, GeometryError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleStrategy {
    UniformRandom,
    /// n = 1 only; point 0 at angle 0.
    EvenlySpacedCircle,
    /// n = 2 only.
    FibonacciS2,
    /// Deterministic quasi-uniform grid: evenly spaced for n = 1, Fibonacci
    /// lattice for n = 2, seeded uniform-random fallback for n = 3.
    Grid,
}

impl SampleStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            SampleStrategy::UniformRandom => "uniform-random",
            SampleStrategy::EvenlySpacedCircle => "evenly-spaced-circle",
            SampleStrategy::FibonacciS2 => "fibonacci-s2",
            SampleStrategy::Grid => "grid",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "uniform-random" => Some(Self::UniformRandom),
            "evenly-spaced-circle" => Some(Self::EvenlySpacedCircle),
            "fibonacci-s2" => Some(Self::FibonacciS2),
            "grid" => Some(Self::Grid),
            _ => None,
        }
    }
}

/// Unit vectors of the `count`-point Fibonacci lattice on `S^2`.
pub(crate) fn fibonacci_lattice(count: usize) -> Vec<[f64; 3]> {
    let golden = (1.0 + 5.0_f64.sqrt()) / 2.0;
    (0..count)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / count as f64;
            let theta = 2.0 * std::f64::consts::PI * (i as f64 / golden).fract();
            let r = (1.0 - z * z).max(0.0).sqrt();
            [r * theta.cos(), r * theta.sin(), z]
        })
        .collect()
}

fn random_unit(rng: &mut impl Rng, coords: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..coords)
            .map(|_| {
                // Box-Muller; rand's StandardNormal lives in rand_distr, keep it local
                let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
                let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                (-2.0 * u1.ln()).sqrt() * u2.cos()
            })
            .collect();
        if v.iter().map(|c| c * c).sum::<f64>().sqrt() > 1e-6 {
            return v;
        }
    }
}

/// Generate `count` points in the ambient space; deterministic given `seed`.
pub fn sample_space(
    ambient: Ambient,
    count: usize,
    strategy: SampleStrategy,
    seed: u64,
) -> Result<FinitePointCloud, GeometryError> {
    if count == 0 {
        return Err(GeometryError::EmptyCloud);
    }
    let n = ambient.dim().ok_or(GeometryError::AbstractAmbient)?;
    let unsupported = || GeometryError::UnsupportedStrategy {
        strategy: strategy.name().to_string(),
        ambient: ambient.to_string(),
    };

    let sphere_coords: Vec<Vec<f64>> = match (strategy, n) {
        (SampleStrategy::EvenlySpacedCircle, 1) | (SampleStrategy::Grid, 1) => {
            let span = match ambient {
                Ambient::Projective { .. } => std::f64::consts::PI,
                _ => std::f64::consts::TAU,
            };
            (0..count)
                .map(|i| {
                    let t = span * i as f64 / count as f64;
                    vec![t.cos(), t.sin()]
                })
                .collect()
        }
        (SampleStrategy::FibonacciS2, 2) | (SampleStrategy::Grid, 2) => {
            fibonacci_lattice(count).into_iter().map(|c| c.to_vec()).collect()
        }
        (SampleStrategy::UniformRandom, _) | (SampleStrategy::Grid, 3) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| random_unit(&mut rng, n + 1)).collect()
        }
        _ => return Err(unsupported()),
    };

    let cloud = match ambient {
        Ambient::Sphere { n } => {
            let pts = sphere_coords
                .into_iter()
                .map(SpherePoint::new)
                .collect::<Result<Vec<_>, _>>()?;
            FinitePointCloud::from_sphere_points(n, pts)?
        }
        Ambient::Projective { n } => {
            let pts = sphere_coords
                .into_iter()
                .map(ProjectivePoint::from_coords)
                .collect::<Result<Vec<_>, _>>()?;
            FinitePointCloud::from_projective_points(n, pts)?
        }
        Ambient::Abstract => unreachable!(),
    };
    Ok(cloud.with_provenance(seed, strategy.name()))
}

/// One-sided Hausdorff distance from `dense_grid` to `cloud`: the max over
/// grid points of the distance to the nearest cloud point.
pub fn covering_radius_of_sample(
    cloud: &FinitePointCloud,
    dense_grid: &FinitePointCloud,
) -> Result<f64, GeometryError> {
    if cloud.is_empty() {
        return Err(GeometryError::EmptyCloud);
    }
    if cloud.ambient() != dense_grid.ambient() {
        return Err(GeometryError::AmbientMismatch(
            cloud.ambient().to_string(),
            dense_grid.ambient().to_string(),
        ));
    }
    let cp = cloud.points();
    let gp = dense_grid.points();
    let worst = (0..dense_grid.len())
        .into_par_iter()
        .map(|g| {
            let mut best = f64::INFINITY;
            for c in 0..cloud.len() {
                let d = gp.cross_dist(g, cp, c).expect("same ambient");
                if d < best {
                    best = d;
                }
            }
            best
        })
        .reduce(|| 0.0, f64::max);
    Ok(worst)
}

/// Move each point along a random tangent direction by a distance drawn
/// uniformly from `[0, nu]`. Pointwise displacement is at most `nu`, so the
/// Gromov--Hausdorff distance to the original cloud is at most `nu`.
pub fn perturb_within(
    cloud: &FinitePointCloud,
    nu: f64,
    seed: u64,
) -> Result<FinitePointCloud, GeometryError> {
    let n = cloud.ambient().dim().ok_or(GeometryError::AbstractAmbient)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut step = |p: &SpherePoint| -> SpherePoint {
        if nu == 0.0 {
            return p.clone();
        }
        let u = loop {
            let g = random_unit(&mut rng, n + 1);
            let dot: f64 = g.iter().zip(p.coords()).map(|(a, b)| a * b).sum();
            let mut t: Vec<f64> = g
                .iter()
                .zip(p.coords())
                .map(|(a, b)| a - dot * b)
                .collect();
            let norm = t.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm > 1e-9 {
                t.iter_mut().for_each(|c| *c /= norm);
                break t;
            }
        };
        let t = rng.gen_range(0.0..=nu);
        p.geodesic_step(&u, t)
    };
    match cloud.points() {
        PointSet::Sphere(pts) => {
            let moved = pts.iter().map(&mut step).collect();
            Ok(FinitePointCloud::from_sphere_points(n, moved)?)
        }
        PointSet::Projective(pts) => {
            let moved = pts
                .iter()
                .map(|p| ProjectivePoint::new(step(p.rep())))
                .collect();
            Ok(FinitePointCloud::from_projective_points(n, moved)?)
        }
        PointSet::None => Err(GeometryError::AbstractAmbient),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn square_on_circle_distances() {
        let c = sample_space(Ambient::Sphere { n: 1 }, 4, SampleStrategy::EvenlySpacedCircle, 0)
            .unwrap();
        let mut ds: Vec<f64> = (0..4)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| c.dist(i, j))
            .collect();
        ds.sort_by(f64::total_cmp);
        for d in &ds[..4] {
            assert!((d - FRAC_PI_2).abs() < 1e-12);
        }
        for d in &ds[4..] {
            assert!((d - PI).abs() < 1e-12);
        }
    }

    #[test]
    fn hexagon_distance_multiset() {
        let c = sample_space(Ambient::Sphere { n: 1 }, 6, SampleStrategy::EvenlySpacedCircle, 0)
            .unwrap();
        for i in 0..6 {
            for j in 0..6 {
                if i == j {
                    continue;
                }
                let gap = (i as i64 - j as i64).rem_euclid(6).min((j as i64 - i as i64).rem_euclid(6));
                let expect = PI / 3.0 * gap as f64;
                assert!((c.dist(i, j) - expect).abs() < 1e-12, "{i},{j}");
            }
        }
    }

    #[test]
    fn projective_diameter_bound() {
        let c = sample_space(
            Ambient::Projective { n: 2 },
            500,
            SampleStrategy::UniformRandom,
            1,
        )
        .unwrap();
        for i in 0..c.len() {
            for j in 0..i {
                assert!(c.dist(i, j) <= FRAC_PI_2 + 1e-12);
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_space(Ambient::Sphere { n: 2 }, 50, SampleStrategy::UniformRandom, 9).unwrap();
        let b = sample_space(Ambient::Sphere { n: 2 }, 50, SampleStrategy::UniformRandom, 9).unwrap();
        let (PointSet::Sphere(pa), PointSet::Sphere(pb)) = (a.points(), b.points()) else {
            panic!()
        };
        for (x, y) in pa.iter().zip(pb) {
            assert_eq!(x.coords(), y.coords());
        }
    }

    #[test]
    fn single_point_covering_radius_approaches_pi() {
        let cloud = FinitePointCloud::from_sphere_points(
            1,
            vec![SpherePoint::new(vec![1.0, 0.0]).unwrap()],
        )
        .unwrap();
        let grid =
            sample_space(Ambient::Sphere { n: 1 }, 3600, SampleStrategy::EvenlySpacedCircle, 0)
                .unwrap();
        let r = covering_radius_of_sample(&cloud, &grid).unwrap();
        assert!((r - PI).abs() < 2.0 * PI / 3600.0);
    }

    #[test]
    fn hexagon_covering_radius_vs_fine_grid() {
        let cloud = sample_space(Ambient::Sphere { n: 1 }, 6, SampleStrategy::EvenlySpacedCircle, 0)
            .unwrap();
        let grid =
            sample_space(Ambient::Sphere { n: 1 }, 3600, SampleStrategy::EvenlySpacedCircle, 0)
                .unwrap();
        let r = covering_radius_of_sample(&cloud, &grid).unwrap();
        let mesh = PI / 3600.0;
        assert!((r - PI / 6.0).abs() <= mesh + 1e-12);
    }

    #[test]
    fn perturb_zero_is_identity() {
        let cloud = sample_space(Ambient::Sphere { n: 2 }, 20, SampleStrategy::FibonacciS2, 0)
            .unwrap();
        let moved = perturb_within(&cloud, 0.0, 3).unwrap();
        for i in 0..20 {
            for j in 0..20 {
                assert_eq!(cloud.dist(i, j), moved.dist(i, j));
            }
        }
    }

    #[test]
    fn perturb_displacement_and_distance_bounds() {
        let nu = 0.01;
        let cloud = sample_space(Ambient::Sphere { n: 1 }, 6, SampleStrategy::EvenlySpacedCircle, 0)
            .unwrap();
        let moved = perturb_within(&cloud, nu, 4).unwrap();
        let (PointSet::Sphere(a), PointSet::Sphere(b)) = (cloud.points(), moved.points()) else {
            panic!()
        };
        for (x, y) in a.iter().zip(b) {
            assert!(crate::geometry::sphere_dist(x, y).unwrap() <= nu + 1e-12);
        }
        for i in 0..6 {
            for j in 0..6 {
                assert!((cloud.dist(i, j) - moved.dist(i, j)).abs() <= 2.0 * nu + 1e-12);
            }
        }
    }
}
