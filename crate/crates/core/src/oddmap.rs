//! The odd map witnessing connectivity upper bounds.
//!
//! When `k` projective balls of radius `delta/2` cover `RP^n`, the map
//! `p -> (f_1(p), ..., f_k(p)) / |...|` sends the Vietoris--Rips complex
//! `vr(S^n, pi - delta)` to `S^{k-1}` and is odd, which caps the complex's
//! connectivity below `k - 1`. This module constructs the map from certified
//! center sets, evaluates it on weighted simplices, and stress-tests the two
//! properties everything hinges on: the pre-normalization norm stays away
//! from the origin, and evaluation is exactly odd.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covering::{certify_cover_on_grid, CoveringError};
use crate::geometry::{
    sphere_dist, Ambient, FinitePointCloud, GeometryError, ProjectivePoint, SpherePoint,
};

#[derive(Debug, Error)]
pub enum OddMapError {
    #[error("no tabulated center set for RP^{n} with k = {k}")]
    CentersUnavailable { n: usize, k: usize },
    #[error(
        "balls of radius {radius:.6} around the centers do not cover RP^{n}: \
         verification grid point at distance {achieved:.6}"
    )]
    CoverageGateFailed { n: usize, radius: f64, achieved: f64 },
    #[error("delta must lie in (0, pi), got {0}")]
    BadDelta(f64),
    #[error("support diameter {diameter:.6} is not below the scale {scale:.6}: not a simplex")]
    NotASimplex { diameter: f64, scale: f64 },
    #[error("support meets both B[x_{i}; delta/2] and B[-x_{i}; delta/2]: well-definedness violated")]
    WellDefinednessViolated { i: usize },
    #[error("weights must be positive and sum to 1, got sum {0}")]
    BadWeights(f64),
    #[error("support and weights have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("map hits the origin: pre-normalization norm {0:.3e}")]
    OriginHit(f64),
    #[error("odd map verification needs a sphere cloud of dimension {expected}, got {got}")]
    WrongAmbient { expected: usize, got: String },
    #[error(transparent)]
    Covering(#[from] CoveringError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A certified odd-map instance: `k` projective centers whose `delta/2`
/// balls cover `RP^n` (checked against a dense grid at construction), with
/// their exact antipodal lifts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OddMapSpec {
    pub n: usize,
    pub delta: f64,
    pub centers: Vec<ProjectivePoint>,
    pub lifted: Vec<(SpherePoint, SpherePoint)>,
}

/// Verification grid sizes chosen so the grid mesh is well below the 0.01
/// slack the coverage-gate tests operate at (n = 3 is necessarily coarser).
fn verification_grid_size(n: usize) -> usize {
    match n {
        1 => 10_000,
        2 => 300_000,
        _ => 40_000,
    }
}

impl OddMapSpec {
    /// Gate and build: fails before any evaluation when the balls of radius
    /// `delta/2` do not cover the verification grid.
    pub fn new(
        n: usize,
        delta: f64,
        centers: Vec<ProjectivePoint>,
    ) -> Result<Self, OddMapError> {
        if !(delta > 0.0 && delta < std::f64::consts::PI) {
            return Err(OddMapError::BadDelta(delta));
        }
        let center_cloud = FinitePointCloud::from_projective_points(n, centers.clone())?;
        let achieved = certify_cover_on_grid(&center_cloud, verification_grid_size(n))?;
        if achieved > delta / 2.0 {
            return Err(OddMapError::CoverageGateFailed {
                n,
                radius: delta / 2.0,
                achieved,
            });
        }
        let lifted = centers.iter().map(|c| c.lift()).collect();
        Ok(OddMapSpec {
            n,
            delta,
            centers,
            lifted,
        })
    }

    /// Spec with the tabulated optimal center sets.
    pub fn with_known_centers(n: usize, k: usize, delta: f64) -> Result<Self, OddMapError> {
        Self::new(n, delta, known_centers(n, k)?)
    }

    pub fn k(&self) -> usize {
        self.centers.len()
    }

    /// The Vietoris--Rips scale this map is defined on.
    pub fn scale(&self) -> f64 {
        std::f64::consts::PI - self.delta
    }
}

/// Optimal covering centers for `RP^n`: evenly spaced half-circle points for
/// `n = 1`; coordinate axes (octahedron) and icosahedral axes for `n = 2`.
pub fn known_centers(n: usize, k: usize) -> Result<Vec<ProjectivePoint>, OddMapError> {
    let coords: Vec<Vec<f64>> = match (n, k) {
        (1, _) if k >= 1 => (0..k)
            .map(|j| {
                let t = std::f64::consts::PI * j as f64 / k as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        (2, 1) => vec![vec![0.0, 0.0, 1.0]],
        (2, 2) => vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]],
        (2, 3) => vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ],
        (2, 6) => {
            let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
            vec![
                vec![0.0, 1.0, phi],
                vec![0.0, 1.0, -phi],
                vec![1.0, phi, 0.0],
                vec![1.0, -phi, 0.0],
                vec![phi, 0.0, 1.0],
                vec![-phi, 0.0, 1.0],
            ]
        }
        _ => return Err(OddMapError::CentersUnavailable { n, k }),
    };
    Ok(coords
        .into_iter()
        .map(|c| ProjectivePoint::from_coords(c).expect("nonzero center coordinates"))
        .collect())
}

/// A point of the Vietoris--Rips complex: a formal convex combination of
/// sphere points whose pairwise distances stay below the scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedPoint {
    pub support: Vec<SpherePoint>,
    pub weights: Vec<f64>,
}

impl WeightedPoint {
    pub fn new(support: Vec<SpherePoint>, weights: Vec<f64>) -> Result<Self, OddMapError> {
        if support.len() != weights.len() {
            return Err(OddMapError::LengthMismatch(support.len(), weights.len()));
        }
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|&w| w <= 0.0) || (sum - 1.0).abs() > 1e-12 {
            return Err(OddMapError::BadWeights(sum));
        }
        Ok(WeightedPoint { support, weights })
    }

    /// The image under the antipodal map: every support point negated,
    /// weights unchanged. Negation is coordinate-exact.
    pub fn antipodal(&self) -> Self {
        WeightedPoint {
            support: self.support.iter().map(SpherePoint::antipode).collect(),
            weights: self.weights.clone(),
        }
    }

    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for (a, y) in self.support.iter().enumerate() {
            for z in &self.support[a + 1..] {
                d = d.max(sphere_dist(y, z).expect("support points share a dimension"));
            }
        }
        d
    }
}

/// The `i`-th coordinate function. With `x = x_i`: if the support misses the
/// closed ball `B[-x; delta/2]` the value is
/// `sum_j w_j * max(0, delta/2 - d(y_j, x))`
/// (the distance from `y_j` to the complement of `B[x; delta/2]`, by the
/// geodesic-ball identity); if it misses `B[x; delta/2]` instead, the value
/// is the negated mirror; if it misses both, the branches agree on 0.
pub fn eval_fi(p: &WeightedPoint, i: usize, spec: &OddMapSpec) -> Result<f64, OddMapError> {
    let scale = spec.scale();
    let diameter = p.diameter();
    if diameter >= scale {
        return Err(OddMapError::NotASimplex { diameter, scale });
    }
    let (pos, neg) = &spec.lifted[i];
    let half = spec.delta / 2.0;

    let misses = |center: &SpherePoint| -> bool {
        p.support
            .iter()
            .all(|y| sphere_dist(y, center).expect("same dimension") > half)
    };
    let depth_sum = |center: &SpherePoint| -> f64 {
        p.support
            .iter()
            .zip(&p.weights)
            .map(|(y, w)| w * (half - sphere_dist(y, center).expect("same dimension")).max(0.0))
            .sum()
    };

    if misses(neg) {
        Ok(depth_sum(pos))
    } else if misses(pos) {
        Ok(-depth_sum(neg))
    } else {
        Err(OddMapError::WellDefinednessViolated { i })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OddMapValue {
    /// Normalized image on `S^{k-1}`.
    pub direction: Vec<f64>,
    pub prenorm: f64,
}

/// Full map `(f_1, ..., f_k)` normalized to the unit sphere. An origin hit
/// (pre-normalization norm below 1e-12) is a falsification event and is
/// returned as an error, never silently renormalized.
pub fn eval_odd_map(p: &WeightedPoint, spec: &OddMapSpec) -> Result<OddMapValue, OddMapError> {
    let raw: Vec<f64> = (0..spec.k())
        .map(|i| eval_fi(p, i, spec))
        .collect::<Result<_, _>>()?;
    let prenorm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
    if prenorm < 1e-12 {
        return Err(OddMapError::OriginHit(prenorm));
    }
    Ok(OddMapValue {
        direction: raw.iter().map(|v| v / prenorm).collect(),
        prenorm,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OddMapFailure {
    pub trial: usize,
    pub support: Vec<u32>,
    pub weights: Vec<f64>,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OddMapReport {
    pub trials: usize,
    pub min_prenorm: f64,
    pub max_odd_defect: f64,
    pub well_definedness_violations: usize,
    pub failures: Vec<OddMapFailure>,
}

/// Sample random simplices of `vr(cloud, pi - delta)` with Dirichlet(1)
/// weights, evaluate the map on each together with its antipodal image, and
/// report the worst pre-normalization norm and oddness defect. Failures are
/// surfaced with the offending simplex.
pub fn verify_oddmap(
    cloud: &FinitePointCloud,
    spec: &OddMapSpec,
    trials: usize,
    seed: u64,
) -> Result<OddMapReport, OddMapError> {
    let points = match (cloud.ambient(), cloud.points()) {
        (Ambient::Sphere { n }, crate::geometry::PointSet::Sphere(pts)) if n == spec.n => pts,
        (ambient, _) => {
            return Err(OddMapError::WrongAmbient {
                expected: spec.n,
                got: ambient.to_string(),
            })
        }
    };
    let scale = spec.scale();
    let max_support = spec.n + 3;

    struct TrialOutcome {
        prenorm: f64,
        defect: f64,
        failure: Option<OddMapFailure>,
    }

    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
            let target = rng.gen_range(1..=max_support);
            let mut support_idx: Vec<u32> = vec![rng.gen_range(0..cloud.len()) as u32];
            // grow by rejection: candidates must stay strictly within the
            // scale of every current member
            let mut attempts = 0;
            while support_idx.len() < target && attempts < 200 {
                attempts += 1;
                let c = rng.gen_range(0..cloud.len()) as u32;
                if support_idx.contains(&c) {
                    continue;
                }
                if support_idx
                    .iter()
                    .all(|&s| cloud.dist(s as usize, c as usize) < scale)
                {
                    support_idx.push(c);
                }
            }
            support_idx.sort_unstable();
            let raw_weights: Vec<f64> = (0..support_idx.len())
                .map(|_| -(rng.gen_range(f64::EPSILON..1.0f64)).ln())
                .collect();
            let sum: f64 = raw_weights.iter().sum();
            let weights: Vec<f64> = raw_weights.iter().map(|w| w / sum).collect();
            let support: Vec<SpherePoint> = support_idx
                .iter()
                .map(|&i| points[i as usize].clone())
                .collect();
            let p = WeightedPoint { support, weights };

            let fail = |reason: String| TrialOutcome {
                prenorm: f64::INFINITY,
                defect: 0.0,
                failure: Some(OddMapFailure {
                    trial: t,
                    support: support_idx.clone(),
                    weights: p.weights.clone(),
                    reason,
                }),
            };
            let raw: Result<Vec<f64>, _> =
                (0..spec.k()).map(|i| eval_fi(&p, i, spec)).collect();
            let mirrored: Result<Vec<f64>, _> = {
                let q = p.antipodal();
                (0..spec.k()).map(|i| eval_fi(&q, i, spec)).collect()
            };
            match (raw, mirrored) {
                (Ok(f), Ok(g)) => {
                    let prenorm = f.iter().map(|v| v * v).sum::<f64>().sqrt();
                    let defect = f
                        .iter()
                        .zip(&g)
                        .map(|(a, b)| (a + b) * (a + b))
                        .sum::<f64>()
                        .sqrt();
                    if prenorm < 1e-12 {
                        fail(format!("origin hit: pre-normalization norm {prenorm:.3e}"))
                    } else {
                        TrialOutcome {
                            prenorm,
                            defect,
                            failure: None,
                        }
                    }
                }
                (Err(e), _) | (_, Err(e)) => fail(e.to_string()),
            }
        })
        .collect();

    let mut report = OddMapReport {
        trials,
        min_prenorm: f64::INFINITY,
        max_odd_defect: 0.0,
        well_definedness_violations: 0,
        failures: Vec::new(),
    };
    for o in outcomes {
        report.min_prenorm = report.min_prenorm.min(o.prenorm);
        report.max_odd_defect = report.max_odd_defect.max(o.defect);
        if let Some(f) = o.failure {
            if f.reason.contains("well-definedness") {
                report.well_definedness_violations += 1;
            }
            report.failures.push(f);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{sample_space, SampleStrategy};
    use std::f64::consts::PI;

    fn rp1_spec(k: usize, delta: f64) -> OddMapSpec {
        OddMapSpec::with_known_centers(1, k, delta).unwrap()
    }

    #[test]
    fn coverage_gate_passes_and_fails_around_two_cov() {
        // RP^1, k = 3: 2 cov = pi/3
        assert!(OddMapSpec::with_known_centers(1, 3, PI / 3.0 + 0.01).is_ok());
        match OddMapSpec::with_known_centers(1, 3, PI / 3.0 - 0.01) {
            Err(OddMapError::CoverageGateFailed { .. }) => {}
            other => panic!("expected coverage failure, got {other:?}"),
        }
        // RP^2, k = 3 (octahedral axes): 2 cov = arccos(-1/3)
        let two_cov = (-1.0f64 / 3.0).acos();
        assert!(OddMapSpec::with_known_centers(2, 3, two_cov + 0.01).is_ok());
        assert!(matches!(
            OddMapSpec::with_known_centers(2, 3, two_cov - 0.01),
            Err(OddMapError::CoverageGateFailed { .. })
        ));
    }

    #[test]
    fn icosahedral_axes_cover_at_the_table_value() {
        let two_cov = 2.0 * ((5.0 + 2.0 * 5.0_f64.sqrt()) / 15.0).sqrt().acos();
        assert!(OddMapSpec::with_known_centers(2, 6, two_cov + 0.01).is_ok());
        assert!(matches!(
            OddMapSpec::with_known_centers(2, 6, two_cov - 0.01),
            Err(OddMapError::CoverageGateFailed { .. })
        ));
    }

    #[test]
    fn point_masses_at_centers_and_far_points() {
        let spec = rp1_spec(3, PI / 3.0 + 0.01);
        let half = spec.delta / 2.0;
        let (x1, neg_x1) = spec.lifted[0].clone();
        let at = |p: SpherePoint| WeightedPoint::new(vec![p], vec![1.0]).unwrap();

        assert!((eval_fi(&at(x1.clone()), 0, &spec).unwrap() - half).abs() < 1e-15);
        assert!((eval_fi(&at(neg_x1), 0, &spec).unwrap() + half).abs() < 1e-15);
        // a point orthogonal to x_1 sits outside both balls
        let y = SpherePoint::circle(PI / 2.0);
        assert_eq!(eval_fi(&at(y), 0, &spec).unwrap(), 0.0);
    }

    #[test]
    fn point_mass_at_x1_maps_to_e1() {
        let spec = rp1_spec(3, PI / 3.0 + 0.01);
        let p = WeightedPoint::new(vec![spec.lifted[0].0.clone()], vec![1.0]).unwrap();
        let v = eval_odd_map(&p, &spec).unwrap();
        assert!((v.direction[0] - 1.0).abs() < 1e-12);
        assert!(v.direction[1].abs() < 1e-12 && v.direction[2].abs() < 1e-12);
        assert!((v.prenorm - spec.delta / 2.0).abs() < 1e-12);
    }

    #[test]
    fn oddness_is_exact_for_point_evaluations() {
        let spec = rp1_spec(3, PI / 3.0 + 0.01);
        for theta in [0.1, 0.9, 2.2, 4.0, 5.5] {
            let p = WeightedPoint::new(
                vec![SpherePoint::circle(theta), SpherePoint::circle(theta + 0.3)],
                vec![0.4, 0.6],
            )
            .unwrap();
            let q = p.antipodal();
            for i in 0..3 {
                let a = eval_fi(&p, i, &spec).unwrap();
                let b = eval_fi(&q, i, &spec).unwrap();
                assert_eq!(a, -b, "theta={theta} i={i}");
            }
        }
    }

    #[test]
    fn linear_in_weights() {
        let spec = rp1_spec(3, PI / 3.0 + 0.01);
        let support = vec![SpherePoint::circle(0.2), SpherePoint::circle(0.7)];
        let f = |w: Vec<f64>| {
            eval_fi(&WeightedPoint::new(support.clone(), w).unwrap(), 0, &spec).unwrap()
        };
        let (a, b) = (f(vec![0.3, 0.7]), f(vec![0.8, 0.2]));
        for alpha in [0.25, 0.5, 0.75] {
            let mixed = f(vec![
                alpha * 0.3 + (1.0 - alpha) * 0.8,
                alpha * 0.7 + (1.0 - alpha) * 0.2,
            ]);
            assert!((mixed - (alpha * a + (1.0 - alpha) * b)).abs() < 1e-12);
        }
    }

    #[test]
    fn oversized_simplex_is_rejected() {
        let spec = rp1_spec(4, 1.0);
        let p = WeightedPoint::new(
            vec![SpherePoint::circle(0.0), SpherePoint::circle(3.0)],
            vec![0.5, 0.5],
        )
        .unwrap();
        assert!(matches!(
            eval_fi(&p, 0, &spec),
            Err(OddMapError::NotASimplex { .. })
        ));
    }

    #[test]
    fn complement_distance_identity_on_a_dense_grid() {
        // d(y, S^1 \ B[x; h]) == max(0, h - d(y, x)), checked against a
        // discretized complement
        let grid: Vec<SpherePoint> = (0..20_000)
            .map(|i| SpherePoint::circle(2.0 * PI * i as f64 / 20_000.0))
            .collect();
        let x = SpherePoint::circle(1.1);
        let h = 0.8;
        for ty in [0.0, 0.5, 1.0, 1.3, 2.5, 4.0] {
            let y = SpherePoint::circle(ty);
            let discretized = grid
                .iter()
                .filter(|z| sphere_dist(z, &x).unwrap() > h)
                .map(|z| sphere_dist(&y, z).unwrap())
                .fold(f64::INFINITY, f64::min);
            let closed = (h - sphere_dist(&y, &x).unwrap()).max(0.0);
            assert!(
                (discretized - closed).abs() < 1e-3,
                "y at {ty}: {discretized} vs {closed}"
            );
        }
    }

    #[test]
    fn verification_run_is_clean_on_the_circle() {
        let spec = rp1_spec(3, PI / 3.0 + 0.01);
        let cloud = sample_space(
            Ambient::Sphere { n: 1 },
            60,
            SampleStrategy::EvenlySpacedCircle,
            0,
        )
        .unwrap();
        let report = verify_oddmap(&cloud, &spec, 500, 9).unwrap();
        assert!(report.failures.is_empty(), "{:?}", report.failures.first());
        assert_eq!(report.well_definedness_violations, 0);
        assert!(report.min_prenorm > 0.0);
        assert!(report.max_odd_defect < 1e-12);
    }

    #[test]
    fn verification_rejects_wrong_ambient() {
        let spec = rp1_spec(3, PI / 3.0 + 0.01);
        let cloud = sample_space(Ambient::Projective { n: 1 }, 30, SampleStrategy::Grid, 0)
            .unwrap();
        assert!(matches!(
            verify_oddmap(&cloud, &spec, 10, 0),
            Err(OddMapError::WrongAmbient { .. })
        ));
    }

    #[test]
    fn weighted_point_validation() {
        let s = vec![SpherePoint::circle(0.0)];
        assert!(WeightedPoint::new(s.clone(), vec![1.0]).is_ok());
        assert!(matches!(
            WeightedPoint::new(s.clone(), vec![0.5]),
            Err(OddMapError::BadWeights(_))
        ));
        assert!(matches!(
            WeightedPoint::new(s, vec![0.5, 0.5]),
            Err(OddMapError::LengthMismatch(1, 2))
        ));
    }
}
