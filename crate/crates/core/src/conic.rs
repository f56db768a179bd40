//! Connectivity lower bounds from ball intersections.
//!
//! A finite space whose every `(2k+2)`-tuple of open `r`-balls has a common
//! point (a witness, itself a point of the space) has a `k`-connected
//! Vietoris--Rips complex at scale `r`. This module checks that criterion
//! exhaustively or by sampling, derives the sphere threshold
//! `r* = pi - cov_{S^n}(2k+2)`, implements the volume variant, and runs
//! perturbation (rigidity) experiments around a certified instance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covering::{known_cov, solve_cov, CoveringError, SolveConfig};
use crate::geometry::{perturb_within, Ambient, FinitePointCloud, GeometryError};

pub const DEFAULT_TUPLE_BUDGET: u64 = 2_000_000;

#[derive(Debug, Error)]
pub enum ConicError {
    #[error("need at least {needed} points for a level-{k} check, cloud has {got}")]
    TooFewPoints { needed: usize, k: usize, got: usize },
    #[error("scale must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("exhaustive check needs {count} tuples, over the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u64 },
    #[error("no covering value available for S^{n} with {m} balls")]
    CovUnavailable { n: usize, m: usize },
    #[error("volume bound needs a sphere/projective ambient with n in 1..=2, got {0}")]
    UnsupportedAmbient(String),
    #[error("rigidity margin needs r > rho, got r = {r}, rho = {rho}")]
    EmptyMargin { rho: f64, r: f64 },
    #[error("no certificate holds at scale {r} (level {k}), so there is nothing to perturb")]
    NoBaselineCertificate { r: f64, k: usize },
    #[error(transparent)]
    Covering(#[from] CoveringError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConicMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConicConfig {
    pub mode: ConicMode,
    pub tuple_budget: u64,
    pub seed: u64,
}

impl Default for ConicConfig {
    fn default() -> Self {
        ConicConfig {
            mode: ConicMode::Exhaustive,
            tuple_budget: DEFAULT_TUPLE_BUDGET,
            seed: 0,
        }
    }
}

/// Outcome of a ball-intersection check. In exhaustive mode with
/// `witness_found_for_all`, `conn(vr(cloud, r)) >= k` is certified.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConicCertificate {
    pub r: f64,
    pub k: usize,
    pub mode: ConicMode,
    pub tuples_checked: u64,
    pub witness_found_for_all: bool,
    /// Lexicographically first tuple with no common witness, when one exists.
    pub failing_tuple: Option<Vec<u32>>,
}

/// Open-ball membership as bit rows: `rows[i]` holds the points strictly
/// within `r` of point `i`. A tuple of balls intersects iff the AND of its
/// rows is nonzero.
struct BallRows {
    blocks: usize,
    rows: Vec<Vec<u64>>,
}

impl BallRows {
    fn build(cloud: &FinitePointCloud, r: f64) -> Self {
        let n = cloud.len();
        let blocks = n.div_ceil(64);
        let rows = (0..n)
            .map(|i| {
                let mut row = vec![0u64; blocks];
                for v in 0..n {
                    if cloud.dist(i, v) < r {
                        row[v / 64] |= 1u64 << (v % 64);
                    }
                }
                row
            })
            .collect();
        BallRows { blocks, rows }
    }

    fn tuple_has_witness(&self, tuple: &[u32]) -> bool {
        (0..self.blocks).any(|b| {
            tuple
                .iter()
                .fold(u64::MAX, |acc, &i| acc & self.rows[i as usize][b])
                != 0
        })
    }
}

fn binomial(n: usize, m: usize) -> u128 {
    if m > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..m {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    acc
}

/// Check whether every `(2k+2)`-tuple of distinct points admits a common
/// open-ball witness at scale `r`.
pub fn conic_check(
    cloud: &FinitePointCloud,
    r: f64,
    k: usize,
    config: &ConicConfig,
) -> Result<ConicCertificate, ConicError> {
    if r <= 0.0 {
        return Err(ConicError::NonPositiveScale(r));
    }
    let m = 2 * k + 2;
    let n = cloud.len();
    if n < m {
        return Err(ConicError::TooFewPoints {
            needed: m,
            k,
            got: n,
        });
    }
    let rows = BallRows::build(cloud, r);

    match config.mode {
        ConicMode::Exhaustive => {
            let count = binomial(n, m);
            if count > config.tuple_budget as u128 {
                return Err(ConicError::BudgetExceeded {
                    count,
                    budget: config.tuple_budget,
                });
            }
            // parallel over the first index; each chunk stops at its own
            // first failure, and the lexicographic minimum across chunks is
            // schedule-independent
            let per_first: Vec<(u64, Option<Vec<u32>>)> = (0..=n - m)
                .into_par_iter()
                .map(|first| scan_combinations_with_first(&rows, n, m, first))
                .collect();
            let tuples_checked = per_first.iter().map(|(c, _)| c).sum();
            let failing_tuple = per_first.into_iter().find_map(|(_, f)| f);
            Ok(ConicCertificate {
                r,
                k,
                mode: ConicMode::Exhaustive,
                tuples_checked,
                witness_found_for_all: failing_tuple.is_none(),
                failing_tuple,
            })
        }
        ConicMode::Sampled => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let mut failing: Option<Vec<u32>> = None;
            for _ in 0..config.tuple_budget {
                let mut tuple: Vec<u32> = rand::seq::index::sample(&mut rng, n, m)
                    .iter()
                    .map(|i| i as u32)
                    .collect();
                tuple.sort_unstable();
                if !rows.tuple_has_witness(&tuple)
                    && failing.as_ref().map_or(true, |f| tuple < *f)
                {
                    failing = Some(tuple);
                }
            }
            Ok(ConicCertificate {
                r,
                k,
                mode: ConicMode::Sampled,
                tuples_checked: config.tuple_budget,
                witness_found_for_all: failing.is_none(),
                failing_tuple: failing,
            })
        }
    }
}

/// Lexicographic scan of all `m`-combinations starting with `first`,
/// stopping at the first failure.
fn scan_combinations_with_first(
    rows: &BallRows,
    n: usize,
    m: usize,
    first: usize,
) -> (u64, Option<Vec<u32>>) {
    let mut tuple: Vec<u32> = (0..m).map(|j| (first + j) as u32).collect();
    if (tuple[m - 1] as usize) >= n {
        return (0, None);
    }
    let mut checked = 0u64;
    loop {
        checked += 1;
        if !rows.tuple_has_witness(&tuple) {
            return (checked, Some(tuple));
        }
        // advance the tail (positions 1..m) in lex order
        let mut pos = m - 1;
        loop {
            if (tuple[pos] as usize) < n - m + pos {
                tuple[pos] += 1;
                for j in pos + 1..m {
                    tuple[j] = tuple[j - 1] + 1;
                }
                break;
            }
            if pos == 1 {
                return (checked, None);
            }
            pos -= 1;
        }
        if (tuple[m - 1] as usize) >= n {
            return (checked, None);
        }
    }
}

/// Where the covering value backing a threshold comes from.
#[derive(Debug, Clone)]
pub enum CovSource {
    Known,
    Solved(SolveConfig),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Claim1Threshold {
    pub n: usize,
    pub k: usize,
    /// `pi - cov_{S^n}(2k+2)`: for every `r` above this, `vr(S^n, r)` is
    /// `k`-connected.
    pub r_star: f64,
    pub cov_value: f64,
    pub provenance: String,
}

/// Threshold scale above which the continuum complex `vr(S^n, r)` is
/// `k`-connected, from the covering radius with `2k+2` balls.
pub fn claim1_threshold(n: usize, k: usize, source: &CovSource) -> Result<Claim1Threshold, ConicError> {
    use std::f64::consts::PI;
    let m = 2 * k + 2;
    let ambient = Ambient::Sphere { n };
    let (cov_value, provenance) = match source {
        CovSource::Known => {
            let v = known_cov(ambient, m).ok_or(ConicError::CovUnavailable { n, m })?;
            // a certified threshold needs an exact covering value
            if !v.tight {
                return Err(ConicError::CovUnavailable { n, m });
            }
            (v.value, format!("known ({})", v.source))
        }
        CovSource::Solved(cfg) => {
            let sol = solve_cov(ambient, m, cfg)?;
            (
                sol.radius_certified,
                format!("solved (certified on {} grid points)", sol.cert_grid_size),
            )
        }
    };
    Ok(Claim1Threshold {
        n,
        k,
        r_star: PI - cov_value,
        cov_value,
        provenance,
    })
}

/// Volume criterion: `true` when a single open `r`-ball holds more than the
/// `(2k+1)/(2k+2)` fraction of the space, which forces every `(2k+2)`-tuple
/// of balls to intersect.
pub fn volume_conn_bound(ambient: Ambient, r: f64, k: usize) -> Result<bool, ConicError> {
    if r <= 0.0 {
        return Err(ConicError::NonPositiveScale(r));
    }
    let cap_fraction = |r: f64, n: usize| -> f64 {
        match n {
            1 => (r / std::f64::consts::PI).min(1.0),
            _ => ((1.0 - r.cos()) / 2.0).min(1.0),
        }
    };
    let fraction = match ambient {
        Ambient::Sphere { n: n @ (1 | 2) } => cap_fraction(r, n),
        Ambient::Projective { n: n @ (1 | 2) } => {
            // a ball in RP^n lifts to two antipodal caps on S^n
            (2.0 * cap_fraction(r.min(std::f64::consts::FRAC_PI_2), n)).min(1.0)
        }
        _ => return Err(ConicError::UnsupportedAmbient(ambient.to_string())),
    };
    let needed = (2 * k + 1) as f64 / (2 * k + 2) as f64;
    Ok(fraction > needed)
}

/// Theorem-style stability margin: spaces within Gromov--Hausdorff distance
/// `(r - rho)/2` of a certified instance inherit its connectivity bound.
pub fn rigidity_margin(rho: f64, r: f64) -> Result<f64, ConicError> {
    if r <= rho {
        return Err(ConicError::EmptyMargin { rho, r });
    }
    Ok((r - rho) / 2.0)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RigidityFailure {
    pub seed: u64,
    pub failing_tuple: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RigidityReport {
    pub r: f64,
    pub k: usize,
    pub nu: f64,
    /// Smallest scale at which the exhaustive certificate still passes.
    pub rho: f64,
    pub margin: f64,
    /// `nu < margin`; outside it the result is informational only.
    pub within_hypothesis: bool,
    pub trials: usize,
    pub persisted: usize,
    pub failures: Vec<RigidityFailure>,
}

/// Smallest scale (to `tol`) at which the exhaustive certificate passes,
/// given that it passes at `r_hi`. Passing is monotone in the scale.
fn certified_rho(
    cloud: &FinitePointCloud,
    r_hi: f64,
    k: usize,
    config: &ConicConfig,
    tol: f64,
) -> Result<f64, ConicError> {
    let mut lo = 0.0f64;
    let mut hi = r_hi;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if conic_check(cloud, mid, k, config)?.witness_found_for_all {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Perturb the cloud by at most `nu` pointwise, `trials` times, and rerun
/// the exhaustive check at scale `r`. Failures are reported, never dropped;
/// when `nu` is at or above the margin the run is flagged as outside the
/// stability hypothesis.
pub fn rigidity_experiment(
    cloud: &FinitePointCloud,
    r: f64,
    k: usize,
    nu: f64,
    trials: usize,
    seed: u64,
) -> Result<RigidityReport, ConicError> {
    let config = ConicConfig::default();
    let baseline = conic_check(cloud, r, k, &config)?;
    if !baseline.witness_found_for_all {
        return Err(ConicError::NoBaselineCertificate { r, k });
    }
    let rho = certified_rho(cloud, r, k, &config, 1e-9)?;
    let margin = rigidity_margin(rho, r)?;

    let mut persisted = 0usize;
    let mut failures = Vec::new();
    for t in 0..trials {
        let trial_seed = seed.wrapping_add(t as u64);
        let moved = perturb_within(cloud, nu, trial_seed)?;
        let cert = conic_check(&moved, r, k, &config)?;
        if cert.witness_found_for_all {
            persisted += 1;
        } else {
            failures.push(RigidityFailure {
                seed: trial_seed,
                failing_tuple: cert.failing_tuple.expect("failed certificate has a tuple"),
            });
        }
    }

    Ok(RigidityReport {
        r,
        k,
        nu,
        rho,
        margin,
        within_hypothesis: nu < margin,
        trials,
        persisted,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{sample_space, SampleStrategy};
    use crate::homology::{betti, Connectivity};
    use std::f64::consts::PI;

    fn circle(n: usize) -> FinitePointCloud {
        sample_space(Ambient::Sphere { n: 1 }, n, SampleStrategy::EvenlySpacedCircle, 0).unwrap()
    }

    #[test]
    fn hexagon_pairs_all_intersect() {
        let cert = conic_check(&circle(6), 2.0 * PI / 3.0 + 0.01, 0, &ConicConfig::default())
            .unwrap();
        assert!(cert.witness_found_for_all);
        assert_eq!(cert.tuples_checked, 15);
        assert!(cert.failing_tuple.is_none());
    }

    #[test]
    fn square_four_tuple_fails_at_level_one() {
        let cert =
            conic_check(&circle(4), PI / 2.0 + 0.01, 1, &ConicConfig::default()).unwrap();
        assert!(!cert.witness_found_for_all);
        assert_eq!(cert.tuples_checked, 1);
        assert_eq!(cert.failing_tuple, Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn cone_scale_passes_any_level() {
        let cloud = circle(10);
        for k in 0..=3 {
            let cert = conic_check(&cloud, PI + 0.5, k, &ConicConfig::default()).unwrap();
            assert!(cert.witness_found_for_all, "k={k}");
        }
    }

    #[test]
    fn monotone_in_scale() {
        let cloud = circle(12);
        let cfg = ConicConfig::default();
        let mut passed = false;
        for i in 1..=40 {
            let r = PI * i as f64 / 30.0;
            let now = conic_check(&cloud, r, 1, &cfg).unwrap().witness_found_for_all;
            assert!(!passed || now, "pass at smaller scale but fail at r={r}");
            passed = passed || now;
        }
        assert!(passed);
    }

    #[test]
    fn budget_and_preconditions() {
        let cloud = circle(40);
        let mut cfg = ConicConfig::default();
        cfg.tuple_budget = 100;
        match conic_check(&cloud, 1.0, 1, &cfg) {
            Err(ConicError::BudgetExceeded { count, budget: 100 }) => {
                assert_eq!(count, binomial(40, 4));
            }
            other => panic!("expected budget error, got {other:?}"),
        }
        assert!(matches!(
            conic_check(&circle(4), 1.0, 2, &ConicConfig::default()),
            Err(ConicError::TooFewPoints { needed: 6, .. })
        ));
        assert!(matches!(
            conic_check(&circle(8), 0.0, 0, &ConicConfig::default()),
            Err(ConicError::NonPositiveScale(_))
        ));
    }

    #[test]
    fn sampled_mode_agrees_on_small_instances() {
        let cloud = circle(10);
        let cfg = ConicConfig {
            mode: ConicMode::Sampled,
            tuple_budget: 2_000,
            seed: 5,
        };
        let sampled = conic_check(&cloud, PI / 2.0, 1, &cfg).unwrap();
        let exact = conic_check(&cloud, PI / 2.0, 1, &ConicConfig::default()).unwrap();
        assert_eq!(sampled.mode, ConicMode::Sampled);
        // with 2000 draws over C(10,4)=210 tuples a failing tuple is found
        // whenever one exists
        assert_eq!(sampled.witness_found_for_all, exact.witness_found_for_all);
    }

    #[test]
    fn certificate_never_beats_homology() {
        use crate::complex::build_vr;
        let cloud = circle(14);
        let cfg = ConicConfig::default();
        for i in [4, 7, 10, 13, 16] {
            let r = PI * i as f64 / 16.0;
            for k in 0..=1usize {
                let cert = conic_check(&cloud, r, k, &cfg).unwrap();
                if cert.witness_found_for_all {
                    let cx = build_vr(&cloud, r, k + 1).unwrap();
                    let profile = betti(&cx).unwrap();
                    match profile.connectivity {
                        Connectivity::Value(c) => assert!(
                            c >= k as i64,
                            "conic k={k} at r={r} but homological connectivity {c}"
                        ),
                        Connectivity::AtLeast(c) => assert!(c >= k as i64),
                    }
                }
            }
        }
    }

    #[test]
    fn thresholds_match_closed_forms() {
        let t = claim1_threshold(1, 1, &CovSource::Known).unwrap();
        assert!((t.r_star - 3.0 * PI / 4.0).abs() < 1e-12);
        let t = claim1_threshold(1, 0, &CovSource::Known).unwrap();
        assert!((t.r_star - PI / 2.0).abs() < 1e-12);
        let t = claim1_threshold(2, 1, &CovSource::Known).unwrap();
        assert!((t.r_star - (PI - (1.0f64 / 3.0).acos())).abs() < 1e-12);
        assert!((t.r_star - 1.910633).abs() < 1e-6);
        // no tabulated value for S^2 with 2k+2 = 12? k=5 is present; k=3 is not
        assert!(matches!(
            claim1_threshold(2, 3, &CovSource::Known),
            Err(ConicError::CovUnavailable { n: 2, m: 8 })
        ));
    }

    #[test]
    fn solved_threshold_is_conservative() {
        let ambient = Ambient::Sphere { n: 1 };
        let t = claim1_threshold(1, 1, &CovSource::Solved(SolveConfig::quick(ambient))).unwrap();
        // the solved cov is an upper bound, so the threshold is a lower bound
        assert!(t.r_star <= 3.0 * PI / 4.0 + 1e-12);
        assert!(t.r_star > 3.0 * PI / 4.0 - 1e-3);
    }

    #[test]
    fn volume_bound_examples() {
        assert!(volume_conn_bound(Ambient::Sphere { n: 1 }, 0.8 * PI, 0).unwrap());
        let r = (-0.6f64).acos(); // cap fraction 0.8
        assert!(volume_conn_bound(Ambient::Sphere { n: 2 }, r, 1).unwrap());
        assert!(!volume_conn_bound(Ambient::Sphere { n: 2 }, PI / 2.0, 1).unwrap());
        assert!(volume_conn_bound(Ambient::Projective { n: 1 }, 0.3 * PI, 0).unwrap());
        assert!(matches!(
            volume_conn_bound(Ambient::Sphere { n: 3 }, 1.0, 0),
            Err(ConicError::UnsupportedAmbient(_))
        ));
    }

    #[test]
    fn margin_arithmetic() {
        let m = rigidity_margin(3.0 * PI / 4.0, 0.8 * PI).unwrap();
        assert!((m - PI / 40.0).abs() < 1e-12);
        assert!(matches!(
            rigidity_margin(1.0, 1.0),
            Err(ConicError::EmptyMargin { .. })
        ));
    }

    #[test]
    fn rigidity_with_zero_perturbation_is_identical() {
        // 12 points are too sparse to witness level 1 at this scale, so
        // exercise the pairs level; density questions belong to the caller
        let cloud = circle(12);
        let report = rigidity_experiment(&cloud, 0.8 * PI, 0, 0.0, 5, 3).unwrap();
        assert_eq!(report.persisted, 5);
        assert!(report.failures.is_empty());
        assert!(report.within_hypothesis);
        assert!(report.rho < 0.8 * PI);
    }

    #[test]
    fn rigidity_baseline_must_hold() {
        let cloud = circle(12);
        assert!(matches!(
            rigidity_experiment(&cloud, 0.3, 1, 0.01, 3, 0),
            Err(ConicError::NoBaselineCertificate { .. })
        ));
    }
}
