//! Multistart minimax solver for `cov_X(k)`.
//!
//! Circle ambients are solved in angle space, where gap averaging converges
//! to evenly spaced centers (the known optimum). Higher spheres run
//! farthest-point-initialized Lloyd iterations with exact minimax
//! recentering (minimum enclosing ball of each cell, projected back to the
//! sphere), basin-hopped with geometrically annealed tangent kicks, then
//! polished directly against the fine certification grid. Every returned
//! radius is certified: the true covering radius of the centers is at most
//! `radius_achieved + grid_mesh`.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mesh::{grid_coords, grid_mesh};
use super::{known_cov, CoveringError, CoveringSolution, SolutionStatus};
use crate::geometry::{Ambient, PointSet};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveConfig {
    /// Coarse grid driving the multistart/annealing search.
    pub search_grid: usize,
    /// Fine grid used for polish and certification.
    pub cert_grid: usize,
    pub multistarts: usize,
    pub anneal_rounds: usize,
    /// Initial tangent kick magnitude (radians), decayed geometrically.
    pub kick_start: f64,
    /// Final tangent kick magnitude.
    pub kick_end: f64,
    /// Lloyd iterations against the certification grid.
    pub polish_iters: usize,
    pub seed: u64,
    /// Fail with `MeshTooCoarse` if the certification grid is coarser.
    pub max_mesh: Option<f64>,
}

impl SolveConfig {
    /// Defaults tuned so certified radii land within a couple of mesh widths
    /// of the known optima for the tabulated instances.
    pub fn default_for(ambient: Ambient) -> Self {
        let (search_grid, cert_grid, multistarts, anneal_rounds, polish_iters) = match ambient {
            Ambient::Sphere { n: 1 } => (3_600, 200_000, 1, 0, 0),
            Ambient::Projective { n: 1 } => (3_600, 100_000, 1, 0, 0),
            Ambient::Sphere { n: 2 } => (10_000, 4_000_000, 32, 200, 90),
            Ambient::Projective { n: 2 } => (10_000, 4_000_000, 32, 200, 90),
            _ => (12_000, 40_000, 16, 80, 15),
        };
        SolveConfig {
            search_grid,
            cert_grid,
            multistarts,
            anneal_rounds,
            kick_start: 0.3,
            kick_end: 1e-3,
            polish_iters,
            seed: 7,
            max_mesh: None,
        }
    }

    /// Much faster and correspondingly looser; for sweeps and smoke tests.
    pub fn quick(ambient: Ambient) -> Self {
        let mut cfg = Self::default_for(ambient);
        cfg.search_grid = cfg.search_grid.min(2_000);
        cfg.cert_grid = cfg.cert_grid.min(60_000);
        cfg.multistarts = cfg.multistarts.min(8);
        cfg.anneal_rounds = cfg.anneal_rounds.min(50);
        cfg.polish_iters = cfg.polish_iters.min(10);
        cfg
    }
}

/// Heuristically solve the `k`-center minimax problem on `ambient` and
/// certify the result against the configured grid.
pub fn solve_cov(
    ambient: Ambient,
    k: usize,
    cfg: &SolveConfig,
) -> Result<CoveringSolution, CoveringError> {
    if k == 0 {
        return Err(CoveringError::ZeroCenters);
    }
    let n = match ambient {
        Ambient::Sphere { n } | Ambient::Projective { n } if (1..=3).contains(&n) => n,
        _ => return Err(CoveringError::UnsupportedAmbient(ambient.to_string())),
    };

    let mesh = grid_mesh(ambient, cfg.cert_grid)?;
    if let Some(max_mesh) = cfg.max_mesh {
        if mesh > max_mesh {
            return Err(CoveringError::MeshTooCoarse {
                size: cfg.cert_grid,
                mesh,
                requested: max_mesh,
            });
        }
    }

    let (achieved, raw_centers) = if n == 1 {
        solve_circle(ambient, k, cfg)
    } else {
        solve_sphere(ambient, k, cfg)?
    };

    // canonicalize through the point types (sign normalization when
    // projective) and keep only the real coordinates
    let coords: Vec<Vec<f64>> = raw_centers
        .iter()
        .map(|c| c[..n + 1].to_vec())
        .collect();
    let cloud = super::centers_to_cloud(ambient, &coords)?;
    let centers: Vec<Vec<f64>> = match cloud.points() {
        PointSet::Sphere(pts) => pts.iter().map(|p| p.coords().to_vec()).collect(),
        PointSet::Projective(pts) => pts.iter().map(|p| p.rep().coords().to_vec()).collect(),
        PointSet::None => unreachable!("geodesic ambient"),
    };

    let radius_certified = achieved + mesh;
    let status = match known_cov(ambient, k) {
        Some(v) if v.tight && (achieved - v.value).abs() <= mesh + 1e-6 => {
            SolutionStatus::MatchesKnownExact
        }
        _ => SolutionStatus::HeuristicUpperBound,
    };

    Ok(CoveringSolution {
        ambient,
        k,
        centers,
        radius_achieved: achieved,
        grid_mesh: mesh,
        radius_certified,
        status,
        cert_grid_size: cfg.cert_grid,
        seed: cfg.seed,
    })
}

// ---------------------------------------------------------------------------
// circle ambients: angle space
// ---------------------------------------------------------------------------

/// `S^1` is a circle of circumference `2 pi`; `RP^1` with the quotient metric
/// is a circle of circumference `pi`. Gap averaging drives the centers to
/// even spacing, the unique minimax optimum.
fn solve_circle(ambient: Ambient, k: usize, cfg: &SolveConfig) -> (f64, Vec<[f64; 4]>) {
    let span = match ambient {
        Ambient::Projective { .. } => PI,
        _ => TAU,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..span)).collect();
    angles.sort_by(f64::total_cmp);

    for _ in 0..20_000 {
        let gap = |i: usize| {
            let next = if i + 1 == k { angles[0] + span } else { angles[i + 1] };
            next - angles[i]
        };
        let before: Vec<f64> = (0..k).map(|i| gap(if i == 0 { k - 1 } else { i - 1 })).collect();
        let after: Vec<f64> = (0..k).map(gap).collect();
        let mut moved = 0.0f64;
        for i in 0..k {
            let delta = (after[i] - before[i]) / 4.0;
            angles[i] = (angles[i] + delta).rem_euclid(span);
            moved = moved.max(delta.abs());
        }
        angles.sort_by(f64::total_cmp);
        if moved < 1e-13 {
            break;
        }
    }

    let circ_dist = |a: f64, b: f64| {
        let d = (a - b).rem_euclid(span);
        d.min(span - d)
    };
    let size = cfg.cert_grid;
    let achieved = (0..size)
        .into_par_iter()
        .map(|j| {
            let t = span * j as f64 / size as f64;
            angles
                .iter()
                .map(|&a| circ_dist(t, a))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| 0.0, f64::max);

    let centers = angles
        .iter()
        .map(|&a| [a.cos(), a.sin(), 0.0, 0.0])
        .collect();
    (achieved, centers)
}

// ---------------------------------------------------------------------------
// S^2, RP^2, S^3: Lloyd + annealing on coordinate grids
// ---------------------------------------------------------------------------

#[inline]
fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

#[inline]
fn normalize(mut v: [f64; 4]) -> [f64; 4] {
    let n = dot(&v, &v).sqrt();
    if n > 1e-12 {
        v.iter_mut().for_each(|c| *c /= n);
    } else {
        v = [1.0, 0.0, 0.0, 0.0];
    }
    v
}

/// Nearness score: cosine of the geodesic distance. Higher is closer.
#[inline]
fn score(p: &[f64; 4], c: &[f64; 4], proj: bool) -> f64 {
    let d = dot(p, c);
    if proj {
        d.abs()
    } else {
        d
    }
}

fn solve_sphere(
    ambient: Ambient,
    k: usize,
    cfg: &SolveConfig,
) -> Result<(f64, Vec<[f64; 4]>), CoveringError> {
    let proj = matches!(ambient, Ambient::Projective { .. });
    let coarse = grid_coords(ambient, cfg.search_grid)?;
    if k > coarse.len() {
        return Err(CoveringError::TooManyCenters {
            k,
            grid: coarse.len(),
        });
    }

    let starts = cfg.multistarts.max(1);
    let (_, mut centers) = (0..starts)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            let (r, c) = one_start(&coarse, k, proj, cfg, seed);
            (r, i, c)
        })
        .min_by(|a, b| (a.0, a.1).partial_cmp(&(b.0, b.1)).unwrap())
        .map(|(r, _, c)| (r, c))
        .expect("at least one start");

    // mid-resolution annealed polish: iterations here are cheap, so small
    // basin-hopping kicks with exact recentering can walk out of the
    // near-optimal stalls that pure Lloyd descent converges into only slowly
    let mid_size = cfg.cert_grid.min(500_000);
    if cfg.polish_iters > 0 && mid_size > 2 * cfg.search_grid {
        let mid = grid_coords(ambient, mid_size)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x00A1_1CE5);
        let rounds = 3 * cfg.polish_iters;
        let mut best = (eval_radius(&mid, &centers, proj), centers.clone());
        for round in 0..rounds {
            let frac = round as f64 / (rounds.max(2) - 1) as f64;
            let kick = 2e-2 * (1e-5f64 / 2e-2).powf(frac);
            let mut cand = best.1.clone();
            if round % 2 == 0 {
                // pull the centers nearest the worst-covered point toward
                // it: plain Lloyd recentering never transfers area between
                // cells, so the binding cell cannot shrink without this
                targeted_kick(&mid, &mut cand, proj, kick, &mut rng);
            } else {
                for c in &mut cand {
                    *c = tangent_kick(c, kick, &mut rng);
                }
            }
            for it in 0..3 {
                let relax = if it == 2 { 1.0 } else { 1.8 };
                lloyd_step(&mid, &mut cand, proj, relax);
            }
            let r = eval_radius(&mid, &cand, proj);
            if r < best.0 {
                best = (r, cand);
            }
        }
        centers = best.1;
    }

    // final polish against the certification grid itself; over-relaxed steps
    // alternate with plain ones to speed up the linear tail of Lloyd
    let fine = grid_coords(ambient, cfg.cert_grid)?;
    let mut best_r = eval_radius(&fine, &centers, proj);
    let mut best_centers = centers.clone();
    for it in 0..cfg.polish_iters.min(30) {
        let relax = if it % 3 == 2 { 1.0 } else { 1.8 };
        lloyd_step(&fine, &mut centers, proj, relax);
        let r = eval_radius(&fine, &centers, proj);
        if r < best_r {
            best_r = r;
            best_centers = centers.clone();
        }
    }
    Ok((best_r, best_centers))
}

fn one_start(
    points: &[[f64; 4]],
    k: usize,
    proj: bool,
    cfg: &SolveConfig,
    seed: u64,
) -> (f64, Vec<[f64; 4]>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centers = fps_init(points, k, proj, &mut rng);
    for _ in 0..10 {
        lloyd_step(points, &mut centers, proj, 1.0);
    }
    let mut best = (eval_radius(points, &centers, proj), centers);

    let rounds = cfg.anneal_rounds;
    for round in 0..rounds {
        let frac = round as f64 / (rounds.max(2) - 1) as f64;
        let kick = cfg.kick_start * (cfg.kick_end / cfg.kick_start).powf(frac);
        let mut cand = best.1.clone();
        for c in &mut cand {
            *c = tangent_kick(c, kick, &mut rng);
        }
        for _ in 0..4 {
            lloyd_step(points, &mut cand, proj, 1.0);
        }
        let r = eval_radius(points, &cand, proj);
        if r < best.0 {
            best = (r, cand);
        }
    }
    best
}

/// Farthest-point initialization over the grid.
fn fps_init(points: &[[f64; 4]], k: usize, proj: bool, rng: &mut ChaCha8Rng) -> Vec<[f64; 4]> {
    let first = points[rng.gen_range(0..points.len())];
    let mut centers = vec![first];
    let mut best_score: Vec<f64> = points.iter().map(|p| score(p, &first, proj)).collect();
    while centers.len() < k {
        let (i, _) = best_score
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        let c = points[i];
        for (s, p) in best_score.iter_mut().zip(points) {
            *s = s.max(score(p, &c, proj));
        }
        centers.push(c);
    }
    centers
}

/// Move the centers nearest to the worst-covered grid point a step toward
/// it. This is the minimax-specific escape move: it shrinks the binding
/// cell at the expense of its neighbors, which recentering alone never does.
fn targeted_kick(
    points: &[[f64; 4]],
    centers: &mut [[f64; 4]],
    proj: bool,
    magnitude: f64,
    rng: &mut ChaCha8Rng,
) {
    let worst = points
        .par_iter()
        .map(|p| {
            centers
                .iter()
                .map(|c| score(p, c, proj))
                .fold(-1.0f64, f64::max)
        })
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    let Some((wi, _)) = worst else { return };
    let mut w = points[wi];
    let mut order: Vec<usize> = (0..centers.len()).collect();
    order.sort_by(|&a, &b| {
        score(&w, &centers[b], proj)
            .partial_cmp(&score(&w, &centers[a], proj))
            .unwrap()
    });
    for &j in order.iter().take(3.min(centers.len())) {
        if proj && dot(&w, &centers[j]) < 0.0 {
            w = [-w[0], -w[1], -w[2], -w[3]];
        }
        let theta = dot(&centers[j], &w).clamp(-1.0, 1.0).acos();
        if theta < 1e-9 {
            continue;
        }
        let step = (magnitude * rng.gen_range(0.5..1.5)).min(theta);
        centers[j] = geodesic_extrapolate(&centers[j], &w, step / theta);
    }
}

fn tangent_kick(c: &[f64; 4], magnitude: f64, rng: &mut ChaCha8Rng) -> [f64; 4] {
    if magnitude <= 0.0 {
        return *c;
    }
    let g: [f64; 4] = std::array::from_fn(|_| {
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen_range(0.0..TAU);
        (-2.0 * u1.ln()).sqrt() * u2.cos()
    });
    let along = dot(&g, c);
    let mut t: [f64; 4] = std::array::from_fn(|i| g[i] - along * c[i]);
    let norm = dot(&t, &t).sqrt();
    if norm < 1e-12 {
        return *c;
    }
    t.iter_mut().for_each(|x| *x /= norm);
    let theta = magnitude * rng.gen_range(0.2..1.0);
    normalize(std::array::from_fn(|i| {
        c[i] * theta.cos() + t[i] * theta.sin()
    }))
}

/// Covering radius of `centers` over the grid.
fn eval_radius(points: &[[f64; 4]], centers: &[[f64; 4]], proj: bool) -> f64 {
    let worst = points
        .par_iter()
        .map(|p| {
            centers
                .iter()
                .map(|c| score(p, c, proj))
                .fold(-1.0f64, f64::max)
        })
        .reduce(|| 1.0, f64::min);
    worst.clamp(-1.0, 1.0).acos()
}

/// One Lloyd iteration: assign grid points to their nearest center, then
/// move each center toward the minimax center of its cell (`relax` = 1 lands
/// exactly on it, > 1 overshoots along the connecting geodesic). Empty cells
/// are reseeded at the globally worst-covered grid point.
fn lloyd_step(points: &[[f64; 4]], centers: &mut [[f64; 4]], proj: bool, relax: f64) {
    let k = centers.len();
    let assign: Vec<u32> = points
        .par_iter()
        .map(|p| {
            let mut bi = 0u32;
            let mut bs = -2.0f64;
            for (j, c) in centers.iter().enumerate() {
                let s = score(p, c, proj);
                if s > bs {
                    bs = s;
                    bi = j as u32;
                }
            }
            bi
        })
        .collect();

    // cells hold sign-adjusted representatives so the projective quotient
    // reduces to the spherical problem on a cap
    let mut cells: Vec<Vec<[f64; 4]>> = vec![Vec::new(); k];
    for (p, &a) in points.iter().zip(&assign) {
        let c = &centers[a as usize];
        let q = if proj && dot(p, c) < 0.0 {
            [-p[0], -p[1], -p[2], -p[3]]
        } else {
            *p
        };
        cells[a as usize].push(q);
    }

    for j in 0..k {
        if cells[j].is_empty() {
            let worst = points
                .par_iter()
                .map(|p| {
                    centers
                        .iter()
                        .map(|c| score(p, c, proj))
                        .fold(-1.0f64, f64::max)
                })
                .enumerate()
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
            if let Some((i, _)) = worst {
                centers[j] = points[i];
            }
        }
    }

    let new_centers: Vec<[f64; 4]> = (0..k)
        .into_par_iter()
        .map(|j| {
            if cells[j].is_empty() {
                centers[j]
            } else {
                let target = one_center(&cells[j], centers[j]);
                geodesic_extrapolate(&centers[j], &target, relax)
            }
        })
        .collect();
    centers.copy_from_slice(&new_centers);
}

/// Point at `t` times the angle from `a` toward `b` along their geodesic
/// (`t` = 1 gives `b`).
fn geodesic_extrapolate(a: &[f64; 4], b: &[f64; 4], t: f64) -> [f64; 4] {
    let cos_theta = dot(a, b).clamp(-1.0, 1.0);
    let theta = cos_theta.acos();
    if theta < 1e-12 || t == 1.0 {
        return *b;
    }
    let mut dir: [f64; 4] = std::array::from_fn(|i| b[i] - cos_theta * a[i]);
    let norm = dot(&dir, &dir).sqrt();
    if norm < 1e-12 {
        return *b;
    }
    dir.iter_mut().for_each(|x| *x /= norm);
    let phi = t * theta;
    normalize(std::array::from_fn(|i| a[i] * phi.cos() + dir[i] * phi.sin()))
}

/// Minimax center of a cell: the minimum enclosing (Euclidean) ball of the
/// points, radially projected to the sphere. Chord length is monotone in
/// geodesic distance, so this is the spherical 1-center for caps smaller
/// than a hemisphere.
fn one_center(cell: &[[f64; 4]], start: [f64; 4]) -> [f64; 4] {
    let mut c = start;
    let mut r = 0.0f64;
    let mut support: Vec<[f64; 4]> = Vec::new();
    for _ in 0..80 {
        // farthest-point pivot with an exact small-ball subsolve
        let (fi, fd2) = cell
            .par_iter()
            .map(|p| {
                let d: [f64; 4] = std::array::from_fn(|i| p[i] - c[i]);
                dot(&d, &d)
            })
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if fd2.sqrt() <= r + 1e-10 {
            break;
        }
        let f = cell[fi];
        if !support.iter().any(|s| s == &f) {
            support.push(f);
        }
        let (nc, nr, ns) = min_ball(&support);
        c = nc;
        r = nr;
        support = ns;
        if support.len() > 6 {
            support.truncate(6);
        }
    }
    normalize(c)
}

/// Exact minimum enclosing ball of at most a handful of points, by subset
/// enumeration over circumballs. Returns center, radius, and the boundary
/// support set.
fn min_ball(points: &[[f64; 4]]) -> ([f64; 4], f64, Vec<[f64; 4]>) {
    let m = points.len();
    debug_assert!(m >= 1 && m <= 8);
    let mut best: Option<([f64; 4], f64, Vec<[f64; 4]>)> = None;
    for mask in 1u32..(1 << m) {
        if mask.count_ones() > 5 {
            continue;
        }
        let subset: Vec<[f64; 4]> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| points[i]).collect();
        let Some((c, r)) = circumball(&subset) else {
            continue;
        };
        let contains = points.iter().all(|p| {
            let d: [f64; 4] = std::array::from_fn(|i| p[i] - c[i]);
            dot(&d, &d).sqrt() <= r + 1e-10
        });
        if contains && best.as_ref().map_or(true, |b| r < b.1) {
            best = Some((c, r, subset));
        }
    }
    best.expect("singletons always yield a valid ball")
}

/// Smallest ball with every given point on its boundary; the center lies in
/// their affine hull. `None` when the points are affinely dependent.
fn circumball(pts: &[[f64; 4]]) -> Option<([f64; 4], f64)> {
    let p0 = pts[0];
    let m = pts.len() - 1;
    if m == 0 {
        return Some((p0, 0.0));
    }
    let rows: Vec<[f64; 4]> = pts[1..]
        .iter()
        .map(|p| std::array::from_fn(|i| p[i] - p0[i]))
        .collect();
    // center = p0 + sum lambda_i rows_i with Gram system G lambda = h
    let mut aug = vec![vec![0.0f64; m + 1]; m];
    for i in 0..m {
        for j in 0..m {
            aug[i][j] = dot(&rows[i], &rows[j]);
        }
        aug[i][m] = 0.5 * dot(&rows[i], &rows[i]);
    }
    // Gaussian elimination with partial pivoting
    for col in 0..m {
        let (piv, mag) = (col..m)
            .map(|r| (r, aug[r][col].abs()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if mag < 1e-12 {
            return None;
        }
        aug.swap(col, piv);
        for r in 0..m {
            if r != col {
                let factor = aug[r][col] / aug[col][col];
                for c in col..=m {
                    aug[r][c] -= factor * aug[col][c];
                }
            }
        }
    }
    let lambda: Vec<f64> = (0..m).map(|i| aug[i][m] / aug[i][i]).collect();
    let mut center = p0;
    for (l, row) in lambda.iter().zip(&rows) {
        for i in 0..4 {
            center[i] += l * row[i];
        }
    }
    let d: [f64; 4] = std::array::from_fn(|i| center[i] - p0[i]);
    Some((center, dot(&d, &d).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circumball_of_pairs_and_triangles() {
        let (c, r) = circumball(&[[1.0, 0.0, 0.0, 0.0], [-1.0, 0.0, 0.0, 0.0]]).unwrap();
        assert!(c.iter().all(|x| x.abs() < 1e-12));
        assert!((r - 1.0).abs() < 1e-12);

        // equilateral triangle in the z = 0 plane
        let tri: Vec<[f64; 4]> = (0..3)
            .map(|i| {
                let t = TAU * i as f64 / 3.0;
                [t.cos(), t.sin(), 0.0, 0.0]
            })
            .collect();
        let (c, r) = circumball(&tri).unwrap();
        assert!(c.iter().all(|x| x.abs() < 1e-9));
        assert!((r - 1.0).abs() < 1e-9);

        // collinear points are affinely dependent for the boundary problem
        assert!(circumball(&[
            [0.0, 0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [2.0, 0.0, 0.0, 0.0]
        ])
        .is_none());
    }

    #[test]
    fn min_ball_contains_all_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let pts: Vec<[f64; 4]> = (0..6)
                .map(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
                .collect();
            let (c, r, support) = min_ball(&pts);
            for p in &pts {
                let d: [f64; 4] = std::array::from_fn(|i| p[i] - c[i]);
                assert!(dot(&d, &d).sqrt() <= r + 1e-8);
            }
            for s in &support {
                let d: [f64; 4] = std::array::from_fn(|i| s[i] - c[i]);
                assert!((dot(&d, &d).sqrt() - r).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn one_center_of_a_cap_is_its_axis() {
        // points on a circle of latitude: the 1-center is the pole above it
        let cell: Vec<[f64; 4]> = (0..40)
            .map(|i| {
                let t = TAU * i as f64 / 40.0;
                let r = 0.4f64;
                let z = (1.0 - r * r).sqrt();
                [r * t.cos(), r * t.sin(), z, 0.0]
            })
            .collect();
        let c = one_center(&cell, [0.1, 0.2, 0.97, 0.0]);
        assert!((c[2] - 1.0).abs() < 1e-9, "{c:?}");
    }

    #[test]
    fn circle_solver_is_exact_up_to_mesh() {
        let cfg = SolveConfig::default_for(Ambient::Sphere { n: 1 });
        for k in 1..=12 {
            let sol = solve_cov(Ambient::Sphere { n: 1 }, k, &cfg).unwrap();
            let target = PI / k as f64;
            assert!(
                (sol.radius_certified - target).abs() <= 1e-6 + sol.grid_mesh,
                "k={k}: certified {} vs {target}",
                sol.radius_certified
            );
            assert_eq!(sol.status, SolutionStatus::MatchesKnownExact);
        }
    }

    #[test]
    fn projective_circle_solver_is_exact_up_to_mesh() {
        let cfg = SolveConfig::default_for(Ambient::Projective { n: 1 });
        for k in 1..=8 {
            let sol = solve_cov(Ambient::Projective { n: 1 }, k, &cfg).unwrap();
            let target = PI / (2.0 * k as f64);
            assert!(
                (sol.radius_certified - target).abs() <= 1e-6 + sol.grid_mesh,
                "k={k}: certified {} vs {target}",
                sol.radius_certified
            );
        }
    }

    #[test]
    fn quick_config_finds_the_tetrahedral_covering() {
        let ambient = Ambient::Sphere { n: 2 };
        let sol = solve_cov(ambient, 4, &SolveConfig::quick(ambient)).unwrap();
        let target = (1.0f64 / 3.0).acos();
        assert!(
            sol.radius_certified >= target - 1e-9,
            "certified below the optimum: {}",
            sol.radius_certified
        );
        assert!(
            sol.radius_certified <= target + 0.02,
            "certified {} too far above {target}",
            sol.radius_certified
        );
        assert_eq!(sol.centers.len(), 4);
        for c in &sol.centers {
            let norm: f64 = c.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn max_mesh_gate_fires() {
        let ambient = Ambient::Sphere { n: 2 };
        let mut cfg = SolveConfig::quick(ambient);
        cfg.cert_grid = 1_000;
        cfg.max_mesh = Some(1e-6);
        match solve_cov(ambient, 3, &cfg) {
            Err(CoveringError::MeshTooCoarse { .. }) => {}
            other => panic!("expected MeshTooCoarse, got {other:?}"),
        }
    }

    #[test]
    fn zero_and_oversized_k_error() {
        let ambient = Ambient::Sphere { n: 2 };
        let cfg = SolveConfig::quick(ambient);
        assert!(matches!(
            solve_cov(ambient, 0, &cfg),
            Err(CoveringError::ZeroCenters)
        ));
        assert!(matches!(
            solve_cov(ambient, 10_000_000, &cfg),
            Err(CoveringError::TooManyCenters { .. })
        ));
    }
}
