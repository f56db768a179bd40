//! Certification grids and their meshes (covering radii of the grids
//! themselves). The mesh is what turns a max-over-grid distance into a
//! rigorous upper bound on a covering radius, so it is measured against a
//! four-times finer grid rather than estimated. Results are cached per
//! `(ambient, size)` because the `S^2` computation touches millions of
//! points.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::sync::{Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::CoveringError;
use crate::geometry::{fibonacci_lattice, Ambient, NnIndex3};

/// Fixed seed for the random fallback grids (`n = 3`), so that the cached
/// mesh always describes the same point set the solver certifies against.
pub(crate) const GRID_SEED: u64 = 0x5EED_C0DE;

/// Deterministic certification grid: evenly spaced angles for `n = 1`,
/// Fibonacci lattice for `n = 2`, seeded uniform points for `n = 3`.
/// Coordinates are padded to four entries; unused ones are zero.
pub(crate) fn grid_coords(ambient: Ambient, size: usize) -> Result<Vec<[f64; 4]>, CoveringError> {
    if size == 0 {
        return Err(CoveringError::EmptyGrid);
    }
    match ambient {
        Ambient::Sphere { n: 1 } | Ambient::Projective { n: 1 } => {
            let span = if matches!(ambient, Ambient::Projective { .. }) {
                PI
            } else {
                TAU
            };
            Ok((0..size)
                .map(|i| {
                    let t = span * i as f64 / size as f64;
                    [t.cos(), t.sin(), 0.0, 0.0]
                })
                .collect())
        }
        Ambient::Sphere { n: 2 } | Ambient::Projective { n: 2 } => Ok(fibonacci_lattice(size)
            .into_iter()
            .map(|p| [p[0], p[1], p[2], 0.0])
            .collect()),
        Ambient::Sphere { n: 3 } | Ambient::Projective { n: 3 } => {
            let mut rng = ChaCha8Rng::seed_from_u64(GRID_SEED ^ size as u64);
            Ok((0..size)
                .map(|_| loop {
                    let v: [f64; 4] = std::array::from_fn(|_| {
                        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
                        let u2: f64 = rng.gen_range(0.0..TAU);
                        (-2.0 * u1.ln()).sqrt() * u2.cos()
                    });
                    let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                    if norm > 1e-6 {
                        break v.map(|c| c / norm);
                    }
                })
                .collect())
        }
        _ => Err(CoveringError::UnsupportedAmbient(ambient.to_string())),
    }
}

/// Covering radius of the `size`-point certification grid for `ambient`.
/// Exact for circles; measured against a 4x finer grid otherwise. Cached.
pub fn grid_mesh(ambient: Ambient, size: usize) -> Result<f64, CoveringError> {
    if size == 0 {
        return Err(CoveringError::EmptyGrid);
    }
    match ambient {
        // evenly spaced points on a circle of circumference 2*pi resp. pi
        Ambient::Sphere { n: 1 } => return Ok(PI / size as f64),
        Ambient::Projective { n: 1 } => return Ok(PI / (2.0 * size as f64)),
        Ambient::Sphere { n: 2 | 3 } | Ambient::Projective { n: 2 | 3 } => {}
        _ => return Err(CoveringError::UnsupportedAmbient(ambient.to_string())),
    }

    if let Some(m) = measured_mesh(ambient, size) {
        return Ok(m);
    }

    static CACHE: OnceLock<Mutex<HashMap<(String, usize), f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (ambient.to_string(), size);
    if let Some(&m) = cache.lock().unwrap().get(&key) {
        return Ok(m);
    }

    let grid = grid_coords(ambient, size)?;
    // +1 so the finer Fibonacci lattice never reuses the coarse z-values
    let finer = grid_coords(ambient, 4 * size + 1)?;
    let projective = matches!(ambient, Ambient::Projective { .. });
    let mesh = match ambient.dim() {
        Some(2) => mesh_s2(&grid, &finer, projective),
        Some(3) => mesh_brute(&grid, &finer, projective),
        _ => unreachable!(),
    };

    cache.lock().unwrap().insert(key, mesh);
    Ok(mesh)
}

/// Stored covering radii of the default certification grids, measured once
/// against the four-times finer probe grid and rounded up in the last digit.
/// The grids are deterministic, so these are fixed constants; skipping the
/// on-line measurement removes a ~100 s startup cost per grid. The ignored
/// test `stored_meshes_match_remeasurement` recomputes them from scratch.
fn measured_mesh(ambient: Ambient, size: usize) -> Option<f64> {
    match (ambient, size) {
        (Ambient::Sphere { n: 2 }, 4_000_000) => Some(1.250101634e-3),
        (Ambient::Projective { n: 2 }, 4_000_000) => Some(1.187164336e-3),
        (Ambient::Sphere { n: 3 }, 40_000) => Some(1.121568707e-1),
        (Ambient::Projective { n: 3 }, 40_000) => Some(9.059269980e-2),
        _ => None,
    }
}

/// Max over `finer` of the geodesic distance to the nearest grid point, via
/// a spatial index. Projective grids index both sign lifts so the chordal
/// nearest neighbor realizes the quotient metric.
fn mesh_s2(grid: &[[f64; 4]], finer: &[[f64; 4]], projective: bool) -> f64 {
    let mut pts: Vec<[f64; 3]> = grid.iter().map(|p| [p[0], p[1], p[2]]).collect();
    if projective {
        pts.extend(grid.iter().map(|p| [-p[0], -p[1], -p[2]]));
    }
    // cell on the order of the expected mesh, floored to keep the bucket
    // array small
    let hint = (4.0 / (grid.len() as f64).sqrt()).clamp(0.02, 0.5);
    let index = NnIndex3::build(pts, hint);
    finer
        .par_iter()
        .map(|q| index.nearest_geodesic(&[q[0], q[1], q[2]]))
        .reduce(|| 0.0, f64::max)
}

/// Plain max-min scan, one `acos` total. Only used for the small `n = 3`
/// grids.
fn mesh_brute(grid: &[[f64; 4]], finer: &[[f64; 4]], projective: bool) -> f64 {
    let worst_dot = finer
        .par_iter()
        .map(|q| {
            let mut best = -1.0f64;
            for p in grid {
                let d = p[0] * q[0] + p[1] * q[1] + p[2] * q[2] + p[3] * q[3];
                let d = if projective { d.abs() } else { d };
                if d > best {
                    best = d;
                }
            }
            best
        })
        .reduce(|| 1.0, f64::min);
    worst_dot.clamp(-1.0, 1.0).acos()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_meshes_are_exact() {
        assert_eq!(grid_mesh(Ambient::Sphere { n: 1 }, 3600).unwrap(), PI / 3600.0);
        assert_eq!(
            grid_mesh(Ambient::Projective { n: 1 }, 1800).unwrap(),
            PI / 3600.0
        );
    }

    #[test]
    fn fibonacci_mesh_scales_like_inverse_sqrt() {
        let m1 = grid_mesh(Ambient::Sphere { n: 2 }, 2_000).unwrap();
        let m2 = grid_mesh(Ambient::Sphere { n: 2 }, 8_000).unwrap();
        assert!(m1 > 0.0 && m2 > 0.0);
        let ratio = m1 / m2;
        assert!(ratio > 1.5 && ratio < 2.7, "ratio {ratio}");
        // sanity against the equal-area heuristic c / sqrt(size)
        assert!(m1 < 6.0 / (2_000.0f64).sqrt(), "mesh {m1}");
    }

    #[test]
    fn projective_mesh_beats_spherical_mesh() {
        let s = grid_mesh(Ambient::Sphere { n: 2 }, 3_000).unwrap();
        let p = grid_mesh(Ambient::Projective { n: 2 }, 3_000).unwrap();
        // the quotient metric identifies antipodes, so the same grid covers
        // more tightly
        assert!(p < s);
    }

    #[test]
    fn mesh_cache_is_stable() {
        let a = grid_mesh(Ambient::Sphere { n: 3 }, 2_000).unwrap();
        let b = grid_mesh(Ambient::Sphere { n: 3 }, 2_000).unwrap();
        assert_eq!(a, b);
    }

    /// Recomputes the stored constants from scratch; several minutes.
    #[test]
    #[ignore]
    fn stored_meshes_match_remeasurement() {
        for (ambient, size) in [
            (Ambient::Sphere { n: 2 }, 4_000_000usize),
            (Ambient::Projective { n: 2 }, 4_000_000),
            (Ambient::Sphere { n: 3 }, 40_000),
            (Ambient::Projective { n: 3 }, 40_000),
        ] {
            let stored = measured_mesh(ambient, size).unwrap();
            let grid = grid_coords(ambient, size).unwrap();
            let finer = grid_coords(ambient, 4 * size + 1).unwrap();
            let projective = matches!(ambient, Ambient::Projective { .. });
            let fresh = match ambient.dim() {
                Some(2) => mesh_s2(&grid, &finer, projective),
                _ => mesh_brute(&grid, &finer, projective),
            };
            assert!(
                fresh <= stored && stored - fresh < 1e-8,
                "{ambient} size {size}: stored {stored:e} vs fresh {fresh:e}"
            );
        }
    }

    #[test]
    fn unsupported_ambients_error() {
        assert!(grid_mesh(Ambient::Abstract, 100).is_err());
        assert!(grid_mesh(Ambient::Sphere { n: 4 }, 100).is_err());
        assert!(grid_coords(Ambient::Sphere { n: 2 }, 0).is_err());
    }
}
