/// Uniform-grid nearest-neighbor index over unit vectors in `R^3`.
///
/// Chord distance is monotone in geodesic distance on the sphere, so the
/// chord-nearest point is the geodesic-nearest one. Used to certify grid
/// meshes, where millions of queries against a large point set would make
/// brute force infeasible.
pub struct NnIndex3 {
    cell: f64,
    res: usize,
    buckets: Vec<Vec<u32>>,
    points: Vec<[f64; 3]>,
}

impl NnIndex3 {
    /// `cell_hint` should be on the order of the point set's covering radius;
    /// correctness does not depend on it, only query speed.
    pub fn build(points: Vec<[f64; 3]>, cell_hint: f64) -> Self {
        let cell = cell_hint.clamp(1e-4, 0.5);
        let res = (2.0 / cell).ceil() as usize + 1;
        let mut buckets = vec![Vec::new(); res * res * res];
        for (i, p) in points.iter().enumerate() {
            let b = bucket_of(p, cell, res);
            buckets[b].push(i as u32);
        }
        Self {
            cell,
            res,
            buckets,
            points,
        }
    }

    /// Index and squared chord distance of the nearest stored point.
    pub fn nearest(&self, q: &[f64; 3]) -> (u32, f64) {
        let (cx, cy, cz) = cell_coords(q, self.cell, self.res);
        let mut best = (u32::MAX, f64::INFINITY);
        for ring in 0.. {
            let lo = |c: usize| c.saturating_sub(ring);
            let hi = |c: usize| (c + ring).min(self.res - 1);
            let mut scanned = false;
            for x in lo(cx)..=hi(cx) {
                for y in lo(cy)..=hi(cy) {
                    for z in lo(cz)..=hi(cz) {
                        // only the new shell
                        let on_shell = x == lo(cx)
                            || x == hi(cx)
                            || y == lo(cy)
                            || y == hi(cy)
                            || z == lo(cz)
                            || z == hi(cz);
                        if ring > 0 && !on_shell {
                            continue;
                        }
                        scanned = true;
                        let b = (x * self.res + y) * self.res + z;
                        for &i in &self.buckets[b] {
                            let p = &self.points[i as usize];
                            let d2 = (p[0] - q[0]).powi(2)
                                + (p[1] - q[1]).powi(2)
                                + (p[2] - q[2]).powi(2);
                            if d2 < best.1 {
                                best = (i, d2);
                            }
                        }
                    }
                }
            }
            // Anything outside the scanned box is at least `ring * cell` away.
            if best.1.sqrt() <= ring as f64 * self.cell || !scanned {
                break;
            }
        }
        best
    }

    /// Geodesic distance on the unit sphere to the nearest stored point.
    pub fn nearest_geodesic(&self, q: &[f64; 3]) -> f64 {
        let (_, d2) = self.nearest(q);
        // chord c relates to angle a by c = 2 sin(a/2)
        (2.0 * (d2.sqrt() / 2.0).clamp(-1.0, 1.0).asin()).min(std::f64::consts::PI)
    }
}

#[inline]
fn cell_coords(p: &[f64; 3], cell: f64, res: usize) -> (usize, usize, usize) {
    let f = |v: f64| (((v + 1.0) / cell) as usize).min(res - 1);
    (f(p[0]), f(p[1]), f(p[2]))
}

#[inline]
fn bucket_of(p: &[f64; 3], cell: f64, res: usize) -> usize {
    let (x, y, z) = cell_coords(p, cell, res);
    (x * res + y) * res + z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sample::fibonacci_lattice;

    #[test]
    fn matches_brute_force() {
        let pts = fibonacci_lattice(500);
        let idx = NnIndex3::build(pts.clone(), 0.15);
        let queries = fibonacci_lattice(333);
        for q in &queries {
            let (i, d2) = idx.nearest(q);
            let brute = pts
                .iter()
                .map(|p| {
                    (p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)
                })
                .fold(f64::INFINITY, f64::min);
            assert!((d2 - brute).abs() < 1e-12, "query {q:?} point {i}");
        }
    }
}
