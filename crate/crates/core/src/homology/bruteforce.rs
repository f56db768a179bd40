//! Exhaustive dense-reduction oracle for reduced `Z/2` Betti numbers.
//!
//! Enumerates every vertex subset of diameter `< r` directly and computes
//! boundary ranks by dense Gaussian elimination on bit rows. Deliberately
//! shares nothing with the sparse pipeline in the parent module; it exists to
//! check it. Only usable for small clouds (subset enumeration is 2^N).

use std::collections::HashMap;

use crate::geometry::FinitePointCloud;

const MAX_POINTS: usize = 20;

/// Reduced Betti numbers for dimensions `0..cap-1`, straight from the
/// definition.
pub fn reduced_betti(cloud: &FinitePointCloud, r: f64, cap: usize) -> Vec<usize> {
    let n = cloud.len();
    assert!(n <= MAX_POINTS, "oracle limited to {MAX_POINTS} points");
    assert!(cap >= 1);

    // simplices_by_dim[d] = sorted vertex tuples of size d+1 and diameter < r
    let mut by_dim: Vec<Vec<Vec<u32>>> = vec![Vec::new(); cap + 1];
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size > cap + 1 {
            continue;
        }
        let verts: Vec<u32> = (0..n as u32).filter(|v| mask >> v & 1 == 1).collect();
        let mut diam = 0.0f64;
        for (a, &i) in verts.iter().enumerate() {
            for &j in &verts[a + 1..] {
                diam = diam.max(cloud.dist(i as usize, j as usize));
            }
        }
        if size == 1 || diam < r {
            by_dim[size - 1].push(verts);
        }
    }
    for level in &mut by_dim {
        level.sort();
    }

    // rank of each dense boundary matrix
    let mut ranks = vec![0usize; cap + 2];
    for d in 1..=cap {
        ranks[d] = boundary_rank(&by_dim[d - 1], &by_dim[d]);
    }

    let mut reduced = Vec::with_capacity(cap);
    for d in 0..cap {
        let cycles = if d == 0 {
            by_dim[0].len()
        } else {
            by_dim[d].len() - ranks[d]
        };
        let b = cycles - ranks[d + 1];
        reduced.push(if d == 0 { b.saturating_sub(1) } else { b });
    }
    reduced
}

/// Rank over `Z/2` of the boundary map from `simplices` to `faces`, by row
/// elimination on u64-block bit rows (one row per simplex).
fn boundary_rank(faces: &[Vec<u32>], simplices: &[Vec<u32>]) -> usize {
    if faces.is_empty() || simplices.is_empty() {
        return 0;
    }
    let face_index: HashMap<&[u32], usize> = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_slice(), i))
        .collect();
    let blocks = faces.len().div_ceil(64);
    let mut rows: Vec<Vec<u64>> = simplices
        .iter()
        .map(|s| {
            let mut row = vec![0u64; blocks];
            for omit in 0..s.len() {
                let face: Vec<u32> = s
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != omit)
                    .map(|(_, &v)| v)
                    .collect();
                let f = face_index[face.as_slice()];
                row[f / 64] ^= 1u64 << (f % 64);
            }
            row
        })
        .collect();

    let mut rank = 0usize;
    for col in 0..faces.len() {
        let (b, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][b] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[b] & bit != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{sample_space, Ambient, SampleStrategy};
    use std::f64::consts::PI;

    #[test]
    fn oracle_knows_the_circle_profiles() {
        let circle = |n| {
            sample_space(Ambient::Sphere { n: 1 }, n, SampleStrategy::EvenlySpacedCircle, 0)
                .unwrap()
        };
        assert_eq!(reduced_betti(&circle(4), PI / 2.0 + 0.01, 3), vec![0, 1, 0]);
        assert_eq!(
            reduced_betti(&circle(6), 2.0 * PI / 3.0 + 0.01, 4),
            vec![0, 0, 1, 0]
        );
        // full simplex is contractible
        assert_eq!(reduced_betti(&circle(5), PI + 1.0, 4), vec![0, 0, 0, 0]);
    }
}
