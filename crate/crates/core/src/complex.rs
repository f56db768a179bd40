//! Strict-`<` Vietoris--Rips flag complexes of finite samples.
//!
//! A finite vertex set spans a simplex exactly when its diameter is strictly
//! less than the scale. The complex is built by incremental flag expansion
//! with sorted neighbor-intersection, not general clique enumeration.

use thiserror::Error;

use crate::geometry::FinitePointCloud;

pub const DEFAULT_SIMPLEX_CEILING: usize = 5_000_000;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("scale must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("simplex count exceeded the resource ceiling of {ceiling} while expanding dimension {dim}")]
    SimplexCeiling { ceiling: usize, dim: usize },
    #[error("empty simplex has no diameter")]
    EmptySimplex,
    #[error("vertex index {0} out of range for cloud of {1} points")]
    VertexOutOfRange(usize, usize),
    #[error("malformed complex file at line {0}")]
    Parse(usize),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Vietoris--Rips flag complex at a fixed scale, simplices grouped by
/// dimension up to a cap. Simplices are stored with strictly increasing
/// vertex indices, lexicographically sorted and duplicate-free.
#[derive(Debug, Clone)]
pub struct VRComplex {
    scale: f64,
    dim_cap: usize,
    vertex_count: usize,
    /// `simplices[d]` holds the d-simplices as sorted index tuples.
    simplices: Vec<Vec<Vec<u32>>>,
}

impl VRComplex {
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// All d-simplices, empty past the top nonempty dimension.
    pub fn simplices(&self, dim: usize) -> &[Vec<u32>] {
        self.simplices.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn top_dim(&self) -> usize {
        self.simplices
            .iter()
            .rposition(|s| !s.is_empty())
            .unwrap_or(0)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.top_dim();
        (0..=top).map(|d| self.simplices(d).len()).collect()
    }

    /// Re-check the diameter invariant against the source distance matrix.
    pub fn validate_against(&self, cloud: &FinitePointCloud) -> bool {
        self.simplices.iter().flatten().all(|s| {
            simplex_diameter(s, cloud).map_or(false, |d| s.len() == 1 || d < self.scale)
        })
    }

    /// Flat text export: one simplex per line, dimension first, then the
    /// vertex indices, space-separated.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (d, level) in self.simplices.iter().enumerate() {
            for s in level {
                out.push_str(&d.to_string());
                for v in s {
                    out.push(' ');
                    out.push_str(&v.to_string());
                }
                out.push('\n');
            }
        }
        out
    }

    /// Parse the flat text format. The scale is not part of the format and is
    /// recorded as NaN.
    pub fn from_text(s: &str) -> Result<Self, ComplexError> {
        let mut simplices: Vec<Vec<Vec<u32>>> = Vec::new();
        let mut vertex_count = 0usize;
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let d: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(ComplexError::Parse(lineno + 1))?;
            let verts: Vec<u32> = it
                .map(|t| t.parse().map_err(|_| ComplexError::Parse(lineno + 1)))
                .collect::<Result<_, _>>()?;
            if verts.len() != d + 1 || verts.windows(2).any(|w| w[0] >= w[1]) {
                return Err(ComplexError::Parse(lineno + 1));
            }
            if let Some(&m) = verts.last() {
                vertex_count = vertex_count.max(m as usize + 1);
            }
            if simplices.len() <= d {
                simplices.resize(d + 1, Vec::new());
            }
            simplices[d].push(verts);
        }
        for level in &mut simplices {
            level.sort();
            level.dedup();
        }
        let dim_cap = simplices.len().saturating_sub(1);
        Ok(Self {
            scale: f64::NAN,
            dim_cap,
            vertex_count,
            simplices,
        })
    }
}

/// Max pairwise distance of a simplex; 0 for vertices.
pub fn simplex_diameter(
    simplex: &[u32],
    cloud: &FinitePointCloud,
) -> Result<f64, ComplexError> {
    if simplex.is_empty() {
        return Err(ComplexError::EmptySimplex);
    }
    let n = cloud.len();
    if let Some(&v) = simplex.iter().find(|&&v| v as usize >= n) {
        return Err(ComplexError::VertexOutOfRange(v as usize, n));
    }
    let mut diam = 0.0f64;
    for (a, &i) in simplex.iter().enumerate() {
        for &j in &simplex[a + 1..] {
            diam = diam.max(cloud.dist(i as usize, j as usize));
        }
    }
    Ok(diam)
}

/// Build the flag complex of the graph `{d(i,j) < r}`, expanded incrementally
/// by dimension up to `dim_cap`. Isolated vertices are included.
pub fn build_vr(
    cloud: &FinitePointCloud,
    r: f64,
    dim_cap: usize,
) -> Result<VRComplex, ComplexError> {
    build_vr_with_ceiling(cloud, r, dim_cap, DEFAULT_SIMPLEX_CEILING)
}

pub fn build_vr_with_ceiling(
    cloud: &FinitePointCloud,
    r: f64,
    dim_cap: usize,
    ceiling: usize,
) -> Result<VRComplex, ComplexError> {
    if !(r > 0.0) {
        return Err(ComplexError::NonPositiveScale(r));
    }
    let n = cloud.len();
    let mut simplices: Vec<Vec<Vec<u32>>> = Vec::with_capacity(dim_cap + 1);
    simplices.push((0..n as u32).map(|v| vec![v]).collect());
    let mut total = n;

    // upper adjacency: neighbors with a larger index, sorted
    let upper: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            (i + 1..n)
                .filter(|&j| cloud.dist(i, j) < r)
                .map(|j| j as u32)
                .collect()
        })
        .collect();

    // cofaces[s] = candidate extensions of simplex s: vertices above its max
    // that are adjacent to every vertex of s
    let mut frontier: Vec<(Vec<u32>, Vec<u32>)> = (0..n as u32)
        .map(|v| (vec![v], upper[v as usize].clone()))
        .collect();

    for dim in 1..=dim_cap {
        let mut next: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        for (simplex, cands) in &frontier {
            for &v in cands {
                let mut extended = simplex.clone();
                extended.push(v);
                let new_cands = intersect_sorted(cands, &upper[v as usize]);
                next.push((extended, new_cands));
            }
        }
        total += next.len();
        if total > ceiling {
            return Err(ComplexError::SimplexCeiling { ceiling, dim });
        }
        if next.is_empty() {
            frontier = next;
            break;
        }
        simplices.push(next.iter().map(|(s, _)| s.clone()).collect());
        frontier = next;
    }
    drop(frontier);

    Ok(VRComplex {
        scale: r,
        dim_cap,
        vertex_count: n,
        simplices,
    })
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
