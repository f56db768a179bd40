//! Reduced simplicial homology over `Z/2` and homological connectivity.
//!
//! Betti numbers come from left-to-right column reduction of the boundary
//! matrices, processed from the top dimension down so that pivot rows of
//! dimension d+1 clear columns of dimension d before they are touched.

pub mod bruteforce;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::VRComplex;

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("dimension {0} out of range 1..={1}")]
    DimOutOfRange(usize, usize),
    #[error("betti computation needs dim_cap >= 1, complex has {0}")]
    CapTooSmall(usize),
}

/// Homological connectivity: the proxy for homotopy connectivity that this
/// crate computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Connectivity {
    /// First nonvanishing reduced Betti number is in dimension `value + 1`.
    Value(i64),
    /// All computed reduced Betti numbers vanish; censored by the cap.
    AtLeast(i64),
}

impl std::fmt::Display for Connectivity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Connectivity::Value(v) => write!(f, "{v}"),
            Connectivity::AtLeast(v) => write!(f, "at least {v} (censored)"),
        }
    }
}

/// Reduced `Z/2` Betti numbers for dimensions `0..dim_cap-1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BettiProfile {
    pub reduced_betti: Vec<usize>,
    pub dim_cap: usize,
    pub connectivity: Connectivity,
    /// The top reported dimension could still change if the cap were raised.
    pub top_dim_flagged: bool,
}

impl BettiProfile {
    pub fn is_censored(&self) -> bool {
        matches!(self.connectivity, Connectivity::AtLeast(_))
    }
}

/// Sparse binary matrix with columns as sorted row-index lists.
#[derive(Debug, Clone)]
pub struct SparseBinMatrix {
    pub rows: usize,
    pub cols: Vec<Vec<u32>>,
}

/// Boundary matrix of the complex in dimension `dim`: columns indexed by
/// dim-simplices, rows by (dim-1)-simplices, entry 1 iff face relation holds.
pub fn boundary_matrix(cx: &VRComplex, dim: usize) -> Result<SparseBinMatrix, HomologyError> {
    if dim < 1 || dim > cx.dim_cap() {
        return Err(HomologyError::DimOutOfRange(dim, cx.dim_cap()));
    }
    let faces = cx.simplices(dim - 1);
    let index: HashMap<&[u32], u32> = faces
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i as u32))
        .collect();
    let cols = cx
        .simplices(dim)
        .iter()
        .map(|s| {
            let mut col: Vec<u32> = (0..s.len())
                .map(|omit| {
                    let face: Vec<u32> = s
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != omit)
                        .map(|(_, &v)| v)
                        .collect();
                    *index.get(face.as_slice()).expect("downward closure")
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    Ok(SparseBinMatrix {
        rows: faces.len(),
        cols,
    })
}

/// Left-to-right column reduction over `Z/2` with low-entry lookup.
/// Returns the rank and the set of pivot rows.
fn reduce(matrix: &mut SparseBinMatrix, cleared: &[bool]) -> (usize, Vec<bool>) {
    let mut pivot_of_row: HashMap<u32, usize> = HashMap::new();
    let mut pivot_rows = vec![false; matrix.rows];
    let mut rank = 0usize;
    for j in 0..matrix.cols.len() {
        if cleared.get(j).copied().unwrap_or(false) {
            matrix.cols[j].clear();
            continue;
        }
        let mut col = std::mem::take(&mut matrix.cols[j]);
        while let Some(&low) = col.last() {
            match pivot_of_row.get(&low) {
                Some(&other) => {
                    col = add_cols(&col, &matrix.cols[other]);
                }
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            pivot_of_row.insert(low, j);
            pivot_rows[low as usize] = true;
            rank += 1;
        }
        matrix.cols[j] = col;
    }
    (rank, pivot_rows)
}

/// Symmetric difference of two sorted index lists.
fn add_cols(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Reduced Betti numbers for dimensions `0..dim_cap-1`.
pub fn betti(cx: &VRComplex) -> Result<BettiProfile, HomologyError> {
    let cap = cx.dim_cap();
    if cap < 1 {
        return Err(HomologyError::CapTooSmall(cap));
    }
    let top = cx.top_dim().min(cap);

    // ranks[d] = rank of boundary_d, for d = 1..=top
    let mut ranks = vec![0usize; top + 1];
    let mut clear_next: Vec<bool> = Vec::new();
    for d in (1..=top).rev() {
        let mut m = boundary_matrix(cx, d)?;
        let (rank, pivot_rows) = reduce(&mut m, &clear_next);
        // clearing: pivot rows of boundary_{d} index (d-1)-simplices whose
        // own boundary columns reduce to zero
        clear_next = pivot_rows;
        ranks[d] = rank;
    }

    let count = |d: usize| cx.simplices(d).len();
    let rank = |d: usize| if d <= top { ranks.get(d).copied().unwrap_or(0) } else { 0 };
    let mut reduced = Vec::with_capacity(cap);
    for d in 0..cap {
        let cycles = if d == 0 {
            count(0) // unreduced Z_0 = all vertices
        } else {
            count(d) - rank(d)
        };
        let boundaries = rank(d + 1);
        let b = cycles - boundaries;
        reduced.push(if d == 0 { b.saturating_sub(1) } else { b });
    }

    let connectivity = connectivity_of(&reduced, cap);
    Ok(BettiProfile {
        reduced_betti: reduced,
        dim_cap: cap,
        connectivity,
        top_dim_flagged: true,
    })
}

fn connectivity_of(reduced: &[usize], cap: usize) -> Connectivity {
    match reduced.iter().position(|&b| b != 0) {
        Some(i) => Connectivity::Value(i as i64 - 1),
        None => Connectivity::AtLeast(cap as i64 - 1),
    }
}

/// Connectivity read off a profile: (least nonzero dimension) - 1, censored
/// when everything computed vanishes.
pub fn homological_connectivity(profile: &BettiProfile) -> Connectivity {
    connectivity_of(&profile.reduced_betti, profile.dim_cap)
}
