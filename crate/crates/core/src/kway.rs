//! Joint distribution of `k` marginals by pairwise merges along a balanced
//! binary tree.
//!
//! Leaves hold the input marginals; every internal node couples the sorted
//! value vectors of its two children with [`min_entropy_coupling`] and keeps
//! the nonzero cells together with the concatenated index tuples. Each level
//! costs at most one bit over the greatest lower bound of all marginals, so
//! the root is within `⌈log₂ k⌉` bits of the minimum.
//!
//! When `k` is not a power of two the list is filled up with point masses,
//! whose axes are dropped from the output tuples.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::pairwise::{min_entropy_coupling, Piece};
use crate::prob::{entropy, ProbVec, Tolerances};

/// Default cap on the number of cells of a materialized dense tensor.
pub const DEFAULT_DENSE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct JointEntry {
    pub value: f64,
    /// One original index per marginal.
    pub index: Vec<usize>,
}

/// Sparse `k`-dimensional joint distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseJoint {
    entries: Vec<JointEntry>,
    dims: Vec<usize>,
}

impl SparseJoint {
    pub fn k(&self) -> usize {
        self.dims.len()
    }

    /// Per-axis sizes (the input marginals' lengths).
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Entries sorted by non-increasing value.
    pub fn entries(&self) -> &[JointEntry] {
        &self.entries
    }

    pub fn entropy(&self) -> f64 {
        let v: Vec<f64> = self.entries.iter().map(|e| e.value).collect();
        entropy(&v)
    }

    /// Marginal along `axis` in the caller's original index order.
    pub fn marginal(&self, axis: usize) -> Result<Vec<f64>> {
        let Some(&len) = self.dims.get(axis) else {
            return Err(Error::AxisOutOfRange { axis, k: self.k() });
        };
        let mut out = vec![0.0; len];
        for e in &self.entries {
            out[e.index[axis]] += e.value;
        }
        Ok(out)
    }

    /// Row-major dense tensor, refused when it would exceed `cap` cells.
    pub fn to_dense(&self, cap: usize) -> Result<Vec<f64>> {
        let cells = self.dims.iter().map(|&d| d as u128).product::<u128>();
        if cells > cap as u128 {
            return Err(Error::DenseTooLarge { cells, cap });
        }
        let mut out = vec![0.0; cells as usize];
        for e in &self.entries {
            let flat = e
                .index
                .iter()
                .zip(&self.dims)
                .fold(0usize, |acc, (&i, &d)| acc * d + i);
            out[flat] += e.value;
        }
        Ok(out)
    }
}

/// Marginal of `joint` along `axis` as a validated, sorted distribution.
pub fn marginalize(axis: usize, joint: &SparseJoint, tol: &Tolerances) -> Result<ProbVec> {
    ProbVec::new(&joint.marginal(axis)?, tol)
}

/// A node of the merge tree after it has been computed.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeNode {
    /// Height above the leaves.
    pub level: u32,
    /// Leaves below this node, as positions in the padded marginal list.
    pub leaves: Range<usize>,
    /// Sorted nonzero values of the node's joint distribution (leaves keep
    /// their zeros).
    pub values: Vec<f64>,
    /// For internal nodes: how each component of the children's greatest
    /// lower bound was split.
    pub pieces: Vec<Piece>,
}

/// Every node of the merge tree, leaves first, then level by level.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeTrace {
    pub nodes: Vec<MergeNode>,
    /// Marginals after filling up to a power of two; the extra ones are point
    /// masses.
    pub padded: Vec<ProbVec>,
}

struct Node {
    values: Vec<f64>,
    tuples: Vec<Vec<usize>>,
}

fn merge(left: &Node, right: &Node, tol: &Tolerances) -> Result<(Node, Vec<Piece>)> {
    let lp = ProbVec::from_sorted(left.values.clone());
    let rp = ProbVec::from_sorted(right.values.clone());
    let m = min_entropy_coupling(&lp, &rp, tol)?;
    let side = m.side();
    let mut cells: Vec<(f64, Vec<usize>)> = Vec::new();
    for s in 0..side {
        for t in 0..side {
            let v = m.get(s, t);
            if v > 0.0 {
                if s >= left.values.len() || t >= right.values.len() {
                    return Err(Error::InternalInvariant {
                        reason: "mass placed on a padded row or column",
                    });
                }
                let mut tuple = left.tuples[s].clone();
                tuple.extend_from_slice(&right.tuples[t]);
                cells.push((v, tuple));
            }
        }
    }
    // stable: ties keep row-major order
    cells.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal));
    let (values, tuples) = cells.into_iter().unzip();
    Ok((Node { values, tuples }, m.pieces().to_vec()))
}

/// Joint distribution of all marginals with entropy at most
/// `H(p⁽¹⁾ ∧ … ∧ p⁽ᵏ⁾) + ⌈log₂ k⌉`.
pub fn k_min_entropy_coupling(ps: &[ProbVec], tol: &Tolerances) -> Result<SparseJoint> {
    build(ps, tol, false).map(|(joint, _)| joint)
}

/// Same as [`k_min_entropy_coupling`], also returning every tree node.
pub fn k_min_entropy_coupling_traced(
    ps: &[ProbVec],
    tol: &Tolerances,
) -> Result<(SparseJoint, MergeTrace)> {
    build(ps, tol, true)
}

fn build(ps: &[ProbVec], tol: &Tolerances, trace: bool) -> Result<(SparseJoint, MergeTrace)> {
    let k = ps.len();
    if k < 2 {
        return Err(Error::TooFewMarginals { got: k });
    }
    let n = ps.iter().map(ProbVec::len).max().unwrap_or(1);
    let width = k.next_power_of_two();
    let mut padded = Vec::with_capacity(width);
    for p in ps {
        padded.push(p.pad_to(n)?);
    }
    padded.resize_with(width, || ProbVec::point_mass(n));

    let mut nodes = Vec::new();
    let mut level: Vec<Node> = padded
        .iter()
        .map(|p| Node {
            values: p.values().to_vec(),
            tuples: p.perm().iter().map(|&i| vec![i]).collect(),
        })
        .collect();
    if trace {
        nodes.extend(level.iter().enumerate().map(|(i, leaf)| MergeNode {
            level: 0,
            leaves: i..i + 1,
            values: leaf.values.clone(),
            pieces: Vec::new(),
        }));
    }
    let mut height = 0u32;
    while level.len() > 1 {
        height += 1;
        let span = 1usize << height;
        let mut next = Vec::with_capacity(level.len() / 2);
        for (pair, children) in level.chunks_exact(2).enumerate() {
            let (node, pieces) = merge(&children[0], &children[1], tol)?;
            if trace {
                nodes.push(MergeNode {
                    level: height,
                    leaves: pair * span..(pair + 1) * span,
                    values: node.values.clone(),
                    pieces,
                });
            }
            next.push(node);
        }
        level = next;
    }
    let root = level.pop().expect("tree has a root");
    let entries = root
        .values
        .into_iter()
        .zip(root.tuples)
        .map(|(value, mut index)| {
            index.truncate(k);
            JointEntry { value, index }
        })
        .collect();
    let joint = SparseJoint {
        entries,
        dims: ps.iter().map(ProbVec::len).collect(),
    };
    Ok((joint, MergeTrace { nodes, padded }))
}
