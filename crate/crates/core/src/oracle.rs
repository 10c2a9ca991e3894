//! Exact minimum-entropy coupling for desk-sized instances.
//!
//! Entropy is concave, so its minimum over the transportation polytope is
//! attained at a vertex. Vertices are generated by the north-west-corner
//! style recursion over every cell order: pick a cell, give it
//! `min(residual row, residual column)`, retire the exhausted line, repeat.
//! The support of every vertex is a forest, and a forest always has a leaf
//! line whose single cell carries exactly that minimum, so the recursion
//! reaches every vertex.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::prob::{entropy, ProbVec, Tolerances};

/// Default cap on `rows + cols`.
pub const DEFAULT_MAX_DIMS: usize = 10;

/// A basic feasible coupling, row-major in sorted coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexCoupling {
    pub rows: usize,
    pub cols: usize,
    pub m: Vec<f64>,
    pub support_size: usize,
}

impl VertexCoupling {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[i * self.cols + j]
    }

    pub fn entropy(&self) -> f64 {
        entropy(&self.m)
    }
}

fn key(m: &[f64]) -> Vec<i64> {
    m.iter().map(|&v| libm::round(v * 1e12) as i64).collect()
}

struct Search<'a> {
    rows: usize,
    cols: usize,
    eps: f64,
    visited: BTreeSet<Vec<i64>>,
    found: BTreeSet<Vec<i64>>,
    out: &'a mut Vec<VertexCoupling>,
}

impl Search<'_> {
    fn visit(
        &mut self,
        m: &mut Vec<f64>,
        rp: &mut [f64],
        rq: &mut [f64],
        live_r: &mut [bool],
        live_c: &mut [bool],
    ) {
        if !self.visited.insert(key(m)) {
            return;
        }
        let rows_left = live_r.iter().any(|&b| b);
        let cols_left = live_c.iter().any(|&b| b);
        if !rows_left || !cols_left {
            let k = key(m);
            if self.found.insert(k) {
                let support_size = m.iter().filter(|&&v| v > self.eps).count();
                self.out.push(VertexCoupling {
                    rows: self.rows,
                    cols: self.cols,
                    m: m.clone(),
                    support_size,
                });
            }
            return;
        }
        for i in 0..self.rows {
            if !live_r[i] {
                continue;
            }
            for j in 0..self.cols {
                if !live_c[j] {
                    continue;
                }
                let v = rp[i].min(rq[j]);
                let (old_p, old_q) = (rp[i], rq[j]);
                m[i * self.cols + j] += v;
                rp[i] -= v;
                rq[j] -= v;
                let retire_r = rp[i] <= self.eps;
                let retire_c = rq[j] <= self.eps;
                live_r[i] = !retire_r;
                live_c[j] = !retire_c;
                self.visit(m, rp, rq, live_r, live_c);
                live_r[i] = true;
                live_c[j] = true;
                rp[i] = old_p;
                rq[j] = old_q;
                m[i * self.cols + j] -= v;
            }
        }
    }
}

/// All vertices of the polytope of couplings of `p` and `q` (a superset when
/// the polytope is degenerate), each exactly once up to 12 decimal digits.
pub fn enumerate_vertices(
    p: &ProbVec,
    q: &ProbVec,
    tol: &Tolerances,
) -> Result<Vec<VertexCoupling>> {
    enumerate_vertices_capped(p, q, tol, DEFAULT_MAX_DIMS)
}

pub fn enumerate_vertices_capped(
    p: &ProbVec,
    q: &ProbVec,
    tol: &Tolerances,
    max_dims: usize,
) -> Result<Vec<VertexCoupling>> {
    let (rows, cols) = (p.len(), q.len());
    if rows + cols > max_dims {
        return Err(Error::InstanceTooLarge {
            rows,
            cols,
            cap: max_dims,
        });
    }
    let mut rp = p.values().to_vec();
    let mut rq = q.values().to_vec();
    let mut live_r: Vec<bool> = rp.iter().map(|&v| v > tol.eps_zero).collect();
    let mut live_c: Vec<bool> = rq.iter().map(|&v| v > tol.eps_zero).collect();
    let mut m = vec![0.0; rows * cols];
    let mut out = Vec::new();
    let mut search = Search {
        rows,
        cols,
        eps: tol.eps_zero,
        visited: BTreeSet::new(),
        found: BTreeSet::new(),
        out: &mut out,
    };
    search.visit(&mut m, &mut rp, &mut rq, &mut live_r, &mut live_c);
    Ok(out)
}

/// Minimum coupling entropy (bits) and a vertex attaining it.
pub fn exact_min_entropy(
    p: &ProbVec,
    q: &ProbVec,
    tol: &Tolerances,
) -> Result<(f64, VertexCoupling)> {
    exact_min_entropy_capped(p, q, tol, DEFAULT_MAX_DIMS)
}

pub fn exact_min_entropy_capped(
    p: &ProbVec,
    q: &ProbVec,
    tol: &Tolerances,
    max_dims: usize,
) -> Result<(f64, VertexCoupling)> {
    enumerate_vertices_capped(p, q, tol, max_dims)?
        .into_iter()
        .map(|v| (v.entropy(), v))
        .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(core::cmp::Ordering::Equal))
        .ok_or(Error::InternalInvariant {
            reason: "no vertex found",
        })
}
