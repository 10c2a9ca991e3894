//! Two-marginal coupling whose entropy is within one bit of the minimum.
//!
//! The construction walks the inversion-point segments from the tail of the
//! distributions towards the head. On a p-segment every column `j` is filled
//! exactly: `z_j` is split into a diagonal part and a residual, and the
//! residuals of earlier rows close the gap. On a q-segment the roles of rows
//! and columns are exchanged. Each nonzero entry of the output is one of the
//! (at most two) pieces of a component of `p ∧ q`, which bounds the entropy
//! by `H(p ∧ q) + 1`.

mod inversion;
mod split;

use alloc::vec;
use alloc::vec::Vec;

pub use inversion::{inversion_points, InversionPoints};
use split::split_seq;
pub use split::{split, SplitResult};

use crate::error::{Error, Result};
use crate::lattice::glb;
use crate::prob::{entropy, ProbVec, Tolerances};

const MARGINAL_CHECK: f64 = 1e-9;

/// How one component `z_j` of `p ∧ q` was distributed over the matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub z: f64,
    /// Value written at the diagonal cell `(j, j)`.
    pub diagonal: f64,
    /// Value written at `residual_cell`, zero when the split was whole.
    pub residual: f64,
    pub residual_cell: Option<(usize, usize)>,
}

/// Dense square joint distribution in sorted coordinates.
///
/// Row `i` belongs to the `i`-th largest component of the (padded) row
/// marginal, column `j` to the `j`-th largest of the column marginal.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    n: usize,
    data: Vec<f64>,
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
    rows_orig: usize,
    cols_orig: usize,
    pieces: Vec<Piece>,
}

impl CouplingMatrix {
    /// Side length after padding.
    pub fn side(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Row-major cells in sorted coordinates.
    pub fn cells(&self) -> &[f64] {
        &self.data
    }

    pub fn row_perm(&self) -> &[usize] {
        &self.row_perm
    }

    pub fn col_perm(&self) -> &[usize] {
        &self.col_perm
    }

    /// Lengths of the two marginals before padding.
    pub fn original_shape(&self) -> (usize, usize) {
        (self.rows_orig, self.cols_orig)
    }

    /// One entry per component of `p ∧ q`, in sorted order.
    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Number of entries above `eps_zero`.
    pub fn nnz(&self, eps_zero: f64) -> usize {
        self.data.iter().filter(|&&v| v > eps_zero).count()
    }

    pub fn entropy(&self) -> f64 {
        entropy(&self.data)
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.data.chunks(self.n).map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for row in self.data.chunks(self.n) {
            for (acc, v) in out.iter_mut().zip(row) {
                *acc += v;
            }
        }
        out
    }

    /// Matrix in sorted order with padded rows and columns dropped.
    pub fn sorted_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows_orig)
            .map(|i| (0..self.cols_orig).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Matrix in the caller's original index order, padding dropped.
    pub fn original_rows(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.cols_orig]; self.rows_orig];
        for i in 0..self.n {
            let oi = self.row_perm[i];
            if oi >= self.rows_orig {
                continue;
            }
            for j in 0..self.n {
                let oj = self.col_perm[j];
                if oj < self.cols_orig {
                    out[oi][oj] = self.get(i, j);
                }
            }
        }
        out
    }

    /// The same coupling with the roles of the marginals exchanged.
    pub fn transpose(&self) -> CouplingMatrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        CouplingMatrix {
            n,
            data,
            row_perm: self.col_perm.clone(),
            col_perm: self.row_perm.clone(),
            rows_orig: self.cols_orig,
            cols_orig: self.rows_orig,
            pieces: self
                .pieces
                .iter()
                .map(|pc| Piece {
                    residual_cell: pc.residual_cell.map(|(r, c)| (c, r)),
                    ..*pc
                })
                .collect(),
        }
    }
}

/// Scratch state of one run over oriented marginals `a` (rows) and `b`
/// (columns).
struct Filler<'a> {
    n: usize,
    a: &'a [f64],
    b: &'a [f64],
    z: &'a [f64],
    eps_zero: f64,
    data: Vec<f64>,
    /// Pending residuals of rows (p-segments).
    r: Vec<f64>,
    /// Pending residuals of columns (q-segments).
    c: Vec<f64>,
    pieces: Vec<Piece>,
    row_acc: Vec<f64>,
    col_acc: Vec<f64>,
}

impl<'a> Filler<'a> {
    fn new(a: &'a [f64], b: &'a [f64], z: &'a [f64], eps_zero: f64) -> Self {
        let n = a.len();
        Filler {
            n,
            a,
            b,
            z,
            eps_zero,
            data: vec![0.0; n * n],
            r: vec![0.0; n],
            c: vec![0.0; n],
            pieces: z
                .iter()
                .map(|&z| Piece {
                    z,
                    diagonal: 0.0,
                    residual: 0.0,
                    residual_cell: None,
                })
                .collect(),
            row_acc: vec![0.0; n],
            col_acc: vec![0.0; n],
        }
    }

    fn put(&mut self, i: usize, j: usize, v: f64) {
        debug_assert_eq!(
            self.data[i * self.n + j],
            0.0,
            "cell ({i},{j}) written twice"
        );
        self.data[i * self.n + j] = v;
        self.row_acc[i] += v;
        self.col_acc[j] += v;
    }

    fn zeroed(&self, v: f64) -> f64 {
        if v < self.eps_zero {
            0.0
        } else {
            v
        }
    }

    /// Moves the pending residual of `owner` into cell `(i, j)`.
    fn settle(&mut self, owner: usize, i: usize, j: usize, v: f64) {
        self.put(i, j, v);
        self.pieces[owner].residual_cell = Some((i, j));
    }

    fn p_segment(&mut self, lo: usize, end: usize) -> Result<()> {
        for j in (lo..end).rev() {
            // oldest pending residual first
            let pending = self.r[j + 1..end].iter().rev().copied();
            let sr = split_seq(self.z[j], self.b[j], pending, self.eps_zero)?;
            for l in end - sr.taken..end {
                let v = core::mem::take(&mut self.r[l]);
                if v != 0.0 {
                    self.settle(l, l, j, v);
                }
            }
            let (d, res) = (self.zeroed(sr.z_d), self.zeroed(sr.z_r));
            if d != 0.0 {
                self.put(j, j, d);
            }
            self.r[j] = res;
            self.pieces[j].diagonal = d;
            self.pieces[j].residual = res;
        }
        if lo != 0 {
            for l in lo..end {
                let v = core::mem::take(&mut self.r[l]);
                if v != 0.0 {
                    self.settle(l, l, lo - 1, v);
                }
            }
        }
        Ok(())
    }

    fn q_segment(&mut self, lo: usize, end: usize) -> Result<()> {
        for j in (lo..end).rev() {
            let pending = self.c[j + 1..end].iter().rev().copied();
            let sr = split_seq(self.z[j], self.a[j], pending, self.eps_zero)?;
            for l in end - sr.taken..end {
                let v = core::mem::take(&mut self.c[l]);
                if v != 0.0 {
                    self.settle(l, j, l, v);
                }
            }
            let (d, res) = (self.zeroed(sr.z_d), self.zeroed(sr.z_r));
            if d != 0.0 {
                self.put(j, j, d);
            }
            self.c[j] = res;
            self.pieces[j].diagonal = d;
            self.pieces[j].residual = res;
        }
        if lo != 0 {
            for l in lo..end {
                let v = core::mem::take(&mut self.c[l]);
                if v != 0.0 {
                    self.settle(l, lo - 1, l, v);
                }
            }
        }
        Ok(())
    }

    /// Rows and columns of a finished segment never change again.
    fn segment_satisfied(&self, lo: usize, end: usize) -> bool {
        (lo..end).all(|i| {
            (self.row_acc[i] - self.a[i]).abs() <= MARGINAL_CHECK
                && (self.col_acc[i] - self.b[i]).abs() <= MARGINAL_CHECK
        })
    }

    fn run(mut self, ip: &InversionPoints, eps_sum: f64) -> Result<(Vec<f64>, Vec<Piece>)> {
        for s in 1..=ip.k() {
            let seg = ip.segment(s);
            if InversionPoints::is_p_segment(s) {
                self.p_segment(seg.start, seg.end)?;
            } else {
                self.q_segment(seg.start, seg.end)?;
            }
            debug_assert!(
                self.segment_satisfied(seg.start, seg.end),
                "segment {s} left a row or column unsatisfied"
            );
        }
        if self.r.iter().chain(&self.c).any(|&v| v > eps_sum) {
            return Err(Error::InternalInvariant {
                reason: "residual arrays not drained",
            });
        }
        debug_assert_eq!(self.n * self.n, self.data.len());
        Ok((self.data, self.pieces))
    }
}

/// Builds a coupling of `p` and `q` with `H(p ∧ q) ≤ H(M) ≤ H(p ∧ q) + 1`.
///
/// The shorter marginal is padded with zeros; the matrix is square with side
/// `max(p.len(), q.len())` and in sorted coordinates. Runs in `O(n²)`.
pub fn min_entropy_coupling(p: &ProbVec, q: &ProbVec, tol: &Tolerances) -> Result<CouplingMatrix> {
    let n = p.len().max(q.len());
    let (pp, qp) = (p.pad_to(n)?, q.pad_to(n)?);
    let z = glb(&pp, &qp).z;
    let ip = inversion_points(&pp, &qp, tol)?;
    let equal = ip.k() == 1
        && pp
            .values()
            .iter()
            .zip(qp.values())
            .all(|(a, b)| (a - b).abs() <= tol.eps_zero);

    let (a, b) = if ip.swapped { (&qp, &pp) } else { (&pp, &qp) };
    let (data, pieces) = if equal {
        diagonal(a.values())
    } else {
        Filler::new(a.values(), b.values(), z.values(), tol.eps_zero).run(&ip, tol.eps_sum)?
    };
    let m = CouplingMatrix {
        n,
        data,
        row_perm: a.perm().to_vec(),
        col_perm: b.perm().to_vec(),
        rows_orig: if ip.swapped { q.len() } else { p.len() },
        cols_orig: if ip.swapped { p.len() } else { q.len() },
        pieces,
    };
    Ok(if ip.swapped { m.transpose() } else { m })
}

fn diagonal(v: &[f64]) -> (Vec<f64>, Vec<Piece>) {
    let n = v.len();
    let mut data = vec![0.0; n * n];
    for (i, &x) in v.iter().enumerate() {
        data[i * n + i] = x;
    }
    let pieces = v
        .iter()
        .map(|&z| Piece {
            z,
            diagonal: z,
            residual: 0.0,
            residual_cell: None,
        })
        .collect();
    (data, pieces)
}

/// Entropy bounds that need only the marginals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsReport {
    pub h_p: f64,
    pub h_q: f64,
    /// `H(p ∧ q)`: lower bound on the entropy of any coupling.
    pub h_glb: f64,
    /// `H(p) + H(q) - H(p ∧ q)`: upper bound on the mutual information.
    pub mi_upper_improved: f64,
    /// `min(H(p), H(q))`.
    pub mi_upper_classic: f64,
    /// `max(H(p), H(q))`.
    pub joint_lower_classic: f64,
}

pub fn bounds(p: &ProbVec, q: &ProbVec) -> BoundsReport {
    let (h_p, h_q) = (p.entropy(), q.entropy());
    let h_glb = glb(p, q).z.entropy();
    BoundsReport {
        h_p,
        h_q,
        h_glb,
        mi_upper_improved: h_p + h_q - h_glb,
        mi_upper_classic: h_p.min(h_q),
        joint_lower_classic: h_p.max(h_q),
    }
}

/// Certified interval around `D(p, q) = 2·W(p, q) − H(p) − H(q)`, where `W`
/// is the minimum entropy over all couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceInterval {
    pub lower: f64,
    pub upper: f64,
    /// `lower + 1`, within one bit of the true value.
    pub estimate: f64,
}

pub fn distance_interval(p: &ProbVec, q: &ProbVec, tol: &Tolerances) -> Result<DistanceInterval> {
    let (h_p, h_q) = (p.entropy(), q.entropy());
    let h_glb = glb(p, q).z.entropy();
    let h_m = min_entropy_coupling(p, q, tol)?.entropy();
    let lower = 2.0 * h_glb - h_p - h_q;
    Ok(DistanceInterval {
        lower,
        upper: 2.0 * h_m - h_p - h_q,
        estimate: lower + 1.0,
    })
}
