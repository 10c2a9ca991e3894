//! Validated probability vectors and the basic predicates on them.
//!
//! Every [`ProbVec`] is stored in non-increasing order together with the
//! permutation that maps each sorted position back to the caller's index.
//! All algorithms in this crate work in sorted coordinates; the permutation is
//! only consulted when results are reported back to the caller.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};

/// Numerical slack used when validating and comparing distributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Maximum deviation of the total mass from 1.
    pub eps_sum: f64,
    /// Magnitude below which a value is treated as exactly zero.
    pub eps_zero: f64,
}

pub const DEFAULT_EPS_SUM: f64 = 1e-9;
pub const DEFAULT_EPS_ZERO: f64 = 1e-12;

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_sum: DEFAULT_EPS_SUM,
            eps_zero: DEFAULT_EPS_ZERO,
        }
    }
}

impl Tolerances {
    pub fn new(eps_sum: f64, eps_zero: f64) -> Result<Self> {
        // NaN fails every comparison below.
        if 0.0 < eps_zero && eps_zero < eps_sum && eps_sum < 1.0 {
            Ok(Tolerances { eps_sum, eps_zero })
        } else {
            Err(Error::BadTolerances { eps_sum, eps_zero })
        }
    }
}

/// A discrete distribution sorted in non-increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVec {
    values: Vec<f64>,
    perm: Vec<usize>,
}

impl ProbVec {
    /// Validates `raw` and sorts it descending.
    ///
    /// Ties keep ascending original index. Entries in `[-eps_zero, 0)` are
    /// clamped to zero; the total is never rescaled.
    pub fn new(raw: &[f64], tol: &Tolerances) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Empty);
        }
        let mut clamped = Vec::with_capacity(raw.len());
        for (index, &value) in raw.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NotFinite { index });
            }
            if value < -tol.eps_zero {
                return Err(Error::NegativeMass { index, value });
            }
            clamped.push(value.max(0.0));
        }
        let total: f64 = clamped.iter().sum();
        if (total - 1.0).abs() > tol.eps_sum {
            return Err(Error::BadTotal {
                total,
                eps_sum: tol.eps_sum,
            });
        }
        let mut perm: Vec<usize> = (0..clamped.len()).collect();
        // stable: equal values stay in ascending index order
        perm.sort_by(|&a, &b| {
            clamped[b]
                .partial_cmp(&clamped[a])
                .unwrap_or(Ordering::Equal)
        });
        let values = perm.iter().map(|&i| clamped[i]).collect();
        Ok(ProbVec { values, perm })
    }

    /// Builds a vector whose values are already sorted, with the identity
    /// permutation. Callers guarantee the invariants.
    pub(crate) fn from_sorted(values: Vec<f64>) -> Self {
        debug_assert!(!values.is_empty());
        let perm = (0..values.len()).collect();
        ProbVec { values, perm }
    }

    /// The point mass `(1, 0, ..., 0)` of length `n`.
    pub fn point_mass(n: usize) -> Self {
        let n = n.max(1);
        let mut values = vec![0.0; n];
        values[0] = 1.0;
        Self::from_sorted(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `perm()[i]` is the caller's index of sorted component `i`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; a `ProbVec` has at least one component.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Components in the caller's original index order.
    pub fn to_original_order(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        for (sorted, &orig) in self.perm.iter().enumerate() {
            out[orig] = self.values[sorted];
        }
        out
    }

    /// Appends zeros up to length `n`. The new components get fresh
    /// original indices `len..n`.
    pub fn pad_to(&self, n: usize) -> Result<ProbVec> {
        if n < self.len() {
            return Err(Error::ShrinkRequested {
                len: self.len(),
                requested: n,
            });
        }
        let mut out = self.clone();
        out.values.resize(n, 0.0);
        out.perm.extend(self.len()..n);
        Ok(out)
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> f64 {
        entropy(&self.values)
    }

    /// True iff `self` majorizes `other` (`other ⪯ self`), with the shorter
    /// vector padded by zeros and prefix sums compared with `eps_zero` slack.
    pub fn majorizes(&self, other: &ProbVec) -> bool {
        majorizes(self, other)
    }

    /// Sums components over the blocks of `partition` (indices are sorted
    /// positions). The blocks must be disjoint, nonempty and cover `0..len`.
    pub fn aggregate(&self, partition: &[Vec<usize>]) -> Result<ProbVec> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut sums = Vec::with_capacity(partition.len());
        for block in partition {
            if block.is_empty() {
                return Err(Error::BadPartition {
                    reason: "empty block",
                });
            }
            let mut s = 0.0;
            for &i in block {
                if i >= n {
                    return Err(Error::BadPartition {
                        reason: "index out of range",
                    });
                }
                if seen[i] {
                    return Err(Error::BadPartition {
                        reason: "overlapping blocks",
                    });
                }
                seen[i] = true;
                s += self.values[i];
            }
            sums.push(s);
        }
        if seen.iter().any(|&covered| !covered) {
            return Err(Error::BadPartition {
                reason: "blocks do not cover every index",
            });
        }
        if sums.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self::from_unsorted(sums))
    }

    /// Sorts an already-validated vector, recording the permutation.
    pub(crate) fn from_unsorted(raw: Vec<f64>) -> Self {
        let mut perm: Vec<usize> = (0..raw.len()).collect();
        perm.sort_by(|&a, &b| raw[b].partial_cmp(&raw[a]).unwrap_or(Ordering::Equal));
        let values = perm.iter().map(|&i| raw[i]).collect();
        ProbVec { values, perm }
    }
}

/// Convenience wrapper over [`ProbVec::new`].
pub fn make_probvec(raw: &[f64], tol: &Tolerances) -> Result<ProbVec> {
    ProbVec::new(raw, tol)
}

/// Shannon entropy in bits of any non-negative slice; zero terms are skipped.
pub fn entropy(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| -v * libm::log2(v))
        .sum()
}

/// True iff `a` majorizes `b`.
pub fn majorizes(a: &ProbVec, b: &ProbVec) -> bool {
    prefix_dominates(&a.values, &b.values, DEFAULT_EPS_ZERO)
}

/// True iff every prefix sum of `a` is at least the matching prefix sum of
/// `b` minus `slack`. Both slices are taken in the given order and the
/// shorter one is implicitly padded with zeros.
pub fn prefix_dominates(a: &[f64], b: &[f64], slack: f64) -> bool {
    let n = a.len().max(b.len());
    let (mut sa, mut sb) = (0.0, 0.0);
    for i in 0..n {
        sa += a.get(i).copied().unwrap_or(0.0);
        sb += b.get(i).copied().unwrap_or(0.0);
        if sa < sb - slack {
            return false;
        }
    }
    true
}

/// Sorts a copy of `values` in non-increasing order.
pub fn sorted_desc(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
    v
}
