use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::prob::{ProbVec, Tolerances};

/// Segment boundaries `i₀ = n+1 > i₁ > … > i_k = 1` (1-based).
///
/// Segment `s` covers the 1-based indices `i_s ..= i_{s-1} - 1`. On odd
/// segments the suffix sums of the (oriented) `p` dominate those of `q`
/// (a p-segment); on even segments the reverse holds (a q-segment).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversionPoints {
    pub indices: Vec<usize>,
    /// Whether the inputs were exchanged so that `p` wins at the last
    /// position where the two differ.
    pub swapped: bool,
}

impl InversionPoints {
    /// Number of segments.
    pub fn k(&self) -> usize {
        self.indices.len() - 1
    }

    /// 0-based half-open range of segment `s` (1-based segment number).
    pub fn segment(&self, s: usize) -> core::ops::Range<usize> {
        self.indices[s] - 1..self.indices[s - 1] - 1
    }

    /// True when segment `s` is a p-segment.
    pub fn is_p_segment(s: usize) -> bool {
        s % 2 == 1
    }
}

/// `suffix[i] = Σ_{k ≥ i} v[k]` for 0-based `i`, with `suffix[n] = 0`.
pub(crate) fn suffix_sums(v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len() + 1];
    for i in (0..v.len()).rev() {
        out[i] = out[i + 1] + v[i];
    }
    out
}

/// Decides the orientation of `(p, q)`: `true` means the pair must be
/// swapped. Uses the last position whose suffix sums differ by more than
/// `eps_zero`, which in exact arithmetic is the last position where the
/// components themselves differ.
pub(crate) fn needs_swap(sp: &[f64], sq: &[f64], eps_zero: f64) -> Option<bool> {
    (0..sp.len())
        .rev()
        .map(|i| sp[i] - sq[i])
        .find(|d| d.abs() > eps_zero)
        .map(|d| d < 0.0)
}

/// Greedy construction of the minimal segment sequence on oriented suffix
/// sums. Returns 1-based boundaries.
pub(crate) fn boundaries(sp: &[f64], sq: &[f64], eps_zero: f64) -> Vec<usize> {
    let n = sp.len() - 1;
    let mut indices = vec![n + 1];
    // 0-based position about to be classified
    let mut i = n;
    let mut s = 1;
    while i > 0 {
        let holds = |pos: usize| {
            let d = sp[pos] - sq[pos];
            if InversionPoints::is_p_segment(s) {
                d >= -eps_zero
            } else {
                d <= eps_zero
            }
        };
        let mut lo = i;
        while lo > 0 && holds(lo - 1) {
            lo -= 1;
        }
        // orientation guarantees the first position satisfies its segment;
        // later segments start at a strict violation of the previous one
        debug_assert!(lo < i, "empty segment {s}");
        if lo == i {
            lo = i - 1;
        }
        indices.push(lo + 1);
        i = lo;
        s += 1;
    }
    indices
}

/// Inversion points of two distributions of equal length.
pub fn inversion_points(p: &ProbVec, q: &ProbVec, tol: &Tolerances) -> Result<InversionPoints> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let (mut sp, mut sq) = (suffix_sums(p.values()), suffix_sums(q.values()));
    let swapped = needs_swap(&sp, &sq, tol.eps_zero).unwrap_or(false);
    if swapped {
        core::mem::swap(&mut sp, &mut sq);
    }
    Ok(InversionPoints {
        indices: boundaries(&sp, &sq, tol.eps_zero),
        swapped,
    })
}
