//! Greatest lower bound in the majorization lattice and the `half` operator.

use alloc::vec::Vec;

use crate::prob::{ProbVec, DEFAULT_EPS_ZERO};

/// `p ∧ q` together with the prefix sums it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct GlbResult {
    pub z: ProbVec,
    pub prefix_p: Vec<f64>,
    pub prefix_q: Vec<f64>,
}

fn prefix_sums(values: &[f64], n: usize) -> Vec<f64> {
    let mut acc = 0.0;
    (0..n)
        .map(|i| {
            acc += values.get(i).copied().unwrap_or(0.0);
            acc
        })
        .collect()
}

/// Greatest lower bound of two distributions, padded to a common length.
///
/// Component `i` is `min(P_i, Q_i) - min(P_{i-1}, Q_{i-1})` where `P` and `Q`
/// are prefix sums. The pointwise minimum of two concave sequences is concave,
/// so the result is already non-increasing.
pub fn glb(p: &ProbVec, q: &ProbVec) -> GlbResult {
    let n = p.len().max(q.len());
    let prefix_p = prefix_sums(p.values(), n);
    let prefix_q = prefix_sums(q.values(), n);
    let mut z = Vec::with_capacity(n);
    let mut prev = 0.0;
    for i in 0..n {
        let cur = prefix_p[i].min(prefix_q[i]);
        let mut zi = cur - prev;
        if zi < 0.0 && zi > -DEFAULT_EPS_ZERO {
            zi = 0.0;
        }
        z.push(zi);
        prev = cur;
    }
    GlbResult {
        z: ProbVec::from_sorted(z),
        prefix_p,
        prefix_q,
    }
}

/// `p⁽¹⁾ ∧ p⁽²⁾ ∧ …`, folded left to right. `None` for an empty slice.
pub fn glb_all(ps: &[ProbVec]) -> Option<ProbVec> {
    let (first, rest) = ps.split_first()?;
    Some(rest.iter().fold(first.clone(), |acc, p| glb(&acc, p).z))
}

/// Splits every component into two equal halves: `(p₁/2, p₁/2, …, pₙ/2, pₙ/2)`.
pub fn half(p: &ProbVec) -> ProbVec {
    let values = p
        .values()
        .iter()
        .flat_map(|&v| [v / 2.0, v / 2.0])
        .collect();
    ProbVec::from_sorted(values)
}

/// `half` applied `i` times; `half_pow(p, 0)` is `p` itself.
pub fn half_pow(p: &ProbVec, i: u32) -> ProbVec {
    (0..i).fold(p.clone(), |acc, _| half(&acc))
}
