use crate::error::{Error, Result};

/// Outcome of splitting `z` against a target `x` and a residual array `A`.
///
/// The selected set `Q` is always a prefix of `A`; `taken` is its length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitResult {
    /// Part of `z` placed on the diagonal.
    pub z_d: f64,
    /// `z - z_d`.
    pub z_r: f64,
    /// `Q = {0, …, taken-1}` as offsets into `A`.
    pub taken: usize,
}

impl SplitResult {
    pub fn selected(&self) -> core::ops::Range<usize> {
        0..self.taken
    }
}

/// Greedy prefix scan: absorb `A[k]` while `sum + A[k] < x`, then put the
/// remainder `x - sum` on the diagonal.
///
/// Requires `z ≥ 0`, `x ≥ 0`, every `A[ℓ] ≤ z` and `x ≤ z + ΣA`, each up to
/// `slack`. The comparison itself also uses `slack`, so values that agree to
/// within it count as a tie and are not absorbed.
pub fn split(z: f64, x: f64, a: &[f64], slack: f64) -> Result<SplitResult> {
    split_seq(z, x, a.iter().copied(), slack)
}

/// [`split`] over residuals supplied in scan order; `taken` counts the
/// absorbed leading items of `a`.
pub(crate) fn split_seq(
    z: f64,
    x: f64,
    a: impl IntoIterator<Item = f64>,
    slack: f64,
) -> Result<SplitResult> {
    if z < -slack || x < -slack {
        return Err(Error::InfeasibleSplit {
            reason: "negative z or x",
        });
    }
    let mut sum = 0.0;
    let mut taken = 0;
    for item in a {
        if sum + item >= x - slack {
            break;
        }
        if item > z + slack {
            return Err(Error::InfeasibleSplit {
                reason: "residual larger than z",
            });
        }
        sum += item;
        taken += 1;
    }
    let z_d = x - sum;
    if z_d > z + slack {
        return Err(Error::InfeasibleSplit {
            reason: "x exceeds z plus the residuals",
        });
    }
    let z_d = z_d.clamp(0.0, z.max(0.0));
    Ok(SplitResult {
        z_d,
        z_r: z.max(0.0) - z_d,
        taken,
    })
}
