//! The 13-outcome worked example used as a golden reference.

use alloc::vec::Vec;

use crate::prob::{ProbVec, Tolerances};

pub const WORKED_P: [f64; 13] = [
    0.35, 0.095, 0.09, 0.09, 0.09, 0.09, 0.08, 0.06, 0.035, 0.015, 0.003, 0.001, 0.001,
];

pub const WORKED_Q: [f64; 13] = [
    0.15, 0.15, 0.145, 0.145, 0.14, 0.13, 0.05, 0.03, 0.03, 0.027, 0.002, 0.0005, 0.0005,
];

pub const WORKED_GLB: [f64; 13] = [
    0.15, 0.15, 0.145, 0.145, 0.125, 0.09, 0.08, 0.055, 0.03, 0.025, 0.003, 0.001, 0.001,
];

pub const WORKED_INVERSION_POINTS: [usize; 5] = [14, 11, 9, 6, 1];

/// Nonzero cells `(row, col, value)` of the expected coupling, 1-based.
pub const WORKED_CELLS: [(usize, usize, f64); 25] = [
    (1, 1, 0.15),
    (1, 2, 0.145),
    (1, 3, 0.055),
    (2, 2, 0.005),
    (2, 4, 0.09),
    (3, 3, 0.09),
    (4, 4, 0.055),
    (4, 5, 0.035),
    (5, 5, 0.09),
    (6, 5, 0.015),
    (6, 6, 0.075),
    (7, 6, 0.055),
    (7, 7, 0.025),
    (8, 7, 0.025),
    (8, 8, 0.03),
    (8, 9, 0.005),
    (9, 9, 0.025),
    (9, 10, 0.01),
    (10, 10, 0.015),
    (11, 10, 0.002),
    (11, 11, 0.001),
    (12, 11, 0.0005),
    (12, 12, 0.0005),
    (13, 11, 0.0005),
    (13, 13, 0.0005),
];

pub fn worked_p() -> ProbVec {
    ProbVec::new(&WORKED_P, &Tolerances::default()).expect("valid fixture")
}

pub fn worked_q() -> ProbVec {
    ProbVec::new(&WORKED_Q, &Tolerances::default()).expect("valid fixture")
}

/// Dense 13×13 expected coupling, 0-based.
pub fn worked_matrix() -> Vec<Vec<f64>> {
    let mut m = alloc::vec![alloc::vec![0.0; 13]; 13];
    for &(i, j, v) in WORKED_CELLS.iter() {
        m[i - 1][j - 1] = v;
    }
    m
}
