//! Minimum-entropy couplings of discrete distributions.
//!
//! The crate computes
//!
//! * the greatest lower bound `p ∧ q` of distributions in the majorization
//!   lattice ([`lattice`]),
//! * a coupling of two marginals whose entropy is at most one bit above
//!   `H(p ∧ q)`, and therefore at most one bit above the (NP-hard) optimum
//!   ([`pairwise`]),
//! * a joint distribution of `k` marginals within `⌈log₂ k⌉` bits of the
//!   optimum ([`kway`]),
//! * the exact optimum for tiny instances by vertex enumeration
//!   ([`oracle`]).
//!
//! Entropies are in bits. Everything is `no_std` with `alloc`.
//!
//! ```
//! use mincoupling_core::{min_entropy_coupling, glb, ProbVec, Tolerances};
//!
//! let tol = Tolerances::default();
//! let p = ProbVec::new(&[0.5, 0.5], &tol).unwrap();
//! let q = ProbVec::new(&[0.6, 0.4], &tol).unwrap();
//! let m = min_entropy_coupling(&p, &q, &tol).unwrap();
//! let lower = glb(&p, &q).z.entropy();
//! assert!(m.entropy() >= lower && m.entropy() <= lower + 1.0);
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod fixtures;
pub mod kway;
pub mod lattice;
pub mod oracle;
pub mod pairwise;
pub mod prob;

pub use error::{Error, Result};
pub use kway::{
    k_min_entropy_coupling, k_min_entropy_coupling_traced, marginalize, JointEntry, SparseJoint,
};
pub use lattice::{glb, glb_all, half, half_pow, GlbResult};
pub use oracle::{enumerate_vertices, exact_min_entropy, VertexCoupling};
pub use pairwise::{
    bounds, distance_interval, inversion_points, min_entropy_coupling, split, BoundsReport,
    CouplingMatrix, DistanceInterval, InversionPoints, SplitResult,
};
pub use prob::{entropy, majorizes, make_probvec, ProbVec, Tolerances};
