//! Principal minor assignment for magnitude-symmetric matrices.
//!
//! Given (possibly perturbed) access to the principal minors of an unknown
//! magnitude-symmetric matrix `K`, [`recovery::recover`] rebuilds a matrix
//! with the same principal minors from `O(n^2)` queries of bounded order.
//! The supporting pieces are exposed as separate modules:
//!
//! * [`minors`]: matrices, determinants, oracles, genericity checks, instance generation
//! * [`graph`]: charged graphs, GF(2) cycle spaces, blocks, minimal cycle bases
//! * [`positive_basis`]: bases of the positive cycle space
//! * [`recovery`]: sign extraction and the exact recovery pipeline
//! * [`equivalence`]: the minor-preserving equivalence class and the `rho` distance
//! * [`noisy`]: recovery from perturbed minors and the adversarial lower-bound instance
//! * [`io`]: JSON file formats

pub mod equivalence;
pub mod error;
pub mod graph;
pub mod io;
pub mod minors;
pub mod noisy;
pub mod positive_basis;
pub mod recovery;
mod sign;
pub mod subset;
mod tol;

pub use error::{Error, Result};
pub use graph::{ChargedGraph, CycleSubgraph, EdgeVector};
pub use minors::{principal_minor, Matrix, MinorOracle};
pub use sign::Sign;
pub use tol::Tolerances;
