//! Exact computer algebra for quantized enveloping algebras.
//!
//! The crate constructs PBW-type bases of the positive half of U_q(g) for
//! finite-type g, computes the Drinfeld pairing and the transition matrices
//! between PBW bases attached to different reduced words of the longest
//! Weyl group element, builds tensor Fock-space representations of the
//! quantized coordinate ring A_q(g), and cross-checks the two against each
//! other: the intertwiner matrix between two Fock modules equals the PBW
//! transition matrix, entry for entry.
//!
//! All arithmetic is exact over Q(q); see [`scalar::Scalar`].
//!
//! Module map:
//! - [`scalar`]: the coefficient field Q(q) and q-combinatorics;
//! - [`root`]: Cartan data, Weyl combinatorics, reduced words of w0;
//! - [`word`]: elements of the nilpotent halves as word polynomials;
//! - [`linalg`]: exact dense linear algebra over Q(q);
//! - [`repmod`]: integrable modules, braid operators, PBW root vectors;
//! - [`pair`]: the Drinfeld pairing, Gram coordinates, transition matrices;
//! - [`fock`]: truncated tensor Fock representations and the intertwiner;
//! - [`rmatrix`]: truncated R-matrices and RTT verification;
//! - [`report`]: structured pass/fail reports for the verification suites.

pub mod fock;
pub mod linalg;
pub mod pair;
pub mod repmod;
pub mod report;
pub mod rmatrix;
pub mod root;
pub mod verify;
pub mod scalar;
pub mod word;

pub use root::RootDatum;
pub use scalar::Scalar;
