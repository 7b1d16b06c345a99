//! Exact diagonal reduction of matrices over commutative Bezout rings.
//!
//! The crate ships four rings (`Z`, `Z/n`, `GF(p)[x]`, `Z_(p)`) behind one
//! element type and builds on them:
//!
//! * [`stable_range`]: witnesses for stable range 1, square stable range 1
//!   and stable range 2,
//! * [`toeplitz`]: reduction of rows and 2x2 matrices by invertible
//!   Toeplitz matrices `[[a, b], [c, a]]`,
//! * [`edr`]: Hermite rows, the `(p, q)` condition and Smith normal form
//!   through elementary matrices,
//! * [`neat`]: neat factorizations and clean decompositions of quotients,
//! * [`lab`]: brute-force classification of `Z/n` used as ground truth.
//!
//! Every construction returns a certificate whose identities can be replayed
//! by ring multiplication.

pub mod certificate;
pub mod edr;
pub mod error;
pub mod json;
pub mod lab;
pub mod matrix;
pub mod neat;
pub mod par;
pub mod ring;
pub mod rings;
pub mod stable_range;
pub mod toeplitz;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use par::Exec;
pub use ring::{Element, Ring};
pub use rings::scan::SearchBounds;
pub use rings::{enumerate_elements, parse_element, parse_ring};
