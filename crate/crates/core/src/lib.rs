//! Exact determinants and permanents of r-line circulant matrices.
//!
//! * [`poly`]: sparse integer polynomials and Kronecker packing.
//! * [`circulant`]: matrices, exhaustive expansions, step permutations.
//! * [`oracle`]: closed-form coefficient rules for `(d; 0, a, b)`.
//! * [`fastperm`]: interpolated determinants, Bareiss and Ryser.
//! * [`gt`]: GT-systems, WLP kernel dimension, minimality certificates.
//! * [`cli`]: the `circulant` command-line front end.

pub mod circulant;
pub mod cli;
pub mod error;
pub mod fastperm;
pub mod gt;
pub mod linalg;
pub mod modular;
pub mod oracle;
pub mod poly;

pub use circulant::{CirculantSpec, Mode, StepPermutation};
pub use error::{Error, Result};
pub use poly::{ExponentVector, IntPolynomial};
