//! Characteristic polynomials of black-box matrices.
//!
//! A matrix is only touched through matrix-vector products. The minimal
//! polynomial is computed with Wiedemann's method and factored; the
//! multiplicity of each irreducible factor in the characteristic polynomial
//! is then recovered by one of three methods (nullities of `P^j(A)`, a
//! degree/trace constrained combinatorial search, or an index-calculus
//! linear system over discrete logarithms of `det(lambda I - A)`), combined
//! adaptively. Over the integers the result is lifted from one prime with a
//! gcd-free basis and multifactor Hensel lifting.
//!
//! Module map:
//!
//! - [`ff`]: prime fields, generators, discrete logarithms
//! - [`poly`]: dense polynomials over GF(p) and Z, factorization, lifting, CRT
//! - [`blackbox`]: operators, sparse matrices, Wiedemann kernels
//! - [`multiplicity`]: nullity, combinatorial search, index calculus
//! - [`adaptive`]: the field drivers
//! - [`integer`]: the integer pipeline
//! - [`oracle`]: dense reference implementations
//! - [`explain`]: the decision log behind `--explain`
//! - [`cli`]: SMS files, symmetric graph powers, command implementations
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod adaptive;
pub mod blackbox;
pub mod cli;
pub mod explain;
pub mod ff;
pub mod integer;
pub mod multiplicity;
pub mod oracle;
pub mod poly;

mod error;

pub use error::{Error, Result};

pub use adaptive::{blackbox_charpoly_field, AdaptiveConfig, CharpolyReport, Method};
pub use blackbox::{BlackBox, SparseMatrix};
pub use ff::{PrimeField, PrimeFieldElem};
pub use integer::{integer_charpoly, IntegerMatrix};
pub use poly::{FieldPoly, IntPoly};
