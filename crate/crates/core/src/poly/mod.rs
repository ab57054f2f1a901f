//! Univariate polynomials over GF(p) and Z.

pub mod crt;
pub mod factor;
pub mod field;
pub mod gcdfree;
pub mod hensel;
pub mod int;
pub mod text;
pub mod zfactor;

pub use crt::{crt_combine, CrtAccumulator};
pub use factor::{factor, int_squarefree_part, squarefree_decomposition, squarefree_part, Factorization};
pub use field::{product_of_powers, FieldPoly};
pub use gcdfree::{gcd_free_basis, GcdFreeBasis};
pub use hensel::{hensel_lift_basis, LiftPlan};
pub use int::IntPoly;
pub use zfactor::{factor_monic_integer, factor_squarefree_monic, int_squarefree_decomposition};
