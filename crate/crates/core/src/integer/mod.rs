//! Characteristic polynomials over Z: the minimal polynomial by CRT, one
//! characteristic polynomial modulo a good prime, and a Hensel lift along a
//! gcd-free basis of the squarefree part.

mod bounds;
mod lift;
mod matrix;
mod minpoly;

pub use bounds::{charpoly_coeff_bound, minpoly_coeff_bound};
pub use lift::{integer_charpoly, integer_charpoly_explained, lift_charpoly, within_bound, IntegerCharpolyReport, LiftedCharpoly};
pub use matrix::IntegerMatrix;
pub use minpoly::integer_minpoly;
