//! Matrices seen only through matrix-vector products.
//!
//! Vectors are dense slices of canonical residues. Operators never mutate
//! themselves, so one operator can be shared between threads running
//! independent Wiedemann sequences.

mod ops;
mod sparse;
mod wiedemann;

use rand::Rng;

use crate::ff::PrimeField;

pub use ops::{
    CountingOperator, DiagonalScaled, LowRankPerturbation, PolyOfMatrix, ShiftedOperator,
    SymmetrizedOperator,
};
pub use sparse::{block_diag, build_block_jordan, build_companion, SparseMatrix};
pub use wiedemann::{
    annihilates, berlekamp_massey, certify_vectors, det_blackbox, krylov_sequence, poly_apply, rank_blackbox,
    rank_repetitions, trace_generic, wiedemann_minpoly, WiedemannConfig,
};

/// An n x n linear map over GF(p).
pub trait BlackBox: Send + Sync {
    fn dim(&self) -> usize;

    fn field(&self) -> PrimeField;

    /// `y = A x`; `y` is overwritten.
    fn apply(&self, x: &[u64], y: &mut [u64]);

    /// `y = A^T x`. Used by the symmetrizing rank preconditioner.
    fn apply_transpose(&self, x: &[u64], y: &mut [u64]);

    /// Estimated scalar operations per apply.
    fn cost(&self) -> usize;

    /// Sum of the diagonal; n applies on unit vectors unless overridden.
    fn trace(&self) -> u64 {
        trace_generic(self)
    }

    fn apply_vec(&self, x: &[u64]) -> Vec<u64> {
        let mut y = vec![0; self.dim()];
        self.apply(x, &mut y);
        y
    }
}

impl<B: BlackBox + ?Sized> BlackBox for &B {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn field(&self) -> PrimeField {
        (**self).field()
    }
    fn apply(&self, x: &[u64], y: &mut [u64]) {
        (**self).apply(x, y)
    }
    fn apply_transpose(&self, x: &[u64], y: &mut [u64]) {
        (**self).apply_transpose(x, y)
    }
    fn cost(&self) -> usize {
        (**self).cost()
    }
    fn trace(&self) -> u64 {
        (**self).trace()
    }
}

pub fn random_vector<R: Rng + ?Sized>(field: PrimeField, n: usize, rng: &mut R) -> Vec<u64> {
    (0..n).map(|_| field.random(rng)).collect()
}

/// Sum of the diagonal of any operator (sparse matrices take a direct path).
pub fn trace(a: &dyn BlackBox) -> u64 {
    a.trace()
}

/// Checks `A(au + bv) = aAu + bAv` on random data.
pub fn is_linear_on_samples<R: Rng + ?Sized>(a: &dyn BlackBox, samples: usize, rng: &mut R) -> bool {
    let f = a.field();
    let n = a.dim();
    (0..samples).all(|_| {
        let u = random_vector(f, n, rng);
        let v = random_vector(f, n, rng);
        let (alpha, beta) = (f.random(rng), f.random(rng));
        let combo: Vec<u64> = u
            .iter()
            .zip(&v)
            .map(|(&x, &y)| f.add(f.mul(alpha, x), f.mul(beta, y)))
            .collect();
        let lhs = a.apply_vec(&combo);
        let au = a.apply_vec(&u);
        let av = a.apply_vec(&v);
        lhs.iter()
            .zip(au.iter().zip(&av))
            .all(|(&l, (&x, &y))| l == f.add(f.mul(alpha, x), f.mul(beta, y)))
    })
}
