//! Dense reference implementations. They are slow and simple, and exist to
//! cross-check the black-box algorithms (including the CLI's `--verify`).

mod smith;

use num_bigint::BigInt;

use crate::blackbox::SparseMatrix;
use crate::ff::{is_prime, PrimeField};
use crate::integer::{charpoly_coeff_bound, IntegerMatrix};
use crate::poly::{CrtAccumulator, FieldPoly, IntPoly};

pub use smith::dense_invariant_factors;

/// Row-major n x n matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    field: PrimeField,
    n: usize,
    data: Vec<u64>,
}

impl DenseMatrix {
    pub fn zero(field: PrimeField, n: usize) -> Self {
        DenseMatrix {
            field,
            n,
            data: vec![0; n * n],
        }
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zero(field, n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "dense matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, field.reduce(v));
            }
        }
        m
    }

    pub fn from_sparse(a: &SparseMatrix) -> Self {
        use crate::blackbox::BlackBox;
        let mut m = Self::zero(a.field(), a.dim());
        for (r, c, v) in a.entries() {
            m.set(r, c, v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    pub fn mul_vec(&self, x: &[u64]) -> Vec<u64> {
        (0..self.n)
            .map(|i| self.field.dot(&self.data[i * self.n..(i + 1) * self.n], x))
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.n {
                self.data.swap(a * self.n + j, b * self.n + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.n {
                self.data.swap(i * self.n + a, i * self.n + b);
            }
        }
    }
}

/// Characteristic polynomial by similarity reduction to upper Hessenberg
/// form and the usual three-term expansion.
pub fn dense_charpoly(a: &DenseMatrix) -> FieldPoly {
    let f = a.field;
    let n = a.n;
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h.get(i, k) != 0) else {
            continue;
        };
        h.swap_rows(piv, k + 1);
        h.swap_cols(piv, k + 1);
        let inv = f.inv(h.get(k + 1, k)).expect("pivot nonzero");
        for j in k + 2..n {
            let u = f.mul(h.get(j, k), inv);
            if u == 0 {
                continue;
            }
            // row_j -= u row_{k+1}; col_{k+1} += u col_j
            for c in 0..n {
                let v = f.sub(h.get(j, c), f.mul(u, h.get(k + 1, c)));
                h.set(j, c, v);
            }
            for r in 0..n {
                let v = f.add(h.get(r, k + 1), f.mul(u, h.get(r, j)));
                h.set(r, k + 1, v);
            }
        }
    }
    let mut polys: Vec<FieldPoly> = vec![FieldPoly::one(f)];
    for m in 1..=n {
        let mut pm = FieldPoly::linear(f, h.get(m - 1, m - 1)).mul(&polys[m - 1]);
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = f.mul(t, h.get(i, i - 1));
            if t == 0 {
                break;
            }
            let c = f.mul(h.get(i - 1, m - 1), t);
            if c != 0 {
                pm = pm.sub(&polys[i - 1].scale(c));
            }
        }
        polys.push(pm);
    }
    polys.pop().expect("nonempty")
}

/// Row echelon form in place; returns the pivot count and the product of
/// the pivots with the sign of the row swaps folded in.
fn eliminate(m: &mut DenseMatrix) -> (usize, u64) {
    let f = m.field;
    let n = m.n;
    let mut rank = 0;
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&i| m.get(i, col) != 0) else {
            det = 0;
            continue;
        };
        if piv != rank {
            m.swap_rows(piv, rank);
            det = f.neg(det);
        }
        let pv = m.get(rank, col);
        det = f.mul(det, pv);
        let inv = f.inv(pv).expect("pivot nonzero");
        for i in rank + 1..n {
            let u = f.mul(m.get(i, col), inv);
            if u == 0 {
                continue;
            }
            for c in col..n {
                let v = f.sub(m.get(i, c), f.mul(u, m.get(rank, c)));
                m.set(i, c, v);
            }
        }
        rank += 1;
    }
    (rank, det)
}

pub fn dense_rank(a: &DenseMatrix) -> usize {
    eliminate(&mut a.clone()).0
}

pub fn dense_det(a: &DenseMatrix) -> u64 {
    eliminate(&mut a.clone()).1
}

/// Minimal polynomial as the lcm of the Krylov minimal polynomials of the
/// unit vectors.
pub fn dense_minpoly(a: &DenseMatrix) -> FieldPoly {
    let f = a.field;
    let n = a.n;
    let mut acc = FieldPoly::one(f);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        // rows: (reduced vector, polynomial in A producing it, pivot)
        let mut basis: Vec<(Vec<u64>, Vec<u64>, usize)> = Vec::new();
        let mut v = e;
        for k in 0..=n {
            let mut w = v.clone();
            let mut poly = vec![0; n + 1];
            poly[k] = 1;
            for (bv, bp, piv) in &basis {
                let c = w[*piv];
                if c != 0 {
                    for (x, &y) in w.iter_mut().zip(bv) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                    for (x, &y) in poly.iter_mut().zip(bp) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
            match w.iter().position(|&x| x != 0) {
                None => {
                    acc = acc.lcm(&FieldPoly::new(f, poly));
                    break;
                }
                Some(piv) => {
                    let inv = f.inv(w[piv]).expect("nonzero");
                    w.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                    poly.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                    basis.push((w, poly, piv));
                }
            }
            v = a.mul_vec(&v);
        }
    }
    acc
}

/// Exact integer characteristic polynomial from dense charpolys modulo
/// primes just below 2^31, combined until the modulus exceeds twice the
/// coefficient bound.
pub fn dense_integer_charpoly(a: &IntegerMatrix) -> IntPoly {
    let n = a.dim();
    let bound: BigInt = charpoly_coeff_bound(n, a.norm()) * 2;
    let mut acc = CrtAccumulator::new();
    let mut p = (1u64 << 31) - 1;
    while acc.modulus() <= &bound {
        while !is_prime(p) {
            p -= 2;
        }
        let field = PrimeField::new(p).expect("prime");
        let cp = dense_charpoly(&DenseMatrix::from_sparse(&a.reduce(field)));
        acc.add(&cp).expect("charpoly degree is always n");
        p -= 2;
    }
    acc.symmetric()
}
