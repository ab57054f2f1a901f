use crate::ff::PrimeField;
use crate::poly::FieldPoly;
use crate::{Error, Result};

use super::BlackBox;

/// Square sparse matrix over GF(p) in compressed row form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: PrimeField,
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<u64>,
}

impl SparseMatrix {
    /// Builds from `(row, col, value)` triples with 0-based indices.
    /// Values are reduced; repeated positions are summed and zeros dropped.
    pub fn from_triplets(
        field: PrimeField,
        n: usize,
        triplets: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self> {
        let mut t: Vec<(usize, usize, u64)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= n || c >= n {
                return Err(Error::Input(format!(
                    "entry ({r}, {c}) outside a {n}x{n} matrix"
                )));
            }
            t.push((r, c, field.reduce(v)));
        }
        t.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, u64)> = Vec::with_capacity(t.len());
        for (r, c, v) in t {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = field.add(last.2, v),
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| e.2 != 0);
        let mut row_ptr = vec![0; n + 1];
        for &(r, _, _) in &merged {
            row_ptr[r + 1] += 1;
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        Ok(SparseMatrix {
            field,
            n,
            row_ptr,
            cols: merged.iter().map(|e| e.1).collect(),
            vals: merged.iter().map(|e| e.2).collect(),
        })
    }

    pub fn from_signed_triplets(
        field: PrimeField,
        n: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self> {
        Self::from_triplets(
            field,
            n,
            triplets.into_iter().map(|(r, c, v)| (r, c, field.reduce_i64(v))),
        )
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        SparseMatrix {
            field,
            n,
            row_ptr: vec![0; n + 1],
            cols: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        Self::diagonal(field, &vec![1; n])
    }

    pub fn diagonal(field: PrimeField, d: &[u64]) -> Self {
        Self::from_triplets(field, d.len(), d.iter().enumerate().map(|(i, &v)| (i, i, v)))
            .expect("indices in range")
    }

    pub fn from_dense(field: PrimeField, rows: &[Vec<u64>]) -> Self {
        let n = rows.len();
        Self::from_triplets(
            field,
            n,
            rows.iter().enumerate().flat_map(|(i, row)| {
                assert_eq!(row.len(), n, "dense input must be square");
                row.iter().enumerate().map(move |(j, &v)| (i, j, v))
            }),
        )
        .expect("indices in range")
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0; self.n]; self.n];
        for (r, c, v) in self.entries() {
            out[r][c] = v;
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Row-major `(row, col, value)` triples.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (0..self.n).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (r, self.cols[k], self.vals[k]))
        })
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        let row = &self.cols[self.row_ptr[r]..self.row_ptr[r + 1]];
        match row.binary_search(&c) {
            Ok(k) => self.vals[self.row_ptr[r] + k],
            Err(_) => 0,
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        Self::from_triplets(self.field, self.n, self.entries().map(|(r, c, v)| (c, r, v)))
            .expect("indices in range")
    }

    /// Diagonal sum read off the stored entries.
    pub fn diagonal_sum(&self) -> u64 {
        (0..self.n).fold(0, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    /// Same entries over another field, via their symmetric lifts.
    pub fn reduce_into(&self, field: PrimeField) -> SparseMatrix {
        let f = self.field;
        Self::from_triplets(
            field,
            self.n,
            self.entries()
                .map(|(r, c, v)| (r, c, field.reduce_i64(f.symmetric(v)))),
        )
        .expect("indices in range")
    }
}

impl BlackBox for SparseMatrix {
    fn dim(&self) -> usize {
        self.n
    }

    fn field(&self) -> PrimeField {
        self.field
    }

    fn apply(&self, x: &[u64], y: &mut [u64]) {
        let p = self.field.modulus() as u128;
        for (r, out) in y.iter_mut().enumerate().take(self.n) {
            let mut acc: u128 = 0;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += (self.vals[k] * x[self.cols[k]]) as u128;
            }
            *out = (acc % p) as u64;
        }
    }

    fn apply_transpose(&self, x: &[u64], y: &mut [u64]) {
        let f = self.field;
        y[..self.n].fill(0);
        for r in 0..self.n {
            if x[r] == 0 {
                continue;
            }
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let c = self.cols[k];
                y[c] = f.add(y[c], f.mul(self.vals[k], x[r]));
            }
        }
    }

    fn cost(&self) -> usize {
        2 * self.nnz() + self.n
    }

    fn trace(&self) -> u64 {
        self.diagonal_sum()
    }
}

/// Companion matrix of a monic `P`: ones on the subdiagonal, `-a_i` in the
/// last column.
pub fn build_companion(p: &FieldPoly) -> Result<SparseMatrix> {
    if !p.is_monic() || p.is_constant() {
        return Err(Error::NotMonic);
    }
    let field = p.field();
    let d = p.deg();
    let mut t: Vec<(usize, usize, u64)> = (1..d).map(|i| (i, i - 1, 1)).collect();
    t.extend((0..d).map(|i| (i, d - 1, field.neg(p.coeff(i)))));
    SparseMatrix::from_triplets(field, d, t)
}

/// `J_{P^k}`: k companion blocks of P with a single coupling one at the
/// last row of each block and the first column of the next.
pub fn build_block_jordan(p: &FieldPoly, k: usize) -> Result<SparseMatrix> {
    if k == 0 {
        return Err(Error::Input("block Jordan power must be at least 1".into()));
    }
    let c = build_companion(p)?;
    let d = p.deg();
    let mut t = Vec::new();
    for b in 0..k {
        t.extend(c.entries().map(|(r, col, v)| (b * d + r, b * d + col, v)));
        if b + 1 < k {
            t.push((b * d + d - 1, (b + 1) * d, 1));
        }
    }
    SparseMatrix::from_triplets(p.field(), k * d, t)
}

/// Block diagonal matrix with the given square blocks in order.
pub fn block_diag(blocks: &[SparseMatrix]) -> SparseMatrix {
    let field = blocks.first().expect("at least one block").field;
    let n = blocks.iter().map(|b| b.n).sum();
    let mut t = Vec::new();
    let mut off = 0;
    for b in blocks {
        assert_eq!(b.field, field, "blocks over different fields");
        t.extend(b.entries().map(|(r, c, v)| (off + r, off + c, v)));
        off += b.n;
    }
    SparseMatrix::from_triplets(field, n, t).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn csr_invariants() {
        let f = gf(7);
        let m = SparseMatrix::from_triplets(f, 3, [(2, 0, 3), (0, 1, 5), (0, 1, 2), (1, 1, 4)]).unwrap();
        // 5 + 2 = 0 mod 7 drops out
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(2, 0), 3);
        assert_eq!(m.get(0, 1), 0);
        assert!(SparseMatrix::from_triplets(f, 2, [(2, 0, 1)]).is_err());
    }

    #[test]
    fn apply_and_transpose_agree_with_dense() {
        let f = gf(11);
        let m = SparseMatrix::from_dense(f, &[vec![1, 2, 0], vec![0, 3, 4], vec![5, 0, 6]]);
        assert_eq!(m.apply_vec(&[1, 1, 1]), vec![3, 7, 0]);
        let mut y = vec![0; 3];
        m.apply_transpose(&[1, 1, 1], &mut y);
        assert_eq!(y, vec![6, 5, 10]);
        assert_eq!(m.transpose().apply_vec(&[1, 1, 1]), y);
    }

    #[test]
    fn companion_layout() {
        let f = gf(101);
        let c = build_companion(&FieldPoly::from_i64(f, &[-5, 1])).unwrap();
        assert_eq!(c.to_dense(), vec![vec![5]]);
        let p = FieldPoly::from_i64(f, &[2, 3, 1]);
        let c = build_companion(&p).unwrap();
        assert_eq!(c.to_dense(), vec![vec![0, 99], vec![1, 98]]);
        assert!(build_companion(&FieldPoly::from_i64(f, &[1, 2])).is_err());
    }

    #[test]
    fn degree_one_block_jordan_is_classical() {
        let f = gf(101);
        let j = build_block_jordan(&FieldPoly::from_i64(f, &[-4, 1]), 3).unwrap();
        assert_eq!(j.to_dense(), vec![vec![4, 1, 0], vec![0, 4, 1], vec![0, 0, 4]]);
    }

    #[test]
    fn example_trace() {
        // Diag(C_{X^5-6X^4+14X^3-16X^2+9X-2}, C_{X^2-2X+1})
        let f = gf(5);
        let a = block_diag(&[
            build_companion(&FieldPoly::from_i64(f, &[-2, 9, -16, 14, -6, 1])).unwrap(),
            build_companion(&FieldPoly::from_i64(f, &[1, -2, 1])).unwrap(),
        ]);
        assert_eq!(a.dim(), 7);
        assert_eq!(a.trace(), 8 % 5);
        assert_eq!(super::super::trace_generic(&a), 3);
    }
}
