use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::blackbox::SparseMatrix;
use crate::ff::PrimeField;
use crate::{Error, Result};

/// Square sparse matrix with arbitrary precision integer entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    n: usize,
    entries: Vec<(usize, usize, BigInt)>,
    norm: BigInt,
}

impl IntegerMatrix {
    /// 0-based triples; zeros are dropped, repeated positions rejected.
    pub fn from_triplets(n: usize, triplets: impl IntoIterator<Item = (usize, usize, BigInt)>) -> Result<Self> {
        let mut entries: Vec<(usize, usize, BigInt)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= n || c >= n {
                return Err(Error::Input(format!("entry ({r}, {c}) outside a {n}x{n} matrix")));
            }
            if !v.is_zero() {
                entries.push((r, c, v));
            }
        }
        entries.sort_by_key(|e| (e.0, e.1));
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0 && w[0].1 == w[1].1) {
            return Err(Error::Input(format!("duplicate entry at ({}, {})", w[0].0, w[0].1)));
        }
        let norm = entries.iter().map(|e| e.2.abs()).max().unwrap_or_else(BigInt::zero);
        Ok(IntegerMatrix { n, entries, norm })
    }

    pub fn from_i64_triplets(n: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Result<Self> {
        Self::from_triplets(n, triplets.into_iter().map(|(r, c, v)| (r, c, BigInt::from(v))))
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        Self::from_i64_triplets(
            n,
            rows.iter().enumerate().flat_map(|(i, row)| {
                assert_eq!(row.len(), n, "dense input must be square");
                row.iter().enumerate().map(move |(j, &v)| (i, j, v))
            }),
        )
        .expect("indices in range")
    }

    pub fn diagonal(d: &[i64]) -> Self {
        Self::from_i64_triplets(d.len(), d.iter().enumerate().map(|(i, &v)| (i, i, v)))
            .expect("indices in range")
    }

    pub fn zero(n: usize) -> Self {
        IntegerMatrix {
            n,
            entries: Vec::new(),
            norm: BigInt::zero(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Largest absolute entry.
    pub fn norm(&self) -> &BigInt {
        &self.norm
    }

    /// Row-major nonzero entries.
    pub fn entries(&self) -> &[(usize, usize, BigInt)] {
        &self.entries
    }

    pub fn trace(&self) -> BigInt {
        self.entries
            .iter()
            .filter(|e| e.0 == e.1)
            .map(|e| e.2.clone())
            .sum()
    }

    pub fn reduce(&self, field: PrimeField) -> SparseMatrix {
        SparseMatrix::from_triplets(
            field,
            self.n,
            self.entries.iter().map(|(r, c, v)| (*r, *c, field.reduce_bigint(v))),
        )
        .expect("indices in range")
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.n]; self.n];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_and_trace() {
        let m = IntegerMatrix::from_dense(&[vec![1, -7, 0], vec![0, 2, 3], vec![0, 0, -4]]);
        assert_eq!(m.norm(), &BigInt::from(7));
        assert_eq!(m.trace(), BigInt::from(-1));
        assert_eq!(m.nnz(), 5);
        let r = m.reduce(PrimeField::new(5).unwrap());
        assert_eq!(r.get(0, 1), 3);
        assert_eq!(r.get(2, 2), 1);
    }

    #[test]
    fn rejects_duplicates() {
        assert!(IntegerMatrix::from_i64_triplets(2, [(0, 0, 1), (0, 0, 2)]).is_err());
        assert!(IntegerMatrix::from_i64_triplets(2, [(0, 2, 1)]).is_err());
    }
}
