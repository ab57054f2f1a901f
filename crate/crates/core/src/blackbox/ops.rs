use std::sync::atomic::{AtomicUsize, Ordering};

use crate::ff::PrimeField;
use crate::poly::FieldPoly;

use super::BlackBox;

/// `P(A)^e`, applied by e rounds of Horner's rule.
pub struct PolyOfMatrix<'a> {
    base: &'a dyn BlackBox,
    poly: FieldPoly,
    power: usize,
}

impl<'a> PolyOfMatrix<'a> {
    pub fn new(base: &'a dyn BlackBox, poly: FieldPoly, power: usize) -> Self {
        assert_eq!(base.field(), poly.field(), "polynomial over a different field");
        PolyOfMatrix { base, poly, power }
    }

    fn horner(&self, x: &[u64], y: &mut [u64], transpose: bool) {
        let f = self.base.field();
        let n = self.base.dim();
        let c = self.poly.coeffs();
        let mut cur = x.to_vec();
        let mut tmp = vec![0; n];
        for _ in 0..self.power {
            // acc = c_d x; acc = A acc + c_i x for i = d-1..0
            let mut acc: Vec<u64> = cur.iter().map(|&v| f.mul(*c.last().unwrap_or(&0), v)).collect();
            for &ci in c.iter().rev().skip(1) {
                if transpose {
                    self.base.apply_transpose(&acc, &mut tmp);
                } else {
                    self.base.apply(&acc, &mut tmp);
                }
                for ((a, &t), &v) in acc.iter_mut().zip(&tmp).zip(&cur) {
                    *a = f.add(t, f.mul(ci, v));
                }
            }
            cur = acc;
        }
        y[..n].copy_from_slice(&cur);
    }
}

impl BlackBox for PolyOfMatrix<'_> {
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn field(&self) -> PrimeField {
        self.base.field()
    }
    fn apply(&self, x: &[u64], y: &mut [u64]) {
        self.horner(x, y, false)
    }
    fn apply_transpose(&self, x: &[u64], y: &mut [u64]) {
        self.horner(x, y, true)
    }
    fn cost(&self) -> usize {
        let d = self.poly.degree().unwrap_or(0);
        self.power * d * (self.base.cost() + 2 * self.dim())
    }
}

/// `lambda I - A`.
pub struct ShiftedOperator<'a> {
    base: &'a dyn BlackBox,
    lambda: u64,
}

impl<'a> ShiftedOperator<'a> {
    pub fn new(base: &'a dyn BlackBox, lambda: u64) -> Self {
        ShiftedOperator {
            lambda: base.field().reduce(lambda),
            base,
        }
    }

    fn finish(&self, x: &[u64], y: &mut [u64]) {
        let f = self.base.field();
        for (o, &v) in y.iter_mut().zip(x) {
            *o = f.sub(f.mul(self.lambda, v), *o);
        }
    }
}

impl BlackBox for ShiftedOperator<'_> {
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn field(&self) -> PrimeField {
        self.base.field()
    }
    fn apply(&self, x: &[u64], y: &mut [u64]) {
        self.base.apply(x, y);
        self.finish(x, y);
    }
    fn apply_transpose(&self, x: &[u64], y: &mut [u64]) {
        self.base.apply_transpose(x, y);
        self.finish(x, y);
    }
    fn cost(&self) -> usize {
        self.base.cost() + 2 * self.dim()
    }
    fn trace(&self) -> u64 {
        let f = self.field();
        let n = f.reduce(self.dim() as u64);
        f.sub(f.mul(self.lambda, n), self.base.trace())
    }
}

/// `D_left A D_right` with diagonal scalings (either may be absent).
pub struct DiagonalScaled<'a> {
    base: &'a dyn BlackBox,
    left: Option<Vec<u64>>,
    right: Option<Vec<u64>>,
}

impl<'a> DiagonalScaled<'a> {
    pub fn new(base: &'a dyn BlackBox, left: Option<Vec<u64>>, right: Option<Vec<u64>>) -> Self {
        for d in left.iter().chain(right.iter()) {
            assert_eq!(d.len(), base.dim(), "diagonal length");
        }
        DiagonalScaled { base, left, right }
    }

    fn run(&self, x: &[u64], y: &mut [u64], first: &Option<Vec<u64>>, last: &Option<Vec<u64>>, transpose: bool) {
        let f = self.base.field();
        let scaled: Vec<u64>;
        let input = match first {
            Some(d) => {
                scaled = x.iter().zip(d).map(|(&v, &s)| f.mul(v, s)).collect();
                &scaled[..]
            }
            None => x,
        };
        if transpose {
            self.base.apply_transpose(input, y);
        } else {
            self.base.apply(input, y);
        }
        if let Some(d) = last {
            for (o, &s) in y.iter_mut().zip(d) {
                *o = f.mul(*o, s);
            }
        }
    }
}

impl BlackBox for DiagonalScaled<'_> {
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn field(&self) -> PrimeField {
        self.base.field()
    }
    fn apply(&self, x: &[u64], y: &mut [u64]) {
        self.run(x, y, &self.right, &self.left, false)
    }
    fn apply_transpose(&self, x: &[u64], y: &mut [u64]) {
        self.run(x, y, &self.left, &self.right, true)
    }
    fn cost(&self) -> usize {
        self.base.cost() + 2 * self.dim()
    }
}

/// `D1 B^T D2 B D1`: same rank as B for generic diagonals, and its
/// nilpotent part has index at most one, so the minimal polynomial
/// reveals the rank.
pub struct SymmetrizedOperator<'a> {
    base: &'a dyn BlackBox,
    d1: Vec<u64>,
    d2: Vec<u64>,
}

impl<'a> SymmetrizedOperator<'a> {
    pub fn new(base: &'a dyn BlackBox, d1: Vec<u64>, d2: Vec<u64>) -> Self {
        assert_eq!(d1.len(), base.dim());
        assert_eq!(d2.len(), base.dim());
        SymmetrizedOperator { base, d1, d2 }
    }
}

impl BlackBox for SymmetrizedOperator<'_> {
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn field(&self) -> PrimeField {
        self.base.field()
    }
    fn apply(&self, x: &[u64], y: &mut [u64]) {
        let f = self.base.field();
        let n = self.dim();
        let t: Vec<u64> = x.iter().zip(&self.d1).map(|(&v, &s)| f.mul(v, s)).collect();
        let mut u = vec![0; n];
        self.base.apply(&t, &mut u);
        for (a, &s) in u.iter_mut().zip(&self.d2) {
            *a = f.mul(*a, s);
        }
        self.base.apply_transpose(&u, y);
        for (o, &s) in y.iter_mut().zip(&self.d1) {
            *o = f.mul(*o, s);
        }
    }
    fn apply_transpose(&self, x: &[u64], y: &mut [u64]) {
        self.apply(x, y)
    }
    fn cost(&self) -> usize {
        2 * self.base.cost() + 3 * self.dim()
    }
}

/// `A + U V` with `U` n x r and `V` r x n, both dense.
pub struct LowRankPerturbation<'a> {
    base: &'a dyn BlackBox,
    /// r columns of length n
    u: Vec<Vec<u64>>,
    /// r rows of length n
    v: Vec<Vec<u64>>,
}

impl<'a> LowRankPerturbation<'a> {
    pub fn new(base: &'a dyn BlackBox, u_cols: Vec<Vec<u64>>, v_rows: Vec<Vec<u64>>) -> Self {
        assert_eq!(u_cols.len(), v_rows.len(), "U and V must share the rank");
        for w in u_cols.iter().chain(v_rows.iter()) {
            assert_eq!(w.len(), base.dim());
        }
        LowRankPerturbation {
            base,
            u: u_cols,
            v: v_rows,
        }
    }

    pub fn rank_bound(&self) -> usize {
        self.u.len()
    }

    fn add_outer(&self, left: &[Vec<u64>], right: &[Vec<u64>], x: &[u64], y: &mut [u64]) {
        let f = self.base.field();
        for (l, r) in left.iter().zip(right) {
            let s = f.dot(r, x);
            if s == 0 {
                continue;
            }
            for (o, &c) in y.iter_mut().zip(l) {
                *o = f.add(*o, f.mul(c, s));
            }
        }
    }
}

impl BlackBox for LowRankPerturbation<'_> {
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn field(&self) -> PrimeField {
        self.base.field()
    }
    fn apply(&self, x: &[u64], y: &mut [u64]) {
        self.base.apply(x, y);
        self.add_outer(&self.u, &self.v, x, y);
    }
    fn apply_transpose(&self, x: &[u64], y: &mut [u64]) {
        self.base.apply_transpose(x, y);
        self.add_outer(&self.v, &self.u, x, y);
    }
    fn cost(&self) -> usize {
        self.base.cost() + 4 * self.dim() * self.u.len()
    }
}

/// Counts applies reaching the wrapped operator.
pub struct CountingOperator<'a> {
    base: &'a dyn BlackBox,
    count: AtomicUsize,
}

impl<'a> CountingOperator<'a> {
    pub fn new(base: &'a dyn BlackBox) -> Self {
        CountingOperator {
            base,
            count: AtomicUsize::new(0),
        }
    }

    pub fn count(&self) -> usize {
        self.count.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.count.store(0, Ordering::Relaxed)
    }
}

impl BlackBox for CountingOperator<'_> {
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn field(&self) -> PrimeField {
        self.base.field()
    }
    fn apply(&self, x: &[u64], y: &mut [u64]) {
        self.count.fetch_add(1, Ordering::Relaxed);
        self.base.apply(x, y)
    }
    fn apply_transpose(&self, x: &[u64], y: &mut [u64]) {
        self.count.fetch_add(1, Ordering::Relaxed);
        self.base.apply_transpose(x, y)
    }
    fn cost(&self) -> usize {
        self.base.cost()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::{is_linear_on_samples, random_vector, SparseMatrix};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_sparse(f: PrimeField, n: usize, rng: &mut ChaCha8Rng) -> SparseMatrix {
        let t: Vec<_> = (0..4 * n)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), f.random(rng)))
            .collect();
        SparseMatrix::from_triplets(f, n, t).unwrap()
    }

    fn dense_mul(f: PrimeField, a: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
        a.iter().map(|row| f.dot(row, x)).collect()
    }

    #[test]
    fn combinators_are_linear() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_sparse(f, 12, &mut rng);
        let p = FieldPoly::from_i64(f, &[3, -1, 2]);
        let ops: Vec<Box<dyn BlackBox>> = vec![
            Box::new(PolyOfMatrix::new(&a, p, 2)),
            Box::new(ShiftedOperator::new(&a, 17)),
            Box::new(DiagonalScaled::new(&a, Some(random_vector(f, 12, &mut rng)), Some(random_vector(f, 12, &mut rng)))),
            Box::new(SymmetrizedOperator::new(&a, random_vector(f, 12, &mut rng), random_vector(f, 12, &mut rng))),
            Box::new(LowRankPerturbation::new(&a, vec![random_vector(f, 12, &mut rng)], vec![random_vector(f, 12, &mut rng)])),
            Box::new(CountingOperator::new(&a)),
        ];
        for op in &ops {
            assert!(is_linear_on_samples(op.as_ref(), 100, &mut rng));
        }
    }

    #[test]
    fn transposes_are_adjoint() {
        // <A^T x, y> = <x, A y>
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_sparse(f, 9, &mut rng);
        let ops: Vec<Box<dyn BlackBox>> = vec![
            Box::new(PolyOfMatrix::new(&a, FieldPoly::from_i64(f, &[1, 2, 3]), 3)),
            Box::new(ShiftedOperator::new(&a, 5)),
            Box::new(DiagonalScaled::new(&a, Some(random_vector(f, 9, &mut rng)), None)),
            Box::new(LowRankPerturbation::new(&a, vec![random_vector(f, 9, &mut rng); 2], vec![random_vector(f, 9, &mut rng); 2])),
        ];
        for op in &ops {
            let x = random_vector(f, 9, &mut rng);
            let y = random_vector(f, 9, &mut rng);
            let mut aty = vec![0; 9];
            op.apply_transpose(&y, &mut aty);
            assert_eq!(f.dot(&aty, &x), f.dot(&y, &op.apply_vec(&x)));
        }
    }

    #[test]
    fn poly_of_matrix_matches_dense_and_counts_applies() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = random_sparse(f, 6, &mut rng);
        let dense = a.to_dense();
        let p = FieldPoly::from_i64(f, &[4, 0, 1, 1]);
        let x = random_vector(f, 6, &mut rng);
        // (A^3 + A^2 + 4)^2 x evaluated densely
        let eval = |v: &[u64]| {
            let a1 = dense_mul(f, &dense, v);
            let a2 = dense_mul(f, &dense, &a1);
            let a3 = dense_mul(f, &dense, &a2);
            (0..6).map(|i| f.add(f.add(a3[i], a2[i]), f.mul(4, v[i]))).collect::<Vec<_>>()
        };
        let counter = CountingOperator::new(&a);
        let op = PolyOfMatrix::new(&counter, p, 2);
        assert_eq!(op.apply_vec(&x), eval(&eval(&x)));
        assert_eq!(counter.count(), 3 * 2);
    }

    #[test]
    fn shifted_diagonal() {
        let f = PrimeField::new(7).unwrap();
        let a = SparseMatrix::diagonal(f, &[1, 2]);
        let s = ShiftedOperator::new(&a, 3);
        assert_eq!(s.apply_vec(&[1, 1]), vec![2, 1]);
        assert_eq!(s.trace(), 3);
    }
}
