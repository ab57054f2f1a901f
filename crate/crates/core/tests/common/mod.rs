//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use bbcharpoly::blackbox::{block_diag, build_block_jordan, build_companion, BlackBox, SparseMatrix};
use bbcharpoly::cli::Graph;
use bbcharpoly::ff::PrimeField;
use bbcharpoly::integer::IntegerMatrix;
use bbcharpoly::poly::{factor, FieldPoly};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn random_monic<R: Rng>(f: PrimeField, d: usize, rng: &mut R) -> FieldPoly {
    let mut c: Vec<u64> = (0..d).map(|_| f.random(rng)).collect();
    c.push(1);
    FieldPoly::new(f, c)
}

pub fn random_irreducible<R: Rng>(f: PrimeField, d: usize, rng: &mut R) -> FieldPoly {
    loop {
        let p = random_monic(f, d, rng);
        let fac = factor(&p, rng);
        if fac.factors.len() == 1 && fac.factors[0].1 == 1 {
            return p;
        }
    }
}

/// `count` distinct monic irreducibles with degrees drawn from `degrees`.
pub fn distinct_irreducibles<R: Rng>(f: PrimeField, count: usize, degrees: &[usize], rng: &mut R) -> Vec<FieldPoly> {
    let mut out: Vec<FieldPoly> = Vec::new();
    while out.len() < count {
        let d = *degrees.choose(rng).unwrap();
        let p = random_irreducible(f, d, rng);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Each row gets between `lo` and `hi` nonzeros in random columns.
pub fn random_sparse<R: Rng>(f: PrimeField, n: usize, lo: usize, hi: usize, rng: &mut R) -> SparseMatrix {
    let mut t = Vec::new();
    let cols: Vec<usize> = (0..n).collect();
    for r in 0..n {
        let k = rng.gen_range(lo..=hi).min(n);
        for &c in cols.choose_multiple(rng, k) {
            t.push((r, c, f.random_nonzero(rng)));
        }
    }
    SparseMatrix::from_triplets(f, n, t).unwrap()
}

fn nnz(rows: &[Vec<u64>]) -> usize {
    rows.iter().flatten().filter(|&&v| v != 0).count()
}

/// Hides a block structure behind a permutation and elementary similarity
/// transforms until the average row has about `density` nonzeros.
pub fn disguise<R: Rng>(a: &SparseMatrix, density: usize, rng: &mut R) -> SparseMatrix {
    let f = a.field();
    let n = a.dim();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = vec![vec![0u64; n]; n];
    for (r, c, v) in a.entries() {
        m[perm[r]][perm[c]] = v;
    }
    let target = (density * n).min(n * n);
    let mut guard = 0;
    while nnz(&m) < target && guard < 50 * n && n > 1 {
        guard += 1;
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c = f.random_nonzero(rng);
        // E = I + c e_i e_j^T: row_i += c row_j, then col_j -= c col_i
        for k in 0..n {
            m[i][k] = f.add(m[i][k], f.mul(c, m[j][k]));
        }
        for row in m.iter_mut() {
            row[j] = f.sub(row[j], f.mul(c, row[i]));
        }
    }
    SparseMatrix::from_dense(f, &m)
}

/// A random matrix whose characteristic polynomial has repeated factors:
/// repeated random blocks, a nilpotent part and block Jordan pieces.
pub fn structured_sparse<R: Rng>(f: PrimeField, n: usize, rng: &mut R) -> SparseMatrix {
    let mut blocks = Vec::new();
    let mut used = 0;
    while used < n {
        let left = n - used;
        let kind = rng.gen_range(0..4);
        let b = match kind {
            0 => {
                let s = rng.gen_range(1..=left.min(5));
                let b = random_sparse(f, s, 1, 3.min(s), rng);
                let reps = rng.gen_range(1..=4).min(left / s);
                for _ in 1..reps {
                    blocks.push(b.clone());
                    used += s;
                }
                b
            }
            1 => {
                let s = rng.gen_range(1..=left.min(4));
                build_block_jordan(&FieldPoly::x(f), s).unwrap()
            }
            2 => {
                let d = rng.gen_range(1..=left.min(3));
                let p = random_irreducible(f, d, rng);
                let k = rng.gen_range(1..=3).min(left / d).max(1);
                build_block_jordan(&p, k).unwrap()
            }
            _ => {
                let s = rng.gen_range(1..=left.min(8));
                build_companion(&random_monic(f, s, rng)).unwrap()
            }
        };
        used += b.dim();
        blocks.push(b);
    }
    let a = block_diag(&blocks);
    let a = truncate(&a, n);
    let density = rng.gen_range(2..=10);
    disguise(&a, density, rng)
}

/// Leading principal n x n block, used when the last block overshoots.
fn truncate(a: &SparseMatrix, n: usize) -> SparseMatrix {
    SparseMatrix::from_triplets(a.field(), n, a.entries().filter(|&(r, c, _)| r < n && c < n)).unwrap()
}

/// Random integer matrix with entries in [-9, 9] and `lo..=hi` nonzeros per row.
pub fn random_integer<R: Rng>(n: usize, lo: usize, hi: usize, rng: &mut R) -> IntegerMatrix {
    let cols: Vec<usize> = (0..n).collect();
    let mut t = Vec::new();
    for r in 0..n {
        let k = rng.gen_range(lo..=hi).min(n);
        for &c in cols.choose_multiple(rng, k) {
            let mut v = 0;
            while v == 0 {
                v = rng.gen_range(-9..=9);
            }
            t.push((r, c, v));
        }
    }
    IntegerMatrix::from_i64_triplets(n, t).unwrap()
}

/// Integer matrix with repeated eigenvalue structure, entries kept in
/// [-9, 9] through unimodular similarities.
pub fn structured_integer<R: Rng>(n: usize, rng: &mut R) -> IntegerMatrix {
    let mut m = vec![vec![0i64; n]; n];
    let mut at = 0;
    while at < n {
        let s = rng.gen_range(1..=3).min(n - at);
        let block: Vec<Vec<i64>> = (0..s).map(|_| (0..s).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let reps = rng.gen_range(1..=3);
        for _ in 0..reps {
            if at + s > n {
                break;
            }
            for i in 0..s {
                for j in 0..s {
                    m[at + i][at + j] = block[i][j];
                }
            }
            at += s;
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            a[perm[i]][perm[j]] = m[i][j];
        }
    }
    let ops = rng.gen_range(n..=4 * n);
    for _ in 0..ops {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut b = a.clone();
        for k in 0..n {
            b[i][k] += c * b[j][k];
        }
        for row in b.iter_mut() {
            row[j] -= c * row[i];
        }
        if b.iter().flatten().all(|v| v.abs() <= 9) {
            a = b;
        }
    }
    IntegerMatrix::from_dense(&a)
}

/// Rook's graph on an m x m board: cells sharing a row or column are adjacent.
pub fn rook_graph(m: usize) -> Graph {
    let mut e = Vec::new();
    for a in 0..m * m {
        for b in a + 1..m * m {
            if a / m == b / m || a % m == b % m {
                e.push((a, b));
            }
        }
    }
    Graph::new(m * m, e).unwrap()
}

pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut e = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                e.push((a, b));
            }
        }
    }
    Graph::new(n, e).unwrap()
}
