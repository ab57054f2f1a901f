//! Minimal polynomial, rank and determinant of a sparse matrix through
//! matrix-vector products only.

use bbcharpoly::blackbox::{det_blackbox, rank_blackbox, wiedemann_minpoly, CountingOperator, SparseMatrix, WiedemannConfig};
use bbcharpoly::ff::PrimeField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> bbcharpoly::Result<()> {
    let f = PrimeField::new(65537)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 200;
    let mut t = Vec::new();
    for r in 0..n {
        for _ in 0..3 {
            t.push((r, rng.gen_range(0..n), f.random_nonzero(&mut rng)));
        }
    }
    let a = SparseMatrix::from_triplets(f, n, t)?;
    let counted = CountingOperator::new(&a);
    let cfg = WiedemannConfig::default();
    let m = wiedemann_minpoly(&counted, &cfg, &mut rng)?;
    println!("n = {n}, nnz = {}, deg minpoly = {}, {} products", a.nnz(), m.deg(), counted.count());
    println!("rank = {}", rank_blackbox(&a, &cfg, &mut rng));
    println!("det = {}", det_blackbox(&a, &cfg, &mut rng)?);
    Ok(())
}
