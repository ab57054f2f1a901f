//! Black-box results against the dense reference code: charpoly, minpoly
//! and the invariant factor chain.

use bbcharpoly::adaptive::{blackbox_charpoly_field, AdaptiveConfig};
use bbcharpoly::blackbox::SparseMatrix;
use bbcharpoly::ff::PrimeField;
use bbcharpoly::oracle::{dense_charpoly, dense_invariant_factors, DenseMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> bbcharpoly::Result<()> {
    let f = PrimeField::new(101)?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let n = 30;
    // sparse and singular, so the charpoly has repeated factors
    let mut t = Vec::new();
    for r in 0..n {
        if rng.gen_bool(0.7) {
            t.push((r, rng.gen_range(0..n), rng.gen_range(1..4u64)));
        }
    }
    let a = SparseMatrix::from_triplets(f, n, t)?;
    let r = blackbox_charpoly_field(&a, &AdaptiveConfig::default())?;
    let dense = DenseMatrix::from_sparse(&a);
    println!("black box: {}", r.charpoly);
    println!("dense:     {}", dense_charpoly(&dense));
    println!("method {}, multiplicities {:?}", r.method, r.multiplicities());
    for (i, inv) in dense_invariant_factors(&dense).iter().enumerate() {
        println!("  invariant factor {i}: {}", inv.to_compact());
    }
    Ok(())
}
