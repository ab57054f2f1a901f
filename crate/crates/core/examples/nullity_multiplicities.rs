//! Occurrence counts of Jordan-type blocks from nullities of P^j(A).

use bbcharpoly::blackbox::{block_diag, build_block_jordan, WiedemannConfig};
use bbcharpoly::ff::PrimeField;
use bbcharpoly::multiplicity::{nullities_to_occurrences, nullity};
use bbcharpoly::poly::FieldPoly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> bbcharpoly::Result<()> {
    let f = PrimeField::new(10007)?;
    let p = FieldPoly::from_i64(f, &[1, 0, 1]);
    // blocks for P, P^2, P^2, P^3 plus an unrelated factor
    let a = block_diag(&[
        build_block_jordan(&p, 1)?,
        build_block_jordan(&p, 2)?,
        build_block_jordan(&p, 2)?,
        build_block_jordan(&p, 3)?,
        build_block_jordan(&FieldPoly::from_i64(f, &[-5, 1]), 4)?,
    ]);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let cfg = WiedemannConfig::default();
    let nu: Vec<usize> = (1..=4).map(|j| nullity(&a, &p, j, &cfg, &mut rng)).collect();
    println!("nullities of P^j(A), j = 1..4: {nu:?}");
    let counts = nullities_to_occurrences(&nu, 2, 3)?;
    println!("blocks of P^1, P^2, P^3: {counts:?}");
    println!("multiplicity of P: {}", nu[2] / 2);
    Ok(())
}
