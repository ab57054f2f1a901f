//! Multiplicities as the solution of a linear system over discrete logs of
//! det(lambda I - A).

use bbcharpoly::blackbox::{block_diag, build_block_jordan, build_companion, wiedemann_minpoly, WiedemannConfig};
use bbcharpoly::ff::{find_index_calculus_field, DlogContext, PrimeField};
use bbcharpoly::multiplicity::{index_calculus, FactorProfile};
use bbcharpoly::poly::FieldPoly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> bbcharpoly::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let n = 14;
    let (q, p) = find_index_calculus_field(n, &mut rng)?;
    let f = PrimeField::new(q)?;
    let g = FieldPoly::from_i64(f, &[1, 1, 1]);
    let h = FieldPoly::from_i64(f, &[-4, 1]);
    let a = block_diag(&[
        build_block_jordan(&g, 2)?,
        build_companion(&g)?,
        build_companion(&g)?,
        build_block_jordan(&h, 3)?,
        build_companion(&h)?,
    ]);
    let cfg = WiedemannConfig::default();
    let minpoly = wiedemann_minpoly(&a, &cfg, &mut rng)?;
    let profiles = FactorProfile::from_minpoly(&minpoly, &mut rng);
    let unknown: Vec<usize> = (0..profiles.len()).collect();
    let ctx = DlogContext::new(f);
    let out = index_calculus(&a, &profiles, &unknown, &FieldPoly::one(f), &ctx, p, &cfg, &mut rng)?;
    println!("GF({q}), logs mod {p}, {} rows tried, lambdas {:?}", out.rows_tried, out.lambdas);
    for (pr, m) in profiles.iter().zip(&out.multiplicities) {
        println!("  ({})^{m}", pr.poly.to_compact());
    }
    Ok(())
}
