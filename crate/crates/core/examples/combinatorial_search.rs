//! Multiplicities from the degree and trace constraints alone, with
//! determinant evaluations breaking ties.

use bbcharpoly::blackbox::{block_diag, build_block_jordan, build_companion, wiedemann_minpoly, WiedemannConfig};
use bbcharpoly::ff::PrimeField;
use bbcharpoly::multiplicity::{combinatorial_search, FactorProfile, OccurrenceTable, DEFAULT_CAP};
use bbcharpoly::poly::FieldPoly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> bbcharpoly::Result<()> {
    let f = PrimeField::new(10007)?;
    let x1 = FieldPoly::from_i64(f, &[-1, 1]);
    let x2 = FieldPoly::from_i64(f, &[-2, 1]);
    let q = FieldPoly::from_i64(f, &[3, 1, 1]);
    let a = block_diag(&[
        build_block_jordan(&x1, 2)?,
        build_companion(&x1)?,
        build_companion(&x2)?,
        build_companion(&q)?,
        build_companion(&q)?,
    ]);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = WiedemannConfig::default();
    let minpoly = wiedemann_minpoly(&a, &cfg, &mut rng)?;
    let profiles = FactorProfile::from_minpoly(&minpoly, &mut rng);
    let counts = OccurrenceTable::new(&profiles).known_counts();
    let out = combinatorial_search(&a, &profiles, &counts, DEFAULT_CAP, &cfg, &mut rng)?;
    println!("{} candidates, {} determinant evaluations", out.candidates, out.det_evaluations);
    for (p, m) in profiles.iter().zip(&out.multiplicities) {
        println!("  ({})^{m}", p.poly.to_compact());
    }
    Ok(())
}
