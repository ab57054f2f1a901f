//! Factoring over GF(p) and over Z.

use bbcharpoly::ff::PrimeField;
use bbcharpoly::poly::{factor, factor_monic_integer, FieldPoly, IntPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> bbcharpoly::Result<()> {
    let f = PrimeField::new(101)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    // (X^2 + 1)^2 (X - 3) (X^3 + X + 1)
    let g = FieldPoly::from_i64(f, &[1, 0, 1])
        .pow(2)
        .mul(&FieldPoly::from_i64(f, &[-3, 1]))
        .mul(&FieldPoly::from_i64(f, &[1, 1, 0, 1]));
    println!("over {f}: {g}");
    for (h, e) in factor(&g, &mut rng).factors {
        println!("  ({})^{e}", h.to_compact());
    }

    let z = IntPoly::from_i64(&[1, -10, 1]).pow(2).mul(&IntPoly::from_i64(&[2, 0, 1]));
    println!("over Z: {z}");
    for (h, e) in factor_monic_integer(&z)? {
        println!("  ({})^{e}", h.to_compact());
    }
    Ok(())
}
