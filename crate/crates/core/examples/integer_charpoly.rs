//! Characteristic polynomial over Z and the gcd-free basis it was lifted
//! from.

use bbcharpoly::adaptive::AdaptiveConfig;
use bbcharpoly::integer::{integer_charpoly, IntegerMatrix};
use bbcharpoly::oracle::dense_integer_charpoly;

fn main() -> bbcharpoly::Result<()> {
    // two copies of the companion of X^2 - 10X + 1, a 2 and a -3
    let a = IntegerMatrix::from_dense(&[
        vec![0, -1, 0, 0, 0, 0],
        vec![1, 10, 0, 0, 0, 0],
        vec![0, 0, 0, -1, 0, 0],
        vec![0, 0, 1, 10, 0, 0],
        vec![0, 0, 0, 0, 2, 0],
        vec![0, 0, 0, 0, 7, -3],
    ]);
    let r = integer_charpoly(&a, &AdaptiveConfig::default())?;
    println!("charpoly: {}", r.charpoly);
    println!("minpoly:  {}", r.minpoly);
    println!("computed mod {} with {}", r.prime, r.field.method);
    for (g, mu) in &r.basis {
        println!("  ({})^{mu}", g.to_compact());
    }
    assert_eq!(r.charpoly, dense_integer_charpoly(&a));
    Ok(())
}
