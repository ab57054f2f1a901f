//! Prime field arithmetic and discrete logarithms in a field chosen for
//! index calculus.

use bbcharpoly::ff::{find_index_calculus_field, DlogContext, PrimeField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> bbcharpoly::Result<()> {
    let f = PrimeField::new(10007)?;
    let a = f.elem(1234);
    let b = f.elem(5678);
    println!("in {f}: {a} * {b} = {}", a.mul(&b)?);
    println!("{a}^-1 = {}", a.inv()?);

    // q = 1 + lambda p with p > n, so logs can be taken mod a prime
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (q, p) = find_index_calculus_field(50, &mut rng)?;
    let ctx = DlogContext::new(PrimeField::new(q)?);
    let x = 987 % q;
    let l = ctx.dlog(x)?;
    println!("GF({q}), p = {p}, generator {}: log({x}) = {l}", ctx.generator());
    assert_eq!(ctx.field().pow(ctx.generator(), l), x);
    Ok(())
}
