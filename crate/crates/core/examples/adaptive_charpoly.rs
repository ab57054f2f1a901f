//! The field driver with each method, plus the decision log.

use bbcharpoly::adaptive::{blackbox_charpoly_explained, AdaptiveConfig, Method};
use bbcharpoly::blackbox::{block_diag, build_block_jordan, build_companion};
use bbcharpoly::explain::Explain;
use bbcharpoly::ff::PrimeField;
use bbcharpoly::poly::FieldPoly;

fn main() -> bbcharpoly::Result<()> {
    let f = PrimeField::new(10007)?;
    let mut blocks = vec![build_block_jordan(&FieldPoly::from_i64(f, &[0, 1]), 3)?];
    for c in 1..=6 {
        let q = FieldPoly::from_i64(f, &[c, c, 1]);
        blocks.push(build_companion(&q)?);
        blocks.push(build_companion(&q)?);
    }
    let a = block_diag(&blocks);

    for m in Method::ALL {
        let explain = Explain::enabled();
        let r = blackbox_charpoly_explained(&a, &AdaptiveConfig::with_method(m, 1), &explain)?;
        println!("{:>12}: chose {}, multiplicities {:?}", m.name(), r.method, r.multiplicities());
        if m == Method::Auto {
            print!("{}", explain.to_json_lines());
        }
    }
    Ok(())
}
