//! The symmetric cube of the 4x4 rook's graph: 560 vertices, characteristic
//! polynomial over Z, and a check against dense charpolys modulo primes.

use bbcharpoly::adaptive::AdaptiveConfig;
use bbcharpoly::cli::{symmetric_power, Graph};
use bbcharpoly::ff::PrimeField;
use bbcharpoly::integer::integer_charpoly;
use bbcharpoly::oracle::{dense_charpoly, DenseMatrix};
use bbcharpoly::poly::factor_squarefree_monic;
use std::time::Instant;

fn main() -> bbcharpoly::Result<()> {
    let mut edges = Vec::new();
    for a in 0..16 {
        for b in a + 1..16 {
            if a / 4 == b / 4 || a % 4 == b % 4 {
                edges.push((a, b));
            }
        }
    }
    let g = Graph::new(16, edges)?;
    let cube = symmetric_power(&g, 3)?;
    let a = cube.adjacency();
    println!("{} vertices, {} edges", cube.vertex_count(), cube.edge_count());

    let t = Instant::now();
    let r = integer_charpoly(&a, &AdaptiveConfig::default())?;
    println!("charpoly of degree {} in {:.2?} ({})", r.charpoly.deg(), t.elapsed(), r.field.method);
    for (g, mu) in &r.basis {
        for h in factor_squarefree_monic(g)? {
            println!("  ({})^{mu}", h.to_compact());
        }
    }
    for p in [1_000_000_007u64, 998_244_353] {
        let f = PrimeField::new(p)?;
        let ok = dense_charpoly(&DenseMatrix::from_sparse(&a.reduce(f))) == r.charpoly.reduce(f);
        println!("agrees with the dense charpoly mod {p}: {ok}");
    }
    Ok(())
}
