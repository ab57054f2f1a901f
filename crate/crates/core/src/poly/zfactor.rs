//! Factorization of monic integer polynomials (Zassenhaus: factor mod a
//! small prime, Hensel lift, recombine subsets by trial division).

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ff::{is_prime, PrimeField};
use super::{factor, hensel_lift_basis, FieldPoly, IntPoly};
use crate::{Error, Result};

/// Yun's squarefree decomposition over Z for a monic polynomial.
pub fn int_squarefree_decomposition(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let d = f.derivative();
    let c = f.gcd(&d);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut y = d.div_exact(&c).expect("gcd divides");
    let mut z = y.sub(&w.derivative());
    let mut i = 1;
    while !z.is_zero() {
        let g = w.gcd(&z);
        if g.deg() > 0 {
            out.push((g.clone(), i));
        }
        w = w.div_exact(&g).expect("gcd divides");
        y = z.div_exact(&g).expect("gcd divides");
        z = y.sub(&w.derivative());
        i += 1;
    }
    if w.deg() > 0 {
        out.push((w, i));
    }
    out
}

/// Irreducible factors with multiplicities of a monic integer polynomial,
/// in canonical order.
pub fn factor_monic_integer(f: &IntPoly) -> Result<Vec<(IntPoly, usize)>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut out = Vec::new();
    for (g, e) in int_squarefree_decomposition(f) {
        for h in factor_squarefree_monic(&g)? {
            out.push((h, e));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Irreducible factors of a squarefree monic integer polynomial.
pub fn factor_squarefree_monic(g: &IntPoly) -> Result<Vec<IntPoly>> {
    if g.deg() <= 1 {
        return Ok(vec![g.clone()]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(g.deg() as u64);
    // among a few primes keeping g squarefree, use the one with fewest factors
    let mut best: Option<Vec<FieldPoly>> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < 5 && p < 1 << 20 {
        p += 2;
        if !is_prime(p) || (p as usize) <= g.deg() {
            continue;
        }
        let field = PrimeField::new(p).expect("prime");
        let gb = g.reduce(field);
        if !gb.gcd(&gb.derivative()).is_one() {
            continue;
        }
        tried += 1;
        let fz: Vec<FieldPoly> = factor(&gb, &mut rng).factors.into_iter().map(|(h, _)| h).collect();
        if best.as_ref().is_none_or(|b| fz.len() < b.len()) {
            best = Some(fz);
        }
    }
    let modular = best.ok_or_else(|| Error::BadPrime("no prime keeps the polynomial squarefree".into()))?;
    if modular.len() == 1 {
        return Ok(vec![g.clone()]);
    }
    let bound = factor_coeff_bound(g);
    let (lifted, plan) = hensel_lift_basis(g, &modular, &bound)?;
    let m = plan.modulus();
    recombine(g.clone(), lifted, &m)
}

/// `2^deg * ceil(||g||_2)`, a bound on the coefficients of any factor.
fn factor_coeff_bound(g: &IntPoly) -> BigInt {
    let sq: BigInt = g.coeffs().iter().map(|c| c * c).sum();
    let mut r = sq.sqrt();
    if &r * &r < sq {
        r += 1;
    }
    r << g.deg()
}

fn recombine(mut g: IntPoly, mut pool: Vec<IntPoly>, m: &BigInt) -> Result<Vec<IntPoly>> {
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= pool.len() {
        let mut hit = None;
        for subset in Combinations::new(pool.len(), s) {
            let cand = subset
                .iter()
                .fold(IntPoly::one(), |acc, &i| acc.mul(&pool[i]).mod_symmetric(m));
            let c0 = cand.coeff(0);
            if !c0.is_zero() && !(g.coeff(0) % &c0).is_zero() {
                continue;
            }
            if let Some(q) = g.div_exact(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                g = q;
                for &i in subset.iter().rev() {
                    pool.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if g.deg() > 0 {
        found.push(g);
    }
    Ok(found)
}

/// k-subsets of `0..n` in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
