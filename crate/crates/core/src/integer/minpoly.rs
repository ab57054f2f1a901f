use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashSet;

use crate::blackbox::{wiedemann_minpoly, WiedemannConfig};
use crate::explain::Explain;
use crate::ff::{random_prime_in, PrimeField};
use crate::poly::{CrtAccumulator, FieldPoly, IntPoly};
use crate::{Error, Result};

use super::{minpoly_coeff_bound, IntegerMatrix};

const PRIME_LO: u64 = 1 << 30;
const PRIME_HI: u64 = (1 << 31) - 1;
/// Primes reduced per parallel batch.
const BATCH: usize = 3;

fn fresh_prime<R: Rng + ?Sized>(used: &mut HashSet<u64>, rng: &mut R) -> u64 {
    loop {
        let p = random_prime_in(PRIME_LO, PRIME_HI, rng).expect("primes exist near 2^30");
        if used.insert(p) {
            return p;
        }
    }
}

fn minpoly_mod(a: &IntegerMatrix, p: u64, cfg: &WiedemannConfig, seed: u64) -> Result<FieldPoly> {
    let field = PrimeField::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    wiedemann_minpoly(&a.reduce(field), cfg, &mut rng)
}

/// Minimal polynomial over Z from minimal polynomials modulo random primes
/// near 2^30.
///
/// Residues of the largest degree seen are combined by CRT (a smaller
/// degree only happens at primes dividing some invariant of A, so those are
/// dropped). The reconstruction is accepted once it has not changed over two
/// further primes and agrees with one more fresh prime, or once the modulus
/// passes the worst-case coefficient bound.
pub fn integer_minpoly<R: Rng + ?Sized>(a: &IntegerMatrix, cfg: &WiedemannConfig, explain: &Explain, rng: &mut R) -> Result<IntPoly> {
    let n = a.dim();
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let norm = a.norm().clone().max(1.into());
    let bound_bits = minpoly_coeff_bound(n, &norm);
    let max_primes = bound_bits as usize / 29 + 24;
    let cfg = WiedemannConfig {
        early_termination: true,
        ..cfg.clone()
    };
    let mut used = HashSet::new();
    let mut acc = CrtAccumulator::new();
    let mut last: Option<IntPoly> = None;
    let mut stable = 0;
    let mut dropped = 0;
    let mut tried = 0;
    while tried < max_primes {
        let jobs: Vec<(u64, u64)> = (0..BATCH).map(|_| (fresh_prime(&mut used, rng), rng.gen())).collect();
        tried += jobs.len();
        let residues: Vec<(u64, Result<FieldPoly>)> = jobs
            .par_iter()
            .map(|&(p, seed)| (p, minpoly_mod(a, p, &cfg, seed)))
            .collect();
        for (p, res) in residues {
            let Ok(m) = res else {
                dropped += 1;
                continue;
            };
            match acc.degree() {
                Some(d) if m.deg() < d => {
                    dropped += 1;
                    continue;
                }
                Some(d) if m.deg() > d => {
                    explain.record("minpoly_reset", serde_json::json!({"prime": p, "degree": m.deg(), "was": d}));
                    acc = CrtAccumulator::new();
                    last = None;
                    stable = 0;
                }
                _ => {}
            }
            acc.add(&m)?;
            let rec = acc.symmetric();
            if last.as_ref() == Some(&rec) {
                stable += 1;
            } else {
                stable = 0;
                last = Some(rec);
            }
        }
        let Some(rec) = last.clone() else {
            continue;
        };
        let exhausted = acc.modulus().bits() > bound_bits + 1;
        if stable >= 2 || exhausted {
            if exhausted {
                explain.record("minpoly_done", serde_json::json!({"degree": rec.deg(), "primes": tried, "reason": "bound"}));
                return Ok(rec);
            }
            let pv = fresh_prime(&mut used, rng);
            tried += 1;
            let mv = minpoly_mod(a, pv, &cfg, rng.gen())?;
            let field = PrimeField::new(pv)?;
            if mv.deg() == rec.deg() && rec.reduce(field) == mv {
                explain.record(
                    "minpoly_done",
                    serde_json::json!({"degree": rec.deg(), "primes": tried, "dropped": dropped, "verify_prime": pv}),
                );
                return Ok(rec);
            }
            if mv.deg() >= rec.deg() {
                if mv.deg() > rec.deg() {
                    acc = CrtAccumulator::new();
                    last = None;
                }
                acc.add(&mv)?;
                stable = 0;
            }
        }
    }
    Err(Error::IntegerMinpoly(format!("no stable reconstruction after {tried} primes ({dropped} dropped)")))
}
