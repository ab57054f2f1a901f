use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::adaptive::{charpoly_from_minpoly, AdaptiveConfig, CharpolyReport};
use crate::blackbox::wiedemann_minpoly;
use crate::explain::Explain;
use crate::ff::{find_index_calculus_field_above, PrimeField};
use crate::poly::{gcd_free_basis, hensel_lift_basis, int_squarefree_part, FieldPoly, IntPoly};
use crate::{Error, Result};

use super::{charpoly_coeff_bound, integer_minpoly, IntegerMatrix};

/// Smallest modulus used for the field computation.
const MIN_Q: u64 = 1 << 29;
const MAX_BAD_PRIMES: usize = 3;

/// An integer characteristic polynomial with the pairwise coprime factors
/// it was assembled from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedCharpoly {
    pub charpoly: IntPoly,
    /// `charpoly = prod g^mu`, each `g` squarefree and monic.
    pub basis: Vec<(IntPoly, usize)>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadPrime(msg.into())
}

/// Lifts a characteristic polynomial known modulo `p` to Z.
///
/// The squarefree part `S` of the integer minimal polynomial is split mod p
/// along a gcd-free basis of `{S, minpoly, charpoly}`; the basis is Hensel
/// lifted and raised to the exponents the modular charpoly assigns it, all
/// modulo `p^k > 2 B` with B the charpoly coefficient bound.
pub fn lift_charpoly(a: &IntegerMatrix, minpoly: &IntPoly, p: u64, charpoly_mod_p: &FieldPoly) -> Result<LiftedCharpoly> {
    let n = a.dim();
    if p <= n as u64 {
        return Err(bad(format!("{p} does not exceed the dimension {n}")));
    }
    let field = PrimeField::new(p)?;
    let mp = minpoly.reduce(field);
    if mp.deg() != minpoly.deg() || !minpoly.is_monic() {
        return Err(bad(format!("minimal polynomial loses degree mod {p}")));
    }
    if charpoly_mod_p.deg() != n || charpoly_mod_p.field() != field {
        return Err(bad(format!("charpoly mod {p} has degree {} instead of {n}", charpoly_mod_p.deg())));
    }
    if minpoly.deg() == n {
        if mp != *charpoly_mod_p {
            return Err(bad(format!("charpoly mod {p} differs from the full-degree minimal polynomial")));
        }
        let s = int_squarefree_part(minpoly);
        return Ok(LiftedCharpoly {
            charpoly: minpoly.clone(),
            basis: exponents_over_z(minpoly, &s),
        });
    }
    let s = int_squarefree_part(minpoly);
    let sp = s.reduce(field);
    if !sp.gcd(&sp.derivative()).is_one() {
        return Err(bad(format!("squarefree part is not squarefree mod {p}")));
    }
    let basis = gcd_free_basis(&[sp.clone(), mp, charpoly_mod_p.clone()], charpoly_mod_p)?;
    let prod = basis.elements.iter().fold(FieldPoly::one(field), |acc, g| acc.mul(g));
    if prod != sp {
        return Err(bad(format!("gcd-free basis mod {p} does not multiply to the squarefree part")));
    }
    let bound = charpoly_coeff_bound(n, a.norm());
    let (lifted, plan) = hensel_lift_basis(&s, &basis.elements, &bound).map_err(|e| bad(e.to_string()))?;
    let modulus = plan.modulus();
    let mut cp = IntPoly::one();
    for (g, &mu) in lifted.iter().zip(&basis.exponents) {
        for _ in 0..mu {
            cp = cp.mul(g).mod_symmetric(&modulus);
        }
    }
    if cp.deg() != n || !cp.is_monic() {
        return Err(bad(format!("lifted product has degree {}", cp.deg())));
    }
    Ok(LiftedCharpoly {
        charpoly: cp,
        basis: lifted.into_iter().zip(basis.exponents).collect(),
    })
}

/// `f = prod g^mu` with `g` grouped by multiplicity, for a full-degree
/// minimal polynomial with squarefree part `s`.
fn exponents_over_z(f: &IntPoly, s: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut level = s.clone();
    let mut k = 0;
    // level_k = gcd(rest, s) holds the factors with multiplicity > k
    while rest.deg() > 0 {
        k += 1;
        let next_rest = rest.div_exact(&level).expect("squarefree part divides");
        let next_level = next_rest.gcd(&level);
        let exact = level.div_exact(&next_level).expect("gcd divides");
        if exact.deg() > 0 {
            out.push((exact, k));
        }
        rest = next_rest;
        level = next_level;
    }
    out
}

#[derive(Clone, Debug)]
pub struct IntegerCharpolyReport {
    pub charpoly: IntPoly,
    pub minpoly: IntPoly,
    pub basis: Vec<(IntPoly, usize)>,
    /// Prime the field computation ran over.
    pub prime: u64,
    pub bad_primes: Vec<(u64, String)>,
    pub field: CharpolyReport,
}

/// Characteristic polynomial over Z.
pub fn integer_charpoly(a: &IntegerMatrix, cfg: &AdaptiveConfig) -> Result<IntegerCharpolyReport> {
    integer_charpoly_explained(a, cfg, &Explain::disabled())
}

pub fn integer_charpoly_explained(a: &IntegerMatrix, cfg: &AdaptiveConfig, explain: &Explain) -> Result<IntegerCharpolyReport> {
    let n = a.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let minpoly = integer_minpoly(a, &cfg.wiedemann, explain, &mut rng)?;
    let mut bad_primes = Vec::new();
    while bad_primes.len() < MAX_BAD_PRIMES {
        let (q, _) = find_index_calculus_field_above(n, MIN_Q, &mut rng)?;
        match charpoly_at_prime(a, &minpoly, q, cfg, explain, &mut rng) {
            Ok((lifted, field)) => {
                return Ok(IntegerCharpolyReport {
                    charpoly: lifted.charpoly,
                    minpoly,
                    basis: lifted.basis,
                    prime: q,
                    bad_primes,
                    field,
                })
            }
            Err(e @ (Error::BadPrime(_) | Error::SelfCheck(_) | Error::HenselPrecondition(_))) => {
                explain.record("bad_prime", json!({"prime": q, "reason": e.to_string()}));
                bad_primes.push((q, e.to_string()));
            }
            Err(e) => return Err(e),
        }
    }
    let detail: Vec<String> = bad_primes.iter().map(|(p, why)| format!("{p}: {why}")).collect();
    Err(bad(format!("{MAX_BAD_PRIMES} bad primes in a row ({})", detail.join("; "))))
}

fn charpoly_at_prime<R: Rng + ?Sized>(
    a: &IntegerMatrix,
    minpoly: &IntPoly,
    q: u64,
    cfg: &AdaptiveConfig,
    explain: &Explain,
    rng: &mut R,
) -> Result<(LiftedCharpoly, CharpolyReport)> {
    let n = a.dim();
    let field = PrimeField::new(q)?;
    let aq = a.reduce(field);
    let mq = minpoly.reduce(field);
    let direct = wiedemann_minpoly(&aq, &cfg.wiedemann, rng)?;
    if direct != mq {
        return Err(bad(format!("minimal polynomial mod {q} is not the reduction of the integer one")));
    }
    let field_cfg = AdaptiveConfig {
        seed: rng.gen(),
        ..cfg.clone()
    };
    explain.record("field_prime", json!({"prime": q}));
    let report = charpoly_from_minpoly(&aq, mq, &field_cfg, explain, rng)?;
    let lifted = lift_charpoly(a, minpoly, q, &report.charpoly)?;
    let cp = &lifted.charpoly;
    if n > 0 && cp.coeff(n - 1) != -a.trace() {
        return Err(Error::SelfCheck("coefficient of X^(n-1) is not -trace(A)".into()));
    }
    if cp.div_exact(minpoly).is_none() {
        return Err(Error::SelfCheck("integer minimal polynomial does not divide the result".into()));
    }
    Ok((lifted, report))
}

/// `|c| <= B` for every coefficient; a sanity check on the bound.
pub fn within_bound(cp: &IntPoly, bound: &BigInt) -> bool {
    cp.coeffs().iter().all(|c| c.magnitude() <= bound.magnitude())
}
