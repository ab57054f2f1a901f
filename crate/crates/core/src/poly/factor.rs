//! Squarefree decomposition and Cantor-Zassenhaus factorization over GF(p).

use num_bigint::BigUint;
use rand::Rng;

use super::field::{product_of_powers, FieldPoly};
use super::int::IntPoly;
use crate::ff::PrimeField;
use crate::{Error, Result};

/// `unit * prod P_i^{e_i}` with monic irreducible, pairwise distinct `P_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u64,
    pub factors: Vec<(FieldPoly, usize)>,
}

impl Factorization {
    pub fn product(&self, field: PrimeField) -> FieldPoly {
        product_of_powers(field, &self.factors).scale(self.unit)
    }

    pub fn sort_canonical(&mut self) {
        self.factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    }
}

/// `f / gcd(f, f')`, monic. Needs `p > deg f` so that the derivative sees
/// every repeated factor.
pub fn squarefree_part(f: &FieldPoly) -> Result<FieldPoly> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let p = f.field().modulus();
    if p as usize <= f.deg() {
        return Err(Error::CharacteristicTooSmall {
            p,
            degree: f.deg(),
        });
    }
    let g = f.gcd(&f.derivative());
    Ok(f.div_exact(&g).expect("gcd divides").monic())
}

/// Squarefree part of a primitive integer polynomial, `f / gcd(f, f')` with
/// positive leading coefficient.
pub fn int_squarefree_part(f: &IntPoly) -> IntPoly {
    let f = f.primitive_part();
    let g = f.gcd(&f.derivative());
    f.div_exact(&g).expect("gcd divides").primitive_part()
}

/// Squarefree decomposition `f = lc * prod a_i^i` with pairwise coprime,
/// squarefree, monic `a_i`; trivial parts are omitted. Handles the
/// characteristic-p case where `f' = 0` by taking p-th roots.
pub fn squarefree_decomposition(f: &FieldPoly) -> Vec<(FieldPoly, usize)> {
    assert!(!f.is_zero(), "squarefree decomposition of zero");
    let field = f.field();
    let p = field.modulus() as usize;
    let f = f.monic();
    if f.is_constant() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let d = f.derivative();
    if d.is_zero() {
        for (a, e) in squarefree_decomposition(&pth_root(&f)) {
            out.push((a, e * p));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        i += 1;
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
    }
    if !c.is_one() {
        for (a, e) in squarefree_decomposition(&pth_root(&c)) {
            out.push((a, e * p));
        }
    }
    out
}

/// `g` with `g(X)^p = f(X)` when `f` is a polynomial in `X^p`.
fn pth_root(f: &FieldPoly) -> FieldPoly {
    let p = f.field().modulus() as usize;
    let coeffs: Vec<u64> = f.coeffs().iter().step_by(p).copied().collect();
    FieldPoly::new(f.field(), coeffs)
}

/// Distinct-degree factorization of a squarefree monic polynomial: pairs
/// `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree_factorization(f: &FieldPoly) -> Vec<(FieldPoly, usize)> {
    let field = f.field();
    let p = BigUint::from(field.modulus());
    let x = FieldPoly::x(field);
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut h = x.rem(&rest).expect("nonzero");
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.powmod_big(&p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let dr = rest.deg();
        out.push((rest, dr));
    }
    out
}

/// Splits a product of distinct irreducibles of common degree `d` (odd `p`).
pub fn equal_degree_factorization<R: Rng + ?Sized>(
    g: &FieldPoly,
    d: usize,
    rng: &mut R,
) -> Vec<FieldPoly> {
    let n = g.deg();
    if n == d {
        return vec![g.monic()];
    }
    let field = g.field();
    let exp = FieldPoly::half_group_order(field, d);
    loop {
        let a = FieldPoly::new(field, (0..n).map(|_| field.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let b = a.powmod_big(&exp, g).sub(&FieldPoly::one(field));
        let u = g.gcd(&b);
        if !u.is_constant() && u.deg() < n {
            let v = g.div_exact(&u).expect("gcd divides");
            let mut out = equal_degree_factorization(&u, d, rng);
            out.extend(equal_degree_factorization(&v, d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted in canonical order.
pub fn factor<R: Rng + ?Sized>(f: &FieldPoly, rng: &mut R) -> Factorization {
    assert!(!f.is_zero(), "factor of the zero polynomial");
    let field = f.field();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        for (g, d) in distinct_degree_factorization(&part) {
            for irreducible in equal_degree_factorization(&g, d, rng) {
                factors.push((irreducible, mult));
            }
        }
    }
    let mut out = Factorization {
        unit: f.lc(),
        factors,
    };
    out.sort_canonical();
    debug_assert_eq!(out.product(field), *f);
    out
}
