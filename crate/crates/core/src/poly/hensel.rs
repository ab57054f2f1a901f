//! Multifactor quadratic Hensel lifting over a balanced factor tree.

use num_bigint::BigInt;

use super::field::FieldPoly;
use super::int::IntPoly;
use crate::{Error, Result};

/// Precision chosen for a lift: `p^k > 2 * bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftPlan {
    pub p: u64,
    pub k: u32,
    pub bound: BigInt,
}

impl LiftPlan {
    pub fn new(p: u64, bound: &BigInt) -> Self {
        let pb = BigInt::from(p);
        let target: BigInt = bound * 2;
        let mut m = pb.clone();
        let mut k = 1;
        while m <= target {
            m *= &pb;
            k += 1;
        }
        LiftPlan {
            p,
            k,
            bound: bound.clone(),
        }
    }

    pub fn modulus(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.p), self.k as usize)
    }
}

/// Lifts a factorization `S = prod basis[i] mod p` to `mod p^k` with
/// `p^k > 2 * bound`. Factors come back monic, in input order, with
/// coefficients in the symmetric range.
pub fn hensel_lift_basis(
    s: &IntPoly,
    basis: &[FieldPoly],
    bound: &BigInt,
) -> Result<(Vec<IntPoly>, LiftPlan)> {
    let Some(first) = basis.first() else {
        return Err(Error::HenselPrecondition("empty basis".into()));
    };
    let field = first.field();
    if !s.is_monic() {
        return Err(Error::HenselPrecondition("S is not monic".into()));
    }
    if basis.iter().any(|g| !g.is_monic() || g.is_constant()) {
        return Err(Error::HenselPrecondition(
            "basis elements must be monic and nonconstant".into(),
        ));
    }
    let product = basis
        .iter()
        .skip(1)
        .fold(first.clone(), |acc, g| acc.mul(g));
    if product != s.reduce(field) {
        return Err(Error::HenselPrecondition(
            "basis does not multiply to S mod p".into(),
        ));
    }
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            if !a.gcd(b).is_one() {
                return Err(Error::HenselPrecondition(
                    "basis elements are not coprime mod p".into(),
                ));
            }
        }
    }
    let plan = LiftPlan::new(field.modulus(), bound);
    let modulus = plan.modulus();
    let mut out = Vec::with_capacity(basis.len());
    lift_tree(&s.mod_positive(&modulus), basis, &modulus, &mut out);
    Ok((out.iter().map(|g| g.mod_symmetric(&modulus)).collect(), plan))
}

fn lift_tree(f: &IntPoly, factors: &[FieldPoly], modulus: &BigInt, out: &mut Vec<IntPoly>) {
    if factors.len() == 1 {
        out.push(f.clone());
        return;
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let a = product(left);
    let b = product(right);
    let (g, h) = lift_pair(f, &a, &b, modulus);
    lift_tree(&g, left, modulus, out);
    lift_tree(&h, right, modulus, out);
}

fn product(fs: &[FieldPoly]) -> FieldPoly {
    fs.iter().skip(1).fold(fs[0].clone(), |acc, g| acc.mul(g))
}

/// Lifts `f = a * b mod p` to `f = g * h mod modulus` by Newton iteration,
/// doubling the precision each step.
fn lift_pair(f: &IntPoly, a: &FieldPoly, b: &FieldPoly, modulus: &BigInt) -> (IntPoly, IntPoly) {
    let p = BigInt::from(a.field().modulus());
    let (one, s, t) = a.ext_gcd(b);
    debug_assert!(one.is_one());
    let lift = |x: &FieldPoly| IntPoly::new(x.coeffs().iter().map(|&c| BigInt::from(c)).collect());
    let (mut g, mut h, mut s, mut t) = (lift(a), lift(b), lift(&s), lift(&t));
    let mut m = p;
    while &m < modulus {
        let m2 = &m * &m;
        let m2 = if &m2 > modulus { modulus.clone() } else { m2 };
        let e = f.sub(&g.mul(&h)).mod_positive(&m2);
        let (q, r) = s.mul(&e).divrem_monic(&h).expect("h monic");
        let g_new = g.add(&t.mul(&e)).add(&q.mul(&g)).mod_positive(&m2);
        let h_new = h.add(&r).mod_positive(&m2);
        let beta = s
            .mul(&g_new)
            .add(&t.mul(&h_new))
            .sub(&IntPoly::one())
            .mod_positive(&m2);
        let (c, d) = s.mul(&beta).mod_positive(&m2).divrem_monic(&h_new).expect("h monic");
        s = s.sub(&d).mod_positive(&m2);
        t = t.sub(&t.mul(&beta)).sub(&c.mul(&g_new)).mod_positive(&m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    (g, h)
}

/// True when `prod factors == s mod modulus`.
pub fn lifted_product_matches(s: &IntPoly, factors: &[IntPoly], modulus: &BigInt) -> bool {
    let prod = factors
        .iter()
        .fold(IntPoly::one(), |acc, g| acc.mul(g).mod_positive(modulus));
    prod == s.mod_positive(modulus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::PrimeField;
    use crate::poly::factor::factor;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn integral_factors_come_back_unchanged() {
        let f5 = PrimeField::new(5).unwrap();
        let s = IntPoly::from_i64(&[-1, 0, 1]);
        let basis = [FieldPoly::from_i64(f5, &[-1, 1]), FieldPoly::from_i64(f5, &[1, 1])];
        let (lifted, plan) = hensel_lift_basis(&s, &basis, &BigInt::from(10)).unwrap();
        assert_eq!(plan.k, 2);
        assert_eq!(lifted, vec![IntPoly::from_i64(&[-1, 1]), IntPoly::from_i64(&[1, 1])]);
    }

    #[test]
    fn lifts_irrational_roots() {
        // X^2 - 10X + 1 = (X-2)(X-3) mod 5; its roots 5 +- sqrt(24) are not integers
        let f5 = PrimeField::new(5).unwrap();
        let s = IntPoly::from_i64(&[1, -10, 1]);
        let basis = [FieldPoly::from_i64(f5, &[-2, 1]), FieldPoly::from_i64(f5, &[-3, 1])];
        // p^k > 24 needs k = 2; roots mod 25 are 12 and 23
        let (lifted, plan) = hensel_lift_basis(&s, &basis, &BigInt::from(12)).unwrap();
        assert_eq!(plan.k, 2);
        assert_eq!(lifted, vec![IntPoly::from_i64(&[-12, 1]), IntPoly::from_i64(&[2, 1])]);

        let bound = BigInt::from(1_000_000);
        let (lifted, plan) = hensel_lift_basis(&s, &basis, &bound).unwrap();
        assert!(plan.modulus() > bound * 2);
        assert!(lifted_product_matches(&s, &lifted, &plan.modulus()));
        for (g, b) in lifted.iter().zip(&basis) {
            assert_eq!(&g.reduce(f5), b);
        }
    }

    #[test]
    fn irreducible_basis_is_s_itself() {
        let f5 = PrimeField::new(5).unwrap();
        let s = IntPoly::from_i64(&[-1, -2, 1]);
        let (lifted, _) = hensel_lift_basis(&s, &[s.reduce(f5)], &BigInt::from(100)).unwrap();
        assert_eq!(lifted, vec![s]);
    }

    #[test]
    fn rejects_wrong_product() {
        let f5 = PrimeField::new(5).unwrap();
        let s = IntPoly::from_i64(&[-1, 0, 1]);
        let basis = [FieldPoly::from_i64(f5, &[-2, 1])];
        assert!(hensel_lift_basis(&s, &basis, &BigInt::from(10)).is_err());
    }

    #[test]
    fn random_multifactor_lifts() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = PrimeField::new(10007).unwrap();
        let mut done = 0;
        while done < 20 {
            let deg = rng.gen_range(2..=30);
            let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-50..=50)).collect();
            c.push(1);
            let s = IntPoly::from_i64(&c);
            let sbar = s.reduce(f);
            if !sbar.gcd(&sbar.derivative()).is_one() {
                continue;
            }
            let basis: Vec<FieldPoly> = factor(&sbar, &mut rng)
                .factors
                .into_iter()
                .map(|(g, _)| g)
                .collect();
            let bound = BigInt::from(10).pow(40);
            let (lifted, plan) = hensel_lift_basis(&s, &basis, &bound).unwrap();
            assert!(lifted_product_matches(&s, &lifted, &plan.modulus()));
            for (g, b) in lifted.iter().zip(&basis) {
                assert_eq!(&g.reduce(f), b);
                assert!(g.is_monic());
            }
            done += 1;
        }
    }
}
