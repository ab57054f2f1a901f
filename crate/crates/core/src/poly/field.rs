use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::text::{format_ascending, format_descending, Term};
use crate::ff::PrimeField;
use crate::{Error, Result};

/// Schoolbook below this length, Karatsuba above.
pub const KARATSUBA_THRESHOLD: usize = 64;

/// Dense polynomial over GF(p), constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}

impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ascending(&self.terms()))
    }
}

impl FieldPoly {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c = field.reduce(*c);
        }
        let mut p = FieldPoly { field, coeffs };
        p.trim();
        p
    }

    pub fn from_i64(field: PrimeField, coeffs: &[i64]) -> Self {
        FieldPoly::new(field, coeffs.iter().map(|&c| field.reduce_i64(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        FieldPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        FieldPoly::constant(field, 1)
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        FieldPoly::new(field, vec![c])
    }

    pub fn x(field: PrimeField) -> Self {
        FieldPoly::monomial(field, 1, 1)
    }

    pub fn monomial(field: PrimeField, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        FieldPoly::new(field, coeffs)
    }

    /// `X - a`.
    pub fn linear(field: PrimeField, a: u64) -> Self {
        FieldPoly::new(field, vec![field.neg(field.reduce(a)), 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn monic(&self) -> FieldPoly {
        match self.field.inv(self.lc()) {
            None => self.clone(),
            Some(inv) => self.scale(inv),
        }
    }

    fn check_field(&self, other: &FieldPoly) {
        assert_eq!(
            self.field, other.field,
            "polynomials over different fields"
        );
    }

    pub fn scale(&self, c: u64) -> FieldPoly {
        let f = self.field;
        FieldPoly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn shift(&self, k: usize) -> FieldPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        FieldPoly {
            field: self.field,
            coeffs,
        }
    }

    pub fn add(&self, other: &FieldPoly) -> FieldPoly {
        self.check_field(other);
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        FieldPoly::new(f, coeffs)
    }

    pub fn sub(&self, other: &FieldPoly) -> FieldPoly {
        self.check_field(other);
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        FieldPoly::new(f, coeffs)
    }

    pub fn neg(&self) -> FieldPoly {
        let f = self.field;
        FieldPoly {
            field: f,
            coeffs: self.coeffs.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn mul(&self, other: &FieldPoly) -> FieldPoly {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return FieldPoly::zero(self.field);
        }
        let coeffs = mul_coeffs(self.field, &self.coeffs, &other.coeffs, KARATSUBA_THRESHOLD);
        FieldPoly::new(self.field, coeffs)
    }

    pub fn pow(&self, mut e: usize) -> FieldPoly {
        let mut acc = FieldPoly::one(self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder with `deg(r) < deg(divisor)`.
    pub fn divrem(&self, divisor: &FieldPoly) -> Result<(FieldPoly, FieldPoly)> {
        self.check_field(divisor);
        let f = self.field;
        let dlen = divisor.coeffs.len();
        if dlen == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() < dlen {
            return Ok((FieldPoly::zero(f), self.clone()));
        }
        let inv_lc = f.inv(divisor.lc()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![0u64; qlen];
        for i in (0..qlen).rev() {
            let c = f.mul(rem[i + dlen - 1], inv_lc);
            quot[i] = c;
            if c != 0 {
                let neg_c = f.neg(c);
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = (rem[i + j] + neg_c * d) % f.modulus();
                }
            }
        }
        rem.truncate(dlen - 1);
        Ok((FieldPoly::new(f, quot), FieldPoly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &FieldPoly) -> Result<FieldPoly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn div_exact(&self, divisor: &FieldPoly) -> Option<FieldPoly> {
        let (q, r) = self.divrem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &FieldPoly) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &FieldPoly) -> FieldPoly {
        self.check_field(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &FieldPoly) -> (FieldPoly, FieldPoly, FieldPoly) {
        self.check_field(other);
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FieldPoly::one(f), FieldPoly::zero(f));
        let (mut t0, mut t1) = (FieldPoly::zero(f), FieldPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("r1 nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        match f.inv(r0.lc()) {
            Some(inv) => (r0.scale(inv), s0.scale(inv), t0.scale(inv)),
            None => (r0, s0, t0),
        }
    }

    pub fn lcm(&self, other: &FieldPoly) -> FieldPoly {
        if self.is_zero() || other.is_zero() {
            return FieldPoly::zero(self.field);
        }
        let g = self.gcd(other);
        self.div_exact(&g).expect("gcd divides").mul(other).monic()
    }

    pub fn derivative(&self) -> FieldPoly {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.reduce(i as u64)))
            .collect();
        FieldPoly::new(f, coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mulmod(&self, other: &FieldPoly, modulus: &FieldPoly) -> FieldPoly {
        self.mul(other).rem(modulus).expect("nonzero modulus")
    }

    /// `self^e mod modulus` for a big exponent.
    pub fn powmod_big(&self, e: &BigUint, modulus: &FieldPoly) -> FieldPoly {
        let mut acc = FieldPoly::one(self.field).rem(modulus).expect("nonzero modulus");
        if e.is_zero() {
            return acc;
        }
        let base = self.rem(modulus).expect("nonzero modulus");
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, modulus);
            if e.bit(i) {
                acc = acc.mulmod(&base, modulus);
            }
        }
        acc
    }

    pub fn powmod(&self, e: u64, modulus: &FieldPoly) -> FieldPoly {
        self.powmod_big(&BigUint::from(e), modulus)
    }

    /// Multiplicity of `factor` in `self` (`self` nonzero, `factor` non-constant).
    pub fn multiplicity_of(&self, factor: &FieldPoly) -> usize {
        assert!(!factor.is_constant(), "multiplicity of a constant");
        let mut count = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(factor) {
            cur = q;
            count += 1;
        }
        count
    }

    pub fn terms(&self) -> Vec<Term> {
        let f = self.field;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| {
                let s = f.symmetric(c);
                Term {
                    negative: s < 0,
                    magnitude: s.unsigned_abs().to_string(),
                    power: k,
                }
            })
            .collect()
    }

    /// Compact highest-degree-first form, e.g. `X^2-3*X+2`.
    pub fn to_compact(&self) -> String {
        format_descending(&self.terms())
    }

    /// Canonical order used for factored output: degree first, then the
    /// coefficients below the leading one from high to low, compared by
    /// magnitude of the symmetric representative and then by sign.
    pub fn canonical_cmp(&self, other: &FieldPoly) -> Ordering {
        let key = |p: &FieldPoly| -> Vec<(u64, bool)> {
            p.coeffs
                .iter()
                .rev()
                .skip(1)
                .map(|&c| {
                    let s = p.field.symmetric(c);
                    (s.unsigned_abs(), s < 0)
                })
                .collect()
        };
        self.degree()
            .cmp(&other.degree())
            .then_with(|| key(self).cmp(&key(other)))
    }
}

impl Add for &FieldPoly {
    type Output = FieldPoly;
    fn add(self, rhs: &FieldPoly) -> FieldPoly {
        FieldPoly::add(self, rhs)
    }
}

impl Sub for &FieldPoly {
    type Output = FieldPoly;
    fn sub(self, rhs: &FieldPoly) -> FieldPoly {
        FieldPoly::sub(self, rhs)
    }
}

impl Mul for &FieldPoly {
    type Output = FieldPoly;
    fn mul(self, rhs: &FieldPoly) -> FieldPoly {
        FieldPoly::mul(self, rhs)
    }
}

impl Neg for &FieldPoly {
    type Output = FieldPoly;
    fn neg(self) -> FieldPoly {
        FieldPoly::neg(self)
    }
}

fn schoolbook(field: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let p = field.modulus() as u128;
    let n = a.len() + b.len() - 1;
    let mut out = vec![0u64; n];
    for (k, slot) in out.iter_mut().enumerate() {
        let lo = k.saturating_sub(b.len() - 1);
        let hi = k.min(a.len() - 1);
        let mut acc: u128 = 0;
        for i in lo..=hi {
            acc += (a[i] * b[k - i]) as u128;
        }
        *slot = (acc % p) as u64;
    }
    out
}

/// Coefficient product of two nonempty slices.
pub fn mul_coeffs(field: PrimeField, a: &[u64], b: &[u64], threshold: usize) -> Vec<u64> {
    if a.len().min(b.len()) < threshold.max(2) {
        return schoolbook(field, a, b);
    }
    let half = a.len().max(b.len()).div_ceil(2);
    let split = |v: &[u64]| -> (Vec<u64>, Vec<u64>) {
        if v.len() <= half {
            (v.to_vec(), vec![0])
        } else {
            (v[..half].to_vec(), v[half..].to_vec())
        }
    };
    let (a0, a1) = split(a);
    let (b0, b1) = split(b);
    let add = |x: &[u64], y: &[u64]| -> Vec<u64> {
        (0..x.len().max(y.len()))
            .map(|i| field.add(*x.get(i).unwrap_or(&0), *y.get(i).unwrap_or(&0)))
            .collect()
    };
    let z0 = mul_coeffs(field, &a0, &b0, threshold);
    let z2 = mul_coeffs(field, &a1, &b1, threshold);
    let z1 = mul_coeffs(field, &add(&a0, &a1), &add(&b0, &b1), threshold);
    let n = a.len() + b.len() - 1;
    let mut out = vec![0u64; n.max(2 * half + z2.len()).max(half + z1.len())];
    let mut acc = |offset: usize, v: &[u64], negate: bool| {
        for (slot, &c) in out[offset..].iter_mut().zip(v) {
            *slot = if negate {
                field.sub(*slot, c)
            } else {
                field.add(*slot, c)
            };
        }
    };
    acc(0, &z0, false);
    acc(half, &z1, false);
    acc(half, &z0, true);
    acc(half, &z2, true);
    acc(2 * half, &z2, false);
    debug_assert!(out[n..].iter().all(|&c| c == 0));
    out.truncate(n);
    out
}

/// `prod_i factors[i]^{exponents[i]}`.
pub fn product_of_powers(field: PrimeField, factors: &[(FieldPoly, usize)]) -> FieldPoly {
    factors
        .iter()
        .fold(FieldPoly::one(field), |acc, (f, e)| acc.mul(&f.pow(*e)))
}

impl FieldPoly {
    /// Degree-`d` polynomial `X^d` convenience for powers of `X`.
    pub fn x_pow(field: PrimeField, d: usize) -> FieldPoly {
        FieldPoly::monomial(field, 1, d)
    }

    /// True when `self` is irreducible; checks `X^{p^d} = X mod self` and
    /// `gcd(X^{p^j} - X, self) = 1` for the maximal proper divisors `j` of
    /// `d` (Rabin's test).
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(d) => d,
        };
        if d == 1 {
            return true;
        }
        let f = self.monic();
        let field = self.field;
        let p = BigUint::from(field.modulus());
        let x = FieldPoly::x(field);
        let frob = |k: usize| -> FieldPoly {
            let mut h = x.clone();
            for _ in 0..k {
                h = h.powmod_big(&p, &f);
            }
            h
        };
        if !frob(d).sub(&x).rem(&f).unwrap().is_zero() {
            return false;
        }
        let mut primes = Vec::new();
        let mut m = d;
        let mut r = 2;
        while r * r <= m {
            if m % r == 0 {
                primes.push(r);
                while m % r == 0 {
                    m /= r;
                }
            }
            r += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        primes
            .into_iter()
            .all(|r| frob(d / r).sub(&x).gcd(&f).is_one())
    }
}

impl FieldPoly {
    /// Big exponent `(p^d - 1) / 2` used by equal-degree splitting.
    pub(crate) fn half_group_order(field: PrimeField, d: usize) -> BigUint {
        let p = BigUint::from(field.modulus());
        (p.pow(d as u32) - BigUint::one()) >> 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = gf(5);
        let a = FieldPoly::from_i64(f5, &[-1, 0, 1]);
        let b = FieldPoly::from_i64(f5, &[-1, 1]);
        assert_eq!(a.gcd(&b), b);
        let f7 = gf(7);
        let (_, r) = FieldPoly::from_i64(f7, &[1, 0, 1])
            .divrem(&FieldPoly::from_i64(f7, &[-2, 1]))
            .unwrap();
        assert_eq!(r, FieldPoly::constant(f7, 5));
        assert!(FieldPoly::one(f7).divrem(&FieldPoly::zero(f7)).is_err());
    }

    #[test]
    fn horner() {
        let f = gf(11);
        let p = FieldPoly::from_i64(f, &[2, -3, 1]);
        assert_eq!(p.eval(4), 6);
        assert_eq!(p.eval(0), 2);
    }

    #[test]
    fn display_forms() {
        let f = gf(101);
        let p = FieldPoly::from_i64(f, &[2, -3, 1]);
        assert_eq!(p.to_string(), "2 - 3*X + X^2");
        assert_eq!(p.to_compact(), "X^2-3*X+2");
        assert_eq!(FieldPoly::zero(f).to_string(), "0");
        assert_eq!(FieldPoly::from_i64(f, &[0, -1]).to_string(), "-X");
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let f = gf(10007);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (la, lb) in [(1, 200), (64, 64), (65, 130), (150, 97), (300, 300)] {
            let a: Vec<u64> = (0..la).map(|_| rng.gen_range(0..10007)).collect();
            let b: Vec<u64> = (0..lb).map(|_| rng.gen_range(0..10007)).collect();
            assert_eq!(mul_coeffs(f, &a, &b, 8), schoolbook(f, &a, &b));
        }
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = gf(101);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let a = FieldPoly::new(f, (0..rng.gen_range(1..12)).map(|_| rng.gen_range(0..101)).collect());
            let b = FieldPoly::new(f, (0..rng.gen_range(1..12)).map(|_| rng.gen_range(0..101)).collect());
            let (g, s, t) = a.ext_gcd(&b);
            assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
            assert_eq!(g, a.gcd(&b));
        }
    }

    #[test]
    fn irreducibility_test() {
        let f5 = gf(5);
        assert!(FieldPoly::from_i64(f5, &[-1, -2, 1]).is_irreducible());
        assert!(!FieldPoly::from_i64(f5, &[1, 0, 1]).is_irreducible());
        // a cubic is irreducible exactly when it has no root
        let f7 = gf(7);
        for c in 0..7u64 {
            let p = FieldPoly::new(f7, vec![c, 0, 0, 1]);
            let has_root = (0..7).any(|x| p.eval(x) == 0);
            assert_eq!(p.is_irreducible(), !has_root, "X^3+{c}");
        }
    }
}
