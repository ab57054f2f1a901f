//! Prime field arithmetic, prime search, multiplicative generators and
//! discrete logarithms.
//!
//! Field elements are carried around as raw `u64` residues in `[0, p)` by the
//! rest of the crate; [`PrimeField`] holds the modulus and performs the
//! arithmetic. [`PrimeFieldElem`] is the checked, self-describing wrapper used
//! at API boundaries where mixing fields must be reported as an error.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::{Error, Result};

/// Largest modulus accepted by [`PrimeField`]. Products of two residues fit
/// in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Below this size the discrete log context tabulates every element.
pub const DLOG_TABLE_LIMIT: u64 = 1 << 20;

/// The prime field GF(p) for an odd prime `p <= 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p > MAX_MODULUS || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.p
    }

    #[inline]
    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn reduce_bigint(&self, a: &BigInt) -> u64 {
        let r = a.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    #[inline]
    pub fn symmetric(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        // extended Euclid on signed values
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_i64(t0))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, inv))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.p)
    }

    pub fn elem(&self, value: u64) -> PrimeFieldElem {
        PrimeFieldElem {
            value: value % self.p,
            field: *self,
        }
    }

    /// Dot product of two vectors with delayed reduction.
    pub fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        // products are < 2^62, so four of them sum without overflow
        let mut acc: u64 = 0;
        for (chunk_a, chunk_b) in a.chunks(4).zip(b.chunks(4)) {
            let s: u64 = chunk_a.iter().zip(chunk_b).map(|(x, y)| x * y).sum();
            acc = (acc + s % self.p) % self.p;
        }
        acc
    }
}

/// An element of GF(p) that remembers its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElem {
    value: u64,
    field: PrimeField,
}

impl fmt::Debug for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.field.p)
    }
}

impl fmt::Display for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl PrimeFieldElem {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<PrimeField> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p,
                right: other.field.p,
            });
        }
        Ok(self.field)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let f = self.same_field(other)?;
        Ok(f.elem(f.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let f = self.same_field(other)?;
        Ok(f.elem(f.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let f = self.same_field(other)?;
        Ok(f.elem(f.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let f = self.same_field(other)?;
        Ok(f.elem(f.div(self.value, other.value)?))
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.field.inv(self.value).ok_or(Error::DivisionByZero)?;
        Ok(self.field.elem(v))
    }

    pub fn neg(&self) -> Self {
        self.field.elem(self.field.neg(self.value))
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.field.elem(self.field.pow(self.value, exp))
    }
}

#[inline]
fn mul_mod_u128(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u128(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u128(acc, base, m);
        }
        base = mul_mod_u128(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// A uniformly placed start followed by a forward scan; returns `None` when
/// `[lo, hi)` contains no prime.
pub fn random_prime_in<R: Rng + ?Sized>(lo: u64, hi: u64, rng: &mut R) -> Option<u64> {
    if lo >= hi {
        return None;
    }
    let start = rng.gen_range(lo..hi);
    (start..hi)
        .chain(lo..start)
        .find(|&c| is_prime(c))
}

/// Prime factorization by trial division: `(prime, exponent)` pairs in
/// increasing order.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Largest prime factor of `q - 1` that exceeds `bound`.
pub fn large_prime_factor(q: u64, bound: u64) -> Option<u64> {
    factor_u64(q - 1)
        .into_iter()
        .map(|(r, _)| r)
        .filter(|&r| r > bound)
        .max()
}

/// Smallest generator of the multiplicative group of `field`.
pub fn find_generator(field: PrimeField) -> PrimeFieldElem {
    let q = field.modulus();
    let order = q - 1;
    let prime_divisors: Vec<u64> = factor_u64(order).into_iter().map(|(r, _)| r).collect();
    let g = (2..q)
        .find(|&g| prime_divisors.iter().all(|&r| field.pow(g, order / r) != 1))
        .expect("cyclic group has a generator");
    field.elem(g)
}

#[derive(Clone, Debug)]
enum DlogTable {
    /// `table[a] = log_g(a)`; entry 0 is unused.
    Full(Vec<u32>),
    /// Baby steps `g^j -> j` for `j < m`; giant stride `g^{-m}`.
    BabyGiant {
        m: u64,
        baby: HashMap<u64, u64>,
        giant: u64,
    },
}

/// Discrete logarithms to a fixed generator of GF(q).
#[derive(Clone, Debug)]
pub struct DlogContext {
    field: PrimeField,
    generator: u64,
    table: DlogTable,
}

impl DlogContext {
    pub fn new(field: PrimeField) -> Self {
        let g = find_generator(field).value();
        Self::with_generator(field, g)
    }

    /// Builds the context for a given generator. The caller guarantees `g`
    /// generates the multiplicative group.
    pub fn with_generator(field: PrimeField, g: u64) -> Self {
        let q = field.modulus();
        let table = if q < DLOG_TABLE_LIMIT {
            let mut t = vec![0u32; q as usize];
            let mut x = 1u64;
            for e in 0..q - 1 {
                t[x as usize] = e as u32;
                x = field.mul(x, g);
            }
            DlogTable::Full(t)
        } else {
            let m = ((q - 1) as f64).sqrt().ceil() as u64;
            let mut baby = HashMap::with_capacity(m as usize);
            let mut x = 1u64;
            for j in 0..m {
                baby.entry(x).or_insert(j);
                x = field.mul(x, g);
            }
            let giant = field.inv(field.pow(g, m)).expect("g is nonzero");
            DlogTable::BabyGiant { m, baby, giant }
        };
        DlogContext {
            field,
            generator: g,
            table,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Returns `e` in `[0, q-2]` with `g^e = a`.
    pub fn dlog(&self, a: u64) -> Result<u64> {
        let a = self.field.reduce(a);
        if a == 0 {
            return Err(Error::LogOfZero);
        }
        match &self.table {
            DlogTable::Full(t) => Ok(t[a as usize] as u64),
            DlogTable::BabyGiant { m, baby, giant } => {
                let mut gamma = a;
                for i in 0..*m {
                    if let Some(&j) = baby.get(&gamma) {
                        return Ok((i * m + j) % (self.field.modulus() - 1));
                    }
                    gamma = self.field.mul(gamma, *giant);
                }
                unreachable!("generator covers the whole group")
            }
        }
    }

    pub fn dlog_elem(&self, a: &PrimeFieldElem) -> Result<u64> {
        if a.field() != self.field {
            return Err(Error::FieldMismatch {
                left: a.field().modulus(),
                right: self.field.modulus(),
            });
        }
        self.dlog(a.value())
    }
}

/// Picks primes `p > n` and `q = 1 + lambda*p > 2n`, both word sized.
pub fn find_index_calculus_field<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<(u64, u64)> {
    find_index_calculus_field_above(n, 2 * n as u64 + 1, rng)
}

/// Like [`find_index_calculus_field`] but also forces `q >= min_q`.
pub fn find_index_calculus_field_above<R: Rng + ?Sized>(
    n: usize,
    min_q: u64,
    rng: &mut R,
) -> Result<(u64, u64)> {
    let n = n.max(1) as u64;
    let min_q = min_q.max(2 * n + 1).max(5);
    if min_q >= MAX_MODULUS {
        return Err(Error::PrimeSearchExhausted(n as usize));
    }
    for _ in 0..64 {
        let hi = (2 * n + 64).min(MAX_MODULUS / 4);
        let p = match random_prime_in(n + 1, hi.max(n + 2), rng) {
            Some(p) => p,
            None => next_prime(n),
        };
        if p >= MAX_MODULUS / 2 {
            break;
        }
        // q = 1 + lambda p needs lambda even for q odd
        let lambda_min = ((min_q - 1).div_ceil(p)).max(2);
        let lambda_max = (MAX_MODULUS - 1) / p;
        if lambda_min > lambda_max {
            continue;
        }
        let span = (lambda_max - lambda_min).min(1 << 16);
        let mut lambda = lambda_min + rng.gen_range(0..=span);
        if lambda % 2 == 1 {
            lambda += 1;
        }
        let start = lambda;
        loop {
            if lambda > lambda_max {
                lambda = lambda_min + (lambda_min % 2);
            }
            let q = 1 + lambda * p;
            if q < MAX_MODULUS && q >= min_q && is_prime(q) {
                return Ok((q, p));
            }
            lambda += 2;
            if lambda == start {
                break;
            }
        }
    }
    Err(Error::PrimeSearchExhausted(n as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_field_arithmetic() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.mul(3, 5), 1);
        assert_eq!(f7.inv(3), Some(5));
        let f11 = PrimeField::new(11).unwrap();
        assert_eq!(f11.pow(2, 10), 1);
        assert_eq!(f7.sub(2, 5), 4);
        assert_eq!(f7.neg(0), 0);
    }

    #[test]
    fn elem_errors() {
        let f7 = PrimeField::new(7).unwrap();
        let f11 = PrimeField::new(11).unwrap();
        let a = f7.elem(3);
        assert!(matches!(a.add(&f11.elem(1)), Err(Error::FieldMismatch { .. })));
        assert!(matches!(a.div(&f7.elem(0)), Err(Error::DivisionByZero)));
        assert!(matches!(f7.elem(0).inv(), Err(Error::DivisionByZero)));
        assert_eq!(a.mul(&f7.elem(5)).unwrap().value(), 1);
        assert_eq!(a.inv().unwrap().value(), 5);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new((1 << 31) + 11).is_err());
        assert!(PrimeField::new(2147483647).is_ok());
    }

    #[test]
    fn primality_matches_sieve() {
        let limit = 20_000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                let mut j = i * i;
                while j < limit {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        for (i, &s) in sieve.iter().enumerate() {
            assert_eq!(is_prime(i as u64), s, "{i}");
        }
        // strong pseudoprime to bases 2,3,5,7
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn generators() {
        for (q, g) in [(7, 3), (11, 2), (3, 2)] {
            let f = PrimeField::new(q).unwrap();
            assert_eq!(find_generator(f).value(), g);
            // enumerate powers to confirm the order
            let mut seen = std::collections::HashSet::new();
            let mut x = 1;
            for _ in 0..q - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u64, q - 1);
        }
    }

    #[test]
    fn dlog_examples() {
        let f = PrimeField::new(11).unwrap();
        let ctx = DlogContext::with_generator(f, 2);
        assert_eq!(ctx.dlog(4).unwrap(), 2);
        assert_eq!(ctx.dlog(7).unwrap(), 7);
        assert_eq!(ctx.dlog(2).unwrap(), 1);
        assert_eq!(ctx.dlog(1).unwrap(), 0);
        assert!(matches!(ctx.dlog(0), Err(Error::LogOfZero)));
    }

    #[test]
    fn dlog_exhaustive_small() {
        for q in [3u64, 101, 10007, 65537] {
            let f = PrimeField::new(q).unwrap();
            let ctx = DlogContext::new(f);
            let g = ctx.generator();
            for a in 1..q {
                let e = ctx.dlog(a).unwrap();
                assert!(e <= q - 2);
                assert_eq!(f.pow(g, e), a);
            }
        }
    }

    #[test]
    fn dlog_baby_giant() {
        let q = 2_147_483_647; // 2^31 - 1
        let f = PrimeField::new(q).unwrap();
        let ctx = DlogContext::new(f);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(ctx.dlog(ctx.generator()).unwrap(), 1);
        for _ in 0..50 {
            let a = f.random_nonzero(&mut rng);
            let e = ctx.dlog(a).unwrap();
            assert_eq!(f.pow(ctx.generator(), e), a);
        }
    }

    #[test]
    fn index_calculus_field_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // the example pair for n = 3
        assert!(is_prime(11) && is_prime(5) && 11 % 5 == 1);
        for n in [1usize, 3, 10, 100] {
            let (q, p) = find_index_calculus_field(n, &mut rng).unwrap();
            assert!(is_prime(q) && is_prime(p));
            assert!(p > n as u64 && q > 2 * n as u64);
            assert_eq!((q - 1) % p, 0);
        }
        for _ in 0..1000 {
            let n = rng.gen_range(2..=100_000usize);
            let (q, p) = find_index_calculus_field(n, &mut rng).unwrap();
            assert!(is_prime(q) && is_prime(p) && p > n as u64 && (q - 1) % p == 0);
            assert!(q < MAX_MODULUS);
        }
        let (q, p) = find_index_calculus_field_above(40, 1 << 29, &mut rng).unwrap();
        assert!(q >= 1 << 29 && p > 40 && (q - 1) % p == 0);
    }

    #[test]
    fn factoring_small_integers() {
        assert_eq!(factor_u64(10006), vec![(2, 1), (5003, 1)]);
        assert_eq!(factor_u64(65536), vec![(2, 16)]);
        assert_eq!(large_prime_factor(10007, 60), Some(5003));
        assert_eq!(large_prime_factor(101, 10), None);
    }

    #[test]
    fn dot_product() {
        let f = PrimeField::new(2147483647).unwrap();
        let a: Vec<u64> = (0..37).map(|i| f.reduce(i * 987_654_321)).collect();
        let b: Vec<u64> = (0..37).map(|i| f.reduce(i * 123_456_789 + 5)).collect();
        let naive = a.iter().zip(&b).fold(0, |acc, (x, y)| f.add(acc, f.mul(*x, *y)));
        assert_eq!(f.dot(&a, &b), naive);
    }
}
