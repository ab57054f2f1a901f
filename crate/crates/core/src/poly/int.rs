use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{FieldPoly, KARATSUBA_THRESHOLD};
use super::text::{format_ascending, format_descending, Term};
use crate::ff::PrimeField;
use crate::{Error, Result};

/// Dense polynomial with arbitrary precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ascending(&self.terms()))
    }
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::from_i64(&[1])
    }

    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(mul_big(&self.coeffs, &other.coeffs))
    }

    pub fn pow(&self, mut e: usize) -> IntPoly {
        let mut acc = IntPoly::one();
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

    /// Division by a monic polynomial.
    pub fn divrem_monic(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = rem[i + dlen - 1].clone();
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dlen - 1);
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Exact quotient over Z, `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        let dlen = divisor.coeffs.len();
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.coeffs.len() < dlen {
            return None;
        }
        let lc = divisor.lc();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let (c, r) = rem[i + dlen - 1].div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        if rem[..dlen - 1].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    /// `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let dlen = divisor.coeffs.len();
        assert!(dlen > 0, "pseudo remainder by zero");
        if self.coeffs.len() < dlen {
            return self.clone();
        }
        let lc = divisor.lc();
        let mut rem = self.coeffs.clone();
        for i in (0..rem.len() - dlen + 1).rev() {
            let c = rem[i + dlen - 1].clone();
            for r in rem.iter_mut().take(i + dlen - 1) {
                *r *= &lc;
            }
            rem[i + dlen - 1] = BigInt::zero();
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate().take(dlen - 1) {
                    rem[i + j] -= &c * d;
                }
            }
        }
        rem.truncate(dlen - 1);
        IntPoly::new(rem)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Primitive gcd with positive leading coefficient (primitive remainder
    /// sequence; contents are ignored).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Coefficientwise reduction into GF(p).
    pub fn reduce(&self, field: PrimeField) -> FieldPoly {
        FieldPoly::new(
            field,
            self.coeffs.iter().map(|c| field.reduce_bigint(c)).collect(),
        )
    }

    /// Lift of a field polynomial with coefficients in `(-p/2, p/2]`.
    pub fn from_field_symmetric(f: &FieldPoly) -> IntPoly {
        let field = f.field();
        IntPoly::new(
            f.coeffs()
                .iter()
                .map(|&c| BigInt::from(field.symmetric(c)))
                .collect(),
        )
    }

    /// Coefficients reduced into `[0, m)`.
    pub fn mod_positive(&self, m: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c.mod_floor(m)).collect())
    }

    /// Coefficients reduced into `(-m/2, m/2]`.
    pub fn mod_symmetric(&self, m: &BigInt) -> IntPoly {
        let half: BigInt = m >> 1;
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let r = c.mod_floor(m);
                    if r > half {
                        r - m
                    } else {
                        r
                    }
                })
                .collect(),
        )
    }

    pub fn terms(&self) -> Vec<Term> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| Term {
                negative: c.is_negative(),
                magnitude: c.abs().to_string(),
                power: k,
            })
            .collect()
    }

    pub fn to_compact(&self) -> String {
        format_descending(&self.terms())
    }

    /// Same ordering contract as [`FieldPoly::canonical_cmp`].
    pub fn canonical_cmp(&self, other: &IntPoly) -> Ordering {
        let key = |p: &IntPoly| -> Vec<(BigInt, bool)> {
            p.coeffs
                .iter()
                .rev()
                .skip(1)
                .map(|c| (c.abs(), c.is_negative()))
                .collect()
        };
        self.degree()
            .cmp(&other.degree())
            .then_with(|| key(self).cmp(&key(other)))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::add(self, rhs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::sub(self, rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::mul(self, rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::neg(self)
    }
}

fn mul_big(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        return out;
    }
    let half = a.len().max(b.len()).div_ceil(2);
    let split = |v: &[BigInt]| -> (Vec<BigInt>, Vec<BigInt>) {
        if v.len() <= half {
            (v.to_vec(), vec![BigInt::zero()])
        } else {
            (v[..half].to_vec(), v[half..].to_vec())
        }
    };
    let sum = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> {
        (0..x.len().max(y.len()))
            .map(|i| {
                x.get(i).cloned().unwrap_or_default() + y.get(i).cloned().unwrap_or_default()
            })
            .collect()
    };
    let (a0, a1) = split(a);
    let (b0, b1) = split(b);
    let z0 = mul_big(&a0, &b0);
    let z2 = mul_big(&a1, &b1);
    let z1 = mul_big(&sum(&a0, &a1), &sum(&b0, &b1));
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    let mut acc = |offset: usize, v: &[BigInt], negate: bool| {
        for (i, c) in v.iter().enumerate() {
            if let Some(slot) = out.get_mut(offset + i) {
                if negate {
                    *slot -= c;
                } else {
                    *slot += c;
                }
            }
        }
    };
    acc(0, &z0, false);
    acc(half, &z1, false);
    acc(half, &z0, true);
    acc(half, &z2, true);
    acc(2 * half, &z2, false);
    out
}
