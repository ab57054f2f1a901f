//! Coefficientwise Chinese remaindering of polynomials modulo distinct primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::FieldPoly;
use super::int::IntPoly;
use crate::{Error, Result};

/// Running CRT reconstruction; coefficients kept in `[0, modulus)`.
#[derive(Clone, Debug)]
pub struct CrtAccumulator {
    modulus: BigInt,
    coeffs: Vec<BigInt>,
    degree: Option<usize>,
}

impl Default for CrtAccumulator {
    fn default() -> Self {
        CrtAccumulator {
            modulus: BigInt::one(),
            coeffs: Vec::new(),
            degree: None,
        }
    }
}

impl CrtAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    /// Folds in one residue. Its degree must match earlier residues.
    pub fn add(&mut self, residue: &FieldPoly) -> Result<()> {
        let field = residue.field();
        let p = field.modulus();
        let deg = residue.degree();
        if self.degree.is_some() && self.degree != deg {
            return Err(Error::CrtDegreeMismatch {
                minority: Vec::new(),
            });
        }
        let len = residue.coeffs().len();
        self.coeffs.resize(len, BigInt::zero());
        let m_mod_p = field.reduce_bigint(&self.modulus);
        let inv = field.inv(m_mod_p).ok_or(Error::CrtDegreeMismatch {
            minority: Vec::new(),
        })?;
        for (i, c) in self.coeffs.iter_mut().enumerate() {
            let a = field.reduce_bigint(c);
            let t = field.mul(field.sub(residue.coeff(i), a), inv);
            *c += &self.modulus * BigInt::from(t);
        }
        self.modulus *= BigInt::from(p);
        self.degree = deg;
        Ok(())
    }

    /// Current reconstruction in the symmetric range.
    pub fn symmetric(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone()).mod_symmetric(&self.modulus)
    }
}

/// Combines residues modulo distinct primes into the symmetric range of
/// their product. On a degree disagreement the error names the residues
/// whose degree differs from the most common one.
pub fn crt_combine(residues: &[FieldPoly]) -> Result<IntPoly> {
    let degrees: Vec<Option<usize>> = residues.iter().map(|r| r.degree()).collect();
    if let Some(&d0) = degrees.first() {
        if degrees.iter().any(|&d| d != d0) {
            let majority = most_common(&degrees);
            let minority = degrees
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != majority)
                .map(|(i, _)| i)
                .collect();
            return Err(Error::CrtDegreeMismatch { minority });
        }
    }
    let mut acc = CrtAccumulator::new();
    for r in residues {
        acc.add(r)?;
    }
    Ok(acc.symmetric())
}

fn most_common(degrees: &[Option<usize>]) -> Option<usize> {
    let mut best = (0usize, None);
    for d in degrees {
        let count = degrees.iter().filter(|e| *e == d).count();
        if count > best.0 || (count == best.0 && *d > best.1) {
            best = (count, *d);
        }
    }
    best.1
}

/// Integer `x` in the symmetric range with `x = a_i mod m_i`.
pub fn crt_scalar(residues: &[(u64, u64)]) -> BigInt {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for &(a, p) in residues {
        let pb = BigInt::from(p);
        let diff = (BigInt::from(a) - &x).mod_floor(&pb);
        let inv = BigInt::from(m.mod_floor(&pb))
            .modpow(&(&pb - 2u32), &pb);
        x += &m * ((diff * inv).mod_floor(&pb));
        m *= pb;
    }
    let half: BigInt = &m >> 1;
    if x > half {
        x - m
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::PrimeField;

    fn lin(p: u64, c: i64) -> FieldPoly {
        FieldPoly::from_i64(PrimeField::new(p).unwrap(), &[c, 1])
    }

    #[test]
    fn combines_linear_residues() {
        assert_eq!(crt_combine(&[lin(5, 1), lin(7, 1)]).unwrap(), IntPoly::from_i64(&[1, 1]));
        // 4 mod 5 and 5 mod 7 give 19, i.e. -16 mod 35
        assert_eq!(crt_combine(&[lin(5, 4), lin(7, 5)]).unwrap(), IntPoly::from_i64(&[-16, 1]));
        assert_eq!(crt_combine(&[lin(7, 6)]).unwrap(), IntPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn reports_minority_degrees() {
        let f = |p| PrimeField::new(p).unwrap();
        let quad = |p| FieldPoly::from_i64(f(p), &[1, 0, 1]);
        let err = crt_combine(&[quad(5), lin(7, 1), quad(11)]).unwrap_err();
        assert_eq!(err, Error::CrtDegreeMismatch { minority: vec![1] });
    }

    #[test]
    fn scalar_crt() {
        assert_eq!(crt_scalar(&[(4, 5), (5, 7)]), BigInt::from(-16));
        assert_eq!(crt_scalar(&[(2, 3)]), BigInt::from(-1));
    }

    #[test]
    fn accumulator_recovers_large_coefficients() {
        let target = IntPoly::from_i64(&[-123_456_789_012, 987_654_321, 1]);
        let mut acc = CrtAccumulator::new();
        for p in [1_000_003u64, 1_000_033, 1_000_037] {
            acc.add(&target.reduce(PrimeField::new(p).unwrap())).unwrap();
        }
        assert_eq!(acc.symmetric(), target);
    }
}
