use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Bits needed for the coefficients of the integer minimal polynomial:
/// `ceil((n/2) (log2 n + 2 log2 ||A|| + 0.212))`.
pub fn minpoly_coeff_bound(n: usize, norm: &BigInt) -> u64 {
    let log_norm = if norm.is_zero() { 0.0 } else { bigint_log2(norm) };
    let bits = (n as f64 / 2.0) * ((n as f64).log2() + 2.0 * log_norm + 0.212);
    bits.ceil().max(1.0) as u64
}

fn bigint_log2(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 52 {
        return (u64::try_from(x).expect("fits") as f64).log2();
    }
    let shift = bits - 52;
    let top: BigInt = x >> shift;
    (u64::try_from(&top).expect("fits") as f64).log2() + shift as f64
}

/// `ceil((1 + sqrt(n) ||A||)^n)`, computed exactly: with
/// `(1 + a sqrt(n))^n = X + Y sqrt(n)` this is `X + ceil(sqrt(n Y^2))`.
pub fn charpoly_coeff_bound(n: usize, norm: &BigInt) -> BigInt {
    let nb = BigInt::from(n);
    let mut x = BigInt::zero();
    let mut y = BigInt::zero();
    let mut binom = BigInt::one();
    // term i: binom(n,i) a^i n^(i/2)
    let mut a_pow = BigInt::one();
    let mut n_pow = BigInt::one();
    for i in 0..=n {
        let t = &binom * &a_pow * &n_pow;
        if i % 2 == 0 {
            x += t;
        } else {
            y += t;
            n_pow *= &nb;
        }
        a_pow *= norm;
        binom = binom * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    let rad = &y * &y * &nb;
    let mut s = rad.sqrt();
    if &s * &s < rad {
        s += 1;
    }
    x + s
}
