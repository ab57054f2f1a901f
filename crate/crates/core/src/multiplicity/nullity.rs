use rand::Rng;

use crate::blackbox::{rank_blackbox, BlackBox, PolyOfMatrix, WiedemannConfig};
use crate::poly::FieldPoly;
use crate::{Error, Result};

/// `n - rank(P^j(A))`.
pub fn nullity<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    p: &FieldPoly,
    j: usize,
    cfg: &WiedemannConfig,
    rng: &mut R,
) -> usize {
    let op = PolyOfMatrix::new(a, p.clone(), j);
    a.dim() - rank_blackbox(&op, cfg, rng)
}

/// Multiplicity of the irreducible `p` in the characteristic polynomial,
/// given its multiplicity `e` in the minimal polynomial: the nullity of
/// `P^e(A)` is exactly `m deg P`.
pub fn nullity_multiplicity<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    p: &FieldPoly,
    e: usize,
    cfg: &WiedemannConfig,
    rng: &mut R,
) -> Result<usize> {
    let d = p.deg();
    let mut last = 0;
    for _ in 0..2 {
        let nu = nullity(a, p, e, cfg, rng);
        if nu % d == 0 && nu >= e * d {
            return Ok(nu / d);
        }
        last = nu;
    }
    Err(Error::InconsistentNullity(format!(
        "nullity {last} of ({})^{e}(A) is not a multiple of {d} at least {}",
        p.to_compact(),
        e * d
    )))
}

fn inconsistent(msg: String) -> Error {
    Error::InconsistentNullity(msg)
}

/// Block counts `n_1, n_2, ...` from consecutive nullities `nu_1, nu_2, ...`
/// of a factor of degree `d` and minimal multiplicity `e`.
///
/// `n_j` needs `nu_(j+1)`, except `n_e` which only needs `nu_e`. Returns as
/// many counts as the nullities determine. Every division must be exact and
/// every count nonnegative; anything else means a rank was mis-estimated.
pub fn nullities_to_occurrences(nu: &[usize], d: usize, e: usize) -> Result<Vec<usize>> {
    assert!(d >= 1 && e >= 1);
    let nu: Vec<i64> = nu.iter().map(|&v| v as i64).collect();
    let d = d as i64;
    let l = nu.len();
    if let Some(w) = nu.windows(2).take(e.saturating_sub(1)).position(|w| w[1] <= w[0]) {
        return Err(inconsistent(format!("nullities not increasing at j = {}", w + 2)));
    }
    if l > e && nu[e..].iter().any(|&v| v != nu[e - 1]) {
        return Err(inconsistent("nullities change past the minimal multiplicity".into()));
    }
    let mut out = Vec::new();
    // sum of k n_k over the counts found so far
    let mut weighted = 0i64;
    for j in 1..=e {
        let jj = j as i64;
        let count = if j == e && l >= e {
            let num = nu[e - 1] - d * weighted;
            if num % (jj * d) != 0 {
                return Err(inconsistent(format!("nu_{e} - d*sum(k n_k) = {num} not divisible by {}", jj * d)));
            }
            num / (jj * d)
        } else if l > j {
            let num = if j == 1 {
                2 * nu[0] - nu[1]
            } else {
                let head = nu[j - 2] - d * weighted;
                if head % (jj - 1) != 0 {
                    return Err(inconsistent(format!("nu_{} - d*sum(k n_k) = {head} not divisible by {}", j - 1, j - 1)));
                }
                head / (jj - 1) + nu[j - 1] - nu[j]
            };
            if num % d != 0 {
                return Err(inconsistent(format!("count numerator {num} for j = {j} not divisible by {d}")));
            }
            num / d
        } else {
            break;
        };
        if count < 0 || (j == e && count == 0) {
            return Err(inconsistent(format!("count {count} for j = {j}")));
        }
        out.push(count as usize);
        weighted += jj * count;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::{block_diag, build_block_jordan, build_companion, SparseMatrix};
    use crate::ff::PrimeField;
    use rand::SeedableRng;

    fn rng() -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(5)
    }

    #[test]
    fn examples_from_blocks() {
        let f = PrimeField::new(7).unwrap();
        let x1 = FieldPoly::from_i64(f, &[-1, 1]);
        let a = block_diag(&[build_block_jordan(&x1, 2).unwrap(), build_block_jordan(&x1, 1).unwrap()]);
        let cfg = WiedemannConfig::default();
        assert_eq!(nullity_multiplicity(&a, &x1, 2, &cfg, &mut rng()).unwrap(), 3);

        let f = PrimeField::new(101).unwrap();
        let d = SparseMatrix::diagonal(f, &[1, 1, 2]);
        let x2 = FieldPoly::from_i64(f, &[-2, 1]);
        assert_eq!(nullity_multiplicity(&d, &x2, 1, &cfg, &mut rng()).unwrap(), 1);
        let x1 = FieldPoly::from_i64(f, &[-1, 1]);
        assert_eq!(nullity_multiplicity(&d, &x1, 1, &cfg, &mut rng()).unwrap(), 2);
    }

    #[test]
    fn companion_of_irreducible() {
        let f = PrimeField::new(101).unwrap();
        let p = FieldPoly::from_i64(f, &[2, 0, 0, 0, 1]);
        if p.is_irreducible() {
            let c = build_companion(&p).unwrap();
            let cfg = WiedemannConfig::default();
            assert_eq!(nullity_multiplicity(&c, &p, 1, &cfg, &mut rng()).unwrap(), 1);
        }
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(nullities_to_occurrences(&[3, 4, 4], 1, 2).unwrap(), vec![2, 1]);
        assert_eq!(nullities_to_occurrences(&[2, 3, 3], 1, 2).unwrap(), vec![1, 1]);
        assert_eq!(nullities_to_occurrences(&[3, 3], 3, 1).unwrap(), vec![1]);
        assert_eq!(nullities_to_occurrences(&[3], 3, 1).unwrap(), vec![1]);
        // only the first count is determined by two nullities when e = 3
        assert_eq!(nullities_to_occurrences(&[3, 5], 1, 3).unwrap(), vec![1]);
        assert_eq!(nullities_to_occurrences(&[4], 2, 3).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn corollary_rejects_noise() {
        assert!(nullities_to_occurrences(&[3, 4, 5], 1, 2).is_err());
        assert!(nullities_to_occurrences(&[3, 5], 2, 2).is_err());
        assert!(nullities_to_occurrences(&[4, 4], 1, 2).is_err());
        // n_1 = 2*2 - 5 < 0
        assert!(nullities_to_occurrences(&[2, 5, 6], 1, 3).is_err());
    }

    #[test]
    fn second_difference_agrees() {
        // block census (n_1..n_4) = (2, 0, 1, 3), d = 2
        let counts = [2usize, 0, 1, 3];
        let d = 2;
        let nu: Vec<usize> = (1..=5)
            .map(|j| d * counts.iter().enumerate().map(|(k, &c)| (k + 1).min(j) * c).sum::<usize>())
            .collect();
        assert_eq!(nullities_to_occurrences(&nu, d, 4).unwrap(), counts.to_vec());
        for j in 1..4 {
            let prev = if j == 1 { 0 } else { nu[j - 2] };
            let second = (2 * nu[j - 1] - prev - nu[j]) / d;
            assert_eq!(second, counts[j - 1]);
        }
    }
}
