use rand::Rng;

use crate::ff::PrimeField;
use crate::poly::FieldPoly;
use crate::{Error, Result};

use super::{random_vector, BlackBox, DiagonalScaled, SymmetrizedOperator};

/// Knobs for the Wiedemann kernels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiedemannConfig {
    /// Independent projections combined by lcm before the first certification.
    pub confidence_rounds: usize,
    /// Stop a sequence once its generator has been stable for
    /// `2 * degree + 10` further terms.
    pub early_termination: bool,
    /// Total projections allowed before giving up certification.
    pub max_rounds: usize,
}

impl Default for WiedemannConfig {
    fn default() -> Self {
        WiedemannConfig {
            confidence_rounds: 2,
            early_termination: false,
            max_rounds: 24,
        }
    }
}

fn log2(p: u64) -> f64 {
    (p as f64).log2()
}

/// Random vectors used to certify a minimal polynomial: enough that a proper
/// divisor slips through with probability below 2^-16.
pub fn certify_vectors(field: PrimeField) -> usize {
    (16.0 / log2(field.modulus())).ceil().max(1.0) as usize
}

/// Preconditioner repetitions for a rank estimate.
pub fn rank_repetitions(field: PrimeField, n: usize) -> usize {
    let p = field.modulus() as f64;
    let n = n as f64;
    if p > 2.0 * n * n {
        2
    } else {
        ((48.0 / log2(field.modulus())).ceil() as usize).max(3)
    }
}

fn det_retries(field: PrimeField, n: usize) -> usize {
    if field.modulus() as f64 > (n * n) as f64 {
        4
    } else {
        ((64.0 / log2(field.modulus())).ceil() as usize).max(4)
    }
}

/// Minimal generator of a linearly recurrent sequence, monic of degree L
/// where L is the linear complexity.
pub fn berlekamp_massey(field: PrimeField, s: &[u64]) -> FieldPoly {
    berlekamp_massey_inner(field, s, None).0
}

/// Returns the generator and the number of terms consumed.
fn berlekamp_massey_inner(field: PrimeField, s: &[u64], stop_after: Option<usize>) -> (FieldPoly, usize) {
    let f = field;
    let mut c: Vec<u64> = vec![1];
    let mut b: Vec<u64> = vec![1];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = 1u64;
    let mut last_change = 0usize;
    let mut used = s.len();
    for i in 0..s.len() {
        let mut d = s[i];
        for j in 1..=l.min(c.len() - 1) {
            d = f.add(d, f.mul(c[j], s[i - j]));
        }
        if d == 0 {
            m += 1;
        } else {
            let coef = f.div(d, bd).expect("bd nonzero");
            let old = c.clone();
            if c.len() < b.len() + m {
                c.resize(b.len() + m, 0);
            }
            for (k, &bk) in b.iter().enumerate() {
                c[k + m] = f.sub(c[k + m], f.mul(coef, bk));
            }
            if 2 * l <= i {
                l = i + 1 - l;
                b = old;
                bd = d;
                m = 1;
            } else {
                m += 1;
            }
            last_change = i;
        }
        if let Some(extra) = stop_after {
            if i >= last_change + 2 * l + extra {
                used = i + 1;
                break;
            }
        }
    }
    let coeffs: Vec<u64> = (0..=l).map(|k| *c.get(l - k).unwrap_or(&0)).collect();
    (FieldPoly::new(field, coeffs), used)
}

/// `u . A^i v` for `i < len`.
pub fn krylov_sequence(a: &dyn BlackBox, u: &[u64], v: &[u64], len: usize) -> Vec<u64> {
    let f = a.field();
    let mut cur = v.to_vec();
    let mut next = vec![0; a.dim()];
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        out.push(f.dot(u, &cur));
        if i + 1 < len {
            a.apply(&cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
    }
    out
}

/// Generator of one random projection, optionally stopping early.
fn projection_generator<R: Rng + ?Sized>(a: &dyn BlackBox, cfg: &WiedemannConfig, rng: &mut R) -> FieldPoly {
    let f = a.field();
    let n = a.dim();
    let u = random_vector(f, n, rng);
    let v = random_vector(f, n, rng);
    if !cfg.early_termination {
        return berlekamp_massey(f, &krylov_sequence(a, &u, &v, 2 * n));
    }
    // grow the sequence in chunks and stop once the generator is stable
    let mut seq = Vec::with_capacity(2 * n);
    let mut cur = v;
    let mut next = vec![0; n];
    while seq.len() < 2 * n {
        seq.push(f.dot(&u, &cur));
        a.apply(&cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
        if seq.len() % 8 == 0 || seq.len() == 2 * n {
            let (g, used) = berlekamp_massey_inner(f, &seq, Some(10));
            if used < seq.len() || seq.len() == 2 * n {
                return g;
            }
        }
    }
    berlekamp_massey(f, &seq)
}

/// True when `P(A) w = 0` for `count` random `w`.
pub fn annihilates<R: Rng + ?Sized>(a: &dyn BlackBox, p: &FieldPoly, count: usize, rng: &mut R) -> bool {
    let f = a.field();
    let n = a.dim();
    (0..count).all(|_| {
        let w = random_vector(f, n, rng);
        poly_apply(a, p, &w).iter().all(|&x| x == 0)
    })
}

/// `P(A) w` by Horner's rule.
pub fn poly_apply(a: &dyn BlackBox, p: &FieldPoly, w: &[u64]) -> Vec<u64> {
    let f = a.field();
    let c = p.coeffs();
    let Some(&top) = c.last() else {
        return vec![0; a.dim()];
    };
    let mut acc: Vec<u64> = w.iter().map(|&x| f.mul(top, x)).collect();
    let mut tmp = vec![0; a.dim()];
    for &ci in c.iter().rev().skip(1) {
        a.apply(&acc, &mut tmp);
        for ((o, &t), &x) in acc.iter_mut().zip(&tmp).zip(w) {
            *o = f.add(t, f.mul(ci, x));
        }
    }
    acc
}

/// lcm of projection generators, with whether it was certified.
fn minpoly_attempt<R: Rng + ?Sized>(a: &dyn BlackBox, cfg: &WiedemannConfig, rng: &mut R) -> (FieldPoly, bool, usize) {
    let f = a.field();
    let checks = certify_vectors(f);
    let mut acc = FieldPoly::one(f);
    let mut rounds = 0;
    let first = cfg.confidence_rounds.max(1);
    while rounds < cfg.max_rounds.max(first) {
        let batch = if rounds == 0 { first } else { 1 };
        for _ in 0..batch {
            acc = acc.lcm(&projection_generator(a, cfg, rng));
            rounds += 1;
        }
        if annihilates(a, &acc, checks, rng) {
            return (acc, true, rounds);
        }
    }
    (acc, false, rounds)
}

/// Minimal polynomial of a black box, certified by `P(A) w = 0` on random
/// vectors.
pub fn wiedemann_minpoly<R: Rng + ?Sized>(a: &dyn BlackBox, cfg: &WiedemannConfig, rng: &mut R) -> Result<FieldPoly> {
    let (p, ok, rounds) = minpoly_attempt(a, cfg, rng);
    if ok {
        Ok(p)
    } else {
        Err(Error::MinpolyNotCertified { rounds })
    }
}

/// Rank via the minimal polynomial of `D1 A^T D2 A D1`. Each estimate can
/// only fall short of the true rank, so the maximum over repetitions is kept.
pub fn rank_blackbox<R: Rng + ?Sized>(a: &dyn BlackBox, cfg: &WiedemannConfig, rng: &mut R) -> usize {
    let f = a.field();
    let n = a.dim();
    let mut best = 0;
    for _ in 0..rank_repetitions(f, n) {
        let d1: Vec<u64> = (0..n).map(|_| f.random_nonzero(rng)).collect();
        let d2: Vec<u64> = (0..n).map(|_| f.random_nonzero(rng)).collect();
        let s = SymmetrizedOperator::new(a, d1, d2);
        let (m, _, _) = minpoly_attempt(&s, cfg, rng);
        let est = if m.coeff(0) == 0 { m.deg() - 1 } else { m.deg() };
        best = best.max(est);
        if best == n {
            break;
        }
    }
    best
}

/// Determinant via the minimal polynomial of `D A` for a random nonsingular
/// diagonal D.
pub fn det_blackbox<R: Rng + ?Sized>(a: &dyn BlackBox, cfg: &WiedemannConfig, rng: &mut R) -> Result<u64> {
    let f = a.field();
    let n = a.dim();
    let retries = det_retries(f, n);
    for _ in 0..retries {
        let d: Vec<u64> = (0..n).map(|_| f.random_nonzero(rng)).collect();
        let det_d = d.iter().fold(1, |acc, &x| f.mul(acc, x));
        let b = DiagonalScaled::new(a, Some(d), None);
        let (m, certified, _) = minpoly_attempt(&b, cfg, rng);
        if m.coeff(0) == 0 {
            return Ok(0);
        }
        if certified && m.deg() == n {
            let c0 = if n % 2 == 0 { m.coeff(0) } else { f.neg(m.coeff(0)) };
            return f.div(c0, det_d);
        }
    }
    Err(Error::DetNotCertified { retries })
}

/// `sum_i e_i^T A e_i` with n applies.
pub fn trace_generic<B: BlackBox + ?Sized>(a: &B) -> u64 {
    let f = a.field();
    let n = a.dim();
    let mut e = vec![0; n];
    let mut y = vec![0; n];
    let mut t = 0;
    for i in 0..n {
        e[i] = 1;
        a.apply(&e, &mut y);
        t = f.add(t, y[i]);
        e[i] = 0;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::{block_diag, build_block_jordan, build_companion, LowRankPerturbation, PolyOfMatrix, ShiftedOperator, SparseMatrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn bm_recovers_fibonacci() {
        let f = gf(101);
        let mut s = vec![0u64, 1];
        for i in 2..12 {
            s.push(f.add(s[i - 1], s[i - 2]));
        }
        assert_eq!(berlekamp_massey(f, &s), FieldPoly::from_i64(f, &[-1, -1, 1]));
        assert_eq!(berlekamp_massey(f, &[0, 0, 0, 0]), FieldPoly::one(f));
        assert_eq!(berlekamp_massey(f, &[5, 0, 0, 0]), FieldPoly::x(f));
    }

    #[test]
    fn minpoly_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cfg = WiedemannConfig::default();
        let f = gf(10007);
        let p = FieldPoly::from_i64(f, &[7, -3, 0, 5, 1]);
        let c = build_companion(&p).unwrap();
        assert_eq!(wiedemann_minpoly(&c, &cfg, &mut rng).unwrap(), p);
        let i = SparseMatrix::identity(f, 5);
        assert_eq!(wiedemann_minpoly(&i, &cfg, &mut rng).unwrap(), FieldPoly::from_i64(f, &[-1, 1]));
        let f11 = gf(11);
        let d = SparseMatrix::diagonal(f11, &[1, 1, 2]);
        assert_eq!(wiedemann_minpoly(&d, &cfg, &mut rng).unwrap(), FieldPoly::from_i64(f11, &[2, -3, 1]));
        let z = SparseMatrix::zero(f11, 4);
        assert_eq!(wiedemann_minpoly(&z, &cfg, &mut rng).unwrap(), FieldPoly::x(f11));
    }

    #[test]
    fn early_termination_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = gf(65537);
        let p = FieldPoly::from_i64(f, &[1, 2, 1]);
        let j = block_diag(&[build_block_jordan(&p, 3).unwrap(), SparseMatrix::identity(f, 30)]);
        let cfg = WiedemannConfig {
            early_termination: true,
            ..Default::default()
        };
        let m = wiedemann_minpoly(&j, &cfg, &mut rng).unwrap();
        assert_eq!(m, p.pow(3).mul(&FieldPoly::from_i64(f, &[-1, 1])));
    }

    #[test]
    fn block_jordan_minpoly() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = gf(101);
        let p = (1..101)
            .map(|c| FieldPoly::new(f, vec![c, 1, 0, 1]))
            .find(|p| p.is_irreducible())
            .unwrap();
        let j = build_block_jordan(&p, 3).unwrap();
        let cfg = WiedemannConfig::default();
        assert_eq!(wiedemann_minpoly(&j, &cfg, &mut rng).unwrap(), p.pow(3));
    }

    #[test]
    fn rank_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let cfg = WiedemannConfig::default();
        let f = gf(10007);
        for e in 1..6 {
            let j = build_block_jordan(&FieldPoly::x(f), e).unwrap();
            assert_eq!(rank_blackbox(&j, &cfg, &mut rng), e - 1);
        }
        assert_eq!(rank_blackbox(&SparseMatrix::zero(f, 5), &cfg, &mut rng), 0);
        // J2 + J2: a two-sided diagonal scaling would stay nilpotent of index 2
        let jj = block_diag(&[
            build_block_jordan(&FieldPoly::x(f), 2).unwrap(),
            build_block_jordan(&FieldPoly::x(f), 2).unwrap(),
        ]);
        assert_eq!(rank_blackbox(&jj, &cfg, &mut rng), 2);
        // U V with U 30x17, V 17x30
        let z = SparseMatrix::zero(f, 30);
        let u: Vec<Vec<u64>> = (0..17).map(|_| random_vector(f, 30, &mut rng)).collect();
        let v: Vec<Vec<u64>> = (0..17).map(|_| random_vector(f, 30, &mut rng)).collect();
        let uv = LowRankPerturbation::new(&z, u, v);
        assert_eq!(rank_blackbox(&uv, &cfg, &mut rng), 17);
    }

    #[test]
    fn det_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cfg = WiedemannConfig::default();
        let f7 = gf(7);
        let a = SparseMatrix::diagonal(f7, &[1, 2]);
        assert_eq!(det_blackbox(&ShiftedOperator::new(&a, 3), &cfg, &mut rng).unwrap(), 2);
        let s = SparseMatrix::from_triplets(f7, 3, [(0, 0, 1), (1, 1, 1)]).unwrap();
        assert_eq!(det_blackbox(&s, &cfg, &mut rng).unwrap(), 0);
        let f = gf(101);
        let d = SparseMatrix::diagonal(f, &[3, 3, 5, 7, 7, 7]);
        for lambda in 0..101u64 {
            let expect = [3u64, 3, 5, 7, 7, 7]
                .iter()
                .fold(1, |acc, &x| f.mul(acc, f.sub(lambda, x)));
            assert_eq!(det_blackbox(&ShiftedOperator::new(&d, lambda), &cfg, &mut rng).unwrap(), expect);
        }
    }

    #[test]
    fn nullity_law_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let cfg = WiedemannConfig::default();
        let f = gf(10007);
        let p = FieldPoly::from_i64(f, &[1, 0, 1]);
        assert!(p.is_irreducible());
        for e in 1..=3 {
            let j = build_block_jordan(&p, e).unwrap();
            for k in 1..=3 {
                let op = PolyOfMatrix::new(&j, p.clone(), k);
                let r = rank_blackbox(&op, &cfg, &mut rng);
                assert_eq!(2 * e - r, 2 * k.min(e));
            }
        }
    }
}
