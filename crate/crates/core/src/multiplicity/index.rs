use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::blackbox::{det_blackbox, BlackBox, ShiftedOperator, WiedemannConfig};
use crate::ff::{DlogContext, PrimeField};
use crate::poly::FieldPoly;
use crate::{Error, Result};

use super::profile::FactorProfile;

fn fail(msg: impl Into<String>) -> Error {
    Error::IndexCalculusFail(msg.into())
}

/// Row echelon form over GF(p) grown one row at a time.
#[derive(Clone, Debug)]
pub struct IncrementalEchelon {
    field: PrimeField,
    width: usize,
    /// Reduced rows with a leading 1 at `pivot`.
    basis: Vec<(usize, Vec<u64>)>,
}

impl IncrementalEchelon {
    pub fn new(field: PrimeField, width: usize) -> Self {
        IncrementalEchelon {
            field,
            width,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Adds `row` if it is independent of the rows kept so far.
    pub fn push(&mut self, row: &[u64]) -> bool {
        assert_eq!(row.len(), self.width);
        let f = self.field;
        let mut r = row.to_vec();
        for (piv, b) in &self.basis {
            let c = r[*piv];
            if c != 0 {
                for (x, &y) in r.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let Some(piv) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(r[piv]).expect("nonzero pivot");
        r.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        for (_, b) in self.basis.iter_mut() {
            let c = b[piv];
            if c != 0 {
                for (x, &y) in b.iter_mut().zip(&r) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        self.basis.push((piv, r));
        true
    }
}

/// Inverse of a square matrix over GF(p), or `None` when singular.
pub fn invert_mod(field: PrimeField, m: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let k = m.len();
    let f = field;
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).find(|&i| a[i][col] != 0)?;
        a.swap(col, piv);
        let inv = f.inv(a[col][col])?;
        a[col].iter_mut().for_each(|x| *x = f.mul(*x, inv));
        for i in 0..k {
            if i != col && a[i][col] != 0 {
                let c = a[i][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[k..].to_vec()).collect())
}

/// The `k x k` log system of the unknown factors, with its inverse kept so
/// that many right-hand sides can be solved in `O(k^2)` each.
#[derive(Clone, Debug)]
pub struct IndexSystem {
    pub p: u64,
    /// Evaluation points of the kept rows.
    pub lambdas: Vec<u64>,
    pub rows: Vec<Vec<u64>>,
    /// Rows sampled (including dependent ones) until full rank.
    pub rows_tried: usize,
    inverse: Vec<Vec<u64>>,
}

impl IndexSystem {
    /// Samples points from `next_point` until the log rows of `unknowns`
    /// reach full rank. Points where any of `unknowns` or `guard` vanish are
    /// skipped. Fails after `n + 1` rows.
    pub fn build(
        ctx: &DlogContext,
        p: u64,
        unknowns: &[FieldPoly],
        guard: &[FieldPoly],
        n: usize,
        next_point: &mut dyn FnMut() -> Option<u64>,
    ) -> Result<IndexSystem> {
        let pf = PrimeField::new(p).map_err(|_| fail(format!("modulus {p} of the log system is not an odd prime")))?;
        let k = unknowns.len();
        let mut ech = IncrementalEchelon::new(pf, k);
        let mut lambdas = Vec::new();
        let mut rows = Vec::new();
        let mut tried = 0;
        let mut skipped = 0;
        let skip_cap = 64 * (n + 1) + ctx.field().modulus() as usize;
        while ech.rank() < k {
            if tried > n {
                return Err(fail(format!("log system rank {} < {k} after {tried} rows", ech.rank())));
            }
            let Some(lambda) = next_point() else {
                return Err(fail("ran out of evaluation points"));
            };
            if unknowns.iter().chain(guard).any(|g| g.eval(lambda) == 0) {
                skipped += 1;
                if skipped > skip_cap {
                    return Err(fail("no evaluation point avoids the factor roots"));
                }
                continue;
            }
            tried += 1;
            let row = log_row(ctx, p, unknowns, lambda)?;
            if ech.push(&row) {
                lambdas.push(lambda);
                rows.push(row);
            }
        }
        let inverse = invert_mod(pf, &rows).ok_or_else(|| fail("kept rows are singular"))?;
        Ok(IndexSystem {
            p,
            lambdas,
            rows,
            rows_tried: tried,
            inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `B^-1 b` over GF(p).
    pub fn solve(&self, b: &[u64]) -> Vec<u64> {
        let f = PrimeField::new(self.p).expect("checked at build");
        self.inverse.iter().map(|row| f.dot(row, b)).collect()
    }
}

/// `(log_g P_j(lambda) mod (q-1)) mod p` for each `P_j`.
pub fn log_row(ctx: &DlogContext, p: u64, polys: &[FieldPoly], lambda: u64) -> Result<Vec<u64>> {
    polys.iter().map(|g| Ok(ctx.dlog(g.eval(lambda))? % p)).collect()
}

/// `log_g det(lambda I - A) mod p` at each point, evaluated in parallel with
/// one seed per point drawn from `rng`.
pub fn log_determinants<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    ctx: &DlogContext,
    p: u64,
    lambdas: &[u64],
    cfg: &WiedemannConfig,
    rng: &mut R,
) -> Result<Vec<u64>> {
    let seeds: Vec<u64> = lambdas.iter().map(|_| rng.gen()).collect();
    lambdas
        .par_iter()
        .zip(seeds)
        .map(|(&lambda, seed)| {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            let det = det_blackbox(&ShiftedOperator::new(a, lambda), cfg, &mut r)?;
            if det == 0 {
                return Err(fail(format!("det({lambda} I - A) = 0 where no known factor vanishes")));
            }
            Ok(ctx.dlog(det)? % p)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexOutcome {
    /// Multiplicities of the unknown factors, in the order given.
    pub multiplicities: Vec<usize>,
    pub rows_tried: usize,
    pub lambdas: Vec<u64>,
}

/// Multiplicities of the factors `profiles[j]` for `j` in `unknown`, given
/// the product `known` of the other factors at their multiplicities.
///
/// The field of `a` must be GF(q) with `p | q - 1` and `p > n`.
#[allow(clippy::too_many_arguments)]
pub fn index_calculus<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    profiles: &[FactorProfile],
    unknown: &[usize],
    known: &FieldPoly,
    ctx: &DlogContext,
    p: u64,
    cfg: &WiedemannConfig,
    rng: &mut R,
) -> Result<IndexOutcome> {
    let q = a.field().modulus();
    let mut seq = ChaCha8Rng::seed_from_u64(rng.gen());
    let mut points = move || Some(seq.gen_range(0..q));
    index_calculus_at(a, profiles, unknown, known, ctx, p, cfg, &mut points, rng)
}

/// [`index_calculus`] with the evaluation points supplied by the caller.
#[allow(clippy::too_many_arguments)]
pub fn index_calculus_at<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    profiles: &[FactorProfile],
    unknown: &[usize],
    known: &FieldPoly,
    ctx: &DlogContext,
    p: u64,
    cfg: &WiedemannConfig,
    next_point: &mut dyn FnMut() -> Option<u64>,
    rng: &mut R,
) -> Result<IndexOutcome> {
    let n = a.dim();
    if p <= n as u64 {
        return Err(fail(format!("log modulus {p} must exceed the dimension {n}")));
    }
    if (ctx.field().modulus() - 1) % p != 0 {
        return Err(fail(format!("{p} does not divide q - 1")));
    }
    let polys: Vec<FieldPoly> = unknown.iter().map(|&j| profiles[j].poly.clone()).collect();
    let sys = IndexSystem::build(ctx, p, &polys, std::slice::from_ref(known), n, next_point)?;
    let dets = log_determinants(a, ctx, p, &sys.lambdas, cfg, rng)?;
    let b: Vec<u64> = dets
        .iter()
        .zip(&sys.lambdas)
        .map(|(&ld, &lambda)| {
            let lq = ctx.dlog(known.eval(lambda))? % p;
            Ok((ld + p - lq) % p)
        })
        .collect::<Result<_>>()?;
    let x = sys.solve(&b);
    let degree: usize = x.iter().zip(&polys).map(|(&m, g)| m as usize * g.deg()).sum::<usize>() + known.deg();
    if degree != n {
        return Err(fail(format!("solution has total degree {degree}, expected {n}")));
    }
    if let Some(j) = unknown.iter().zip(&x).position(|(&j, &m)| (m as usize) < profiles[j].min_mult) {
        return Err(fail(format!("multiplicity {} below the minimal polynomial's {}", x[j], profiles[unknown[j]].min_mult)));
    }
    Ok(IndexOutcome {
        multiplicities: x.into_iter().map(|m| m as usize).collect(),
        rows_tried: sys.rows_tried,
        lambdas: sys.lambdas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::{build_companion, SparseMatrix};
    use crate::ff::find_index_calculus_field;

    fn lin(f: PrimeField, a: i64) -> FieldPoly {
        FieldPoly::from_i64(f, &[-a, 1])
    }

    #[test]
    fn small_worked_system() {
        let f = PrimeField::new(11).unwrap();
        let a = SparseMatrix::diagonal(f, &[1, 1, 2]);
        let ctx = DlogContext::with_generator(f, 2);
        let profiles = vec![FactorProfile::new(lin(f, 1), 1), FactorProfile::new(lin(f, 2), 1)];
        let polys = vec![lin(f, 1), lin(f, 2)];
        assert_eq!(log_row(&ctx, 5, &polys, 3).unwrap(), vec![1, 0]);
        assert_eq!(log_row(&ctx, 5, &polys, 4).unwrap(), vec![3, 1]);
        let mut pts = [4u64, 3].into_iter().rev();
        let mut next = move || pts.next();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let out = index_calculus_at(
            &a,
            &profiles,
            &[0, 1],
            &FieldPoly::one(f),
            &ctx,
            5,
            &WiedemannConfig::default(),
            &mut next,
            &mut rng,
        )
        .unwrap();
        assert_eq!(out.multiplicities, vec![2, 1]);
        assert_eq!(out.lambdas, vec![3, 4]);
        assert_eq!(out.rows_tried, 2);
    }

    #[test]
    fn single_unknown_with_known_rest() {
        let f = PrimeField::new(11).unwrap();
        let a = SparseMatrix::diagonal(f, &[1, 1, 2]);
        let ctx = DlogContext::new(f);
        let profiles = vec![FactorProfile::new(lin(f, 1), 1), FactorProfile::new(lin(f, 2), 1)];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let out = index_calculus(&a, &profiles, &[0], &lin(f, 2), &ctx, 5, &Default::default(), &mut rng).unwrap();
        assert_eq!(out.multiplicities, vec![2]);
    }

    #[test]
    fn companion_recovers_minpoly_exponents() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (q, p) = find_index_calculus_field(12, &mut rng).unwrap();
        let f = PrimeField::new(q).unwrap();
        let poly = lin(f, 3).pow(3).mul(&FieldPoly::from_i64(f, &[5, 1, 1]).pow(2)).mul(&lin(f, 7)).mul(&lin(f, 8));
        let a = build_companion(&poly).unwrap();
        let profiles = FactorProfile::from_minpoly(&poly, &mut rng);
        let idx: Vec<usize> = (0..profiles.len()).collect();
        let ctx = DlogContext::new(f);
        let out = index_calculus(&a, &profiles, &idx, &FieldPoly::one(f), &ctx, p, &Default::default(), &mut rng)
            .unwrap();
        let expect: Vec<usize> = profiles.iter().map(|p| p.min_mult).collect();
        assert_eq!(out.multiplicities, expect);
    }

    #[test]
    fn echelon_tracks_rank() {
        let f = PrimeField::new(7).unwrap();
        let mut e = IncrementalEchelon::new(f, 3);
        assert!(e.push(&[1, 2, 3]));
        assert!(!e.push(&[2, 4, 6]));
        assert!(e.push(&[0, 1, 1]));
        assert!(!e.push(&[1, 3, 4]));
        assert!(e.push(&[0, 0, 5]));
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn inverse_round_trip() {
        let f = PrimeField::new(13).unwrap();
        let m = vec![vec![1, 2, 0], vec![3, 1, 4], vec![0, 5, 1]];
        let inv = invert_mod(f, &m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v = (0..3).fold(0, |acc, k| f.add(acc, f.mul(m[i][k], inv[k][j])));
                assert_eq!(v, u64::from(i == j));
            }
        }
        assert!(invert_mod(f, &[vec![1, 2], vec![2, 4]]).is_none());
    }

    #[test]
    fn rejects_small_log_modulus() {
        let f = PrimeField::new(11).unwrap();
        let a = SparseMatrix::diagonal(f, &[1, 1, 2, 3, 4, 5]);
        let ctx = DlogContext::new(f);
        let profiles = vec![FactorProfile::new(lin(f, 1), 1)];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(index_calculus(&a, &profiles, &[0], &FieldPoly::one(f), &ctx, 5, &Default::default(), &mut rng).is_err());
    }
}
