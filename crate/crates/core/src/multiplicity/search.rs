use rand::seq::SliceRandom;
use rand::Rng;

use crate::blackbox::{det_blackbox, BlackBox, ShiftedOperator, WiedemannConfig};
use crate::{Error, Result};

use super::profile::{trace_sum, FactorProfile};

/// Default bound on surviving candidates.
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub multiplicities: Vec<usize>,
    /// Candidates left after the degree and trace tests.
    pub candidates: usize,
    pub det_evaluations: usize,
    pub lambdas: Vec<u64>,
}

/// Possible multiplicities of each factor given partially solved block
/// counts (`counts[i][j-1]` is the number of `J_{P_i^j}` blocks, if known).
///
/// A factor with unknown slots `U` can reach `known + sum_{j in U} j c_j`
/// for any `c_j >= 0`, with at least one top block when `e` is in `U`.
pub fn candidate_domains(profiles: &[FactorProfile], counts: &[Vec<Option<usize>>], n: usize) -> Vec<Vec<usize>> {
    assert_eq!(profiles.len(), counts.len());
    let fixed: usize = profiles
        .iter()
        .zip(counts)
        .map(|(p, c)| {
            let base: usize = c.iter().enumerate().filter_map(|(j, v)| v.map(|v| (j + 1) * v)).sum();
            let top = if c[p.min_mult - 1].is_none() { p.min_mult } else { 0 };
            p.degree * (base + top)
        })
        .sum();
    let slack = n.saturating_sub(fixed);
    profiles
        .iter()
        .zip(counts)
        .map(|(p, c)| {
            let base: usize = c.iter().enumerate().filter_map(|(j, v)| v.map(|v| (j + 1) * v)).sum();
            let top_unknown = c[p.min_mult - 1].is_none();
            let limit = slack / p.degree;
            let mut reach = vec![false; limit + 1];
            reach[0] = true;
            for (j, v) in c.iter().enumerate() {
                if v.is_none() {
                    let step = j + 1;
                    for x in step..=limit {
                        if reach[x - step] {
                            reach[x] = true;
                        }
                    }
                }
            }
            let top = if top_unknown { p.min_mult } else { 0 };
            reach
                .iter()
                .enumerate()
                .filter(|(_, &r)| r)
                .map(|(x, _)| base + top + x)
                .collect()
        })
        .collect()
}

/// All multiplicity vectors drawn from `domains` meeting the degree
/// equation, and the trace test when `trace` is given. Factors are branched
/// on by decreasing degree with min/max bounds on the remaining degree.
pub fn enumerate_candidates(
    profiles: &[FactorProfile],
    domains: &[Vec<usize>],
    n: usize,
    trace: Option<u64>,
    cap: usize,
) -> Result<Vec<Vec<usize>>> {
    let k = profiles.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(profiles[i].degree), i));
    if domains.iter().any(|d| d.is_empty()) {
        return Ok(Vec::new());
    }
    // suffix bounds on the degree the remaining factors can take
    let mut min_rest = vec![0; k + 1];
    let mut max_rest = vec![0; k + 1];
    for pos in (0..k).rev() {
        let i = order[pos];
        min_rest[pos] = min_rest[pos + 1] + profiles[i].degree * domains[i][0];
        max_rest[pos] = max_rest[pos + 1] + profiles[i].degree * domains[i].last().unwrap();
    }
    let field = profiles.first().map(|p| p.poly.field());
    let mut out = Vec::new();
    let mut cur = vec![0; k];
    let mut visits = 0usize;
    let node_cap = cap.saturating_mul(64).max(1 << 16);
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, 0, n)];
    // iterative DFS: (position, next domain index, remaining degree)
    while let Some((pos, idx, rem)) = stack.pop() {
        if pos == k {
            if rem == 0 {
                let ok = match (trace, field) {
                    (Some(t), Some(f)) => f.add(t, trace_sum(f, profiles, &cur)) == 0,
                    _ => true,
                };
                if ok {
                    out.push(cur.clone());
                    if out.len() > cap {
                        return Err(Error::SearchTooLarge { cap });
                    }
                }
            }
            continue;
        }
        visits += 1;
        if visits > node_cap {
            return Err(Error::SearchTooLarge { cap });
        }
        let i = order[pos];
        let d = profiles[i].degree;
        let dom = &domains[i];
        if idx >= dom.len() {
            continue;
        }
        let m = dom[idx];
        if d * m > rem {
            continue;
        }
        // siblings come later; values are increasing so larger ones follow
        stack.push((pos, idx + 1, rem));
        let left = rem - d * m;
        if left >= min_rest[pos + 1] && left <= max_rest[pos + 1] {
            cur[i] = m;
            stack.push((pos + 1, 0, left));
        }
    }
    Ok(out)
}

/// Evaluation points for the determinant tests: a random permutation of the
/// field when it is small, independent draws otherwise.
struct LambdaSource {
    pool: Option<Vec<u64>>,
}

impl LambdaSource {
    fn new<R: Rng + ?Sized>(q: u64, n: usize, rng: &mut R) -> Self {
        let pool = if q <= 4 * (n as u64 + 1) + 64 {
            let mut v: Vec<u64> = (0..q).collect();
            v.shuffle(rng);
            Some(v)
        } else {
            None
        };
        LambdaSource { pool }
    }

    fn next<R: Rng + ?Sized>(&mut self, q: u64, rng: &mut R) -> Option<u64> {
        match &mut self.pool {
            Some(v) => v.pop(),
            None => Some(rng.gen_range(0..q)),
        }
    }
}

/// Multiplicities from degree and trace constraints, with the remaining
/// candidates separated by `det(lambda I - A)` at random points.
pub fn combinatorial_search<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    profiles: &[FactorProfile],
    counts: &[Vec<Option<usize>>],
    cap: usize,
    cfg: &WiedemannConfig,
    rng: &mut R,
) -> Result<SearchOutcome> {
    let n = a.dim();
    let domains = candidate_domains(profiles, counts, n);
    let cands = enumerate_candidates(profiles, &domains, n, Some(a.trace()), cap)?;
    discriminate(a, profiles, cands, cfg, rng)
}

/// Keeps the candidates whose product matches the determinant at fresh
/// points until one is left.
pub fn discriminate<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    profiles: &[FactorProfile],
    mut cands: Vec<Vec<usize>>,
    cfg: &WiedemannConfig,
    rng: &mut R,
) -> Result<SearchOutcome> {
    let n = a.dim();
    let f = a.field();
    let q = f.modulus();
    let candidates = cands.len();
    let max_rounds = 64.max(n + 1);
    let mut source = LambdaSource::new(q, n, rng);
    let mut lambdas = Vec::new();
    while cands.len() > 1 {
        let Some(lambda) = source.next(q, rng).filter(|_| lambdas.len() < max_rounds) else {
            return Err(Error::Ambiguous { rounds: lambdas.len() });
        };
        lambdas.push(lambda);
        let delta = det_blackbox(&ShiftedOperator::new(a, lambda), cfg, rng)?;
        let values: Vec<u64> = profiles.iter().map(|p| p.poly.eval(lambda)).collect();
        cands.retain(|m| {
            let v = values
                .iter()
                .zip(m)
                .fold(1, |acc, (&v, &e)| f.mul(acc, f.pow(v, e as u64)));
            v == delta
        });
    }
    let multiplicities = cands.pop().ok_or(Error::NoCandidate)?;
    Ok(SearchOutcome {
        multiplicities,
        candidates,
        det_evaluations: lambdas.len(),
        lambdas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::{block_diag, build_block_jordan, build_companion, SparseMatrix};
    use crate::ff::PrimeField;
    use crate::poly::FieldPoly;
    use rand::SeedableRng;

    fn rng() -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(11)
    }

    fn lin(f: PrimeField, a: i64) -> FieldPoly {
        FieldPoly::from_i64(f, &[-a, 1])
    }

    #[test]
    fn single_factor_degree_only() {
        // n = 3, X - 1 with e = 2: n_1 + 2 n_2 = 3 with n_2 >= 1
        let f = PrimeField::new(101).unwrap();
        let a = block_diag(&[build_block_jordan(&lin(f, 1), 2).unwrap(), SparseMatrix::identity(f, 1)]);
        let profiles = vec![FactorProfile::new(lin(f, 1), 2)];
        let out = combinatorial_search(&a, &profiles, &[vec![None, None]], DEFAULT_CAP, &Default::default(), &mut rng())
            .unwrap();
        assert_eq!(out.multiplicities, vec![3]);
        assert_eq!(out.candidates, 1);
        assert_eq!(out.det_evaluations, 0);
    }

    #[test]
    fn linear_constraints_decide() {
        let f = PrimeField::new(11).unwrap();
        let a = SparseMatrix::diagonal(f, &[1, 1, 2]);
        let profiles = vec![FactorProfile::new(lin(f, 1), 1), FactorProfile::new(lin(f, 2), 1)];
        let out =
            combinatorial_search(&a, &profiles, &[vec![None], vec![None]], DEFAULT_CAP, &Default::default(), &mut rng())
                .unwrap();
        assert_eq!(out.multiplicities, vec![2, 1]);
        assert_eq!(out.det_evaluations, 0);
    }

    #[test]
    fn companion_needs_no_search() {
        let f = PrimeField::new(101).unwrap();
        let p = lin(f, 3).mul(&FieldPoly::from_i64(f, &[2, 0, 1]));
        let a = build_companion(&p).unwrap();
        let profiles = FactorProfile::from_minpoly(&p, &mut rng());
        let counts: Vec<_> = profiles.iter().map(|p| vec![None; p.min_mult]).collect();
        let out = combinatorial_search(&a, &profiles, &counts, DEFAULT_CAP, &Default::default(), &mut rng()).unwrap();
        assert_eq!(out.multiplicities, vec![1, 1]);
    }

    #[test]
    fn determinant_breaks_ties() {
        // X-1, X-2, X-4 over GF(101) with mults (3, 1, 2): degree 6, trace 13;
        // (2, 3, 1) has the same degree and trace
        let f = PrimeField::new(101).unwrap();
        let a = SparseMatrix::diagonal(f, &[1, 1, 1, 2, 4, 4]);
        let profiles: Vec<_> = [1, 2, 4].iter().map(|&r| FactorProfile::new(lin(f, r), 1)).collect();
        let counts = vec![vec![None]; 3];
        let out = combinatorial_search(&a, &profiles, &counts, DEFAULT_CAP, &Default::default(), &mut rng()).unwrap();
        assert_eq!(out.multiplicities, vec![3, 1, 2]);
        assert!(out.candidates >= 2);
        assert!(out.det_evaluations >= 1);
    }

    #[test]
    fn domains_respect_known_counts() {
        let f = PrimeField::new(101).unwrap();
        let profiles = vec![FactorProfile::new(lin(f, 1), 3), FactorProfile::new(FieldPoly::from_i64(f, &[1, 0, 1]), 1)];
        // n_1 = 2 known, n_2 and n_3 free with n_3 >= 1
        let doms = candidate_domains(&profiles, &[vec![Some(2), None, None], vec![None]], 12);
        // fixed degree 2 + 3 + 2 = 7, slack 5: extra values 0, 2, 3, 4, 5
        assert_eq!(doms[0], vec![5, 7, 8, 9, 10]);
        assert_eq!(doms[1], vec![1, 2, 3]);
    }

    #[test]
    fn cap_is_enforced() {
        let f = PrimeField::new(10007).unwrap();
        let profiles: Vec<_> = (1..=6).map(|r| FactorProfile::new(lin(f, r), 1)).collect();
        let doms = candidate_domains(&profiles, &vec![vec![None]; 6], 40);
        assert!(matches!(
            enumerate_candidates(&profiles, &doms, 40, None, 100),
            Err(Error::SearchTooLarge { cap: 100 })
        ));
        // stars and bars: compositions of 40 into 6 positive parts
        let all = enumerate_candidates(&profiles, &doms, 40, None, DEFAULT_CAP).unwrap();
        assert_eq!(all.len(), 575757);
    }
}
