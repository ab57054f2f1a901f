use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::blackbox::BlackBox;
use crate::explain::Explain;
use crate::multiplicity::{discriminate, log_determinants, log_row, nullity_multiplicity, trace_sum, FactorProfile, IndexSystem};
use crate::poly::{product_of_powers, FieldPoly};
use crate::{Error, Result};

use super::{AdaptiveConfig, IndexField};

/// Largest number of enumerated factors considered.
const MAX_SPLIT: usize = 8;
/// Enumeration bound when counting assignments for a split.
const TAU_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct SplitChoice {
    /// Factors enumerated (the first `s` of the remaining ones).
    pub s: usize,
    /// Unknowns left to the log system.
    pub unknowns: usize,
    /// Feasible assignments of the enumerated factors.
    pub assignments: usize,
    pub cost: f64,
}

/// Multiplicity vectors for `rest[..s]` within `budget` degree, leaving
/// room for every later factor at its minimal multiplicity. `None` past the
/// cap.
fn partial_assignments(rest: &[FactorProfile], s: usize, budget: usize, cap: usize) -> Option<Vec<Vec<usize>>> {
    let reserve: usize = rest[s..].iter().map(|p| p.degree * p.min_mult).sum();
    let budget = budget.checked_sub(reserve)?;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    fn go(rest: &[FactorProfile], s: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) -> bool {
        if cur.len() == s {
            out.push(cur.clone());
            return out.len() <= cap;
        }
        let p = &rest[cur.len()];
        // later enumerated factors need at least their minimal degree too
        let need: usize = rest[cur.len() + 1..s].iter().map(|q| q.degree * q.min_mult).sum();
        let mut m = p.min_mult;
        while p.degree * m + need <= left {
            cur.push(m);
            let ok = go(rest, s, left - p.degree * m, cur, out, cap);
            cur.pop();
            if !ok {
                return false;
            }
            m += 1;
        }
        true
    }
    go(rest, s, budget, &mut cur, &mut out, cap).then_some(out)
}

/// Picks the split minimizing `2 m n omega + 2/3 m^3 + 4 m^2 tau_s`, where
/// `m` factors go to the log system and `tau_s` assignments of the first
/// `s` are enumerated. At least one factor always stays in the system.
pub fn choose_split(rest: &[FactorProfile], budget: usize, n: usize, omega: usize) -> (SplitChoice, Vec<Vec<usize>>) {
    let mut best: Option<(SplitChoice, Vec<Vec<usize>>)> = None;
    for s in 0..rest.len().min(MAX_SPLIT + 1) {
        let Some(assign) = partial_assignments(rest, s, budget, TAU_CAP).filter(|a| !a.is_empty()) else {
            continue;
        };
        let m = (rest.len() - s) as f64;
        let tau = assign.len() as f64;
        let cost = 2.0 * m * n as f64 * omega as f64 + 2.0 / 3.0 * m * m * m + 4.0 * m * m * tau;
        if best.as_ref().is_none_or(|(b, _)| cost < b.cost) {
            best = Some((
                SplitChoice {
                    s,
                    unknowns: rest.len() - s,
                    assignments: assign.len(),
                    cost,
                },
                assign,
            ));
        }
    }
    best.unwrap_or_else(|| {
        let empty = SplitChoice { s: 0, unknowns: rest.len(), assignments: 0, cost: f64::INFINITY };
        (empty, Vec::new())
    })
}

/// Multiplicities by nullity for linear factors simple in the minimal
/// polynomial, then enumeration of the largest remaining factors with one
/// shared log system for the others.
pub fn hybrid_multiplicities<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    profiles: &[FactorProfile],
    ix: &IndexField,
    cfg: &AdaptiveConfig,
    explain: &Explain,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let n = a.dim();
    let f = a.field();
    let k = profiles.len();
    let mut mults = vec![0usize; k];
    let mut known = Vec::new();
    let mut rest = Vec::new();
    for (i, p) in profiles.iter().enumerate() {
        if p.degree == 1 && p.min_mult == 1 {
            mults[i] = nullity_multiplicity(a, &p.poly, 1, &cfg.wiedemann, rng)?;
            known.push(i);
        } else {
            rest.push(i);
        }
    }
    explain.record("hybrid_nullity", json!({"resolved": known.len()}));
    if rest.is_empty() {
        return Ok(mults);
    }
    let known_deg: usize = known.iter().map(|&i| mults[i]).sum();
    let budget = n
        .checked_sub(known_deg)
        .ok_or_else(|| Error::IndexCalculusFail(format!("nullities already exceed degree {n}")))?;
    // largest degree first, stable on canonical order
    rest.sort_by_key(|&i| std::cmp::Reverse(profiles[i].degree));
    let rest_profiles: Vec<FactorProfile> = rest.iter().map(|&i| profiles[i].clone()).collect();
    let (choice, assignments) = choose_split(&rest_profiles, budget, n, a.cost());
    explain.record(
        "hybrid_split",
        json!({"s": choice.s, "unknowns": choice.unknowns, "assignments": choice.assignments, "cost": choice.cost}),
    );
    let s = choice.s;
    let enumerated = &rest[..s];
    let unknown = &rest[s..];

    let q_poly = product_of_powers(f, &known.iter().map(|&i| (profiles[i].poly.clone(), mults[i])).collect::<Vec<_>>());
    let unknown_polys: Vec<FieldPoly> = unknown.iter().map(|&i| profiles[i].poly.clone()).collect();
    let guard: Vec<FieldPoly> = profiles.iter().map(|p| p.poly.clone()).collect();
    let p = ix.p;
    let q = f.modulus();

    let mut last_err = None;
    for _ in 0..2 {
        let mut seq = ChaCha8Rng::seed_from_u64(rng.gen());
        let mut next = || Some(seq.gen_range(0..q));
        let sys = match IndexSystem::build(&ix.ctx, p, &unknown_polys, &guard, n, &mut next) {
            Ok(s) => s,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let dets = log_determinants(a, &ix.ctx, p, &sys.lambdas, &cfg.wiedemann, rng)?;
        let base: Vec<u64> = dets
            .iter()
            .zip(&sys.lambdas)
            .map(|(&ld, &lambda)| Ok((ld + p - ix.ctx.dlog(q_poly.eval(lambda))? % p) % p))
            .collect::<Result<_>>()?;
        let enum_polys: Vec<FieldPoly> = enumerated.iter().map(|&i| profiles[i].poly.clone()).collect();
        let enum_logs: Vec<Vec<u64>> = sys
            .lambdas
            .iter()
            .map(|&lambda| log_row(&ix.ctx, p, &enum_polys, lambda))
            .collect::<Result<_>>()?;

        let mut survivors = Vec::new();
        for assign in &assignments {
            let rhs: Vec<u64> = base
                .iter()
                .zip(&enum_logs)
                .map(|(&b, logs)| {
                    let shift = logs.iter().zip(assign).fold(0, |acc, (&l, &m)| (acc + l * (m as u64 % p)) % p);
                    (b + p - shift) % p
                })
                .collect();
            let x = sys.solve(&rhs);
            let mut full = mults.clone();
            for (&i, &m) in enumerated.iter().zip(assign) {
                full[i] = m;
            }
            let mut ok = true;
            for (&i, &m) in unknown.iter().zip(&x) {
                ok &= m as usize >= profiles[i].min_mult && m as usize <= n;
                full[i] = m as usize;
            }
            let degree: usize = profiles.iter().zip(&full).map(|(p, &m)| p.degree * m).sum();
            if ok && degree == n {
                survivors.push(full);
            }
        }
        let trace = a.trace();
        survivors.retain(|m| f.add(trace, trace_sum(f, profiles, m)) == 0);
        explain.record(
            "hybrid_solve",
            json!({"rows_tried": sys.rows_tried, "lambdas": sys.lambdas, "survivors": survivors.len()}),
        );
        if survivors.is_empty() {
            last_err = Some(Error::IndexCalculusFail("no assignment passes the degree test".into()));
            continue;
        }
        return Ok(discriminate(a, profiles, survivors, &cfg.wiedemann, rng)?.multiplicities);
    }
    Err(last_err.expect("two attempts"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::{block_diag, build_block_jordan, build_companion, SparseMatrix};
    use crate::ff::{find_index_calculus_field, PrimeField};
    use crate::oracle::{dense_charpoly, DenseMatrix};
    use crate::poly::factor;

    #[test]
    fn split_counts_assignments() {
        let f = PrimeField::new(10007).unwrap();
        let cubic = FactorProfile::new(FieldPoly::from_i64(f, &[1, 1, 0, 1]), 1);
        let quad = FactorProfile::new(FieldPoly::from_i64(f, &[1, 0, 1]), 1);
        let rest = vec![cubic, quad];
        // budget 9: cubic takes 1 or 2 leaving room for quad's 2
        let a = partial_assignments(&rest, 1, 9, 100).unwrap();
        assert_eq!(a, vec![vec![1], vec![2]]);
        assert_eq!(partial_assignments(&rest, 0, 9, 100).unwrap(), vec![Vec::<usize>::new()]);
        assert!(partial_assignments(&rest, 1, 4, 100).unwrap().is_empty());
        assert!(partial_assignments(&rest, 1, 1, 100).is_none());
        let (choice, _) = choose_split(&rest, 9, 9, 10);
        assert!(choice.s <= 1);
    }

    #[test]
    fn only_simple_linear_factors_uses_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (q, p) = find_index_calculus_field(6, &mut rng).unwrap();
        let f = PrimeField::new(q).unwrap();
        let a = SparseMatrix::diagonal(f, &[1, 1, 2, 3, 3, 3]);
        let profiles = FactorProfile::from_minpoly(&FieldPoly::from_i64(f, &[-6, 11, -6, 1]), &mut rng);
        let ix = IndexField {
            ctx: crate::ff::DlogContext::new(f),
            p,
        };
        let m = hybrid_multiplicities(&a, &profiles, &ix, &AdaptiveConfig::default(), &Explain::disabled(), &mut rng).unwrap();
        assert_eq!(m, vec![2, 1, 3]);
    }

    #[test]
    fn mixed_degrees_against_oracle() {
        // two cubic and three linear factors, n = 30
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let (q, p) = find_index_calculus_field(30, &mut rng).unwrap();
        let f = PrimeField::new(q).unwrap();
        let mut cubics = Vec::new();
        let mut c = 1;
        while cubics.len() < 2 {
            let g = FieldPoly::from_i64(f, &[c, 2, 0, 1]);
            if g.is_irreducible() {
                cubics.push(g);
            }
            c += 1;
        }
        let l = |r: i64| FieldPoly::from_i64(f, &[-r, 1]);
        let a = block_diag(&[
            build_block_jordan(&cubics[0], 2).unwrap(),
            build_companion(&cubics[0]).unwrap(),
            build_block_jordan(&cubics[1], 1).unwrap(),
            build_block_jordan(&cubics[1], 1).unwrap(),
            build_block_jordan(&l(1), 3).unwrap(),
            build_block_jordan(&l(1), 1).unwrap(),
            SparseMatrix::diagonal(f, &[2, 2, 2, 2, 2, 5, 5, 5, 5, 5, 5]),
        ]);
        assert_eq!(a.dim(), 30);
        let expect = dense_charpoly(&DenseMatrix::from_sparse(&a));
        let minpoly = crate::blackbox::wiedemann_minpoly(&a, &Default::default(), &mut rng).unwrap();
        let profiles = FactorProfile::from_minpoly(&minpoly, &mut rng);
        let ix = IndexField {
            ctx: crate::ff::DlogContext::new(f),
            p,
        };
        let m = hybrid_multiplicities(&a, &profiles, &ix, &AdaptiveConfig::default(), &Explain::disabled(), &mut rng).unwrap();
        let got = product_of_powers(f, &profiles.iter().map(|p| p.poly.clone()).zip(m).collect::<Vec<_>>());
        assert_eq!(got, expect);
        assert_eq!(factor(&got, &mut rng).factors.len(), 5);
    }
}
