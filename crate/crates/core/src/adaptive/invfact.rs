use rand::Rng;
use serde_json::json;

use crate::blackbox::{random_vector, wiedemann_minpoly, BlackBox, LowRankPerturbation, WiedemannConfig};
use crate::explain::Explain;
use crate::multiplicity::{index_calculus, FactorProfile};
use crate::poly::{product_of_powers, FieldPoly};
use crate::{Error, Result};

use super::{ceil_sqrt, nullity_comb_search, AdaptiveConfig, IndexField};

/// The j-th invariant factor (`j = 1` is `f1`, the minimal polynomial):
/// `gcd(f1, minpoly(A + U V))` for random rank `j - 1` products `U V`,
/// intersected over `reps` draws. Any rank `j - 1` perturbation keeps `f_j`
/// as a divisor of its minimal polynomial, so extra draws can only remove
/// spurious factors.
pub fn invariant_factor<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    j: usize,
    f1: &FieldPoly,
    reps: usize,
    cfg: &WiedemannConfig,
    rng: &mut R,
) -> Result<FieldPoly> {
    assert!(j >= 1);
    if j == 1 {
        return Ok(f1.clone());
    }
    let f = a.field();
    let n = a.dim();
    let mut acc = f1.clone();
    for _ in 0..reps.max(1) {
        let u: Vec<Vec<u64>> = (1..j).map(|_| random_vector(f, n, rng)).collect();
        let v: Vec<Vec<u64>> = (1..j).map(|_| random_vector(f, n, rng)).collect();
        let pert = LowRankPerturbation::new(a, u, v);
        let g = wiedemann_minpoly(&pert, cfg, rng)?;
        acc = acc.gcd(&g);
        if acc.is_one() {
            break;
        }
    }
    Ok(acc.monic())
}

/// Draws per invariant factor: the configured count on large fields, more
/// when spurious common roots are likely.
fn reps_for(a: &dyn BlackBox, base: usize) -> usize {
    let p = a.field().modulus() as f64;
    let n = a.dim() as f64;
    if p > 2.0 * n * n {
        base
    } else {
        base.max((40.0 / p.log2()).ceil() as usize)
    }
}

#[derive(Clone, Debug)]
pub struct InvFactOutcome {
    pub multiplicities: Vec<usize>,
    pub invariant_factors: Vec<FieldPoly>,
    /// Iterations of the peeling loop.
    pub iterations: usize,
    /// Factors left open for the final step.
    pub open: Vec<usize>,
}

/// Peels invariant factors `f_2, f_3, ...` while more than `ceil(sqrt n)`
/// factors remain in play, adding each factor's exponent to its
/// multiplicity and dropping factors that no longer divide. The open
/// factors are then solved by index calculus, or by nullity-comb when the
/// field has no usable log modulus (or, with `short_circuit`, when at most
/// `threshold` remain).
#[allow(clippy::too_many_arguments)]
pub fn invfact_multiplicities<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    profiles: &[FactorProfile],
    f1: &FieldPoly,
    ix: Option<&IndexField>,
    short_circuit: bool,
    cfg: &AdaptiveConfig,
    explain: &Explain,
    rng: &mut R,
) -> Result<InvFactOutcome> {
    let n = a.dim();
    let k = profiles.len();
    let limit = ceil_sqrt(n);
    let reps = reps_for(a, cfg.invfact_reps);
    let mut mults: Vec<usize> = profiles.iter().map(|p| p.min_mult).collect();
    let mut open: Vec<usize> = (0..k).collect();
    let mut factors = vec![f1.clone()];
    let mut iterations = 0;
    while open.len() > limit {
        iterations += 1;
        if iterations > limit {
            return Err(Error::InvariantFactor(format!("peeling loop exceeded {limit} iterations")));
        }
        let j = factors.len() + 1;
        let prev = factors.last().expect("f1 present");
        let mut fj = None;
        for _ in 0..3 {
            let g = invariant_factor(a, j, f1, reps, &cfg.wiedemann, rng)?;
            if g.divides(prev) {
                fj = Some(g);
                break;
            }
        }
        let fj = fj.ok_or_else(|| Error::InvariantFactor(format!("f_{j} does not divide f_{}", j - 1)))?;
        explain.record("invariant_factor", json!({"j": j, "degree": fj.deg(), "factor": fj.to_compact()}));
        open.retain(|&i| {
            let p = &profiles[i];
            let alpha = fj.multiplicity_of(&p.poly).min(p.min_mult);
            mults[i] += alpha;
            alpha > 0
        });
        factors.push(fj);
    }
    let known_deg: usize = (0..k).filter(|i| !open.contains(i)).map(|i| mults[i] * profiles[i].degree).sum();
    if known_deg > n {
        return Err(Error::InvariantFactor(format!("peeled factors already have degree {known_deg} > {n}")));
    }
    explain.record("open_factors", json!({"count": open.len(), "limit": limit, "iterations": iterations}));

    if !open.is_empty() {
        let closed: Vec<(FieldPoly, usize)> = (0..k)
            .filter(|i| !open.contains(i))
            .map(|i| (profiles[i].poly.clone(), mults[i]))
            .collect();
        let use_index = ix.is_some() && !(short_circuit && open.len() <= cfg.threshold);
        let solved = if use_index {
            let known = product_of_powers(a.field(), &closed);
            index_with_retry(a, profiles, &open, &known, ix.unwrap(), cfg, explain, rng)
        } else {
            Err(Error::MethodNotApplicable {
                method: "index".into(),
                reason: "no log modulus".into(),
            })
        };
        match solved {
            Ok(m) => {
                for (&i, m) in open.iter().zip(m) {
                    mults[i] = m;
                }
            }
            Err(e) => {
                if use_index {
                    explain.record("fallback", json!({"from": "index", "to": "nullity-comb", "error": e.to_string()}));
                }
                let fixed: Vec<Option<usize>> = (0..k).map(|i| (!open.contains(&i)).then_some(mults[i])).collect();
                let threshold = if use_index { 0 } else { cfg.threshold };
                let out = nullity_comb_search(a, profiles, &fixed, threshold, cfg.cap, &cfg.wiedemann, explain, rng)?;
                mults = out.multiplicities;
            }
        }
    }
    Ok(InvFactOutcome {
        multiplicities: mults,
        invariant_factors: factors,
        iterations,
        open,
    })
}

/// Index calculus on the `unknown` factors, retried once with fresh points.
/// Multiplicities come back in the order of `unknown`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn index_with_retry<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    profiles: &[FactorProfile],
    unknown: &[usize],
    known: &FieldPoly,
    ix: &IndexField,
    cfg: &AdaptiveConfig,
    explain: &Explain,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let mut last = None;
    for attempt in 0..2 {
        match index_calculus(a, profiles, unknown, known, &ix.ctx, ix.p, &cfg.wiedemann, rng) {
            Ok(out) => {
                explain.record(
                    "index_calculus",
                    json!({"unknowns": unknown.len(), "p": ix.p, "rows_tried": out.rows_tried, "lambdas": out.lambdas}),
                );
                return Ok(out.multiplicities);
            }
            Err(e) => {
                explain.record("index_calculus_failed", json!({"attempt": attempt, "error": e.to_string()}));
                last = Some(e);
            }
        }
    }
    Err(last.expect("two attempts"))
}
