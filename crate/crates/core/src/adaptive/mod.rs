//! Characteristic polynomial of a black box over GF(q): minimal polynomial,
//! its factorization, then multiplicities by whichever method fits.
//!
//! * [`Method::NullityComb`]: nullities for the cheap `(factor, power)`
//!   slots, combinatorial search for the last few.
//! * [`Method::Index`]: one discrete-log system over all factors.
//! * [`Method::Hybrid`]: nullity for simple linear factors, enumeration of the
//!   largest factors, one shared log system for the rest.
//! * [`Method::InvFact`]: peel invariant factors until at most `ceil(sqrt n)`
//!   factors are open, then index calculus.
//! * [`Method::Auto`] compares predicted costs.
//!
//! Every result is checked (degree, trace, Cayley-Hamilton on random
//! vectors); a failed method falls back to computing every nullity.

mod hybrid;
mod invfact;
mod nullcomb;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::blackbox::{annihilates, rank_repetitions, wiedemann_minpoly, BlackBox, WiedemannConfig};
use crate::explain::Explain;
use crate::ff::{large_prime_factor, DlogContext, PrimeField};
use crate::multiplicity::{degree_trace_residual, FactorProfile, OccurrenceTable, DEFAULT_CAP};
use crate::poly::{product_of_powers, FieldPoly};
use crate::{Error, Result};

pub use hybrid::{choose_split, hybrid_multiplicities, SplitChoice};
pub use invfact::{invariant_factor, invfact_multiplicities, InvFactOutcome};
pub use nullcomb::{nullity_comb_search, NullCombOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Auto,
    NullityComb,
    Index,
    Hybrid,
    #[value(name = "invfact")]
    #[serde(rename = "invfact")]
    InvFact,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Auto, Method::NullityComb, Method::Index, Method::Hybrid, Method::InvFact];

    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::NullityComb => "nullity-comb",
            Method::Index => "index",
            Method::Hybrid => "hybrid",
            Method::InvFact => "invfact",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptiveConfig {
    /// Slots left to the combinatorial search in nullity-comb.
    pub threshold: usize,
    /// Bound on combinatorial search candidates.
    pub cap: usize,
    pub method: Method,
    pub seed: u64,
    pub wiedemann: WiedemannConfig,
    /// Perturbed minimal polynomials intersected per invariant factor.
    pub invfact_reps: usize,
}

impl Default for AdaptiveConfig {
    fn default() -> Self {
        AdaptiveConfig {
            threshold: 5,
            cap: DEFAULT_CAP,
            method: Method::Auto,
            seed: 0,
            wiedemann: WiedemannConfig::default(),
            invfact_reps: 2,
        }
    }
}

impl AdaptiveConfig {
    pub fn with_method(method: Method, seed: u64) -> Self {
        AdaptiveConfig {
            method,
            seed,
            ..Default::default()
        }
    }
}

/// Discrete-log data for index calculus: the field's log table and a prime
/// `p > n` dividing `q - 1`.
#[derive(Clone, Debug)]
pub struct IndexField {
    pub ctx: DlogContext,
    pub p: u64,
}

impl IndexField {
    /// `None` when `q - 1` has no prime factor above `n`.
    pub fn for_field(field: PrimeField, n: usize) -> Option<Self> {
        let p = large_prime_factor(field.modulus(), n.max(2) as u64)?;
        Some(IndexField {
            ctx: DlogContext::new(field),
            p,
        })
    }
}

#[derive(Clone, Debug)]
pub struct CharpolyReport {
    pub charpoly: FieldPoly,
    pub minpoly: FieldPoly,
    /// Factors with `char_mult` filled in.
    pub factors: Vec<FactorProfile>,
    /// Method that produced the multiplicities.
    pub method: Method,
    /// Why the requested method was abandoned, if it was.
    pub fallback: Option<String>,
    pub occurrences: OccurrenceTable,
}

impl CharpolyReport {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.factors.iter().map(|p| p.char_mult.unwrap_or(0)).collect()
    }

    pub fn factorization(&self) -> Vec<(FieldPoly, usize)> {
        self.factors
            .iter()
            .map(|p| (p.poly.clone(), p.char_mult.unwrap_or(0)))
            .collect()
    }
}

pub(crate) fn ceil_sqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

/// Characteristic polynomial of `a` with the configured method.
pub fn blackbox_charpoly_field(a: &dyn BlackBox, cfg: &AdaptiveConfig) -> Result<CharpolyReport> {
    blackbox_charpoly_explained(a, cfg, &Explain::disabled())
}

pub fn blackbox_charpoly_explained(a: &dyn BlackBox, cfg: &AdaptiveConfig, explain: &Explain) -> Result<CharpolyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let minpoly = wiedemann_minpoly(a, &cfg.wiedemann, &mut rng)?;
    explain.record("minpoly", json!({"degree": minpoly.deg(), "minpoly": minpoly.to_compact()}));
    charpoly_from_minpoly(a, minpoly, cfg, explain, &mut rng)
}

/// The driver after the minimal polynomial is known.
pub fn charpoly_from_minpoly<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    minpoly: FieldPoly,
    cfg: &AdaptiveConfig,
    explain: &Explain,
    rng: &mut R,
) -> Result<CharpolyReport> {
    let n = a.dim();
    let mut profiles = FactorProfile::from_minpoly(&minpoly, rng);
    explain.record(
        "factors",
        json!({"factors": profiles.iter().map(|p| json!({"factor": p.poly.to_compact(), "e": p.min_mult})).collect::<Vec<_>>()}),
    );
    let ix = IndexField::for_field(a.field(), n);
    let trace = a.trace();

    if minpoly.deg() == n {
        explain.record("shortcut", json!({"reason": "minimal polynomial has full degree"}));
        let mults: Vec<usize> = profiles.iter().map(|p| p.min_mult).collect();
        return finish(a, minpoly, profiles, mults, cfg.method, None, OccurrenceTable::default(), trace, rng);
    }

    let method = match cfg.method {
        Method::Auto => auto_method(a, &profiles, ix.is_some(), cfg),
        m => m,
    };
    explain.record("method", json!({"requested": cfg.method.name(), "chosen": method.name(), "index_field": ix.as_ref().map(|x| x.p)}));
    if matches!(method, Method::Index | Method::Hybrid) && ix.is_none() {
        return Err(Error::MethodNotApplicable {
            method: method.name().into(),
            reason: format!("no prime above {n} divides {} - 1", a.field().modulus()),
        });
    }

    let attempt = run_method(a, &profiles, &minpoly, method, ix.as_ref(), cfg, explain, rng).and_then(|(m, table)| {
        check_candidate(a, &profiles, &m, trace, rng)?;
        Ok((m, table))
    });
    let (mults, table, used, fallback) = match attempt {
        Ok((m, t)) => (m, t, method, None),
        Err(e) => {
            explain.record("fallback", json!({"from": method.name(), "error": e.to_string()}));
            let free = vec![None; profiles.len()];
            let out = nullity_comb_search(a, &profiles, &free, 0, cfg.cap, &cfg.wiedemann, explain, rng)?;
            (out.multiplicities, out.table, Method::NullityComb, Some(e.to_string()))
        }
    };
    for (p, &m) in profiles.iter_mut().zip(&mults) {
        p.char_mult = Some(m);
    }
    finish(a, minpoly, profiles, mults, used, fallback, table, trace, rng)
}

#[allow(clippy::too_many_arguments)]
fn run_method<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    profiles: &[FactorProfile],
    minpoly: &FieldPoly,
    method: Method,
    ix: Option<&IndexField>,
    cfg: &AdaptiveConfig,
    explain: &Explain,
    rng: &mut R,
) -> Result<(Vec<usize>, OccurrenceTable)> {
    let k = profiles.len();
    let mut table = OccurrenceTable::new(profiles);
    let mults = match method {
        Method::NullityComb | Method::Auto => {
            let out = nullity_comb_search(a, profiles, &vec![None; k], cfg.threshold, cfg.cap, &cfg.wiedemann, explain, rng)?;
            table = out.table;
            out.multiplicities
        }
        Method::Index => {
            let ix = ix.expect("checked by caller");
            let all: Vec<usize> = (0..k).collect();
            let one = FieldPoly::one(a.field());
            invfact::index_with_retry(a, profiles, &all, &one, ix, cfg, explain, rng)?
        }
        Method::Hybrid => hybrid_multiplicities(a, profiles, ix.expect("checked by caller"), cfg, explain, rng)?,
        Method::InvFact => {
            let short = cfg.method == Method::Auto;
            invfact_multiplicities(a, profiles, minpoly, ix, short, cfg, explain, rng)?.multiplicities
        }
    };
    for (row, &m) in table.rows.iter_mut().zip(&mults) {
        row.multiplicity = Some(m);
    }
    Ok((mults, table))
}

/// Predicted applies of A: each rank estimate runs `reps` symmetrized
/// sequences of `P^j(A)` (2jd applies per step); index calculus needs one
/// determinant sequence per open factor, plus perturbed minimal polynomials
/// when invariant factors are peeled first.
fn auto_method(a: &dyn BlackBox, profiles: &[FactorProfile], index_ok: bool, cfg: &AdaptiveConfig) -> Method {
    if !index_ok {
        return Method::NullityComb;
    }
    let n = a.dim();
    let reps = rank_repetitions(a.field(), n);
    let slot_cost: usize = profiles
        .iter()
        .map(|p| (1..=p.min_mult).map(|j| j * p.degree).sum::<usize>())
        .sum();
    let slots: usize = profiles.iter().map(|p| p.min_mult).sum();
    let nullity_cost = if slots <= cfg.threshold { 0 } else { 2 * reps * slot_cost };
    let k = profiles.len();
    let lim = ceil_sqrt(n);
    let index_cost = k.min(lim) + if k > lim { cfg.invfact_reps } else { 0 };
    if nullity_cost < index_cost {
        Method::NullityComb
    } else if k > lim {
        Method::InvFact
    } else {
        Method::Index
    }
}

/// Degree, trace and Cayley-Hamilton spot check of a multiplicity vector.
pub(crate) fn check_candidate<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    profiles: &[FactorProfile],
    mults: &[usize],
    trace: u64,
    rng: &mut R,
) -> Result<()> {
    let n = a.dim();
    let (dg, tg) = degree_trace_residual(profiles, mults, n, trace);
    if dg != 0 {
        return Err(Error::SelfCheck(format!("degree off by {dg}")));
    }
    if tg != 0 {
        return Err(Error::SelfCheck("trace identity fails".into()));
    }
    if let Some(i) = profiles.iter().zip(mults).position(|(p, &m)| m < p.min_mult) {
        return Err(Error::SelfCheck(format!("factor {} below its minimal multiplicity", profiles[i].poly.to_compact())));
    }
    let cp = product_of_powers(a.field(), &profiles.iter().zip(mults).map(|(p, &m)| (p.poly.clone(), m)).collect::<Vec<_>>());
    if !annihilates(a, &cp, 5, rng) {
        return Err(Error::SelfCheck("charpoly(A) v != 0".into()));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn finish<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    minpoly: FieldPoly,
    mut profiles: Vec<FactorProfile>,
    mults: Vec<usize>,
    method: Method,
    fallback: Option<String>,
    mut table: OccurrenceTable,
    trace: u64,
    rng: &mut R,
) -> Result<CharpolyReport> {
    check_candidate(a, &profiles, &mults, trace, rng)?;
    for (p, &m) in profiles.iter_mut().zip(&mults) {
        p.char_mult = Some(m);
    }
    if table.rows.is_empty() {
        table = OccurrenceTable::new(&profiles);
    }
    for (row, &m) in table.rows.iter_mut().zip(&mults) {
        row.multiplicity = Some(m);
    }
    let charpoly = product_of_powers(a.field(), &profiles.iter().map(|p| (p.poly.clone(), p.char_mult.unwrap())).collect::<Vec<_>>());
    debug_assert!(minpoly.divides(&charpoly));
    Ok(CharpolyReport {
        charpoly,
        minpoly,
        factors: profiles,
        method,
        fallback,
        occurrences: table,
    })
}
