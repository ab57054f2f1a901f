use rand::Rng;
use serde_json::json;

use crate::blackbox::{BlackBox, WiedemannConfig};
use crate::explain::Explain;
use crate::multiplicity::{
    candidate_domains, discriminate, enumerate_candidates, nullities_to_occurrences, nullity, FactorProfile,
    OccurrenceTable,
};
use crate::Result;

#[derive(Clone, Debug)]
pub struct NullCombOutcome {
    pub multiplicities: Vec<usize>,
    pub table: OccurrenceTable,
    pub rank_calls: usize,
    pub candidates: usize,
}

/// Nullities for the cheapest `(factor, power)` slots until at most
/// `threshold` remain, then a combinatorial search over the rest.
/// Factors with a `fixed` multiplicity are taken as known.
#[allow(clippy::too_many_arguments)]
pub fn nullity_comb_search<R: Rng + ?Sized>(
    a: &dyn BlackBox,
    profiles: &[FactorProfile],
    fixed: &[Option<usize>],
    threshold: usize,
    cap: usize,
    cfg: &WiedemannConfig,
    explain: &Explain,
    rng: &mut R,
) -> Result<NullCombOutcome> {
    let n = a.dim();
    let k = profiles.len();
    assert_eq!(fixed.len(), k);
    let mut table = OccurrenceTable::new(profiles);

    let mut slots: Vec<(usize, usize)> = (0..k)
        .filter(|&i| fixed[i].is_none())
        .flat_map(|i| (1..=profiles[i].min_mult).map(move |j| (i, j)))
        .collect();
    slots.sort_by_key(|&(i, j)| (j * profiles[i].degree, i, j));
    let popped = slots.len().saturating_sub(threshold);
    // powers of one factor come out in increasing order
    let mut frontier = vec![0; k];
    for &(i, j) in &slots[..popped] {
        frontier[i] = frontier[i].max(j);
    }

    let mut rank_calls = 0;
    for i in 0..k {
        if frontier[i] == 0 {
            continue;
        }
        let p = &profiles[i];
        let top = if frontier[i] < p.min_mult { frontier[i] + 1 } else { frontier[i] };
        let mut tries = 0;
        loop {
            let nus: Vec<usize> = (1..=top).map(|j| nullity(a, &p.poly, j, cfg, rng)).collect();
            rank_calls += top;
            explain.record("nullities", json!({"factor": p.poly.to_compact(), "nullities": nus}));
            match nullities_to_occurrences(&nus, p.degree, p.min_mult) {
                Ok(counts) => {
                    let row = &mut table.rows[i];
                    row.nullities = nus;
                    for (slot, c) in row.counts.iter_mut().zip(counts) {
                        *slot = Some(c);
                    }
                    break;
                }
                Err(e) if tries > 0 => return Err(e),
                Err(_) => tries += 1,
            }
        }
    }

    // domains of the open factors, with fixed ones as single values
    let open: Vec<usize> = (0..k).filter(|&i| fixed[i].is_none()).collect();
    let fixed_deg: usize = (0..k).filter_map(|i| fixed[i].map(|m| m * profiles[i].degree)).sum();
    let sub: Vec<FactorProfile> = open.iter().map(|&i| profiles[i].clone()).collect();
    let sub_counts: Vec<Vec<Option<usize>>> = open.iter().map(|&i| table.rows[i].counts.clone()).collect();
    let sub_domains = candidate_domains(&sub, &sub_counts, n.saturating_sub(fixed_deg));
    let mut domains: Vec<Vec<usize>> = fixed.iter().map(|m| m.map(|m| vec![m]).unwrap_or_default()).collect();
    for (&i, d) in open.iter().zip(sub_domains) {
        domains[i] = d;
    }
    let cands = enumerate_candidates(profiles, &domains, n, Some(a.trace()), cap)?;
    let candidates = cands.len();
    let out = discriminate(a, profiles, cands, cfg, rng)?;
    explain.record(
        "search",
        json!({"candidates": candidates, "det_evaluations": out.det_evaluations, "lambdas": out.lambdas}),
    );
    for (row, &m) in table.rows.iter_mut().zip(&out.multiplicities) {
        row.multiplicity = Some(m);
    }
    Ok(NullCombOutcome {
        multiplicities: out.multiplicities,
        table,
        rank_calls,
        candidates,
    })
}
