use rand::Rng;
use serde::Serialize;

use crate::ff::PrimeField;
use crate::poly::{factor, FieldPoly};

/// One irreducible factor of the minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorProfile {
    pub poly: FieldPoly,
    pub degree: usize,
    /// Multiplicity `e` in the minimal polynomial.
    pub min_mult: usize,
    /// Multiplicity `m` in the characteristic polynomial, once known.
    pub char_mult: Option<usize>,
    /// Coefficient of `X^(d-1)` in the factor.
    pub trace_coeff: u64,
}

impl FactorProfile {
    pub fn new(poly: FieldPoly, min_mult: usize) -> Self {
        assert!(poly.is_monic() && poly.deg() >= 1, "factor must be monic and nonconstant");
        assert!(min_mult >= 1);
        let degree = poly.deg();
        let trace_coeff = poly.coeff(degree - 1);
        FactorProfile {
            poly,
            degree,
            min_mult,
            char_mult: None,
            trace_coeff,
        }
    }

    /// Profiles of the irreducible factors of a minimal polynomial, in
    /// canonical order.
    pub fn from_minpoly<R: Rng + ?Sized>(minpoly: &FieldPoly, rng: &mut R) -> Vec<Self> {
        factor(&minpoly.monic(), rng)
            .factors
            .into_iter()
            .map(|(p, e)| FactorProfile::new(p, e))
            .collect()
    }
}

/// `(sum d_i m_i - n, Tr(A) + sum t_i m_i)`; both vanish for the true
/// multiplicities.
pub fn degree_trace_residual(profiles: &[FactorProfile], mults: &[usize], n: usize, trace: u64) -> (i64, u64) {
    assert_eq!(profiles.len(), mults.len());
    let f = profiles.first().map(|p| p.poly.field());
    let deg: usize = profiles.iter().zip(mults).map(|(p, &m)| p.degree * m).sum();
    let gap = deg as i64 - n as i64;
    let Some(f) = f else {
        return (gap, trace);
    };
    let t = profiles
        .iter()
        .zip(mults)
        .fold(trace, |acc, (p, &m)| f.add(acc, f.mul(p.trace_coeff, f.reduce(m as u64))));
    (gap, t)
}

/// `m = sum_j j n_j`.
pub fn multiplicity_from_counts(counts: &[usize]) -> usize {
    counts.iter().enumerate().map(|(j, &c)| (j + 1) * c).sum()
}

/// Sum of `t_i m_i` in the field, used by the trace test.
pub(crate) fn trace_sum(field: PrimeField, profiles: &[FactorProfile], mults: &[usize]) -> u64 {
    profiles
        .iter()
        .zip(mults)
        .fold(0, |acc, (p, &m)| field.add(acc, field.mul(p.trace_coeff, field.reduce(m as u64))))
}

/// Nullities and block counts gathered per factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OccurrenceTable {
    pub rows: Vec<OccurrenceRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OccurrenceRow {
    pub factor: String,
    pub degree: usize,
    pub min_mult: usize,
    /// `nu_j = n - rank(P^j(A))` for `j = 1..=nullities.len()`.
    pub nullities: Vec<usize>,
    /// `counts[j-1]` is the number of `J_{P^j}` blocks, when solved.
    pub counts: Vec<Option<usize>>,
    pub multiplicity: Option<usize>,
}

impl OccurrenceRow {
    /// Largest j with a computed nullity.
    pub fn frontier(&self) -> usize {
        self.nullities.len()
    }
}

impl OccurrenceTable {
    pub fn new(profiles: &[FactorProfile]) -> Self {
        OccurrenceTable {
            rows: profiles
                .iter()
                .map(|p| OccurrenceRow {
                    factor: p.poly.to_compact(),
                    degree: p.degree,
                    min_mult: p.min_mult,
                    nullities: Vec::new(),
                    counts: vec![None; p.min_mult],
                    multiplicity: p.char_mult,
                })
                .collect(),
        }
    }

    /// Per-factor count vectors with unknown slots as `None`.
    pub fn known_counts(&self) -> Vec<Vec<Option<usize>>> {
        self.rows.iter().map(|r| r.counts.clone()).collect()
    }
}
