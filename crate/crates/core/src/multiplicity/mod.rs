//! Recovering characteristic multiplicities of the minimal polynomial's
//! irreducible factors.
//!
//! Three methods, usable on their own or mixed by [`crate::adaptive`]:
//!
//! * nullity: the nullity of `P^e(A)` is `m deg P`, and the nullities of the
//!   lower powers give the block census of the primary form;
//! * combinatorial search: enumerate multiplicities meeting the degree and
//!   trace equations, separate survivors with determinants;
//! * index calculus: discrete logs of `det(lambda I - A) = prod P_j(lambda)^m_j`
//!   at several points give a linear system for the `m_j` modulo a prime
//!   `p > n` dividing `q - 1`.

mod index;
mod nullity;
mod profile;
mod search;

pub use index::{
    index_calculus, index_calculus_at, invert_mod, log_determinants, log_row, IncrementalEchelon, IndexOutcome,
    IndexSystem,
};
pub use nullity::{nullities_to_occurrences, nullity, nullity_multiplicity};
pub use profile::{degree_trace_residual, multiplicity_from_counts, FactorProfile, OccurrenceRow, OccurrenceTable};
pub use search::{candidate_domains, combinatorial_search, discriminate, enumerate_candidates, SearchOutcome, DEFAULT_CAP};

pub(crate) use profile::trace_sum;
