//! Wick pairings of quartic vertices drawn as triple-line ribbon graphs.
//!
//! Leg `4v + p` is position `p` of vertex `v` in `Tr(A_μB_νA_μB_ν)`. Each
//! leg carries a row and a column Latin index and one Greek index; loop
//! counts give the `N^C d^l` weight of a pairing.

mod brute;
mod census;
mod loops;
mod mixed;
mod pairing;

pub use brute::{brute_force_index_sum, brute_force_index_sum_with, BRUTE_MAX_D, BRUTE_MAX_K, BRUTE_MAX_N};
pub use census::{
    census, census_serial, count_matchings, diagram_records, diagram_weight, Census, DiagramClass, DiagramRecord,
    DiagramWeight,
};
pub(crate) use census::par_map_ranges;
pub use loops::{
    analyze, components_and_genus, is_tadpole, latin_cycle_lengths, trace_greek_loops, trace_latin_loops,
    ComponentReport, LoopReport, LoopSummary,
};
pub use mixed::{mixed_pairing_weights, MixedVertex, MixedWeights, MIXED_MAX_LEGS};
pub use pairing::{enumerate_matchings, matching_count, Leg, MatchMode, Matchings, Pairing, MAX_K, MAX_K_ALL};
