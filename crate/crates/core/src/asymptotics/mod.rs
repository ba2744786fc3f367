//! Exact combinatorics of the normal decomposition and the renewal model.

pub mod counting;
pub mod moves;
pub mod renewal;

pub use counting::{
    at_most_two, at_most_two_ending, block_profile_count, counting_table, omega_sum, omega_sums,
    profile_sums, two_letter, two_letter_ending, CountingRow, CountingTable, TwoLetterKernel,
};
pub use moves::{
    level_average_parts, level_weight_parts, level_weight_ratio, mean_moves, mean_moves_series,
    mean_moves_table, mean_moves_within, moves_numerators, reference_table, AlphaSeries, MovesRow,
};
pub use renewal::{
    block_lengths, block_lengths_of, lemma6_sandwich, lemma6_sandwiches, mean_s, mean_s_partial,
    pmf_partial_sum, renewal_count, renewal_exact, renewal_mc, s_pmf, MonteCarlo, RenewalModel,
    SandwichReport,
};
