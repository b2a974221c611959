//! Exact and asymptotic enumeration of connected b-uniform hypergraphs by
//! excess: generating-function constructions, a bivariate counting oracle,
//! brute-force cross-checks, recurrence tables, and asymptotic forms.

pub mod asymptotics;
pub mod egf;
pub mod lambda;
pub mod oracle;

pub use asymptotics::{
    asym_connected_count_ln, creation_config_coefficient_ln, creation_config_ln_table,
    SERIES_SADDLE_CUT,
};
pub use egf::{
    cycle_creation_closed_form, cycle_creation_egf, cycle_growth_egf, growth_config_egf,
    growth_mass_egf, hypertree_egf, reciprocal_tree_power_series, rooted_hypertree_egf,
    theta_egf, wright_upper_bound,
};
pub use lambda::{lambda_asymptotic_ln, wright_lambda_table, LambdaTable};
pub use oracle::{
    big_binomial, choose_u64, connected_count, connected_count_oracle,
    edge_subset_connected_counts, excess_slice, marked_transition_counts,
    subset_dp_connected_counts, MarkedCounts,
};
