//! Independent checks of genus certificates.
//!
//! [`check_certificate`] recomputes every formula value from the certificate
//! itself and tests the listed fields for the ramification, order and
//! containment properties they must have. The oracles in [`oracle_genus`] and
//! [`oracle_k_genus`] recompute the answer by scanning whole Kummer groups and
//! so are limited to small instances.

mod checks;
mod corpus;
mod degree_order;
mod golden;
mod mutation;
mod oracle;
mod random;
mod report;

pub use checks::{
    canonical_checks, check_certificate, degree_log, generator_subgroup, is_semantic,
};
pub use corpus::{
    invariant_corpus, oracle_corpus, peng_corpus, run_check_suite, run_degree_order_suite,
    run_factor_suite, run_mutation_suite, run_oracle_suite, run_peng_suite, selftest,
    SelftestSizes, SuiteResult,
};
pub use degree_order::check_prop31;
pub use golden::{reproduce_example, reproduce_example_variants, GoldenExample};
pub use mutation::{mutation_outcomes, Mutation, MutationOutcome, MutationSummary};
pub use oracle::{oracle_genus, oracle_k_genus, OracleLimits};
pub use random::{field_for, random_instance, RandomParams};
pub use report::{CheckReport, Status};
