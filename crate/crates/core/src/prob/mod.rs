//! Exact and sampled probability models for the consecutive difference of
//! the truncated additive function, plus Lévy concentration machinery.

mod concentration;
mod model;
mod pmf;

pub use concentration::{levy_concentration, ConcentrationResult, WINDOW_SLACK};
pub use model::{
    model_sum_pmf_exact, model_sum_pmf_exact_with_budget, model_sum_pmf_mc,
    model_target_probability, period_model_equivalence, period_model_equivalence_with_budget,
    petrov_eval, prime_diff_pmf, valuation_pmf, zero_cluster_concentration_check, ModelError,
    PeriodCheck, PetrovReport, PrimeDiffAtoms, WMethod, DEFAULT_EXACT_BUDGET, DEFAULT_MC_SAMPLES,
    DEFAULT_PERIOD_BUDGET,
};
pub use pmf::{prob, Pmf, Prob, Provenance};
