//! Scripted checks that tie the library to computable facts: named
//! reproductions of the worked examples and bound theorems, counterexample
//! search over small model spaces, and the implication-versus-conditional
//! transfer experiment. Everything here is deterministic and exact.

mod families;
mod repros;
mod resources;
mod search;
mod transfer;

pub use repros::{repro, Claim, ReproName, ReproReport};
pub use resources::{
    birds_ensemble, court_kb, court_model, nested_witness, no_antecedent_model, vacuous_witness,
    BIRDS_ENSEMBLE_JSON, COURT_KB_TEXT, COURT_MODEL_JSON, NESTED_WITNESS_JSON, NO_ANTECEDENT_JSON,
    VACUOUS_WITNESS_JSON,
};
pub use search::{
    search_counterexample, SearchMode, SearchOutcome, SearchProperty, SearchSpace,
    DEFAULT_ENUMERATION_CAP,
};
pub use transfer::{transfer_experiment, TransferReport};
