//! Models and knowledge bases bundled into the library so that every
//! reproduction runs offline with zero inputs.

use crate::deduction::{parse_kb, Fact};
use crate::model::{load_model, load_worlds, FiniteModel, WorldsEnsemble};

/// Hundred-person population behind the courtroom argument: `X1` holds of
/// the first ninety-five elements, `X3` of the first ninety-four, `X2` of
/// exactly the ninety-fifth, and `X4` of the first ninety-five.
pub const COURT_MODEL_JSON: &str = include_str!("../../models/court.json");

/// Premises of the courtroom argument in the knowledge-base file format.
pub const COURT_KB_TEXT: &str = include_str!("../../models/court.kb");

/// Ten equally weighted worlds over ten birds; in world `k` every bird
/// flies except `bk`.
pub const BIRDS_ENSEMBLE_JSON: &str = include_str!("../../models/birds_ensemble.json");

/// Two-element model where `m` holds of one element and `p` of none, so
/// `m ~> !p` is vacuously certain while a non-`m` element exists.
pub const VACUOUS_WITNESS_JSON: &str = include_str!("../../models/vacuous_witness.json");

/// Twenty-element model where `p`, `q`, `v` hold everywhere and `z` fails
/// at exactly one element; the nested-conditional sentence scores 19/20.
pub const NESTED_WITNESS_JSON: &str = include_str!("../../models/nested_witness.json");

/// Two-element model where `p` and `q` hold of nothing, so conditioning on
/// `p` has no definite cases and `P1 x. p(x) ~> q(x)` is undefined.
pub const NO_ANTECEDENT_JSON: &str = include_str!("../../models/no_antecedent.json");

pub fn court_model() -> FiniteModel {
    load_model(COURT_MODEL_JSON).expect("bundled court model is well formed")
}

pub fn court_kb() -> Vec<Fact> {
    parse_kb(COURT_KB_TEXT).expect("bundled court knowledge base is well formed")
}

pub fn birds_ensemble() -> WorldsEnsemble {
    load_worlds(BIRDS_ENSEMBLE_JSON).expect("bundled birds ensemble is well formed")
}

pub fn vacuous_witness() -> FiniteModel {
    load_model(VACUOUS_WITNESS_JSON).expect("bundled vacuous witness is well formed")
}

pub fn nested_witness() -> FiniteModel {
    load_model(NESTED_WITNESS_JSON).expect("bundled nested witness is well formed")
}

pub fn no_antecedent_model() -> FiniteModel {
    load_model(NO_ANTECEDENT_JSON).expect("bundled no-antecedent model is well formed")
}
