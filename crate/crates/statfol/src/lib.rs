//! Exact proportion-based probability over finite first-order models.
//!
//! The library evaluates a first-order language extended with proportion
//! quantifiers (`[body]_{x}`, `[body given cond]_{x}`) under exact rational
//! arithmetic, both classically and under a three-valued semantics with a
//! conditional connective (`~>`) and definiteness quantifiers (`P1`, `P2`).
//! On top of the evaluators sit a small forward-chaining derivation engine
//! for probability bounds, counterexample search over model families, and a
//! set of reproducible numeric checks on bundled witness models.
//!
//! See the `examples/` directory for runnable tours of each capability.

pub mod deduction;
pub mod errors;
pub mod model;
pub mod parser;
pub mod rational;
pub mod syntax;
pub mod threevalued;
pub mod truth;
pub mod twovalued;
pub mod verifier;

pub use deduction::{Derivation, DeriveOutcome, Fact, FactTerm, RuleName, SoundnessReport};
pub use errors::{EvalError, LineError, ModelError, ParseError, RuleError, SourceSpan};
pub use model::{Assignment, FiniteModel, WorldsEnsemble};
pub use rational::Rational;
pub use syntax::{AtomArg, Formula, ProbTerm, Rel};
pub use threevalued::P1Value;
pub use truth::Truth3;
pub use verifier::{ReproName, ReproReport, SearchOutcome, SearchProperty, TransferReport};
