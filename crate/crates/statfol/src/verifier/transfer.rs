//! The implication-versus-conditional transfer experiment: evaluate an
//! implication proportion and a conditional proportion on a model, then
//! again on the model restricted to the condition's subpopulation.
//!
//! The conditional proportion is invariant under the restriction (it only
//! ever looks at the subpopulation), while the implication proportion is
//! not: its value depends on how much of the universe falsifies the
//! antecedent.

use std::fmt;

use serde::Serialize;

use crate::errors::ModelError;
use crate::model::{restrict, Assignment, FiniteModel};
use crate::rational::Rational;
use crate::syntax::Formula;
use crate::twovalued::{cond_prop, prop};

/// The four proportions of the experiment plus the locality verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransferReport {
    /// `[alpha -> beta]_{v}` on the full model.
    pub implication: Rational,
    /// `[beta | alpha]_{v}` on the full model.
    pub conditional: Rational,
    /// `[alpha -> beta]_{v}` on the model restricted to `alpha`.
    pub restricted_implication: Rational,
    /// `[beta]_{v}` on the model restricted to `alpha`.
    pub restricted_consequent: Rational,
    /// Whether the conditional proportion equals the restricted consequent
    /// proportion exactly.
    pub locality_holds: bool,
}

impl fmt::Display for TransferReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "implication on full model:        {}", self.implication)?;
        writeln!(f, "conditional on full model:        {}", self.conditional)?;
        writeln!(
            f,
            "implication on restricted model:  {}",
            self.restricted_implication
        )?;
        writeln!(
            f,
            "consequent on restricted model:   {}",
            self.restricted_consequent
        )?;
        write!(
            f,
            "conditional equals restricted consequent: {}",
            if self.locality_holds { "yes" } else { "no" }
        )
    }
}

/// Evaluate the transfer quadruple for `alpha`, `beta` with `v` ranging
/// over the domain. Fails with [`ModelError::EmptyRestriction`] when
/// nothing satisfies `alpha`.
pub fn transfer_experiment(
    m: &FiniteModel,
    alpha: &Formula,
    beta: &Formula,
    v: &str,
) -> Result<TransferReport, ModelError> {
    let env = Assignment::new();
    let bound = [v.to_string()];
    let implication = Formula::Imp(Box::new(alpha.clone()), Box::new(beta.clone()));

    let full_implication = prop(m, &env, &implication, &bound)?;
    let full_conditional = cond_prop(m, &env, beta, alpha, &bound)?;

    let sub = restrict(m, alpha, v)?;
    let restricted_implication = prop(&sub, &env, &implication, &bound)?;
    let restricted_consequent = prop(&sub, &env, beta, &bound)?;

    let locality_holds = full_conditional == restricted_consequent;
    Ok(TransferReport {
        implication: full_implication,
        conditional: full_conditional,
        restricted_implication,
        restricted_consequent,
        locality_holds,
    })
}
