//! Counterexample search over small model spaces, exhaustive or seeded
//! random. Every reported counterexample is re-checked before it is
//! returned.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::errors::{EvalError, ModelError};
use crate::model::{enumerate_models, random_model, Assignment, FiniteModel, ModelShape};
use crate::parser::render;
use crate::rational::Rational;
use crate::syntax::Formula;
use crate::threevalued::p1;
use crate::twovalued::{cond_prop, prop};

use super::families::{kleene_shapes, nine_shapes};

/// Cap on exhaustive enumeration, large enough for every documented search.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 22;

/// A property the search tries to refute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchProperty {
    /// `cond_prop(beta, alpha) <= prop(alpha -> beta)` whenever
    /// `prop(alpha) > 0`, over nine formula shapes. Expected: no
    /// counterexample exists.
    Theorem3Violation,
    /// `cond_prop(q, p) >= 1 - 2*(1 - prop(p -> q))` whenever
    /// `prop(p) > 0`. Fails once fewer than half the domain satisfies `p`.
    Theorem4StatedBound,
    /// `p1` of `p ~> q` equals `p1` of `!q ~> !p`. Fails because the two
    /// conditionals range over different definite cases.
    Contraposition3v,
    /// `p1(alpha) + p1(beta) >= p1(alpha | beta)` whenever all three are
    /// defined. Fails because the three values may have different
    /// denominators.
    P1Additivity,
}

impl SearchProperty {
    pub const ALL: [SearchProperty; 4] = [
        SearchProperty::Theorem3Violation,
        SearchProperty::Theorem4StatedBound,
        SearchProperty::Contraposition3v,
        SearchProperty::P1Additivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SearchProperty::Theorem3Violation => "theorem3_violation",
            SearchProperty::Theorem4StatedBound => "theorem4_stated_bound",
            SearchProperty::Contraposition3v => "contraposition_3v",
            SearchProperty::P1Additivity => "p1_additivity",
        }
    }

    /// Whether the property only speaks about classical models; searches in
    /// a three-valued space skip the rest.
    fn classical_only(self) -> bool {
        matches!(
            self,
            SearchProperty::Theorem3Violation | SearchProperty::Theorem4StatedBound
        )
    }
}

impl fmt::Display for SearchProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SearchProperty {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SearchProperty::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = SearchProperty::ALL.iter().map(|p| p.name()).collect();
                format!("unknown property `{s}`; known: {}", known.join(", "))
            })
    }
}

/// The model space to explore: two unary predicates `p`, `q` over domains
/// of size 1 up to `max_domain`, optionally with undefined tuple values.
#[derive(Clone, Copy, Debug)]
pub struct SearchSpace {
    pub max_domain: usize,
    pub allow_undef: bool,
}

/// Exhaustive enumeration (refused over `cap`) or seeded random sampling.
#[derive(Clone, Copy, Debug)]
pub enum SearchMode {
    Exhaustive { cap: u64 },
    Random { seed: u64, trials: u64 },
}

/// Result of a search: how far it looked and the first counterexample, if
/// any, re-verified before being reported.
#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub property: String,
    pub examined: u64,
    pub counterexample: Option<FiniteModel>,
    /// Human-readable account of what the counterexample violates.
    pub detail: Option<String>,
    /// Seed used, for random mode only.
    pub seed: Option<u64>,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        self.counterexample.is_some()
    }
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "property: {}", self.property)?;
        writeln!(f, "models examined: {}", self.examined)?;
        if let Some(seed) = self.seed {
            writeln!(f, "seed: {seed}")?;
        }
        match (&self.counterexample, &self.detail) {
            (Some(m), Some(detail)) => {
                writeln!(f, "counterexample: {detail}")?;
                write!(f, "{}", m.to_json())
            }
            _ => write!(f, "counterexample: none"),
        }
    }
}

/// Search the space for a model violating the property.
pub fn search_counterexample(
    property: SearchProperty,
    space: &SearchSpace,
    mode: &SearchMode,
) -> Result<SearchOutcome, ModelError> {
    let preds = [("p", 1), ("q", 1)];
    let mut examined = 0u64;
    match mode {
        SearchMode::Exhaustive { cap } => {
            for size in 1..=space.max_domain {
                let shape = ModelShape::new(size, &preds, space.allow_undef);
                for m in enumerate_models(&shape, *cap)? {
                    examined += 1;
                    if let Some(detail) = violation(property, &m)? {
                        return confirm(property, examined, m, detail, None);
                    }
                }
            }
            Ok(nothing(property, examined, None))
        }
        SearchMode::Random { seed, trials } => {
            for t in 0..*trials {
                let size = 1 + (t as usize) % space.max_domain.max(1);
                let shape = ModelShape::new(size, &preds, space.allow_undef);
                let m = random_model(&shape, seed.wrapping_add(t));
                examined += 1;
                if let Some(detail) = violation(property, &m)? {
                    return confirm(property, examined, m, detail, Some(*seed));
                }
            }
            Ok(nothing(property, examined, Some(*seed)))
        }
    }
}

fn confirm(
    property: SearchProperty,
    examined: u64,
    m: FiniteModel,
    detail: String,
    seed: Option<u64>,
) -> Result<SearchOutcome, ModelError> {
    let recheck = violation(property, &m)?;
    assert!(
        recheck.is_some(),
        "counterexample for {property} failed re-verification"
    );
    Ok(SearchOutcome {
        property: property.name().to_string(),
        examined,
        counterexample: Some(m),
        detail: Some(detail),
        seed,
    })
}

fn nothing(property: SearchProperty, examined: u64, seed: Option<u64>) -> SearchOutcome {
    SearchOutcome {
        property: property.name().to_string(),
        examined,
        counterexample: None,
        detail: None,
        seed,
    }
}

/// Whether the model violates the property; `Some` carries the account.
fn violation(property: SearchProperty, m: &FiniteModel) -> Result<Option<String>, EvalError> {
    if property.classical_only() && !m.is_classical() {
        return Ok(None);
    }
    let env = Assignment::new();
    let bound = ["x".to_string()];
    match property {
        SearchProperty::Theorem3Violation => {
            for alpha in nine_shapes("x") {
                for beta in nine_shapes("x") {
                    let pa = prop(m, &env, &alpha, &bound)?;
                    if pa.is_zero() {
                        continue;
                    }
                    let conditional = cond_prop(m, &env, &beta, &alpha, &bound)?;
                    let implication = prop(
                        m,
                        &env,
                        &Formula::Imp(Box::new(alpha.clone()), Box::new(beta.clone())),
                        &bound,
                    )?;
                    if conditional > implication {
                        return Ok(Some(format!(
                            "with alpha = {}, beta = {}: conditional {} exceeds implication proportion {}",
                            render(&alpha),
                            render(&beta),
                            conditional,
                            implication
                        )));
                    }
                }
            }
            Ok(None)
        }
        SearchProperty::Theorem4StatedBound => {
            let alpha = Formula::va("p", "x");
            let beta = Formula::va("q", "x");
            let pa = prop(m, &env, &alpha, &bound)?;
            if pa.is_zero() {
                return Ok(None);
            }
            let implication = prop(
                m,
                &env,
                &Formula::Imp(Box::new(alpha.clone()), Box::new(beta.clone())),
                &bound,
            )?;
            let eps1 = Rational::one() - implication;
            let lower = Rational::one() - Rational::from_int(2) * eps1.clone();
            let conditional = cond_prop(m, &env, &beta, &alpha, &bound)?;
            if conditional < lower {
                let eps2 = Rational::one() - pa;
                return Ok(Some(format!(
                    "conditional {conditional} below the stated lower bound {lower} \
                     (eps1 = {eps1}, eps2 = {eps2})"
                )));
            }
            Ok(None)
        }
        SearchProperty::Contraposition3v => {
            let p = Formula::va("p", "x");
            let q = Formula::va("q", "x");
            let direct = p1(m, &env, &p.clone().cond_conn(q.clone()), &bound)?;
            let contraposed = p1(m, &env, &q.not().cond_conn(p.not()), &bound)?;
            if direct != contraposed {
                return Ok(Some(format!(
                    "p1 of p ~> q is {direct} but p1 of !q ~> !p is {contraposed}"
                )));
            }
            Ok(None)
        }
        SearchProperty::P1Additivity => {
            for alpha in kleene_shapes("x") {
                for beta in kleene_shapes("x") {
                    let a = p1(m, &env, &alpha, &bound)?;
                    let b = p1(m, &env, &beta, &bound)?;
                    let disjunction = alpha.clone().or(beta.clone());
                    let o = p1(m, &env, &disjunction, &bound)?;
                    let (Some(a), Some(b), Some(o)) =
                        (a.as_rational(), b.as_rational(), o.as_rational())
                    else {
                        continue;
                    };
                    if a.clone() + b.clone() < o.clone() {
                        return Ok(Some(format!(
                            "p1({}) + p1({}) = {} + {} falls below p1({}) = {}",
                            render(&alpha),
                            render(&beta),
                            a,
                            b,
                            render(&disjunction),
                            o
                        )));
                    }
                }
            }
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Assignment;
    use crate::threevalued::P1Value;

    fn exhaustive(property: SearchProperty, max_domain: usize, allow_undef: bool) -> SearchOutcome {
        search_counterexample(
            property,
            &SearchSpace {
                max_domain,
                allow_undef,
            },
            &SearchMode::Exhaustive {
                cap: DEFAULT_ENUMERATION_CAP,
            },
        )
        .unwrap()
    }

    #[test]
    fn conditional_never_exceeds_implication_proportion() {
        let outcome = exhaustive(SearchProperty::Theorem3Violation, 3, false);
        assert!(!outcome.found());
        assert_eq!(outcome.examined, 4 + 16 + 64);
    }

    #[test]
    fn stated_lower_bound_fails_once_antecedent_is_rare() {
        let outcome = exhaustive(SearchProperty::Theorem4StatedBound, 5, false);
        assert!(outcome.found());
        let m = outcome.counterexample.unwrap();
        let env = Assignment::new();
        let bound = ["x".to_string()];
        let pa = prop(&m, &env, &Formula::va("p", "x"), &bound).unwrap();
        assert!(!pa.is_zero());
        assert!(pa < Rational::new(1, 2));
    }

    #[test]
    fn conditional_connective_does_not_contrapose() {
        let outcome = exhaustive(SearchProperty::Contraposition3v, 3, true);
        assert!(outcome.found());
        let m = outcome.counterexample.unwrap();
        let env = Assignment::new();
        let bound = ["x".to_string()];
        let p = Formula::va("p", "x");
        let q = Formula::va("q", "x");
        let direct = p1(&m, &env, &p.clone().cond_conn(q.clone()), &bound).unwrap();
        let contraposed = p1(&m, &env, &q.not().cond_conn(p.not()), &bound).unwrap();
        assert_ne!(direct, contraposed);
    }

    #[test]
    fn p1_union_bound_fails_in_the_three_valued_semantics() {
        let outcome = exhaustive(SearchProperty::P1Additivity, 2, true);
        assert!(outcome.found());
        assert!(outcome.detail.unwrap().contains("falls below"));
    }

    #[test]
    fn classical_only_properties_skip_partial_models() {
        let outcome = exhaustive(SearchProperty::Theorem3Violation, 2, true);
        assert!(!outcome.found());
        assert_eq!(outcome.examined, 9 + 81);
    }

    #[test]
    fn random_mode_is_deterministic_in_the_seed() {
        let space = SearchSpace {
            max_domain: 3,
            allow_undef: true,
        };
        let mode = SearchMode::Random {
            seed: 17,
            trials: 200,
        };
        let a = search_counterexample(SearchProperty::Contraposition3v, &space, &mode).unwrap();
        let b = search_counterexample(SearchProperty::Contraposition3v, &space, &mode).unwrap();
        assert_eq!(a.examined, b.examined);
        assert_eq!(a.detail, b.detail);
        assert_eq!(a.seed, Some(17));
    }

    #[test]
    fn oversized_exhaustive_search_is_refused() {
        let err = search_counterexample(
            SearchProperty::Theorem3Violation,
            &SearchSpace {
                max_domain: 40,
                allow_undef: false,
            },
            &SearchMode::Exhaustive { cap: 1000 },
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::Budget { .. }));
    }

    #[test]
    fn property_names_round_trip() {
        for p in SearchProperty::ALL {
            assert_eq!(p.name().parse::<SearchProperty>().unwrap(), p);
        }
        assert!("no_such_property".parse::<SearchProperty>().is_err());
    }

    #[test]
    fn contraposition_fails_even_without_undefined_tuples() {
        use crate::truth::Truth3;

        let mut m = FiniteModel::new(vec!["a".into(), "b".into()]).unwrap();
        m.declare("p", 1, Truth3::True).unwrap();
        m.declare("q", 1, Truth3::False).unwrap();
        m.set("q", &["a"], Truth3::True).unwrap();
        let env = Assignment::new();
        let bound = ["x".to_string()];
        let p = Formula::va("p", "x");
        let q = Formula::va("q", "x");
        let direct = p1(&m, &env, &p.clone().cond_conn(q.clone()), &bound).unwrap();
        let contraposed = p1(&m, &env, &q.not().cond_conn(p.not()), &bound).unwrap();
        assert_eq!(direct, P1Value::Defined(Rational::new(1, 2)));
        assert_eq!(contraposed, P1Value::Defined(Rational::zero()));
    }
}
