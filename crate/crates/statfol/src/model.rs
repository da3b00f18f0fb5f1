//! Finite models with three-valued interpretations, weighted worlds
//! ensembles, restriction to a subpopulation, and model generation.
//!
//! A model is a nonempty ordered domain of named constants plus, per
//! predicate, a table of explicitly valued tuples and a default value for
//! every unlisted tuple (`F` keeps classical models compact, `U` suits
//! partial ones). Models are immutable once built; every transformation
//! returns a new model.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::errors::{EvalError, ModelError};
use crate::parser::render;
use crate::rational::Rational;
use crate::syntax::{free_variables, Formula};
use crate::truth::Truth3;
use crate::twovalued::eval2;

/// Environment binding free variables to domain constants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    map: BTreeMap<String, String>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn bind(mut self, var: impl Into<String>, constant: impl Into<String>) -> Self {
        self.map.insert(var.into(), constant.into());
        self
    }

    pub fn get(&self, var: &str) -> Option<&str> {
        self.map.get(var).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

#[derive(Clone, Debug, PartialEq)]
struct PredInterp {
    arity: usize,
    default: Truth3,
    table: HashMap<Vec<u32>, Truth3>,
}

/// A finite first-order model.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteModel {
    domain: Vec<String>,
    index: HashMap<String, u32>,
    preds: BTreeMap<String, PredInterp>,
}

impl FiniteModel {
    /// A model over the given domain with no predicates yet.
    pub fn new(domain: Vec<String>) -> Result<Self, ModelError> {
        if domain.is_empty() {
            return Err(ModelError::Format("domain must be nonempty".into()));
        }
        let mut index = HashMap::new();
        for (i, c) in domain.iter().enumerate() {
            if index.insert(c.clone(), i as u32).is_some() {
                return Err(ModelError::Format(format!(
                    "duplicate domain constant `{c}`"
                )));
            }
        }
        Ok(FiniteModel {
            domain,
            index,
            preds: BTreeMap::new(),
        })
    }

    /// Add a predicate symbol; every tuple initially takes `default`.
    pub fn declare(
        &mut self,
        name: impl Into<String>,
        arity: usize,
        default: Truth3,
    ) -> Result<(), ModelError> {
        let name = name.into();
        if self.preds.contains_key(&name) {
            return Err(ModelError::Format(format!(
                "predicate `{name}` declared twice"
            )));
        }
        self.preds.insert(
            name,
            PredInterp {
                arity,
                default,
                table: HashMap::new(),
            },
        );
        Ok(())
    }

    /// Set the value of one tuple, named by constants.
    pub fn set(&mut self, pred: &str, tuple: &[&str], value: Truth3) -> Result<(), ModelError> {
        let mut idx = Vec::with_capacity(tuple.len());
        for c in tuple {
            match self.index.get(*c) {
                Some(i) => idx.push(*i),
                None => {
                    return Err(ModelError::Domain {
                        pred: pred.to_string(),
                        constant: (*c).to_string(),
                    })
                }
            }
        }
        let interp = self
            .preds
            .get_mut(pred)
            .ok_or_else(|| ModelError::Format(format!("predicate `{pred}` is not declared")))?;
        if idx.len() != interp.arity {
            return Err(ModelError::Arity {
                pred: pred.to_string(),
                tuple: tuple.iter().map(|s| s.to_string()).collect(),
                expected: interp.arity,
                got: idx.len(),
            });
        }
        interp.table.insert(idx, value);
        Ok(())
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn domain_size(&self) -> usize {
        self.domain.len()
    }

    pub fn constant_index(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn constant_name(&self, idx: u32) -> &str {
        &self.domain[idx as usize]
    }

    /// Predicate symbols with their arities, in name order.
    pub fn predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.preds.iter().map(|(n, p)| (n.as_str(), p.arity))
    }

    pub fn arity_of(&self, pred: &str) -> Option<usize> {
        self.preds.get(pred).map(|p| p.arity)
    }

    /// Truth value of a predicate on a tuple of domain indices.
    pub fn truth_at(&self, pred: &str, tuple: &[u32]) -> Result<Truth3, EvalError> {
        let interp = self
            .preds
            .get(pred)
            .ok_or_else(|| EvalError::UnknownPredicate(pred.to_string()))?;
        if tuple.len() != interp.arity {
            return Err(EvalError::Arity {
                pred: pred.to_string(),
                expected: interp.arity,
                got: tuple.len(),
            });
        }
        Ok(interp.table.get(tuple).copied().unwrap_or(interp.default))
    }

    /// True when no tuple, listed or defaulted, has the value `U`.
    pub fn is_classical(&self) -> bool {
        self.preds.values().all(|p| {
            if p.table.values().any(|v| *v == Truth3::Undef) {
                return false;
            }
            if p.default != Truth3::Undef {
                return true;
            }
            match (self.domain.len() as u128).checked_pow(p.arity as u32) {
                Some(total) => p.table.len() as u128 == total,
                None => false,
            }
        })
    }
}

fn default_false() -> Truth3 {
    Truth3::False
}

#[derive(Serialize, Deserialize)]
struct PredDoc {
    arity: usize,
    #[serde(default = "default_false")]
    default: Truth3,
    #[serde(rename = "true", default, skip_serializing_if = "Vec::is_empty")]
    true_tuples: Vec<Vec<String>>,
    #[serde(rename = "false", default, skip_serializing_if = "Vec::is_empty")]
    false_tuples: Vec<Vec<String>>,
    #[serde(rename = "undef", default, skip_serializing_if = "Vec::is_empty")]
    undef_tuples: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct ModelDoc {
    domain: Vec<String>,
    #[serde(default)]
    predicates: BTreeMap<String, PredDoc>,
}

#[derive(Serialize, Deserialize)]
struct WorldDoc {
    weight: Rational,
    model: ModelDoc,
}

#[derive(Serialize, Deserialize)]
struct EnsembleDoc {
    worlds: Vec<WorldDoc>,
}

fn doc_to_model(doc: ModelDoc) -> Result<FiniteModel, ModelError> {
    let mut m = FiniteModel::new(doc.domain)?;
    for (name, pred) in doc.predicates {
        m.declare(&name, pred.arity, pred.default)?;
        let mut seen: HashSet<Vec<String>> = HashSet::new();
        for (tuples, value) in [
            (&pred.true_tuples, Truth3::True),
            (&pred.false_tuples, Truth3::False),
            (&pred.undef_tuples, Truth3::Undef),
        ] {
            for tuple in tuples {
                if !seen.insert(tuple.clone()) {
                    return Err(ModelError::Format(format!(
                        "tuple {tuple:?} for predicate `{name}` is listed more than once"
                    )));
                }
                let refs: Vec<&str> = tuple.iter().map(String::as_str).collect();
                m.set(&name, &refs, value)?;
            }
        }
    }
    Ok(m)
}

fn model_to_doc(m: &FiniteModel) -> ModelDoc {
    let mut predicates = BTreeMap::new();
    for (name, interp) in &m.preds {
        let mut by_value: [Vec<Vec<u32>>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for (tuple, value) in &interp.table {
            let slot = match value {
                Truth3::True => 0,
                Truth3::False => 1,
                Truth3::Undef => 2,
            };
            by_value[slot].push(tuple.clone());
        }
        for list in &mut by_value {
            list.sort();
        }
        let names = |list: &[Vec<u32>]| -> Vec<Vec<String>> {
            list.iter()
                .map(|t| t.iter().map(|i| m.domain[*i as usize].clone()).collect())
                .collect()
        };
        predicates.insert(
            name.clone(),
            PredDoc {
                arity: interp.arity,
                default: interp.default,
                true_tuples: names(&by_value[0]),
                false_tuples: names(&by_value[1]),
                undef_tuples: names(&by_value[2]),
            },
        );
    }
    ModelDoc {
        domain: m.domain.clone(),
        predicates,
    }
}

/// Parse the model file format.
pub fn load_model(text: &str) -> Result<FiniteModel, ModelError> {
    let doc: ModelDoc =
        serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))?;
    doc_to_model(doc)
}

impl FiniteModel {
    /// Serialize to the model file format. Deterministic: predicates in name
    /// order, tuples sorted by domain position.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&model_to_doc(self)).expect("model serialization")
    }
}

impl Serialize for FiniteModel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        model_to_doc(self).serialize(serializer)
    }
}

/// A weighted, nonempty set of possible worlds.
#[derive(Clone, Debug, PartialEq)]
pub struct WorldsEnsemble {
    worlds: Vec<(Rational, FiniteModel)>,
}

impl WorldsEnsemble {
    pub fn new(worlds: Vec<(Rational, FiniteModel)>) -> Result<Self, ModelError> {
        if worlds.is_empty() {
            return Err(ModelError::Format(
                "ensemble must have at least one world".into(),
            ));
        }
        let mut total = Rational::zero();
        for (w, _) in &worlds {
            if w.is_negative() || w.is_zero() {
                return Err(ModelError::Format(format!(
                    "world weight {w} is not positive"
                )));
            }
            total = total + w.clone();
        }
        if !total.is_one() {
            return Err(ModelError::Format(format!(
                "world weights sum to {total}, expected 1"
            )));
        }
        Ok(WorldsEnsemble { worlds })
    }

    pub fn worlds(&self) -> &[(Rational, FiniteModel)] {
        &self.worlds
    }

    pub fn to_json(&self) -> String {
        let doc = EnsembleDoc {
            worlds: self
                .worlds
                .iter()
                .map(|(w, m)| WorldDoc {
                    weight: w.clone(),
                    model: model_to_doc(m),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("ensemble serialization")
    }
}

/// Parse the worlds ensemble file format.
pub fn load_worlds(text: &str) -> Result<WorldsEnsemble, ModelError> {
    let doc: EnsembleDoc =
        serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))?;
    let mut worlds = Vec::with_capacity(doc.worlds.len());
    for w in doc.worlds {
        worlds.push((w.weight, doc_to_model(w.model)?));
    }
    WorldsEnsemble::new(worlds)
}

/// Probability that a closed classical sentence holds in a random world.
pub fn world_prob(e: &WorldsEnsemble, sentence: &Formula) -> Result<Rational, ModelError> {
    let free = free_variables(sentence);
    if !free.is_empty() {
        let names: Vec<String> = free.into_iter().collect();
        return Err(EvalError::OpenFormula(names.join(", ")).into());
    }
    let mut total = Rational::zero();
    let env = Assignment::new();
    for (w, m) in &e.worlds {
        if eval2(m, &env, sentence)? {
            total = total + w.clone();
        }
    }
    Ok(total)
}

/// Keep exactly the domain elements satisfying `condition` (with `var`
/// ranging over them); interpretations are cut down to the surviving tuples.
pub fn restrict(
    m: &FiniteModel,
    condition: &Formula,
    var: &str,
) -> Result<FiniteModel, ModelError> {
    let mut keep: Vec<u32> = Vec::new();
    for (i, c) in m.domain.iter().enumerate() {
        let env = Assignment::new().bind(var, c.clone());
        if eval2(m, &env, condition)? {
            keep.push(i as u32);
        }
    }
    if keep.is_empty() {
        return Err(ModelError::EmptyRestriction(render(condition)));
    }
    let mut remap: HashMap<u32, u32> = HashMap::new();
    for (new_idx, old_idx) in keep.iter().enumerate() {
        remap.insert(*old_idx, new_idx as u32);
    }
    let domain: Vec<String> = keep.iter().map(|i| m.domain[*i as usize].clone()).collect();
    let mut out = FiniteModel::new(domain)?;
    for (name, interp) in &m.preds {
        out.declare(name, interp.arity, interp.default)?;
        let table = &mut out.preds.get_mut(name).expect("just declared").table;
        for (tuple, value) in &interp.table {
            if let Some(new_tuple) = tuple
                .iter()
                .map(|i| remap.get(i).copied())
                .collect::<Option<Vec<u32>>>()
            {
                table.insert(new_tuple, *value);
            }
        }
    }
    Ok(out)
}

/// Shape of a model family: domain size, predicate arities, and whether
/// tuples may take the undefined value.
#[derive(Clone, Debug)]
pub struct ModelShape {
    pub domain_size: usize,
    pub predicates: Vec<(String, usize)>,
    pub allow_undef: bool,
}

impl ModelShape {
    pub fn new(domain_size: usize, predicates: &[(&str, usize)], allow_undef: bool) -> Self {
        ModelShape {
            domain_size,
            predicates: predicates
                .iter()
                .map(|(n, a)| (n.to_string(), *a))
                .collect(),
            allow_undef,
        }
    }

    fn constants(&self) -> Vec<String> {
        (1..=self.domain_size).map(|i| format!("e{i}")).collect()
    }
}

/// All tuples of the given arity over domain indices `0..size`, in
/// lexicographic order. Arity 0 yields the single empty tuple.
pub fn tuples(size: usize, arity: usize) -> impl Iterator<Item = Vec<u32>> {
    TupleIter {
        size: size as u32,
        current: Some(vec![0; arity]),
        started: false,
    }
}

struct TupleIter {
    size: u32,
    current: Option<Vec<u32>>,
    started: bool,
}

impl Iterator for TupleIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.size == 0 {
            return None;
        }
        let current = self.current.as_mut()?;
        if !self.started {
            self.started = true;
            return Some(current.clone());
        }
        let mut pos = current.len();
        while pos > 0 {
            pos -= 1;
            if current[pos] + 1 < self.size {
                current[pos] += 1;
                return Some(current.clone());
            }
            current[pos] = 0;
        }
        self.current = None;
        None
    }
}

/// Uniform random model over the shape, deterministic in the seed: every
/// tuple independently draws from `{T,F}`, or `{T,F,U}` when undefined
/// values are allowed.
pub fn random_model(shape: &ModelShape, seed: u64) -> FiniteModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = FiniteModel::new(shape.constants()).expect("shape has a nonempty domain");
    for (name, arity) in &shape.predicates {
        m.declare(name, *arity, Truth3::False)
            .expect("fresh predicate");
        let interp = m.preds.get_mut(name).expect("just declared");
        let sides = if shape.allow_undef { 3 } else { 2 };
        for tuple in tuples(shape.domain_size, *arity) {
            let value = match rng.gen_range(0..sides) {
                0 => Truth3::False,
                1 => Truth3::True,
                _ => Truth3::Undef,
            };
            if value != Truth3::False {
                interp.table.insert(tuple, value);
            }
        }
    }
    m
}

/// Closed-form size of the model family: `v^(Σ |D|^arity)`.
pub fn count_models(shape: &ModelShape) -> BigUint {
    let v: BigUint = if shape.allow_undef { 3u32 } else { 2u32 }.into();
    let mut total = BigUint::from(1u32);
    for (_, arity) in &shape.predicates {
        let per = BigUint::from(shape.domain_size as u64).pow(*arity as u32);
        let mut exp = per;
        let mut factor = BigUint::from(1u32);
        // v^per via repeated squaring on the BigUint exponent.
        let mut base = v.clone();
        while exp > BigUint::from(0u32) {
            if &exp % 2u32 == BigUint::from(1u32) {
                factor *= &base;
            }
            exp /= 2u32;
            if exp > BigUint::from(0u32) {
                base = &base * &base;
            }
        }
        total *= factor;
    }
    total
}

/// Every model over the shape, exactly once. Refuses up front when the
/// family is larger than `cap`.
pub fn enumerate_models(shape: &ModelShape, cap: u64) -> Result<ModelEnumeration, ModelError> {
    if shape.domain_size == 0 {
        return Err(ModelError::Format("domain must be nonempty".into()));
    }
    let count = count_models(shape);
    if count > BigUint::from(cap) {
        return Err(ModelError::Budget {
            count: count.to_string(),
            cap,
        });
    }
    let mut slots = Vec::new();
    for (name, arity) in &shape.predicates {
        for tuple in tuples(shape.domain_size, *arity) {
            slots.push((name.clone(), tuple));
        }
    }
    Ok(ModelEnumeration {
        shape: shape.clone(),
        slots,
        values: None,
        done: false,
    })
}

/// Iterator over a finite model family.
pub struct ModelEnumeration {
    shape: ModelShape,
    slots: Vec<(String, Vec<u32>)>,
    values: Option<Vec<u8>>,
    done: bool,
}

impl ModelEnumeration {
    fn build(&self) -> FiniteModel {
        let values = self.values.as_ref().expect("active enumeration");
        let mut m = FiniteModel::new(self.shape.constants()).expect("nonempty domain");
        for (name, arity) in &self.shape.predicates {
            m.declare(name, *arity, Truth3::False)
                .expect("fresh predicate");
        }
        for ((name, tuple), value) in self.slots.iter().zip(values) {
            let truth = match value {
                0 => Truth3::False,
                1 => Truth3::True,
                _ => Truth3::Undef,
            };
            if truth != Truth3::False {
                m.preds
                    .get_mut(name)
                    .expect("declared above")
                    .table
                    .insert(tuple.clone(), truth);
            }
        }
        m
    }
}

impl Iterator for ModelEnumeration {
    type Item = FiniteModel;

    fn next(&mut self) -> Option<FiniteModel> {
        if self.done {
            return None;
        }
        // During iteration `values` is in [0, v)^slots.
        if let Some(values) = self.values.as_mut() {
            let sides = if self.shape.allow_undef { 3 } else { 2 };
            let mut carried = true;
            for slot in values.iter_mut().rev() {
                if *slot + 1 < sides {
                    *slot += 1;
                    carried = false;
                    break;
                }
                *slot = 0;
            }
            if carried {
                self.done = true;
                return None;
            }
        } else {
            self.values = Some(vec![0; self.slots.len()]);
        }
        Some(self.build())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    const SMALL: &str = r#"{
        "domain": ["a", "b"],
        "predicates": {
            "p": {"arity": 1, "default": "F", "true": [["a"]]},
            "r": {"arity": 2, "default": "F", "true": [["a", "b"]]}
        }
    }"#;

    #[test]
    fn load_and_query() {
        let m = load_model(SMALL).unwrap();
        assert_eq!(m.domain_size(), 2);
        assert_eq!(m.truth_at("p", &[0]).unwrap(), Truth3::True);
        assert_eq!(m.truth_at("p", &[1]).unwrap(), Truth3::False);
        assert_eq!(m.truth_at("r", &[0, 1]).unwrap(), Truth3::True);
        assert_eq!(m.truth_at("r", &[1, 0]).unwrap(), Truth3::False);
        assert!(m.is_classical());
        assert!(matches!(
            m.truth_at("nope", &[0]),
            Err(EvalError::UnknownPredicate(_))
        ));
        assert!(matches!(
            m.truth_at("p", &[0, 1]),
            Err(EvalError::Arity { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let m = load_model(SMALL).unwrap();
        let again = load_model(&m.to_json()).unwrap();
        assert_eq!(m, again);
        assert_eq!(m.to_json(), again.to_json());
    }

    #[test]
    fn empty_domain_is_rejected() {
        let err = load_model(r#"{"domain": [], "predicates": {}}"#).unwrap_err();
        assert!(matches!(err, ModelError::Format(_)));
    }

    #[test]
    fn unknown_constant_is_rejected() {
        let text = r#"{"domain": ["a"], "predicates": {"p": {"arity": 1, "true": [["zz"]]}}}"#;
        assert!(matches!(
            load_model(text).unwrap_err(),
            ModelError::Domain { .. }
        ));
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let text = r#"{"domain": ["a"], "predicates": {"p": {"arity": 2, "true": [["a"]]}}}"#;
        assert!(matches!(
            load_model(text).unwrap_err(),
            ModelError::Arity { .. }
        ));
    }

    #[test]
    fn contradictory_listing_is_rejected() {
        let text = r#"{
            "domain": ["a"],
            "predicates": {"p": {"arity": 1, "true": [["a"]], "false": [["a"]]}}
        }"#;
        assert!(matches!(
            load_model(text).unwrap_err(),
            ModelError::Format(_)
        ));
    }

    #[test]
    fn classicality_accounts_for_defaults() {
        let explicit_undef = r#"{
            "domain": ["a"],
            "predicates": {"p": {"arity": 1, "undef": [["a"]]}}
        }"#;
        assert!(!load_model(explicit_undef).unwrap().is_classical());

        let default_undef_uncovered = r#"{
            "domain": ["a", "b"],
            "predicates": {"p": {"arity": 1, "default": "U", "true": [["a"]]}}
        }"#;
        assert!(!load_model(default_undef_uncovered).unwrap().is_classical());

        let default_undef_covered = r#"{
            "domain": ["a"],
            "predicates": {"p": {"arity": 1, "default": "U", "true": [["a"]]}}
        }"#;
        assert!(load_model(default_undef_covered).unwrap().is_classical());
    }

    #[test]
    fn random_models_are_seed_deterministic() {
        let shape = ModelShape::new(3, &[("p", 1), ("r", 2)], false);
        let a = random_model(&shape, 42);
        let b = random_model(&shape, 42);
        assert_eq!(a, b);
        let c = random_model(&shape, 43);
        assert!(a != c || a.to_json() == c.to_json());
        assert!(a.is_classical());
        assert_eq!(a.domain(), ["e1", "e2", "e3"]);
    }

    #[test]
    fn random_model_covers_every_tuple() {
        let shape = ModelShape::new(2, &[("r", 2)], true);
        let m = random_model(&shape, 7);
        for t in tuples(2, 2) {
            m.truth_at("r", &t).unwrap();
        }
    }

    #[test]
    fn single_element_family_has_two_members() {
        let shape = ModelShape::new(1, &[("p", 1)], false);
        let all: Vec<FiniteModel> = enumerate_models(&shape, 10).unwrap().collect();
        assert_eq!(all.len(), 2);
        let m = random_model(&shape, 9);
        assert!(all.contains(&m));
    }

    #[test]
    fn enumeration_matches_closed_form() {
        let shape = ModelShape::new(2, &[("p", 1), ("q", 1)], false);
        assert_eq!(count_models(&shape), BigUint::from(16u32));
        let all: Vec<FiniteModel> = enumerate_models(&shape, 100).unwrap().collect();
        assert_eq!(all.len(), 16);
        let distinct: HashSet<String> = all.iter().map(FiniteModel::to_json).collect();
        assert_eq!(distinct.len(), 16);

        let tri = ModelShape::new(1, &[("p", 1)], true);
        assert_eq!(count_models(&tri), BigUint::from(3u32));
        assert_eq!(enumerate_models(&tri, 10).unwrap().count(), 3);
    }

    #[test]
    fn enumeration_respects_budget() {
        let shape = ModelShape::new(3, &[("r", 2)], false);
        match enumerate_models(&shape, 100) {
            Err(ModelError::Budget { count, cap }) => {
                assert_eq!(count, "512");
                assert_eq!(cap, 100);
            }
            other => panic!("expected budget refusal, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn zero_arity_predicates_enumerate() {
        let shape = ModelShape::new(2, &[("sunny", 0)], false);
        let all: Vec<FiniteModel> = enumerate_models(&shape, 10).unwrap().collect();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].truth_at("sunny", &[]).unwrap(), Truth3::False);
        assert_eq!(all[1].truth_at("sunny", &[]).unwrap(), Truth3::True);
    }

    #[test]
    fn restriction_keeps_satisfying_elements() {
        let m = load_model(SMALL).unwrap();
        let r = restrict(&m, &parse("p(x)").unwrap(), "x").unwrap();
        assert_eq!(r.domain(), ["a"]);
        assert_eq!(r.truth_at("p", &[0]).unwrap(), Truth3::True);
        assert_eq!(r.truth_at("r", &[0, 0]).unwrap(), Truth3::False);

        let all = restrict(&m, &parse("p(x) | !p(x)").unwrap(), "x").unwrap();
        assert_eq!(all.domain(), m.domain());

        let err = restrict(&m, &parse("p(x) & !p(x)").unwrap(), "x").unwrap_err();
        assert!(matches!(err, ModelError::EmptyRestriction(_)));
    }

    #[test]
    fn ensemble_weights_must_sum_to_one() {
        let world = |t: bool| {
            let mut m = FiniteModel::new(vec!["a".into()]).unwrap();
            m.declare("p", 1, Truth3::False).unwrap();
            if t {
                m.set("p", &["a"], Truth3::True).unwrap();
            }
            m
        };
        assert!(WorldsEnsemble::new(vec![
            (Rational::new(1, 2), world(true)),
            (Rational::new(1, 2), world(false)),
        ])
        .is_ok());
        assert!(WorldsEnsemble::new(vec![(Rational::new(1, 2), world(true))]).is_err());
        assert!(WorldsEnsemble::new(vec![]).is_err());
        assert!(WorldsEnsemble::new(vec![
            (Rational::new(3, 2), world(true)),
            (Rational::new(-1, 2), world(false)),
        ])
        .is_err());
    }

    #[test]
    fn world_prob_sums_weights() {
        let world = |t: bool| {
            let mut m = FiniteModel::new(vec!["a".into()]).unwrap();
            m.declare("p", 1, Truth3::False).unwrap();
            if t {
                m.set("p", &["a"], Truth3::True).unwrap();
            }
            m
        };
        let e = WorldsEnsemble::new(vec![
            (Rational::new(1, 4), world(true)),
            (Rational::new(3, 4), world(false)),
        ])
        .unwrap();
        let phi = parse("exists x. p(x)").unwrap();
        let not_phi = parse("!(exists x. p(x))").unwrap();
        assert_eq!(world_prob(&e, &phi).unwrap(), Rational::new(1, 4));
        assert_eq!(
            world_prob(&e, &phi).unwrap() + world_prob(&e, &not_phi).unwrap(),
            Rational::one()
        );
        let open = parse("p(x)").unwrap();
        assert!(world_prob(&e, &open).is_err());
    }

    #[test]
    fn ensemble_json_round_trip() {
        let world = |t: bool| {
            let mut m = FiniteModel::new(vec!["a".into()]).unwrap();
            m.declare("p", 1, Truth3::False).unwrap();
            if t {
                m.set("p", &["a"], Truth3::True).unwrap();
            }
            m
        };
        let e = WorldsEnsemble::new(vec![
            (Rational::new(1, 4), world(true)),
            (Rational::new(3, 4), world(false)),
        ])
        .unwrap();
        let again = load_worlds(&e.to_json()).unwrap();
        assert_eq!(e, again);
    }
}
