//! Three-valued evaluation: strong-Kleene connectives, the conditional
//! connective `~>`, min/max quantifiers under the order `F < U < T`, and the
//! definiteness quantifiers `P1` and `P2`.
//!
//! `P1 x. body` is the proportion of definitely-true cases among the definite
//! ones and is undefined when no case is definite; `P2 x. body` is the
//! proportion of definite cases among all cases and is always defined.
//! Plain proportion terms keep their classical meaning here: their value is
//! undefined as soon as any relevant tuple evaluates to `U`. Comparisons
//! touching an undefined term evaluate to `U` rather than erroring, so
//! evaluation is total on well-formed inputs.

use std::fmt;

use crate::errors::EvalError;
use crate::model::{tuples, Assignment, FiniteModel};
use crate::rational::Rational;
use crate::syntax::{Formula, ProbTerm};
use crate::truth::Truth3;
use crate::twovalued::{check_binder, resolve_args, Scope};

/// Value of a probability term under the three-valued semantics: a rational,
/// or undefined (a `P1` with no definite cases, or a proportion over a body
/// taking the value `U` somewhere).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum P1Value {
    Defined(Rational),
    Undefined,
}

impl P1Value {
    pub fn is_defined(&self) -> bool {
        matches!(self, P1Value::Defined(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            P1Value::Defined(q) => Some(q),
            P1Value::Undefined => None,
        }
    }

    /// The value, panicking when undefined; for tests and fixed witnesses.
    pub fn expect_defined(&self) -> &Rational {
        self.as_rational().expect("term value is undefined")
    }
}

impl fmt::Display for P1Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Value::Defined(q) => write!(f, "{q}"),
            P1Value::Undefined => f.write_str("undefined"),
        }
    }
}

impl From<Rational> for P1Value {
    fn from(q: Rational) -> Self {
        P1Value::Defined(q)
    }
}

fn eval_t3(m: &FiniteModel, scope: &mut Scope, f: &Formula) -> Result<Truth3, EvalError> {
    match f {
        Formula::Atom { pred, args } => {
            let idx = resolve_args(m, scope, args)?;
            m.truth_at(pred, &idx)
        }
        Formula::Not(g) => Ok(eval_t3(m, scope, g)?.not()),
        Formula::And(l, r) => {
            let a = eval_t3(m, scope, l)?;
            let b = eval_t3(m, scope, r)?;
            Ok(a.and(b))
        }
        Formula::Or(l, r) => {
            let a = eval_t3(m, scope, l)?;
            let b = eval_t3(m, scope, r)?;
            Ok(a.or(b))
        }
        Formula::Imp(l, r) => {
            let a = eval_t3(m, scope, l)?;
            let b = eval_t3(m, scope, r)?;
            Ok(a.imp(b))
        }
        Formula::CondConn(l, r) => {
            let a = eval_t3(m, scope, l)?;
            let b = eval_t3(m, scope, r)?;
            Ok(a.cond(b))
        }
        Formula::Forall(v, body) => {
            scope.push(v);
            let mut acc = Truth3::True;
            for d in 0..m.domain_size() as u32 {
                scope.set_last(d);
                match eval_t3(m, scope, body) {
                    Ok(t) => acc = acc.min(t),
                    Err(e) => {
                        scope.pop(1);
                        return Err(e);
                    }
                }
            }
            scope.pop(1);
            Ok(acc)
        }
        Formula::Exists(v, body) => {
            scope.push(v);
            let mut acc = Truth3::False;
            for d in 0..m.domain_size() as u32 {
                scope.set_last(d);
                match eval_t3(m, scope, body) {
                    Ok(t) => acc = acc.max(t),
                    Err(e) => {
                        scope.pop(1);
                        return Err(e);
                    }
                }
            }
            scope.pop(1);
            Ok(acc)
        }
        Formula::Compare(l, rel, r) => {
            let lv = term_value3(m, scope, l)?;
            let rv = term_value3(m, scope, r)?;
            Ok(match (lv, rv) {
                (P1Value::Defined(a), P1Value::Defined(b)) => Truth3::from_bool(rel.holds(&a, &b)),
                _ => Truth3::Undef,
            })
        }
    }
}

/// Truth counts of `body` over all tuples: `(true, false, total)`.
fn kleene_counts(
    m: &FiniteModel,
    scope: &mut Scope,
    body: &Formula,
    bound: &[String],
) -> Result<(u64, u64, u64), EvalError> {
    check_binder(bound)?;
    for v in bound {
        scope.push(v);
    }
    let mut n_true: u64 = 0;
    let mut n_false: u64 = 0;
    let mut total: u64 = 0;
    for tuple in tuples(m.domain_size(), bound.len()) {
        scope.write_tuple(bound.len(), &tuple);
        total += 1;
        match eval_t3(m, scope, body) {
            Ok(Truth3::True) => n_true += 1,
            Ok(Truth3::False) => n_false += 1,
            Ok(Truth3::Undef) => {}
            Err(e) => {
                scope.pop(bound.len());
                return Err(e);
            }
        }
    }
    scope.pop(bound.len());
    Ok((n_true, n_false, total))
}

fn p1_in_scope(
    m: &FiniteModel,
    scope: &mut Scope,
    body: &Formula,
    bound: &[String],
) -> Result<P1Value, EvalError> {
    let (n_true, n_false, _) = kleene_counts(m, scope, body, bound)?;
    let definite = n_true + n_false;
    if definite == 0 {
        Ok(P1Value::Undefined)
    } else {
        Ok(P1Value::Defined(Rational::new(
            n_true as i64,
            definite as i64,
        )))
    }
}

fn p2_in_scope(
    m: &FiniteModel,
    scope: &mut Scope,
    body: &Formula,
    bound: &[String],
) -> Result<Rational, EvalError> {
    let (n_true, n_false, total) = kleene_counts(m, scope, body, bound)?;
    Ok(Rational::new((n_true + n_false) as i64, total as i64))
}

fn term_value3(m: &FiniteModel, scope: &mut Scope, t: &ProbTerm) -> Result<P1Value, EvalError> {
    match t {
        ProbTerm::Const(q) => Ok(P1Value::Defined(q.clone())),
        ProbTerm::P1 { bound, body } => p1_in_scope(m, scope, body, bound),
        ProbTerm::P2 { bound, body } => Ok(P1Value::Defined(p2_in_scope(m, scope, body, bound)?)),
        ProbTerm::Prop { body, bound } => {
            let (n_true, n_false, total) = kleene_counts(m, scope, body, bound)?;
            if n_true + n_false < total {
                Ok(P1Value::Undefined)
            } else {
                Ok(P1Value::Defined(Rational::new(n_true as i64, total as i64)))
            }
        }
        ProbTerm::CondProp {
            consequent,
            condition,
            bound,
        } => cond_prop3_in_scope(m, scope, consequent, condition, bound),
        ProbTerm::Add(l, r) => Ok(combine(
            term_value3(m, scope, l)?,
            term_value3(m, scope, r)?,
            |a, b| a + b,
        )),
        ProbTerm::Sub(l, r) => Ok(combine(
            term_value3(m, scope, l)?,
            term_value3(m, scope, r)?,
            |a, b| a - b,
        )),
        ProbTerm::Mul(l, r) => Ok(combine(
            term_value3(m, scope, l)?,
            term_value3(m, scope, r)?,
            |a, b| a * b,
        )),
    }
}

fn combine(l: P1Value, r: P1Value, op: impl Fn(Rational, Rational) -> Rational) -> P1Value {
    match (l, r) {
        (P1Value::Defined(a), P1Value::Defined(b)) => P1Value::Defined(op(a, b)),
        _ => P1Value::Undefined,
    }
}

/// Conditional proportion under the three-valued reading: defined exactly
/// when the condition is definite on every tuple and the consequent is
/// definite wherever the condition holds; then the classical piecewise value.
fn cond_prop3_in_scope(
    m: &FiniteModel,
    scope: &mut Scope,
    consequent: &Formula,
    condition: &Formula,
    bound: &[String],
) -> Result<P1Value, EvalError> {
    check_binder(bound)?;
    for v in bound {
        scope.push(v);
    }
    let mut n_alpha: u64 = 0;
    let mut n_both: u64 = 0;
    let mut indefinite = false;
    for tuple in tuples(m.domain_size(), bound.len()) {
        scope.write_tuple(bound.len(), &tuple);
        let a = match eval_t3(m, scope, condition) {
            Ok(t) => t,
            Err(e) => {
                scope.pop(bound.len());
                return Err(e);
            }
        };
        let b = match eval_t3(m, scope, consequent) {
            Ok(t) => t,
            Err(e) => {
                scope.pop(bound.len());
                return Err(e);
            }
        };
        match a {
            Truth3::Undef => indefinite = true,
            Truth3::True => {
                n_alpha += 1;
                match b {
                    Truth3::True => n_both += 1,
                    Truth3::False => {}
                    Truth3::Undef => indefinite = true,
                }
            }
            Truth3::False => {}
        }
    }
    scope.pop(bound.len());
    if indefinite {
        Ok(P1Value::Undefined)
    } else if n_alpha == 0 {
        Ok(P1Value::Defined(Rational::zero()))
    } else {
        Ok(P1Value::Defined(Rational::new(
            n_both as i64,
            n_alpha as i64,
        )))
    }
}

/// Three-valued truth of a formula under an assignment.
pub fn eval3(m: &FiniteModel, env: &Assignment, f: &Formula) -> Result<Truth3, EvalError> {
    let mut scope = Scope::from_env(m, env)?;
    eval_t3(m, &mut scope, f)
}

/// Proportion of definitely-true cases among the definite ones; undefined
/// when no case is definite.
pub fn p1(
    m: &FiniteModel,
    env: &Assignment,
    body: &Formula,
    bound: &[String],
) -> Result<P1Value, EvalError> {
    let mut scope = Scope::from_env(m, env)?;
    p1_in_scope(m, &mut scope, body, bound)
}

/// Proportion of definite cases among all cases; always defined.
pub fn p2(
    m: &FiniteModel,
    env: &Assignment,
    body: &Formula,
    bound: &[String],
) -> Result<Rational, EvalError> {
    let mut scope = Scope::from_env(m, env)?;
    p2_in_scope(m, &mut scope, body, bound)
}

/// Value of a probability term under the three-valued semantics.
pub fn eval_term3(m: &FiniteModel, env: &Assignment, t: &ProbTerm) -> Result<P1Value, EvalError> {
    let mut scope = Scope::from_env(m, env)?;
    term_value3(m, &mut scope, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{enumerate_models, load_model, ModelShape};
    use crate::parser::{parse, parse_term};
    use crate::twovalued::{cond_prop, eval2, prop};

    fn x() -> [String; 1] {
        ["x".to_string()]
    }

    /// p true at {a,b}, false at c; q true at {a}, false elsewhere.
    fn worked_model() -> FiniteModel {
        load_model(
            r#"{
                "domain": ["a", "b", "c"],
                "predicates": {
                    "p": {"arity": 1, "true": [["a"], ["b"]], "false": [["c"]]},
                    "q": {"arity": 1, "true": [["a"]], "false": [["b"], ["c"]]}
                }
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn conditional_connective_on_models() {
        let m = worked_model();
        let f = parse("p(x) ~> q(x)").unwrap();
        let at = |c: &str| eval3(&m, &Assignment::new().bind("x", c), &f).unwrap();
        assert_eq!(at("a"), Truth3::True);
        assert_eq!(at("b"), Truth3::False);
        assert_eq!(at("c"), Truth3::Undef);
    }

    #[test]
    fn worked_p1_p2_example() {
        let m = worked_model();
        let body = parse("p(x) ~> q(x)").unwrap();
        assert_eq!(
            p1(&m, &Assignment::new(), &body, &x()).unwrap(),
            P1Value::Defined(Rational::new(1, 2))
        );
        assert_eq!(
            p2(&m, &Assignment::new(), &body, &x()).unwrap(),
            Rational::new(2, 3)
        );
    }

    #[test]
    fn p1_boundary_cases() {
        let m = worked_model();
        let tautology = parse("p(x) | !p(x)").unwrap();
        assert_eq!(
            p1(&m, &Assignment::new(), &tautology, &x()).unwrap(),
            P1Value::Defined(Rational::one())
        );

        let never_definite = parse("(p(x) & !p(x)) ~> q(x)").unwrap();
        assert_eq!(
            p1(&m, &Assignment::new(), &never_definite, &x()).unwrap(),
            P1Value::Undefined
        );
        assert_eq!(
            p2(&m, &Assignment::new(), &never_definite, &x()).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn undefined_comparisons_are_undef_not_errors() {
        let m = worked_model();
        let f = parse("P1 x. (p(x) & !p(x)) ~> q(x) > 1/2").unwrap();
        assert_eq!(eval3(&m, &Assignment::new(), &f).unwrap(), Truth3::Undef);
        let g = parse("P2 x. (p(x) & !p(x)) ~> q(x) = 0").unwrap();
        assert_eq!(eval3(&m, &Assignment::new(), &g).unwrap(), Truth3::True);
    }

    #[test]
    fn quantifiers_are_min_max() {
        let m = load_model(
            r#"{
                "domain": ["a", "b"],
                "predicates": {
                    "t": {"arity": 1, "true": [["a"]], "undef": [["b"]]},
                    "f": {"arity": 1, "false": [["a"]], "undef": [["b"]]}
                }
            }"#,
        )
        .unwrap();
        let env = Assignment::new();
        assert_eq!(
            eval3(&m, &env, &parse("forall x. t(x)").unwrap()).unwrap(),
            Truth3::Undef
        );
        assert_eq!(
            eval3(&m, &env, &parse("exists x. t(x)").unwrap()).unwrap(),
            Truth3::True
        );
        assert_eq!(
            eval3(&m, &env, &parse("forall x. f(x)").unwrap()).unwrap(),
            Truth3::False
        );
        assert_eq!(
            eval3(&m, &env, &parse("exists x. f(x)").unwrap()).unwrap(),
            Truth3::Undef
        );
    }

    #[test]
    fn material_implication_is_disjunction() {
        let shape = ModelShape::new(1, &[("p", 1), ("q", 1)], true);
        let env = Assignment::new();
        let imp = parse("forall x. p(x) -> q(x)").unwrap();
        let disj = parse("forall x. !p(x) | q(x)").unwrap();
        for m in enumerate_models(&shape, 10).unwrap() {
            assert_eq!(
                eval3(&m, &env, &imp).unwrap(),
                eval3(&m, &env, &disj).unwrap()
            );
        }
    }

    fn family() -> Vec<Formula> {
        [
            "p(x)",
            "q(x)",
            "!p(x)",
            "p(x) & q(x)",
            "p(x) | q(x)",
            "p(x) -> q(x)",
            "p(x) ~> q(x)",
        ]
        .iter()
        .map(|s| parse(s).unwrap())
        .collect()
    }

    #[test]
    fn agreement_with_classical_semantics() {
        let shape = ModelShape::new(2, &[("p", 1), ("q", 1)], false);
        let env = Assignment::new();
        let closed = [
            "forall x. p(x) -> q(x)",
            "exists x. p(x) & !q(x)",
            "[p(x)]_{x} >= 1/2",
            "[q(x) given p(x)]_{x} = 1",
        ]
        .map(|s| parse(s).unwrap());
        for m in enumerate_models(&shape, 100).unwrap() {
            for f in &closed {
                let three = eval3(&m, &env, f).unwrap();
                let two = eval2(&m, &env, f).unwrap();
                assert_eq!(three, Truth3::from_bool(two), "disagree on {f}");
            }
        }
    }

    #[test]
    fn tautology_has_unit_p1_and_p2() {
        // If the body is T on every tuple then p1 = p2 = 1.
        let shape = ModelShape::new(2, &[("p", 1), ("q", 1)], true);
        let env = Assignment::new();
        for m in enumerate_models(&shape, 100).unwrap() {
            for alpha in &family() {
                let (all_true, _) = truth_profile(&m, alpha);
                if all_true {
                    assert_eq!(
                        p1(&m, &env, alpha, &x()).unwrap(),
                        P1Value::Defined(Rational::one())
                    );
                    assert_eq!(p2(&m, &env, alpha, &x()).unwrap(), Rational::one());
                }
            }
        }
    }

    fn truth_profile(m: &FiniteModel, body: &Formula) -> (bool, bool) {
        let mut all_true = true;
        let mut any_defined = false;
        for c in m.domain() {
            let v = eval3(m, &Assignment::new().bind("x", c.clone()), body).unwrap();
            all_true &= v == Truth3::True;
            any_defined |= v != Truth3::Undef;
        }
        (all_true, any_defined)
    }

    #[test]
    fn p1_and_p2_stay_in_unit_interval() {
        let shape = ModelShape::new(2, &[("p", 1), ("q", 1)], true);
        let env = Assignment::new();
        for m in enumerate_models(&shape, 100).unwrap() {
            for alpha in &family() {
                if let P1Value::Defined(v) = p1(&m, &env, alpha, &x()).unwrap() {
                    assert!(v.in_unit_interval());
                }
                assert!(p2(&m, &env, alpha, &x()).unwrap().in_unit_interval());
            }
        }
    }

    #[test]
    fn negation_complements_p1_and_fixes_p2() {
        let shape = ModelShape::new(2, &[("p", 1), ("q", 1)], true);
        let env = Assignment::new();
        for m in enumerate_models(&shape, 100).unwrap() {
            for alpha in &family() {
                let neg = alpha.clone().not();
                let a = p1(&m, &env, alpha, &x()).unwrap();
                let b = p1(&m, &env, &neg, &x()).unwrap();
                if let (P1Value::Defined(a), P1Value::Defined(b)) = (a, b) {
                    assert_eq!(a + b, Rational::one());
                }
                assert_eq!(
                    p2(&m, &env, alpha, &x()).unwrap(),
                    p2(&m, &env, &neg, &x()).unwrap()
                );
            }
        }
    }

    #[test]
    fn conditional_connective_matches_conditional_probability() {
        // On classical models with prop(chi) > 0: p1(chi ~> beta) equals
        // cond_prop(beta, chi). This also pins down the orientation of the
        // conditional truth table.
        let shape = ModelShape::new(3, &[("p", 1), ("q", 1)], false);
        let env = Assignment::new();
        let chi = parse("p(x)").unwrap();
        let beta = parse("q(x)").unwrap();
        let chain = parse("p(x) ~> q(x)").unwrap();
        for m in enumerate_models(&shape, 100).unwrap() {
            let base = prop(&m, &env, &chi, &x()).unwrap();
            let lhs = p1(&m, &env, &chain, &x()).unwrap();
            if base.is_zero() {
                assert_eq!(lhs, P1Value::Undefined);
            } else {
                let rhs = cond_prop(&m, &env, &beta, &chi, &x()).unwrap();
                assert_eq!(lhs, P1Value::Defined(rhs));
            }
        }
    }

    #[test]
    fn self_conditioning_is_certain() {
        let shape = ModelShape::new(2, &[("p", 1), ("q", 1)], true);
        let env = Assignment::new();
        for m in enumerate_models(&shape, 100).unwrap() {
            for alpha in &family() {
                let refl = alpha.clone().cond_conn(alpha.clone());
                if let P1Value::Defined(v) = p1(&m, &env, &refl, &x()).unwrap() {
                    assert_eq!(v, Rational::one());
                }
            }
        }
    }

    #[test]
    fn proportion_terms_are_undefined_on_indefinite_bodies() {
        let m = load_model(
            r#"{
                "domain": ["a", "b"],
                "predicates": {"p": {"arity": 1, "true": [["a"]], "undef": [["b"]]}}
            }"#,
        )
        .unwrap();
        let env = Assignment::new();
        let t = parse_term("[p(x)]_{x}").unwrap();
        assert_eq!(eval_term3(&m, &env, &t).unwrap(), P1Value::Undefined);
        let arith = parse_term("[p(x)]_{x} + 1/2").unwrap();
        assert_eq!(eval_term3(&m, &env, &arith).unwrap(), P1Value::Undefined);

        let cond_ok = parse_term("[p(x) given p(x) | !p(x)]_{x}").unwrap();
        assert_eq!(eval_term3(&m, &env, &cond_ok).unwrap(), P1Value::Undefined);
    }

    #[test]
    fn conditional_proportion_ignores_consequent_outside_condition() {
        // q is undefined only where p is false, so [q given p] stays defined.
        let m = load_model(
            r#"{
                "domain": ["a", "b"],
                "predicates": {
                    "p": {"arity": 1, "true": [["a"]], "false": [["b"]]},
                    "q": {"arity": 1, "true": [["a"]], "undef": [["b"]]}
                }
            }"#,
        )
        .unwrap();
        let env = Assignment::new();
        let t = parse_term("[q(x) given p(x)]_{x}").unwrap();
        assert_eq!(
            eval_term3(&m, &env, &t).unwrap(),
            P1Value::Defined(Rational::one())
        );
        let u = parse_term("[p(x) given q(x)]_{x}").unwrap();
        assert_eq!(eval_term3(&m, &env, &u).unwrap(), P1Value::Undefined);
    }

    #[test]
    fn nested_conditionals_under_p1() {
        let m = load_model(
            r#"{
                "domain": ["a", "b"],
                "predicates": {
                    "p": {"arity": 1, "true": [["a"], ["b"]]},
                    "q": {"arity": 1, "true": [["a"], ["b"]]},
                    "v": {"arity": 1, "true": [["a"], ["b"]]},
                    "z": {"arity": 1, "true": [["a"]], "false": [["b"]]}
                }
            }"#,
        )
        .unwrap();
        let f = parse("P1 x. (p(x) ~> q(x)) ~> (v(x) ~> z(x)) > 9/10").unwrap();
        // Inner conditionals are definite everywhere; the chain is T at a
        // and F at b, so P1 = 1/2 and the comparison is false.
        assert_eq!(eval3(&m, &Assignment::new(), &f).unwrap(), Truth3::False);
    }
}
