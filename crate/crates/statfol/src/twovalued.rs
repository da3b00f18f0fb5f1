//! Two-valued evaluation: Tarskian truth over classical models, proportion
//! quantifiers under the uniform counting measure, and the piecewise
//! conditional proportion.
//!
//! The conditional proportion of `beta` given `alpha` is
//! `prop(beta & alpha) / prop(alpha)` when `prop(alpha) > 0` and exactly `0`
//! otherwise; the zero branch is a definition, not an error, and several
//! downstream checks rely on it.
//!
//! Connectives never short-circuit on values, so domain and definedness
//! errors surface regardless of which operand decides the result.

use crate::errors::EvalError;
use crate::model::{tuples, Assignment, FiniteModel};
use crate::rational::Rational;
use crate::syntax::{AtomArg, Formula, ProbTerm, Rel};
use crate::truth::Truth3;

/// Lexical environment mapping variables to domain indices. Lookup scans
/// from the innermost binding outward, so shadowing works by construction.
pub(crate) struct Scope {
    entries: Vec<(String, u32)>,
}

impl Scope {
    pub(crate) fn from_env(m: &FiniteModel, env: &Assignment) -> Result<Scope, EvalError> {
        let mut entries = Vec::new();
        for (var, constant) in env.iter() {
            let idx = m
                .constant_index(constant)
                .ok_or_else(|| EvalError::Domain(constant.to_string()))?;
            entries.push((var.to_string(), idx));
        }
        Ok(Scope { entries })
    }

    pub(crate) fn lookup(&self, var: &str) -> Option<u32> {
        self.entries
            .iter()
            .rev()
            .find(|(v, _)| v == var)
            .map(|(_, i)| *i)
    }

    pub(crate) fn push(&mut self, var: &str) {
        self.entries.push((var.to_string(), 0));
    }

    pub(crate) fn pop(&mut self, count: usize) {
        let keep = self.entries.len() - count;
        self.entries.truncate(keep);
    }

    /// Overwrite the `count` innermost indices with the tuple's values.
    pub(crate) fn write_tuple(&mut self, count: usize, tuple: &[u32]) {
        let base = self.entries.len() - count;
        for (slot, value) in self.entries[base..].iter_mut().zip(tuple) {
            slot.1 = *value;
        }
    }

    pub(crate) fn set_last(&mut self, value: u32) {
        let last = self.entries.len() - 1;
        self.entries[last].1 = value;
    }
}

pub(crate) fn resolve_args(
    m: &FiniteModel,
    scope: &Scope,
    args: &[AtomArg],
) -> Result<Vec<u32>, EvalError> {
    let mut out = Vec::with_capacity(args.len());
    for arg in args {
        match arg {
            AtomArg::Var(v) => match scope.lookup(v) {
                Some(i) => out.push(i),
                None => return Err(EvalError::UnboundVariable(v.clone())),
            },
            // A free identifier names a domain constant when one matches,
            // and otherwise falls back to the environment (or to the binder
            // list of an enclosing programmatic prop/cond_prop call), so
            // parsed fragments like `man(x)` work directly as bodies.
            AtomArg::Const(c) => match m.constant_index(c).or_else(|| scope.lookup(c)) {
                Some(i) => out.push(i),
                None => return Err(EvalError::Domain(c.clone())),
            },
        }
    }
    Ok(out)
}

pub(crate) fn check_binder(bound: &[String]) -> Result<(), EvalError> {
    if bound.is_empty() {
        return Err(EvalError::InvalidBinder("empty bound-variable list".into()));
    }
    for (i, v) in bound.iter().enumerate() {
        if bound[..i].contains(v) {
            return Err(EvalError::InvalidBinder(format!(
                "variable `{v}` bound twice in one list"
            )));
        }
    }
    Ok(())
}

fn atom_truth(
    m: &FiniteModel,
    scope: &Scope,
    pred: &str,
    args: &[AtomArg],
) -> Result<bool, EvalError> {
    let idx = resolve_args(m, scope, args)?;
    match m.truth_at(pred, &idx)? {
        Truth3::True => Ok(true),
        Truth3::False => Ok(false),
        Truth3::Undef => {
            let names: Vec<&str> = idx.iter().map(|i| m.constant_name(*i)).collect();
            Err(EvalError::NonClassicalModel(format!(
                "{pred}({}) is undefined",
                names.join(",")
            )))
        }
    }
}

fn eval_bool(m: &FiniteModel, scope: &mut Scope, f: &Formula) -> Result<bool, EvalError> {
    match f {
        Formula::Atom { pred, args } => atom_truth(m, scope, pred, args),
        Formula::Not(g) => Ok(!eval_bool(m, scope, g)?),
        Formula::And(l, r) => {
            let a = eval_bool(m, scope, l)?;
            let b = eval_bool(m, scope, r)?;
            Ok(a && b)
        }
        Formula::Or(l, r) => {
            let a = eval_bool(m, scope, l)?;
            let b = eval_bool(m, scope, r)?;
            Ok(a || b)
        }
        Formula::Imp(l, r) => {
            let a = eval_bool(m, scope, l)?;
            let b = eval_bool(m, scope, r)?;
            Ok(!a || b)
        }
        Formula::CondConn(..) => Err(EvalError::Fragment(
            "the conditional connective `~>` has no two-valued reading".into(),
        )),
        Formula::Forall(v, body) => {
            scope.push(v);
            let mut holds = true;
            for d in 0..m.domain_size() as u32 {
                scope.set_last(d);
                match eval_bool(m, scope, body) {
                    Ok(b) => holds = holds && b,
                    Err(e) => {
                        scope.pop(1);
                        return Err(e);
                    }
                }
            }
            scope.pop(1);
            Ok(holds)
        }
        Formula::Exists(v, body) => {
            scope.push(v);
            let mut holds = false;
            for d in 0..m.domain_size() as u32 {
                scope.set_last(d);
                match eval_bool(m, scope, body) {
                    Ok(b) => holds = holds || b,
                    Err(e) => {
                        scope.pop(1);
                        return Err(e);
                    }
                }
            }
            scope.pop(1);
            Ok(holds)
        }
        Formula::Compare(l, rel, r) => {
            let lv = term_value(m, scope, l)?;
            let rv = term_value(m, scope, r)?;
            Ok(rel.holds(&lv, &rv))
        }
    }
}

fn prop_in_scope(
    m: &FiniteModel,
    scope: &mut Scope,
    body: &Formula,
    bound: &[String],
) -> Result<Rational, EvalError> {
    check_binder(bound)?;
    for v in bound {
        scope.push(v);
    }
    let mut n_true: u64 = 0;
    let mut total: u64 = 0;
    for tuple in tuples(m.domain_size(), bound.len()) {
        scope.write_tuple(bound.len(), &tuple);
        total += 1;
        match eval_bool(m, scope, body) {
            Ok(true) => n_true += 1,
            Ok(false) => {}
            Err(e) => {
                scope.pop(bound.len());
                return Err(e);
            }
        }
    }
    scope.pop(bound.len());
    Ok(Rational::new(n_true as i64, total as i64))
}

fn cond_prop_in_scope(
    m: &FiniteModel,
    scope: &mut Scope,
    beta: &Formula,
    alpha: &Formula,
    bound: &[String],
) -> Result<Rational, EvalError> {
    check_binder(bound)?;
    for v in bound {
        scope.push(v);
    }
    let mut n_alpha: u64 = 0;
    let mut n_both: u64 = 0;
    for tuple in tuples(m.domain_size(), bound.len()) {
        scope.write_tuple(bound.len(), &tuple);
        let a = match eval_bool(m, scope, alpha) {
            Ok(v) => v,
            Err(e) => {
                scope.pop(bound.len());
                return Err(e);
            }
        };
        let b = match eval_bool(m, scope, beta) {
            Ok(v) => v,
            Err(e) => {
                scope.pop(bound.len());
                return Err(e);
            }
        };
        if a {
            n_alpha += 1;
            if b {
                n_both += 1;
            }
        }
    }
    scope.pop(bound.len());
    if n_alpha == 0 {
        Ok(Rational::zero())
    } else {
        Ok(Rational::new(n_both as i64, n_alpha as i64))
    }
}

fn term_value(m: &FiniteModel, scope: &mut Scope, t: &ProbTerm) -> Result<Rational, EvalError> {
    match t {
        ProbTerm::Const(q) => Ok(q.clone()),
        ProbTerm::Prop { body, bound } => prop_in_scope(m, scope, body, bound),
        ProbTerm::CondProp {
            consequent,
            condition,
            bound,
        } => cond_prop_in_scope(m, scope, consequent, condition, bound),
        ProbTerm::P1 { .. } | ProbTerm::P2 { .. } => Err(EvalError::Fragment(
            "P1/P2 definiteness quantifiers have no two-valued reading".into(),
        )),
        ProbTerm::Add(l, r) => Ok(term_value(m, scope, l)? + term_value(m, scope, r)?),
        ProbTerm::Sub(l, r) => Ok(term_value(m, scope, l)? - term_value(m, scope, r)?),
        ProbTerm::Mul(l, r) => Ok(term_value(m, scope, l)? * term_value(m, scope, r)?),
    }
}

/// Classical truth of a formula under an assignment of its free variables.
pub fn eval2(m: &FiniteModel, env: &Assignment, f: &Formula) -> Result<bool, EvalError> {
    let mut scope = Scope::from_env(m, env)?;
    eval_bool(m, &mut scope, f)
}

/// Proportion of domain tuples (for the bound variables) satisfying `body`.
pub fn prop(
    m: &FiniteModel,
    env: &Assignment,
    body: &Formula,
    bound: &[String],
) -> Result<Rational, EvalError> {
    let mut scope = Scope::from_env(m, env)?;
    prop_in_scope(m, &mut scope, body, bound)
}

/// Conditional proportion of `beta` given `alpha`; exactly `0` when no tuple
/// satisfies `alpha`.
pub fn cond_prop(
    m: &FiniteModel,
    env: &Assignment,
    beta: &Formula,
    alpha: &Formula,
    bound: &[String],
) -> Result<Rational, EvalError> {
    let mut scope = Scope::from_env(m, env)?;
    cond_prop_in_scope(m, &mut scope, beta, alpha, bound)
}

/// Exact rational value of a probability term in the classical fragment.
pub fn eval_term(m: &FiniteModel, env: &Assignment, t: &ProbTerm) -> Result<Rational, EvalError> {
    let mut scope = Scope::from_env(m, env)?;
    term_value(m, &mut scope, t)
}

/// Truth of a comparison between two terms, convenience over [`eval_term`].
pub fn compare(
    m: &FiniteModel,
    env: &Assignment,
    lhs: &ProbTerm,
    rel: Rel,
    rhs: &ProbTerm,
) -> Result<bool, EvalError> {
    let mut scope = Scope::from_env(m, env)?;
    let lv = term_value(m, &mut scope, lhs)?;
    let rv = term_value(m, &mut scope, rhs)?;
    Ok(rel.holds(&lv, &rv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{enumerate_models, load_model, restrict, ModelShape};
    use crate::parser::parse;

    fn two_element_model() -> FiniteModel {
        load_model(
            r#"{
                "domain": ["a", "b"],
                "predicates": {"p": {"arity": 1, "true": [["a"]]}}
            }"#,
        )
        .unwrap()
    }

    fn men_model() -> FiniteModel {
        // 3 men among 10.
        let mut m = FiniteModel::new((1..=10).map(|i| format!("e{i}")).collect()).unwrap();
        m.declare("man", 1, Truth3::False).unwrap();
        for c in ["e1", "e2", "e3"] {
            m.set("man", &[c], Truth3::True).unwrap();
        }
        m
    }

    #[test]
    fn quantifiers_follow_tarski() {
        let m = two_element_model();
        let env = Assignment::new();
        assert!(eval2(&m, &env, &parse("exists x. p(x)").unwrap()).unwrap());
        assert!(!eval2(&m, &env, &parse("forall x. p(x)").unwrap()).unwrap());
        assert!(eval2(&m, &env, &parse("forall x. p(x) | !p(x)").unwrap()).unwrap());
    }

    #[test]
    fn assignment_feeds_free_variables() {
        let m = two_element_model();
        let f = parse("p(x)").unwrap();
        assert!(eval2(&m, &Assignment::new().bind("x", "a"), &f).unwrap());
        assert!(!eval2(&m, &Assignment::new().bind("x", "b"), &f).unwrap());
        // With no binding anywhere, the identifier is a missing constant.
        assert!(matches!(
            eval2(&m, &Assignment::new(), &f),
            Err(EvalError::Domain(_))
        ));
        assert!(matches!(
            eval2(&m, &Assignment::new().bind("x", "zz"), &f),
            Err(EvalError::Domain(_))
        ));
        // A variable node with no enclosing binder is a structural error.
        let dangling = Formula::va("p", "x");
        assert!(matches!(
            eval2(&m, &Assignment::new(), &dangling),
            Err(EvalError::UnboundVariable(_))
        ));
    }

    #[test]
    fn conditional_connective_is_out_of_fragment() {
        let m = two_element_model();
        let f = parse("p(x) ~> p(x)").unwrap();
        assert!(matches!(
            eval2(&m, &Assignment::new().bind("x", "a"), &f),
            Err(EvalError::Fragment(_))
        ));
        let t = crate::parser::parse_term("P1 x. p(x)").unwrap();
        assert!(matches!(
            eval_term(&m, &Assignment::new(), &t),
            Err(EvalError::Fragment(_))
        ));
    }

    #[test]
    fn undefined_values_raise() {
        let m = load_model(
            r#"{
                "domain": ["a"],
                "predicates": {"p": {"arity": 1, "undef": [["a"]]}}
            }"#,
        )
        .unwrap();
        let f = parse("exists x. p(x)").unwrap();
        assert!(matches!(
            eval2(&m, &Assignment::new(), &f),
            Err(EvalError::NonClassicalModel(_))
        ));
    }

    #[test]
    fn proportions_count_tuples() {
        let m = men_model();
        let env = Assignment::new();
        let man = parse("man(x)").unwrap();
        let x = ["x".to_string()];
        assert_eq!(prop(&m, &env, &man, &x).unwrap(), Rational::new(3, 10));
        let not_man = parse("!man(x)").unwrap();
        assert_eq!(
            prop(&m, &env, &man, &x).unwrap() + prop(&m, &env, &not_man, &x).unwrap(),
            Rational::one()
        );
    }

    #[test]
    fn binder_lists_are_validated() {
        let m = men_model();
        let env = Assignment::new();
        let man = parse("man(x)").unwrap();
        assert!(matches!(
            prop(&m, &env, &man, &[]),
            Err(EvalError::InvalidBinder(_))
        ));
        assert!(matches!(
            prop(&m, &env, &man, &["x".to_string(), "x".to_string()]),
            Err(EvalError::InvalidBinder(_))
        ));
    }

    #[test]
    fn multi_variable_proportions() {
        let m = load_model(
            r#"{
                "domain": ["a", "b"],
                "predicates": {"r": {"arity": 2, "true": [["a", "a"], ["a", "b"], ["b", "a"]]}}
            }"#,
        )
        .unwrap();
        let env = Assignment::new();
        let r = parse("r(x,y)").unwrap();
        let xy = ["x".to_string(), "y".to_string()];
        assert_eq!(prop(&m, &env, &r, &xy).unwrap(), Rational::new(3, 4));
    }

    #[test]
    fn conditional_proportion_is_piecewise() {
        let m = men_model();
        let env = Assignment::new();
        let man = parse("man(x)").unwrap();
        let nobody = parse("man(x) & !man(x)").unwrap();
        let x = ["x".to_string()];
        assert_eq!(
            cond_prop(&m, &env, &man, &man, &x).unwrap(),
            Rational::one()
        );
        assert_eq!(
            cond_prop(&m, &env, &man, &nobody, &x).unwrap(),
            Rational::zero()
        );
        assert_eq!(
            cond_prop(&m, &env, &nobody, &nobody, &x).unwrap(),
            Rational::zero()
        );
        let not_man = parse("!man(x)").unwrap();
        assert_eq!(
            cond_prop(&m, &env, &man, &man, &x).unwrap()
                + cond_prop(&m, &env, &not_man, &man, &x).unwrap(),
            Rational::one()
        );
    }

    #[test]
    fn terms_evaluate_exactly() {
        let m = men_model();
        let env = Assignment::new();
        let t = crate::parser::parse_term("1 - [man(x)]_{x}").unwrap();
        assert_eq!(eval_term(&m, &env, &t).unwrap(), Rational::new(7, 10));

        let product =
            crate::parser::parse_term("[man(x) given man(x)]_{x} * [man(x)]_{x}").unwrap();
        let joint = crate::parser::parse_term("[man(x) & man(x)]_{x}").unwrap();
        assert_eq!(
            eval_term(&m, &env, &product).unwrap(),
            eval_term(&m, &env, &joint).unwrap()
        );
    }

    #[test]
    fn compare_nodes_inside_formulas() {
        let m = men_model();
        let env = Assignment::new();
        let f = parse("([man(x)]_{x} >= 3/10) & ([man(x)]_{x} < 1/2)").unwrap();
        assert!(eval2(&m, &env, &f).unwrap());
    }

    fn small_formula_family() -> Vec<Formula> {
        [
            "p(x)",
            "q(x)",
            "!p(x)",
            "p(x) & q(x)",
            "p(x) | q(x)",
            "p(x) -> q(x)",
        ]
        .iter()
        .map(|s| parse(s).unwrap())
        .collect()
    }

    #[test]
    fn conditional_is_bounded_by_implication_exhaustively() {
        // For every classical model with |D| <= 3 over two unary predicates
        // and every alpha, beta in the family with prop(alpha) > 0:
        // cond_prop(beta, alpha) <= prop(alpha -> beta).
        let env = Assignment::new();
        let x = ["x".to_string()];
        let family = small_formula_family();
        for size in 1..=3 {
            let shape = ModelShape::new(size, &[("p", 1), ("q", 1)], false);
            for m in enumerate_models(&shape, 100).unwrap() {
                for alpha in &family {
                    if prop(&m, &env, alpha, &x).unwrap().is_zero() {
                        continue;
                    }
                    for beta in &family {
                        let lhs = cond_prop(&m, &env, beta, alpha, &x).unwrap();
                        let imp = alpha.clone().imp(beta.clone());
                        let rhs = prop(&m, &env, &imp, &x).unwrap();
                        assert!(
                            lhs <= rhs,
                            "violated on {}: [{beta} given {alpha}] = {lhs} > [{alpha} -> {beta}] = {rhs}",
                            m.to_json()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn proportion_additivity_is_exact() {
        let env = Assignment::new();
        let x = ["x".to_string()];
        let family = small_formula_family();
        let shape = ModelShape::new(3, &[("p", 1), ("q", 1)], false);
        for m in enumerate_models(&shape, 100).unwrap() {
            for alpha in &family {
                for beta in &family {
                    let pa = prop(&m, &env, alpha, &x).unwrap();
                    let pb = prop(&m, &env, beta, &x).unwrap();
                    let por = prop(&m, &env, &alpha.clone().or(beta.clone()), &x).unwrap();
                    let pand = prop(&m, &env, &alpha.clone().and(beta.clone()), &x).unwrap();
                    assert_eq!(pa.clone() + pb.clone(), por.clone() + pand);
                    assert!(por >= pa, "monotone disjunction failed");
                }
            }
        }
    }

    #[test]
    fn restriction_matches_conditional_proportion() {
        // cond_prop(m, beta, alpha) = prop(restrict(m, alpha), beta) for
        // quantifier-free beta; the subpopulation view of conditioning.
        let env = Assignment::new();
        let x = ["x".to_string()];
        let family = small_formula_family();
        let shape = ModelShape::new(3, &[("p", 1), ("q", 1)], false);
        for m in enumerate_models(&shape, 100).unwrap() {
            for alpha in &family {
                if prop(&m, &env, alpha, &x).unwrap().is_zero() {
                    continue;
                }
                let sub = restrict(&m, alpha, "x").unwrap();
                for beta in &family {
                    assert_eq!(
                        cond_prop(&m, &env, beta, alpha, &x).unwrap(),
                        prop(&sub, &env, beta, &x).unwrap(),
                    );
                }
            }
        }
    }
}
