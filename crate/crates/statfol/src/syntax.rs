//! Abstract syntax for formulas and probability terms.
//!
//! A [`Formula`] mixes ordinary first-order structure (atoms, connectives,
//! quantifiers) with two statistical ingredients: the conditional connective
//! [`Formula::CondConn`], and comparisons between [`ProbTerm`] probability
//! terms. Probability terms are themselves built from proportion quantifiers
//! whose bodies are formulas, so the two kinds nest freely.

use std::collections::BTreeSet;

use crate::rational::Rational;

/// Argument position of an atom: a variable (bound by some enclosing binder)
/// or a domain constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomArg {
    Var(String),
    Const(String),
}

impl AtomArg {
    pub fn var(name: impl Into<String>) -> Self {
        AtomArg::Var(name.into())
    }

    pub fn cst(name: impl Into<String>) -> Self {
        AtomArg::Const(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            AtomArg::Var(n) | AtomArg::Const(n) => n,
        }
    }
}

/// Comparison relation between two probability terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Rel {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Rel::Lt => lhs < rhs,
            Rel::Le => lhs <= rhs,
            Rel::Eq => lhs == rhs,
            Rel::Ge => lhs >= rhs,
            Rel::Gt => lhs > rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }
}

/// A formula of the statistical language.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom {
        pred: String,
        args: Vec<AtomArg>,
    },
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    /// The conditional connective `p ~> q`: true where `p` is true and `q`
    /// is true, false where `p` is true and `q` is false, undefined
    /// everywhere else.
    CondConn(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    Compare(ProbTerm, Rel, ProbTerm),
}

/// A probability term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProbTerm {
    Const(Rational),
    /// `[body]_{x̄}`: the proportion of domain tuples (for the bound
    /// variables) on which the body holds.
    Prop {
        body: Box<Formula>,
        bound: Vec<String>,
    },
    /// `[consequent given condition]_{x̄}`: conditional proportion, exactly 0
    /// when the condition's proportion is 0.
    CondProp {
        consequent: Box<Formula>,
        condition: Box<Formula>,
        bound: Vec<String>,
    },
    /// `P1 x̄. body`: proportion of definite-true cases among the definite
    /// ones; undefined when no case is definite.
    P1 {
        bound: Vec<String>,
        body: Box<Formula>,
    },
    /// `P2 x̄. body`: proportion of definite cases among all cases.
    P2 {
        bound: Vec<String>,
        body: Box<Formula>,
    },
    Add(Box<ProbTerm>, Box<ProbTerm>),
    Sub(Box<ProbTerm>, Box<ProbTerm>),
    Mul(Box<ProbTerm>, Box<ProbTerm>),
}

// The `not`/`add`/`sub`/`mul` builders construct AST nodes, not values.
#[allow(clippy::should_implement_trait)]
impl Formula {
    pub fn atom(pred: impl Into<String>, args: Vec<AtomArg>) -> Self {
        Formula::Atom {
            pred: pred.into(),
            args,
        }
    }

    /// Unary atom applied to a variable, the most common shape in practice.
    pub fn va(pred: impl Into<String>, var: impl Into<String>) -> Self {
        Formula::atom(pred, vec![AtomArg::var(var)])
    }

    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Self) -> Self {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Self) -> Self {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn imp(self, rhs: Self) -> Self {
        Formula::Imp(Box::new(self), Box::new(rhs))
    }

    pub fn cond_conn(self, rhs: Self) -> Self {
        Formula::CondConn(Box::new(self), Box::new(rhs))
    }

    pub fn forall(var: impl Into<String>, body: Self) -> Self {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Self) -> Self {
        Formula::Exists(var.into(), Box::new(body))
    }

    pub fn compare(lhs: ProbTerm, rel: Rel, rhs: ProbTerm) -> Self {
        Formula::Compare(lhs, rel, rhs)
    }
}

#[allow(clippy::should_implement_trait)]
impl ProbTerm {
    pub fn constant(value: Rational) -> Self {
        ProbTerm::Const(value)
    }

    pub fn prop(body: Formula, bound: Vec<String>) -> Self {
        ProbTerm::Prop {
            body: Box::new(body),
            bound,
        }
    }

    pub fn cond_prop(consequent: Formula, condition: Formula, bound: Vec<String>) -> Self {
        ProbTerm::CondProp {
            consequent: Box::new(consequent),
            condition: Box::new(condition),
            bound,
        }
    }

    pub fn p1(bound: Vec<String>, body: Formula) -> Self {
        ProbTerm::P1 {
            bound,
            body: Box::new(body),
        }
    }

    pub fn p2(bound: Vec<String>, body: Formula) -> Self {
        ProbTerm::P2 {
            bound,
            body: Box::new(body),
        }
    }

    pub fn add(self, rhs: Self) -> Self {
        ProbTerm::Add(Box::new(self), Box::new(rhs))
    }

    pub fn sub(self, rhs: Self) -> Self {
        ProbTerm::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn mul(self, rhs: Self) -> Self {
        ProbTerm::Mul(Box::new(self), Box::new(rhs))
    }
}

/// Free variables of a formula. Quantifiers and the binder lists of
/// proportion terms bind; everything else passes through.
pub fn free_variables(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_formula(f, &mut Vec::new(), &mut out);
    out
}

/// Free variables of a probability term.
pub fn term_free_variables(t: &ProbTerm) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_term(t, &mut Vec::new(), &mut out);
    out
}

fn collect_formula(f: &Formula, scope: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match f {
        Formula::Atom { args, .. } => {
            for arg in args {
                if let AtomArg::Var(v) = arg {
                    if !scope.iter().any(|s| s == v) {
                        out.insert(v.clone());
                    }
                }
            }
        }
        Formula::Not(inner) => collect_formula(inner, scope, out),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::CondConn(l, r) => {
            collect_formula(l, scope, out);
            collect_formula(r, scope, out);
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            scope.push(v.clone());
            collect_formula(body, scope, out);
            scope.pop();
        }
        Formula::Compare(l, _, r) => {
            collect_term(l, scope, out);
            collect_term(r, scope, out);
        }
    }
}

fn collect_term(t: &ProbTerm, scope: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match t {
        ProbTerm::Const(_) => {}
        ProbTerm::Prop { body, bound }
        | ProbTerm::P1 { bound, body }
        | ProbTerm::P2 { bound, body } => {
            let depth = scope.len();
            scope.extend(bound.iter().cloned());
            collect_formula(body, scope, out);
            scope.truncate(depth);
        }
        ProbTerm::CondProp {
            consequent,
            condition,
            bound,
        } => {
            let depth = scope.len();
            scope.extend(bound.iter().cloned());
            collect_formula(consequent, scope, out);
            collect_formula(condition, scope, out);
            scope.truncate(depth);
        }
        ProbTerm::Add(l, r) | ProbTerm::Sub(l, r) | ProbTerm::Mul(l, r) => {
            collect_term(l, scope, out);
            collect_term(r, scope, out);
        }
    }
}

/// Replace free occurrences of `var` by the constant `constant`.
///
/// Only constants are substituted in, so capture is impossible; binders that
/// rebind `var` shield their bodies.
pub fn substitute(f: &Formula, var: &str, constant: &str) -> Formula {
    match f {
        Formula::Atom { pred, args } => Formula::Atom {
            pred: pred.clone(),
            args: args
                .iter()
                .map(|a| match a {
                    AtomArg::Var(v) if v == var => AtomArg::cst(constant),
                    other => other.clone(),
                })
                .collect(),
        },
        Formula::Not(inner) => substitute(inner, var, constant).not(),
        Formula::And(l, r) => substitute(l, var, constant).and(substitute(r, var, constant)),
        Formula::Or(l, r) => substitute(l, var, constant).or(substitute(r, var, constant)),
        Formula::Imp(l, r) => substitute(l, var, constant).imp(substitute(r, var, constant)),
        Formula::CondConn(l, r) => {
            substitute(l, var, constant).cond_conn(substitute(r, var, constant))
        }
        Formula::Forall(v, _) if v == var => f.clone(),
        Formula::Forall(v, body) => Formula::forall(v.clone(), substitute(body, var, constant)),
        Formula::Exists(v, _) if v == var => f.clone(),
        Formula::Exists(v, body) => Formula::exists(v.clone(), substitute(body, var, constant)),
        Formula::Compare(l, rel, r) => Formula::Compare(
            substitute_term(l, var, constant),
            *rel,
            substitute_term(r, var, constant),
        ),
    }
}

/// Term-level counterpart of [`substitute`].
pub fn substitute_term(t: &ProbTerm, var: &str, constant: &str) -> ProbTerm {
    match t {
        ProbTerm::Const(_) => t.clone(),
        ProbTerm::Prop { body, bound } => {
            if bound.iter().any(|b| b == var) {
                t.clone()
            } else {
                ProbTerm::Prop {
                    body: Box::new(substitute(body, var, constant)),
                    bound: bound.clone(),
                }
            }
        }
        ProbTerm::CondProp {
            consequent,
            condition,
            bound,
        } => {
            if bound.iter().any(|b| b == var) {
                t.clone()
            } else {
                ProbTerm::CondProp {
                    consequent: Box::new(substitute(consequent, var, constant)),
                    condition: Box::new(substitute(condition, var, constant)),
                    bound: bound.clone(),
                }
            }
        }
        ProbTerm::P1 { bound, body } => {
            if bound.iter().any(|b| b == var) {
                t.clone()
            } else {
                ProbTerm::P1 {
                    bound: bound.clone(),
                    body: Box::new(substitute(body, var, constant)),
                }
            }
        }
        ProbTerm::P2 { bound, body } => {
            if bound.iter().any(|b| b == var) {
                t.clone()
            } else {
                ProbTerm::P2 {
                    bound: bound.clone(),
                    body: Box::new(substitute(body, var, constant)),
                }
            }
        }
        ProbTerm::Add(l, r) => ProbTerm::Add(
            Box::new(substitute_term(l, var, constant)),
            Box::new(substitute_term(r, var, constant)),
        ),
        ProbTerm::Sub(l, r) => ProbTerm::Sub(
            Box::new(substitute_term(l, var, constant)),
            Box::new(substitute_term(r, var, constant)),
        ),
        ProbTerm::Mul(l, r) => ProbTerm::Mul(
            Box::new(substitute_term(l, var, constant)),
            Box::new(substitute_term(r, var, constant)),
        ),
    }
}

/// True when the formula avoids every three-valued construct: no conditional
/// connective and no `P1`/`P2` quantifier anywhere, including inside the
/// bodies of probability terms.
pub fn classical_fragment(f: &Formula) -> bool {
    match f {
        Formula::Atom { .. } => true,
        Formula::Not(inner) => classical_fragment(inner),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
            classical_fragment(l) && classical_fragment(r)
        }
        Formula::CondConn(..) => false,
        Formula::Forall(_, body) | Formula::Exists(_, body) => classical_fragment(body),
        Formula::Compare(l, _, r) => classical_term(l) && classical_term(r),
    }
}

/// Term-level counterpart of [`classical_fragment`].
pub fn classical_term(t: &ProbTerm) -> bool {
    match t {
        ProbTerm::Const(_) => true,
        ProbTerm::Prop { body, .. } => classical_fragment(body),
        ProbTerm::CondProp {
            consequent,
            condition,
            ..
        } => classical_fragment(consequent) && classical_fragment(condition),
        ProbTerm::P1 { .. } | ProbTerm::P2 { .. } => false,
        ProbTerm::Add(l, r) | ProbTerm::Sub(l, r) | ProbTerm::Mul(l, r) => {
            classical_term(l) && classical_term(r)
        }
    }
}
