//! Forward chaining over probability facts.
//!
//! A knowledge base holds two kinds of fact: `HOLDS f` asserts a formula
//! (closed, or read as universally quantified), and
//! `BOUND [a]_{x} >= 19/20` constrains a proportion or conditional
//! proportion. Rule schemas, written in the crate's concrete syntax:
//!
//! | rule | premises                                    | conclusion            |
//! |------|---------------------------------------------|-----------------------|
//! | R1   | `a`, `a -> b`                               | `b`                   |
//! | R1'  | `[a]_{x} = 1`, `[a -> b]_{x} = 1`           | `[b]_{x} = 1`         |
//! | R2'  | `a -> b` (under any `forall` prefix)        | `[a -> b]_{x} = 1`    |
//! | R1"  | `[a]_{x} = 1`, `[b given a]_{x} = 1`        | `[b]_{x} = 1`         |
//! | R2"  | alias of R2'                                |                       |
//! | R3"  | `[a -> b]_{x} = 1`, `[a]_{x} > 0`           | `[b given a]_{x} = 1` |
//! | WMP  | `[a]_{x} >= c1`, `[a -> b]_{x} >= c2`       | `[b]_{x} >= c1+c2-1`  |
//! | DISJ | `[a]_{x} >= c` and a chosen disjunct `b`    | `[a | b]_{x} >= c`    |
//!
//! The binder `x` must list exactly the free variables of the formulas a
//! rule touches, and must be the same vector in every premise. Premises
//! stated with `=` or `>` are accepted where a schema asks for a lower
//! bound. The WMP conclusion is clamped at 0.
//!
//! [`derive`] searches for a chain from a knowledge base to a goal;
//! [`check_soundness`] replays a chain against a model and reports which
//! facts actually hold there, which is the tool for watching a bound
//! learned in one population fail in another.

use std::collections::BTreeSet;
use std::fmt;

use crate::errors::{EvalError, LineError, ParseError, RuleError, SourceSpan};
use crate::model::{Assignment, FiniteModel};
use crate::parser::{parse, render, render_term};
use crate::rational::Rational;
use crate::syntax::{classical_fragment, free_variables, Formula, ProbTerm, Rel};
use crate::twovalued::{eval2, eval_term};

/// The proportion term of a bound fact: a plain or conditional proportion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactTerm {
    Prop {
        body: Formula,
        bound: Vec<String>,
    },
    CondProp {
        consequent: Formula,
        condition: Formula,
        bound: Vec<String>,
    },
}

impl FactTerm {
    pub fn binder(&self) -> &[String] {
        match self {
            FactTerm::Prop { bound, .. } | FactTerm::CondProp { bound, .. } => bound,
        }
    }

    pub fn to_probterm(&self) -> ProbTerm {
        match self {
            FactTerm::Prop { body, bound } => ProbTerm::prop(body.clone(), bound.clone()),
            FactTerm::CondProp {
                consequent,
                condition,
                bound,
            } => ProbTerm::cond_prop(consequent.clone(), condition.clone(), bound.clone()),
        }
    }

    fn from_probterm(t: &ProbTerm) -> Option<FactTerm> {
        match t {
            ProbTerm::Prop { body, bound } => Some(FactTerm::Prop {
                body: (**body).clone(),
                bound: bound.clone(),
            }),
            ProbTerm::CondProp {
                consequent,
                condition,
                bound,
            } => Some(FactTerm::CondProp {
                consequent: (**consequent).clone(),
                condition: (**condition).clone(),
                bound: bound.clone(),
            }),
            _ => None,
        }
    }

    fn parts(&self) -> Vec<&Formula> {
        match self {
            FactTerm::Prop { body, .. } => vec![body],
            FactTerm::CondProp {
                consequent,
                condition,
                ..
            } => vec![consequent, condition],
        }
    }
}

/// One knowledge-base entry.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Fact {
    Holds(Formula),
    Bound {
        term: FactTerm,
        rel: Rel,
        value: Rational,
    },
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fact::Holds(g) => write!(f, "HOLDS {}", render(g)),
            Fact::Bound { term, rel, value } => write!(
                f,
                "BOUND {} {} {}",
                render_term(&term.to_probterm()),
                rel.symbol(),
                value
            ),
        }
    }
}

/// Rule schema names as used in derivation traces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleName {
    R1,
    R1Prime,
    R2Prime,
    R1DoublePrime,
    R2DoublePrime,
    R3DoublePrime,
    Wmp,
    Disj,
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleName::R1 => "R1",
            RuleName::R1Prime => "R1'",
            RuleName::R2Prime => "R2'",
            RuleName::R1DoublePrime => "R1\"",
            RuleName::R2DoublePrime => "R2\"",
            RuleName::R3DoublePrime => "R3\"",
            RuleName::Wmp => "WMP",
            RuleName::Disj => "DISJ",
        })
    }
}

/// A single rule application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInstance {
    pub rule: RuleName,
    pub premises: Vec<Fact>,
    pub conclusion: Fact,
}

impl fmt::Display for RuleInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.rule)?;
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, " ==> {}", self.conclusion)
    }
}

/// A chain of rule applications from a knowledge base to a goal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub kb: Vec<Fact>,
    pub goal: Fact,
    pub steps: Vec<RuleInstance>,
}

impl Derivation {
    /// Replays every step through [`apply_rule`] and checks that premises
    /// are available when used and that the final fact entails the goal.
    pub fn validate(&self) -> Result<(), RuleError> {
        let mut known: Vec<&Fact> = self.kb.iter().collect();
        for step in &self.steps {
            for p in &step.premises {
                if !known.contains(&p) {
                    return Err(RuleError::SchemaMismatch {
                        rule: step.rule.to_string(),
                        detail: format!("premise {p} is neither in the KB nor derived earlier"),
                    });
                }
            }
            let disjunct = match step.rule {
                RuleName::Disj => match &step.conclusion {
                    Fact::Bound {
                        term:
                            FactTerm::Prop {
                                body: Formula::Or(_, r),
                                ..
                            },
                        ..
                    } => Some((**r).clone()),
                    _ => None,
                },
                _ => None,
            };
            let replayed = apply_rule(step.rule, &step.premises, disjunct.as_ref())?;
            if replayed != step.conclusion {
                return Err(RuleError::SchemaMismatch {
                    rule: step.rule.to_string(),
                    detail: format!(
                        "recorded conclusion {} differs from {replayed}",
                        step.conclusion
                    ),
                });
            }
            known.push(&step.conclusion);
        }
        let last = self.steps.last().map(|s| &s.conclusion);
        let reached = match last {
            Some(fact) => entails(fact, &self.goal),
            None => self.kb.iter().any(|f| entails(f, &self.goal)),
        };
        if reached {
            Ok(())
        } else {
            Err(RuleError::SchemaMismatch {
                rule: "derivation".into(),
                detail: format!("final fact does not entail the goal {}", self.goal),
            })
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return write!(f, "goal {} is already in the KB", self.goal);
        }
        for (i, step) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{}. {step}", i + 1)?;
        }
        Ok(())
    }
}

/// Result of a derivation search.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum DeriveOutcome {
    Found(Derivation),
    /// No chain within budget; `explored` counts accepted derived facts.
    NotFound {
        explored: usize,
    },
}

/// Whether fact `a` makes fact `b` redundant: same shape and a bound at
/// least as tight.
pub fn entails(a: &Fact, b: &Fact) -> bool {
    match (a, b) {
        (Fact::Holds(f), Fact::Holds(g)) => f == g,
        (
            Fact::Bound {
                term: ta,
                rel: ra,
                value: va,
            },
            Fact::Bound {
                term: tb,
                rel: rb,
                value: vb,
            },
        ) => ta == tb && bound_entails(*ra, va, *rb, vb),
        _ => false,
    }
}

fn bound_entails(ra: Rel, va: &Rational, rb: Rel, vb: &Rational) -> bool {
    match rb {
        Rel::Eq => ra == Rel::Eq && va == vb,
        Rel::Ge => matches!(ra, Rel::Eq | Rel::Ge | Rel::Gt) && va >= vb,
        Rel::Gt => match ra {
            Rel::Eq | Rel::Ge => va > vb,
            Rel::Gt => va >= vb,
            _ => false,
        },
        Rel::Le => matches!(ra, Rel::Eq | Rel::Le | Rel::Lt) && va <= vb,
        Rel::Lt => match ra {
            Rel::Eq | Rel::Le => va < vb,
            Rel::Lt => va <= vb,
            _ => false,
        },
    }
}

fn mismatch(rule: RuleName, detail: impl Into<String>) -> RuleError {
    RuleError::SchemaMismatch {
        rule: rule.to_string(),
        detail: detail.into(),
    }
}

fn side_condition(rule: RuleName, detail: impl Into<String>) -> RuleError {
    RuleError::SideCondition {
        rule: rule.to_string(),
        detail: detail.into(),
    }
}

fn expect_arity(rule: RuleName, premises: &[Fact], n: usize) -> Result<(), RuleError> {
    if premises.len() == n {
        Ok(())
    } else {
        Err(mismatch(
            rule,
            format!("takes {n} premise(s), got {}", premises.len()),
        ))
    }
}

fn as_prop_eq_one<'a>(
    fact: &'a Fact,
    rule: RuleName,
    which: &str,
) -> Result<(&'a Formula, &'a [String]), RuleError> {
    match fact {
        Fact::Bound {
            term: FactTerm::Prop { body, bound },
            rel: Rel::Eq,
            value,
        } if *value == Rational::one() => Ok((body, bound)),
        _ => Err(mismatch(
            rule,
            format!("{which} premise must have the form BOUND [a]_{{x}} = 1, got {fact}"),
        )),
    }
}

fn as_lower_bound<'a>(
    fact: &'a Fact,
    rule: RuleName,
    which: &str,
) -> Result<(&'a Formula, &'a [String], &'a Rational), RuleError> {
    match fact {
        Fact::Bound {
            term: FactTerm::Prop { body, bound },
            rel: Rel::Eq | Rel::Ge | Rel::Gt,
            value,
        } => Ok((body, bound, value)),
        _ => Err(mismatch(
            rule,
            format!("{which} premise must lower-bound a proportion, got {fact}"),
        )),
    }
}

fn check_binder_vector(
    rule: RuleName,
    bound: &[String],
    parts: &[&Formula],
) -> Result<(), RuleError> {
    let mut want: BTreeSet<String> = BTreeSet::new();
    for f in parts {
        want.extend(free_variables(f));
    }
    let have: BTreeSet<String> = bound.iter().cloned().collect();
    if have == want {
        Ok(())
    } else {
        let want: Vec<String> = want.into_iter().collect();
        Err(side_condition(
            rule,
            format!(
                "binder ({}) must be exactly the free variables ({})",
                bound.join(", "),
                want.join(", ")
            ),
        ))
    }
}

fn same_binder(rule: RuleName, a: &[String], b: &[String]) -> Result<(), RuleError> {
    if a == b {
        Ok(())
    } else {
        Err(side_condition(
            rule,
            format!(
                "premise binders ({}) and ({}) differ",
                a.join(", "),
                b.join(", ")
            ),
        ))
    }
}

fn bound_fact(term: FactTerm, rel: Rel, value: Rational) -> Fact {
    Fact::Bound { term, rel, value }
}

/// Applies one rule schema to the given premises. `disjunct` is consulted
/// only by DISJ, which appends it on the right of the premise's body.
pub fn apply_rule(
    rule: RuleName,
    premises: &[Fact],
    disjunct: Option<&Formula>,
) -> Result<Fact, RuleError> {
    if rule != RuleName::Disj && disjunct.is_some() {
        return Err(mismatch(rule, "only DISJ takes a disjunct"));
    }
    match rule {
        RuleName::R1 => {
            expect_arity(rule, premises, 2)?;
            let Fact::Holds(a) = &premises[0] else {
                return Err(mismatch(rule, "first premise must be a HOLDS fact"));
            };
            let Fact::Holds(Formula::Imp(l, r)) = &premises[1] else {
                return Err(mismatch(
                    rule,
                    "second premise must be HOLDS of an implication",
                ));
            };
            if **l != *a {
                return Err(mismatch(
                    rule,
                    "the implication's antecedent must equal the first premise",
                ));
            }
            Ok(Fact::Holds((**r).clone()))
        }
        RuleName::R1Prime => {
            expect_arity(rule, premises, 2)?;
            let (a, x1) = as_prop_eq_one(&premises[0], rule, "first")?;
            let (imp, x2) = as_prop_eq_one(&premises[1], rule, "second")?;
            let Formula::Imp(l, r) = imp else {
                return Err(mismatch(rule, "second premise body must be an implication"));
            };
            if **l != *a {
                return Err(mismatch(
                    rule,
                    "the implication's antecedent must equal the first premise body",
                ));
            }
            same_binder(rule, x1, x2)?;
            check_binder_vector(rule, x1, &[l, r])?;
            Ok(bound_fact(
                FactTerm::Prop {
                    body: (**r).clone(),
                    bound: x1.to_vec(),
                },
                Rel::Eq,
                Rational::one(),
            ))
        }
        RuleName::R2Prime | RuleName::R2DoublePrime => {
            expect_arity(rule, premises, 1)?;
            let Fact::Holds(f) = &premises[0] else {
                return Err(mismatch(rule, "premise must be a HOLDS fact"));
            };
            let mut body = f;
            while let Formula::Forall(_, inner) = body {
                body = inner;
            }
            let Formula::Imp(..) = body else {
                return Err(mismatch(
                    rule,
                    "premise must be an implication under an optional forall prefix",
                ));
            };
            let vars: Vec<String> = free_variables(body).into_iter().collect();
            if vars.is_empty() {
                return Err(mismatch(
                    rule,
                    "the implication has no free variables to bind",
                ));
            }
            Ok(bound_fact(
                FactTerm::Prop {
                    body: body.clone(),
                    bound: vars,
                },
                Rel::Eq,
                Rational::one(),
            ))
        }
        RuleName::R1DoublePrime => {
            expect_arity(rule, premises, 2)?;
            let (a, x1) = as_prop_eq_one(&premises[0], rule, "first")?;
            let Fact::Bound {
                term:
                    FactTerm::CondProp {
                        consequent,
                        condition,
                        bound: x2,
                    },
                rel: Rel::Eq,
                value,
            } = &premises[1]
            else {
                return Err(mismatch(
                    rule,
                    "second premise must have the form BOUND [b given a]_{x} = 1",
                ));
            };
            if *value != Rational::one() {
                return Err(mismatch(rule, "second premise must equal 1"));
            }
            if condition != a {
                return Err(mismatch(
                    rule,
                    "the condition must equal the first premise body",
                ));
            }
            same_binder(rule, x1, x2)?;
            check_binder_vector(rule, x1, &[condition, consequent])?;
            Ok(bound_fact(
                FactTerm::Prop {
                    body: consequent.clone(),
                    bound: x1.to_vec(),
                },
                Rel::Eq,
                Rational::one(),
            ))
        }
        RuleName::R3DoublePrime => {
            expect_arity(rule, premises, 2)?;
            let (imp, x1) = as_prop_eq_one(&premises[0], rule, "first")?;
            let Formula::Imp(l, r) = imp else {
                return Err(mismatch(rule, "first premise body must be an implication"));
            };
            let (a, x2, v) = as_lower_bound(&premises[1], rule, "second")?;
            let Fact::Bound { rel, .. } = &premises[1] else {
                unreachable!("as_lower_bound only matches bound facts");
            };
            if !bound_entails(*rel, v, Rel::Gt, &Rational::zero()) {
                return Err(mismatch(
                    rule,
                    "second premise must force the proportion above 0",
                ));
            }
            if *a != **l {
                return Err(mismatch(
                    rule,
                    "second premise body must equal the implication's antecedent",
                ));
            }
            same_binder(rule, x1, x2)?;
            check_binder_vector(rule, x1, &[l, r])?;
            Ok(bound_fact(
                FactTerm::CondProp {
                    consequent: (**r).clone(),
                    condition: (**l).clone(),
                    bound: x1.to_vec(),
                },
                Rel::Eq,
                Rational::one(),
            ))
        }
        RuleName::Wmp => {
            expect_arity(rule, premises, 2)?;
            let (a, x1, c1) = as_lower_bound(&premises[0], rule, "first")?;
            let (imp, x2, c2) = as_lower_bound(&premises[1], rule, "second")?;
            let Formula::Imp(l, r) = imp else {
                return Err(mismatch(rule, "second premise body must be an implication"));
            };
            if **l != *a {
                return Err(mismatch(
                    rule,
                    "the implication's antecedent must equal the first premise body",
                ));
            }
            same_binder(rule, x1, x2)?;
            check_binder_vector(rule, x1, &[l, r])?;
            let raw = c1.clone() + c2.clone() - Rational::one();
            let value = if raw.is_negative() {
                Rational::zero()
            } else {
                raw
            };
            Ok(bound_fact(
                FactTerm::Prop {
                    body: (**r).clone(),
                    bound: x1.to_vec(),
                },
                Rel::Ge,
                value,
            ))
        }
        RuleName::Disj => {
            expect_arity(rule, premises, 1)?;
            let Some(b) = disjunct else {
                return Err(mismatch(rule, "DISJ needs the disjunct to weaken with"));
            };
            let (a, x, c) = as_lower_bound(&premises[0], rule, "the")?;
            check_binder_vector(rule, x, &[a, b])?;
            Ok(bound_fact(
                FactTerm::Prop {
                    body: Formula::Or(Box::new(a.clone()), Box::new(b.clone())),
                    bound: x.to_vec(),
                },
                Rel::Ge,
                c.clone(),
            ))
        }
    }
}

struct Node {
    fact: Fact,
    rule: Option<RuleName>,
    premises: Vec<usize>,
}

fn formulas_of<'a>(fact: &'a Fact, out: &mut Vec<&'a Formula>) {
    match fact {
        Fact::Holds(f) => out.push(f),
        Fact::Bound { term, .. } => out.extend(term.parts()),
    }
}

fn collect_or_shapes(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::Or(l, r) => {
            if !out.iter().any(|g| g == f) {
                out.push(f.clone());
            }
            collect_or_shapes(l, out);
            collect_or_shapes(r, out);
        }
        Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => {
            collect_or_shapes(g, out)
        }
        Formula::And(l, r) | Formula::Imp(l, r) | Formula::CondConn(l, r) => {
            collect_or_shapes(l, out);
            collect_or_shapes(r, out);
        }
        Formula::Atom { .. } | Formula::Compare(..) => {}
    }
}

const SEARCH_RULES: [RuleName; 5] = [
    RuleName::R1,
    RuleName::R1Prime,
    RuleName::R1DoublePrime,
    RuleName::R3DoublePrime,
    RuleName::Wmp,
];

/// Breadth-first forward chaining from `kb` toward `goal`. The budget caps
/// how many derived facts are accepted; facts already entailed by a known
/// one are skipped, so saturation without the goal reports `NotFound`.
/// Disjuncts for DISJ are drawn from disjunctions appearing anywhere in the
/// KB or the goal, with the known fact as the left disjunct.
pub fn derive(kb: &[Fact], goal: &Fact, budget: usize) -> DeriveOutcome {
    let mut nodes: Vec<Node> = kb
        .iter()
        .map(|f| Node {
            fact: f.clone(),
            rule: None,
            premises: Vec::new(),
        })
        .collect();
    if nodes.iter().any(|n| entails(&n.fact, goal)) {
        return DeriveOutcome::Found(Derivation {
            kb: kb.to_vec(),
            goal: goal.clone(),
            steps: Vec::new(),
        });
    }

    let mut or_shapes: Vec<Formula> = Vec::new();
    {
        let mut formulas: Vec<&Formula> = Vec::new();
        for f in kb {
            formulas_of(f, &mut formulas);
        }
        formulas_of(goal, &mut formulas);
        for f in formulas {
            collect_or_shapes(f, &mut or_shapes);
        }
    }

    let mut accepted = 0usize;
    loop {
        let n = nodes.len();
        let mut fresh: Vec<(RuleName, Vec<usize>, Fact)> = Vec::new();
        for i in 0..n {
            let single = std::slice::from_ref(&nodes[i].fact);
            if let Ok(c) = apply_rule(RuleName::R2Prime, single, None) {
                offer(&nodes, &mut fresh, RuleName::R2Prime, vec![i], c);
            }
            for or in &or_shapes {
                let Formula::Or(l, r) = or else {
                    unreachable!()
                };
                let matches_left = matches!(
                    &nodes[i].fact,
                    Fact::Bound { term: FactTerm::Prop { body, .. }, .. } if body == &**l
                );
                if matches_left {
                    if let Ok(c) = apply_rule(RuleName::Disj, single, Some(r)) {
                        offer(&nodes, &mut fresh, RuleName::Disj, vec![i], c);
                    }
                }
            }
            for j in 0..n {
                let pair = [nodes[i].fact.clone(), nodes[j].fact.clone()];
                for rule in SEARCH_RULES {
                    if let Ok(c) = apply_rule(rule, &pair, None) {
                        offer(&nodes, &mut fresh, rule, vec![i, j], c);
                    }
                }
            }
        }
        if fresh.is_empty() {
            return DeriveOutcome::NotFound { explored: accepted };
        }
        for (rule, premises, fact) in fresh {
            if accepted == budget {
                return DeriveOutcome::NotFound { explored: accepted };
            }
            accepted += 1;
            let hit = entails(&fact, goal);
            nodes.push(Node {
                fact,
                rule: Some(rule),
                premises,
            });
            if hit {
                return DeriveOutcome::Found(reconstruct(&nodes, kb, goal, nodes.len() - 1));
            }
        }
    }
}

fn offer(
    nodes: &[Node],
    fresh: &mut Vec<(RuleName, Vec<usize>, Fact)>,
    rule: RuleName,
    premises: Vec<usize>,
    fact: Fact,
) {
    if nodes.iter().any(|n| entails(&n.fact, &fact)) {
        return;
    }
    if fresh.iter().any(|(_, _, f)| entails(f, &fact)) {
        return;
    }
    fresh.push((rule, premises, fact));
}

fn reconstruct(nodes: &[Node], kb: &[Fact], goal: &Fact, idx: usize) -> Derivation {
    fn visit(nodes: &[Node], idx: usize, seen: &mut Vec<bool>, order: &mut Vec<usize>) {
        if seen[idx] || nodes[idx].rule.is_none() {
            return;
        }
        seen[idx] = true;
        for &p in &nodes[idx].premises {
            visit(nodes, p, seen, order);
        }
        order.push(idx);
    }
    let mut seen = vec![false; nodes.len()];
    let mut order = Vec::new();
    visit(nodes, idx, &mut seen, &mut order);
    let steps = order
        .into_iter()
        .map(|i| RuleInstance {
            rule: nodes[i].rule.expect("KB nodes are never emitted as steps"),
            premises: nodes[i]
                .premises
                .iter()
                .map(|&p| nodes[p].fact.clone())
                .collect(),
            conclusion: nodes[i].fact.clone(),
        })
        .collect();
    Derivation {
        kb: kb.to_vec(),
        goal: goal.clone(),
        steps,
    }
}

/// Truth of a fact on a model. `HOLDS` facts are closed under `forall`
/// before evaluation; bound facts compare the exact term value.
pub fn fact_truth(m: &FiniteModel, fact: &Fact) -> Result<bool, EvalError> {
    let env = Assignment::new();
    match fact {
        Fact::Holds(f) => {
            let mut g = f.clone();
            for v in free_variables(f).into_iter().rev() {
                g = Formula::forall(v, g);
            }
            eval2(m, &env, &g)
        }
        Fact::Bound { term, rel, value } => {
            let v = eval_term(m, &env, &term.to_probterm())?;
            Ok(rel.holds(&v, value))
        }
    }
}

/// Truth of one derivation step's facts on a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepCheck {
    pub rule: RuleName,
    pub premises: Vec<(Fact, bool)>,
    pub conclusion: (Fact, bool),
    /// False only when every premise holds on the model but the conclusion
    /// does not.
    pub locally_sound: bool,
}

/// Per-step truth report for a derivation replayed on a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessReport {
    pub steps: Vec<StepCheck>,
    pub all_locally_sound: bool,
}

pub fn check_soundness(d: &Derivation, m: &FiniteModel) -> Result<SoundnessReport, EvalError> {
    let mut steps = Vec::with_capacity(d.steps.len());
    for step in &d.steps {
        let mut premises = Vec::with_capacity(step.premises.len());
        for p in &step.premises {
            premises.push((p.clone(), fact_truth(m, p)?));
        }
        let conclusion_truth = fact_truth(m, &step.conclusion)?;
        let all_premises = premises.iter().all(|(_, t)| *t);
        steps.push(StepCheck {
            rule: step.rule,
            premises,
            conclusion: (step.conclusion.clone(), conclusion_truth),
            locally_sound: !all_premises || conclusion_truth,
        });
    }
    let all_locally_sound = steps.iter().all(|s| s.locally_sound);
    Ok(SoundnessReport {
        steps,
        all_locally_sound,
    })
}

/// Parses one knowledge-base line: `HOLDS <formula>` or
/// `BOUND <proportion term> <rel> <rational>`.
pub fn parse_fact(line: &str) -> Result<Fact, ParseError> {
    let stripped = line.trim_start();
    let whole = || SourceSpan::new(0, line.len());
    let Some((head, rest)) = stripped.split_once(char::is_whitespace) else {
        return Err(ParseError::new(
            whole(),
            "expected HOLDS or BOUND, then a fact",
        ));
    };
    let offset = line.len() - rest.len();
    let shift = |mut e: ParseError| {
        e.span.start += offset;
        e.span.end += offset;
        e
    };
    match head {
        "HOLDS" => {
            let f = parse(rest).map_err(shift)?;
            if !classical_fragment(&f) {
                return Err(ParseError::new(
                    whole(),
                    "HOLDS facts must avoid ~>, P1, and P2",
                ));
            }
            Ok(Fact::Holds(f))
        }
        "BOUND" => {
            let f = parse(rest).map_err(shift)?;
            let Formula::Compare(lhs, rel, rhs) = f else {
                return Err(ParseError::new(
                    whole(),
                    "BOUND facts must compare a proportion term to a rational",
                ));
            };
            let ProbTerm::Const(value) = rhs else {
                return Err(ParseError::new(
                    whole(),
                    "the right side of a BOUND fact must be a rational constant",
                ));
            };
            let Some(term) = FactTerm::from_probterm(&lhs) else {
                return Err(ParseError::new(
                    whole(),
                    "the left side of a BOUND fact must be a proportion or conditional proportion",
                ));
            };
            if term.parts().iter().any(|p| !classical_fragment(p)) {
                return Err(ParseError::new(
                    whole(),
                    "BOUND fact bodies must avoid ~>, P1, and P2",
                ));
            }
            if !value.in_unit_interval() {
                return Err(ParseError::new(
                    whole(),
                    format!("bound value {value} lies outside [0, 1]"),
                ));
            }
            Ok(Fact::Bound { term, rel, value })
        }
        other => Err(ParseError::new(
            whole(),
            format!("expected HOLDS or BOUND, got `{other}`"),
        )),
    }
}

/// Parses a knowledge-base file: one fact per line, `#` comments and blank
/// lines ignored.
pub fn parse_kb(text: &str) -> Result<Vec<Fact>, LineError> {
    let mut facts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match parse_fact(line) {
            Ok(f) => facts.push(f),
            Err(e) => return Err(LineError::new(i + 1, e)),
        }
    }
    Ok(facts)
}
