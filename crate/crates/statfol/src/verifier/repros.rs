//! Named, deterministic reproductions: each reduces a worked example or a
//! bound theorem to a list of exact-rational claims and checks them by
//! direct computation. Failures are reported in the claim list, never
//! raised, so a report always comes back.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::deduction::{check_soundness, derive, parse_fact, DeriveOutcome};
use crate::model::{
    enumerate_models, random_model, restrict, world_prob, Assignment, FiniteModel, ModelShape,
};
use crate::parser::{parse, parse_term, render};
use crate::rational::Rational;
use crate::syntax::Formula;
use crate::threevalued::{eval3, eval_term3, p1, p2, P1Value};
use crate::truth::Truth3;
use crate::twovalued::{cond_prop, eval2, prop};

use super::families::{classical_shapes, kleene_shapes, nine_shapes};
use super::resources;

/// One checked statement: what was claimed, what came out, and the verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub description: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Claim {
    fn exact<T: PartialEq + fmt::Display>(description: &str, expected: T, computed: T) -> Claim {
        Claim {
            description: description.to_string(),
            pass: expected == computed,
            expected: expected.to_string(),
            computed: computed.to_string(),
        }
    }

    fn holds(description: &str, expected: &str, computed: String, pass: bool) -> Claim {
        Claim {
            description: description.to_string(),
            expected: expected.to_string(),
            computed,
            pass,
        }
    }

    fn counted(description: &str, checks: u64, violations: &[String]) -> Claim {
        let expected = format!("no violations in {checks} checks");
        let computed = if violations.is_empty() {
            expected.clone()
        } else {
            format!(
                "{} violations in {checks} checks; first: {}",
                violations.len(),
                violations[0]
            )
        };
        Claim {
            description: description.to_string(),
            expected,
            computed,
            pass: violations.is_empty(),
        }
    }
}

/// Outcome of one named reproduction.
#[derive(Clone, Debug, Serialize)]
pub struct ReproReport {
    pub name: String,
    pub description: String,
    pub claims: Vec<Claim>,
    pub pass: bool,
}

impl ReproReport {
    fn new(name: ReproName, claims: Vec<Claim>) -> Self {
        let pass = claims.iter().all(|c| c.pass);
        ReproReport {
            name: name.name().to_string(),
            description: name.describe().to_string(),
            claims,
            pass,
        }
    }
}

impl fmt::Display for ReproReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} - {}", self.name, self.description)?;
        for claim in &self.claims {
            writeln!(
                f,
                "  [{}] {}",
                if claim.pass { "PASS" } else { "FAIL" },
                claim.description
            )?;
            writeln!(f, "         expected: {}", claim.expected)?;
            writeln!(f, "         computed: {}", claim.computed)?;
        }
        write!(f, "{}", if self.pass { "PASS" } else { "FAIL" })
    }
}

/// The named reproductions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReproName {
    Example1,
    Example2,
    Example3,
    Example4,
    Example5,
    Approach2,
    Theorem3,
    Theorem4,
    P1P2Properties,
    NestedConditional,
}

impl ReproName {
    pub const ALL: [ReproName; 10] = [
        ReproName::Example1,
        ReproName::Example2,
        ReproName::Example3,
        ReproName::Example4,
        ReproName::Example5,
        ReproName::Approach2,
        ReproName::Theorem3,
        ReproName::Theorem4,
        ReproName::P1P2Properties,
        ReproName::NestedConditional,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReproName::Example1 => "example1",
            ReproName::Example2 => "example2",
            ReproName::Example3 => "example3",
            ReproName::Example4 => "example4",
            ReproName::Example5 => "example5",
            ReproName::Approach2 => "approach2",
            ReproName::Theorem3 => "theorem3",
            ReproName::Theorem4 => "theorem4",
            ReproName::P1P2Properties => "p1p2_properties",
            ReproName::NestedConditional => "nested_conditional",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            ReproName::Example1 => {
                "conditioning is a dichotomy: the two conditionals over a condition sum to 1 or 0"
            }
            ReproName::Example2 => "anything conditioned on itself scores 1 or 0",
            ReproName::Example3 => {
                "population composition bounds the proportion of non-men at 7/10"
            }
            ReproName::Example4 => {
                "universally false antecedents: implications force a degenerate population, \
                 the conditional connective does not"
            }
            ReproName::Example5 => "the courtroom argument and its unsound transfer",
            ReproName::Approach2 => "possible-worlds reading of birds that mostly fly",
            ReproName::Theorem3 => {
                "the conditional proportion never exceeds the implication proportion"
            }
            ReproName::Theorem4 => {
                "exact identity linking conditional and implication proportions, and the \
                 stated lower bound"
            }
            ReproName::P1P2Properties => {
                "algebraic properties of the definiteness quantifiers P1 and P2"
            }
            ReproName::NestedConditional => {
                "a nested conditional connective evaluated under the P1 quantifier"
            }
        }
    }
}

impl fmt::Display for ReproName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReproName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReproName::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = ReproName::ALL.iter().map(|n| n.name()).collect();
                format!("unknown reproduction `{s}`; known: {}", known.join(", "))
            })
    }
}

/// Run one named reproduction. Deterministic: fixed seeds, exact
/// arithmetic, enumeration in a fixed order.
pub fn repro(name: ReproName) -> ReproReport {
    match name {
        ReproName::Example1 => example1(),
        ReproName::Example2 => example2(),
        ReproName::Example3 => example3(),
        ReproName::Example4 => example4(),
        ReproName::Example5 => example5(),
        ReproName::Approach2 => approach2(),
        ReproName::Theorem3 => theorem3(),
        ReproName::Theorem4 => theorem4(),
        ReproName::P1P2Properties => p1p2_properties(),
        ReproName::NestedConditional => nested_conditional(),
    }
}

fn q(text: &str) -> Rational {
    text.parse().expect("literal rational")
}

fn bound_x() -> [String; 1] {
    ["x".to_string()]
}

/// Every model over two unary predicates `p`, `q` with domain sizes 1
/// through `max_domain`.
fn sweep_models(max_domain: usize, allow_undef: bool) -> Vec<FiniteModel> {
    let mut out = Vec::new();
    for size in 1..=max_domain {
        let shape = ModelShape::new(size, &[("p", 1), ("q", 1)], allow_undef);
        out.extend(enumerate_models(&shape, 1 << 22).expect("family fits the cap"));
    }
    out
}

/// Seeded random models over the same shape, sizes cycling 1 through
/// `max_domain`.
fn random_sweep(count: u64, max_domain: usize, allow_undef: bool) -> Vec<FiniteModel> {
    (0..count)
        .map(|seed| {
            let size = 1 + (seed as usize) % max_domain;
            random_model(
                &ModelShape::new(size, &[("p", 1), ("q", 1)], allow_undef),
                seed,
            )
        })
        .collect()
}

/// Compact one-line account of a model with unary predicates, for claim
/// details.
fn describe_model(m: &FiniteModel) -> String {
    let preds: Vec<(String, usize)> = m.predicates().map(|(n, a)| (n.to_string(), a)).collect();
    let mut parts = Vec::new();
    for (name, arity) in preds {
        if arity != 1 {
            continue;
        }
        let mut t = Vec::new();
        let mut u = Vec::new();
        for i in 0..m.domain_size() as u32 {
            match m.truth_at(&name, &[i]).expect("declared predicate") {
                Truth3::True => t.push(m.constant_name(i).to_string()),
                Truth3::Undef => u.push(m.constant_name(i).to_string()),
                Truth3::False => {}
            }
        }
        let mut part = format!("{name}:T{{{}}}", t.join(","));
        if !u.is_empty() {
            part.push_str(&format!("U{{{}}}", u.join(",")));
        }
        parts.push(part);
    }
    format!("|D|={}, {}", m.domain_size(), parts.join(" "))
}

/// Per-element truth counts `(true, false, undefined)` of a one-variable
/// formula; an evaluation oracle independent of the quantifier code.
fn element_counts(m: &FiniteModel, body: &Formula) -> (u64, u64, u64) {
    let (mut t, mut f, mut u) = (0, 0, 0);
    for c in m.domain() {
        let env = Assignment::new().bind("x", c.clone());
        match eval3(m, &env, body).expect("family formulas evaluate") {
            Truth3::True => t += 1,
            Truth3::False => f += 1,
            Truth3::Undef => u += 1,
        }
    }
    (t, f, u)
}

fn example1() -> ReproReport {
    let env = Assignment::new();
    let bound = bound_x();

    let mut dichotomy = Vec::new();
    let mut one_iff_positive = Vec::new();
    let mut checks = 0u64;
    for m in sweep_models(4, false) {
        for alpha in classical_shapes("x") {
            for beta in classical_shapes("x") {
                checks += 1;
                let here = cond_prop(&m, &env, &alpha, &beta, &bound).expect("classical");
                let there =
                    cond_prop(&m, &env, &alpha.clone().not(), &beta, &bound).expect("classical");
                let sum = here + there;
                if !(sum.is_zero() || sum.is_one()) {
                    dichotomy.push(format!(
                        "sum {sum} for alpha = {}, beta = {} on {}",
                        render(&alpha),
                        render(&beta),
                        describe_model(&m)
                    ));
                }
                let positive = !prop(&m, &env, &beta, &bound).expect("classical").is_zero();
                if sum.is_one() != positive {
                    one_iff_positive.push(format!(
                        "sum {sum} with condition proportion {} on {}",
                        if positive { "positive" } else { "zero" },
                        describe_model(&m)
                    ));
                }
            }
        }
    }

    let mut repair = Vec::new();
    let mut repair_checks = 0u64;
    let mut defined_cases = 0u64;
    for m in sweep_models(4, true) {
        for alpha in classical_shapes("x") {
            for beta in classical_shapes("x") {
                repair_checks += 1;
                let here = p1(&m, &env, &beta.clone().cond_conn(alpha.clone()), &bound)
                    .expect("total evaluation");
                let there = p1(
                    &m,
                    &env,
                    &beta.clone().cond_conn(alpha.clone().not()),
                    &bound,
                )
                .expect("total evaluation");
                let (P1Value::Defined(a), P1Value::Defined(b)) = (here, there) else {
                    continue;
                };
                defined_cases += 1;
                let sum = a + b;
                if !sum.is_one() {
                    repair.push(format!(
                        "sum {sum} for alpha = {}, beta = {} on {}",
                        render(&alpha),
                        render(&beta),
                        describe_model(&m)
                    ));
                }
            }
        }
    }

    ReproReport::new(
        ReproName::Example1,
        vec![
            Claim::counted(
                "cond_prop(alpha, beta) + cond_prop(!alpha, beta) lands in {0, 1} on every \
                 classical model with |D| <= 4",
                checks,
                &dichotomy,
            ),
            Claim::counted(
                "the sum is 1 exactly when the condition has positive proportion",
                checks,
                &one_iff_positive,
            ),
            Claim::holds(
                "three-valued repair: p1(beta ~> alpha) + p1(beta ~> !alpha) = 1 whenever \
                 both are defined",
                "no violations among the defined cases",
                format!(
                    "{} violations in {} defined cases ({} checks)",
                    repair.len(),
                    defined_cases,
                    repair_checks
                ),
                repair.is_empty(),
            ),
        ],
    )
}

fn example2() -> ReproReport {
    let env = Assignment::new();
    let bound = bound_x();

    let mut dichotomy = Vec::new();
    let mut one_iff_positive = Vec::new();
    let mut checks = 0u64;
    for m in sweep_models(4, false) {
        for alpha in classical_shapes("x") {
            checks += 1;
            let value = cond_prop(&m, &env, &alpha, &alpha, &bound).expect("classical");
            if !(value.is_zero() || value.is_one()) {
                dichotomy.push(format!(
                    "cond_prop(alpha, alpha) = {value} for alpha = {} on {}",
                    render(&alpha),
                    describe_model(&m)
                ));
            }
            let positive = !prop(&m, &env, &alpha, &bound).expect("classical").is_zero();
            if value.is_one() != positive {
                one_iff_positive.push(format!(
                    "value {value} with proportion {} on {}",
                    if positive { "positive" } else { "zero" },
                    describe_model(&m)
                ));
            }
        }
    }

    let mut repair = Vec::new();
    let mut defined_cases = 0u64;
    let mut repair_checks = 0u64;
    for m in sweep_models(3, true) {
        for alpha in kleene_shapes("x") {
            repair_checks += 1;
            let value = p1(&m, &env, &alpha.clone().cond_conn(alpha.clone()), &bound)
                .expect("total evaluation");
            let P1Value::Defined(v) = value else { continue };
            defined_cases += 1;
            if !v.is_one() {
                repair.push(format!(
                    "p1(alpha ~> alpha) = {v} for alpha = {} on {}",
                    render(&alpha),
                    describe_model(&m)
                ));
            }
        }
    }

    ReproReport::new(
        ReproName::Example2,
        vec![
            Claim::counted(
                "cond_prop(alpha, alpha) lands in {0, 1} on every classical model with |D| <= 4",
                checks,
                &dichotomy,
            ),
            Claim::counted(
                "the value is 1 exactly when alpha has positive proportion",
                checks,
                &one_iff_positive,
            ),
            Claim::holds(
                "three-valued repair: p1(alpha ~> alpha) = 1 whenever defined",
                "no violations among the defined cases",
                format!(
                    "{} violations in {} defined cases ({} checks)",
                    repair.len(),
                    defined_cases,
                    repair_checks
                ),
                repair.is_empty(),
            ),
        ],
    )
}

/// Element profiles for the three-predicate population, in a fixed order;
/// `father -> man` rules out the other two combinations.
const PROFILES: [(bool, bool, bool); 6] = [
    (true, true, true),
    (true, true, false),
    (true, false, true),
    (true, false, false),
    (false, true, false),
    (false, false, false),
];

fn profile_model(counts: &[u64; 6]) -> FiniteModel {
    let n: u64 = counts.iter().sum();
    let domain: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let mut m = FiniteModel::new(domain).expect("nonempty domain");
    for name in ["man", "fertile", "father"] {
        m.declare(name, 1, Truth3::False).expect("fresh predicate");
    }
    let mut next = 1u64;
    for (count, (man, fertile, father)) in counts.iter().zip(PROFILES) {
        for _ in 0..*count {
            let element = format!("e{next}");
            next += 1;
            for (name, holds) in [("man", man), ("fertile", fertile), ("father", father)] {
                if holds {
                    m.set(name, &[element.as_str()], Truth3::True)
                        .expect("in domain");
                }
            }
        }
    }
    m
}

fn example3() -> ReproReport {
    // Count profiles: (man & fertile & father), (man & fertile & !father),
    // (man & !fertile & father), (man & !fertile & !father),
    // (!man & fertile), (!man & !fertile).
    //
    // prop(man -> fertile) <= 9/10 forces at least one man & !fertile
    // element; prop(man & fertile -> father) < 8/10 forces at least three
    // man & fertile & !father elements (two under the non-strict variant).
    let n = 10u64;
    let mut profiles = 0u64;
    let mut best_strict: Option<(Rational, [u64; 6])> = None;
    let mut best_loose: Option<(Rational, [u64; 6])> = None;
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                for d in 0..=n - a - b - c {
                    for e in 0..=n - a - b - c - d {
                        let g = n - a - b - c - d - e;
                        profiles += 1;
                        if c + d < 1 {
                            continue;
                        }
                        let value = Rational::new((e + g) as i64, n as i64);
                        let counts = [a, b, c, d, e, g];
                        if b >= 3 && best_strict.as_ref().is_none_or(|(v, _)| value > *v) {
                            best_strict = Some((value.clone(), counts));
                        }
                        if b >= 2 && best_loose.as_ref().is_none_or(|(v, _)| value > *v) {
                            best_loose = Some((value, counts));
                        }
                    }
                }
            }
        }
    }
    let (max_strict, strict_counts) = best_strict.expect("feasible profile exists");
    let (max_loose, _) = best_loose.expect("feasible profile exists");

    let witness = profile_model(&strict_counts);
    let env = Assignment::new();
    let bound = bound_x();
    let man = Formula::va("man", "x");
    let fertile = Formula::va("fertile", "x");
    let father = Formula::va("father", "x");
    let c1 = prop(&witness, &env, &man.clone().imp(fertile.clone()), &bound).expect("classical");
    let c2 = prop(
        &witness,
        &env,
        &man.clone().and(fertile).imp(father.clone()),
        &bound,
    )
    .expect("classical");
    let c3 = eval2(
        &witness,
        &env,
        &Formula::forall("x", father.imp(man.clone())),
    )
    .expect("classical");
    let objective = prop(&witness, &env, &man.not(), &bound).expect("classical");
    let witness_ok = c1 <= q("9/10") && c2 < q("8/10") && c3 && objective == max_strict;

    ReproReport::new(
        ReproName::Example3,
        vec![
            Claim::exact("population profiles examined", 3003, profiles),
            Claim::holds(
                "maximum proportion of non-men over all populations meeting the constraints",
                "at most 7/10",
                max_strict.to_string(),
                max_strict <= q("7/10"),
            ),
            Claim::holds(
                "the 7/10 bound is not attained under the strict `< 8/10` constraint",
                "maximum strictly below 7/10",
                max_strict.to_string(),
                max_strict < q("7/10"),
            ),
            Claim::holds(
                "relaxing the second constraint to `<= 8/10` attains the bound",
                "7/10",
                max_loose.to_string(),
                max_loose == q("7/10"),
            ),
            Claim::holds(
                "the maximizing population re-checks directly against the constraints",
                "all three constraints hold and the non-men proportion equals the maximum",
                format!(
                    "prop(man -> fertile) = {c1}, prop(man & fertile -> father) = {c2}, \
                     all fathers are men: {c3}, prop(!man) = {objective} on {}",
                    describe_model(&witness)
                ),
                witness_ok,
            ),
        ],
    )
}

fn example4() -> ReproReport {
    let env = Assignment::new();
    let bound = bound_x();
    let m_of = Formula::va("m", "x");
    let p_of = Formula::va("p", "x");
    let s1 = Formula::forall("x", m_of.clone().imp(p_of.clone().not()));
    let s2 = Formula::forall("x", m_of.clone().imp(p_of.clone()).not());

    let mut satisfying = 0u64;
    let mut violations = Vec::new();
    for size in 1..=4usize {
        let shape = ModelShape::new(size, &[("m", 1), ("p", 1)], false);
        for model in enumerate_models(&shape, 1 << 22).expect("family fits the cap") {
            let holds = eval2(&model, &env, &s1).expect("closed sentence")
                && eval2(&model, &env, &s2).expect("closed sentence");
            if !holds {
                continue;
            }
            satisfying += 1;
            let non_m = prop(&model, &env, &m_of.clone().not(), &bound).expect("classical");
            if !non_m.is_zero() {
                violations.push(format!("prop(!m) = {non_m} on {}", describe_model(&model)));
            }
        }
    }

    let witness = resources::vacuous_witness();
    let vacuous =
        p1(&witness, &env, &m_of.clone().cond_conn(p_of.not()), &bound).expect("total evaluation");
    let non_m = prop(&witness, &env, &m_of.not(), &bound).expect("classical");

    ReproReport::new(
        ReproName::Example4,
        vec![
            Claim::counted(
                "every classical model (|D| <= 4) satisfying both sentences has no non-m \
                 elements",
                satisfying,
                &violations,
            ),
            Claim::exact(
                "models satisfying both sentences (one per domain size: everything is m)",
                4,
                satisfying,
            ),
            Claim::holds(
                "the conditional-connective reading is satisfiable without degeneracy: \
                 p1(m ~> !p) = 1 on the bundled witness",
                "1",
                vacuous.to_string(),
                vacuous == P1Value::Defined(Rational::one()),
            ),
            Claim::exact(
                "the witness keeps a non-m element: prop(!m) on the witness",
                q("1/2"),
                non_m,
            ),
        ],
    )
}

fn example5() -> ReproReport {
    let m = resources::court_model();
    let kb = resources::court_kb();
    let env = Assignment::new();
    let bound = bound_x();
    let not_x1 = Formula::va("X1", "x").not();
    let x2 = Formula::va("X2", "x");
    let x3 = Formula::va("X3", "x");
    let x4 = Formula::va("X4", "x");

    let premise = prop(&m, &env, &not_x1.clone().imp(x3.clone()), &bound).expect("classical");
    let side =
        prop(&m, &env, &x3.clone().or(x2.clone()).imp(x4.clone()), &bound).expect("classical");
    let conditional = cond_prop(&m, &env, &x4, &not_x1, &bound).expect("classical");

    let goal = parse_fact("BOUND [X4(x)]_{x} >= 19/20").expect("well-formed goal");
    let outcome = derive(&kb, &goal, 64);
    let (chain, derivation) = match &outcome {
        DeriveOutcome::Found(d) => (
            d.steps
                .iter()
                .map(|s| s.rule.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            Some(d),
        ),
        DeriveOutcome::NotFound { explored } => (format!("not found ({explored} explored)"), None),
    };
    let chain_ok = derivation.is_some_and(|d| d.steps.len() <= 4 && d.validate().is_ok());

    let restricted = restrict(&m, &not_x1, "x").expect("five accused elements");
    let transferred = kb[1].clone();
    let (transfer_desc, transfer_false) = match derivation {
        Some(d) => {
            let report = check_soundness(d, &restricted).expect("evaluable facts");
            let premise_check = report.steps[0]
                .premises
                .iter()
                .find(|(fact, _)| *fact == transferred)
                .cloned();
            match premise_check {
                Some((fact, truth)) => (
                    format!(
                        "premise {fact} evaluates {} on the subpopulation",
                        if truth { "true" } else { "false" }
                    ),
                    !truth,
                ),
                None => ("transferred premise not found in step 1".to_string(), false),
            }
        }
        None => ("no derivation to check".to_string(), false),
    };
    let restricted_x4 = prop(&restricted, &env, &x4, &bound).expect("classical");

    ReproReport::new(
        ReproName::Example5,
        vec![
            Claim::exact(
                "proportion of the population where !X1 implies X3",
                q("19/20"),
                premise,
            ),
            Claim::exact(
                "proportion of the population where X3 or X2 implies X4",
                Rational::one(),
                side,
            ),
            Claim::exact(
                "conditional proportion of X4 among the !X1 subpopulation",
                Rational::zero(),
                conditional,
            ),
            Claim::holds(
                "the deduction finds a short chain concluding BOUND [X4(x)]_{x} >= 19/20",
                "a valid chain of at most 4 steps",
                chain,
                chain_ok,
            ),
            Claim::holds(
                "soundness check on the !X1 subpopulation flags the transferred premise",
                "the statistical premise is false there",
                transfer_desc,
                transfer_false,
            ),
            Claim::exact(
                "proportion of X4 on the !X1 subpopulation",
                Rational::zero(),
                restricted_x4,
            ),
        ],
    )
}

fn approach2() -> ReproReport {
    let ensemble = resources::birds_ensemble();
    let env = Assignment::new();
    let bound = bound_x();
    let bird = Formula::va("bird", "x");
    let flies = Formula::va("flies", "x");

    let exists_grounded = Formula::exists("x", bird.clone().and(flies.clone().not()));
    let nonflyer = world_prob(&ensemble, &exists_grounded).expect("closed classical sentence");

    let mut per_world = Vec::new();
    for (_, world) in ensemble.worlds() {
        let value = cond_prop(world, &env, &flies, &bird, &bound).expect("classical");
        if value != q("9/10") {
            per_world.push(format!(
                "cond_prop(flies, bird) = {value} on {}",
                describe_model(world)
            ));
        }
    }

    let universal = Formula::forall("x", bird.clone().imp(flies.clone()));
    let all_fly = world_prob(&ensemble, &universal).expect("closed classical sentence");
    let none = world_prob(&ensemble, &universal.clone().not()).expect("closed classical sentence");
    let total = all_fly.clone() + none;

    ReproReport::new(
        ReproName::Approach2,
        vec![
            Claim::exact(
                "probability that some bird does not fly",
                Rational::one(),
                nonflyer,
            ),
            Claim::counted(
                "in every world the conditional proportion of fliers among birds is 9/10",
                ensemble.worlds().len() as u64,
                &per_world,
            ),
            Claim::exact(
                "probability that every bird flies",
                Rational::zero(),
                all_fly,
            ),
            Claim::holds(
                "a sentence and its negation have probabilities summing to 1, so both \
                 readings cannot simultaneously exceed 9/10",
                "1",
                total.to_string(),
                total.is_one(),
            ),
        ],
    )
}

fn theorem3() -> ReproReport {
    let env = Assignment::new();
    let bound = bound_x();
    let mut checks = 0u64;
    let mut violations = Vec::new();
    for m in sweep_models(3, false) {
        for alpha in nine_shapes("x") {
            for beta in nine_shapes("x") {
                let pa = prop(&m, &env, &alpha, &bound).expect("classical");
                if pa.is_zero() {
                    continue;
                }
                checks += 1;
                let conditional = cond_prop(&m, &env, &beta, &alpha, &bound).expect("classical");
                let implication =
                    prop(&m, &env, &alpha.clone().imp(beta.clone()), &bound).expect("classical");
                if conditional > implication {
                    violations.push(format!(
                        "cond_prop = {conditional} exceeds prop(alpha -> beta) = {implication} \
                         for alpha = {}, beta = {} on {}",
                        render(&alpha),
                        render(&beta),
                        describe_model(&m)
                    ));
                }
            }
        }
    }

    ReproReport::new(
        ReproName::Theorem3,
        vec![Claim::counted(
            "cond_prop(beta, alpha) <= prop(alpha -> beta) whenever prop(alpha) > 0, over \
             every classical model with |D| <= 3 and nine formula shapes",
            checks,
            &violations,
        )],
    )
}

fn theorem4() -> ReproReport {
    let env = Assignment::new();
    let bound = bound_x();
    let mut identity_checks = 0u64;
    let mut identity_violations = Vec::new();
    let mut bound_checks = 0u64;
    let mut bound_violations = Vec::new();
    let half = q("1/2");
    for m in sweep_models(3, false) {
        for alpha in nine_shapes("x") {
            for beta in nine_shapes("x") {
                let pa = prop(&m, &env, &alpha, &bound).expect("classical");
                if pa.is_zero() {
                    continue;
                }
                let implication =
                    prop(&m, &env, &alpha.clone().imp(beta.clone()), &bound).expect("classical");
                let conditional = cond_prop(&m, &env, &beta, &alpha, &bound).expect("classical");
                let eps1 = Rational::one() - implication;
                let eps2 = Rational::one() - pa.clone();

                identity_checks += 1;
                let identity = Rational::one()
                    - eps1
                        .clone()
                        .checked_div(&pa)
                        .expect("positive antecedent proportion");
                if conditional != identity {
                    identity_violations.push(format!(
                        "cond_prop = {conditional} but 1 - eps1/(1 - eps2) = {identity} for \
                         alpha = {}, beta = {} on {}",
                        render(&alpha),
                        render(&beta),
                        describe_model(&m)
                    ));
                }

                if eps2 <= half {
                    bound_checks += 1;
                    let lower = Rational::one() - Rational::from_int(2) * eps1.clone();
                    if conditional < lower {
                        bound_violations.push(format!(
                            "cond_prop = {conditional} below 1 - 2*eps1 = {lower} with eps2 = \
                             {eps2} for alpha = {}, beta = {} on {}",
                            render(&alpha),
                            render(&beta),
                            describe_model(&m)
                        ));
                    }
                }
            }
        }
    }

    // The frozen witness: two of five elements satisfy p, one of those
    // satisfies q, so eps2 = 3/5 > 1/2 breaks the stated bound.
    let mut witness =
        FiniteModel::new((1..=5).map(|i| format!("e{i}")).collect()).expect("nonempty domain");
    witness
        .declare("p", 1, Truth3::False)
        .expect("fresh predicate");
    witness
        .declare("q", 1, Truth3::False)
        .expect("fresh predicate");
    witness.set("p", &["e1"], Truth3::True).expect("in domain");
    witness.set("p", &["e2"], Truth3::True).expect("in domain");
    witness.set("q", &["e1"], Truth3::True).expect("in domain");
    let p_of = Formula::va("p", "x");
    let q_of = Formula::va("q", "x");
    let wa = prop(&witness, &env, &p_of, &bound).expect("classical");
    let wi = prop(
        &witness,
        &env,
        &Formula::va("p", "x").imp(q_of.clone()),
        &bound,
    )
    .expect("classical");
    let wc = cond_prop(&witness, &env, &q_of, &Formula::va("p", "x"), &bound).expect("classical");
    let weps1 = Rational::one() - wi;
    let wlower = Rational::one() - Rational::from_int(2) * weps1;
    let witness_ok = wa == q("2/5") && wc == q("1/2") && wlower == q("3/5") && wc < wlower;

    ReproReport::new(
        ReproName::Theorem4,
        vec![
            Claim::counted(
                "exact identity cond_prop(beta, alpha) = 1 - eps1/(1 - eps2) whenever \
                 prop(alpha) > 0",
                identity_checks,
                &identity_violations,
            ),
            Claim::counted(
                "the lower bound 1 - 2*eps1 holds whenever eps2 <= 1/2",
                bound_checks,
                &bound_violations,
            ),
            Claim::holds(
                "the bound fails once eps2 > 1/2: witness with prop(p) = 2/5 and \
                 prop(p -> q) = 4/5",
                "cond_prop = 1/2 below the stated bound 3/5",
                format!("prop(p) = {wa}, cond_prop = {wc}, stated bound = {wlower}"),
                witness_ok,
            ),
        ],
    )
}

fn p1p2_properties() -> ReproReport {
    let env = Assignment::new();
    let bound = bound_x();
    let mut models = sweep_models(2, true);
    models.extend(random_sweep(1000, 4, true));

    let mut counting = Vec::new();
    let mut property1 = Vec::new();
    let mut property2 = Vec::new();
    let mut property3 = Vec::new();
    let mut property4 = Vec::new();
    let mut property5 = Vec::new();
    let mut single_checks = 0u64;
    let mut pair_checks = 0u64;

    for m in &models {
        for alpha in kleene_shapes("x") {
            single_checks += 1;
            let (t, f, u) = element_counts(m, &alpha);
            let p1v = p1(m, &env, &alpha, &bound).expect("total evaluation");
            let p2v = p2(m, &env, &alpha, &bound).expect("total evaluation");

            let p1_direct = if t + f > 0 {
                P1Value::Defined(Rational::new(t as i64, (t + f) as i64))
            } else {
                P1Value::Undefined
            };
            let p2_direct = Rational::new((t + f) as i64, (t + f + u) as i64);
            if p1v != p1_direct || p2v != p2_direct {
                counting.push(format!(
                    "P1 = {p1v}, P2 = {p2v} but per-element counts give {t} true, {f} false, \
                     {u} undefined for alpha = {} on {}",
                    render(&alpha),
                    describe_model(m)
                ));
            }

            if f == 0 && u == 0 && (p1v != P1Value::Defined(Rational::one()) || !p2v.is_one()) {
                property1.push(format!(
                    "alpha true everywhere but P1 = {p1v}, P2 = {p2v} for alpha = {} on {}",
                    render(&alpha),
                    describe_model(m)
                ));
            }

            let p1_in_range = match &p1v {
                P1Value::Defined(v) => !v.is_negative(),
                P1Value::Undefined => true,
            };
            if !p1_in_range || !p2v.in_unit_interval() {
                property2.push(format!(
                    "P1 = {p1v}, P2 = {p2v} for alpha = {} on {}",
                    render(&alpha),
                    describe_model(m)
                ));
            }

            let negated = alpha.clone().not();
            let p1n = p1(m, &env, &negated, &bound).expect("total evaluation");
            let p2n = p2(m, &env, &negated, &bound).expect("total evaluation");
            let complement_ok = match (&p1v, &p1n) {
                (P1Value::Defined(a), P1Value::Defined(b)) => (a.clone() + b.clone()).is_one(),
                _ => true,
            };
            if !complement_ok || p2v != p2n {
                property3.push(format!(
                    "P1(alpha) = {p1v}, P1(!alpha) = {p1n}, P2(alpha) = {p2v}, P2(!alpha) = \
                     {p2n} for alpha = {} on {}",
                    render(&alpha),
                    describe_model(m)
                ));
            }
        }

        for alpha in kleene_shapes("x") {
            for beta in kleene_shapes("x") {
                pair_checks += 1;
                let a = p1(m, &env, &alpha, &bound).expect("total evaluation");
                let b = p1(m, &env, &beta, &bound).expect("total evaluation");
                let disjunction = alpha.clone().or(beta.clone());
                let o = p1(m, &env, &disjunction, &bound).expect("total evaluation");
                let (Some(a), Some(b), Some(o)) =
                    (a.as_rational(), b.as_rational(), o.as_rational())
                else {
                    continue;
                };
                let sum = a.clone() + b.clone();
                if sum < *o {
                    property4.push(format!(
                        "p1({}) + p1({}) = {} + {} = {} falls below p1({}) = {} on {}",
                        render(&alpha),
                        render(&beta),
                        a,
                        b,
                        sum,
                        render(&disjunction),
                        o,
                        describe_model(m)
                    ));
                }

                let conjunction = alpha.clone().and(beta.clone());
                let c = p1(m, &env, &conjunction, &bound).expect("total evaluation");
                if c == P1Value::Defined(Rational::zero()) && sum != *o {
                    property5.push(format!(
                        "p1({}) = 0 but p1({}) + p1({}) = {} while p1({}) = {} on {}",
                        render(&conjunction),
                        render(&alpha),
                        render(&beta),
                        sum,
                        render(&disjunction),
                        o,
                        describe_model(m)
                    ));
                }
            }
        }
    }

    let mut equivalence = Vec::new();
    let mut equivalence_checks = 0u64;
    for m in sweep_models(3, false) {
        for chi in classical_shapes("x") {
            for beta in classical_shapes("x") {
                if prop(&m, &env, &chi, &bound).expect("classical").is_zero() {
                    continue;
                }
                equivalence_checks += 1;
                let via_p1 = p1(&m, &env, &chi.clone().cond_conn(beta.clone()), &bound)
                    .expect("total evaluation");
                let via_cond = cond_prop(&m, &env, &beta, &chi, &bound).expect("classical");
                if via_p1 != P1Value::Defined(via_cond.clone()) {
                    equivalence.push(format!(
                        "p1(chi ~> beta) = {via_p1} but cond_prop(beta, chi) = {via_cond} for \
                         chi = {}, beta = {} on {}",
                        render(&chi),
                        render(&beta),
                        describe_model(&m)
                    ));
                }
            }
        }
    }

    ReproReport::new(
        ReproName::P1P2Properties,
        vec![
            Claim::counted(
                "P1 and P2 agree with independent per-element counting",
                single_checks,
                &counting,
            ),
            Claim::counted(
                "property 1: a formula true on every tuple has P1 = 1 and P2 = 1",
                single_checks,
                &property1,
            ),
            Claim::counted(
                "property 2: P1 >= 0 when defined, and P2 lies in [0, 1] (upper-bound \
                 reading of the second conjunct)",
                single_checks,
                &property2,
            ),
            Claim::counted(
                "property 3: P1(alpha) + P1(!alpha) = 1 when both are defined, and \
                 P2(alpha) = P2(!alpha) always",
                single_checks,
                &property3,
            ),
            Claim::counted(
                "property 4 as stated: P1(alpha) + P1(beta) >= P1(alpha | beta) when all \
                 three are defined",
                pair_checks,
                &property4,
            ),
            Claim::counted(
                "property 5 as stated: if P1(alpha & beta) = 0 then P1(alpha) + P1(beta) = \
                 P1(alpha | beta) when all are defined",
                pair_checks,
                &property5,
            ),
            Claim::counted(
                "p1(chi ~> beta) equals cond_prop(beta, chi) on classical models with \
                 prop(chi) > 0",
                equivalence_checks,
                &equivalence,
            ),
        ],
    )
}

fn nested_conditional() -> ReproReport {
    let text = "P1 x. (p(x) ~> q(x)) ~> (v(x) ~> z(x)) > 9/10";
    let witness = resources::nested_witness();
    let env = Assignment::new();

    let (canonical, roundtrip_ok) = match parse(text) {
        Ok(f) => {
            let rendered = render(&f);
            let again = parse(&rendered);
            (rendered.clone(), again.as_ref() == Ok(&f))
        }
        Err(e) => (format!("parse error: {e}"), false),
    };

    let truth = parse(text)
        .ok()
        .map(|f| eval3(&witness, &env, &f).expect("total evaluation"));
    let truth_display = truth.map_or("unparsed".to_string(), |t| t.to_string());

    let term_text = "P1 x. (p(x) ~> q(x)) ~> (v(x) ~> z(x))";
    let value = parse_term(term_text)
        .ok()
        .map(|t| eval_term3(&witness, &env, &t).expect("total evaluation"));
    let value_display = value
        .clone()
        .map_or("unparsed".to_string(), |v| v.to_string());

    ReproReport::new(
        ReproName::NestedConditional,
        vec![
            Claim::holds(
                "the nested sentence parses and its canonical rendering re-parses to the \
                 same tree",
                "stable round-trip",
                canonical,
                roundtrip_ok,
            ),
            Claim::holds(
                "the sentence is true on the bundled witness",
                "T",
                truth_display.clone(),
                truth == Some(Truth3::True),
            ),
            Claim::holds(
                "the P1 term scores 19 definite-true cases out of 20",
                "19/20",
                value_display,
                value == Some(P1Value::Defined(q("19/20"))),
            ),
        ],
    )
}
