//! Material implication with an unexemplified antecedent collapses.
//!
//! The sentences "all m are not-p" and "no m is p" sound equivalent, but as
//! universally quantified material implications the second one, written
//! `forall x. !(m(x) -> p(x))`, forces every element to be m: jointly the
//! two sentences admit only populations with [!m] = 0. The conditional
//! connective keeps the intended reading while leaving non-m elements free.

use statfol::model::{enumerate_models, ModelShape};
use statfol::parser::parse;
use statfol::threevalued::{p1, P1Value};
use statfol::twovalued::{eval2, prop};
use statfol::verifier::vacuous_witness;
use statfol::{Assignment, Rational};

fn main() {
    let env = Assignment::new();
    let x = vec!["x".to_string()];
    let s1 = parse("forall x. (m(x) -> !p(x))").unwrap();
    let s2 = parse("forall x. !(m(x) -> p(x))").unwrap();
    let non_m = parse("!m(x)").unwrap();

    let mut satisfying = 0u32;
    let mut all_zero = true;
    for n in 1..=4 {
        let shape = ModelShape::new(n, &[("m", 1), ("p", 1)], false);
        for model in enumerate_models(&shape, 1 << 20).unwrap() {
            if eval2(&model, &env, &s1).unwrap() && eval2(&model, &env, &s2).unwrap() {
                satisfying += 1;
                all_zero &= prop(&model, &env, &non_m, &x).unwrap() == Rational::new(0, 1);
            }
        }
    }
    println!(
        "models up to 4 elements satisfying both sentences: {satisfying}, \
         every one with [!m] = 0: {all_zero}"
    );

    // Same intent, three-valued connective: "m ~> !p" is true on the m that
    // are not p, undefined on everything else, so its defined-case
    // proportion can be 1 while non-m elements exist.
    let witness = vacuous_witness();
    let claim = parse("m(x) ~> !p(x)").unwrap();
    let score = match p1(&witness, &env, &claim, &x).unwrap() {
        P1Value::Defined(v) => v.to_string(),
        P1Value::Undefined => "undefined".to_string(),
    };
    println!(
        "witness model: P1(m ~> !p) = {score} while [!m] = {}",
        prop(&witness, &env, &non_m, &x).unwrap()
    );
}
