//! Degenerate behavior of conditional proportions under material encoding.
//!
//! Within one finite model, [alpha given beta] + [!alpha given beta] is
//! always exactly 0 or 1, and [alpha given alpha] likewise: conditional
//! proportions on a single model cannot hold intermediate degrees of
//! self-support. The three-valued conditional connective repairs the
//! self-support case: P1(alpha ~> alpha) is 1 whenever it is defined.

use statfol::model::{enumerate_models, ModelShape};
use statfol::parser::parse;
use statfol::threevalued::{p1, P1Value};
use statfol::twovalued::{cond_prop, prop};
use statfol::{Assignment, Rational};

fn main() {
    let env = Assignment::new();
    let x = vec!["x".to_string()];
    let zero = Rational::new(0, 1);

    let alpha = parse("p(x)").unwrap();
    let not_alpha = parse("!p(x)").unwrap();
    let beta = parse("q(x)").unwrap();

    let mut sums = std::collections::BTreeSet::new();
    let mut self_values = std::collections::BTreeSet::new();
    let mut models = 0u32;

    for n in 1..=4 {
        let shape = ModelShape::new(n, &[("p", 1), ("q", 1)], false);
        for m in enumerate_models(&shape, 1 << 20).unwrap() {
            models += 1;
            let yes = cond_prop(&m, &env, &alpha, &beta, &x).unwrap();
            let no = cond_prop(&m, &env, &not_alpha, &beta, &x).unwrap();
            sums.insert((yes + no).to_string());
            let this = cond_prop(&m, &env, &alpha, &alpha, &x).unwrap();
            self_values.insert(this.to_string());
        }
    }

    println!("across {models} models with at most 4 elements:");
    println!("  [p given q] + [!p given q] took the values {sums:?}");
    println!("  [p given p] took the values {self_values:?}");
    println!("  (0 appears exactly when the condition has proportion 0)");

    // The conditional connective keeps self-support at 1 or undefined,
    // never 0: an unexemplified antecedent yields no defined case at all.
    let conn = parse("p(x) ~> p(x)").unwrap();
    let mut p1_values = std::collections::BTreeSet::new();
    for n in 1..=3 {
        let shape = ModelShape::new(n, &[("p", 1)], true);
        for m in enumerate_models(&shape, 1 << 20).unwrap() {
            let v = match p1(&m, &env, &conn, &x).unwrap() {
                P1Value::Defined(v) => v.to_string(),
                P1Value::Undefined => "undefined".to_string(),
            };
            p1_values.insert(v);
        }
    }
    println!("\nP1(p ~> p) over every three-valued model up to 3 elements: {p1_values:?}");

    let empty = ModelShape::new(2, &[("p", 1)], false);
    let nobody = enumerate_models(&empty, 1 << 20)
        .unwrap()
        .find(|m| prop(m, &env, &alpha, &x).unwrap() == zero)
        .unwrap();
    println!(
        "on a model where nothing is p: [p given p] = {}, P1(p ~> p) is {}",
        cond_prop(&nobody, &env, &alpha, &alpha, &x).unwrap(),
        match p1(&nobody, &env, &conn, &x).unwrap() {
            P1Value::Defined(v) => v.to_string(),
            P1Value::Undefined => "undefined".to_string(),
        }
    );
}
