//! The defined-case quantifiers P1 and P2.
//!
//! A formula built with the conditional connective `~>` is true, false, or
//! undefined on each element. P1 measures truth among the defined cases,
//! P2 measures how often the formula is defined at all. Together they
//! separate "how strongly the rule holds where it applies" from "how widely
//! it applies".

use statfol::model::load_model;
use statfol::parser::parse;
use statfol::threevalued::{eval3, p1, p2, P1Value};
use statfol::verifier::no_antecedent_model;
use statfol::{Assignment, FiniteModel};

fn show(m: &FiniteModel, text: &str) {
    let env = Assignment::new();
    let x = vec!["x".to_string()];
    let f = parse(text).unwrap();
    let p1v = match p1(m, &env, &f, &x).unwrap() {
        P1Value::Defined(v) => v.to_string(),
        P1Value::Undefined => "undefined".to_string(),
    };
    println!(
        "  P1({text}) = {p1v}, P2({text}) = {}",
        p2(m, &env, &f, &x).unwrap()
    );
}

fn main() {
    // Four elements: two ravens (one black), a swan, and a stone with no
    // color at all.
    let m = load_model(
        r#"{"domain": ["r1", "r2", "s1", "k1"],
            "predicates": {
              "raven": {"arity": 1, "true": [["r1"], ["r2"]]},
              "black": {"arity": 1, "true": [["r1"]], "false": [["r2"], ["s1"]]}
            }}"#,
    )
    .unwrap();

    let rule = parse("raven(x) ~> black(x)").unwrap();
    println!("raven(x) ~> black(x), element by element:");
    for e in ["r1", "r2", "s1", "k1"] {
        let bound = Assignment::new().bind("x", e);
        println!("  at {e}: {}", eval3(&m, &bound, &rule).unwrap());
    }

    println!("\non the whole domain:");
    show(&m, "raven(x) ~> black(x)");
    show(&m, "raven(x) -> black(x)");

    // P1 respects negation of the consequent exactly.
    show(&m, "raven(x) ~> !black(x)");

    // With no raven at all, the material implication is vacuously certain
    // while P1 refuses to answer: there is no defined case to measure.
    let empty = no_antecedent_model();
    println!("\nwith an unexemplified antecedent:");
    show(&empty, "p(x) -> q(x)");
    show(&empty, "p(x) ~> q(x)");

    // The union bound familiar from probabilities fails for P1: parts and
    // union are measured over different defined sets.
    let two = load_model(
        r#"{"domain": ["e1", "e2"],
            "predicates": {
              "p": {"arity": 1, "true": [["e1"]]},
              "q": {"arity": 1}
            }}"#,
    )
    .unwrap();
    println!("\ndifferent denominators break additivity:");
    show(&two, "p(x) ~> q(x)");
    show(&two, "p(x)");
    show(&two, "(p(x) ~> q(x)) | p(x)");
    println!("  0 + 1/2 < 1: P1 of a disjunction can exceed the sum of its parts");
}
