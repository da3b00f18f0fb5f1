//! The concrete syntax: formulas, probability terms, and knowledge bases.

use statfol::deduction::{parse_fact, parse_kb};
use statfol::parser::{parse, parse_term, render, render_term};

fn main() {
    // Connectives bind in the order !, &, |, ->, ~>; quantifiers and the
    // proportion brackets nest freely. An identifier is a variable exactly
    // where an enclosing binder lists it, a constant otherwise.
    for text in [
        "forall x. (raven(x) -> black(x))",
        "exists x. (raven(x) & !black(x))",
        "p(a) ~> q(a) | r(a, b)",
        "[flies(x) given bird(x)]_{x} >= 9/10",
        "P1 x. (bird(x) ~> flies(x)) > [flies(x)]_{x}",
        "P1 x. (p(x) ~> q(x)) ~> (v(x) ~> z(x)) > 9/10",
    ] {
        let f = parse(text).unwrap();
        println!("{text}\n  canonical: {}", render(&f));
    }

    // Probability terms stand alone too, with +, -, * arithmetic.
    let t = parse_term("[p(x) & q(x)]_{x} + 1/4 * [r(x,y)]_{x,y}").unwrap();
    println!("\nterm: {}", render_term(&t));

    // Syntax errors carry byte spans.
    match parse("[p(x) given ]_{x} > 0") {
        Ok(_) => unreachable!(),
        Err(e) => println!("\n{e}"),
    }

    // Knowledge bases are line-oriented: HOLDS for closed facts, BOUND for
    // proportion constraints, `#` comments.
    let kb = parse_kb(
        "# two facts\n\
         HOLDS forall x. (father(x) -> man(x))\n\
         BOUND [man(x) -> fertile(x)]_{x} <= 9/10\n",
    )
    .unwrap();
    println!("\nparsed {} facts:", kb.len());
    for fact in &kb {
        println!("  {fact}");
    }
    let goal = parse_fact("BOUND [fertile(x)]_{x} > 0").unwrap();
    println!("goal: {goal}");
}
