//! How far below the implication proportion can the conditional sit?
//!
//! Within one model, [beta given alpha] never exceeds [alpha -> beta]: the
//! implication also counts everything outside alpha. The exact relation is
//! [beta given alpha] = 1 - eps1/(1 - eps2) where eps1 = 1 - [alpha -> beta]
//! and eps2 = 1 - [alpha]. The linearized bound 1 - 2*eps1 is valid only
//! while alpha covers at least half the domain.

use statfol::model::load_model;
use statfol::parser::parse;
use statfol::twovalued::{cond_prop, prop};
use statfol::verifier::court_model;
use statfol::{Assignment, Rational};

fn main() {
    let env = Assignment::new();
    let x = vec!["x".to_string()];
    let one = Rational::new(1, 1);

    let m = court_model();
    let alpha = parse("X1(x)").unwrap();
    let beta = parse("X3(x)").unwrap();
    let imp = parse("X1(x) -> X3(x)").unwrap();

    let pa = prop(&m, &env, &alpha, &x).unwrap();
    let pimp = prop(&m, &env, &imp, &x).unwrap();
    let cond = cond_prop(&m, &env, &beta, &alpha, &x).unwrap();
    let eps1 = one.clone() - pimp.clone();
    let eps2 = one.clone() - pa.clone();
    let identity = one.clone() - eps1.clone() / (one.clone() - eps2.clone());

    println!("court model, alpha = X1, beta = X3:");
    println!("  [alpha]            = {pa}");
    println!("  [alpha -> beta]    = {pimp}   (eps1 = {eps1})");
    println!("  [beta given alpha] = {cond}");
    println!("  1 - eps1/(1-eps2)  = {identity}   (identity, exact)");
    println!(
        "  1 - 2*eps1         = {}   (valid bound here, eps2 = {eps2} <= 1/2)",
        one.clone() - Rational::new(2, 1) * eps1
    );

    // When alpha covers less than half the domain the linearized bound can
    // overshoot the true conditional.
    let small = load_model(
        r#"{"domain": ["e1", "e2", "e3", "e4", "e5"],
            "predicates": {
              "p": {"arity": 1, "true": [["e1"], ["e2"]]},
              "q": {"arity": 1, "true": [["e1"]]}
            }}"#,
    )
    .unwrap();
    let p = parse("p(x)").unwrap();
    let q = parse("q(x)").unwrap();
    let p_imp_q = parse("p(x) -> q(x)").unwrap();
    let pa = prop(&small, &env, &p, &x).unwrap();
    let pimp = prop(&small, &env, &p_imp_q, &x).unwrap();
    let cond = cond_prop(&small, &env, &q, &p, &x).unwrap();
    let eps1 = one.clone() - pimp;
    let stated = one - Rational::new(2, 1) * eps1;

    println!("\nfive-element model, [p] = {pa} (below 1/2):");
    println!("  [q given p] = {cond} but 1 - 2*eps1 = {stated}: the bound fails");
}
