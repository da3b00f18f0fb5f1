//! The courtroom transfer fallacy, end to end.
//!
//! A population of 100 accused persons: 95 are proven guilty (X1), 94 of
//! those are rightly condemned (X3, X4), one unproven person is condemned
//! by error elsewhere in the books (X2). The implication "not proven
//! implies condemned" holds on 95 of 100 people, yet among the 5 unproven
//! people nobody is condemned. Chaining bounds on implications silently
//! transfers a fact about the whole population to a subpopulation where it
//! is false.

use statfol::deduction::{check_soundness, derive, parse_fact, DeriveOutcome};
use statfol::model::restrict;
use statfol::parser::parse;
use statfol::verifier::{court_kb, court_model, transfer_experiment};

fn main() {
    let m = court_model();
    let not_proven = parse("!X1(x)").unwrap();
    let condemned = parse("X4(x)").unwrap();

    let report = transfer_experiment(&m, &not_proven, &condemned, "x").unwrap();
    println!("{report}");
    println!();

    let kb = court_kb();
    println!("knowledge base:");
    for fact in &kb {
        println!("  {fact}");
    }

    let goal = parse_fact("BOUND [X4(x)]_{x} >= 19/20").unwrap();
    let derivation = match derive(&kb, &goal, 64) {
        DeriveOutcome::Found(d) => d,
        DeriveOutcome::NotFound { explored } => {
            println!("no derivation ({explored} facts explored)");
            return;
        }
    };
    println!("\nderiving {goal}:");
    for (i, step) in derivation.steps.iter().enumerate() {
        println!("{}. {} gives {}", i + 1, step.rule, step.conclusion);
    }

    // The chain is formally fine, but its premises were learned on the full
    // population. Check each step on the 5-person unproven subpopulation.
    let sub = restrict(&m, &not_proven, "x").unwrap();
    let soundness = check_soundness(&derivation, &sub).unwrap();
    println!("\non the unproven subpopulation:");
    for step in &soundness.steps {
        for (fact, truth) in &step.premises {
            println!("  {fact}  is {truth}");
        }
    }
    println!(
        "the conclusion transfers only if its premises do; here the first \
         premise fails, and indeed [X4] = {} there",
        report.restricted_consequent
    );
}
