//! Sentence probability as weight over possible worlds.
//!
//! A closed sentence is true or false in each finite world, so an ensemble
//! of rationally weighted worlds assigns it the total weight of the worlds
//! where it holds. The bundled ensemble has ten equally likely worlds of
//! ten birds each; in world k exactly bird k is flightless.

use statfol::model::world_prob;
use statfol::parser::parse;
use statfol::twovalued::cond_prop;
use statfol::verifier::birds_ensemble;
use statfol::Assignment;

fn main() {
    let e = birds_ensemble();
    let env = Assignment::new();
    let x = vec!["x".to_string()];

    let some_grounded = parse("exists x. (bird(x) & !flies(x))").unwrap();
    let all_fly = parse("forall x. (bird(x) -> flies(x))").unwrap();

    println!("worlds: {}", e.worlds().len());
    println!(
        "P(some bird does not fly)  = {}",
        world_prob(&e, &some_grounded).unwrap()
    );
    println!(
        "P(every bird flies)        = {}",
        world_prob(&e, &all_fly).unwrap()
    );

    // Inside every single world the proportion statement is the same.
    let flies = parse("flies(x)").unwrap();
    let bird = parse("bird(x)").unwrap();
    for (weight, world) in e.worlds().iter().take(3) {
        let within = cond_prop(world, &env, &flies, &bird, &x).unwrap();
        println!("a world of weight {weight}: [flies given bird]_x = {within}");
    }
    println!("...and likewise in the remaining worlds.");

    // Certainty about the statistics, certainty that the universal fails:
    // the two readings of "birds fly" come apart cleanly.
    println!(
        "\nstatistical reading: 9/10 in every world; universal reading: \
         probability {} despite that.",
        world_prob(&e, &all_fly).unwrap()
    );
}
