//! Fixed one-variable formula families the sweeps and searches range over.

use crate::syntax::Formula;

fn p(x: &str) -> Formula {
    Formula::va("p", x)
}

fn q(x: &str) -> Formula {
    Formula::va("q", x)
}

/// The classical shapes over two unary predicates: `p`, `q`, `!p`, `p & q`,
/// `p | q`, `p -> q`.
pub(super) fn classical_shapes(x: &str) -> Vec<Formula> {
    vec![
        p(x),
        q(x),
        p(x).not(),
        p(x).and(q(x)),
        p(x).or(q(x)),
        p(x).imp(q(x)),
    ]
}

/// The classical shapes plus the conditional connective `p ~> q`.
pub(super) fn kleene_shapes(x: &str) -> Vec<Formula> {
    let mut shapes = classical_shapes(x);
    shapes.push(p(x).cond_conn(q(x)));
    shapes
}

/// Nine connective shapes used by the implication-bound sweeps.
pub(super) fn nine_shapes(x: &str) -> Vec<Formula> {
    vec![
        p(x),
        q(x),
        p(x).not(),
        q(x).not(),
        p(x).and(q(x)),
        p(x).or(q(x)),
        p(x).imp(q(x)),
        q(x).imp(p(x)),
        p(x).and(q(x)).not(),
    ]
}
