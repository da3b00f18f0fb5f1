//! Seeded random formula and term generation shared by integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use statfol::{AtomArg, Formula, ProbTerm, Rational, Rel};

const VARS: [&str; 4] = ["x", "y", "z", "w"];
const CONSTS: [&str; 3] = ["a", "b", "c"];
const UNARY: [&str; 3] = ["p", "q", "s"];

/// Random well-scoped trees over a small fixed vocabulary: unary `p`, `q`,
/// `s`, binary `r`, zero-ary `flag`. Variable arguments are drawn only from
/// enclosing binders and constant names never collide with variable names,
/// matching how the concrete syntax classifies identifiers.
pub struct Gen {
    rng: ChaCha8Rng,
    scope: Vec<String>,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            scope: Vec::new(),
        }
    }

    pub fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 {
            return self.leaf();
        }
        match self.rng.gen_range(0..12u32) {
            0 => self.leaf(),
            1 | 2 => self.formula(depth - 1).not(),
            3 => self.formula(depth - 1).and(self.formula(depth - 1)),
            4 => self.formula(depth - 1).or(self.formula(depth - 1)),
            5 => self.formula(depth - 1).imp(self.formula(depth - 1)),
            6 | 7 => self.formula(depth - 1).cond_conn(self.formula(depth - 1)),
            8 | 9 => {
                let var = self.var();
                self.scope.push(var.clone());
                let body = self.formula(depth - 1);
                self.scope.pop();
                if self.rng.gen_bool(0.5) {
                    Formula::forall(var, body)
                } else {
                    Formula::exists(var, body)
                }
            }
            _ => Formula::compare(self.term(depth - 1), self.rel(), self.term(depth - 1)),
        }
    }

    pub fn term(&mut self, depth: usize) -> ProbTerm {
        let roll = if depth == 0 {
            self.rng.gen_range(0..5u32)
        } else {
            self.rng.gen_range(0..8u32)
        };
        match roll {
            0 => ProbTerm::constant(self.rational()),
            1 => {
                let bound = self.binders();
                let body = self.bracket_body(&bound, depth);
                ProbTerm::prop(body, bound)
            }
            2 => {
                let bound = self.binders();
                let before = self.scope.len();
                self.scope.extend(bound.iter().cloned());
                let consequent = self.formula(depth.saturating_sub(1));
                let condition = self.formula(depth.saturating_sub(1));
                self.scope.truncate(before);
                ProbTerm::cond_prop(consequent, condition, bound)
            }
            3 => {
                let bound = self.binders();
                let body = self.bracket_body(&bound, depth);
                ProbTerm::p1(bound, body)
            }
            4 => {
                let bound = self.binders();
                let body = self.bracket_body(&bound, depth);
                ProbTerm::p2(bound, body)
            }
            5 => self.term(depth - 1).add(self.term(depth - 1)),
            6 => self.term(depth - 1).sub(self.term(depth - 1)),
            _ => self.term(depth - 1).mul(self.term(depth - 1)),
        }
    }

    fn bracket_body(&mut self, bound: &[String], depth: usize) -> Formula {
        let before = self.scope.len();
        self.scope.extend(bound.iter().cloned());
        let body = self.formula(depth.saturating_sub(1));
        self.scope.truncate(before);
        body
    }

    fn leaf(&mut self) -> Formula {
        match self.rng.gen_range(0..8u32) {
            0 => Formula::atom("flag", vec![]),
            1..=5 => {
                let pred = UNARY[self.rng.gen_range(0..UNARY.len())];
                let arg = self.arg();
                Formula::atom(pred, vec![arg])
            }
            _ => {
                let (a, b) = (self.arg(), self.arg());
                Formula::atom("r", vec![a, b])
            }
        }
    }

    fn arg(&mut self) -> AtomArg {
        if !self.scope.is_empty() && self.rng.gen_bool(0.7) {
            let i = self.rng.gen_range(0..self.scope.len());
            AtomArg::var(self.scope[i].clone())
        } else {
            AtomArg::cst(CONSTS[self.rng.gen_range(0..CONSTS.len())])
        }
    }

    fn var(&mut self) -> String {
        VARS[self.rng.gen_range(0..VARS.len())].to_string()
    }

    fn binders(&mut self) -> Vec<String> {
        let k = if self.rng.gen_bool(0.25) { 2 } else { 1 };
        let mut picks: Vec<String> = Vec::new();
        while picks.len() < k {
            let v = self.var();
            if !picks.contains(&v) {
                picks.push(v);
            }
        }
        picks
    }

    fn rel(&mut self) -> Rel {
        [Rel::Lt, Rel::Le, Rel::Eq, Rel::Ge, Rel::Gt][self.rng.gen_range(0..5)]
    }

    fn rational(&mut self) -> Rational {
        let n: i64 = self.rng.gen_range(0..=12);
        let d: i64 = self.rng.gen_range(1..=12);
        if self.rng.gen_ratio(1, 8) {
            Rational::new(-n, d)
        } else {
            Rational::new(n, d)
        }
    }
}
