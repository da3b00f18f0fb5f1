//! Concrete syntax: parsing and canonical rendering.
//!
//! Token choices: `!` negation, `&` conjunction, `|` disjunction, `->`
//! implication, `~>` the conditional connective, `forall`/`exists`
//! quantifiers, `[body]_{x,y}` proportion, `[body given cond]_{x}`
//! conditional proportion, `P1 x. body` / `P2 x. body` definiteness
//! quantifiers, rationals as `a/b` or exact decimals.
//!
//! Precedence, tightest first: `!`, `&`, `|`, `->` (right), `~>` (right),
//! comparisons loosest. Probability arithmetic: `*` over `+`/`-` (left).
//! Quantifier bodies extend maximally right; `P1`/`P2` bodies stop before
//! comparison operators, so `P1 x. p(x) ~> q(x) > 9/10` compares the `P1`
//! value against `9/10`.
//!
//! Variables carry no sigil: an identifier is a variable exactly where some
//! enclosing binder lists it, a constant otherwise. Since `[..]_{x}` names
//! its variables after the body, bracket bodies are parsed first and a
//! rebind pass then converts the matching constants to variables, respecting
//! inner binders that shadow the name.

use std::fmt;
use std::str::FromStr;

use crate::errors::{ParseError, SourceSpan};
use crate::rational::Rational;
use crate::syntax::{AtomArg, Formula, ProbTerm, Rel};

const KEYWORDS: [&str; 5] = ["forall", "exists", "given", "P1", "P2"];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Underscore,
    Comma,
    Dot,
    Bang,
    Amp,
    Pipe,
    Arrow,
    CondArrow,
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
    Plus,
    Minus,
    Star,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Num(s) => format!("number `{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Underscore => "`_`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::CondArrow => "`~>`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Le => "`<=`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Ge => "`>=`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if b == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = match b {
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'[' => {
                i += 1;
                Tok::LBracket
            }
            b']' => {
                i += 1;
                Tok::RBracket
            }
            b'{' => {
                i += 1;
                Tok::LBrace
            }
            b'}' => {
                i += 1;
                Tok::RBrace
            }
            b'_' => {
                i += 1;
                Tok::Underscore
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'.' => {
                i += 1;
                Tok::Dot
            }
            b'!' => {
                i += 1;
                Tok::Bang
            }
            b'&' => {
                i += 1;
                Tok::Amp
            }
            b'|' => {
                i += 1;
                Tok::Pipe
            }
            b'+' => {
                i += 1;
                Tok::Plus
            }
            b'*' => {
                i += 1;
                Tok::Star
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    i += 2;
                    Tok::Arrow
                } else {
                    i += 1;
                    Tok::Minus
                }
            }
            b'~' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    i += 2;
                    Tok::CondArrow
                } else {
                    return Err(ParseError::new(
                        SourceSpan::new(i, i + 1),
                        "`~` must be followed by `>`",
                    ));
                }
            }
            b'<' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    i += 2;
                    Tok::Le
                } else {
                    i += 1;
                    Tok::Lt
                }
            }
            b'>' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    i += 2;
                    Tok::Ge
                } else {
                    i += 1;
                    Tok::Gt
                }
            }
            b'=' => {
                i += 1;
                Tok::Eq
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len()
                    && (bytes[i] == b'.' || bytes[i] == b'/')
                    && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)
                {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                Tok::Num(text[start..i].to_string())
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                Tok::Ident(text[start..i].to_string())
            }
            _ => {
                let ch_len = text[i..].chars().next().map_or(1, char::len_utf8);
                return Err(ParseError::new(
                    SourceSpan::new(i, i + ch_len),
                    format!("unexpected character `{}`", &text[i..i + ch_len]),
                ));
            }
        };
        toks.push((tok, SourceSpan::new(start, i)));
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    end: usize,
    scope: Vec<String>,
}

/// Parse a single formula. The whole input must be consumed; `#` starts a
/// comment running to end of line.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

/// Parse a single probability term, consuming the whole input.
pub fn parse_term(text: &str) -> Result<ProbTerm, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.probterm()?;
    p.expect_eof()?;
    Ok(t)
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            end: text.len(),
            scope: Vec::new(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> SourceSpan {
        self.toks
            .get(self.pos)
            .map_or(SourceSpan::new(self.end, self.end), |(_, s)| *s)
    }

    fn err(&self, expected: &str) -> ParseError {
        let found = self
            .peek()
            .map_or("end of input".to_string(), Tok::describe);
        ParseError::new(self.here(), format!("expected {expected}, found {found}"))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.err(&t.describe()))
        }
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.err("end of input"))
        }
    }

    /// An identifier that is not a reserved word.
    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(Tok::Ident(s)) => Err(ParseError::new(
                self.here(),
                format!("`{s}` is a reserved word and cannot be used as {what}"),
            )),
            _ => Err(self.err(what)),
        }
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    /// Formula entry point. Comparisons are the loosest level; a comparison
    /// is committed to when the next token can only start a probability
    /// term, and tried with backtracking on `(`.
    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::LBracket | Tok::Num(_) | Tok::Minus) => self.comparison(),
            Some(Tok::Ident(s)) if s == "P1" || s == "P2" => self.comparison(),
            Some(Tok::LParen) => {
                let save = self.pos;
                match self.comparison() {
                    Ok(f) => Ok(f),
                    Err(_) => {
                        self.pos = save;
                        self.condimp()
                    }
                }
            }
            _ => self.condimp(),
        }
    }

    fn comparison(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.probterm()?;
        let rel = self.relop()?;
        let rhs = self.probterm()?;
        Ok(Formula::Compare(lhs, rel, rhs))
    }

    fn relop(&mut self) -> Result<Rel, ParseError> {
        let rel = match self.peek() {
            Some(Tok::Lt) => Rel::Lt,
            Some(Tok::Le) => Rel::Le,
            Some(Tok::Eq) => Rel::Eq,
            Some(Tok::Ge) => Rel::Ge,
            Some(Tok::Gt) => Rel::Gt,
            _ => return Err(self.err("a comparison operator (`<`, `<=`, `=`, `>=`, `>`)")),
        };
        self.pos += 1;
        Ok(rel)
    }

    fn condimp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if self.eat(&Tok::CondArrow) {
            let rhs = self.condimp()?;
            Ok(lhs.cond_conn(rhs))
        } else {
            Ok(lhs)
        }
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disj()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.imp()?;
            Ok(lhs.imp(rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conj()?;
        while self.eat(&Tok::Pipe) {
            f = f.or(self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.eat(&Tok::Amp) {
            f = f.and(self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(self.unary()?.not())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Ident(s)) if s == "forall" || s == "exists" => {
                let universal = s == "forall";
                self.pos += 1;
                let var = self.ident("a variable name")?;
                self.expect(&Tok::Dot)?;
                self.scope.push(var.clone());
                let body = self.formula();
                self.scope.pop();
                let body = body?;
                Ok(if universal {
                    Formula::forall(var, body)
                } else {
                    Formula::exists(var, body)
                })
            }
            Some(Tok::Ident(s)) if KEYWORDS.contains(&s.as_str()) => Err(self.err("a formula")),
            Some(Tok::Ident(_)) => self.atom(),
            _ => Err(self.err("a formula")),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let pred = self.ident("a predicate name")?;
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                let name = self.ident("an argument name")?;
                if self.scope.contains(&name) {
                    args.push(AtomArg::Var(name));
                } else {
                    args.push(AtomArg::Const(name));
                }
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(&Tok::RParen)?;
        }
        Ok(Formula::Atom { pred, args })
    }

    fn probterm(&mut self) -> Result<ProbTerm, ParseError> {
        let mut t = self.multerm()?;
        loop {
            if self.eat(&Tok::Plus) {
                t = t.add(self.multerm()?);
            } else if self.eat(&Tok::Minus) {
                t = t.sub(self.multerm()?);
            } else {
                return Ok(t);
            }
        }
    }

    fn multerm(&mut self) -> Result<ProbTerm, ParseError> {
        let mut t = self.termatom()?;
        while self.eat(&Tok::Star) {
            t = t.mul(self.termatom()?);
        }
        Ok(t)
    }

    fn rational(&mut self, negative: bool) -> Result<Rational, ParseError> {
        let span = self.here();
        match self.peek() {
            Some(Tok::Num(raw)) => {
                let q =
                    Rational::from_str(raw).map_err(|e| ParseError::new(span, e.to_string()))?;
                self.pos += 1;
                Ok(if negative { -q } else { q })
            }
            _ => Err(self.err("a number")),
        }
    }

    fn termatom(&mut self) -> Result<ProbTerm, ParseError> {
        match self.peek() {
            Some(Tok::Num(_)) => Ok(ProbTerm::Const(self.rational(false)?)),
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(ProbTerm::Const(self.rational(true)?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.probterm()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::LBracket) => self.proportion(),
            Some(Tok::Ident(s)) if s == "P1" || s == "P2" => {
                let first = s == "P1";
                self.pos += 1;
                let bound = self.varlist()?;
                self.expect(&Tok::Dot)?;
                let depth = self.scope.len();
                self.scope.extend(bound.iter().cloned());
                let body = self.condimp();
                self.scope.truncate(depth);
                let body = body?;
                Ok(if first {
                    ProbTerm::p1(bound, body)
                } else {
                    ProbTerm::p2(bound, body)
                })
            }
            _ => Err(self.err("a probability term")),
        }
    }

    fn varlist(&mut self) -> Result<Vec<String>, ParseError> {
        let mut vars = vec![self.ident("a variable name")?];
        while self.eat(&Tok::Comma) {
            vars.push(self.ident("a variable name")?);
        }
        Ok(vars)
    }

    /// `[body]_{x,y}` or `[body given cond]_{x,y}`. The binder list is only
    /// known after the body, so matching constants are rebound afterwards.
    fn proportion(&mut self) -> Result<ProbTerm, ParseError> {
        self.expect(&Tok::LBracket)?;
        let body = self.formula()?;
        let condition = if self.keyword("given") {
            self.pos += 1;
            Some(self.formula()?)
        } else {
            None
        };
        self.expect(&Tok::RBracket)?;
        self.expect(&Tok::Underscore)?;
        self.expect(&Tok::LBrace)?;
        let bound = self.varlist()?;
        self.expect(&Tok::RBrace)?;
        let to_bind: Vec<String> = bound
            .iter()
            .filter(|v| !self.scope.contains(v))
            .cloned()
            .collect();
        let body = rebind_formula(&body, &to_bind);
        Ok(match condition {
            None => ProbTerm::prop(body, bound),
            Some(cond) => {
                let cond = rebind_formula(&cond, &to_bind);
                ProbTerm::cond_prop(body, cond, bound)
            }
        })
    }
}

fn rebind_formula(f: &Formula, vars: &[String]) -> Formula {
    if vars.is_empty() {
        return f.clone();
    }
    match f {
        Formula::Atom { pred, args } => Formula::Atom {
            pred: pred.clone(),
            args: args
                .iter()
                .map(|a| match a {
                    AtomArg::Const(c) if vars.iter().any(|v| v == c) => AtomArg::Var(c.clone()),
                    other => other.clone(),
                })
                .collect(),
        },
        Formula::Not(inner) => rebind_formula(inner, vars).not(),
        Formula::And(l, r) => rebind_formula(l, vars).and(rebind_formula(r, vars)),
        Formula::Or(l, r) => rebind_formula(l, vars).or(rebind_formula(r, vars)),
        Formula::Imp(l, r) => rebind_formula(l, vars).imp(rebind_formula(r, vars)),
        Formula::CondConn(l, r) => rebind_formula(l, vars).cond_conn(rebind_formula(r, vars)),
        Formula::Forall(v, body) => {
            let inner: Vec<String> = vars.iter().filter(|u| *u != v).cloned().collect();
            Formula::forall(v.clone(), rebind_formula(body, &inner))
        }
        Formula::Exists(v, body) => {
            let inner: Vec<String> = vars.iter().filter(|u| *u != v).cloned().collect();
            Formula::exists(v.clone(), rebind_formula(body, &inner))
        }
        Formula::Compare(l, rel, r) => {
            Formula::Compare(rebind_term(l, vars), *rel, rebind_term(r, vars))
        }
    }
}

fn rebind_term(t: &ProbTerm, vars: &[String]) -> ProbTerm {
    let minus = |bound: &[String]| -> Vec<String> {
        vars.iter()
            .filter(|v| !bound.contains(v))
            .cloned()
            .collect()
    };
    match t {
        ProbTerm::Const(_) => t.clone(),
        ProbTerm::Prop { body, bound } => ProbTerm::Prop {
            body: Box::new(rebind_formula(body, &minus(bound))),
            bound: bound.clone(),
        },
        ProbTerm::CondProp {
            consequent,
            condition,
            bound,
        } => {
            let inner = minus(bound);
            ProbTerm::CondProp {
                consequent: Box::new(rebind_formula(consequent, &inner)),
                condition: Box::new(rebind_formula(condition, &inner)),
                bound: bound.clone(),
            }
        }
        ProbTerm::P1 { bound, body } => ProbTerm::P1 {
            bound: bound.clone(),
            body: Box::new(rebind_formula(body, &minus(bound))),
        },
        ProbTerm::P2 { bound, body } => ProbTerm::P2 {
            bound: bound.clone(),
            body: Box::new(rebind_formula(body, &minus(bound))),
        },
        ProbTerm::Add(l, r) => ProbTerm::Add(
            Box::new(rebind_term(l, vars)),
            Box::new(rebind_term(r, vars)),
        ),
        ProbTerm::Sub(l, r) => ProbTerm::Sub(
            Box::new(rebind_term(l, vars)),
            Box::new(rebind_term(r, vars)),
        ),
        ProbTerm::Mul(l, r) => ProbTerm::Mul(
            Box::new(rebind_term(l, vars)),
            Box::new(rebind_term(r, vars)),
        ),
    }
}

// Rendering. Formula levels, loosest first: comparison 0, `~>` 1, `->` 2,
// `|` 3, `&` 4, prefix 5. Term levels: `+`/`-` 1, `*` 2, atoms 3.
// `trailing` is true when the rendering extends to the end of its enclosing
// construct; quantifiers may only appear bare in trailing position because
// their bodies extend maximally right.

fn fmla(f: &Formula, min: u8, trailing: bool, out: &mut String) {
    match f {
        Formula::Atom { pred, args } => {
            out.push_str(pred);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push_str(a.name());
                }
                out.push(')');
            }
        }
        Formula::Not(inner) => {
            out.push('!');
            fmla(inner, 5, trailing, out);
        }
        Formula::And(l, r) => binfm(f, l, " & ", r, 4, min, trailing, out),
        Formula::Or(l, r) => binfm(f, l, " | ", r, 3, min, trailing, out),
        Formula::Imp(l, r) => binfm(f, l, " -> ", r, 2, min, trailing, out),
        Formula::CondConn(l, r) => binfm(f, l, " ~> ", r, 1, min, trailing, out),
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let paren = !trailing;
            if paren {
                out.push('(');
            }
            out.push_str(if matches!(f, Formula::Forall(..)) {
                "forall "
            } else {
                "exists "
            });
            out.push_str(v);
            out.push_str(". ");
            fmla(body, 0, true, out);
            if paren {
                out.push(')');
            }
        }
        Formula::Compare(l, rel, r) => {
            let paren = min > 0;
            if paren {
                out.push('(');
            }
            term(l, 1, false, out);
            out.push(' ');
            out.push_str(rel.symbol());
            out.push(' ');
            term(r, 1, trailing || paren, out);
            if paren {
                out.push(')');
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn binfm(
    whole: &Formula,
    l: &Formula,
    op: &str,
    r: &Formula,
    prec: u8,
    min: u8,
    trailing: bool,
    out: &mut String,
) {
    let right_assoc = matches!(whole, Formula::Imp(..) | Formula::CondConn(..));
    let paren = prec < min;
    if paren {
        out.push('(');
    }
    let (lmin, rmin) = if right_assoc {
        (prec + 1, prec)
    } else {
        (prec, prec + 1)
    };
    fmla(l, lmin, false, out);
    out.push_str(op);
    fmla(r, rmin, trailing || paren, out);
    if paren {
        out.push(')');
    }
}

fn term(t: &ProbTerm, min: u8, trailing: bool, out: &mut String) {
    match t {
        ProbTerm::Const(q) => out.push_str(&q.to_string()),
        ProbTerm::Prop { body, bound } => {
            out.push('[');
            fmla(body, 0, true, out);
            out.push(']');
            binder_suffix(bound, out);
        }
        ProbTerm::CondProp {
            consequent,
            condition,
            bound,
        } => {
            out.push('[');
            fmla(consequent, 0, true, out);
            out.push_str(" given ");
            fmla(condition, 0, true, out);
            out.push(']');
            binder_suffix(bound, out);
        }
        ProbTerm::P1 { bound, body } | ProbTerm::P2 { bound, body } => {
            let paren = !trailing;
            if paren {
                out.push('(');
            }
            out.push_str(if matches!(t, ProbTerm::P1 { .. }) {
                "P1 "
            } else {
                "P2 "
            });
            for (i, v) in bound.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(v);
            }
            out.push_str(". ");
            fmla(body, 1, true, out);
            if paren {
                out.push(')');
            }
        }
        ProbTerm::Add(l, r) => binterm(l, " + ", r, 1, min, trailing, out),
        ProbTerm::Sub(l, r) => binterm(l, " - ", r, 1, min, trailing, out),
        ProbTerm::Mul(l, r) => binterm(l, " * ", r, 2, min, trailing, out),
    }
}

fn binterm(
    l: &ProbTerm,
    op: &str,
    r: &ProbTerm,
    prec: u8,
    min: u8,
    trailing: bool,
    out: &mut String,
) {
    let paren = prec < min;
    if paren {
        out.push('(');
    }
    term(l, prec, false, out);
    out.push_str(op);
    term(r, prec + 1, trailing || paren, out);
    if paren {
        out.push(')');
    }
}

fn binder_suffix(bound: &[String], out: &mut String) {
    out.push_str("_{");
    for (i, v) in bound.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(v);
    }
    out.push('}');
}

/// Canonical rendering; `parse(render(f))` structurally equals `f`.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    fmla(f, 0, true, &mut out);
    out
}

/// Canonical rendering of a probability term.
pub fn render_term(t: &ProbTerm) -> String {
    let mut out = String::new();
    term(t, 1, true, &mut out);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl fmt::Display for ProbTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self))
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::free_variables;

    fn p(text: &str) -> Formula {
        parse(text).unwrap_or_else(|e| panic!("parse failed on `{text}`: {e}"))
    }

    fn roundtrip(text: &str) {
        let f = p(text);
        let rendered = render(&f);
        let back = p(&rendered);
        assert_eq!(
            back, f,
            "round-trip changed `{text}` (rendered `{rendered}`)"
        );
    }

    #[test]
    fn universal_implication() {
        let f = p("forall x. father(x) -> man(x)");
        let expected =
            Formula::forall("x", Formula::va("father", "x").imp(Formula::va("man", "x")));
        assert_eq!(f, expected);
    }

    #[test]
    fn conditional_proportion_comparison() {
        let f = p("[flies(x) given bird(x)]_{x} >= 9/10");
        let expected = Formula::compare(
            ProbTerm::cond_prop(
                Formula::va("flies", "x"),
                Formula::va("bird", "x"),
                vec!["x".into()],
            ),
            Rel::Ge,
            ProbTerm::constant(Rational::new(9, 10)),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn nested_conditional_under_p1() {
        let f = p("P1 x. (p(x) ~> q(x)) ~> (v(x) ~> z(x)) > 9/10");
        let body = Formula::va("p", "x")
            .cond_conn(Formula::va("q", "x"))
            .cond_conn(Formula::va("v", "x").cond_conn(Formula::va("z", "x")));
        let expected = Formula::compare(
            ProbTerm::p1(vec!["x".into()], body),
            Rel::Gt,
            ProbTerm::constant(Rational::new(9, 10)),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn precedence_chain() {
        // Free identifiers resolve to constants: nothing binds x here.
        let f = p("!a(x) & b(x) | c(x) -> d(x)");
        let ca = |pred: &str| Formula::atom(pred, vec![AtomArg::cst("x")]);
        let expected = ca("a").not().and(ca("b")).or(ca("c")).imp(ca("d"));
        assert_eq!(f, expected);
    }

    #[test]
    fn arrows_are_right_associative() {
        assert_eq!(
            p("a -> b -> c"),
            Formula::atom("a", vec![])
                .imp(Formula::atom("b", vec![]).imp(Formula::atom("c", vec![]))),
        );
        assert_eq!(
            p("a ~> b ~> c"),
            Formula::atom("a", vec![])
                .cond_conn(Formula::atom("b", vec![]).cond_conn(Formula::atom("c", vec![]))),
        );
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(&Formula::va("m", "x").not()), "!m(x)");
        let f = Formula::va("a", "x").and(Formula::va("b", "x").or(Formula::va("c", "x")));
        assert_eq!(render(&f), "a(x) & (b(x) | c(x))");
        let t = ProbTerm::cond_prop(
            Formula::va("q", "x"),
            Formula::va("p", "x"),
            vec!["x".into()],
        );
        assert_eq!(render_term(&t), "[q(x) given p(x)]_{x}");
    }

    #[test]
    fn bracket_binders_bind_after_the_fact() {
        let f = p("[likes(x,y)]_{x} >= 1/2");
        match &f {
            Formula::Compare(ProbTerm::Prop { body, bound }, Rel::Ge, _) => {
                assert_eq!(bound, &["x".to_string()]);
                assert_eq!(
                    **body,
                    Formula::atom("likes", vec![AtomArg::var("x"), AtomArg::cst("y")])
                );
            }
            other => panic!("unexpected shape: {other:?}"),
        }
        assert_eq!(
            free_variables(&f).into_iter().collect::<Vec<_>>(),
            Vec::<String>::new()
        );
    }

    #[test]
    fn shadowed_binder_is_untouched() {
        let f = p("[p(x) & ([q(x)]_{x} = 1)]_{x} > 0");
        match &f {
            Formula::Compare(ProbTerm::Prop { body, .. }, _, _) => match &**body {
                Formula::And(l, r) => {
                    assert_eq!(**l, Formula::va("p", "x"));
                    match &**r {
                        Formula::Compare(ProbTerm::Prop { body: inner, .. }, Rel::Eq, _) => {
                            assert_eq!(**inner, Formula::va("q", "x"));
                        }
                        other => panic!("unexpected inner: {other:?}"),
                    }
                }
                other => panic!("unexpected body: {other:?}"),
            },
            other => panic!("unexpected shape: {other:?}"),
        }
    }

    #[test]
    fn outer_quantifier_variable_stays_bound_inside_brackets() {
        let f = p("forall x. [likes(x,y)]_{y} >= 1/2");
        match &f {
            Formula::Forall(v, body) => {
                assert_eq!(v, "x");
                match &**body {
                    Formula::Compare(ProbTerm::Prop { body, bound }, _, _) => {
                        assert_eq!(bound, &["y".to_string()]);
                        assert_eq!(
                            **body,
                            Formula::atom("likes", vec![AtomArg::var("x"), AtomArg::var("y")])
                        );
                    }
                    other => panic!("unexpected inner: {other:?}"),
                }
            }
            other => panic!("unexpected shape: {other:?}"),
        }
        assert!(free_variables(&f).is_empty());
    }

    #[test]
    fn decimals_parse_exactly() {
        let f = p("[p(x)]_{x} >= 0.95");
        match f {
            Formula::Compare(_, _, ProbTerm::Const(q)) => {
                assert_eq!(q, Rational::new(19, 20));
            }
            other => panic!("unexpected shape: {other:?}"),
        }
    }

    #[test]
    fn term_arithmetic_precedence() {
        let f = p("[a(x)]_{x} >= 1 - 2 * 1/20");
        match f {
            Formula::Compare(_, _, rhs) => {
                let expected = ProbTerm::constant(Rational::one()).sub(
                    ProbTerm::constant(Rational::from_int(2))
                        .mul(ProbTerm::constant(Rational::new(1, 20))),
                );
                assert_eq!(rhs, expected);
            }
            other => panic!("unexpected shape: {other:?}"),
        }
    }

    #[test]
    fn comments_and_whitespace_are_skipped() {
        assert_eq!(
            p("p(a)  # trailing comment"),
            Formula::atom("p", vec![AtomArg::cst("a")])
        );
        assert_eq!(p("  p(a)\n"), p("p(a)"));
    }

    #[test]
    fn zero_arity_atoms() {
        assert_eq!(p("raining"), Formula::atom("raining", vec![]));
        roundtrip("raining & !sunny");
    }

    #[test]
    fn round_trip_specific_shapes() {
        for text in [
            "forall x. father(x) -> man(x)",
            "[flies(x) given bird(x)]_{x} >= 9/10",
            "P1 x. (p(x) ~> q(x)) ~> (v(x) ~> z(x)) > 9/10",
            "!a(x) & b(x) | c(x) -> d(x)",
            "p(a) & (q(b) | r(a,b))",
            "exists y. forall x. likes(x,y)",
            "[p(x)]_{x} + [q(x)]_{x} >= [p(x) | q(x)]_{x}",
            "P2 x,y. likes(x,y) ~> p(x) = 1",
            "[p(x) & ([q(y)]_{y} > 1/2)]_{x} < 1",
            "1 - 2 * 1/20 <= [b(x) given a(x)]_{x}",
            "(forall x. p(x)) & q(a)",
            "!(forall x. p(x)) | exists z. r(z,z)",
            "P1 x. forall y. p(y) > 1/2",
            "[p(x)]_{x} * P1 y. q(y) >= -1/2",
            "forall x. [flies(x) given bird(x)]_{x} >= 9/10 -> p(x)",
        ] {
            roundtrip(text);
        }
    }

    #[test]
    fn quantifier_body_extends_right() {
        let f = p("forall x. p(x) & q(x)");
        assert_eq!(
            f,
            Formula::forall("x", Formula::va("p", "x").and(Formula::va("q", "x")))
        );
        let g = p("p(a) & forall x. q(x) | r(x)");
        assert_eq!(
            g,
            Formula::atom("p", vec![AtomArg::cst("a")]).and(Formula::forall(
                "x",
                Formula::va("q", "x").or(Formula::va("r", "x"))
            ))
        );
    }

    #[test]
    fn binder_rendering_parenthesizes_nontrailing() {
        let f = Formula::forall("x", Formula::va("p", "x")).and(Formula::atom("q", vec![]));
        assert_eq!(render(&f), "(forall x. p(x)) & q");
        roundtrip(&render(&f));
        let g = Formula::forall("x", Formula::va("p", "x"))
            .not()
            .or(Formula::atom("q", vec![]));
        assert_eq!(render(&g), "!(forall x. p(x)) | q");
        roundtrip(&render(&g));
    }

    #[test]
    fn errors_carry_spans_within_bounds() {
        for text in [
            "p(",
            "forall . p(x)",
            "[p(x)]_{x}",
            "p(x) &",
            "1/0 > 0",
            "p(x) @ q(x)",
            "[p(x)]_{x} >= given",
            "~p(x)",
            "forall given. p(x)",
            "",
        ] {
            let err = parse(text).unwrap_err();
            assert!(err.span.start <= err.span.end, "bad span for `{text}`");
            assert!(
                err.span.end <= text.len(),
                "span out of bounds for `{text}`"
            );
        }
    }

    #[test]
    fn bare_term_is_not_a_formula() {
        let err = parse("[p(x)]_{x}").unwrap_err();
        assert!(err.message.contains("comparison"), "got: {}", err.message);
    }

    #[test]
    fn reserved_words_are_rejected_as_names() {
        assert!(parse("given(x)").is_err());
        assert!(parse("forall(x)").is_err());
        assert!(parse("p(forall)").is_err());
    }

    #[test]
    fn keyword_prefixed_identifiers_are_ordinary() {
        assert_eq!(p("foralls"), Formula::atom("foralls", vec![]));
        assert_eq!(p("P1s(x)"), Formula::atom("P1s", vec![AtomArg::cst("x")]));
    }
}
