//! Terms over a ranked signature, written in right-application notation.
//!
//! An operator follows its parenthesised arguments: `((ε)a)b` applies `a`
//! and then `b` to the constant `ε`, and `(x0,x1)f` applies a binary `f` to
//! two variables. Unary terms over `ε` spell out traces.

use std::fmt;

use crate::error::{Error, Result};
use crate::symbol::{is_variable_name, Symbol};
use crate::trace::Trace;

/// Name of the constant that every language algebra interprets.
pub const EPSILON: &str = "ε";

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn constant(name: &str) -> Term {
        Term::App(name.to_string(), Vec::new())
    }

    pub fn epsilon() -> Term {
        Term::constant(EPSILON)
    }

    pub fn apply(op: &str, args: Vec<Term>) -> Term {
        Term::App(op.to_string(), args)
    }

    /// `(self)op`.
    pub fn then(self, op: &str) -> Term {
        Term::App(op.to_string(), vec![self])
    }

    /// The unary term applying the symbols of `trace` in order to `base`.
    pub fn spelling(base: Term, trace: &Trace) -> Term {
        trace.symbols().iter().fold(base, |t, s| t.then(s.name()))
    }

    /// The ground term `(…((ε)σ1)…)σm` of a trace.
    pub fn of_trace(trace: &Trace) -> Term {
        Term::spelling(Term::epsilon(), trace)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// One more than the largest variable index, or 0 for ground terms.
    pub fn var_bound(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::App(_, args) => args.iter().map(Term::var_bound).max().unwrap_or(0),
        }
    }

    /// Number of operator applications on the longest path.
    pub fn height(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::height).max().unwrap_or(0),
        }
    }

    /// For a unary term, its innermost subterm (a variable or a constant)
    /// and the operators applied to it, innermost first.
    pub fn spine(&self) -> Option<(Term, Vec<String>)> {
        let mut ops = Vec::new();
        let mut t = self;
        loop {
            match t {
                Term::App(op, args) if args.len() == 1 => {
                    ops.push(op.clone());
                    t = &args[0];
                }
                Term::App(_, args) if !args.is_empty() => return None,
                base => {
                    ops.reverse();
                    return Some((base.clone(), ops));
                }
            }
        }
    }

    /// Simultaneous substitution of `args[i]` for `xi`.
    pub fn substitute(&self, args: &[Term]) -> Result<Term> {
        match self {
            Term::Var(i) => args
                .get(*i)
                .cloned()
                .ok_or_else(|| Error::Var(format!("x{i} with {} arguments", args.len()))),
            Term::App(op, sub) => Ok(Term::App(
                op.clone(),
                sub.iter()
                    .map(|t| t.substitute(args))
                    .collect::<Result<_>>()?,
            )),
        }
    }

    pub fn parse(text: &str) -> Result<Term> {
        let mut p = Parser {
            chars: text.chars().collect(),
            pos: 0,
        };
        let t = p.term()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(op, args) if args.is_empty() => f.write_str(op),
            Term::App(op, args) => {
                f.write_str("(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, "){op}")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        let text: String = self.chars.iter().collect();
        Error::Invalid(format!("{msg} at offset {} in term `{text}`", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn name(&mut self) -> Result<String> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&'ε') {
            self.pos += 1;
            return Ok(EPSILON.to_string());
        }
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        if self.chars.get(self.pos) != Some(&'(') {
            let name = self.name()?;
            if is_variable_name(&name) {
                return Ok(Term::Var(
                    name[1..].parse().map_err(|_| self.error("bad variable"))?,
                ));
            }
            return Ok(Term::constant(&name));
        }
        self.pos += 1;
        let mut args = vec![self.term()?];
        loop {
            self.skip_ws();
            match self.chars.get(self.pos) {
                Some(',') => {
                    self.pos += 1;
                    args.push(self.term()?);
                }
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected `,` or `)`")),
            }
        }
        let op = self.name()?;
        if op != EPSILON {
            Symbol::new(&op).map_err(|_| self.error("bad operator name"))?;
        }
        Ok(Term::App(op, args))
    }
}
