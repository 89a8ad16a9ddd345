//! Process specification files.
//!
//! ```text
//! process P1 { alphabet: a, b; kind: explicit; traces = ["ab"]; depth: 3 }
//! process P2 { alphabet: b, c; kind: path; expr: (b ; c)*; depth: 4 }
//! ```
//!
//! Path expressions use `;` for sequence, `|` for choice, postfix `*` for
//! iteration and parentheses. Inside `expr:` a `;` ends the expression
//! only when the next tokens start another field or close the block.

use std::collections::BTreeSet;
use std::fmt;

use landin::{PrefixLanguage, Symbol, Trace};

use crate::error::CliError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PathExpr {
    Atom(Symbol),
    Seq(Box<PathExpr>, Box<PathExpr>),
    Choice(Box<PathExpr>, Box<PathExpr>),
    Star(Box<PathExpr>),
}

impl PathExpr {
    pub fn has_star(&self) -> bool {
        match self {
            PathExpr::Atom(_) => false,
            PathExpr::Seq(l, r) | PathExpr::Choice(l, r) => l.has_star() || r.has_star(),
            PathExpr::Star(_) => true,
        }
    }

    /// Words of the denoted language with at most `depth` symbols.
    pub fn words(&self, depth: usize) -> BTreeSet<Trace> {
        match self {
            PathExpr::Atom(s) if depth > 0 => BTreeSet::from([Trace::unit(s.clone())]),
            PathExpr::Atom(_) => BTreeSet::new(),
            PathExpr::Choice(l, r) => &l.words(depth) | &r.words(depth),
            PathExpr::Seq(l, r) => l
                .words(depth)
                .iter()
                .flat_map(|u| {
                    r.words(depth - u.len())
                        .into_iter()
                        .map(move |v| u.concat(&v))
                })
                .collect(),
            PathExpr::Star(e) => {
                let mut all = BTreeSet::from([Trace::empty()]);
                let mut frontier = all.clone();
                while !frontier.is_empty() {
                    let next: BTreeSet<Trace> = frontier
                        .iter()
                        .flat_map(|u| {
                            e.words(depth - u.len())
                                .into_iter()
                                .filter(|v| !v.is_empty())
                                .map(move |v| u.concat(&v))
                        })
                        .filter(|w| !all.contains(w))
                        .collect();
                    all.extend(next.iter().cloned());
                    frontier = next;
                }
                all
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            PathExpr::Choice(..) => 0,
            PathExpr::Seq(..) => 1,
            PathExpr::Star(_) | PathExpr::Atom(_) => 2,
        }
    }
}

impl fmt::Display for PathExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, e: &PathExpr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            PathExpr::Atom(s) => write!(f, "{s}"),
            PathExpr::Seq(l, r) => {
                child(f, l, 1)?;
                f.write_str(" ; ")?;
                child(f, r, 2)
            }
            PathExpr::Choice(l, r) => {
                child(f, l, 0)?;
                f.write_str(" | ")?;
                child(f, r, 1)
            }
            PathExpr::Star(e) => {
                child(f, e, 2)?;
                f.write_str("*")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Body {
    Explicit(BTreeSet<Trace>),
    Path(PathExpr),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProcessSpec {
    pub name: String,
    pub alphabet: landin::Alphabet,
    pub body: Body,
    pub depth: Option<usize>,
}

impl ProcessSpec {
    /// The prefix-closed language of the body, truncated at the declared
    /// depth. Without a declared depth the language is finite and its depth
    /// is one more than its longest trace.
    pub fn language(&self) -> Result<PrefixLanguage, CliError> {
        let traces: BTreeSet<Trace> = match &self.body {
            Body::Explicit(ts) => ts.clone(),
            Body::Path(e) => {
                let bound = self.depth.unwrap_or_else(|| star_free_bound(e));
                e.words(bound)
            }
        };
        let closed = landin::language::prefix_close(traces);
        let longest = closed.iter().map(Trace::len).max().unwrap_or(0);
        let depth = self.depth.unwrap_or(longest + 1);
        let closed = closed.into_iter().filter(|t| t.len() <= depth);
        Ok(PrefixLanguage::new(self.alphabet.clone(), closed, depth)?)
    }
}

/// Longest word of a star-free expression.
fn star_free_bound(e: &PathExpr) -> usize {
    match e {
        PathExpr::Atom(_) => 1,
        PathExpr::Seq(l, r) => star_free_bound(l) + star_free_bound(r),
        PathExpr::Choice(l, r) => star_free_bound(l).max(star_free_bound(r)),
        PathExpr::Star(_) => unreachable!("starred expressions declare a depth"),
    }
}

impl fmt::Display for ProcessSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "process {} {{", self.name)?;
        let names: Vec<&str> = self.alphabet.iter().map(Symbol::name).collect();
        writeln!(f, "  alphabet: {};", names.join(", "))?;
        match &self.body {
            Body::Explicit(ts) => {
                writeln!(f, "  kind: explicit;")?;
                let quoted: Vec<String> = ts.iter().map(|t| format!("{:?}", t.to_text())).collect();
                write!(f, "  traces = [{}]", quoted.join(", "))?;
            }
            Body::Path(e) => {
                writeln!(f, "  kind: path;")?;
                write!(f, "  expr: {e}")?;
            }
        }
        match self.depth {
            Some(d) => write!(f, ";\n  depth: {d}\n}}"),
            None => write!(f, "\n}}"),
        }
    }
}

/// Canonical text of a list of specs.
pub fn emit(specs: &[ProcessSpec]) -> String {
    specs
        .iter()
        .map(|s| format!("{s}\n"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Ident(String),
    Str(String),
    Num(usize),
    Punct(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, CliError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|c| c.is_ascii_digit()) {
                s.push(d);
                bump(&mut chars);
            }
            let n = s
                .parse()
                .map_err(|_| CliError::parse(l, col, format!("number `{s}` is too large")))?;
            out.push(Token {
                tok: Tok::Num(n),
                line: l,
                column: col,
            });
        } else if c.is_alphanumeric() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|c| c.is_alphanumeric() || **c == '_') {
                s.push(d);
                bump(&mut chars);
            }
            out.push(Token {
                tok: Tok::Ident(s),
                line: l,
                column: col,
            });
        } else if c == '"' {
            bump(&mut chars);
            let mut s = String::new();
            loop {
                match bump(&mut chars) {
                    Some('"') => break,
                    Some('\n') | None => {
                        return Err(CliError::parse(l, col, "unterminated string"))
                    }
                    Some(d) => s.push(d),
                }
            }
            out.push(Token {
                tok: Tok::Str(s),
                line: l,
                column: col,
            });
        } else if "{}:;,=[]()|*".contains(c) {
            bump(&mut chars);
            out.push(Token {
                tok: Tok::Punct(c),
                line: l,
                column: col,
            });
        } else {
            return Err(CliError::parse(
                l,
                col,
                format!("unexpected character `{c}`"),
            ));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

const FIELDS: [&str; 5] = ["alphabet", "kind", "expr", "traces", "depth"];

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column))
    }

    fn error(&self, message: impl Into<String>) -> CliError {
        let (l, c) = self.here();
        CliError::parse(l, c, message)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn punct(&mut self, c: char) -> Result<(), CliError> {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<(String, (usize, usize)), CliError> {
        let at = self.here();
        match self.next() {
            Some(Tok::Ident(s)) => Ok((s, at)),
            _ => {
                self.pos -= 1;
                Err(self.error("expected a name"))
            }
        }
    }

    fn symbol(&mut self) -> Result<(Symbol, (usize, usize)), CliError> {
        let (name, at) = self.ident()?;
        let sym = Symbol::new(&name)
            .map_err(|_| CliError::symbol(at, format!("`{name}` is not a valid symbol")))?;
        Ok((sym, at))
    }

    /// A `;` that separates fields rather than sequencing a path.
    fn at_field_end(&self) -> bool {
        match self.peek() {
            Some(Tok::Punct('}')) | None => true,
            Some(Tok::Punct(';')) => match (self.peek_at(1), self.peek_at(2)) {
                (Some(Tok::Punct('}')) | None, _) => true,
                (Some(Tok::Ident(f)), Some(Tok::Punct(':' | '='))) => FIELDS.contains(&f.as_str()),
                _ => false,
            },
            _ => false,
        }
    }

    fn path(&mut self, alphabet: &landin::Alphabet) -> Result<PathExpr, CliError> {
        let mut e = self.seq(alphabet)?;
        while self.peek() == Some(&Tok::Punct('|')) {
            self.pos += 1;
            e = PathExpr::Choice(Box::new(e), Box::new(self.seq(alphabet)?));
        }
        Ok(e)
    }

    fn seq(&mut self, alphabet: &landin::Alphabet) -> Result<PathExpr, CliError> {
        let mut e = self.postfix(alphabet)?;
        while self.peek() == Some(&Tok::Punct(';')) && !self.at_field_end() {
            self.pos += 1;
            e = PathExpr::Seq(Box::new(e), Box::new(self.postfix(alphabet)?));
        }
        Ok(e)
    }

    fn postfix(&mut self, alphabet: &landin::Alphabet) -> Result<PathExpr, CliError> {
        let mut e = if self.peek() == Some(&Tok::Punct('(')) {
            self.pos += 1;
            let inner = self.path(alphabet)?;
            self.punct(')')?;
            inner
        } else {
            let (s, at) = self.symbol()?;
            if !alphabet.contains(&s) {
                return Err(CliError::symbol(
                    at,
                    format!("`{s}` is not declared in the alphabet"),
                ));
            }
            PathExpr::Atom(s)
        };
        while self.peek() == Some(&Tok::Punct('*')) {
            self.pos += 1;
            e = PathExpr::Star(Box::new(e));
        }
        Ok(e)
    }

    fn block(&mut self) -> Result<ProcessSpec, CliError> {
        let start = self.here();
        match self.ident()? {
            (kw, _) if kw == "process" => {}
            _ => {
                self.pos -= 1;
                return Err(self.error("expected `process`"));
            }
        }
        let (name, _) = self.ident()?;
        self.punct('{')?;
        let mut alphabet: Option<landin::Alphabet> = None;
        let mut kind: Option<String> = None;
        let mut expr: Option<PathExpr> = None;
        let mut traces: Option<BTreeSet<Trace>> = None;
        let mut depth: Option<usize> = None;
        loop {
            if self.peek() == Some(&Tok::Punct('}')) {
                self.pos += 1;
                break;
            }
            let (field, at) = self.ident()?;
            let dup = || CliError::parse(at.0, at.1, format!("field `{field}` given twice"));
            match field.as_str() {
                "alphabet" => {
                    self.punct(':')?;
                    let mut syms = landin::Alphabet::new();
                    loop {
                        syms.insert(self.symbol()?.0);
                        if self.peek() != Some(&Tok::Punct(',')) {
                            break;
                        }
                        self.pos += 1;
                    }
                    if alphabet.replace(syms).is_some() {
                        return Err(dup());
                    }
                }
                "kind" => {
                    self.punct(':')?;
                    let (k, at) = self.ident()?;
                    if k != "path" && k != "explicit" {
                        return Err(CliError::parse(at.0, at.1, format!("unknown kind `{k}`")));
                    }
                    if kind.replace(k).is_some() {
                        return Err(dup());
                    }
                }
                "expr" => {
                    self.punct(':')?;
                    let alpha = alphabet
                        .clone()
                        .ok_or_else(|| self.error("`alphabet` must precede `expr`"))?;
                    let e = self.path(&alpha)?;
                    if expr.replace(e).is_some() {
                        return Err(dup());
                    }
                }
                "traces" => {
                    self.punct('=')?;
                    self.punct('[')?;
                    let alpha = alphabet
                        .clone()
                        .ok_or_else(|| self.error("`alphabet` must precede `traces`"))?;
                    let mut set = BTreeSet::new();
                    while let Some(Tok::Str(s)) = self.peek().cloned() {
                        let at = self.here();
                        self.pos += 1;
                        let t = Trace::parse(&s, &alpha).map_err(|_| {
                            CliError::symbol(at, format!("trace \"{s}\" uses undeclared symbols"))
                        })?;
                        set.insert(t);
                        if self.peek() != Some(&Tok::Punct(',')) {
                            break;
                        }
                        self.pos += 1;
                    }
                    self.punct(']')?;
                    if traces.replace(set).is_some() {
                        return Err(dup());
                    }
                }
                "depth" => {
                    self.punct(':')?;
                    match self.next() {
                        Some(Tok::Num(n)) => {
                            if depth.replace(n).is_some() {
                                return Err(dup());
                            }
                        }
                        _ => {
                            self.pos -= 1;
                            return Err(self.error("expected a number"));
                        }
                    }
                }
                _ => {
                    return Err(CliError::parse(
                        at.0,
                        at.1,
                        format!("unknown field `{field}`"),
                    ))
                }
            }
            match self.peek() {
                Some(Tok::Punct(';')) => self.pos += 1,
                Some(Tok::Punct('}')) => {}
                _ => return Err(self.error("expected `;` or `}`")),
            }
        }
        let missing = |what: &str| {
            CliError::parse(start.0, start.1, format!("process `{name}` has no {what}"))
        };
        let alphabet = alphabet.ok_or_else(|| missing("alphabet"))?;
        let body = match kind.as_deref() {
            Some("path") => {
                if traces.is_some() {
                    return Err(missing("path body; `traces` belongs to explicit processes"));
                }
                let e = expr.ok_or_else(|| missing("`expr`"))?;
                if e.has_star() && depth.is_none() {
                    return Err(CliError::depth(
                        start,
                        format!("process `{name}` iterates without a depth"),
                    ));
                }
                Body::Path(e)
            }
            Some(_) => {
                if expr.is_some() {
                    return Err(missing("explicit body; `expr` belongs to path processes"));
                }
                Body::Explicit(traces.ok_or_else(|| missing("`traces`"))?)
            }
            None => return Err(missing("kind")),
        };
        Ok(ProcessSpec {
            name,
            alphabet,
            body,
            depth,
        })
    }
}

/// Parses every process block of a specification file.
pub fn parse_spec(text: &str) -> Result<Vec<ProcessSpec>, CliError> {
    let toks = lex(text)?;
    let lines = text.split('\n').count();
    let last = text.rsplit('\n').next().map_or(0, |l| l.chars().count());
    let mut p = Parser {
        toks,
        pos: 0,
        end: (lines, last + 1),
    };
    let mut out: Vec<ProcessSpec> = Vec::new();
    while p.peek().is_some() {
        let at = p.here();
        let spec = p.block()?;
        if out.iter().any(|s| s.name == spec.name) {
            return Err(CliError::parse(
                at.0,
                at.1,
                format!("process `{}` defined twice", spec.name),
            ));
        }
        out.push(spec);
    }
    Ok(out)
}
