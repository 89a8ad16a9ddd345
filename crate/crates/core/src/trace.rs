use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::symbol::{Alphabet, Symbol};

/// A finite sequence of symbols; the empty sequence is ε.
///
/// Traces are ordered by length first and then lexicographically by symbol,
/// which is the canonical order of every emitted trace set.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Trace(Vec<Symbol>);

impl Trace {
    pub fn empty() -> Self {
        Trace(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        Trace(symbols)
    }

    pub fn unit(symbol: Symbol) -> Self {
        Trace(vec![symbol])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<&Symbol> {
        self.0.last()
    }

    /// `self` followed by `symbol`.
    pub fn extended(&self, symbol: &Symbol) -> Trace {
        let mut symbols = self.0.clone();
        symbols.push(symbol.clone());
        Trace(symbols)
    }

    pub fn concat(&self, other: &Trace) -> Trace {
        let mut symbols = self.0.clone();
        symbols.extend_from_slice(&other.0);
        Trace(symbols)
    }

    /// The first `len` symbols.
    pub fn prefix(&self, len: usize) -> Trace {
        Trace(self.0[..len.min(self.0.len())].to_vec())
    }

    /// All prefixes, from ε up to `self`.
    pub fn prefixes(&self) -> impl Iterator<Item = Trace> + '_ {
        (0..=self.0.len()).map(move |n| self.prefix(n))
    }

    pub fn is_prefix_of(&self, other: &Trace) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Deletes every symbol that is not in `alpha`.
    pub fn project(&self, alpha: &Alphabet) -> Trace {
        Trace(
            self.0
                .iter()
                .filter(|s| alpha.contains(s))
                .cloned()
                .collect(),
        )
    }

    pub fn uses_only(&self, alpha: &Alphabet) -> bool {
        self.0.iter().all(|s| alpha.contains(s))
    }

    /// Number of occurrences of `symbol`.
    pub fn count(&self, symbol: &Symbol) -> usize {
        self.0.iter().filter(|s| *s == symbol).count()
    }

    /// Plain text form: symbols concatenated when every name is a single
    /// character, separated by spaces otherwise. ε renders as `""`.
    pub fn to_text(&self) -> String {
        let compact = self.0.iter().all(|s| s.name().chars().count() == 1);
        let names: Vec<&str> = self.0.iter().map(Symbol::name).collect();
        names.join(if compact { "" } else { " " })
    }

    /// Parses the plain text form against the symbols of `alpha`.
    ///
    /// Text containing whitespace is split on whitespace. Otherwise the whole
    /// text is taken as one symbol if `alpha` declares it, and as a sequence
    /// of one-character symbols if not.
    pub fn parse(text: &str, alpha: &Alphabet) -> Result<Trace> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Trace::empty());
        }
        let lookup = |name: &str| -> Result<Symbol> {
            let sym = Symbol::new(name)?;
            if alpha.contains(&sym) {
                Ok(sym)
            } else {
                Err(Error::Symbol(name.to_string()))
            }
        };
        if text.contains(char::is_whitespace) {
            return text
                .split_whitespace()
                .map(lookup)
                .collect::<Result<_>>()
                .map(Trace);
        }
        if let Ok(sym) = lookup(text) {
            return Ok(Trace::unit(sym));
        }
        text.chars()
            .map(|c| lookup(c.encode_utf8(&mut [0; 4])))
            .collect::<Result<_>>()
            .map(Trace)
    }
}

impl Ord for Trace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Trace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.to_text())
        }
    }
}

impl fmt::Debug for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

impl FromIterator<Symbol> for Trace {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Trace(iter.into_iter().collect())
    }
}
