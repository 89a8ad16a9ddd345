use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An event name drawn from the global alphabet.
///
/// Symbols are compared by name, which also fixes the total order used for
/// canonical output. Names are ASCII identifiers (letters, digits, `_`). The
/// empty trace `ε` is not a symbol, and names of the form `x0`, `x1`, ... are
/// reserved for term variables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Result<Self> {
        let valid = !name.is_empty()
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            && !is_variable_name(name);
        if valid {
            Ok(Symbol(Arc::from(name)))
        } else {
            Err(Error::Symbol(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_variable_name(name: &str) -> bool {
    name.len() > 1 && name.starts_with('x') && name[1..].chars().all(|c| c.is_ascii_digit())
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite set of symbols, iterated in symbol order.
pub type Alphabet = BTreeSet<Symbol>;

/// Builds an alphabet from names, failing on the first invalid one.
pub fn alphabet<I, S>(names: I) -> Result<Alphabet>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    names.into_iter().map(|n| Symbol::new(n.as_ref())).collect()
}

/// Renders an alphabet as `{a,b,c}`.
pub fn display_alphabet(alpha: &Alphabet) -> String {
    let names: Vec<&str> = alpha.iter().map(Symbol::name).collect();
    format!("{{{}}}", names.join(","))
}
