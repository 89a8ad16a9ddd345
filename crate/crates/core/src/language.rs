//! Prefix-closed trace languages and their parallel composition.
//!
//! A [`PrefixLanguage`] is a finite, depth-bounded view of a possibly infinite
//! behaviour: it holds every trace of length at most `depth`. When no member
//! reaches the bound the language is known to be finite, and it can be viewed
//! at any larger depth without losing soundness (see
//! [`PrefixLanguage::is_complete`]).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbol::{display_alphabet, Alphabet, Symbol};
use crate::trace::Trace;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LanguageRepr", into = "LanguageRepr")]
pub struct PrefixLanguage {
    alphabet: Alphabet,
    traces: BTreeSet<Trace>,
    depth: usize,
}

impl PrefixLanguage {
    /// Builds a language from an already prefix-closed set of traces.
    pub fn new<I>(alphabet: Alphabet, traces: I, depth: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Trace>,
    {
        let traces: BTreeSet<Trace> = traces.into_iter().collect();
        if !traces.contains(&Trace::empty()) {
            return Err(Error::Empty(
                "a prefix-closed language must contain ε".into(),
            ));
        }
        if !is_prefix_closed(&traces) {
            return Err(Error::Invalid("trace set is not prefix-closed".into()));
        }
        if let Some(bad) = traces.iter().find(|t| !t.uses_only(&alphabet)) {
            return Err(Error::Invalid(format!(
                "trace {} leaves the alphabet {}",
                bad,
                display_alphabet(&alphabet)
            )));
        }
        if let Some(long) = traces.iter().find(|t| t.len() > depth) {
            return Err(Error::Depth {
                what: format!("trace {long}"),
                requested: long.len(),
                available: depth,
            });
        }
        Ok(PrefixLanguage {
            alphabet,
            traces,
            depth,
        })
    }

    /// Prefix-closes `traces` first; the result always contains ε.
    pub fn from_traces<I>(alphabet: Alphabet, traces: I, depth: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Trace>,
    {
        Self::new(alphabet, prefix_close(traces), depth)
    }

    /// The minimal language `{ε}` over `alphabet`.
    pub fn minimal(alphabet: Alphabet, depth: usize) -> Self {
        PrefixLanguage {
            alphabet,
            traces: BTreeSet::from([Trace::empty()]),
            depth,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn traces(&self) -> &BTreeSet<Trace> {
        &self.traces
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn contains(&self, trace: &Trace) -> bool {
        self.traces.contains(trace)
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_len(&self) -> usize {
        self.traces.iter().next_back().map_or(0, Trace::len)
    }

    /// True when no member reaches the depth bound, so the language is
    /// exactly this finite set.
    pub fn is_complete(&self) -> bool {
        self.max_len() < self.depth
    }

    /// The traces of length at most `depth`.
    pub fn truncate(&self, depth: usize) -> PrefixLanguage {
        PrefixLanguage {
            alphabet: self.alphabet.clone(),
            traces: self
                .traces
                .iter()
                .filter(|t| t.len() <= depth)
                .cloned()
                .collect(),
            depth: depth.min(self.depth),
        }
    }

    /// The language viewed at bound `depth`: a truncation when `depth` is at
    /// most the known depth, the same set when the language is complete, and
    /// an error otherwise.
    pub fn at_depth(&self, depth: usize) -> Result<PrefixLanguage> {
        if depth <= self.depth {
            Ok(self.truncate(depth))
        } else if self.is_complete() {
            Ok(PrefixLanguage {
                depth,
                ..self.clone()
            })
        } else {
            Err(Error::Depth {
                what: format!("language {self}"),
                requested: depth,
                available: self.depth,
            })
        }
    }

    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<PrefixLanguage> {
        Self::new(alphabet, self.traces.iter().cloned(), self.depth)
    }
}

impl fmt::Display for PrefixLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let traces: Vec<String> = self.traces.iter().map(Trace::to_string).collect();
        write!(
            f,
            "({},{{{}}})",
            display_alphabet(&self.alphabet),
            traces.join(",")
        )
    }
}

impl fmt::Debug for PrefixLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{}", self.depth)
    }
}

/// True iff every prefix of every member is a member.
pub fn is_prefix_closed(traces: &BTreeSet<Trace>) -> bool {
    traces
        .iter()
        .all(|t| t.is_empty() || traces.contains(&t.prefix(t.len() - 1)))
}

/// The smallest prefix-closed superset of `traces`; always contains ε.
pub fn prefix_close<I>(traces: I) -> BTreeSet<Trace>
where
    I: IntoIterator<Item = Trace>,
{
    let mut closed = BTreeSet::from([Trace::empty()]);
    for t in traces {
        closed.extend(t.prefixes());
    }
    closed
}

/// Every string over `alpha` of length at most `depth`, in canonical order.
pub fn words(alpha: &Alphabet, depth: usize) -> Vec<Trace> {
    let mut out = vec![Trace::empty()];
    let mut layer = vec![Trace::empty()];
    for _ in 0..depth {
        layer = layer
            .iter()
            .flat_map(|t| alpha.iter().map(move |s| t.extended(s)))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Union of the part alphabets.
pub fn union_alphabet<'a, I>(alphabets: I) -> Alphabet
where
    I: IntoIterator<Item = &'a Alphabet>,
{
    alphabets.into_iter().flatten().cloned().collect()
}

/// n-ary parallel composition, exact up to `depth`.
///
/// A string over the union alphabet belongs to the result iff its projection
/// onto each part alphabet is a member of that part. The result is
/// prefix-closed, so it is grown one symbol at a time from ε; every candidate
/// extension is tested against all parts directly.
pub fn compose_parallel(parts: &[PrefixLanguage], depth: usize) -> Result<PrefixLanguage> {
    if parts.is_empty() {
        return Err(Error::Empty(
            "parallel composition needs at least one part".into(),
        ));
    }
    let parts: Vec<PrefixLanguage> = parts
        .iter()
        .map(|p| p.at_depth(depth))
        .collect::<Result<_>>()?;
    let alphabet = union_alphabet(parts.iter().map(PrefixLanguage::alphabet));
    let admits = |s: &Trace| parts.iter().all(|p| p.contains(&s.project(p.alphabet())));

    let mut traces = BTreeSet::from([Trace::empty()]);
    let mut frontier = vec![Trace::empty()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for s in &frontier {
            for sym in &alphabet {
                let ext = s.extended(sym);
                if admits(&ext) {
                    next.push(ext);
                }
            }
        }
        traces.extend(next.iter().cloned());
        frontier = next;
    }
    PrefixLanguage::new(alphabet, traces, depth)
}

/// Member test for the composition without building it.
pub fn composition_admits(parts: &[PrefixLanguage], s: &Trace) -> bool {
    parts.iter().all(|p| p.contains(&s.project(p.alphabet())))
}

#[derive(Serialize, Deserialize)]
struct LanguageRepr {
    alphabet: Vec<String>,
    depth: usize,
    traces: Vec<String>,
}

impl From<PrefixLanguage> for LanguageRepr {
    fn from(l: PrefixLanguage) -> Self {
        LanguageRepr {
            alphabet: l.alphabet.iter().map(|s| s.name().to_string()).collect(),
            depth: l.depth,
            traces: l.traces.iter().map(Trace::to_text).collect(),
        }
    }
}

impl TryFrom<LanguageRepr> for PrefixLanguage {
    type Error = Error;

    fn try_from(r: LanguageRepr) -> Result<Self> {
        let alphabet: Alphabet = r
            .alphabet
            .iter()
            .map(|n| Symbol::new(n))
            .collect::<Result<_>>()?;
        let traces = r
            .traces
            .iter()
            .map(|t| Trace::parse(t, &alphabet))
            .collect::<Result<Vec<_>>>()?;
        PrefixLanguage::new(alphabet, traces, r.depth)
    }
}
