//! Vectors of traces, vector operations and vector firing sequences.
//!
//! Given component alphabets `(α1,…,αn)`, every symbol σ of their union
//! induces a vector operation whose i-th part is σ when σ ∈ αi and ε
//! otherwise. Products of vector operations under componentwise
//! concatenation form a non-free monoid; see [`crate::commutation`] for its
//! equality and normal forms.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::{union_alphabet, PrefixLanguage};
use crate::symbol::{display_alphabet, Alphabet, Symbol};
use crate::trace::Trace;

/// The component alphabets `(α1,…,αn)`, n ≥ 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlphabetVector(Vec<Alphabet>);

impl AlphabetVector {
    pub fn new(components: Vec<Alphabet>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Dim(
                "an alphabet vector needs at least one component".into(),
            ));
        }
        Ok(AlphabetVector(components))
    }

    pub fn of_languages(parts: &[PrefixLanguage]) -> Result<Self> {
        Self::new(parts.iter().map(|p| p.alphabet().clone()).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Alphabet] {
        &self.0
    }

    pub fn component(&self, i: usize) -> Result<&Alphabet> {
        self.0
            .get(i)
            .ok_or_else(|| Error::Dim(format!("component {i} of a {}-vector", self.dim())))
    }

    pub fn union(&self) -> Alphabet {
        union_alphabet(self.0.iter())
    }

    /// The vector operation of `symbol`, if it lies in some component.
    pub fn op(&self, symbol: &Symbol) -> Option<VectorOp> {
        if !self.0.iter().any(|a| a.contains(symbol)) {
            return None;
        }
        let parts = self
            .0
            .iter()
            .map(|a| {
                if a.contains(symbol) {
                    Trace::unit(symbol.clone())
                } else {
                    Trace::empty()
                }
            })
            .collect();
        Some(VectorOp {
            source: symbol.clone(),
            parts,
        })
    }

    /// Product of the vector operations of the symbols of `word`, folded by
    /// componentwise concatenation.
    pub fn image(&self, word: &Trace) -> Result<VectorString> {
        let mut v = VectorString::epsilon(self.dim());
        for sym in word.symbols() {
            let op = self.op(sym).ok_or_else(|| Error::Symbol(sym.to_string()))?;
            v = v.then(&op);
        }
        Ok(v)
    }

    /// Product of a sequence of vector operations.
    pub fn product(&self, ops: &[VectorOp]) -> Result<VectorString> {
        ops.iter()
            .try_fold(VectorString::epsilon(self.dim()), |acc, op| {
                vconcat(&acc, &op.as_vector())
            })
    }

    /// Splits `v` into a sequence of vector operations whose product is `v`,
    /// or returns `None` when `v` is not such a product.
    ///
    /// The last operation of a product can always be peeled off whenever it
    /// ends every component it touches, so a greedy right-to-left scan is
    /// complete.
    pub fn decompose(&self, v: &VectorString) -> Option<Vec<VectorOp>> {
        if v.dim() != self.dim() {
            return None;
        }
        let mut parts: Vec<Vec<Symbol>> = v.parts().iter().map(|t| t.symbols().to_vec()).collect();
        let mut ops = Vec::new();
        loop {
            if parts.iter().all(Vec::is_empty) {
                ops.reverse();
                return Some(ops);
            }
            let candidate = parts.iter().filter_map(|p| p.last()).find_map(|sym| {
                let op = self.op(sym)?;
                let fits = self
                    .0
                    .iter()
                    .zip(&parts)
                    .all(|(alpha, p)| !alpha.contains(sym) || p.last() == Some(sym));
                fits.then_some(op)
            })?;
            for (alpha, p) in self.0.iter().zip(parts.iter_mut()) {
                if alpha.contains(&candidate.source) {
                    p.pop();
                }
            }
            ops.push(candidate);
        }
    }

    /// Number of vector operations in any factorisation of `v`.
    pub fn op_length(&self, v: &VectorString) -> Option<usize> {
        self.decompose(v).map(|ops| ops.len())
    }
}

impl fmt::Display for AlphabetVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.0.iter().map(display_alphabet).collect();
        write!(f, "({})", comps.join(","))
    }
}

/// The vector operation σ̲ = (σ/α1,…,σ/αn).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorOp {
    source: Symbol,
    parts: Vec<Trace>,
}

impl VectorOp {
    pub fn source(&self) -> &Symbol {
        &self.source
    }

    pub fn parts(&self) -> &[Trace] {
        &self.parts
    }

    pub fn dim(&self) -> usize {
        self.parts.len()
    }

    /// Whether the i-th part is non-ε.
    pub fn touches(&self, i: usize) -> bool {
        self.parts.get(i).is_some_and(|p| !p.is_empty())
    }

    pub fn as_vector(&self) -> VectorString {
        VectorString(self.parts.clone())
    }
}

impl Ord for VectorOp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.source
            .cmp(&other.source)
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for VectorOp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VectorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}̲{}", self.source, self.as_vector())
    }
}

/// All vector operations over `alphabets`, one per symbol of the union.
pub fn vops(alphabets: &AlphabetVector) -> Vec<VectorOp> {
    alphabets
        .union()
        .iter()
        .filter_map(|s| alphabets.op(s))
        .collect()
}

/// A tuple of traces; the unit is ε̲ = (ε,…,ε).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorString(Vec<Trace>);

impl VectorString {
    pub fn new(parts: Vec<Trace>) -> Self {
        VectorString(parts)
    }

    pub fn epsilon(dim: usize) -> Self {
        VectorString(vec![Trace::empty(); dim])
    }

    pub fn parts(&self) -> &[Trace] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn component(&self, i: usize) -> Result<&Trace> {
        self.0
            .get(i)
            .ok_or_else(|| Error::Dim(format!("component {i} of {self}")))
    }

    pub fn is_epsilon(&self) -> bool {
        self.0.iter().all(Trace::is_empty)
    }

    /// Total number of symbols over all components.
    pub fn weight(&self) -> usize {
        self.0.iter().map(Trace::len).sum()
    }

    /// `self · op`; the dimensions must agree.
    pub fn then(&self, op: &VectorOp) -> VectorString {
        debug_assert_eq!(self.dim(), op.dim());
        VectorString(
            self.0
                .iter()
                .zip(&op.parts)
                .map(|(s, p)| s.concat(p))
                .collect(),
        )
    }

    /// Componentwise prefix order.
    pub fn is_prefix_of(&self, other: &VectorString) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(s, t)| s.is_prefix_of(t))
    }

    pub fn to_texts(&self) -> Vec<String> {
        self.0.iter().map(Trace::to_text).collect()
    }
}

/// Componentwise concatenation.
pub fn vconcat(s: &VectorString, t: &VectorString) -> Result<VectorString> {
    if s.dim() != t.dim() {
        return Err(Error::Dim(format!("cannot concatenate {s} and {t}")));
    }
    Ok(VectorString(
        s.0.iter().zip(&t.0).map(|(a, b)| a.concat(b)).collect(),
    ))
}

impl Ord for VectorString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for VectorString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VectorString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Trace::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for VectorString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for VectorString {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_texts().serialize(serializer)
    }
}

/// A prefix-closed set of vector operation products, bounded by the number
/// of operations in each product.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "VectorLanguageRepr", into = "VectorLanguageRepr")]
pub struct VectorLanguage {
    alphabets: AlphabetVector,
    vectors: BTreeSet<VectorString>,
    depth: usize,
}

impl VectorLanguage {
    pub fn new<I>(alphabets: AlphabetVector, vectors: I, depth: usize) -> Result<Self>
    where
        I: IntoIterator<Item = VectorString>,
    {
        let vectors: BTreeSet<VectorString> = vectors.into_iter().collect();
        let n = alphabets.dim();
        if !vectors.contains(&VectorString::epsilon(n)) {
            return Err(Error::Empty("a vector language must contain ε̲".into()));
        }
        for v in &vectors {
            if v.dim() != n {
                return Err(Error::Dim(format!("{v} in a {n}-dimensional language")));
            }
            let ops = alphabets.decompose(v).ok_or_else(|| {
                Error::Invalid(format!("{v} is not a product of {alphabets} operations"))
            })?;
            if ops.len() > depth {
                return Err(Error::Depth {
                    what: format!("vector {v}"),
                    requested: ops.len(),
                    available: depth,
                });
            }
        }
        let lang = VectorLanguage {
            alphabets,
            vectors,
            depth,
        };
        if let Some(v) = lang.first_unclosed() {
            return Err(Error::Invalid(format!(
                "vector language is not prefix-closed at {v}"
            )));
        }
        Ok(lang)
    }

    fn first_unclosed(&self) -> Option<&VectorString> {
        self.vectors.iter().find(|v| {
            self.last_ops(v).any(|op| {
                let parts = v
                    .parts()
                    .iter()
                    .zip(op.parts())
                    .map(|(t, p)| t.prefix(t.len() - p.len()))
                    .collect();
                !self.vectors.contains(&VectorString::new(parts))
            })
        })
    }

    /// Operations that can end a factorisation of `v`.
    fn last_ops<'a>(&'a self, v: &'a VectorString) -> impl Iterator<Item = VectorOp> + 'a {
        let syms: BTreeSet<&Symbol> = v.parts().iter().filter_map(Trace::last).collect();
        syms.into_iter().filter_map(move |sym| {
            let op = self.alphabets.op(sym)?;
            let ends = self
                .alphabets
                .components()
                .iter()
                .zip(v.parts())
                .all(|(alpha, t)| !alpha.contains(sym) || t.last() == Some(sym));
            ends.then_some(op)
        })
    }

    pub fn alphabets(&self) -> &AlphabetVector {
        &self.alphabets
    }

    pub fn vectors(&self) -> &BTreeSet<VectorString> {
        &self.vectors
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn dim(&self) -> usize {
        self.alphabets.dim()
    }

    pub fn contains(&self, v: &VectorString) -> bool {
        self.vectors.contains(v)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True when no member has as many operations as the depth bound.
    pub fn is_complete(&self) -> bool {
        self.vectors
            .iter()
            .all(|v| self.alphabets.op_length(v).is_some_and(|n| n < self.depth))
    }
}

impl fmt::Display for VectorLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vectors.iter().map(VectorString::to_string).collect();
        write!(f, "({{{}}},{})", vs.join(","), self.alphabets)
    }
}

impl fmt::Debug for VectorLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{}", self.depth)
    }
}

/// Vector firing sequences of `parts`: every product of at most `depth`
/// vector operations whose i-th component lies in the i-th part.
pub fn vfs(parts: &[PrefixLanguage], depth: usize) -> Result<VectorLanguage> {
    if parts.is_empty() {
        return Err(Error::Empty(
            "vector firing sequences need at least one part".into(),
        ));
    }
    let parts: Vec<PrefixLanguage> = parts
        .iter()
        .map(|p| p.at_depth(depth))
        .collect::<Result<_>>()?;
    let alphabets = AlphabetVector::of_languages(&parts)?;
    let ops = vops(&alphabets);
    let admits = |v: &VectorString| v.parts().iter().zip(&parts).all(|(t, p)| p.contains(t));

    let eps = VectorString::epsilon(parts.len());
    let mut vectors = BTreeSet::from([eps.clone()]);
    let mut frontier = BTreeSet::from([eps]);
    for _ in 0..depth {
        let next: BTreeSet<VectorString> = frontier
            .iter()
            .flat_map(|v| ops.iter().map(move |op| v.then(op)))
            .filter(|v| admits(v))
            .collect();
        vectors.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(VectorLanguage {
        alphabets,
        vectors,
        depth,
    })
}

/// The i-th component language `{[s̲]i : s̲ ∈ L}` over `αi`.
pub fn component(lang: &VectorLanguage, i: usize) -> Result<PrefixLanguage> {
    let alpha = lang.alphabets.component(i)?.clone();
    let traces: BTreeSet<Trace> = lang.vectors.iter().map(|v| v.parts()[i].clone()).collect();
    PrefixLanguage::new(alpha, traces, lang.depth)
}

#[derive(Serialize, Deserialize)]
struct VectorLanguageRepr {
    alphabets: Vec<Vec<String>>,
    depth: usize,
    vectors: Vec<Vec<String>>,
}

impl From<VectorLanguage> for VectorLanguageRepr {
    fn from(l: VectorLanguage) -> Self {
        VectorLanguageRepr {
            alphabets: l
                .alphabets
                .components()
                .iter()
                .map(|a| a.iter().map(|s| s.name().to_string()).collect())
                .collect(),
            depth: l.depth,
            vectors: l.vectors.iter().map(VectorString::to_texts).collect(),
        }
    }
}

impl TryFrom<VectorLanguageRepr> for VectorLanguage {
    type Error = Error;

    fn try_from(r: VectorLanguageRepr) -> Result<Self> {
        let comps = r
            .alphabets
            .iter()
            .map(|a| {
                a.iter()
                    .map(|n| Symbol::new(n))
                    .collect::<Result<Alphabet>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let alphabets = AlphabetVector::new(comps)?;
        let vectors = r
            .vectors
            .iter()
            .map(|v| {
                if v.len() != alphabets.dim() {
                    return Err(Error::Dim(format!("vector of length {}", v.len())));
                }
                v.iter()
                    .zip(alphabets.components())
                    .map(|(t, a)| Trace::parse(t, a))
                    .collect::<Result<Vec<_>>>()
                    .map(VectorString::new)
            })
            .collect::<Result<Vec<_>>>()?;
        VectorLanguage::new(alphabets, vectors, r.depth)
    }
}
