//! Morphisms: simulations between languages, derivors and derived
//! homomorphisms between algebras, and the functors relating them.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{
    hom_violation, unique_hom_from_fg, Elem, HomViolation, PartialAlgebra, Signature,
};
use crate::commutation::independent;
use crate::correspondence::{
    alpha_g, f_of_language, f_of_vector_language, g_of_algebra, CheckReport,
};
use crate::error::{Error, Result};
use crate::language::{words, PrefixLanguage};
use crate::symbol::{Alphabet, Symbol};
use crate::term::{Term, EPSILON};
use crate::trace::Trace;
use crate::vector::{AlphabetVector, VectorLanguage, VectorOp, VectorString};

/// A symbol-to-trace map from the alphabet of `source` into traces over the
/// alphabet of `target`, extended to traces by concatenation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Simulation {
    source: PrefixLanguage,
    target: PrefixLanguage,
    map: BTreeMap<Symbol, Trace>,
    strong: bool,
    depth: usize,
}

impl Simulation {
    /// A weak simulation candidate, to be checked at the depth of `source`.
    pub fn new(
        source: PrefixLanguage,
        target: PrefixLanguage,
        map: BTreeMap<Symbol, Trace>,
    ) -> Result<Self> {
        if let Some(s) = source.alphabet().iter().find(|s| !map.contains_key(*s)) {
            return Err(Error::Map(format!("no image for {s}")));
        }
        if let Some(s) = map.keys().find(|s| !source.alphabet().contains(*s)) {
            return Err(Error::Map(format!("{s} is outside the source alphabet")));
        }
        if let Some((s, t)) = map.iter().find(|(_, t)| !t.uses_only(target.alphabet())) {
            return Err(Error::Map(format!(
                "image {t:?} of {s} leaves the target alphabet"
            )));
        }
        let depth = source.depth();
        Ok(Simulation {
            source,
            target,
            map,
            strong: false,
            depth,
        })
    }

    pub fn identity(lang: &PrefixLanguage) -> Self {
        let map = lang
            .alphabet()
            .iter()
            .map(|s| (s.clone(), Trace::unit(s.clone())))
            .collect();
        Simulation {
            source: lang.clone(),
            target: lang.clone(),
            map,
            strong: true,
            depth: lang.depth(),
        }
    }

    /// Marks the map as claimed strong.
    pub fn strong(mut self, strong: bool) -> Self {
        self.strong = strong;
        self
    }

    /// Sets the depth at which the claim is checked.
    pub fn at_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn source(&self) -> &PrefixLanguage {
        &self.source
    }

    pub fn target(&self) -> &PrefixLanguage {
        &self.target
    }

    pub fn map(&self) -> &BTreeMap<Symbol, Trace> {
        &self.map
    }

    pub fn is_strong(&self) -> bool {
        self.strong
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn image(&self, s: &Trace) -> Result<Trace> {
        s.symbols().iter().try_fold(Trace::empty(), |acc, sym| {
            self.map
                .get(sym)
                .map(|t| acc.concat(t))
                .ok_or_else(|| Error::Map(format!("{sym} is outside the source alphabet")))
        })
    }

    pub fn max_image_len(&self) -> usize {
        self.map.values().map(Trace::len).max().unwrap_or(0)
    }

    /// `g ∘ self`; the target of `self` must be the source of `g`.
    pub fn then(&self, g: &Simulation) -> Result<Simulation> {
        if self.target.alphabet() != g.source.alphabet() {
            return Err(Error::Map("simulations are not composable".into()));
        }
        let map = self
            .map
            .iter()
            .map(|(s, t)| Ok((s.clone(), g.image(t)?)))
            .collect::<Result<_>>()?;
        Ok(Simulation {
            source: self.source.clone(),
            target: g.target.clone(),
            map,
            strong: self.strong && g.strong,
            depth: self.depth.min(g.depth),
        })
    }

    fn target_contains(&self, t: &Trace) -> Result<bool> {
        if t.len() > self.target.depth() && !self.target.is_complete() {
            return Err(Error::Depth {
                what: "simulation target".into(),
                requested: t.len(),
                available: self.target.depth(),
            });
        }
        Ok(self.target.contains(t))
    }

    /// The first trace violating the simulation property, or its converse
    /// when the map is claimed strong.
    pub fn violation(&self) -> Result<Option<Value>> {
        for s in self
            .source
            .traces()
            .iter()
            .filter(|s| s.len() <= self.depth)
        {
            let image = self.image(s)?;
            if !self.target_contains(&image)? {
                return Ok(Some(
                    json!({ "trace": s.to_text(), "image": image.to_text(), "property": "weak" }),
                ));
            }
        }
        if self.strong {
            let source = self.source.at_depth(self.depth)?;
            for w in words(self.source.alphabet(), self.depth) {
                let image = self.image(&w)?;
                if self.target_contains(&image)? && !source.contains(&w) {
                    return Ok(Some(
                        json!({ "trace": w.to_text(), "image": image.to_text(), "property": "strong" }),
                    ));
                }
            }
        }
        Ok(None)
    }

    pub fn to_json(&self) -> Value {
        let map: BTreeMap<&str, String> = self
            .map
            .iter()
            .map(|(s, t)| (s.name(), t.to_text()))
            .collect();
        json!({ "map": map, "strong": self.strong, "depth": self.depth })
    }
}

/// Whether `f` has the simulation property at its depth, and the strong one
/// when claimed.
pub fn check_simulation(f: &Simulation) -> Result<bool> {
    Ok(f.violation()?.is_none())
}

/// A map from the vector operations of `source` to words of vector
/// operations of `target` that respects every commutation relation.
#[derive(Clone, Debug)]
pub struct VectorSimulation {
    source: VectorLanguage,
    target: VectorLanguage,
    map: BTreeMap<Symbol, Vec<VectorOp>>,
    strong: bool,
    depth: usize,
}

impl VectorSimulation {
    /// `map` sends each source symbol to a word of target symbols.
    pub fn new(
        source: VectorLanguage,
        target: VectorLanguage,
        map: BTreeMap<Symbol, Trace>,
    ) -> Result<Self> {
        let src = source.alphabets().union();
        if let Some(s) = src.iter().find(|s| !map.contains_key(*s)) {
            return Err(Error::Map(format!("no image for {s}")));
        }
        if let Some(s) = map.keys().find(|s| !src.contains(*s)) {
            return Err(Error::Map(format!("{s} is outside the source alphabets")));
        }
        let ops = map
            .into_iter()
            .map(|(s, word)| {
                let ops = word
                    .symbols()
                    .iter()
                    .map(|t| {
                        target.alphabets().op(t).ok_or_else(|| {
                            Error::Map(format!("{t} is outside the target alphabets"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((s, ops))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        let depth = source.depth();
        let sim = VectorSimulation {
            source,
            target,
            map: ops,
            strong: false,
            depth,
        };
        sim.check_concurrency()?;
        Ok(sim)
    }

    pub fn identity(lang: &VectorLanguage) -> Self {
        let map = crate::vector::vops(lang.alphabets())
            .into_iter()
            .map(|o| (o.source().clone(), vec![o]))
            .collect();
        VectorSimulation {
            source: lang.clone(),
            target: lang.clone(),
            map,
            strong: true,
            depth: lang.depth(),
        }
    }

    fn check_concurrency(&self) -> Result<()> {
        let ops = crate::vector::vops(self.source.alphabets());
        let dim = self.target.dim();
        for (a, b) in ops.iter().tuple_combinations() {
            if independent(a, b)? {
                let (fa, fb) = (&self.map[a.source()], &self.map[b.source()]);
                let ab = fa
                    .iter()
                    .chain(fb)
                    .fold(VectorString::epsilon(dim), |v, o| v.then(o));
                let ba = fb
                    .iter()
                    .chain(fa)
                    .fold(VectorString::epsilon(dim), |v, o| v.then(o));
                if ab != ba {
                    return Err(Error::Concurrency(format!(
                        "{} and {} commute but their images do not",
                        a.source(),
                        b.source()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn strong(mut self, strong: bool) -> Self {
        self.strong = strong;
        self
    }

    pub fn at_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn source(&self) -> &VectorLanguage {
        &self.source
    }

    pub fn target(&self) -> &VectorLanguage {
        &self.target
    }

    /// The image of each source symbol as a word of target symbols.
    pub fn word_map(&self) -> BTreeMap<Symbol, Trace> {
        self.map
            .iter()
            .map(|(s, ops)| (s.clone(), ops.iter().map(|o| o.source().clone()).collect()))
            .collect()
    }

    pub fn max_image_len(&self) -> usize {
        self.map.values().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_strong(&self) -> bool {
        self.strong
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `g ∘ self`; the target of `self` must be the source of `g`.
    pub fn then(&self, g: &VectorSimulation) -> Result<VectorSimulation> {
        if self.target.alphabets() != g.source.alphabets() {
            return Err(Error::Map("vector simulations are not composable".into()));
        }
        let map = self
            .map
            .iter()
            .map(|(s, ops)| {
                let word: Vec<VectorOp> = ops
                    .iter()
                    .flat_map(|o| g.map[o.source()].iter().cloned())
                    .collect();
                (s.clone(), word)
            })
            .collect();
        Ok(VectorSimulation {
            source: self.source.clone(),
            target: g.target.clone(),
            map,
            strong: self.strong && g.strong,
            depth: self.depth.min(g.depth),
        })
    }

    /// Image of a word of source symbols.
    pub fn image_word(&self, w: &Trace) -> Result<VectorString> {
        let dim = self.target.dim();
        w.symbols()
            .iter()
            .try_fold(VectorString::epsilon(dim), |v, s| {
                let ops = self
                    .map
                    .get(s)
                    .ok_or_else(|| Error::Map(format!("{s} has no image")))?;
                Ok(ops.iter().fold(v, |acc, o| acc.then(o)))
            })
    }

    /// Image of a member of the source monoid; well defined because the map
    /// preserves concurrency.
    pub fn image(&self, v: &VectorString) -> Result<VectorString> {
        let ops = self
            .source
            .alphabets()
            .decompose(v)
            .ok_or_else(|| Error::Map(format!("{v} is not a product of source operations")))?;
        self.image_word(&ops.iter().map(|o| o.source().clone()).collect())
    }

    fn target_contains(&self, v: &VectorString) -> Result<bool> {
        let len = self.target.alphabets().op_length(v).unwrap_or(usize::MAX);
        if len > self.target.depth() && !self.target.is_complete() {
            return Err(Error::Depth {
                what: "simulation target".into(),
                requested: len,
                available: self.target.depth(),
            });
        }
        Ok(self.target.contains(v))
    }

    pub fn violation(&self) -> Result<Option<Value>> {
        for v in self.source.vectors() {
            if self
                .source
                .alphabets()
                .op_length(v)
                .is_some_and(|n| n > self.depth)
            {
                continue;
            }
            let image = self.image(v)?;
            if !self.target_contains(&image)? {
                return Ok(Some(
                    json!({ "vector": v.to_texts(), "image": image.to_texts(), "property": "weak" }),
                ));
            }
        }
        if self.strong {
            let alphabets = self.source.alphabets();
            for w in words(&alphabets.union(), self.depth) {
                let image = self.image_word(&w)?;
                let v = alphabets.image(&w)?;
                if self.target_contains(&image)? && !self.source.contains(&v) {
                    return Ok(Some(
                        json!({ "vector": v.to_texts(), "image": image.to_texts(), "property": "strong" }),
                    ));
                }
            }
        }
        Ok(None)
    }
}

/// Whether the vector map has the simulation property at its depth.
pub fn check_vector_simulation(f: &VectorSimulation) -> Result<bool> {
    Ok(f.violation()?.is_none())
}

/// For every operator, a term in as many variables as its arity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivor {
    signature: Signature,
    map: BTreeMap<String, Term>,
}

impl Derivor {
    pub fn new(signature: Signature, map: BTreeMap<String, Term>) -> Result<Self> {
        for (op, arity) in signature.ops() {
            let t = map
                .get(op)
                .ok_or_else(|| Error::Map(format!("derivor has no term for `{op}`")))?;
            if t.var_bound() > arity {
                return Err(Error::Var(format!("`{op}` of arity {arity} maps to {t}")));
            }
            check_term(&signature, t)?;
        }
        if let Some(op) = map.keys().find(|op| signature.arity(op).is_none()) {
            return Err(Error::Map(format!(
                "derivor maps undeclared operator `{op}`"
            )));
        }
        Ok(Derivor { signature, map })
    }

    /// `σ ↦ (x0,…,x(n−1))σ`.
    pub fn identity(signature: &Signature) -> Self {
        let map = signature
            .ops()
            .map(|(op, n)| {
                (
                    op.to_string(),
                    Term::apply(op, (0..n).map(Term::var).collect()),
                )
            })
            .collect();
        Derivor {
            signature: signature.clone(),
            map,
        }
    }

    /// The canonical identity of `a`: `(x0)σ` on `αG(a)`, `x0` elsewhere.
    pub fn canonical_identity(a: &PartialAlgebra) -> Result<Self> {
        let alpha = alpha_g(a)?;
        let sigma = a.signature().language_symbols()?;
        let words = sigma
            .into_iter()
            .map(|s| {
                let w = if alpha.contains(&s) {
                    Trace::unit(s.clone())
                } else {
                    Trace::empty()
                };
                (s, w)
            })
            .collect();
        Ok(Derivor::spelling(a.signature(), &words))
    }

    /// The unary derivor `σ ↦ (…(x0)σ1…)σm` for `words[σ] = σ1…σm`,
    /// `σ ↦ x0` for symbols without a word, and `ε ↦ ε`.
    pub fn spelling(signature: &Signature, words: &BTreeMap<Symbol, Trace>) -> Self {
        let map = signature
            .ops()
            .map(|(op, _)| {
                let term = if op == EPSILON {
                    Term::epsilon()
                } else {
                    let w = Symbol::new(op)
                        .ok()
                        .and_then(|s| words.get(&s).cloned())
                        .unwrap_or_default();
                    Term::spelling(Term::var(0), &w)
                };
                (op.to_string(), term)
            })
            .collect();
        Derivor {
            signature: signature.clone(),
            map,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn term(&self, op: &str) -> Option<&Term> {
        self.map.get(op)
    }

    pub fn terms(&self) -> &BTreeMap<String, Term> {
        &self.map
    }

    /// The derived term: `d((t1,…,tn)σ) = d(σ)[d(t1),…,d(tn)]`.
    pub fn apply(&self, t: &Term) -> Result<Term> {
        match t {
            Term::Var(_) => Ok(t.clone()),
            Term::App(op, args) => {
                let d = self
                    .map
                    .get(op)
                    .ok_or_else(|| Error::Sig(format!("unknown operator `{op}`")))?;
                let args = args
                    .iter()
                    .map(|a| self.apply(a))
                    .collect::<Result<Vec<_>>>()?;
                d.substitute(&args)
            }
        }
    }

    /// `outer · inner`: `σ ↦ outer(inner(σ))`.
    pub fn compose(outer: &Derivor, inner: &Derivor) -> Result<Derivor> {
        if outer.signature != inner.signature {
            return Err(Error::Sig("derivors over different signatures".into()));
        }
        let map = inner
            .map
            .iter()
            .map(|(op, t)| Ok((op.clone(), outer.apply(t)?)))
            .collect::<Result<_>>()?;
        Ok(Derivor {
            signature: inner.signature.clone(),
            map,
        })
    }

    /// Checks the canonical restrictions for a derived homomorphism from `a`
    /// to `b`: `ε ↦ ε`, unary operators go to terms with a variable, and
    /// each symbol maps into `αG(b)` terms when it lies in `αG(a)` and to
    /// `x0` otherwise.
    pub fn check_canonical(&self, a: &PartialAlgebra, b: &PartialAlgebra) -> Result<()> {
        if self.map.get(EPSILON) != Some(&Term::epsilon()) {
            return Err(Error::Canon("ε must map to ε".into()));
        }
        let (alpha_a, alpha_b) = (alpha_g(a)?, alpha_g(b)?);
        for (op, arity) in self.signature.ops() {
            if arity == 0 {
                continue;
            }
            let t = &self.map[op];
            if t.is_ground() {
                return Err(Error::Canon(format!("`{op}` maps to the ground term {t}")));
            }
            let inside = Symbol::new(op).is_ok_and(|s| alpha_a.contains(&s));
            if inside {
                let mut ops = BTreeSet::new();
                collect_ops(t, &mut ops);
                if let Some(o) = ops
                    .iter()
                    .find(|o| !Symbol::new(o).is_ok_and(|s| alpha_b.contains(&s)))
                {
                    return Err(Error::Canon(format!(
                        "`{op}` maps to {t}, which uses `{o}` outside the target alphabet"
                    )));
                }
            } else if *t != Term::var(0) {
                return Err(Error::Canon(format!(
                    "`{op}` is outside the source alphabet but maps to {t}"
                )));
            }
        }
        Ok(())
    }

    /// For each unary operator of `alpha`, the symbols along the spine of
    /// its term, which must start at `x0`.
    pub fn spine_words(&self, alpha: &Alphabet) -> Result<BTreeMap<Symbol, Trace>> {
        alpha
            .iter()
            .map(|s| {
                let t = self
                    .map
                    .get(s.name())
                    .ok_or_else(|| Error::Map(format!("no term for {s}")))?;
                match t.spine() {
                    Some((Term::Var(0), ops)) => {
                        let w = ops
                            .iter()
                            .map(|o| Symbol::new(o))
                            .collect::<Result<Trace>>()?;
                        Ok((s.clone(), w))
                    }
                    _ => Err(Error::Canon(format!("{t} is not a spine over x0"))),
                }
            })
            .collect()
    }

    /// Agreement on `ε` and on the symbols of `alpha`.
    pub fn agrees_on(&self, other: &Derivor, alpha: &Alphabet) -> bool {
        self.map.get(EPSILON) == other.map.get(EPSILON)
            && alpha
                .iter()
                .all(|s| self.map.get(s.name()) == other.map.get(s.name()))
    }

    /// Reads `{op: term}` over the language signature of its keys.
    pub fn from_text_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let signature = Signature::new(map.keys().map(|k| (k.clone(), usize::from(k != EPSILON))));
        let terms = map
            .iter()
            .map(|(k, t)| Ok((k.clone(), Term::parse(t)?)))
            .collect::<Result<_>>()?;
        Derivor::new(signature, terms)
    }
}

fn check_term(signature: &Signature, t: &Term) -> Result<()> {
    if let Term::App(op, args) = t {
        match signature.arity(op) {
            Some(n) if n == args.len() => args.iter().try_for_each(|a| check_term(signature, a)),
            _ => Err(Error::Sig(format!(
                "`{op}` applied to {} arguments",
                args.len()
            ))),
        }
    } else {
        Ok(())
    }
}

fn collect_ops(t: &Term, out: &mut BTreeSet<String>) {
    if let Term::App(op, args) = t {
        out.insert(op.clone());
        args.iter().for_each(|a| collect_ops(a, out));
    }
}

impl Serialize for Derivor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<&str, String> = self
            .map
            .iter()
            .map(|(k, t)| (k.as_str(), t.to_string()))
            .collect();
        #[derive(Serialize)]
        struct Repr<'a> {
            map: BTreeMap<&'a str, String>,
        }
        Repr { map }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Derivor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            map: BTreeMap<String, String>,
        }
        let r = Repr::deserialize(d)?;
        Derivor::from_text_map(&r.map).map_err(serde::de::Error::custom)
    }
}

/// `dB`: the carrier of `b` with each operator read as its derived term.
pub fn derived_algebra(d: &Derivor, b: &PartialAlgebra) -> Result<PartialAlgebra> {
    if d.signature() != b.signature() {
        return Err(Error::Sig(
            "derivor and algebra have different signatures".into(),
        ));
    }
    let mut tables = BTreeMap::new();
    for (op, arity) in d.signature().ops() {
        let term = &d.map[op];
        let mut table = BTreeMap::new();
        for args in (0..arity).map(|_| b.elements()).multi_cartesian_product() {
            if let Some(r) = b.eval_with(term, &args)? {
                table.insert(args, r);
            }
        }
        if arity == 0 {
            if let Some(r) = b.eval(term)? {
                table.insert(vec![], r);
            }
        }
        tables.insert(op.to_string(), table);
    }
    PartialAlgebra::new(b.signature().clone(), b.names().to_vec(), tables)
}

/// A derivor with a carrier map that is a homomorphism into the derived
/// algebra of the target.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivedHom {
    pub derivor: Derivor,
    pub phi: Vec<Elem>,
    pub strong: bool,
}

impl DerivedHom {
    /// `1_A = (Id_A, id)`.
    pub fn identity(a: &PartialAlgebra) -> Result<Self> {
        Ok(DerivedHom {
            derivor: Derivor::canonical_identity(a)?,
            phi: a.elements().collect(),
            strong: true,
        })
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &DerivedHom) -> Result<DerivedHom> {
        let phi = self
            .phi
            .iter()
            .map(|&e| {
                next.phi
                    .get(e)
                    .copied()
                    .ok_or_else(|| Error::Map("maps are not composable".into()))
            })
            .collect::<Result<_>>()?;
        Ok(DerivedHom {
            derivor: Derivor::compose(&next.derivor, &self.derivor)?,
            phi,
            strong: self.strong && next.strong,
        })
    }
}

/// The first failure of `h` as a (strong) homomorphism from `a` into the
/// derived algebra of `b`.
pub fn derived_hom_violation(
    h: &DerivedHom,
    a: &PartialAlgebra,
    b: &PartialAlgebra,
) -> Result<Option<HomViolation>> {
    hom_violation(&h.phi, a, &derived_algebra(&h.derivor, b)?, h.strong, None)
}

pub fn check_derived_hom(h: &DerivedHom, a: &PartialAlgebra, b: &PartialAlgebra) -> Result<bool> {
    Ok(derived_hom_violation(h, a, b)?.is_none())
}

/// `𝔽(f)`: the spelling derivor of `f` with its unique carrier map, from
/// `F(source)` to `F(target)` over `sigma`.
pub fn functor_f(f: &Simulation, sigma: &Alphabet) -> Result<DerivedHom> {
    let a = f_of_language(f.source(), sigma)?;
    let b = f_of_language(f.target(), sigma)?;
    let derivor = Derivor::spelling(a.signature(), f.map());
    let phi = unique_hom_from_fg(&a, &derived_algebra(&derivor, &b)?)?
        .ok_or_else(|| Error::Map("the map is not a simulation".into()))?;
    Ok(DerivedHom {
        derivor,
        phi,
        strong: f.is_strong(),
    })
}

/// `𝔽′(f)`: as [`functor_f`] for a vector simulation.
pub fn functor_f_prime(f: &VectorSimulation, sigma: &Alphabet) -> Result<DerivedHom> {
    let a = f_of_vector_language(f.source(), sigma)?;
    let b = f_of_vector_language(f.target(), sigma)?;
    let derivor = Derivor::spelling(a.signature(), &f.word_map());
    let phi = unique_hom_from_fg(&a, &derived_algebra(&derivor, &b)?)?
        .ok_or_else(|| Error::Map("the map is not a simulation".into()))?;
    Ok(DerivedHom {
        derivor,
        phi,
        strong: f.strong,
    })
}

/// `𝔾(h)`: reads each symbol of `αG(a)` off the spine of its derived term.
/// The source is `G(a)` at `depth` and the target is `G(b)` deep enough to
/// hold every image.
pub fn functor_g(
    h: &DerivedHom,
    a: &PartialAlgebra,
    b: &PartialAlgebra,
    depth: usize,
) -> Result<Simulation> {
    h.derivor.check_canonical(a, b)?;
    let source = g_of_algebra(a, depth)?;
    let map = h.derivor.spine_words(source.alphabet())?;
    let stretch = map.values().map(Trace::len).max().unwrap_or(0).max(1);
    let target = g_of_algebra(b, depth * stretch)?;
    Ok(Simulation::new(source, target, map)?
        .strong(h.strong)
        .at_depth(depth))
}

/// Checks that `(Id_B, g_B) ∘ 𝔽𝔾(h)` and `h ∘ (Id_A, g_A)` agree on the
/// carrier of `𝔽𝔾(A)`.
pub fn check_naturality(
    h: &DerivedHom,
    a: &PartialAlgebra,
    b: &PartialAlgebra,
    depth: usize,
) -> Result<CheckReport> {
    const NAME: &str = "NATURALITY";
    let describe = format!("{} elements to {} elements", a.len(), b.len());
    let sigma = a.signature().language_symbols()?;
    let f = functor_g(h, a, b, depth)?;
    let fgh = functor_f(&f, &sigma)?;
    let fga = f_of_language(f.source(), &sigma)?;
    let fgb = f_of_language(f.target(), &sigma)?;
    let (Some(g_a), Some(g_b)) = (unique_hom_from_fg(&fga, a)?, unique_hom_from_fg(&fgb, b)?)
    else {
        return Ok(CheckReport::fail(
            NAME,
            describe,
            depth,
            json!({ "evaluation": "missing" }),
        ));
    };
    let counit_a = DerivedHom {
        derivor: Derivor::canonical_identity(a)?,
        phi: g_a,
        strong: true,
    };
    let counit_b = DerivedHom {
        derivor: Derivor::canonical_identity(b)?,
        phi: g_b,
        strong: true,
    };
    let left = fgh.then(&counit_b)?;
    let right = counit_a.then(h)?;
    for s in fga.elements() {
        if left.phi[s] != right.phi[s] {
            return Ok(CheckReport::fail(
                NAME,
                describe,
                depth,
                json!({
                    "element": fga.name(s),
                    "via_fg": b.name(left.phi[s]),
                    "via_h": b.name(right.phi[s]),
                }),
            ));
        }
    }
    if !left
        .derivor
        .agrees_on(&right.derivor, f.source().alphabet())
    {
        return Ok(CheckReport::fail(
            NAME,
            describe,
            depth,
            json!({ "derivors": "differ" }),
        ));
    }
    Ok(CheckReport::pass(NAME, describe, depth))
}

/// Result of an adjunction check.
#[derive(Clone, Debug)]
pub struct Adjunction {
    pub report: CheckReport,
    /// The constructed `(d, φ): F(L) → A`.
    pub morphism: Option<DerivedHom>,
    /// Canonical derivors tried by the uniqueness search.
    pub searched: usize,
    /// How many of them admit a carrier map.
    pub derived_homs: usize,
    /// How many of those make the unit triangle commute.
    pub matching: usize,
}

/// Builds the unique `(d, φ): F(L) → A` with `𝔾(d, φ) = f`, checks both
/// triangles, and counts the canonical derivors with spines of length at
/// most `bound` that also make the unit triangle commute.
pub fn check_adjunction(
    lang: &PrefixLanguage,
    a: &PartialAlgebra,
    f: &BTreeMap<Symbol, Trace>,
    depth: usize,
    bound: usize,
) -> Result<Adjunction> {
    const NAME: &str = "ADJUNCTION";
    let describe = lang.to_string();
    let sigma = a.signature().language_symbols()?;
    let lang = lang.at_depth(depth)?;
    let stretch = f.values().map(Trace::len).max().unwrap_or(0).max(1);
    let ga = g_of_algebra(a, depth * stretch)?;
    let sim = Simulation::new(lang.clone(), ga, f.clone())?;
    if let Some(v) = sim.violation()? {
        return Err(Error::Map(format!("not a simulation into G(A): {v}")));
    }
    let fl = f_of_language(&lang, &sigma)?;
    let fail = |cex: Value, morphism: Option<DerivedHom>| Adjunction {
        report: CheckReport::fail(NAME, describe.clone(), depth, cex),
        morphism,
        searched: 0,
        derived_homs: 0,
        matching: 0,
    };

    let derivor = Derivor::spelling(a.signature(), f);
    let Some(phi) = unique_hom_from_fg(&fl, &derived_algebra(&derivor, a)?)? else {
        return Ok(fail(json!({ "construction": "no carrier map" }), None));
    };
    let h = DerivedHom {
        derivor,
        phi,
        strong: false,
    };
    if let Err(e) = h.derivor.check_canonical(&fl, a) {
        return Ok(fail(json!({ "canonical": e.to_string() }), Some(h)));
    }
    if let Some(v) = derived_hom_violation(&h, &fl, a)? {
        return Ok(fail(json!({ "derived_hom": v }), Some(h)));
    }

    // Unit triangle: 𝔾(d, φ) after 1_L is f.
    let read = functor_g(&h, &fl, a, depth)?;
    if read.map() != f {
        return Ok(fail(json!({ "unit_triangle": read.to_json() }), Some(h)));
    }

    // Counit triangle: (Id_A, g_A) after 𝔽(f) is (d, φ).
    let ff = functor_f(&sim, &sigma)?;
    let fga = f_of_language(sim.target(), &sigma)?;
    let Some(g_a) = unique_hom_from_fg(&fga, a)? else {
        return Ok(fail(json!({ "counit": "no evaluation map" }), Some(h)));
    };
    let counit = DerivedHom {
        derivor: Derivor::canonical_identity(a)?,
        phi: g_a,
        strong: true,
    };
    let composite = ff.then(&counit)?;
    if let Some(s) = fl.elements().find(|&s| composite.phi[s] != h.phi[s]) {
        return Ok(fail(
            json!({ "counit_triangle": fl.name(s), "composite": a.name(composite.phi[s]), "direct": a.name(h.phi[s]) }),
            Some(h),
        ));
    }
    if !composite.derivor.agrees_on(&h.derivor, lang.alphabet()) {
        return Ok(fail(
            json!({ "counit_triangle": "derivors differ" }),
            Some(h),
        ));
    }

    // Uniqueness among canonical derivors up to the bound.
    let alpha_a = alpha_g(a)?;
    let candidates: Vec<Trace> = words(&alpha_a, bound);
    let mut searched = 0;
    let mut derived_homs = 0;
    let mut matching = 0;
    let symbols: Vec<&Symbol> = lang.alphabet().iter().collect();
    for choice in symbols
        .iter()
        .map(|_| candidates.iter())
        .multi_cartesian_product()
    {
        searched += 1;
        let words: BTreeMap<Symbol, Trace> = symbols
            .iter()
            .zip(&choice)
            .map(|(s, w)| ((*s).clone(), (*w).clone()))
            .collect();
        let d = Derivor::spelling(a.signature(), &words);
        if unique_hom_from_fg(&fl, &derived_algebra(&d, a)?)?.is_some() {
            derived_homs += 1;
            if &words == f {
                matching += 1;
            }
        }
    }
    let report = if matching == 1 {
        CheckReport::pass(NAME, describe, depth)
    } else {
        CheckReport::fail(
            NAME,
            describe,
            depth,
            json!({ "matching_derivors": matching, "bound": bound }),
        )
    };
    Ok(Adjunction {
        report,
        morphism: Some(h),
        searched,
        derived_homs,
        matching,
    })
}

/// Checks that `h_{L′} ∘ 𝔾U𝔽′(f)` and `f ∘ h_L` agree on `𝔾U𝔽′(L)`.
pub fn check_f_prime_square(
    f: &VectorSimulation,
    sigma: &Alphabet,
    depth: usize,
) -> Result<CheckReport> {
    const NAME: &str = "F_PRIME_SQUARE";
    let describe = format!("{} to {}", f.source(), f.target());
    let h = functor_f_prime(f, sigma)?;
    let a = f_of_vector_language(f.source(), sigma)?;
    let b = f_of_vector_language(f.target(), sigma)?;
    let g = functor_g(&h, &a, &b, depth)?;
    let (src, tgt): (&AlphabetVector, &AlphabetVector) =
        (f.source().alphabets(), f.target().alphabets());
    for s in g.source().traces() {
        let left = tgt.image(&g.image(s)?)?;
        let right = f.image(&src.image(s)?)?;
        if left != right {
            return Ok(CheckReport::fail(
                NAME,
                describe,
                depth,
                json!({ "trace": s.to_text(), "left": left.to_texts(), "right": right.to_texts() }),
            ));
        }
    }
    Ok(CheckReport::pass(NAME, describe, depth))
}
