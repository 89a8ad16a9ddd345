//! Translations between languages and algebras.
//!
//! `F` turns a language into an algebra whose carrier is the language and
//! whose operations extend traces. `G` reads a language back off any algebra
//! over the language signature. `F′` and `H` do the same for vector
//! languages and algebras with a subdirect decomposition.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::{algebraic_closure, Elem, PartialAlgebra, Signature};
use crate::commutation::{commutation_class, DEFAULT_CLASS_LIMIT};
use crate::congruence::{check_subdirect, quotient, Congruence};
use crate::error::{Error, Result};
use crate::language::{compose_parallel, words, PrefixLanguage};
use crate::symbol::{display_alphabet, Alphabet, Symbol};
use crate::term::EPSILON;
use crate::trace::Trace;
use crate::vector::{vfs, AlphabetVector, VectorLanguage, VectorOp, VectorString};

/// Upper bound on the number of traces or vectors read off an algebra.
pub const READBACK_LIMIT: usize = 1 << 20;

fn require_within(alpha: &Alphabet, sigma: &Alphabet) -> Result<()> {
    match alpha.iter().find(|s| !sigma.contains(*s)) {
        Some(s) => Err(Error::Sig(format!(
            "symbol {s} is outside {}",
            display_alphabet(sigma)
        ))),
        None => Ok(()),
    }
}

fn successor_algebra<T: Ord + Clone>(
    sigma: &Alphabet,
    members: &BTreeSet<T>,
    name: impl Fn(&T) -> String,
    root: &T,
    step: impl Fn(&T, &Symbol) -> Option<T>,
) -> Result<PartialAlgebra> {
    let index: BTreeMap<&T, Elem> = members.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut tables = BTreeMap::new();
    tables.insert(EPSILON.to_string(), BTreeMap::from([(vec![], index[root])]));
    for sym in sigma {
        let table = members
            .iter()
            .enumerate()
            .filter_map(|(i, m)| {
                let next = step(m, sym)?;
                index.get(&next).map(|&j| (vec![i], j))
            })
            .collect();
        tables.insert(sym.name().to_string(), table);
    }
    PartialAlgebra::new(
        Signature::language(sigma),
        members.iter().map(name).collect(),
        tables,
    )
}

/// `F(L)` over the global alphabet `sigma`: traces as elements, `σ ∈ αL`
/// as the partial successor `s ↦ sσ`, every other symbol as the identity.
pub fn f_of_language(lang: &PrefixLanguage, sigma: &Alphabet) -> Result<PartialAlgebra> {
    require_within(lang.alphabet(), sigma)?;
    successor_algebra(
        sigma,
        lang.traces(),
        Trace::to_string,
        &Trace::empty(),
        |s, sym| {
            Some(if lang.alphabet().contains(sym) {
                s.extended(sym)
            } else {
                s.clone()
            })
        },
    )
}

/// `F` of a vector language: `σ` appends its vector operation when the
/// result stays in the language; symbols outside every component act as the
/// identity.
pub fn f_of_vector_language(lang: &VectorLanguage, sigma: &Alphabet) -> Result<PartialAlgebra> {
    require_within(&lang.alphabets().union(), sigma)?;
    let eps = VectorString::epsilon(lang.dim());
    successor_algebra(
        sigma,
        lang.vectors(),
        VectorString::to_string,
        &eps,
        |v, sym| {
            Some(match lang.alphabets().op(sym) {
                Some(op) => v.then(&op),
                None => v.clone(),
            })
        },
    )
}

/// The symbols whose operation, restricted to the closure, is not the
/// identity on the closure.
pub fn alpha_g(a: &PartialAlgebra) -> Result<Alphabet> {
    let sigma = a.signature().language_symbols()?;
    let ac = algebraic_closure(a);
    Ok(sigma
        .into_iter()
        .filter(|s| ac.elements().any(|e| ac.apply(s.name(), &[e]) != Some(e)))
        .collect())
}

/// `G(A)` at `depth`: the `αG`-words of length at most `depth` whose terms
/// are defined in `a`.
pub fn g_of_algebra(a: &PartialAlgebra, depth: usize) -> Result<PrefixLanguage> {
    let alpha = alpha_g(a)?;
    let eps = a.constant(EPSILON).expect("constants are defined");
    let mut traces = vec![Trace::empty()];
    let mut frontier = vec![(Trace::empty(), eps)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (t, e) in &frontier {
            for sym in &alpha {
                if let Some(r) = a.apply(sym.name(), &[*e]) {
                    next.push((t.extended(sym), r));
                }
            }
        }
        traces.extend(next.iter().map(|(t, _)| t.clone()));
        if traces.len() > READBACK_LIMIT {
            return Err(Error::Limit(format!("more than {READBACK_LIMIT} traces")));
        }
        frontier = next;
    }
    PrefixLanguage::new(alpha, traces, depth)
}

/// An algebra with a subdirect decomposition.
#[derive(Clone, Debug)]
pub struct DecomposedAlgebra {
    algebra: PartialAlgebra,
    congruences: Vec<Congruence>,
}

impl DecomposedAlgebra {
    pub fn new(algebra: PartialAlgebra, congruences: Vec<Congruence>) -> Result<Self> {
        if !check_subdirect(&algebra, &congruences)? {
            return Err(Error::Congruence("not a subdirect decomposition".into()));
        }
        Ok(DecomposedAlgebra {
            algebra,
            congruences,
        })
    }

    /// `(A, (id))`.
    pub fn trivial(algebra: PartialAlgebra) -> Self {
        let id = Congruence::identity(algebra.len());
        DecomposedAlgebra {
            algebra,
            congruences: vec![id],
        }
    }

    pub fn algebra(&self) -> &PartialAlgebra {
        &self.algebra
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn quotients(&self) -> Result<Vec<PartialAlgebra>> {
        self.congruences
            .iter()
            .map(|t| quotient(&self.algebra, t))
            .collect()
    }

    /// The closure of the algebra with each congruence restricted to it.
    pub fn closure(&self) -> Result<Self> {
        let ac = algebraic_closure(&self.algebra);
        let keep: Vec<Elem> = ac
            .names()
            .iter()
            .map(|n| self.algebra.element(n).unwrap())
            .collect();
        let congruences = self.congruences.iter().map(|t| t.restrict(&keep)).collect();
        DecomposedAlgebra::new(ac, congruences)
    }
}

/// `F′(L)`: `F(L)` with the kernels of the component projections.
pub fn f_prime(lang: &VectorLanguage, sigma: &Alphabet) -> Result<DecomposedAlgebra> {
    let algebra = f_of_vector_language(lang, sigma)?;
    let members: Vec<&VectorString> = lang.vectors().iter().collect();
    let congruences = (0..lang.dim())
        .map(|i| Congruence::kernel(&algebra, |e| members[e].parts()[i].clone()))
        .collect();
    DecomposedAlgebra::new(algebra, congruences)
}

/// `H(A, Θ)` at `depth`: the component alphabets are `αG(A/Θi)` and the
/// members are the products of at most `depth` vector operations whose
/// underlying terms are defined in `A`.
pub fn h_of_decomposed(da: &DecomposedAlgebra, depth: usize) -> Result<VectorLanguage> {
    let alphas = da
        .quotients()?
        .iter()
        .map(alpha_g)
        .collect::<Result<Vec<_>>>()?;
    let alphabets = AlphabetVector::new(alphas)?;
    let ops: Vec<VectorOp> = crate::vector::vops(&alphabets);
    let a = &da.algebra;
    let eps = a.constant(EPSILON).expect("constants are defined");
    let start = (VectorString::epsilon(alphabets.dim()), eps);
    let mut vectors = BTreeSet::from([start.0.clone()]);
    let mut frontier = BTreeSet::from([start]);
    for _ in 0..depth {
        let mut next = BTreeSet::new();
        for (v, e) in &frontier {
            for op in &ops {
                if let Some(r) = a.apply(op.source().name(), &[*e]) {
                    next.insert((v.then(op), r));
                }
            }
        }
        vectors.extend(next.iter().map(|(v, _)| v.clone()));
        if vectors.len() > READBACK_LIMIT {
            return Err(Error::Limit(format!("more than {READBACK_LIMIT} vectors")));
        }
        frontier = next;
    }
    VectorLanguage::new(alphabets, vectors, depth)
}

/// The map `σ ↦ σ̲` from the composition of `parts` onto their vector
/// firing sequences.
#[derive(Clone, Debug)]
pub struct Linearization {
    alphabets: AlphabetVector,
}

impl Linearization {
    pub fn new(parts: &[PrefixLanguage]) -> Result<Self> {
        Ok(Linearization {
            alphabets: AlphabetVector::of_languages(parts)?,
        })
    }

    pub fn alphabets(&self) -> &AlphabetVector {
        &self.alphabets
    }

    pub fn map(&self) -> BTreeMap<Symbol, VectorOp> {
        self.alphabets
            .union()
            .into_iter()
            .filter_map(|s| Some((s.clone(), self.alphabets.op(&s)?)))
            .collect()
    }

    pub fn image(&self, s: &Trace) -> Result<VectorString> {
        self.alphabets.image(s)
    }
}

/// Outcome of one check on one instance.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub pass: bool,
    pub depth: usize,
    pub counterexample: Option<serde_json::Value>,
    pub instance: String,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>, instance: impl Into<String>, depth: usize) -> Self {
        CheckReport {
            check: check.into(),
            pass: true,
            depth,
            counterexample: None,
            instance: instance.into(),
        }
    }

    pub fn fail(
        check: impl Into<String>,
        instance: impl Into<String>,
        depth: usize,
        counterexample: serde_json::Value,
    ) -> Self {
        CheckReport {
            check: check.into(),
            pass: false,
            depth,
            counterexample: Some(counterexample),
            instance: instance.into(),
        }
    }

    /// Passes unless `counterexample` is present.
    pub fn from_outcome(
        check: impl Into<String>,
        instance: impl Into<String>,
        depth: usize,
        counterexample: Option<serde_json::Value>,
    ) -> Self {
        CheckReport {
            check: check.into(),
            pass: counterexample.is_none(),
            depth,
            counterexample,
            instance: instance.into(),
        }
    }
}

/// Builds `h_L` for `parts` and checks at `depth` that it is a strong
/// simulation from their composition onto their vector firing sequences.
pub fn parallel_to_vfs_map(
    parts: &[PrefixLanguage],
    depth: usize,
) -> Result<(Linearization, CheckReport)> {
    let comp = compose_parallel(parts, depth)?;
    let target = vfs(parts, depth)?;
    let h = Linearization::new(parts)?;
    let name = instance_name(parts);
    let mut hit = BTreeSet::new();
    let mut cex = None;
    for s in words(comp.alphabet(), depth) {
        let v = h.image(&s)?;
        let (inside, image) = (comp.contains(&s), target.contains(&v));
        if inside {
            hit.insert(v.clone());
        }
        if inside != image {
            cex = Some(serde_json::json!({
                "trace": s.to_text(),
                "image": v.to_texts(),
                "in_composition": inside,
                "in_vfs": image,
            }));
            break;
        }
    }
    if cex.is_none() {
        if let Some(v) = target.vectors().iter().find(|v| !hit.contains(*v)) {
            cex = Some(serde_json::json!({ "unreached": v.to_texts() }));
        }
    }
    Ok((h, CheckReport::from_outcome("HL", name, depth, cex)))
}

/// For every member of the vector firing sequences, the number of
/// composition traces mapped onto it and the size of its commutation class.
pub fn preimage_counts(
    parts: &[PrefixLanguage],
    depth: usize,
) -> Result<BTreeMap<VectorString, (usize, usize)>> {
    let comp = compose_parallel(parts, depth)?;
    let target = vfs(parts, depth)?;
    let h = Linearization::new(parts)?;
    let mut counts: BTreeMap<VectorString, (usize, usize)> = BTreeMap::new();
    for v in target.vectors() {
        let ops = h.alphabets.decompose(v).expect("members are products");
        let class = commutation_class(&ops, DEFAULT_CLASS_LIMIT.max(depth))?;
        counts.insert(v.clone(), (0, class.len()));
    }
    for s in comp.traces() {
        let v = h.image(s)?;
        counts
            .get_mut(&v)
            .ok_or_else(|| Error::Invalid(format!("{v} is not a member")))?
            .0 += 1;
    }
    Ok(counts)
}

/// Short description of a list of languages.
pub fn instance_name(parts: &[PrefixLanguage]) -> String {
    parts
        .iter()
        .map(PrefixLanguage::to_string)
        .collect::<Vec<_>>()
        .join(" || ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{diff_by_names, product_closure};
    use crate::congruence::check_congruence;
    use crate::symbol::alphabet;

    fn lang(alpha: &[&str], traces: &[&str], depth: usize) -> PrefixLanguage {
        let alpha = alphabet(alpha).unwrap();
        let traces: Vec<Trace> = traces
            .iter()
            .map(|t| Trace::parse(t, &alpha).unwrap())
            .collect();
        PrefixLanguage::from_traces(alpha, traces, depth).unwrap()
    }

    fn running() -> (Alphabet, PrefixLanguage, PrefixLanguage) {
        (
            alphabet(["a", "b", "c"]).unwrap(),
            lang(&["a", "b"], &["ab"], 3),
            lang(&["b", "c"], &["bc"], 3),
        )
    }

    fn entries(a: &PartialAlgebra, op: &str) -> Vec<(String, String)> {
        a.table(op)
            .unwrap()
            .iter()
            .map(|(args, r)| (a.name(args[0]).to_string(), a.name(*r).to_string()))
            .collect()
    }

    fn pairs(ps: &[(&str, &str)]) -> Vec<(String, String)> {
        ps.iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect()
    }

    #[test]
    fn f_of_running_languages() {
        let (sigma, l1, _) = running();
        let a = f_of_language(&l1, &sigma).unwrap();
        assert_eq!(a.names(), ["ε", "a", "ab"]);
        assert_eq!(entries(&a, "a"), pairs(&[("ε", "a")]));
        assert_eq!(entries(&a, "b"), pairs(&[("a", "ab")]));
        assert_eq!(
            entries(&a, "c"),
            pairs(&[("ε", "ε"), ("a", "a"), ("ab", "ab")])
        );
        assert!(f_of_language(&l1, &alphabet(["a"]).unwrap()).is_err());

        let minimal = PrefixLanguage::minimal(Alphabet::new(), 0);
        let one = f_of_language(&minimal, &sigma).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(entries(&one, "a"), pairs(&[("ε", "ε")]));
    }

    #[test]
    fn f_of_running_vfs() {
        let (sigma, l1, l2) = running();
        let v = vfs(&[l1.clone(), l2.clone()], 3).unwrap();
        let a = f_of_vector_language(&v, &sigma).unwrap();
        assert_eq!(entries(&a, "a"), pairs(&[("(ε,ε)", "(a,ε)")]));
        assert_eq!(entries(&a, "b"), pairs(&[("(a,ε)", "(ab,b)")]));
        assert_eq!(entries(&a, "c"), pairs(&[("(ab,b)", "(ab,bc)")]));
        let fl = [
            f_of_language(&l1, &sigma).unwrap(),
            f_of_language(&l2, &sigma).unwrap(),
        ];
        let closure = product_closure(&fl).unwrap();
        assert_eq!(diff_by_names(&a, &closure), None);
    }

    #[test]
    fn g_reads_back() {
        let (sigma, l1, _) = running();
        let a = f_of_language(&l1, &sigma).unwrap();
        assert_eq!(alpha_g(&a).unwrap(), *l1.alphabet());
        assert_eq!(g_of_algebra(&a, 3).unwrap(), l1);

        // Carrier {0,1,2}, ε = 0, a: 0 ↦ 1; 2 is unreachable.
        let three = PartialAlgebra::from_named(
            Signature::language(&alphabet(["a"]).unwrap()),
            vec!["0".into(), "1".into(), "2".into()],
            [("ε", vec![], "0"), ("a", vec!["0"], "1")],
        )
        .unwrap();
        let g = g_of_algebra(&three, 3).unwrap();
        assert_eq!(g, g_of_algebra(&algebraic_closure(&three), 3).unwrap());
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn kernels_of_running_vfs() {
        let (sigma, l1, l2) = running();
        let v = vfs(&[l1, l2], 3).unwrap();
        let da = f_prime(&v, &sigma).unwrap();
        let names = |t: &Congruence| -> Vec<Vec<String>> {
            t.blocks()
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|&e| da.algebra().name(e).to_string())
                        .collect()
                })
                .collect()
        };
        assert_eq!(
            names(&da.congruences()[0]),
            vec![vec!["(ε,ε)"], vec!["(a,ε)"], vec!["(ab,b)", "(ab,bc)"]]
        );
        for t in da.congruences() {
            assert!(check_congruence(t, da.algebra(), false).unwrap());
        }
    }

    /// On the running instance the first quotient of `F′(VFS)` lets `c` act
    /// as a partial identity, so `c` joins the read-back alphabet and `H`
    /// does not return the vector firing sequences.
    #[test]
    fn quotient_alphabet_on_running_instance() {
        let (sigma, l1, l2) = running();
        let v = vfs(&[l1, l2], 3).unwrap();
        let da = f_prime(&v, &sigma).unwrap();
        let q = da.quotients().unwrap();
        assert_eq!(alpha_g(&q[0]).unwrap(), sigma);
        assert_eq!(alpha_g(&q[1]).unwrap(), sigma);
        let h = h_of_decomposed(&da, 3).unwrap();
        let shown: Vec<String> = h.vectors().iter().map(|v| v.to_string()).collect();
        assert_eq!(shown, ["(ε,ε)", "(a,a)", "(ab,ab)", "(abc,abc)"]);
        assert_ne!(h.vectors(), v.vectors());
    }

    #[test]
    fn h_of_trivial_decomposition() {
        let (sigma, l1, _) = running();
        let a = f_of_language(&l1, &sigma).unwrap();
        let h = h_of_decomposed(&DecomposedAlgebra::trivial(a), 3).unwrap();
        assert_eq!(h.dim(), 1);
        let traces: BTreeSet<Trace> = h.vectors().iter().map(|v| v.parts()[0].clone()).collect();
        assert_eq!(&traces, l1.traces());
    }

    #[test]
    fn linearization_examples() {
        let (_, l1, l2) = running();
        let (h, report) = parallel_to_vfs_map(&[l1.clone(), l2.clone()], 3).unwrap();
        assert!(report.pass, "{report:?}");
        let abc = Trace::parse("abc", &alphabet(["a", "b", "c"]).unwrap()).unwrap();
        assert_eq!(h.image(&abc).unwrap().to_string(), "(ab,bc)");
        assert!(h.image(&Trace::empty()).unwrap().is_epsilon());

        let d1 = lang(&["a"], &["a"], 2);
        let d2 = lang(&["b"], &["b"], 2);
        let counts = preimage_counts(&[d1, d2], 2).unwrap();
        let both = counts.iter().find(|(v, _)| v.weight() == 2).unwrap();
        assert_eq!(*both.1, (2, 2));
        assert!(counts.values().all(|(n, c)| n == c));
    }
}
