//! Exact instance checks for the correspondence statements.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::algebra::{
    algebraic_closure, diff_by_names, direct_product, hom_violation, product_closure, tuple_name,
    Elem, PartialAlgebra,
};
use crate::congruence::Congruence;
use crate::correspondence::{
    alpha_g, f_of_language, f_of_vector_language, f_prime, g_of_algebra, h_of_decomposed,
    instance_name, CheckReport, DecomposedAlgebra,
};
use crate::error::{Error, Result};
use crate::language::{compose_parallel, union_alphabet, words, PrefixLanguage};
use crate::symbol::{display_alphabet, Alphabet};
use crate::term::EPSILON;
use crate::trace::Trace;
use crate::vector::{component, vfs, AlphabetVector, VectorLanguage};

/// Largest carriers on which homomorphisms are counted by brute force.
pub const UNIQUENESS_CARRIER: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CheckId {
    Charth,
    CorrthI,
    CorrthII,
    CorrthIII,
    CorrthIV,
    Corollary,
    VeccorrthI,
    VeccorrthII,
    VeccorrthIII,
    VeccorrthIV,
    Lemm1,
    Lemm2,
    Lemm3,
    Lemm4,
    Lemm5,
    Lemm6,
}

impl CheckId {
    pub const ALL: [CheckId; 16] = [
        CheckId::Charth,
        CheckId::CorrthI,
        CheckId::CorrthII,
        CheckId::CorrthIII,
        CheckId::CorrthIV,
        CheckId::Corollary,
        CheckId::VeccorrthI,
        CheckId::VeccorrthII,
        CheckId::VeccorrthIII,
        CheckId::VeccorrthIV,
        CheckId::Lemm1,
        CheckId::Lemm2,
        CheckId::Lemm3,
        CheckId::Lemm4,
        CheckId::Lemm5,
        CheckId::Lemm6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Charth => "CHARTH",
            CheckId::CorrthI => "CORRTH_I",
            CheckId::CorrthII => "CORRTH_II",
            CheckId::CorrthIII => "CORRTH_III",
            CheckId::CorrthIV => "CORRTH_IV",
            CheckId::Corollary => "COROLLARY",
            CheckId::VeccorrthI => "VECCORRTH_I",
            CheckId::VeccorrthII => "VECCORRTH_II",
            CheckId::VeccorrthIII => "VECCORRTH_III",
            CheckId::VeccorrthIV => "VECCORRTH_IV",
            CheckId::Lemm1 => "LEMM1",
            CheckId::Lemm2 => "LEMM2",
            CheckId::Lemm3 => "LEMM3",
            CheckId::Lemm4 => "LEMM4",
            CheckId::Lemm5 => "LEMM5",
            CheckId::Lemm6 => "LEMM6",
        }
    }

    /// Checks that enumerate every word up to the depth; suites run these
    /// at a smaller depth than the structural ones.
    pub fn enumerates_words(self) -> bool {
        matches!(self, CheckId::Lemm1 | CheckId::Lemm2 | CheckId::Lemm6)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::CheckId(s.to_string()))
    }
}

/// Replacements for computed values, used to confirm that checks catch
/// wrong answers.
#[derive(Clone, Debug, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claims {
    /// Stands in for the closure of the product in `CHARTH`.
    #[serde(default)]
    pub closure: Option<PartialAlgebra>,
    /// Stands in for the evaluation map of the first algebra checked by
    /// `CORRTH_II`, from trace names to element names.
    #[serde(default)]
    pub evaluation: Option<BTreeMap<String, String>>,
}

/// The input of a check: a global alphabet, component languages and
/// optional extra unary algebras over the global alphabet.
#[derive(Clone, Debug)]
pub struct Instance {
    pub sigma: Alphabet,
    pub parts: Vec<PrefixLanguage>,
    pub algebras: Vec<PartialAlgebra>,
    pub claims: Claims,
}

impl Instance {
    pub fn new(sigma: Alphabet, parts: Vec<PrefixLanguage>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Empty(
                "an instance needs at least one language".into(),
            ));
        }
        let union = union_alphabet(parts.iter().map(PrefixLanguage::alphabet));
        if let Some(s) = union.iter().find(|s| !sigma.contains(*s)) {
            return Err(Error::Sig(format!(
                "symbol {s} is outside {}",
                display_alphabet(&sigma)
            )));
        }
        Ok(Instance {
            sigma,
            parts,
            algebras: Vec::new(),
            claims: Claims::default(),
        })
    }

    /// An instance over the union of the part alphabets.
    pub fn from_parts(parts: Vec<PrefixLanguage>) -> Result<Self> {
        let sigma = union_alphabet(parts.iter().map(PrefixLanguage::alphabet));
        Instance::new(sigma, parts)
    }

    pub fn with_algebras(mut self, algebras: Vec<PartialAlgebra>) -> Self {
        self.algebras = algebras;
        self
    }

    pub fn with_claims(mut self, claims: Claims) -> Self {
        self.claims = claims;
        self
    }

    /// A depth at which the vector firing sequences of complete parts are
    /// themselves complete.
    pub fn saturation_depth(&self) -> usize {
        self.parts
            .iter()
            .map(PrefixLanguage::max_len)
            .sum::<usize>()
            + 1
    }

    pub fn describe(&self) -> String {
        format!(
            "Σ={} {}",
            display_alphabet(&self.sigma),
            instance_name(&self.parts)
        )
    }

    fn language_algebras(&self) -> Result<Vec<PartialAlgebra>> {
        self.parts
            .iter()
            .map(|p| f_of_language(p, &self.sigma))
            .collect()
    }
}

fn alphabet_names(a: &Alphabet) -> Vec<&str> {
    a.iter().map(|s| s.name()).collect()
}

/// First difference between two languages, as a counterexample.
fn language_diff(left: &PrefixLanguage, right: &PrefixLanguage) -> Option<Value> {
    if left.alphabet() != right.alphabet() {
        return Some(json!({
            "left_alphabet": alphabet_names(left.alphabet()),
            "right_alphabet": alphabet_names(right.alphabet()),
        }));
    }
    let t = left.traces().symmetric_difference(right.traces()).next()?;
    Some(
        json!({ "trace": t.to_text(), "in_left": left.contains(t), "in_right": right.contains(t) }),
    )
}

fn vector_language_diff(left: &VectorLanguage, right: &VectorLanguage) -> Option<Value> {
    if left.alphabets() != right.alphabets() {
        fn show(v: &AlphabetVector) -> Vec<Vec<&str>> {
            v.components().iter().map(alphabet_names).collect()
        }
        return Some(json!({
            "left_alphabets": show(left.alphabets()),
            "right_alphabets": show(right.alphabets()),
        }));
    }
    let v = left
        .vectors()
        .symmetric_difference(right.vectors())
        .next()?;
    Some(
        json!({ "vector": v.to_texts(), "in_left": left.contains(v), "in_right": right.contains(v) }),
    )
}

fn error_value(e: &Error) -> Value {
    json!({ "error": e.to_string() })
}

/// Runs `body` and turns errors into failing reports.
fn report(
    id: CheckId,
    inst: &Instance,
    depth: usize,
    body: impl FnOnce() -> Result<Option<Value>>,
) -> CheckReport {
    let cex = body().unwrap_or_else(|e| Some(error_value(&e)));
    CheckReport::from_outcome(id.name(), inst.describe(), depth, cex)
}

/// Runs one check on one instance at `depth`.
pub fn run_check(id: CheckId, inst: &Instance, depth: usize) -> Result<CheckReport> {
    for p in &inst.parts {
        p.at_depth(depth)?;
    }
    let body: Box<dyn FnOnce() -> Result<Option<Value>>> = match id {
        CheckId::Charth => Box::new(|| charth(inst, depth)),
        CheckId::CorrthI => Box::new(|| corrth_i(inst, depth)),
        CheckId::CorrthII => Box::new(|| corrth_ii(inst, depth)),
        CheckId::CorrthIII => Box::new(|| corrth_iii(inst, depth)),
        CheckId::CorrthIV => Box::new(|| corrth_iv(inst, depth)),
        CheckId::Corollary => Box::new(|| corollary(inst, depth)),
        CheckId::VeccorrthI => Box::new(|| veccorrth_i(inst, depth)),
        CheckId::VeccorrthII => Box::new(|| veccorrth_ii(inst, depth)),
        CheckId::VeccorrthIII => Box::new(|| veccorrth_iii(inst, depth)),
        CheckId::VeccorrthIV => Box::new(|| veccorrth_iv(inst, depth)),
        CheckId::Lemm1 => Box::new(|| lemm1(inst, depth)),
        CheckId::Lemm2 => Box::new(|| lemm2(inst, depth)),
        CheckId::Lemm3 => Box::new(|| lemm3(inst)),
        CheckId::Lemm4 => Box::new(|| lemm4(inst, depth)),
        CheckId::Lemm5 => Box::new(|| lemm5(inst, depth)),
        CheckId::Lemm6 => Box::new(|| lemm6(inst, depth)),
    };
    Ok(report(id, inst, depth, body))
}

/// The depth a suite uses for `id` on `inst`.
pub fn suite_depth(id: CheckId, inst: &Instance, word_depth: usize) -> usize {
    let k = inst.saturation_depth();
    if id.enumerates_words() {
        k.min(word_depth)
    } else {
        k
    }
}

/// The elements reached within `depth` closure rounds.
fn up_to_height(a: &PartialAlgebra, depth: usize) -> Result<PartialAlgebra> {
    let keep = a
        .heights()
        .iter()
        .enumerate()
        .filter_map(|(e, h)| h.filter(|&h| h <= depth).map(|_| e))
        .collect();
    a.induced(&keep)
}

fn charth(inst: &Instance, depth: usize) -> Result<Option<Value>> {
    let left = f_of_vector_language(&vfs(&inst.parts, depth)?, &inst.sigma)?;
    let right = match &inst.claims.closure {
        Some(claim) => claim.clone(),
        None => up_to_height(&product_closure(&inst.language_algebras()?)?, depth)?,
    };
    Ok(diff_by_names(&left, &right).map(|d| json!(d)))
}

fn corrth_i(inst: &Instance, depth: usize) -> Result<Option<Value>> {
    for (i, p) in inst.parts.iter().enumerate() {
        let back = g_of_algebra(&f_of_language(p, &inst.sigma)?, depth)?;
        if let Some(d) = language_diff(&back, &p.truncate(depth)) {
            return Ok(Some(json!({ "part": i, "diff": d })));
        }
    }
    Ok(None)
}

/// Algebras checked by `CORRTH_II` and `CORRTH_III`: the component algebras,
/// their product and its closure, then the extra algebras.
fn algebra_family(inst: &Instance) -> Result<Vec<(String, PartialAlgebra)>> {
    let fs = inst.language_algebras()?;
    let mut out: Vec<(String, PartialAlgebra)> = fs
        .iter()
        .enumerate()
        .map(|(i, a)| (format!("F(L{})", i + 1), a.clone()))
        .collect();
    out.push(("product".into(), direct_product(&fs)?));
    out.push(("closure of product".into(), product_closure(&fs)?));
    out.extend(
        inst.algebras
            .iter()
            .enumerate()
            .map(|(i, a)| (format!("algebra {i}"), a.clone())),
    );
    Ok(out)
}

/// Elements of `F(L)` whose successors may have been cut off by the depth
/// bound of `L`.
fn frontier(lang: &PrefixLanguage, algebra: &PartialAlgebra) -> BTreeSet<Elem> {
    if lang.is_complete() {
        return BTreeSet::new();
    }
    lang.traces()
        .iter()
        .filter(|t| t.len() >= lang.depth())
        .filter_map(|t| algebra.element(&t.to_string()))
        .collect()
}

/// All maps from `a` to `b` that are homomorphisms.
fn all_homomorphisms(a: &PartialAlgebra, b: &PartialAlgebra) -> Result<Vec<Vec<Elem>>> {
    let mut out = Vec::new();
    for phi in (0..a.len()).map(|_| b.elements()).multi_cartesian_product() {
        if hom_violation(&phi, a, b, false, None)?.is_none() {
            out.push(phi);
        }
    }
    Ok(out)
}

/// Checks that the evaluation map `source → target` exists, is a strong
/// homomorphism away from `edge`, and is the only homomorphism when both
/// carriers are small.
fn evaluation_map(
    source: &PartialAlgebra,
    target: &PartialAlgebra,
    edge: &BTreeSet<Elem>,
    claimed: Option<&BTreeMap<String, String>>,
) -> Result<Option<Value>> {
    let phi = match claimed {
        Some(map) => source
            .names()
            .iter()
            .map(|n| {
                map.get(n)
                    .and_then(|m| target.element(m))
                    .ok_or_else(|| Error::Map(format!("claimed map misses `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?,
        None => match crate::algebra::unique_hom_from_fg(source, target)? {
            Some(phi) => phi,
            None => return Ok(Some(json!({ "evaluation": "not a homomorphism" }))),
        },
    };
    if let Some(v) = hom_violation(&phi, source, target, true, Some(edge))? {
        return Ok(Some(json!({ "violation": v })));
    }
    if source.len() <= UNIQUENESS_CARRIER && target.len() <= UNIQUENESS_CARRIER {
        let homs = all_homomorphisms(source, target)?;
        if homs != [phi] {
            return Ok(Some(json!({ "homomorphisms": homs.len() })));
        }
    }
    Ok(None)
}

fn corrth_ii(inst: &Instance, depth: usize) -> Result<Option<Value>> {
    for (i, (name, a)) in algebra_family(inst)?.into_iter().enumerate() {
        let g = g_of_algebra(&a, depth)?;
        let fg = f_of_language(&g, &inst.sigma)?;
        let claim = if i == 0 {
            inst.claims.evaluation.as_ref()
        } else {
            None
        };
        if let Some(cex) = evaluation_map(&fg, &a, &frontier(&g, &fg), claim)? {
            return Ok(Some(json!({ "algebra": name, "failure": cex })));
        }
    }
    Ok(None)
}

fn corrth_iii(inst: &Instance, depth: usize) -> Result<Option<Value>> {
    for (name, a) in algebra_family(inst)? {
        let left = g_of_algebra(&algebraic_closure(&a), depth)?;
        let right = g_of_algebra(&a, depth)?;
        if let Some(d) = language_diff(&left, &right) {
            return Ok(Some(json!({ "algebra": name, "diff": d })));
        }
    }
    Ok(None)
}

fn corrth_iv(inst: &Instance, depth: usize) -> Result<Option<Value>> {
    let fs = inst.language_algebras()?;
    let left = g_of_algebra(&direct_product(&fs)?, depth)?;
    let gs = fs
        .iter()
        .map(|a| g_of_algebra(a, depth))
        .collect::<Result<Vec<_>>>()?;
    let right = compose_parallel(&gs, depth)?;
    Ok(language_diff(&left, &right))
}

fn corollary(inst: &Instance, depth: usize) -> Result<Option<Value>> {
    let left = g_of_algebra(
        &f_of_vector_language(&vfs(&inst.parts, depth)?, &inst.sigma)?,
        depth,
    )?;
    let right = compose_parallel(&inst.parts, depth)?;
    Ok(language_diff(&left, &right))
}

/// `(∏ F(Li), (ker p1, …, ker pn))` with the product projections.
pub fn product_decomposition(inst: &Instance) -> Result<DecomposedAlgebra> {
    let fs = inst.language_algebras()?;
    let product = direct_product(&fs)?;
    let tuples: Vec<Vec<Elem>> = fs
        .iter()
        .map(|f| f.elements())
        .multi_cartesian_product()
        .collect();
    let congruences = (0..fs.len())
        .map(|i| Congruence::kernel(&product, |e| tuples[e][i]))
        .collect();
    DecomposedAlgebra::new(product, congruences)
}

fn decomposed_family(inst: &Instance, depth: usize) -> Result<Vec<(String, DecomposedAlgebra)>> {
    Ok(vec![
        (
            "F'(VFS)".into(),
            f_prime(&vfs(&inst.parts, depth)?, &inst.sigma)?,
        ),
        ("product".into(), product_decomposition(inst)?),
    ])
}

fn veccorrth_i(inst: &Instance, depth: usize) -> Result<Option<Value>> {
    let l = vfs(&inst.parts, depth)?;
    let h = h_of_decomposed(&f_prime(&l, &inst.sigma)?, depth)?;
    Ok(vector_language_diff(&h, &l))
}

fn veccorrth_ii(inst: &Instance, depth: usize) -> Result<Option<Value>> {
    for (name, da) in decomposed_family(inst, depth)? {
        let h = h_of_decomposed(&da, depth)?;
        let fh = f_of_vector_language(&h, &inst.sigma)?;
        let edge: BTreeSet<Elem> = if h.is_complete() {
            BTreeSet::new()
        } else {
            h.vectors()
                .iter()
                .filter(|v| h.alphabets().op_length(v) == Some(depth))
                .filter_map(|v| fh.element(&v.to_string()))
                .collect()
        };
        if let Some(cex) = evaluation_map(&fh, da.algebra(), &edge, None)? {
            return Ok(Some(json!({ "algebra": name, "failure": cex })));
        }
    }
    Ok(None)
}

fn veccorrth_iii(inst: &Instance, depth: usize) -> Result<Option<Value>> {
    for (name, da) in decomposed_family(inst, depth)? {
        let left = h_of_decomposed(&da.closure()?, depth)?;
        let right = h_of_decomposed(&da, depth)?;
        if let Some(d) = vector_language_diff(&left, &right) {
            return Ok(Some(json!({ "algebra": name, "diff": d })));
        }
    }
    Ok(None)
}

fn veccorrth_iv(inst: &Instance, depth: usize) -> Result<Option<Value>> {
    for (name, da) in decomposed_family(inst, depth)? {
        let left = h_of_decomposed(&da, depth)?;
        let gs = da
            .quotients()?
            .iter()
            .map(|q| g_of_algebra(q, depth))
            .collect::<Result<Vec<_>>>()?;
        let right = vfs(&gs, depth)?;
        if let Some(d) = vector_language_diff(&left, &right) {
            return Ok(Some(json!({ "algebra": name, "diff": d })));
        }
    }
    Ok(None)
}

/// Follows the symbols of `word` from the constant `ε`.
fn run_word(a: &PartialAlgebra, word: &Trace) -> Option<Elem> {
    word.symbols()
        .iter()
        .try_fold(a.constant(EPSILON)?, |e, s| a.apply(s.name(), &[e]))
}

fn lemm1(inst: &Instance, depth: usize) -> Result<Option<Value>> {
    for (i, p) in inst.parts.iter().enumerate() {
        let f = f_of_language(p, &inst.sigma)?;
        for t in words(&inst.sigma, depth) {
            let proj = t.project(p.alphabet());
            let left = p.contains(&proj);
            let right = run_word(&f, &t).is_some_and(|e| f.name(e) == proj.to_string());
            if left != right {
                return Ok(Some(
                    json!({ "part": i, "term": t.to_text(), "projection_in_language": left }),
                ));
            }
        }
    }
    Ok(None)
}

fn lemm2(inst: &Instance, depth: usize) -> Result<Option<Value>> {
    let mut families = vec![inst.language_algebras()?];
    if inst.algebras.len() >= 2 {
        families.push(inst.algebras.clone());
    }
    for factors in families {
        let product = direct_product(&factors)?;
        for t in words(&inst.sigma, depth) {
            let left = run_word(&product, &t).map(|e| product.name(e).to_string());
            let parts: Option<Vec<&str>> = factors
                .iter()
                .map(|f| run_word(f, &t).map(|e| f.name(e)))
                .collect();
            let right = parts.map(|ps| tuple_name(&ps));
            if left != right {
                return Ok(Some(
                    json!({ "term": t.to_text(), "product": left, "factors": right }),
                ));
            }
        }
    }
    Ok(None)
}

fn lemm3(inst: &Instance) -> Result<Option<Value>> {
    let fs = inst.language_algebras()?;
    for (p, f) in inst.parts.iter().zip(&fs) {
        for s in &inst.sigma {
            let identity = f.elements().all(|e| f.apply(s.name(), &[e]) == Some(e));
            if identity == p.alphabet().contains(s) {
                return Ok(Some(
                    json!({ "part": instance_name(std::slice::from_ref(p)), "symbol": s.name(), "identity": identity }),
                ));
            }
        }
    }
    for (name, a) in algebra_family(inst)? {
        let (left, right) = (alpha_g(&algebraic_closure(&a))?, alpha_g(&a)?);
        if left != right {
            return Ok(Some(
                json!({ "algebra": name, "closure": alphabet_names(&left), "algebra_alphabet": alphabet_names(&right) }),
            ));
        }
    }
    let left = alpha_g(&direct_product(&fs)?)?;
    let right: Alphabet = fs
        .iter()
        .map(alpha_g)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    if left != right {
        return Ok(Some(
            json!({ "product": alphabet_names(&left), "union": alphabet_names(&right) }),
        ));
    }
    Ok(None)
}

/// The i-th quotient of `F′(L)` with each block renamed to the common i-th
/// component of its members.
fn renamed_quotient(
    l: &VectorLanguage,
    da: &DecomposedAlgebra,
    i: usize,
) -> Result<PartialAlgebra> {
    let q = &da.quotients()?[i];
    let blocks = da.congruences()[i].blocks();
    let members: Vec<_> = l.vectors().iter().collect();
    q.renamed(|b, _| members[blocks[b][0]].parts()[i].to_string())
}

fn lemm4(inst: &Instance, depth: usize) -> Result<Option<Value>> {
    let l = vfs(&inst.parts, depth)?;
    let da = f_prime(&l, &inst.sigma)?;
    for i in 0..l.dim() {
        let left = renamed_quotient(&l, &da, i)?;
        let right = f_of_language(&component(&l, i)?, &inst.sigma)?;
        if let Some(d) = diff_by_names(&left, &right) {
            return Ok(Some(json!({ "component": i, "diff": d })));
        }
    }
    Ok(None)
}

fn lemm5(inst: &Instance, depth: usize) -> Result<Option<Value>> {
    let l = vfs(&inst.parts, depth)?;
    let da = f_prime(&l, &inst.sigma)?;
    for (i, q) in da.quotients()?.iter().enumerate() {
        let got = alpha_g(q)?;
        let want = l.alphabets().component(i)?;
        if &got != want {
            return Ok(Some(json!({
                "component": i,
                "quotient_alphabet": alphabet_names(&got),
                "component_alphabet": alphabet_names(want),
            })));
        }
    }
    Ok(None)
}

fn lemm6(inst: &Instance, depth: usize) -> Result<Option<Value>> {
    let alphabets = AlphabetVector::of_languages(&inst.parts)?;
    for w in words(&alphabets.union(), depth) {
        let ops = w
            .symbols()
            .iter()
            .map(|s| alphabets.op(s).expect("union symbols have operations"))
            .collect::<Vec<_>>();
        let product = alphabets.product(&ops)?;
        for (i, alpha) in alphabets.components().iter().enumerate() {
            if product.parts()[i] != w.project(alpha) {
                return Ok(Some(
                    json!({ "word": w.to_text(), "component": i, "product": product.to_texts() }),
                ));
            }
        }
    }
    Ok(None)
}
