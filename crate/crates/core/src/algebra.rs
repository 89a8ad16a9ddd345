//! Finite partial algebras over ranked signatures.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbol::Alphabet;
use crate::term::{Term, EPSILON};

/// Index of a carrier element.
pub type Elem = usize;

/// Operator names with their arities.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Signature(BTreeMap<String, usize>);

impl Signature {
    pub fn new<I, S>(ops: I) -> Self
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        Signature(ops.into_iter().map(|(n, a)| (n.into(), a)).collect())
    }

    /// `ε` as the only constant and every symbol of `sigma` as a unary
    /// operator.
    pub fn language(sigma: &Alphabet) -> Self {
        let mut ops = BTreeMap::from([(EPSILON.to_string(), 0)]);
        ops.extend(sigma.iter().map(|s| (s.name().to_string(), 1)));
        Signature(ops)
    }

    pub fn arity(&self, op: &str) -> Option<usize> {
        self.0.get(op).copied()
    }

    pub fn ops(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The unary operators, when this is a language signature.
    pub fn language_symbols(&self) -> Result<Alphabet> {
        let mut sigma = Alphabet::new();
        for (op, arity) in self.ops() {
            match (op, arity) {
                (EPSILON, 0) => {}
                (_, 1) => {
                    sigma.insert(crate::symbol::Symbol::new(op)?);
                }
                _ => {
                    return Err(Error::Sig(format!(
                        "`{op}` of arity {arity} in a language signature"
                    )))
                }
            }
        }
        if self.arity(EPSILON) != Some(0) {
            return Err(Error::Sig("language signatures need the constant ε".into()));
        }
        Ok(sigma)
    }
}

type Table = BTreeMap<Vec<Elem>, Elem>;

/// A finite nonempty carrier of named elements with one partial table per
/// operator. Every constant is defined.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialAlgebra {
    signature: Signature,
    names: Vec<String>,
    index: HashMap<String, Elem>,
    tables: BTreeMap<String, Table>,
}

impl PartialAlgebra {
    /// Builds an algebra from index-based tables.
    pub fn new(
        signature: Signature,
        names: Vec<String>,
        tables: BTreeMap<String, Table>,
    ) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Empty("an algebra needs a nonempty carrier".into()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate carrier element `{n}`")));
            }
        }
        let mut full = BTreeMap::new();
        for (op, arity) in signature.ops() {
            full.insert(op.to_string(), Table::new());
            if arity == 0 && tables.get(op).is_none_or(|t| t.is_empty()) {
                return Err(Error::Invalid(format!("constant `{op}` is undefined")));
            }
        }
        for (op, table) in tables {
            let arity = signature
                .arity(&op)
                .ok_or_else(|| Error::Sig(format!("table for undeclared operator `{op}`")))?;
            for (args, res) in &table {
                if args.len() != arity {
                    return Err(Error::Sig(format!(
                        "`{op}` has arity {arity}, entry has {}",
                        args.len()
                    )));
                }
                if args.iter().chain([res]).any(|&e| e >= names.len()) {
                    return Err(Error::Invalid(format!(
                        "entry of `{op}` leaves the carrier"
                    )));
                }
            }
            full.insert(op, table);
        }
        Ok(PartialAlgebra {
            signature,
            names,
            index,
            tables: full,
        })
    }

    /// Builds an algebra from name-based entries `(args, result)`.
    pub fn from_named<'a, I>(signature: Signature, names: Vec<String>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, Vec<&'a str>, &'a str)>,
    {
        let index: HashMap<&str, Elem> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let look = |n: &str| {
            index
                .get(n)
                .copied()
                .ok_or_else(|| Error::Invalid(format!("`{n}` is not a carrier element")))
        };
        let mut tables: BTreeMap<String, Table> = BTreeMap::new();
        for (op, args, res) in entries {
            let args = args.into_iter().map(look).collect::<Result<Vec<_>>>()?;
            tables
                .entry(op.to_string())
                .or_default()
                .insert(args, look(res)?);
        }
        PartialAlgebra::new(signature, names, tables)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.names.len()
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    pub fn table(&self, op: &str) -> Option<&Table> {
        self.tables.get(op)
    }

    pub fn apply(&self, op: &str, args: &[Elem]) -> Option<Elem> {
        self.tables.get(op)?.get(args).copied()
    }

    /// The value of the constant `op`.
    pub fn constant(&self, op: &str) -> Option<Elem> {
        self.apply(op, &[])
    }

    /// Evaluates a ground term; `None` when it is undefined.
    pub fn eval(&self, t: &Term) -> Result<Option<Elem>> {
        self.eval_with(t, &[])
    }

    /// Evaluates a term with `xi` bound to `env[i]`.
    pub fn eval_with(&self, t: &Term, env: &[Elem]) -> Result<Option<Elem>> {
        match t {
            Term::Var(i) => env
                .get(*i)
                .map(|&e| Some(e))
                .ok_or_else(|| Error::Var(format!("x{i} with {} bound", env.len()))),
            Term::App(op, args) => {
                let arity = self
                    .signature
                    .arity(op)
                    .ok_or_else(|| Error::Sig(format!("unknown operator `{op}`")))?;
                if arity != args.len() {
                    return Err(Error::Sig(format!(
                        "`{op}` has arity {arity}, applied to {}",
                        args.len()
                    )));
                }
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    match self.eval_with(a, env)? {
                        Some(v) => vals.push(v),
                        None => return Ok(None),
                    }
                }
                Ok(self.apply(op, &vals))
            }
        }
    }

    /// For each element, the closure round that first reaches it (constants
    /// are round 0), or `None` if it is unreachable.
    pub fn heights(&self) -> Vec<Option<usize>> {
        let mut height = vec![None; self.len()];
        let mut round = 0;
        loop {
            let mut fresh = Vec::new();
            for table in self.tables.values() {
                for (args, &res) in table {
                    if height[res].is_none() && args.iter().all(|a| height[*a].is_some()) {
                        fresh.push(res);
                    }
                }
            }
            if fresh.is_empty() {
                return height;
            }
            for e in fresh {
                height[e].get_or_insert(round);
            }
            round += 1;
        }
    }

    /// The subalgebra induced on `keep`, listed in carrier order.
    pub fn induced(&self, keep: &BTreeSet<Elem>) -> Result<PartialAlgebra> {
        let renum: HashMap<Elem, Elem> = keep.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let names = keep.iter().map(|&e| self.names[e].clone()).collect();
        let tables = self
            .tables
            .iter()
            .map(|(op, table)| {
                let t = table
                    .iter()
                    .filter_map(|(args, res)| {
                        let args = args
                            .iter()
                            .map(|a| renum.get(a).copied())
                            .collect::<Option<Vec<_>>>()?;
                        Some((args, *renum.get(res)?))
                    })
                    .collect();
                (op.clone(), t)
            })
            .collect();
        PartialAlgebra::new(self.signature.clone(), names, tables)
    }

    /// The same algebra with every element renamed by `rename`.
    pub fn renamed(&self, rename: impl Fn(Elem, &str) -> String) -> Result<PartialAlgebra> {
        let names = self.elements().map(|e| rename(e, &self.names[e])).collect();
        PartialAlgebra::new(self.signature.clone(), names, self.tables.clone())
    }

    /// Graphviz rendering of the unary tables.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph algebra {\n");
        for e in self.elements() {
            out.push_str(&format!("  n{e} [label={:?}];\n", self.names[e]));
        }
        for (op, table) in &self.tables {
            for (args, res) in table {
                if let [src] = args.as_slice() {
                    out.push_str(&format!("  n{src} -> n{res} [label={op:?}];\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Debug for PartialAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            serde_json::to_string(self).map_err(|_| fmt::Error)?
        )
    }
}

/// A failed homomorphism condition.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HomViolation {
    pub op: String,
    pub args: Vec<String>,
    pub source: Option<String>,
    pub target: Option<String>,
    pub expected: Option<String>,
}

/// Checks that `phi` is a homomorphism from `a` to `b`.
///
/// Weakly, every defined operation in `a` must be defined in `b` with the
/// image of its result. Strongly, definedness must also be reflected. The
/// reflecting condition is skipped for argument tuples that touch an element
/// of `frontier`, which marks elements whose successors were cut off.
pub fn hom_violation(
    phi: &[Elem],
    a: &PartialAlgebra,
    b: &PartialAlgebra,
    strong: bool,
    frontier: Option<&BTreeSet<Elem>>,
) -> Result<Option<HomViolation>> {
    if a.signature != b.signature {
        return Err(Error::Sig(
            "homomorphism between different signatures".into(),
        ));
    }
    if phi.len() != a.len() || phi.iter().any(|&e| e >= b.len()) {
        return Err(Error::Map(format!(
            "map of {} entries on a carrier of {} into {}",
            phi.len(),
            a.len(),
            b.len()
        )));
    }
    let violation = |op: &str, args: &[Elem], src: Option<Elem>, tgt: Option<Elem>| HomViolation {
        op: op.to_string(),
        args: args.iter().map(|&e| a.name(e).to_string()).collect(),
        source: src.map(|e| a.name(e).to_string()),
        target: tgt.map(|e| b.name(e).to_string()),
        expected: src.map(|e| b.name(phi[e]).to_string()),
    };
    for (op, arity) in a.signature.ops() {
        for args in tuples(a.len(), arity) {
            let src = a.apply(op, &args);
            let image: Vec<Elem> = args.iter().map(|&e| phi[e]).collect();
            let tgt = b.apply(op, &image);
            let ok = match (src, tgt) {
                (Some(s), Some(t)) => phi[s] == t,
                (Some(_), None) => false,
                (None, Some(_)) => {
                    !strong || frontier.is_some_and(|f| args.iter().any(|e| f.contains(e)))
                }
                (None, None) => true,
            };
            if !ok {
                return Ok(Some(violation(op, &args, src, tgt)));
            }
        }
    }
    Ok(None)
}

fn tuples(n: usize, arity: usize) -> Box<dyn Iterator<Item = Vec<Elem>>> {
    if arity == 0 {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new((0..arity).map(|_| 0..n).multi_cartesian_product())
    }
}

/// Whether `phi` is a (strong) homomorphism from `a` to `b`.
pub fn check_homomorphism(
    phi: &[Elem],
    a: &PartialAlgebra,
    b: &PartialAlgebra,
    strong: bool,
) -> Result<bool> {
    Ok(hom_violation(phi, a, b, strong, None)?.is_none())
}

/// Name of a product element, `(n1,…,nk)`.
pub fn tuple_name<S: AsRef<str>>(parts: &[S]) -> String {
    format!("({})", parts.iter().map(AsRef::as_ref).join(","))
}

fn common_signature(algebras: &[PartialAlgebra]) -> Result<&Signature> {
    let first = algebras
        .first()
        .ok_or_else(|| Error::Empty("product of no algebras".into()))?;
    if algebras.iter().any(|a| a.signature != first.signature) {
        return Err(Error::Sig(
            "product factors have different signatures".into(),
        ));
    }
    Ok(&first.signature)
}

fn apply_tuple(factors: &[PartialAlgebra], op: &str, args: &[&Vec<Elem>]) -> Option<Vec<Elem>> {
    factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let comp: Vec<Elem> = args.iter().map(|t| t[i]).collect();
            f.apply(op, &comp)
        })
        .collect()
}

fn product_on(factors: &[PartialAlgebra], elems: Vec<Vec<Elem>>) -> Result<PartialAlgebra> {
    let sig = common_signature(factors)?.clone();
    let index: HashMap<&Vec<Elem>, Elem> = elems.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut tables: BTreeMap<String, Table> = BTreeMap::new();
    for (op, arity) in sig.ops() {
        let table = tables.entry(op.to_string()).or_default();
        for args in tuples(elems.len(), arity) {
            let arg_tuples: Vec<&Vec<Elem>> = args.iter().map(|&e| &elems[e]).collect();
            if let Some(res) = apply_tuple(factors, op, &arg_tuples) {
                if let Some(&r) = index.get(&res) {
                    table.insert(args, r);
                }
            }
        }
    }
    let names = elems
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t
                .iter()
                .enumerate()
                .map(|(i, &e)| factors[i].name(e))
                .collect();
            tuple_name(&parts)
        })
        .collect();
    PartialAlgebra::new(sig, names, tables)
}

/// The direct product; an operation is defined on a tuple exactly when it
/// is defined in every factor.
pub fn direct_product(factors: &[PartialAlgebra]) -> Result<PartialAlgebra> {
    common_signature(factors)?;
    let elems: Vec<Vec<Elem>> = factors
        .iter()
        .map(|f| f.elements())
        .multi_cartesian_product()
        .collect();
    product_on(factors, elems)
}

/// The closure of the direct product, computed without building the full
/// product. Agrees with `algebraic_closure(&direct_product(factors)?)` up to
/// the order of the carrier.
pub fn product_closure(factors: &[PartialAlgebra]) -> Result<PartialAlgebra> {
    let sig = common_signature(factors)?.clone();
    let mut elems: Vec<Vec<Elem>> = Vec::new();
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    loop {
        let mut fresh = Vec::new();
        for (op, arity) in sig.ops() {
            for args in tuples(elems.len(), arity) {
                let arg_tuples: Vec<&Vec<Elem>> = args.iter().map(|&e| &elems[e]).collect();
                if let Some(res) = apply_tuple(factors, op, &arg_tuples) {
                    if !seen.contains(&res) {
                        seen.insert(res.clone());
                        fresh.push(res);
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        elems.extend(fresh);
    }
    if elems.is_empty() {
        return Err(Error::Empty("product closure has no constants".into()));
    }
    product_on(factors, elems)
}

/// The least subalgebra: everything reachable from the constants.
pub fn algebraic_closure(a: &PartialAlgebra) -> PartialAlgebra {
    let keep: BTreeSet<Elem> = a
        .heights()
        .iter()
        .enumerate()
        .filter_map(|(e, h)| h.map(|_| e))
        .collect();
    a.induced(&keep).expect("constants are always reachable")
}

/// Whether every element is reachable from the constants.
pub fn is_finitely_generated(a: &PartialAlgebra) -> bool {
    a.heights().iter().all(Option::is_some)
}

/// Whether `sub` is a subalgebra of `a`, matching elements by name: the
/// carrier is included and every operation on `sub` agrees with `a` under
/// strong equality.
pub fn is_subalgebra(sub: &PartialAlgebra, a: &PartialAlgebra) -> bool {
    if sub.signature != a.signature {
        return false;
    }
    let Some(emb) = sub
        .names
        .iter()
        .map(|n| a.element(n))
        .collect::<Option<Vec<_>>>()
    else {
        return false;
    };
    let back: HashMap<Elem, Elem> = emb.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    sub.signature.ops().all(|(op, arity)| {
        tuples(sub.len(), arity).all(|args| {
            let image: Vec<Elem> = args.iter().map(|&e| emb[e]).collect();
            match (sub.apply(op, &args), a.apply(op, &image)) {
                (Some(r), Some(s)) => back.get(&s) == Some(&r),
                (None, None) => true,
                _ => false,
            }
        })
    })
}

/// The unique homomorphism `t^a ↦ t^b` out of a finitely generated algebra,
/// or `None` when that assignment is not a well-defined homomorphism.
pub fn unique_hom_from_fg(a: &PartialAlgebra, b: &PartialAlgebra) -> Result<Option<Vec<Elem>>> {
    if a.signature != b.signature {
        return Err(Error::Sig(
            "homomorphism between different signatures".into(),
        ));
    }
    if !is_finitely_generated(a) {
        return Err(Error::NotFinitelyGenerated);
    }
    let mut phi: Vec<Option<Elem>> = vec![None; a.len()];
    loop {
        let mut changed = false;
        for (op, table) in &a.tables {
            for (args, &res) in table {
                let Some(image) = args.iter().map(|&e| phi[e]).collect::<Option<Vec<_>>>() else {
                    continue;
                };
                let Some(target) = b.apply(op, &image) else {
                    return Ok(None);
                };
                match phi[res] {
                    Some(t) if t != target => return Ok(None),
                    Some(_) => {}
                    None => {
                        phi[res] = Some(target);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(Some(
        phi.into_iter()
            .map(|e| e.expect("finitely generated"))
            .collect(),
    ))
}

/// The first difference between two algebras compared by element names.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraDiff {
    Signature,
    Element {
        name: String,
        only_in: Side,
    },
    Entry {
        op: String,
        args: Vec<String>,
        left: Option<String>,
        right: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Compares carriers and tables by element names.
pub fn diff_by_names(left: &PartialAlgebra, right: &PartialAlgebra) -> Option<AlgebraDiff> {
    if left.signature != right.signature {
        return Some(AlgebraDiff::Signature);
    }
    for (x, y, side) in [(left, right, Side::Left), (right, left, Side::Right)] {
        if let Some(n) = x.names.iter().find(|n| y.element(n).is_none()) {
            return Some(AlgebraDiff::Element {
                name: n.clone(),
                only_in: side,
            });
        }
    }
    let to_right: Vec<Elem> = left
        .names
        .iter()
        .map(|n| right.element(n).unwrap())
        .collect();
    for (op, arity) in left.signature.ops() {
        for args in tuples(left.len(), arity) {
            let image: Vec<Elem> = args.iter().map(|&e| to_right[e]).collect();
            let l = left.apply(op, &args).map(|e| left.name(e).to_string());
            let r = right.apply(op, &image).map(|e| right.name(e).to_string());
            if l != r {
                let args = args.iter().map(|&e| left.name(e).to_string()).collect();
                return Some(AlgebraDiff::Entry {
                    op: op.to_string(),
                    args,
                    left: l,
                    right: r,
                });
            }
        }
    }
    None
}

#[derive(Serialize, Deserialize)]
struct AlgebraRepr {
    signature: BTreeMap<String, usize>,
    carrier: Vec<String>,
    tables: BTreeMap<String, Vec<Vec<String>>>,
}

impl Serialize for PartialAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let tables = self
            .tables
            .iter()
            .map(|(op, table)| {
                let rows = table
                    .iter()
                    .map(|(args, res)| {
                        args.iter()
                            .chain([res])
                            .map(|&e| self.names[e].clone())
                            .collect()
                    })
                    .collect();
                (op.clone(), rows)
            })
            .collect();
        AlgebraRepr {
            signature: self.signature.0.clone(),
            carrier: self.names.clone(),
            tables,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartialAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = AlgebraRepr::deserialize(d)?;
        let entries: Vec<(&str, Vec<&str>, &str)> = r
            .tables
            .iter()
            .flat_map(|(op, rows)| {
                rows.iter().map(move |row| match row.split_last() {
                    Some((res, args)) => Ok((
                        op.as_str(),
                        args.iter().map(String::as_str).collect(),
                        res.as_str(),
                    )),
                    None => Err(Error::Invalid(format!("empty row in table `{op}`"))),
                })
            })
            .collect::<Result<_>>()
            .map_err(serde::de::Error::custom)?;
        PartialAlgebra::from_named(Signature(r.signature.clone()), r.carrier.clone(), entries)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::alphabet;

    fn sig_a() -> Signature {
        Signature::language(&alphabet(["a"]).unwrap())
    }

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    /// Carrier {0,1,2}, ε = 0, a: 0 ↦ 1.
    fn three() -> PartialAlgebra {
        PartialAlgebra::from_named(
            sig_a(),
            names(&["0", "1", "2"]),
            [("ε", vec![], "0"), ("a", vec!["0"], "1")],
        )
        .unwrap()
    }

    #[test]
    fn construction_checks() {
        assert!(PartialAlgebra::from_named(sig_a(), vec![], []).is_err());
        assert!(PartialAlgebra::from_named(sig_a(), names(&["0"]), []).is_err());
        assert!(
            PartialAlgebra::from_named(sig_a(), names(&["0", "0"]), [("ε", vec![], "0")]).is_err()
        );
        assert!(PartialAlgebra::from_named(sig_a(), names(&["0"]), [("ε", vec![], "1")]).is_err());
        assert!(PartialAlgebra::from_named(
            sig_a(),
            names(&["0"]),
            [("ε", vec![], "0"), ("z", vec!["0"], "0")]
        )
        .is_err());
    }

    #[test]
    fn closure_example() {
        let a = three();
        let ac = algebraic_closure(&a);
        assert_eq!(ac.names(), ["0", "1"]);
        assert!(!is_finitely_generated(&a));
        assert!(is_finitely_generated(&ac));
        assert_eq!(algebraic_closure(&ac), ac);
        assert!(is_subalgebra(&ac, &a));
        assert_eq!(a.heights(), vec![Some(0), Some(1), None]);
    }

    #[test]
    fn evaluation() {
        let a = three();
        assert_eq!(a.eval(&Term::epsilon()).unwrap(), Some(0));
        assert_eq!(a.eval(&Term::parse("(ε)a").unwrap()).unwrap(), Some(1));
        assert_eq!(a.eval(&Term::parse("((ε)a)a").unwrap()).unwrap(), None);
        assert!(matches!(
            a.eval(&Term::parse("(ε)b").unwrap()),
            Err(Error::Sig(_))
        ));
        assert!(matches!(
            a.eval(&Term::parse("(ε,ε)a").unwrap()),
            Err(Error::Sig(_))
        ));
        assert!(matches!(
            a.eval(&Term::parse("(x0)a").unwrap()),
            Err(Error::Var(_))
        ));
        assert_eq!(
            a.eval_with(&Term::parse("(x0)a").unwrap(), &[0]).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn homomorphism_examples() {
        let a = three();
        let id: Vec<Elem> = a.elements().collect();
        assert!(check_homomorphism(&id, &a, &a, true).unwrap());

        // A two-element algebra whose operation tells its elements apart.
        let two = PartialAlgebra::from_named(
            sig_a(),
            names(&["p", "q"]),
            [("ε", vec![], "p"), ("a", vec!["p"], "q")],
        )
        .unwrap();
        assert!(!check_homomorphism(&[0, 0], &two, &two, false).unwrap());
        assert!(matches!(
            check_homomorphism(&[0], &two, &two, false),
            Err(Error::Map(_))
        ));
        let v = hom_violation(&[0, 0], &two, &two, false, None)
            .unwrap()
            .unwrap();
        assert_eq!(v.op, "a");
        assert_eq!(v.args, ["p"]);
    }

    #[test]
    fn weak_versus_strong() {
        let one = PartialAlgebra::from_named(
            sig_a(),
            names(&["0"]),
            [("ε", vec![], "0"), ("a", vec!["0"], "0")],
        )
        .unwrap();
        let bare =
            PartialAlgebra::from_named(sig_a(), names(&["0"]), [("ε", vec![], "0")]).unwrap();
        assert!(check_homomorphism(&[0], &bare, &one, false).unwrap());
        assert!(!check_homomorphism(&[0], &bare, &one, true).unwrap());
        let frontier = BTreeSet::from([0]);
        assert!(hom_violation(&[0], &bare, &one, true, Some(&frontier))
            .unwrap()
            .is_none());
        assert_eq!(unique_hom_from_fg(&one, &bare).unwrap(), None);
        assert_eq!(unique_hom_from_fg(&bare, &one).unwrap(), Some(vec![0]));
        assert!(matches!(
            unique_hom_from_fg(&three(), &one),
            Err(Error::NotFinitelyGenerated)
        ));
    }

    #[test]
    fn binary_products() {
        let sig = Signature::new([("ε", 0), ("f", 2)]);
        let z2 = PartialAlgebra::from_named(
            sig.clone(),
            names(&["0", "1"]),
            [
                ("ε", vec![], "1"),
                ("f", vec!["0", "0"], "0"),
                ("f", vec!["0", "1"], "1"),
                ("f", vec!["1", "0"], "1"),
                ("f", vec!["1", "1"], "0"),
            ],
        )
        .unwrap();
        let partial = PartialAlgebra::from_named(
            sig.clone(),
            names(&["u", "v"]),
            [("ε", vec![], "u"), ("f", vec!["u", "u"], "v")],
        )
        .unwrap();
        let p = direct_product(&[z2.clone(), partial.clone()]).unwrap();
        assert_eq!(p.len(), 4);
        let t = Term::parse("(ε,ε)f").unwrap();
        assert_eq!(p.name(p.eval(&t).unwrap().unwrap()), "(0,v)");
        let tt = Term::parse("((ε,ε)f,ε)f").unwrap();
        assert_eq!(p.eval(&tt).unwrap(), None);
        let closure = product_closure(&[z2.clone(), partial]).unwrap();
        assert!(diff_by_names(&closure, &algebraic_closure(&p)).is_none());
        assert_eq!(closure.names(), ["(1,u)", "(0,v)"]);

        let point = PartialAlgebra::from_named(
            sig,
            names(&["*"]),
            [("ε", vec![], "*"), ("f", vec!["*", "*"], "*")],
        )
        .unwrap();
        let q = direct_product(&[z2.clone(), point]).unwrap();
        assert!(diff_by_names(&q.renamed(|e, _| z2.name(e).to_string()).unwrap(), &z2).is_none());
    }

    #[test]
    fn json_and_dot() {
        let a = three();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"signature":{"a":1,"ε":0},"carrier":["0","1","2"],"tables":{"a":[["0","1"]],"ε":[["0"]]}}"#
        );
        let back: PartialAlgebra = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        let dot = a.to_dot();
        assert!(dot.contains("n0 -> n1 [label=\"a\"]"));
        assert_eq!(dot.matches("->").count(), 1);
    }
}
