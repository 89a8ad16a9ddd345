//! Congruences, quotients and subdirect decompositions.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use itertools::Itertools;

use crate::algebra::{Elem, PartialAlgebra};
use crate::error::{Error, Result};

/// An equivalence on a carrier, stored as the block index of each element.
/// Blocks are numbered in order of their least element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Congruence {
    block_of: Vec<usize>,
    blocks: usize,
}

impl Congruence {
    /// Normalises arbitrary block labels.
    pub fn from_labels<K: Eq + Hash>(labels: impl IntoIterator<Item = K>) -> Self {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let block_of: Vec<usize> = labels
            .into_iter()
            .map(|k| {
                let next = ids.len();
                *ids.entry(k).or_insert(next)
            })
            .collect();
        Congruence {
            blocks: ids.len(),
            block_of,
        }
    }

    /// Builds the partition from explicit blocks over `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<Elem>]) -> Result<Self> {
        let mut label = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                match label.get_mut(e) {
                    Some(slot @ None) => *slot = Some(b),
                    Some(Some(_)) => return Err(Error::Map(format!("element {e} in two blocks"))),
                    None => {
                        return Err(Error::Map(format!("element {e} outside a carrier of {n}")))
                    }
                }
            }
        }
        let labels = label
            .into_iter()
            .enumerate()
            .map(|(e, l)| l.ok_or_else(|| Error::Map(format!("element {e} in no block"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Congruence::from_labels(labels))
    }

    /// The kernel `{(a,b) : f(a) = f(b)}` of a function on `a`.
    pub fn kernel<K: Eq + Hash>(a: &PartialAlgebra, f: impl Fn(Elem) -> K) -> Self {
        Congruence::from_labels(a.elements().map(f))
    }

    pub fn identity(n: usize) -> Self {
        Congruence {
            block_of: (0..n).collect(),
            blocks: n,
        }
    }

    pub fn total(n: usize) -> Self {
        Congruence {
            block_of: vec![0; n],
            blocks: 1.min(n),
        }
    }

    pub fn block(&self, e: Elem) -> usize {
        self.block_of[e]
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn carrier_len(&self) -> usize {
        self.block_of.len()
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// Members of each block, in element order.
    pub fn blocks(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (e, &b) in self.block_of.iter().enumerate() {
            out[b].push(e);
        }
        out
    }

    /// The restriction to the elements `keep`, renumbered in order.
    pub fn restrict(&self, keep: &[Elem]) -> Self {
        Congruence::from_labels(keep.iter().map(|&e| self.block_of[e]))
    }

    fn check_carrier(&self, a: &PartialAlgebra) -> Result<()> {
        if self.block_of.len() != a.len() {
            return Err(Error::Map(format!(
                "partition of {} elements on a carrier of {}",
                self.block_of.len(),
                a.len()
            )));
        }
        Ok(())
    }
}

/// Whether `theta` has the substitution property on `a`: related argument
/// tuples with both sides defined give related results. Strongly, related
/// argument tuples must also agree on definedness.
pub fn check_congruence(theta: &Congruence, a: &PartialAlgebra, strong: bool) -> Result<bool> {
    theta.check_carrier(a)?;
    let blocks = theta.blocks();
    for (op, arity) in a.signature().ops() {
        if arity == 0 {
            continue;
        }
        let table = a.table(op).expect("every operator has a table");
        for args in table.keys() {
            let related = args.iter().map(|&e| blocks[theta.block(e)].iter().copied());
            for other in related.multi_cartesian_product() {
                match (a.apply(op, args), a.apply(op, &other)) {
                    (Some(x), Some(y)) if !theta.related(x, y) => return Ok(false),
                    (Some(_), None) if strong => return Ok(false),
                    _ => {}
                }
            }
        }
    }
    Ok(true)
}

fn block_name(a: &PartialAlgebra, members: &[Elem]) -> String {
    format!("[{}]", members.iter().map(|&e| a.name(e)).join("|"))
}

/// The quotient `a/θ`. An operation is defined on a tuple of blocks when
/// some choice of representatives is in its domain.
pub fn quotient(a: &PartialAlgebra, theta: &Congruence) -> Result<PartialAlgebra> {
    if !check_congruence(theta, a, false)? {
        return Err(Error::Congruence("substitution property fails".into()));
    }
    let blocks = theta.blocks();
    let names = blocks.iter().map(|m| block_name(a, m)).collect();
    let mut tables: BTreeMap<String, BTreeMap<Vec<Elem>, Elem>> = BTreeMap::new();
    for (op, _) in a.signature().ops() {
        let t = tables.entry(op.to_string()).or_default();
        for (args, &res) in a.table(op).expect("every operator has a table") {
            let key: Vec<Elem> = args.iter().map(|&e| theta.block(e)).collect();
            t.insert(key, theta.block(res));
        }
    }
    PartialAlgebra::new(a.signature().clone(), names, tables)
}

/// Whether `thetas` is a subdirect decomposition of `a`: the natural map
/// into the product of the quotients is injective and a strong
/// homomorphism, so `a` is isomorphic to its image subalgebra.
pub fn check_subdirect(a: &PartialAlgebra, thetas: &[Congruence]) -> Result<bool> {
    if thetas.is_empty() {
        return Err(Error::Congruence("empty decomposition".into()));
    }
    let quotients = thetas
        .iter()
        .map(|t| quotient(a, t))
        .collect::<Result<Vec<_>>>()?;
    let image = |e: Elem| -> Vec<usize> { thetas.iter().map(|t| t.block(e)).collect() };
    if !a.elements().map(image).all_unique() {
        return Ok(false);
    }
    for (op, arity) in a.signature().ops() {
        for args in (0..arity).map(|_| a.elements()).multi_cartesian_product() {
            let in_product: Option<Vec<usize>> = quotients
                .iter()
                .zip(thetas)
                .map(|(q, t)| {
                    let blocks: Vec<usize> = args.iter().map(|&e| t.block(e)).collect();
                    q.apply(op, &blocks)
                })
                .collect();
            let ok = match (a.apply(op, &args), in_product) {
                (Some(r), Some(p)) => image(r) == p,
                (None, None) => true,
                _ => false,
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_homomorphism, Signature};
    use crate::symbol::alphabet;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    /// Two elements swapped by a total `s`.
    fn swap() -> PartialAlgebra {
        PartialAlgebra::from_named(
            Signature::language(&alphabet(["s"]).unwrap()),
            names(&["p", "q"]),
            [
                ("ε", vec![], "p"),
                ("s", vec!["p"], "q"),
                ("s", vec!["q"], "p"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn partitions() {
        let t = Congruence::from_blocks(3, &[vec![2, 0], vec![1]]).unwrap();
        assert_eq!(t.blocks(), vec![vec![0, 2], vec![1]]);
        assert!(Congruence::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(Congruence::from_blocks(2, &[vec![0, 1], vec![1]]).is_err());
        assert_eq!(Congruence::kernel(&swap(), |_| 0), Congruence::total(2));
    }

    #[test]
    fn trivial_congruences() {
        let a = swap();
        assert!(check_congruence(&Congruence::identity(2), &a, true).unwrap());
        assert!(check_congruence(&Congruence::total(2), &a, true).unwrap());
        let q = quotient(&a, &Congruence::identity(2)).unwrap();
        assert_eq!(q.names(), ["[p]", "[q]"]);
        assert_eq!(q.apply("s", &[0]), Some(1));
        let one = quotient(&a, &Congruence::total(2)).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.apply("s", &[0]), Some(0));
        assert!(check_homomorphism(&[0, 0], &a, &one, true).unwrap());
    }

    #[test]
    fn existential_definedness() {
        // s is defined only at p; merging p and q makes it defined on the block.
        let a = PartialAlgebra::from_named(
            Signature::language(&alphabet(["s"]).unwrap()),
            names(&["p", "q"]),
            [("ε", vec![], "p"), ("s", vec!["p"], "q")],
        )
        .unwrap();
        let total = Congruence::total(2);
        assert!(check_congruence(&total, &a, false).unwrap());
        assert!(!check_congruence(&total, &a, true).unwrap());
        let q = quotient(&a, &total).unwrap();
        assert_eq!(q.apply("s", &[0]), Some(0));
        assert!(!check_homomorphism(&[0, 0], &a, &q, true).unwrap());
        assert!(check_homomorphism(&[0, 0], &a, &q, false).unwrap());
    }

    #[test]
    fn not_a_congruence() {
        // ε ↦ 0, s: 0 ↦ 1, 2 ↦ 2; relating 0 with 2 breaks substitution.
        let a = PartialAlgebra::from_named(
            Signature::language(&alphabet(["s"]).unwrap()),
            names(&["0", "1", "2"]),
            [
                ("ε", vec![], "0"),
                ("s", vec!["0"], "1"),
                ("s", vec!["2"], "2"),
            ],
        )
        .unwrap();
        let t = Congruence::from_blocks(3, &[vec![0, 2], vec![1]]).unwrap();
        assert!(!check_congruence(&t, &a, false).unwrap());
        assert!(matches!(quotient(&a, &t), Err(Error::Congruence(_))));
    }

    #[test]
    fn subdirect_examples() {
        let a = swap();
        assert!(check_subdirect(&a, &[Congruence::identity(2)]).unwrap());
        let total = Congruence::total(2);
        assert!(!check_subdirect(&a, &[total.clone(), total]).unwrap());
    }
}
