//! Equality and canonical forms in the monoid of vector operations.
//!
//! Two operations commute when their non-ε parts sit in disjoint components.
//! Product-equal words are exactly those related by a chain of swaps of
//! adjacent commuting operations.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::vector::{VectorOp, VectorString};

/// Longest word [`commutation_class`] accepts by default.
pub const DEFAULT_CLASS_LIMIT: usize = 10;

fn check_dims(a: &VectorOp, b: &VectorOp) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::Dim(format!("{a:?} and {b:?}")));
    }
    Ok(())
}

/// Distinct operations with disjoint supports.
pub fn independent(a: &VectorOp, b: &VectorOp) -> Result<bool> {
    check_dims(a, b)?;
    Ok(a != b && (0..a.dim()).all(|i| !(a.touches(i) && b.touches(i))))
}

fn commute(a: &VectorOp, b: &VectorOp) -> bool {
    independent(a, b).unwrap_or(false)
}

fn product(word: &[VectorOp], dim: usize) -> VectorString {
    word.iter()
        .fold(VectorString::epsilon(dim), |v, op| v.then(op))
}

fn word_dim(u: &[VectorOp], v: &[VectorOp]) -> Result<Option<usize>> {
    let mut dims = u.iter().chain(v).map(VectorOp::dim);
    let Some(first) = dims.next() else {
        return Ok(None);
    };
    match dims.find(|&d| d != first) {
        Some(d) => Err(Error::Dim(format!(
            "operations of dimension {first} and {d}"
        ))),
        None => Ok(Some(first)),
    }
}

/// Whether the two words have the same product.
pub fn monoid_equal(u: &[VectorOp], v: &[VectorOp]) -> Result<bool> {
    Ok(match word_dim(u, v)? {
        None => true,
        Some(dim) => product(u, dim) == product(v, dim),
    })
}

/// The lexicographically least word with the same product as `u`.
///
/// Repeatedly emits the least operation that commutes with everything before
/// it in the remaining word.
pub fn normal_form(u: &[VectorOp]) -> Vec<VectorOp> {
    let mut rest: Vec<VectorOp> = u.to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let pick = (0..rest.len())
            .filter(|&j| rest[..j].iter().all(|prev| commute(prev, &rest[j])))
            .min_by(|&i, &j| rest[i].cmp(&rest[j]))
            .expect("the first operation is always available");
        out.push(rest.remove(pick));
    }
    out
}

/// All words reachable from `u` by swapping adjacent commuting operations.
///
/// The class can have up to `|u|!` members, so words longer than `limit`
/// are refused.
pub fn commutation_class(u: &[VectorOp], limit: usize) -> Result<BTreeSet<Vec<VectorOp>>> {
    if u.len() > limit {
        return Err(Error::Limit(format!(
            "word of length {} exceeds {limit}",
            u.len()
        )));
    }
    let mut seen = BTreeSet::from([u.to_vec()]);
    let mut queue = VecDeque::from([u.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 1..w.len() {
            if commute(&w[i - 1], &w[i]) {
                let mut next = w.clone();
                next.swap(i - 1, i);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen)
}
