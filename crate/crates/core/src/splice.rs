//! Splicing two increasing trees along their marked chains, and undoing it.
//!
//! `splice(t1, v1, t2, v2)` is the tree whose `v1`-decomposition is the
//! `v1`-decomposition of `t1` merged with the `v2`-decomposition of `t2`,
//! parts interleaved by increasing chain root. Since `v1 > v2`, `v1` stays the
//! last vertex of the merged chain.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::trees::{reassemble_parts, RootedTree, Vertex};

pub fn splice(t1: &RootedTree, v1: Vertex, t2: &RootedTree, v2: Vertex) -> Result<RootedTree> {
    t1.require_increasing()?;
    t2.require_increasing()?;
    if !t1.contains(v1) {
        return Err(Error::UnknownVertex(v1));
    }
    if !t2.contains(v2) {
        return Err(Error::UnknownVertex(v2));
    }
    if v1 <= v2 {
        return Err(Error::SpliceOrder { v1, v2 });
    }
    let (small, large) = if t1.len() <= t2.len() {
        (t1, t2)
    } else {
        (t2, t1)
    };
    if let Some(v) = small.vertices().find(|&v| large.contains(v)) {
        return Err(Error::Overlap(v));
    }

    let d1 = t1.v_decomposition(v1)?;
    let d2 = t2.v_decomposition(v2)?;
    let mut merged: Vec<(Vertex, &RootedTree)> = d1
        .chain
        .iter()
        .copied()
        .zip(&d1.parts)
        .chain(d2.chain.iter().copied().zip(&d2.parts))
        .collect();
    merged.sort_by_key(|&(a, _)| a);
    let chain: Vec<Vertex> = merged.iter().map(|&(a, _)| a).collect();
    let parts: Vec<RootedTree> = merged.into_iter().map(|(_, p)| p.clone()).collect();
    debug_assert_eq!(chain.last(), Some(&v1));
    reassemble_parts(&chain, &parts)
}

/// Splits `t` into `(t1, t2, v2)` with `splice(t1, v1, t2, v2) == t` and
/// `V(t1) == v1_set`.
///
/// Every part of the `v1`-decomposition of `t` must lie entirely inside or
/// entirely outside `v1_set`. `v2` is the first vertex outside `v1_set` met
/// on the way from `v1` up to the root.
pub fn unsplice(
    t: &RootedTree,
    v1: Vertex,
    v1_set: &BTreeSet<Vertex>,
) -> Result<(RootedTree, RootedTree, Vertex)> {
    t.require_increasing()?;
    if !t.contains(v1) {
        return Err(Error::UnknownVertex(v1));
    }
    if !v1_set.contains(&v1) {
        return Err(Error::InvalidSplit { root: v1 });
    }
    if let Some(&v) = v1_set.iter().find(|&&v| !t.contains(v)) {
        return Err(Error::UnknownVertex(v));
    }
    if v1_set.len() == t.len() {
        return Err(Error::EmptySet);
    }

    let d = t.v_decomposition(v1)?;
    let mut first = (Vec::new(), Vec::new());
    let mut second = (Vec::new(), Vec::new());
    for (&a, part) in d.chain.iter().zip(&d.parts) {
        let inside = part.vertices().filter(|v| v1_set.contains(v)).count();
        let side = if inside == part.len() {
            &mut first
        } else if inside == 0 {
            &mut second
        } else {
            return Err(Error::InvalidSplit { root: a });
        };
        side.0.push(a);
        side.1.push(part.clone());
    }
    let v2 = *second
        .0
        .last()
        .expect("complement is nonempty and covered by parts");
    let t1 = reassemble_parts(&first.0, &first.1)?;
    let t2 = reassemble_parts(&second.0, &second.1)?;
    Ok((t1, t2, v2))
}
