//! Dependence graphs, irreducibility, and the bijection `psi_pi` from codes
//! `C(pi)` onto trees `E(pi)` together with its inverse.
//!
//! Blocks are numbered from 1 in order of their maxima, so block number `i`
//! is `pi.block(i - 1)` and block 1 is always `{1}`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::partitions::{CTuple, SetPartition};
use crate::splice::{splice, unsplice};
use crate::trees::{enumerate_increasing_trees, Forest, ForestComponent, RootedTree, Vertex};

/// The directed graph on the blocks of a tree's vertex set in which block
/// `i` points to the block of the decomposition-part root holding its
/// maximum, whenever that maximum is off the chain to `anchor`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependenceGraph {
    pub anchor: Vertex,
    /// Block numbers present in the tree, increasing.
    pub nodes: Vec<usize>,
    /// `(from, to)` pairs sorted by `from`; loops allowed.
    pub edges: Vec<(usize, usize)>,
}

impl DependenceGraph {
    /// The target of the edge leaving `node`, if any.
    pub fn successor(&self, node: usize) -> Option<usize> {
        self.edges.iter().find(|e| e.0 == node).map(|e| e.1)
    }

    /// Weak components, each sorted, ordered by smallest block number.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let pos: BTreeMap<usize, usize> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(p, &n)| (n, p))
            .collect();
        let mut dsu = DisjointSets::new(self.nodes.len());
        for &(a, b) in &self.edges {
            dsu.union(pos[&a], pos[&b]);
        }
        dsu.groups()
            .into_iter()
            .map(|g| g.into_iter().map(|p| self.nodes[p]).collect())
            .collect()
    }

    /// The weak component containing `node`.
    pub fn component_of(&self, node: usize) -> Option<Vec<usize>> {
        self.components().into_iter().find(|c| c.contains(&node))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Checks that every node but `root` has exactly one outgoing edge and
    /// following edges from any node reaches `root`.
    pub fn is_in_tree_rooted_at(&self, root: usize) -> bool {
        if self.successor(root).is_some() || self.edges.len() + 1 != self.nodes.len() {
            return false;
        }
        self.nodes.iter().all(|&n| {
            let mut cur = n;
            for _ in 0..self.nodes.len() {
                if cur == root {
                    return true;
                }
                match self.successor(cur) {
                    Some(next) => cur = next,
                    None => return false,
                }
            }
            cur == root
        })
    }

    /// Union of the blocks named in `nodes`.
    pub fn vertex_set(pi: &SetPartition, nodes: &[usize]) -> BTreeSet<Vertex> {
        nodes
            .iter()
            .flat_map(|&n| pi.block(n - 1).iter().copied())
            .collect()
    }
}

/// Checks that every block of `pi` inside `t` forms an ancestor chain.
pub fn require_pi_increasing(t: &RootedTree, pi: &SetPartition) -> Result<Vec<usize>> {
    t.require_increasing()?;
    let present = pi.compatible_blocks(&t.vertex_set())?;
    for &i in &present {
        let b = pi.block(i);
        for w in b.windows(2) {
            if !t.is_ancestor(w[0], w[1])? {
                return Err(Error::NotSubchain { block: b.to_vec() });
            }
        }
    }
    Ok(present)
}

pub fn is_pi_increasing(t: &RootedTree, pi: &SetPartition) -> bool {
    require_pi_increasing(t, pi).is_ok()
}

pub fn dependence_graph(t: &RootedTree, v: Vertex, pi: &SetPartition) -> Result<DependenceGraph> {
    let present = require_pi_increasing(t, pi)?;
    let d = t.v_decomposition(v)?;
    let on_chain: BTreeSet<Vertex> = d.chain.iter().copied().collect();
    let mut edges = Vec::new();
    for &i in &present {
        let mu = pi.max_of(i);
        if on_chain.contains(&mu) {
            continue;
        }
        let part = d.part_index(mu).ok_or(Error::UnknownVertex(mu))?;
        let target = pi
            .block_index(d.chain[part])
            .expect("chain vertex lies in a present block");
        edges.push((i + 1, target + 1));
    }
    Ok(DependenceGraph {
        anchor: v,
        nodes: present.iter().map(|i| i + 1).collect(),
        edges,
    })
}

/// Whether the dependence graph of `t` at its maximum vertex is connected.
pub fn is_irreducible(t: &RootedTree, pi: &SetPartition) -> Result<bool> {
    Ok(dependence_graph(t, t.max_vertex(), pi)?.is_connected())
}

/// How a stage of the forward map joined two components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StageCase {
    /// `c_i` lay in `tau_1` or `tau_i`: `tau_i` was spliced into `tau_1`.
    Internal,
    /// `c_i` lay in a later `tau_j`: `tau_i` was spliced into `tau_j`.
    External,
}

/// The forest after one stage of the forward map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub stage: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<StageCase>,
    #[serde(flatten)]
    pub forest: Forest,
}

fn require_standard(pi: &SetPartition) -> Result<()> {
    pi.require_singleton_one()?;
    if pi.len() < 2 {
        return Err(Error::TooFewBlocks {
            need: 2,
            got: pi.len(),
        });
    }
    let ground = pi.ground_set();
    if ground.iter().copied().ne(1..=ground.len() as Vertex) {
        return Err(Error::MalformedPartition("ground set must be 1..=r".into()));
    }
    Ok(())
}

/// Runs the forward map, returning the forest after each of the stages
/// `1..=k`; the last stage holds the single output tree.
pub fn psi_trace(pi: &SetPartition, c: &CTuple) -> Result<Vec<Stage>> {
    require_standard(pi)?;
    c.validate(pi)?;
    let k = pi.len();
    // taus[l] is tau_{l+1}; None once it has been spliced away.
    let mut taus: Vec<Option<RootedTree>> = pi
        .blocks()
        .iter()
        .map(|b| RootedTree::chain(b.iter().copied()).map(Some))
        .collect::<Result<_>>()?;
    let mut nu: Vertex = 1;

    let snapshot = |taus: &[Option<RootedTree>], nu, stage, case| -> Result<Stage> {
        let components = taus
            .iter()
            .enumerate()
            .filter_map(|(l, t)| t.clone().map(|tree| ForestComponent { index: l + 1, tree }))
            .collect();
        Ok(Stage {
            stage,
            case,
            forest: Forest::new(components, nu)?,
        })
    };

    let mut stages = vec![snapshot(&taus, nu, 1, None)?];
    for i in 1..k - 1 {
        let ci = c.get(i + 1);
        let mu = pi.max_of(i);
        let tau_i = taus[i].take().expect("tau_i is present at its own stage");
        let tau_1 = taus[0].as_ref().expect("tau_1 is never removed");
        let case = if tau_1.contains(ci) || tau_i.contains(ci) {
            taus[0] = Some(splice(&tau_i, mu, tau_1, nu)?);
            nu = ci;
            StageCase::Internal
        } else {
            let j = (i + 1..k)
                .find(|&j| taus[j].as_ref().is_some_and(|t| t.contains(ci)))
                .ok_or_else(|| Error::Internal(format!("vertex {ci} is in no component")))?;
            let tau_j = taus[j].as_ref().expect("found above");
            taus[j] = Some(splice(&tau_i, mu, tau_j, ci)?);
            StageCase::External
        };
        stages.push(snapshot(&taus, nu, i + 1, Some(case))?);
    }
    let tau_k = taus[k - 1]
        .take()
        .expect("tau_k survives to the last stage");
    let tau_1 = taus[0].take().expect("tau_1 is never removed");
    let t = splice(&tau_k, pi.max_of(k - 1), &tau_1, nu)?;
    taus[0] = Some(t);
    stages.push(snapshot(&taus, nu, k, None)?);
    Ok(stages)
}

/// The tree `psi_pi(c)` in `E(pi)`.
pub fn psi_forward(pi: &SetPartition, c: &CTuple) -> Result<RootedTree> {
    let mut stages = psi_trace(pi, c)?;
    let last = stages.pop().expect("at least one stage");
    Ok(last
        .forest
        .components
        .into_iter()
        .next()
        .expect("one component")
        .tree)
}

/// Splits `t` at `v` along the component of `block` (0-based) in its
/// dependence graph at `v`.
fn split_component(
    t: &RootedTree,
    v: Vertex,
    block: usize,
    pi: &SetPartition,
) -> Result<(RootedTree, RootedTree, Vertex)> {
    let g = dependence_graph(t, v, pi)?;
    let comp = g
        .component_of(block + 1)
        .ok_or_else(|| Error::Internal(format!("block {} missing from graph", block + 1)))?;
    unsplice(t, v, &DependenceGraph::vertex_set(pi, &comp))
}

/// The unique code `c` with `psi_forward(pi, c) == t`.
pub fn psi_inverse(pi: &SetPartition, t: &RootedTree) -> Result<CTuple> {
    require_standard(pi)?;
    if t.vertex_set() != pi.ground_set() {
        return Err(Error::GroundSetMismatch);
    }
    require_pi_increasing(t, pi)?;
    let k = pi.len();

    let (tau_k, mut tau_1, mut nu) = split_component(t, t.max_vertex(), k - 1, pi)?;
    let mut others: BTreeMap<usize, RootedTree> = BTreeMap::from([(k - 1, tau_k)]);
    let mut code = vec![0; k - 2];

    for i in (1..k - 1).rev() {
        let mu = pi.max_of(i);
        if tau_1.contains(mu) {
            let (tau_i, rest, prev) = split_component(&tau_1, mu, i, pi)?;
            code[i - 1] = nu;
            nu = prev;
            tau_1 = rest;
            others.insert(i, tau_i);
        } else {
            let mut holders = others
                .iter()
                .filter(|(_, t)| t.contains(mu))
                .map(|(&j, _)| j);
            let j = holders
                .next()
                .ok_or_else(|| Error::Internal(format!("vertex {mu} is in no component")))?;
            debug_assert!(holders.next().is_none());
            let (tau_i, rest, anchor) = split_component(&others[&j], mu, i, pi)?;
            code[i - 1] = anchor;
            others.insert(j, rest);
            others.insert(i, tau_i);
        }
    }

    if tau_1 != RootedTree::singleton(1)? || nu != 1 {
        return Err(Error::Internal(
            "first component did not reduce to {1}".into(),
        ));
    }
    for (&j, tau) in &others {
        if *tau != RootedTree::chain(pi.block(j).iter().copied())? {
            return Err(Error::Internal(format!(
                "component {} is not a chain",
                j + 1
            )));
        }
    }
    Ok(CTuple::new(code))
}

/// Every tree in `E(pi)`: increasing trees on the ground set in which each
/// block is an ancestor chain.
pub fn enumerate_e(pi: &SetPartition) -> Result<impl Iterator<Item = RootedTree> + '_> {
    pi.require_singleton_one()?;
    Ok(enumerate_increasing_trees(pi.ground_set())?.filter(move |t| is_pi_increasing(t, pi)))
}

/// Builds a `pi`-increasing tree on `set` one vertex at a time in increasing
/// order, letting `pick(n)` choose among the `n` admissible fathers.
///
/// The first vertex of each block may hang below any placed vertex; later
/// ones must sit below the previous vertex of their block. Every
/// `pi`-increasing tree on `set` arises for some sequence of picks.
pub fn grow_pi_increasing(
    pi: &SetPartition,
    set: &BTreeSet<Vertex>,
    mut pick: impl FnMut(usize) -> usize,
) -> Result<RootedTree> {
    pi.compatible_blocks(set)?;
    let mut order = set.iter().copied();
    let root = order.next().ok_or(Error::EmptySet)?;
    let mut placed = vec![root];
    let mut father: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut prev_in_block: BTreeMap<usize, Vertex> = BTreeMap::new();
    prev_in_block.insert(pi.block_index(root).expect("compatible"), root);

    let below = |father: &BTreeMap<Vertex, Vertex>, top: Vertex, w: Vertex| {
        let mut cur = w;
        loop {
            if cur == top {
                return true;
            }
            match father.get(&cur) {
                Some(&f) => cur = f,
                None => return false,
            }
        }
    };

    for x in order {
        let b = pi.block_index(x).expect("compatible");
        let candidates: Vec<Vertex> = match prev_in_block.get(&b) {
            Some(&p) => placed
                .iter()
                .copied()
                .filter(|&w| below(&father, p, w))
                .collect(),
            None => placed.clone(),
        };
        let choice = pick(candidates.len());
        let f = *candidates
            .get(choice)
            .ok_or_else(|| Error::Internal(format!("pick {choice} out of {}", candidates.len())))?;
        father.insert(x, f);
        placed.push(x);
        prev_in_block.insert(b, x);
    }
    RootedTree::new(root, father)
}
