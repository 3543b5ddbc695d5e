//! Labelled rooted trees stored as father maps.
//!
//! Labels are arbitrary distinct positive integers, so subtrees carved out of a
//! larger tree keep their original labels. Sons are unordered: two trees are
//! equal exactly when their father maps are equal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub struct RootedTree {
    root: Vertex,
    father: BTreeMap<Vertex, Vertex>,
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    vertices: Vec<Vertex>,
    father: BTreeMap<Vertex, Vertex>,
}

impl From<RootedTree> for TreeJson {
    fn from(t: RootedTree) -> Self {
        TreeJson {
            vertices: t.vertices().collect(),
            father: t.father,
        }
    }
}

impl TryFrom<TreeJson> for RootedTree {
    type Error = Error;

    fn try_from(j: TreeJson) -> Result<Self> {
        let set: BTreeSet<Vertex> = j.vertices.iter().copied().collect();
        if set.len() != j.vertices.len() {
            return Err(Error::MalformedTree("duplicate vertex".into()));
        }
        let roots: Vec<Vertex> = set
            .iter()
            .copied()
            .filter(|v| !j.father.contains_key(v))
            .collect();
        if roots.len() != 1 {
            return Err(Error::MalformedTree(format!(
                "expected exactly one root, found {}",
                roots.len()
            )));
        }
        if let Some(v) = j.father.keys().find(|v| !set.contains(v)) {
            return Err(Error::MalformedTree(format!(
                "father given for {v}, which is not listed in vertices"
            )));
        }
        RootedTree::new(roots[0], j.father)
    }
}

impl RootedTree {
    /// Validates that `father` describes a tree rooted at `root`: every father
    /// is a vertex and following fathers always reaches the root.
    pub fn new(root: Vertex, father: BTreeMap<Vertex, Vertex>) -> Result<Self> {
        if root == 0 || father.keys().any(|&v| v == 0) {
            return Err(Error::ZeroLabel);
        }
        if father.contains_key(&root) {
            return Err(Error::MalformedTree(format!("root {root} has a father")));
        }
        for (&v, &f) in &father {
            if f != root && !father.contains_key(&f) {
                return Err(Error::MalformedTree(format!(
                    "father {f} of {v} is not a vertex"
                )));
            }
        }
        // Every walk must reach the root within |V| steps.
        let n = father.len() + 1;
        let mut reaches: BTreeSet<Vertex> = BTreeSet::from([root]);
        for &start in father.keys() {
            let mut path = Vec::new();
            let mut cur = start;
            while !reaches.contains(&cur) {
                path.push(cur);
                if path.len() > n {
                    return Err(Error::MalformedTree(format!("cycle through {start}")));
                }
                cur = father[&cur];
            }
            reaches.extend(path);
        }
        Ok(RootedTree { root, father })
    }

    pub fn singleton(v: Vertex) -> Result<Self> {
        RootedTree::new(v, BTreeMap::new())
    }

    /// Builds a tree from `(son, father)` pairs.
    pub fn from_edges(root: Vertex, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut father = BTreeMap::new();
        for &(v, f) in edges {
            if father.insert(v, f).is_some() {
                return Err(Error::MalformedTree(format!("{v} has two fathers")));
            }
        }
        RootedTree::new(root, father)
    }

    /// The increasing chain on a set: each element's father is its predecessor.
    pub fn chain<I: IntoIterator<Item = Vertex>>(set: I) -> Result<Self> {
        let sorted: BTreeSet<Vertex> = set.into_iter().collect();
        let mut it = sorted.iter().copied();
        let root = it.next().ok_or(Error::EmptySet)?;
        let mut father = BTreeMap::new();
        let mut prev = root;
        for v in it {
            father.insert(v, prev);
            prev = v;
        }
        RootedTree::new(root, father)
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn fathers(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.father
    }

    /// Vertices in increasing order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        let root = self.root;
        let mut root_pending = true;
        let mut keys = self.father.keys().copied().peekable();
        std::iter::from_fn(move || match keys.peek() {
            Some(&k) if !(root_pending && root < k) => keys.next(),
            _ if root_pending => {
                root_pending = false;
                Some(root)
            }
            _ => None,
        })
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.vertices().collect()
    }

    pub fn len(&self) -> usize {
        self.father.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v == self.root || self.father.contains_key(&v)
    }

    pub fn max_vertex(&self) -> Vertex {
        self.father
            .keys()
            .next_back()
            .copied()
            .map_or(self.root, |m| m.max(self.root))
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// `None` for the root.
    pub fn father(&self, v: Vertex) -> Result<Option<Vertex>> {
        self.check(v)?;
        Ok(self.father.get(&v).copied())
    }

    pub fn sons(&self, v: Vertex) -> Result<Vec<Vertex>> {
        self.check(v)?;
        Ok(self
            .father
            .iter()
            .filter(|&(_, &f)| f == v)
            .map(|(&u, _)| u)
            .collect())
    }

    pub fn sons_count(&self, v: Vertex) -> Result<usize> {
        self.check(v)?;
        Ok(self.father.values().filter(|&&f| f == v).count())
    }

    pub fn children_map(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut map: BTreeMap<Vertex, Vec<Vertex>> = self.vertices().map(|v| (v, vec![])).collect();
        for (&u, &f) in &self.father {
            map.get_mut(&f).expect("validated").push(u);
        }
        map
    }

    pub fn is_increasing(&self) -> bool {
        self.father.iter().all(|(&v, &f)| f < v)
    }

    pub fn require_increasing(&self) -> Result<()> {
        match self.father.iter().find(|&(&v, &f)| f >= v) {
            Some((&vertex, &father)) => Err(Error::NotIncreasing { vertex, father }),
            None => Ok(()),
        }
    }

    /// Root-first path ending at `v`.
    pub fn path_from_root(&self, v: Vertex) -> Result<Vec<Vertex>> {
        self.check(v)?;
        let mut path = vec![v];
        let mut cur = v;
        while let Some(&f) = self.father.get(&cur) {
            path.push(f);
            cur = f;
        }
        path.reverse();
        Ok(path)
    }

    /// `v` together with all of its descendants.
    pub fn hook(&self, v: Vertex) -> Result<BTreeSet<Vertex>> {
        let children = {
            self.check(v)?;
            self.children_map()
        };
        let mut out = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.insert(u);
            stack.extend(children[&u].iter().copied());
        }
        Ok(out)
    }

    pub fn hook_size(&self, v: Vertex) -> Result<usize> {
        self.hook(v).map(|h| h.len())
    }

    /// Hook sizes of every vertex, computed in one bottom-up pass.
    pub fn hook_sizes(&self) -> BTreeMap<Vertex, usize> {
        let children = self.children_map();
        let mut sizes = BTreeMap::new();
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            order.push(u);
            stack.extend(children[&u].iter().copied());
        }
        for &u in order.iter().rev() {
            let s = 1 + children[&u].iter().map(|c| sizes[c]).sum::<usize>();
            sizes.insert(u, s);
        }
        sizes
    }

    /// Strict: true iff `u` lies on the father-path from `w` to the root and `u != w`.
    pub fn is_ancestor(&self, u: Vertex, w: Vertex) -> Result<bool> {
        self.check(u)?;
        self.check(w)?;
        let mut cur = w;
        while let Some(&f) = self.father.get(&cur) {
            if f == u {
                return Ok(true);
            }
            cur = f;
        }
        Ok(false)
    }

    /// Removes the edges of the root-to-`v` chain and returns the resulting
    /// components, ordered along the chain.
    pub fn v_decomposition(&self, v: Vertex) -> Result<VDecomposition> {
        let chain = self.path_from_root(v)?;
        let on_chain: BTreeMap<Vertex, usize> =
            chain.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut part_fathers: Vec<BTreeMap<Vertex, Vertex>> = vec![BTreeMap::new(); chain.len()];
        let mut part_of: BTreeMap<Vertex, usize> = on_chain.clone();
        for u in self.vertices() {
            if on_chain.contains_key(&u) {
                continue;
            }
            // Walk up until a vertex whose part is known.
            let mut path = vec![];
            let mut cur = u;
            let idx = loop {
                if let Some(&i) = part_of.get(&cur) {
                    break i;
                }
                path.push(cur);
                cur = self.father[&cur];
            };
            for p in path {
                part_of.insert(p, idx);
            }
            part_fathers[idx].insert(u, self.father[&u]);
        }
        let parts = chain
            .iter()
            .zip(part_fathers)
            .map(|(&a, f)| RootedTree::new(a, f))
            .collect::<Result<Vec<_>>>()?;
        Ok(VDecomposition { chain, parts })
    }
}

impl fmt::Display for RootedTree {
    /// Nested form `1(2(5,8),3)` with sons in increasing order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(
            f: &mut fmt::Formatter<'_>,
            children: &BTreeMap<Vertex, Vec<Vertex>>,
            v: Vertex,
        ) -> fmt::Result {
            write!(f, "{v}")?;
            let sons = &children[&v];
            if !sons.is_empty() {
                write!(f, "(")?;
                for (i, &s) in sons.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    go(f, children, s)?;
                }
                write!(f, ")")?;
            }
            Ok(())
        }
        go(f, &self.children_map(), self.root)
    }
}

/// The chain `a_1 < ... < a_k = v` and the parts rooted at each `a_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VDecomposition {
    pub chain: Vec<Vertex>,
    pub parts: Vec<RootedTree>,
}

impl VDecomposition {
    /// Adds the chain edges back, undoing the decomposition.
    pub fn reassemble(&self) -> Result<RootedTree> {
        reassemble_parts(&self.chain, &self.parts)
    }

    pub fn anchor(&self) -> Vertex {
        *self.chain.last().expect("chain is never empty")
    }

    /// Index of the part containing `u`.
    pub fn part_index(&self, u: Vertex) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(u))
    }
}

/// Joins parts along a chain: part `i` is rooted at `chain[i]` and the root
/// of part `i + 1` becomes a son of `chain[i]`.
pub(crate) fn reassemble_parts(chain: &[Vertex], parts: &[RootedTree]) -> Result<RootedTree> {
    if chain.is_empty() || chain.len() != parts.len() {
        return Err(Error::Internal("chain and parts disagree".into()));
    }
    let mut father = BTreeMap::new();
    for (i, part) in parts.iter().enumerate() {
        if part.root() != chain[i] {
            return Err(Error::Internal(format!(
                "part {i} is rooted at {}, expected {}",
                part.root(),
                chain[i]
            )));
        }
        for (&v, &f) in part.fathers() {
            if father.insert(v, f).is_some() {
                return Err(Error::Overlap(v));
            }
        }
        if i > 0 && father.insert(chain[i], chain[i - 1]).is_some() {
            return Err(Error::Overlap(chain[i]));
        }
    }
    RootedTree::new(chain[0], father)
}

/// One component of a forest together with its stage index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestComponent {
    pub index: usize,
    pub tree: RootedTree,
}

/// Ordered components with pairwise disjoint vertex sets and a marked vertex
/// `nu` in the first component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Forest {
    pub components: Vec<ForestComponent>,
    pub nu: Vertex,
}

impl Forest {
    pub fn new(components: Vec<ForestComponent>, nu: Vertex) -> Result<Self> {
        let first = components.first().ok_or(Error::EmptySet)?;
        if !first.tree.contains(nu) {
            return Err(Error::UnknownVertex(nu));
        }
        let mut seen = BTreeSet::new();
        for c in &components {
            for v in c.tree.vertices() {
                if !seen.insert(v) {
                    return Err(Error::Overlap(v));
                }
            }
        }
        Ok(Forest { components, nu })
    }

    pub fn component(&self, index: usize) -> Option<&RootedTree> {
        self.components
            .iter()
            .find(|c| c.index == index)
            .map(|c| &c.tree)
    }
}

/// Streams every unordered increasing tree on a vertex set, each once.
///
/// The `j`-th smallest label picks its father among the `j - 1` smaller
/// labels; choices advance like an odometer with the largest label fastest.
#[derive(Debug, Clone)]
pub struct IncreasingTrees {
    labels: Vec<Vertex>,
    choice: Vec<usize>,
    done: bool,
}

impl Iterator for IncreasingTrees {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        if self.done {
            return None;
        }
        let father = (1..self.labels.len())
            .map(|j| (self.labels[j], self.labels[self.choice[j]]))
            .collect();
        let tree = RootedTree {
            root: self.labels[0],
            father,
        };
        // advance
        let mut j = self.labels.len();
        loop {
            if j <= 1 {
                self.done = true;
                break;
            }
            j -= 1;
            if self.choice[j] + 1 < j {
                self.choice[j] += 1;
                break;
            }
            self.choice[j] = 0;
        }
        Some(tree)
    }
}

pub fn enumerate_increasing_trees<I: IntoIterator<Item = Vertex>>(
    set: I,
) -> Result<IncreasingTrees> {
    let labels: Vec<Vertex> = set
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if labels.is_empty() {
        return Err(Error::EmptySet);
    }
    if labels[0] == 0 {
        return Err(Error::ZeroLabel);
    }
    let n = labels.len();
    Ok(IncreasingTrees {
        labels,
        choice: vec![0; n],
        done: false,
    })
}
