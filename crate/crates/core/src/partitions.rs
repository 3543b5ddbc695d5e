//! Set partitions, dominating functions and the code domain `C(pi)`.
//!
//! Blocks are kept sorted internally and ordered by increasing maxima, so
//! block `i` (0-based) is `pi_{i+1}` in one-based notation, with maximum
//! `mu_{i+1}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::trees::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PartitionJson", into = "PartitionJson")]
pub struct SetPartition {
    blocks: Vec<Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    blocks: Vec<Vec<Vertex>>,
}

impl From<SetPartition> for PartitionJson {
    fn from(p: SetPartition) -> Self {
        PartitionJson { blocks: p.blocks }
    }
}

impl TryFrom<PartitionJson> for SetPartition {
    type Error = Error;

    fn try_from(j: PartitionJson) -> Result<Self> {
        SetPartition::new(j.blocks)
    }
}

impl SetPartition {
    /// Sorts each block and orders blocks by their maxima.
    pub fn new(blocks: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return Err(Error::MalformedPartition("empty block".into()));
            }
            b.sort_unstable();
            for &x in &b {
                if x == 0 {
                    return Err(Error::ZeroLabel);
                }
                if !seen.insert(x) {
                    return Err(Error::MalformedPartition(format!("{x} appears twice")));
                }
            }
            out.push(b);
        }
        if out.is_empty() {
            return Err(Error::EmptySet);
        }
        out.sort_by_key(|b| *b.last().unwrap());
        Ok(SetPartition { blocks: out })
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[Vertex] {
        &self.blocks[i]
    }

    /// Number of blocks, `|pi|`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn maxima(&self) -> Vec<Vertex> {
        self.blocks.iter().map(|b| *b.last().unwrap()).collect()
    }

    pub fn max_of(&self, i: usize) -> Vertex {
        *self.blocks[i].last().unwrap()
    }

    pub fn ground_set(&self) -> BTreeSet<Vertex> {
        self.blocks.iter().flatten().copied().collect()
    }

    /// Index of the block containing `x`.
    pub fn block_index(&self, x: Vertex) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&x).is_ok())
    }

    /// Lookup table from element to block index.
    pub fn index_map(&self) -> BTreeMap<Vertex, usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.iter().map(move |&x| (x, i)))
            .collect()
    }

    pub fn has_singleton_one(&self) -> bool {
        self.blocks.first().is_some_and(|b| b == &[1])
    }

    pub fn require_singleton_one(&self) -> Result<()> {
        if self.has_singleton_one() {
            Ok(())
        } else {
            Err(Error::MissingSingletonOne)
        }
    }

    /// Indices of the blocks that meet `set`, erroring if any is cut.
    pub fn compatible_blocks(&self, set: &BTreeSet<Vertex>) -> Result<Vec<usize>> {
        let mut covered = 0usize;
        let mut idx = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            let inside = b.iter().filter(|x| set.contains(x)).count();
            if inside == b.len() {
                idx.push(i);
                covered += inside;
            } else if inside > 0 {
                return Err(Error::NotCompatible { block: b.clone() });
            }
        }
        if covered != set.len() {
            return Err(Error::MalformedPartition(
                "set has elements outside the ground set".into(),
            ));
        }
        Ok(idx)
    }

    pub fn is_compatible(&self, set: &BTreeSet<Vertex>) -> bool {
        self.compatible_blocks(set).is_ok()
    }

    /// The blocks of `self` making up `set`.
    pub fn restrict(&self, set: &BTreeSet<Vertex>) -> Result<SetPartition> {
        let idx = self.compatible_blocks(set)?;
        SetPartition::new(idx.into_iter().map(|i| self.blocks[i].clone()).collect())
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{{}}}", b.iter().join(","))?;
        }
        write!(f, "}}")
    }
}

/// All partitions of a set via restricted-growth strings, in
/// lexicographic order of the strings.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    labels: Vec<Vertex>,
    rgs: Vec<usize>,
    done: bool,
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let nblocks = self.rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); nblocks];
        for (&x, &b) in self.labels.iter().zip(&self.rgs) {
            blocks[b].push(x);
        }
        let out = SetPartition::new(blocks).expect("rgs yields a partition");
        // Rightmost position that can grow: a[i] <= max(a[..i]).
        let n = self.rgs.len();
        let mut prefix_max = vec![0usize; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(self.rgs[i - 1]);
        }
        match (1..n).rev().find(|&i| self.rgs[i] <= prefix_max[i]) {
            Some(i) => {
                self.rgs[i] += 1;
                for a in &mut self.rgs[i + 1..] {
                    *a = 0;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// Every partition of `set`; general helper used for induced partitions and
/// oracles.
pub fn enumerate_set_partitions<I: IntoIterator<Item = Vertex>>(set: I) -> Result<SetPartitions> {
    let labels: Vec<Vertex> = set
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if labels.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = labels.len();
    Ok(SetPartitions {
        labels,
        rgs: vec![0; n],
        done: false,
    })
}

/// Partitions of `{1..r}` in which `{1}` is a block; there are `Bell(r-1)`.
pub fn enumerate_partitions_singleton_one(r: usize) -> Result<impl Iterator<Item = SetPartition>> {
    if r < 2 {
        return Err(Error::SizeOutOfRange {
            got: r,
            min: 2,
            max: usize::MAX,
        });
    }
    Ok(enumerate_set_partitions(1..=r as Vertex)?.filter(SetPartition::has_singleton_one))
}

/// A map `g` on a finite set with `g(i) >= i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(
    try_from = "BTreeMap<Vertex, Vertex>",
    into = "BTreeMap<Vertex, Vertex>"
)]
pub struct DominatingFunction {
    values: BTreeMap<Vertex, Vertex>,
}

impl From<DominatingFunction> for BTreeMap<Vertex, Vertex> {
    fn from(g: DominatingFunction) -> Self {
        g.values
    }
}

impl TryFrom<BTreeMap<Vertex, Vertex>> for DominatingFunction {
    type Error = Error;

    fn try_from(values: BTreeMap<Vertex, Vertex>) -> Result<Self> {
        DominatingFunction::new(values)
    }
}

impl DominatingFunction {
    pub fn new(values: BTreeMap<Vertex, Vertex>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySet);
        }
        for (&i, &g) in &values {
            if g < i {
                return Err(Error::NotDominating {
                    at: i,
                    reason: format!("g({i}) = {g} < {i}"),
                });
            }
            if !values.contains_key(&g) {
                return Err(Error::NotDominating {
                    at: i,
                    reason: format!("g({i}) = {g} is outside the domain"),
                });
            }
        }
        Ok(DominatingFunction { values })
    }

    pub fn from_pairs(pairs: &[(Vertex, Vertex)]) -> Result<Self> {
        DominatingFunction::new(pairs.iter().copied().collect())
    }

    pub fn values(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.values
    }

    pub fn get(&self, i: Vertex) -> Option<Vertex> {
        self.values.get(&i).copied()
    }

    pub fn domain(&self) -> BTreeSet<Vertex> {
        self.values.keys().copied().collect()
    }

    /// Weak components of the functional digraph `i -> g(i)`.
    pub fn induced_partition(&self) -> SetPartition {
        let labels: Vec<Vertex> = self.values.keys().copied().collect();
        let pos: BTreeMap<Vertex, usize> =
            labels.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut dsu = DisjointSets::new(labels.len());
        for (&i, &g) in &self.values {
            dsu.union(pos[&i], pos[&g]);
        }
        let blocks = dsu
            .groups()
            .into_iter()
            .map(|g| g.into_iter().map(|p| labels[p]).collect())
            .collect();
        SetPartition::new(blocks).expect("components partition the domain")
    }
}

/// Dominating functions on `set` whose induced partition is `target`.
pub fn enumerate_dominating(
    set: &BTreeSet<Vertex>,
    target: &SetPartition,
) -> Result<Vec<DominatingFunction>> {
    if &target.ground_set() != set {
        return Err(Error::MalformedPartition(
            "target does not partition the given set".into(),
        ));
    }
    // g(i) stays in the block of i, so only those values are candidates.
    let candidates: Vec<(Vertex, Vec<Vertex>)> = target
        .blocks()
        .iter()
        .flat_map(|b| {
            b.iter()
                .map(move |&i| (i, b.iter().copied().filter(|&j| j >= i).collect()))
        })
        .collect();
    let domain: Vec<Vertex> = candidates.iter().map(|(i, _)| *i).collect();
    Ok(candidates
        .into_iter()
        .map(|(_, c)| c)
        .multi_cartesian_product()
        .map(|vals| {
            DominatingFunction::new(domain.iter().copied().zip(vals).collect())
                .expect("dominating by construction")
        })
        .filter(|g| &g.induced_partition() == target)
        .collect())
}

/// A code `(c_2, ..., c_{k-1})` with `1 <= c_i <= mu_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CTuple {
    pub entries: Vec<Vertex>,
}

impl CTuple {
    pub fn new(entries: Vec<Vertex>) -> Self {
        CTuple { entries }
    }

    /// `c_i` using the 2-based indexing of the code.
    pub fn get(&self, i: usize) -> Vertex {
        self.entries[i - 2]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Checks membership in `C(pi)`.
    pub fn validate(&self, pi: &SetPartition) -> Result<()> {
        let k = pi.len();
        let expected = k.saturating_sub(2);
        if self.entries.len() != expected {
            return Err(Error::CodeLength {
                expected,
                got: self.entries.len(),
            });
        }
        for (off, &c) in self.entries.iter().enumerate() {
            let i = off + 2;
            let max = pi.max_of(i - 1);
            if c == 0 || c > max {
                return Err(Error::CodeOutOfRange {
                    index: i,
                    value: c,
                    max,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for CTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries.iter().join(","))
    }
}

/// Every code in `C(pi)`, lexicographically; one empty code when `|pi| = 2`.
pub fn enumerate_c_tuples(pi: &SetPartition) -> Result<Box<dyn Iterator<Item = CTuple>>> {
    pi.require_singleton_one()?;
    let k = pi.len();
    if k < 2 {
        return Err(Error::TooFewBlocks { need: 2, got: k });
    }
    if k == 2 {
        return Ok(Box::new(std::iter::once(CTuple::new(vec![]))));
    }
    let ranges: Vec<_> = (1..k - 1).map(|i| 1..=pi.max_of(i)).collect();
    Ok(Box::new(
        ranges
            .into_iter()
            .multi_cartesian_product()
            .map(CTuple::new),
    ))
}

/// `|C(pi)| = mu_2 * ... * mu_{k-1}`.
pub fn c_tuple_count(pi: &SetPartition) -> u64 {
    let k = pi.len();
    (1..k.saturating_sub(1))
        .map(|i| pi.max_of(i) as u64)
        .product()
}
