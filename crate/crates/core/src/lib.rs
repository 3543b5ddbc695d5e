//! Exact engine for the edge-weighted hook summation formula on unordered
//! increasing trees.
//!
//! The crate is organised bottom-up:
//!
//! * [`trees`]: father-map trees, hooks, v-decompositions, enumeration.
//! * [`partitions`]: set partitions with `{1}` as a block, dominating
//!   functions, and the code domain `C(pi)`.
//! * [`poly`]: sparse multivariate polynomials over big integers.
//! * [`splice`]: the splice of two increasing trees and its reversal.
//! * [`bijection`]: dependence graphs, irreducibility, and the map from codes
//!   to trees together with its inverse.
//! * [`identities`]: weights, generating polynomials, classical hook oracles
//!   and the verification report.

pub mod bijection;
mod dsu;
pub mod error;
pub mod identities;
pub mod partitions;
pub mod poly;
pub mod splice;
pub mod trees;

pub use bijection::{
    dependence_graph, enumerate_e, grow_pi_increasing, is_irreducible, is_pi_increasing,
    psi_forward, psi_inverse, psi_trace, DependenceGraph, Stage, StageCase,
};
pub use error::{Error, Result};
pub use partitions::{CTuple, DominatingFunction, SetPartition};
pub use poly::{Monomial, MultiPoly, Variable};
pub use splice::{splice, unsplice};

pub use trees::{enumerate_increasing_trees, Forest, RootedTree, VDecomposition, Vertex};
