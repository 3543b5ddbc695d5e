//! Tree weights, the generating polynomials built from them, and exact
//! checks of the identities relating them.
//!
//! Each identity is checked by computing both sides along separate code
//! paths: sums over enumerated trees on one side, closed-form products on
//! the other.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bijection::{enumerate_e, is_pi_increasing, psi_forward, psi_inverse};
use crate::error::{Error, Result};
use crate::partitions::{
    enumerate_c_tuples, enumerate_dominating, enumerate_partitions_singleton_one, CTuple,
    DominatingFunction, SetPartition,
};
use crate::poly::{MultiPoly, Variable};
use crate::trees::{enumerate_increasing_trees, RootedTree, Vertex};

/// Largest `r` accepted by [`verify`] unless the caller raises it.
pub const DEFAULT_MAX_R: usize = 8;

fn require_standard_tree(t: &RootedTree) -> Result<()> {
    t.require_increasing()?;
    if t.vertices().ne(1..=t.len() as Vertex) {
        return Err(Error::MalformedTree(format!(
            "vertex set of {t} is not 1..={}",
            t.len()
        )));
    }
    Ok(())
}

fn require_r(r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::SizeOutOfRange {
            got: r,
            min: 2,
            max: usize::MAX,
        });
    }
    Ok(())
}

fn all_hooks(t: &RootedTree) -> BTreeMap<Vertex, Vec<Vertex>> {
    let children = t.children_map();
    let mut hooks: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    // Larger labels sit lower in an increasing tree, so sons are done first.
    for v in t.vertices().collect::<Vec<_>>().into_iter().rev() {
        let mut h = vec![v];
        for c in &children[&v] {
            h.extend_from_slice(&hooks[c]);
        }
        hooks.insert(v, h);
    }
    hooks
}

fn x_product(vertices: impl IntoIterator<Item = Vertex>) -> MultiPoly {
    vertices.into_iter().map(MultiPoly::x).product()
}

fn x_sum(vertices: impl IntoIterator<Item = Vertex>) -> MultiPoly {
    vertices.into_iter().map(MultiPoly::x).sum()
}

/// `prod_{v >= 2} x_{f(v)} * sum_{u in hook(v)} y_{v,u}`.
pub fn wt_y(t: &RootedTree) -> Result<MultiPoly> {
    require_standard_tree(t)?;
    let hooks = all_hooks(t);
    Ok(t.fathers()
        .iter()
        .map(|(&v, &f)| {
            &MultiPoly::x(f)
                * &hooks[&v]
                    .iter()
                    .map(|&u| MultiPoly::y(v, u))
                    .sum::<MultiPoly>()
        })
        .product())
}

/// `prod_{v >= 2} x_{f(v)} * (sum_{u in hook(v)} x_u - |hook(v)| + 1)`.
pub fn wt_hookform(t: &RootedTree) -> Result<MultiPoly> {
    require_standard_tree(t)?;
    let hooks = all_hooks(t);
    Ok(t.fathers()
        .iter()
        .map(|(&v, &f)| {
            let h = &hooks[&v];
            let shift = MultiPoly::constant(1 - h.len() as i64);
            &MultiPoly::x(f) * &(&x_sum(h.iter().copied()) + &shift)
        })
        .product())
}

/// The substitution `y_{v,u} -> x_u - 1` for `v < u` and `y_{u,u} -> x_u`.
pub fn hook_substitution(p: &MultiPoly) -> MultiPoly {
    p.substitute(|v| match v {
        Variable::Y(a, b) if a < b => Some(&MultiPoly::x(b) - &MultiPoly::one()),
        Variable::Y(_, b) => Some(MultiPoly::x(b)),
        Variable::X(_) => None,
    })
}

/// `prod_i x_i^{number of sons of i}`.
pub fn kappa(t: &RootedTree) -> MultiPoly {
    t.vertices()
        .map(|v| MultiPoly::x(v).pow(t.sons_count(v).expect("own vertex") as u32))
        .product()
}

/// `x_{c_2} ... x_{c_{k-1}} / (x_{mu_2} ... x_{mu_k}) * prod_{i in S} x_i`.
pub fn omega(c: &CTuple, pi: &SetPartition) -> Result<MultiPoly> {
    c.validate(pi)?;
    let mut exp: BTreeMap<Vertex, i64> = pi.ground_set().into_iter().map(|i| (i, 1)).collect();
    for &ci in &c.entries {
        *exp.get_mut(&ci).ok_or(Error::UnknownVertex(ci))? += 1;
    }
    for mu in pi.maxima().into_iter().skip(1) {
        *exp.get_mut(&mu).expect("maximum lies in the ground set") -= 1;
    }
    exp.into_iter()
        .map(|(i, e)| {
            u32::try_from(e)
                .map(|e| MultiPoly::x(i).pow(e))
                .map_err(|_| Error::Internal(format!("x{i} left with exponent {e}")))
        })
        .product()
}

/// `prod_i y_{i, g(i)}`.
pub fn wt_g(g: &DominatingFunction) -> MultiPoly {
    g.values()
        .iter()
        .map(|(&i, &j)| MultiPoly::y(i, j))
        .product()
}

/// Sum of `wt_g` over dominating functions inducing `pi`.
pub fn d_poly(pi: &SetPartition) -> Result<MultiPoly> {
    Ok(enumerate_dominating(&pi.ground_set(), pi)?
        .iter()
        .map(wt_g)
        .sum())
}

/// `sum_{T in U_r} wt_y(T)`, by enumeration.
pub fn l_poly(r: usize) -> Result<MultiPoly> {
    require_r(r)?;
    enumerate_increasing_trees(1..=r as Vertex)?
        .map(|t| wt_y(&t))
        .sum()
}

/// `x_1 y_{r,r} prod_{i=2}^{r-1} (sum_{j<=i} x_j y_{i,i} + sum_{j>i} x_i y_{i,j})`.
pub fn r_poly(r: usize) -> Result<MultiPoly> {
    require_r(r)?;
    let r = r as Vertex;
    let head = &MultiPoly::x(1) * &MultiPoly::y(r, r);
    let factors = (2..r).map(|i| {
        let diag = &x_sum(1..=i) * &MultiPoly::y(i, i);
        let off: MultiPoly = (i + 1..=r).map(|j| MultiPoly::y(i, j)).sum();
        &diag + &(&MultiPoly::x(i) * &off)
    });
    Ok(factors.fold(head, |acc, f| &acc * &f))
}

/// `sum_{T in U_r} wt_hookform(T)`.
pub fn hookform_sum(r: usize) -> Result<MultiPoly> {
    require_r(r)?;
    enumerate_increasing_trees(1..=r as Vertex)?
        .map(|t| wt_hookform(&t))
        .sum()
}

/// `x_1 ... x_r (x_1 + ... + x_r - 1)_{r-2}`.
pub fn hookform_rhs(r: usize) -> Result<MultiPoly> {
    require_r(r)?;
    let base = &x_sum(1..=r as Vertex) - &MultiPoly::one();
    Ok(&x_product(1..=r as Vertex) * &MultiPoly::falling_factorial(&base, r as i64 - 2)?)
}

/// `sum_{pi} D(pi) sum_{T in E(pi)} kappa(T)` over `pi` in `Pi_1({1..r})`.
pub fn dominating_tree_sum(r: usize) -> Result<MultiPoly> {
    require_r(r)?;
    let mut total = MultiPoly::zero();
    for pi in enumerate_partitions_singleton_one(r)? {
        let trees: MultiPoly = enumerate_e(&pi)?.map(|t| kappa(&t)).sum();
        total += &d_poly(&pi)? * &trees;
    }
    Ok(total)
}

/// `sum_{pi} D(pi) sum_{c in C(pi)} omega(c, pi)` over `pi` in `Pi_1({1..r})`.
pub fn dominating_code_sum(r: usize) -> Result<MultiPoly> {
    require_r(r)?;
    let mut total = MultiPoly::zero();
    for pi in enumerate_partitions_singleton_one(r)? {
        let codes: MultiPoly = enumerate_c_tuples(&pi)?
            .map(|c| omega(&c, &pi))
            .sum::<Result<_>>()?;
        total += &d_poly(&pi)? * &codes;
    }
    Ok(total)
}

/// The labelled tree on `1..=seq.len() + 2` with Prüfer sequence `seq`, as
/// an edge list.
pub fn prufer_decode(seq: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n + 1];
    for &s in seq {
        degree[s as usize] += 1;
    }
    let mut leaves: BTreeSet<Vertex> = (1..=n as Vertex)
        .filter(|&v| degree[v as usize] == 1)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = leaves.pop_first().expect("a tree always has a leaf");
        edges.push((leaf, s));
        degree[s as usize] -= 1;
        if degree[s as usize] == 1 {
            leaves.insert(s);
        }
    }
    let last: Vec<Vertex> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    edges
}

/// `sum over labelled trees on {1..r} of prod_i x_i^{deg(i)}`, walking all
/// Prüfer sequences.
pub fn cayley_degree_poly(r: usize) -> Result<MultiPoly> {
    match r {
        0 => Err(Error::SizeOutOfRange {
            got: 0,
            min: 1,
            max: usize::MAX,
        }),
        1 => Ok(MultiPoly::one()),
        _ => {
            let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
            let seqs = std::iter::repeat_n(1..=r as Vertex, r - 2).multi_cartesian_product();
            let seqs: Box<dyn Iterator<Item = Vec<Vertex>>> = if r == 2 {
                Box::new(std::iter::once(vec![]))
            } else {
                Box::new(seqs)
            };
            for seq in seqs {
                let mut deg = vec![0u32; r];
                for (a, b) in prufer_decode(&seq) {
                    deg[a as usize - 1] += 1;
                    deg[b as usize - 1] += 1;
                }
                *counts.entry(deg).or_default() += 1;
            }
            Ok(counts
                .into_iter()
                .map(|(deg, n)| {
                    let m = (1..=r as Vertex)
                        .zip(deg)
                        .map(|(i, e)| MultiPoly::x(i).pow(e))
                        .product::<MultiPoly>();
                    m.scale(n)
                })
                .sum())
        }
    }
}

/// `x_1 ... x_r (x_1 + ... + x_r)^{r-2}`.
pub fn cayley_rhs(r: usize) -> Result<MultiPoly> {
    if r == 0 {
        return Err(Error::SizeOutOfRange {
            got: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    if r == 1 {
        return Ok(MultiPoly::one());
    }
    Ok(&x_product(1..=r as Vertex) * &x_sum(1..=r as Vertex).pow(r as u32 - 2))
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `n! / prod_v h(v)`: increasing labellings of the shape of `t` with sons
/// treated as distinguishable.
pub fn hook_length_count(t: &RootedTree) -> u128 {
    let hooks: u128 = t.hook_sizes().values().map(|&h| h as u128).product();
    factorial(t.len()) / hooks
}

/// Counts bijections from `1..=n` onto the vertices of `t` that increase
/// from every father to its sons, by trying all `n!` of them.
pub fn brute_force_labelling_count(t: &RootedTree) -> Result<u128> {
    let n = t.len();
    if n > 10 {
        return Err(Error::SizeOutOfRange {
            got: n,
            min: 1,
            max: 10,
        });
    }
    let slots: Vec<Vertex> = t.vertices().collect();
    let pos: BTreeMap<Vertex, usize> = slots.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(usize, usize)> = t.fathers().iter().map(|(v, f)| (pos[v], pos[f])).collect();
    Ok((0..n)
        .permutations(n)
        .filter(|label| edges.iter().all(|&(v, f)| label[f] < label[v]))
        .count() as u128)
}

/// Orderings of the vertices of `t` placing every father before its sons,
/// counted by dynamic programming over the set of already placed vertices.
pub fn linear_extension_count(t: &RootedTree) -> Result<u128> {
    let n = t.len();
    if n > 24 {
        return Err(Error::SizeOutOfRange {
            got: n,
            min: 1,
            max: 24,
        });
    }
    let slots: Vec<Vertex> = t.vertices().collect();
    let pos: BTreeMap<Vertex, usize> = slots.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let father_bit: Vec<u32> = slots
        .iter()
        .map(|v| {
            t.father(*v)
                .expect("own vertex")
                .map_or(0, |f| 1 << pos[&f])
        })
        .collect();
    let mut ways = vec![0u128; 1 << n];
    ways[0] = 1;
    for mask in 0..(1u32 << n) {
        let w = ways[mask as usize];
        if w == 0 {
            continue;
        }
        for (i, &fb) in father_bit.iter().enumerate() {
            if mask & (1 << i) == 0 && mask & fb == fb {
                ways[(mask | (1 << i)) as usize] += w;
            }
        }
    }
    Ok(ways[(1 << n) - 1])
}

/// A string equal for two trees exactly when they have the same unlabelled
/// rooted shape.
pub fn canonical_shape(t: &RootedTree) -> String {
    fn go(v: Vertex, children: &BTreeMap<Vertex, Vec<Vertex>>) -> String {
        let mut subs: Vec<String> = children[&v].iter().map(|&c| go(c, children)).collect();
        subs.sort();
        format!("({})", subs.concat())
    }
    go(t.root(), &t.children_map())
}

/// One representative for each unlabelled rooted tree shape on `n` vertices.
pub fn tree_shapes(n: usize) -> Result<Vec<RootedTree>> {
    let mut seen = BTreeMap::new();
    for t in enumerate_increasing_trees(1..=n as Vertex)? {
        seen.entry(canonical_shape(&t)).or_insert(t);
    }
    Ok(seen.into_values().collect())
}

/// `sum over plane binary trees B with r vertices of prod_v 1 / h_B(v)`.
pub fn binary_hook_sum(r: usize) -> BigRational {
    // hook_products[n] lists prod_v h(v) for every plane binary tree on n vertices.
    let mut hook_products: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=r {
        let mut here = Vec::new();
        for left in 0..n {
            let right = n - 1 - left;
            for a in &hook_products[left] {
                for b in &hook_products[right] {
                    here.push(BigInt::from(n) * a * b);
                }
            }
        }
        hook_products.push(here);
    }
    hook_products[r]
        .iter()
        .map(|p| BigRational::new(BigInt::one(), p.clone()))
        .fold(BigRational::zero(), |acc, q| acc + q)
}

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Empty on success; otherwise differing terms or counterexamples.
    pub witness: Vec<String>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub r: usize,
    pub checks: Vec<Check>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Names accepted by [`verify`], in the order they run.
pub const IDENTITY_NAMES: &[&str] = &[
    "l_equals_r",
    "dominating_trees",
    "dominating_codes",
    "hookform",
    "hookform_substitution",
    "cayley_prufer",
    "cayley_leading",
    "cayley_count",
    "bijection",
    "hook_length",
    "binary_hook_sum",
];

const WITNESS_LIMIT: usize = 8;

fn poly_witness(label: &str, lhs: &MultiPoly, rhs: &MultiPoly) -> Vec<String> {
    lhs.difference_witness(rhs, WITNESS_LIMIT)
        .into_iter()
        .map(|w| format!("{label}: {w}"))
        .collect()
}

/// Lazily computed polynomials shared between checks.
struct Shared {
    r: usize,
    l: Option<MultiPoly>,
    rr: Option<MultiPoly>,
    hook: Option<MultiPoly>,
}

impl Shared {
    fn l(&mut self) -> Result<&MultiPoly> {
        if self.l.is_none() {
            self.l = Some(l_poly(self.r)?);
        }
        Ok(self.l.as_ref().expect("just set"))
    }

    fn rr(&mut self) -> Result<&MultiPoly> {
        if self.rr.is_none() {
            self.rr = Some(r_poly(self.r)?);
        }
        Ok(self.rr.as_ref().expect("just set"))
    }

    fn hook(&mut self) -> Result<&MultiPoly> {
        if self.hook.is_none() {
            self.hook = Some(hookform_sum(self.r)?);
        }
        Ok(self.hook.as_ref().expect("just set"))
    }
}

fn check_bijection(r: usize) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for pi in enumerate_partitions_singleton_one(r)? {
        let e: BTreeSet<RootedTree> = enumerate_e(&pi)?.collect();
        let mut image = BTreeSet::new();
        for c in enumerate_c_tuples(&pi)? {
            let t = psi_forward(&pi, &c)?;
            if !is_pi_increasing(&t, &pi) {
                bad.push(format!("{pi} {c}: image {t} is not in E(pi)"));
            }
            if kappa(&t) != omega(&c, &pi)? {
                bad.push(format!("{pi} {c}: kappa differs from omega"));
            }
            match psi_inverse(&pi, &t) {
                Ok(back) if back == c => {}
                Ok(back) => bad.push(format!("{pi} {c}: inverse gave {back}")),
                Err(err) => bad.push(format!("{pi} {c}: inverse failed: {err}")),
            }
            if !image.insert(t.clone()) {
                bad.push(format!("{pi} {c}: image {t} repeated"));
            }
        }
        if image != e {
            bad.push(format!(
                "{pi}: image has {} trees, E(pi) has {}",
                image.len(),
                e.len()
            ));
        }
        if bad.len() >= WITNESS_LIMIT {
            break;
        }
    }
    Ok(bad)
}

fn check_hook_length(r: usize) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for t in tree_shapes(r)? {
        let formula = hook_length_count(&t);
        let brute = brute_force_labelling_count(&t)?;
        if formula != brute {
            bad.push(format!(
                "shape {t}: hook formula {formula}, brute force {brute}"
            ));
        }
    }
    Ok(bad)
}

fn run_check(name: &str, shared: &mut Shared) -> Result<Vec<String>> {
    let r = shared.r;
    Ok(match name {
        "l_equals_r" => {
            let l = shared.l()?.clone();
            poly_witness("L - R", &l, shared.rr()?)
        }
        "dominating_trees" => {
            let rhs = &MultiPoly::y(1, 1) * shared.l()?;
            poly_witness("lhs - y1_1*L", &dominating_tree_sum(r)?, &rhs)
        }
        "dominating_codes" => {
            let rhs = &MultiPoly::y(1, 1) * shared.rr()?;
            poly_witness("rhs - y1_1*R", &dominating_code_sum(r)?, &rhs)
        }
        "hookform" => poly_witness("sum wt - closed form", shared.hook()?, &hookform_rhs(r)?),
        "hookform_substitution" => {
            let target = shared.hook()?.clone();
            let mut w = poly_witness(
                "subst(L) - sum wt",
                &hook_substitution(shared.l()?),
                &target,
            );
            w.extend(poly_witness(
                "subst(R) - closed form",
                &hook_substitution(shared.rr()?),
                &hookform_rhs(r)?,
            ));
            w
        }
        "cayley_prufer" => {
            poly_witness("prufer - product", &cayley_degree_poly(r)?, &cayley_rhs(r)?)
        }
        "cayley_leading" => poly_witness(
            "leading - prufer",
            &shared.hook()?.x_leading_part(),
            &cayley_degree_poly(r)?,
        ),
        "cayley_count" => {
            let expected = BigInt::from(r).pow(r as u32 - 2);
            let mut w = Vec::new();
            for (label, p) in [
                ("R", shared.rr()?.clone()),
                ("prufer", cayley_degree_poly(r)?),
            ] {
                let got = p.eval_constant(1);
                if got != expected {
                    w.push(format!("{label} at all ones is {got}, expected {expected}"));
                }
            }
            w
        }
        "bijection" => check_bijection(r)?,
        "hook_length" => check_hook_length(r)?,
        "binary_hook_sum" => {
            let s = binary_hook_sum(r);
            if s.is_one() {
                vec![]
            } else {
                vec![format!("sum is {s}")]
            }
        }
        other => return Err(Error::Internal(format!("unknown identity {other}"))),
    })
}

/// Runs the named identity checks (all of them when `only` is `None`) at
/// size `r`, which must lie in `2..=max_r`.
pub fn verify(r: usize, only: Option<&[String]>, max_r: usize) -> Result<IdentityReport> {
    if r < 2 || r > max_r {
        return Err(Error::SizeOutOfRange {
            got: r,
            min: 2,
            max: max_r,
        });
    }
    let names: Vec<&str> = match only {
        None => IDENTITY_NAMES.to_vec(),
        Some(sel) => {
            for s in sel {
                if !IDENTITY_NAMES.contains(&s.as_str()) {
                    return Err(Error::Internal(format!("unknown identity {s}")));
                }
            }
            IDENTITY_NAMES
                .iter()
                .copied()
                .filter(|n| sel.iter().any(|s| s == n))
                .collect()
        }
    };
    let mut shared = Shared {
        r,
        l: None,
        rr: None,
        hook: None,
    };
    let mut checks = Vec::new();
    for name in names {
        let start = Instant::now();
        let witness = run_check(name, &mut shared)?;
        checks.push(Check {
            name: name.to_string(),
            passed: witness.is_empty(),
            witness,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    Ok(IdentityReport { r, checks })
}

pub fn verify_all(r: usize) -> Result<IdentityReport> {
    verify(r, None, DEFAULT_MAX_R)
}
