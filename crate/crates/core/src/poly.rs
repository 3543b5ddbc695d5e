//! Sparse multivariate polynomials with big-integer coefficients in the
//! indeterminates `x_i` and `y_{i,j}` (`i <= j`).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trees::Vertex;

/// Variables order as all `X` by index, then `Y` lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    X(Vertex),
    Y(Vertex, Vertex),
}

impl Variable {
    pub fn try_y(i: Vertex, j: Vertex) -> Result<Variable> {
        if i <= j {
            Ok(Variable::Y(i, j))
        } else {
            Err(Error::NotDominating {
                at: i,
                reason: format!("y_{{{i},{j}}} needs {i} <= {j}"),
            })
        }
    }

    pub fn is_x(&self) -> bool {
        matches!(self, Variable::X(_))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::X(i) => write!(f, "x{i}"),
            Variable::Y(i, j) => write!(f, "y{i}_{j}"),
        }
    }
}

/// Product of variable powers, kept sorted by variable with no zero exponents.
///
/// Ordered graded-lexicographically: higher total degree first, then the
/// larger exponent on the first variable where two monomials differ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            for (x, y) in a.iter().zip(b) {
                let ord = match x.0.cmp(&y.0) {
                    // `self` has a variable `other` lacks: exponent 0 vs positive.
                    Ordering::Less => Ordering::Less,
                    Ordering::Greater => Ordering::Greater,
                    Ordering::Equal => y.1.cmp(&x.1),
                };
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            b.len().cmp(&a.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (Variable, u32)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_default() += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map_or(0, |i| self.0[i].1)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Total degree in the `x` variables.
    pub fn x_degree(&self) -> u32 {
        self.0
            .iter()
            .filter(|(v, _)| v.is_x())
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        MultiPoly::term(Monomial::one(), c.into())
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Variable) -> Self {
        MultiPoly::term(Monomial::var(v), BigInt::one())
    }

    pub fn x(i: Vertex) -> Self {
        MultiPoly::var(Variable::X(i))
    }

    /// # Panics
    /// If `i > j`; the `y` variables are indexed by dominating pairs.
    pub fn y(i: Vertex, j: Vertex) -> Self {
        assert!(i <= j, "y_{{{i},{j}}} requires i <= j");
        MultiPoly::var(Variable::Y(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale<T: Into<BigInt>>(&self, c: T) -> MultiPoly {
        let c = c.into();
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * &c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact evaluation; every variable that occurs must be assigned.
    pub fn eval<F>(&self, assign: F) -> Result<BigInt>
    where
        F: Fn(Variable) -> Option<BigInt>,
    {
        let mut cache: BTreeMap<Variable, BigInt> = BTreeMap::new();
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for &(v, e) in &m.0 {
                let a = match cache.entry(v) {
                    std::collections::btree_map::Entry::Occupied(o) => o.into_mut(),
                    std::collections::btree_map::Entry::Vacant(slot) => {
                        slot.insert(assign(v).ok_or_else(|| Error::MissingVariable(v.to_string()))?)
                    }
                };
                val *= num_traits::pow(a.clone(), e as usize);
            }
            total += val;
        }
        Ok(total)
    }

    pub fn eval_map(&self, assign: &BTreeMap<Variable, BigInt>) -> Result<BigInt> {
        self.eval(|v| assign.get(&v).cloned())
    }

    /// Every variable set to `value`.
    pub fn eval_constant<T: Into<BigInt>>(&self, value: T) -> BigInt {
        let value = value.into();
        self.eval(|_| Some(value.clone()))
            .expect("total assignment")
    }

    /// Replaces variables by polynomials; `None` leaves a variable as is.
    pub fn substitute<F>(&self, f: F) -> MultiPoly
    where
        F: Fn(Variable) -> Option<MultiPoly>,
    {
        let mut images: BTreeMap<Variable, MultiPoly> = BTreeMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut prod = MultiPoly::constant(c.clone());
            for &(v, e) in &m.0 {
                let image = images
                    .entry(v)
                    .or_insert_with(|| f(v).unwrap_or_else(|| MultiPoly::var(v)));
                if image.terms.len() == 1 && image.terms.keys().next() == Some(&Monomial::var(v)) {
                    kept.push((v, e));
                } else {
                    prod = &prod * &image.pow(e);
                }
            }
            let kept = Monomial(kept);
            for (pm, pc) in prod.terms {
                out.add_term(pm.mul(&kept), pc);
            }
        }
        out
    }

    /// Terms whose total `x`-degree is maximal.
    pub fn x_leading_part(&self) -> MultiPoly {
        let Some(top) = self.terms.keys().map(Monomial::x_degree).max() else {
            return MultiPoly::zero();
        };
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.x_degree() == top)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Falling factorial `base (base - 1) ... (base - m + 1)`; `m = 0` gives 1.
    pub fn falling_factorial(base: &MultiPoly, m: i64) -> Result<MultiPoly> {
        if m < 0 {
            return Err(Error::NegativeOrder(m));
        }
        Ok((0..m).map(|t| base - &MultiPoly::constant(t)).product())
    }

    /// Serialises to the JSON term-list format.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomials always serialise")
    }

    pub fn from_json(s: &str) -> Result<MultiPoly> {
        Ok(serde_json::from_str(s)?)
    }

    /// Up to `limit` terms of `self - other`, for failure witnesses.
    pub fn difference_witness(&self, other: &MultiPoly, limit: usize) -> Vec<String> {
        let diff = self - other;
        let mut out: Vec<String> = diff
            .terms
            .iter()
            .take(limit)
            .map(|(m, c)| format!("{c}*{m}"))
            .collect();
        if diff.len() > limit {
            out.push(format!("... {} more", diff.len() - limit));
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.0.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl From<Variable> for MultiPoly {
    fn from(v: Variable) -> Self {
        MultiPoly::var(v)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;

    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += rhs;
        self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for MultiPoly {
    fn add_assign(&mut self, rhs: MultiPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut acc: std::collections::HashMap<Monomial, BigInt> = std::collections::HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        let mut out = MultiPoly::zero();
        for p in iter {
            out += p;
        }
        out
    }
}

impl Product for MultiPoly {
    fn product<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::one(), |a, b| &a * &b)
    }
}

// JSON: [{"coeff":"-3","x":{"1":2},"y":{"2,3":1}}, ...]

struct YExponents<'a>(&'a [(Variable, u32)]);

impl Serialize for YExponents<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let ys: Vec<_> = self
            .0
            .iter()
            .filter_map(|&(v, e)| match v {
                Variable::Y(i, j) => Some((format!("{i},{j}"), e)),
                Variable::X(_) => None,
            })
            .collect();
        let mut map = s.serialize_map(Some(ys.len()))?;
        for (k, e) in ys {
            map.serialize_entry(&k, &e)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct TermOut<'a> {
    coeff: String,
    x: BTreeMap<Vertex, u32>,
    y: YExponents<'a>,
}

#[derive(Deserialize)]
struct TermIn {
    coeff: String,
    #[serde(default)]
    x: BTreeMap<Vertex, u32>,
    #[serde(default)]
    y: BTreeMap<String, u32>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(m, c)| {
            TermOut {
                coeff: c.to_string(),
                x: m.0
                    .iter()
                    .filter_map(|&(v, e)| match v {
                        Variable::X(i) => Some((i, e)),
                        Variable::Y(..) => None,
                    })
                    .collect(),
                y: YExponents(&m.0),
            }
        }))
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<TermIn> = Vec::deserialize(d)?;
        let mut out = MultiPoly::zero();
        for t in raw {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| de::Error::custom(format!("bad coefficient {:?}", t.coeff)))?;
            let mut pairs: Vec<(Variable, u32)> =
                t.x.into_iter().map(|(i, e)| (Variable::X(i), e)).collect();
            for (k, e) in t.y {
                let (i, j) = k
                    .split_once(',')
                    .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                    .ok_or_else(|| de::Error::custom(format!("bad y key {k:?}")))?;
                let v = Variable::try_y(i, j).map_err(de::Error::custom)?;
                pairs.push((v, e));
            }
            out.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(out)
    }
}
