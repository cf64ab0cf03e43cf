//! Groups indexed by `X_m` (pairs of disjoint subsets of `[m]`) or its
//! sub-family `R_m`, diagonal tensor products, and the interleaving sign.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::CoefficientRing;
use crate::simplicial::VertexSet;

/// Which of the three per-coordinate sectors a generator lives in.
/// `Sigma` ↔ coker of `i_*` (σ side), `Omega` ↔ ker of `i_*` (ω side),
/// `Neutral` ↔ image of `i_*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sector {
    Neutral,
    Sigma,
    Omega,
}

/// An element `(σ, ω)` of `X_m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexPair {
    sigma: VertexSet,
    omega: VertexSet,
}

impl IndexPair {
    pub fn new(sigma: VertexSet, omega: VertexSet) -> Result<Self> {
        if !sigma.is_disjoint(omega) {
            return Err(Error::Validation(format!("σ={sigma} and ω={omega} overlap")));
        }
        Ok(IndexPair { sigma, omega })
    }

    /// `(∅, ω)`, an element of `R_m`.
    pub fn right(omega: VertexSet) -> Self {
        IndexPair { sigma: VertexSet::EMPTY, omega }
    }

    pub fn sigma(self) -> VertexSet {
        self.sigma
    }

    pub fn omega(self) -> VertexSet {
        self.omega
    }

    pub fn sector(self, k: usize) -> Sector {
        if self.sigma.contains(k) {
            Sector::Sigma
        } else if self.omega.contains(k) {
            Sector::Omega
        } else {
            Sector::Neutral
        }
    }

    /// Assembles the index from per-coordinate sectors (coordinate `k` at slot `k-1`).
    pub fn from_sectors(sectors: &[Sector]) -> Self {
        let mut sigma = VertexSet::EMPTY;
        let mut omega = VertexSet::EMPTY;
        for (i, s) in sectors.iter().enumerate() {
            match s {
                Sector::Sigma => sigma = sigma.insert(i + 1),
                Sector::Omega => omega = omega.insert(i + 1),
                Sector::Neutral => {}
            }
        }
        IndexPair { sigma, omega }
    }

    pub fn is_right(self) -> bool {
        self.sigma.is_empty()
    }
}

impl PartialOrd for IndexPair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IndexPair {
    /// Lexicographic in `(σ, ω)`, each compared as ascending vertex lists,
    /// shorter sets first.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |s: VertexSet| (s.len(), s);
        let lex = |a: VertexSet, b: VertexSet| key(a).0.cmp(&key(b).0).then(a.lex_cmp(b));
        lex(self.sigma, other.sigma).then(lex(self.omega, other.omega))
    }
}

impl fmt::Debug for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.sigma, self.omega)
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The two index families in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum World {
    /// All disjoint pairs `(σ, ω)`.
    Full,
    /// Only `(∅, ω)`.
    Right,
}

/// Every index of the family on `[m]`, in the canonical order.
pub fn all_indices(m: usize, world: World) -> Vec<IndexPair> {
    let ground = VertexSet::full(m);
    let mut out = Vec::new();
    match world {
        World::Right => {
            for omega in ground.subsets() {
                out.push(IndexPair::right(omega));
            }
        }
        World::Full => {
            for sigma in ground.subsets() {
                for omega in ground.difference(sigma).subsets() {
                    out.push(IndexPair { sigma, omega });
                }
            }
        }
    }
    out.sort();
    out
}

/// A free generator with a label and a degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub degree: i64,
}

/// `⊕_λ A^λ`: a graded free module per index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedGradedGroup {
    pub ring: CoefficientRing,
    pub components: BTreeMap<IndexPair, Vec<Generator>>,
}

impl IndexedGradedGroup {
    pub fn new(ring: CoefficientRing) -> Self {
        IndexedGradedGroup { ring, components: BTreeMap::new() }
    }

    pub fn insert(&mut self, index: IndexPair, gen: Generator) {
        self.components.entry(index).or_default().push(gen);
    }

    pub fn rank(&self, index: IndexPair) -> usize {
        self.components.get(&index).map_or(0, |g| g.len())
    }

    /// The dual group: same index set, dual generators in negated degree.
    pub fn dual(&self) -> IndexedGradedGroup {
        let components = self
            .components
            .iter()
            .map(|(i, gens)| {
                let dual = gens
                    .iter()
                    .map(|g| Generator { label: format!("{}*", g.label), degree: -g.degree })
                    .collect();
                (*i, dual)
            })
            .collect();
        IndexedGradedGroup { ring: self.ring, components }
    }
}

/// Sparse element of an indexed group: `(index, generator slot) → coefficient`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexedElement {
    pub terms: BTreeMap<(IndexPair, usize), BigInt>,
}

impl IndexedElement {
    pub fn basis(index: IndexPair, slot: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((index, slot), BigInt::from(1));
        IndexedElement { terms }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (*k, v * c))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        IndexedElement { terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let e = terms.entry(*k).or_insert_with(BigInt::zero);
            *e += v;
        }
        terms.retain(|_, v| !v.is_zero());
        IndexedElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Element of `A ⊗_Λ B`: `(index, left slot, right slot) → coefficient`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagonalTensorElement {
    pub terms: BTreeMap<(IndexPair, usize, usize), BigInt>,
}

impl DiagonalTensorElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `a ⊗̂ b`: bilinear, with every mixed-index term zero.
pub fn diagonal_tensor(a: &IndexedElement, b: &IndexedElement) -> DiagonalTensorElement {
    let mut terms: BTreeMap<(IndexPair, usize, usize), BigInt> = BTreeMap::new();
    for ((ia, sa), ca) in &a.terms {
        for ((ib, sb), cb) in &b.terms {
            if ia == ib {
                *terms.entry((*ia, *sa, *sb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
    }
    terms.retain(|_, v| !v.is_zero());
    DiagonalTensorElement { terms }
}

/// One factor `a_i ⊗̂ b_i` of an interleaving, recorded by degrees and labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorFactor<L> {
    pub sector: Sector,
    pub left: L,
    pub left_degree: i64,
    pub right: L,
    pub right_degree: i64,
}

/// `(a_1⊗…⊗a_m) ⊗̂ (b_1⊗…⊗b_m)` with its sign and combined index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interleaved<L> {
    pub sign: i8,
    pub index: IndexPair,
    pub left: Vec<L>,
    pub right: Vec<L>,
}

/// `s = Σ_{i≥2} (|b_1| + … + |b_{i-1}|)·|a_i|`, returned as `(-1)^s`.
pub fn interleave_sign(degrees: &[(i64, i64)]) -> i8 {
    let mut right_sum = 0i64;
    let mut parity = 0i64;
    for (a, b) in degrees {
        parity ^= (right_sum * a) & 1;
        right_sum = (right_sum + b) & 1;
    }
    if parity == 0 {
        1
    } else {
        -1
    }
}

/// Reorders `⊗_i (a_i ⊗̂ b_i)` into `(⊗ a_i) ⊗̂ (⊗ b_i)`.
pub fn interleave<L: Clone>(factors: &[TensorFactor<L>]) -> Interleaved<L> {
    let degrees: Vec<(i64, i64)> = factors.iter().map(|f| (f.left_degree, f.right_degree)).collect();
    let sectors: Vec<Sector> = factors.iter().map(|f| f.sector).collect();
    Interleaved {
        sign: interleave_sign(&degrees),
        index: IndexPair::from_sectors(&sectors),
        left: factors.iter().map(|f| f.left.clone()).collect(),
        right: factors.iter().map(|f| f.right.clone()).collect(),
    }
}
