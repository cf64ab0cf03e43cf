//! The complex-side algebra: Hochster pieces `ΣC̃*(K_{σ,ω})` per index, the
//! diagonal cochain product with its shuffle sign, and the restriction
//! gates of every product flavor.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::{homology, CoefficientRing, FreeComplex, HomologySummary};
use crate::indexed::{all_indices, IndexPair, World};
use crate::par::Parallelism;
use crate::simplicial::{AugmentedCochainComplex, SimplicialComplex, VertexSet};

/// Which coproduct on the letter complex drives the complex-side product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductFlavor {
    Universal,
    Normal,
    Special,
    RightUniversal,
    RightNormal,
    RightSpecial,
    RightStrictlyNormal,
    RightWeaklySpecial,
    /// Right special with the extra shuffle sign `⟨ω′, ω″⟩`.
    RightSpecialSigned,
}

impl ProductFlavor {
    pub const ALL: [ProductFlavor; 9] = [
        ProductFlavor::Universal,
        ProductFlavor::Normal,
        ProductFlavor::Special,
        ProductFlavor::RightUniversal,
        ProductFlavor::RightNormal,
        ProductFlavor::RightSpecial,
        ProductFlavor::RightStrictlyNormal,
        ProductFlavor::RightWeaklySpecial,
        ProductFlavor::RightSpecialSigned,
    ];

    pub fn is_right(self) -> bool {
        !matches!(self, ProductFlavor::Universal | ProductFlavor::Normal | ProductFlavor::Special)
    }

    pub fn name(self) -> &'static str {
        match self {
            ProductFlavor::Universal => "universal",
            ProductFlavor::Normal => "normal",
            ProductFlavor::Special => "special",
            ProductFlavor::RightUniversal => "right_universal",
            ProductFlavor::RightNormal => "right_normal",
            ProductFlavor::RightSpecial => "right_special",
            ProductFlavor::RightStrictlyNormal => "right_strictly_normal",
            ProductFlavor::RightWeaklySpecial => "right_weakly_special",
            ProductFlavor::RightSpecialSigned => "right_special_signed",
        }
    }

    /// The letter coproduct this flavor is built from.
    pub fn letter_table(self, letter: Letter) -> &'static [(Letter, Letter)] {
        use Letter::*;
        const ETA_FULL: &[(Letter, Letter)] = &[(Eta, Eta), (Gamma, Eta), (Eta, Gamma), (Gamma, Gamma)];
        const ETA_ONLY: &[(Letter, Letter)] = &[(Eta, Eta)];
        const GAMMA_FULL: &[(Letter, Letter)] = &[(Gamma, Gamma), (Gamma, Eta), (Eta, Gamma)];
        const GAMMA_SPLIT: &[(Letter, Letter)] = &[(Gamma, Eta), (Eta, Gamma)];
        const BETA_UNIVERSAL: &[(Letter, Letter)] = &[
            (Beta, Gamma),
            (Beta, Eta),
            (Eta, Beta),
            (Alpha, Alpha),
            (Alpha, Eta),
            (Eta, Alpha),
            (Eta, Eta),
        ];
        const BETA_NORMAL: &[(Letter, Letter)] = &[(Beta, Gamma), (Beta, Eta), (Eta, Beta)];
        const BETA_SPLIT: &[(Letter, Letter)] = &[(Beta, Eta), (Eta, Beta)];
        const BETA_RIGHT_UNIVERSAL: &[(Letter, Letter)] = &[(Beta, Gamma), (Beta, Eta), (Eta, Beta), (Eta, Eta)];
        const BETA_WEAK: &[(Letter, Letter)] = &[(Beta, Eta), (Eta, Beta), (Eta, Eta)];
        const ALPHA_FULL: &[(Letter, Letter)] = &[(Alpha, Alpha), (Alpha, Eta), (Eta, Alpha), (Eta, Eta)];
        const ALPHA_SPLIT: &[(Letter, Letter)] = &[(Alpha, Eta), (Eta, Alpha)];
        const NONE: &[(Letter, Letter)] = &[];
        use ProductFlavor::*;
        match (self, letter) {
            (Universal, Eta) | (Normal, Eta) | (RightUniversal, Eta) | (RightNormal, Eta) => ETA_FULL,
            (_, Eta) => ETA_ONLY,
            (Special, Gamma) | (RightSpecial, Gamma) | (RightSpecialSigned, Gamma) | (RightWeaklySpecial, Gamma) => {
                GAMMA_SPLIT
            }
            (_, Gamma) => GAMMA_FULL,
            (Universal, Beta) => BETA_UNIVERSAL,
            (Normal, Beta) | (RightNormal, Beta) | (RightStrictlyNormal, Beta) => BETA_NORMAL,
            (Special, Beta) | (RightSpecial, Beta) | (RightSpecialSigned, Beta) => BETA_SPLIT,
            (RightUniversal, Beta) => BETA_RIGHT_UNIVERSAL,
            (RightWeaklySpecial, Beta) => BETA_WEAK,
            (Universal, Alpha) | (Normal, Alpha) => ALPHA_FULL,
            (Special, Alpha) => ALPHA_SPLIT,
            (_, Alpha) => NONE,
        }
    }
}

impl fmt::Display for ProductFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProductFlavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProductFlavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown flavor '{s}'")))
    }
}

/// Letters of the one-coordinate model: `dβ = γ`, only `β` has odd degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Alpha,
    Beta,
    Gamma,
    Eta,
}

/// Sign of the permutation sorting `μ` followed by `ν`.
pub fn shuffle_sign(mu: VertexSet, nu: VertexSet) -> Result<i8> {
    if !mu.is_disjoint(nu) {
        return Err(Error::Validation(format!("shuffle of overlapping sets {mu} and {nu}")));
    }
    Ok(shuffle_sign_unchecked(mu, nu))
}

pub(crate) fn shuffle_sign_unchecked(mu: VertexSet, nu: VertexSet) -> i8 {
    let inversions: usize = nu.iter().map(|v| mu.len() - mu.rank_of(v)).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Whether the restriction product `(left, right) → target` is the diagonal
/// cup product (true) or zero (false) for the given flavor.
pub fn gate(flavor: ProductFlavor, target: IndexPair, left: IndexPair, right: IndexPair) -> Result<bool> {
    let (s, w) = (target.sigma(), target.omega());
    let (s1, w1) = (left.sigma(), left.omega());
    let (s2, w2) = (right.sigma(), right.omega());
    if flavor.is_right() && !(s.is_empty() && s1.is_empty() && s2.is_empty()) {
        return Err(Error::Validation(format!("{flavor} is defined only on (∅, ω) indices")));
    }
    let w12 = w1.union(w2);
    let s12 = s1.union(s2);
    Ok(match flavor {
        ProductFlavor::Universal => s12.difference(s).is_subset(w.difference(w12)),
        ProductFlavor::Normal => s12.is_subset(s) && w.is_subset(w12),
        ProductFlavor::Special => s12 == s && s1.is_disjoint(s2) && w == w12 && w1.is_disjoint(w2),
        ProductFlavor::RightUniversal => true,
        ProductFlavor::RightNormal => w.is_subset(w12),
        ProductFlavor::RightSpecial | ProductFlavor::RightSpecialSigned => w == w12 && w1.is_disjoint(w2),
        ProductFlavor::RightStrictlyNormal => w == w12,
        ProductFlavor::RightWeaklySpecial => w12.is_subset(w) && w1.is_disjoint(w2),
    })
}

/// A sparse cochain on the faces of one Hochster piece.
pub type Cochain = BTreeMap<VertexSet, BigInt>;

/// The diagonal cochain product of two faces, landing in `K_{σ,ω}`.
///
/// The summation face `λ` must meet `ω′∖(σ′∪σ″)` in `μ`,
/// `(ω″∖ω′)∖(σ′∪σ″)` in `ν`, and contain all of `ω∖(ω′∪ω″)`. Both
/// `σ` and `σ′∪σ″` must avoid `ω′∪ω″`. Without these support conditions the
/// output is not a cocycle in general.
///
/// The sign sorts the concatenation `μ, ν, ω∖(ω′∪ω″)`; on disjointly covered
/// targets this is the shuffle sign `⟨μ, ν⟩`.
pub fn pi_delta(
    k: &SimplicialComplex,
    target: IndexPair,
    left: IndexPair,
    right: IndexPair,
    mu: VertexSet,
    nu: VertexSet,
) -> Result<Cochain> {
    if !k.k_sigma_omega(left.sigma(), left.omega())?.contains_face(mu) {
        return Err(Error::Validation(format!("{mu} is not a face of K at {left}")));
    }
    if !k.k_sigma_omega(right.sigma(), right.omega())?.contains_face(nu) {
        return Err(Error::Validation(format!("{nu} is not a face of K at {right}")));
    }
    let s12 = left.sigma().union(right.sigma());
    let w12 = left.omega().union(right.omega());
    let (s, w) = (target.sigma(), target.omega());
    if !s12.difference(s).is_subset(w.difference(w12)) {
        return Err(Error::Validation(format!(
            "diagonal product undefined for {left} ⊗ {right} → {target}"
        )));
    }
    Ok(pi_delta_unchecked(k, target, left, right, mu, nu)
        .map(|(lambda, sign)| Cochain::from([(lambda, BigInt::from(sign))]))
        .unwrap_or_default())
}

fn pi_delta_unchecked(
    k: &SimplicialComplex,
    target: IndexPair,
    left: IndexPair,
    right: IndexPair,
    mu: VertexSet,
    nu: VertexSet,
) -> Option<(VertexSet, i8)> {
    let s12 = left.sigma().union(right.sigma());
    let (w1, w2) = (left.omega(), right.omega());
    let w12 = w1.union(w2);
    let (s, w) = (target.sigma(), target.omega());
    if !mu.is_disjoint(nu) || !s.is_disjoint(w12) || !s12.is_disjoint(w12) {
        return None;
    }
    if !mu.is_subset(w1.difference(s12)) || !nu.is_subset(w2.difference(w1).difference(s12)) {
        return None;
    }
    let free = w.difference(w12);
    let lambda = mu.union(nu).union(free);
    if !lambda.is_subset(w) || !k.contains_face(s.union(lambda)) {
        return None;
    }
    Some((lambda, shuffle_sign_unchecked(mu, nu) * shuffle_sign_unchecked(mu.union(nu), free)))
}

/// The restriction product computed straight from the letter coproduct of a
/// flavor: each coordinate's target letter is split according to the table,
/// with the sign of the interleaving of the odd (`β`) letters.
pub fn letter_restriction_product(
    k: &SimplicialComplex,
    flavor: ProductFlavor,
    target: IndexPair,
    left: IndexPair,
    right: IndexPair,
    mu: VertexSet,
    nu: VertexSet,
) -> Cochain {
    let mut out = Cochain::new();
    let (s, w) = (target.sigma(), target.omega());
    if !k.contains_face(s) {
        return out;
    }
    let piece = k.link(s).restrict(w);
    for lambda in piece.faces() {
        let mut b1 = VertexSet::EMPTY;
        let mut b2 = VertexSet::EMPTY;
        let mut ok = true;
        for v in 1..=k.m() {
            let letter = if s.contains(v) {
                Letter::Alpha
            } else if lambda.contains(v) {
                Letter::Beta
            } else if w.contains(v) {
                Letter::Gamma
            } else {
                Letter::Eta
            };
            let fits = |l: Letter, idx: IndexPair, face: VertexSet| match l {
                Letter::Alpha => idx.sigma().contains(v),
                Letter::Beta => idx.omega().contains(v) && face.contains(v),
                Letter::Gamma => idx.omega().contains(v) && !face.contains(v),
                Letter::Eta => !idx.sigma().contains(v) && !idx.omega().contains(v),
            };
            let hit = flavor
                .letter_table(letter)
                .iter()
                .find(|(l1, l2)| fits(*l1, left, mu) && fits(*l2, right, nu));
            match hit {
                Some((l1, l2)) => {
                    if *l1 == Letter::Beta {
                        b1 = b1.insert(v);
                    }
                    if *l2 == Letter::Beta {
                        b2 = b2.insert(v);
                    }
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && b1 == mu && b2 == nu {
            let created = lambda.difference(mu.union(nu));
            let mut sign = shuffle_sign_unchecked(mu, nu) * shuffle_sign_unchecked(mu.union(nu), created);
            if flavor == ProductFlavor::RightSpecialSigned {
                sign *= shuffle_sign_unchecked(left.omega(), right.omega());
            }
            *out.entry(lambda).or_insert_with(BigInt::zero) += BigInt::from(sign);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// One index's piece: `K_{σ,ω}`, its shifted cochain complex and cohomology.
#[derive(Clone, Debug)]
pub struct HochsterPiece {
    pub index: IndexPair,
    pub complex: SimplicialComplex,
    pub cochains: AugmentedCochainComplex,
    pub summary: HomologySummary,
}

impl HochsterPiece {
    pub fn build(k: &SimplicialComplex, index: IndexPair, ring: CoefficientRing) -> Result<Option<Self>> {
        let complex = k.k_sigma_omega(index.sigma(), index.omega())?;
        if complex.is_void() {
            return Ok(None);
        }
        let cochains = complex.augmented_cochain_complex(k.ground())?;
        let free = FreeComplex::cochain(
            cochains.bases.iter().map(|b| b.len()).collect(),
            cochains.coboundaries.clone(),
        )?;
        let summary = homology(&free, ring)?;
        Ok(Some(HochsterPiece { index, complex, cochains, summary }))
    }

    /// Generators in degree `d`: free ones then torsion ones.
    pub fn generator_count(&self, d: usize) -> usize {
        self.summary.degrees.get(d).map_or(0, |s| s.generator_count())
    }

    /// Order of generator `slot` in degree `d` (zero for free generators).
    pub fn order(&self, d: usize, slot: usize) -> BigInt {
        let s = &self.summary.degrees[d];
        if slot < s.free_rank() {
            BigInt::zero()
        } else {
            s.torsion[slot - s.free_rank()].0.clone()
        }
    }

    /// Cocycle with the given coordinates in degree `d`.
    pub fn cocycle(&self, d: usize, coords: &[BigInt]) -> Cochain {
        let s = &self.summary.degrees[d];
        let reps = s.free_reps.iter().chain(s.torsion.iter().map(|(_, r)| r));
        let mut out = Cochain::new();
        for (c, rep) in coords.iter().zip(reps) {
            if c.is_zero() {
                continue;
            }
            for (face, x) in self.cochains.bases[d].iter().zip(rep) {
                if !x.is_zero() {
                    *out.entry(*face).or_insert_with(BigInt::zero) += c * x;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Coordinates of a cocycle supported in degree `d`.
    pub fn coordinates(&self, d: usize, z: &Cochain) -> Result<Vec<BigInt>> {
        let basis = self
            .cochains
            .bases
            .get(d)
            .ok_or_else(|| Error::Consistency(format!("degree {d} outside the piece at {}", self.index)))?;
        let mut v = vec![BigInt::zero(); basis.len()];
        for (face, c) in z {
            let i = self
                .cochains
                .index_of(*face)
                .filter(|_| face.len() == d)
                .ok_or_else(|| Error::Consistency(format!("{face} is not a degree-{d} face at {}", self.index)))?;
            v[i] += c;
        }
        self.summary.coordinates(d, &v)
    }

    /// `δz` of a degree-`d` cochain.
    pub fn coboundary(&self, d: usize, z: &Cochain) -> Cochain {
        let mut v = vec![BigInt::zero(); self.cochains.dim(d)];
        for (face, c) in z {
            if let Some(i) = self.cochains.index_of(*face) {
                v[i] += c;
            }
        }
        let mut out = Cochain::new();
        if let (Some(mat), Some(next)) = (self.cochains.coboundaries.get(d), self.cochains.bases.get(d + 1)) {
            for (face, x) in next.iter().zip(mat.mul_vec(&v)) {
                let x = self.summary.ring.reduce(x);
                if !x.is_zero() {
                    out.insert(*face, x);
                }
            }
        }
        out
    }
}

/// `H*(K_{σ,ω})` for every index of a world; void pieces are omitted.
#[derive(Clone, Debug)]
pub struct TotalComplex {
    pub k: SimplicialComplex,
    pub world: World,
    pub ring: CoefficientRing,
    pub pieces: BTreeMap<IndexPair, HochsterPiece>,
}

/// A cohomology class at one index, in the piece's generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HochsterClass {
    pub index: IndexPair,
    pub degree: usize,
    pub coords: Vec<BigInt>,
}

impl HochsterClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// Builds every Hochster piece of a world.
pub fn total_complex(
    k: &SimplicialComplex,
    world: World,
    ring: CoefficientRing,
    par: Parallelism,
) -> Result<TotalComplex> {
    total_complex_on(k, world, &all_indices(k.m(), world), ring, par)
}

/// Like [`total_complex`] but only over the given indices.
pub fn total_complex_on(
    k: &SimplicialComplex,
    world: World,
    indices: &[IndexPair],
    ring: CoefficientRing,
    par: Parallelism,
) -> Result<TotalComplex> {
    let built: Vec<Result<Option<HochsterPiece>>> = par.map(indices, |idx| HochsterPiece::build(k, *idx, ring));
    let mut pieces = BTreeMap::new();
    for p in built {
        if let Some(p) = p? {
            pieces.insert(p.index, p);
        }
    }
    Ok(TotalComplex { k: k.clone(), world, ring, pieces })
}

impl TotalComplex {
    pub fn piece(&self, index: IndexPair) -> Option<&HochsterPiece> {
        self.pieces.get(&index)
    }

    /// The basis class `slot` of degree `d` at `index`.
    pub fn basis_class(&self, index: IndexPair, d: usize, slot: usize) -> HochsterClass {
        let n = self.pieces[&index].generator_count(d);
        let mut coords = vec![BigInt::zero(); n];
        coords[slot] = BigInt::from(1);
        HochsterClass { index, degree: d, coords }
    }

    /// Restriction product of cocycles at one target, as a cochain.
    pub fn product_cochain(
        &self,
        flavor: ProductFlavor,
        target: IndexPair,
        left: IndexPair,
        a: &Cochain,
        right: IndexPair,
        b: &Cochain,
    ) -> Result<Cochain> {
        self.product_cochain_twisted(flavor, target, left, a, right, b, VertexSet::EMPTY)
    }

    /// As [`Self::product_cochain`], with `b(ν)` weighted by `(−1)^{|ν ∩ twist|}`.
    /// The engine uses the twist for coordinates where the left factor carries
    /// an odd image-sector label.
    #[allow(clippy::too_many_arguments)]
    pub fn product_cochain_twisted(
        &self,
        flavor: ProductFlavor,
        target: IndexPair,
        left: IndexPair,
        a: &Cochain,
        right: IndexPair,
        b: &Cochain,
        twist_set: VertexSet,
    ) -> Result<Cochain> {
        let mut out = Cochain::new();
        if !gate(flavor, target, left, right)? {
            return Ok(out);
        }
        let twist = if flavor == ProductFlavor::RightSpecialSigned {
            shuffle_sign_unchecked(left.omega(), right.omega())
        } else {
            1
        };
        for (mu, ca) in a {
            for (nu, cb) in b {
                if let Some((lambda, sign)) = pi_delta_unchecked(&self.k, target, left, right, *mu, *nu) {
                    let odd = nu.intersection(twist_set).len() % 2 == 1;
                    let c = ca * cb * BigInt::from(if odd { -sign * twist } else { sign * twist });
                    *out.entry(lambda).or_insert_with(BigInt::zero) += c;
                }
            }
        }
        let ring = self.ring;
        out.retain(|_, c| {
            *c = ring.reduce(std::mem::take(c));
            !c.is_zero()
        });
        Ok(out)
    }

    /// `a ∪ b` restricted to one target index; `None` when it vanishes at the
    /// cochain level.
    pub fn cup_at(
        &self,
        flavor: ProductFlavor,
        target: IndexPair,
        a: &HochsterClass,
        b: &HochsterClass,
    ) -> Result<Option<HochsterClass>> {
        self.cup_at_twisted(flavor, target, a, b, VertexSet::EMPTY)
    }

    pub fn cup_at_twisted(
        &self,
        flavor: ProductFlavor,
        target: IndexPair,
        a: &HochsterClass,
        b: &HochsterClass,
        twist_set: VertexSet,
    ) -> Result<Option<HochsterClass>> {
        let Some(tp) = self.piece(target) else { return Ok(None) };
        let pa = self.pieces.get(&a.index).ok_or_else(|| missing(a.index))?;
        let pb = self.pieces.get(&b.index).ok_or_else(|| missing(b.index))?;
        let za = pa.cocycle(a.degree, &a.coords);
        let zb = pb.cocycle(b.degree, &b.coords);
        let z = self.product_cochain_twisted(flavor, target, a.index, &za, b.index, &zb, twist_set)?;
        let Some(degree) = z.keys().next().map(|f| f.len()) else { return Ok(None) };
        if z.keys().any(|f| f.len() != degree) {
            return Err(Error::Consistency("product mixes degrees".into()));
        }
        if !tp.coboundary(degree, &z).is_empty() {
            return Err(Error::Consistency(format!(
                "product {} × {} → {target} is not a cocycle",
                a.index, b.index
            )));
        }
        let coords = tp.coordinates(degree, &z)?;
        let class = HochsterClass { index: target, degree, coords };
        Ok((!class.is_zero()).then_some(class))
    }

    /// `a ∪ b` summed over every target that passes the flavor's gate.
    pub fn cup_classes(&self, flavor: ProductFlavor, a: &HochsterClass, b: &HochsterClass) -> Result<Vec<HochsterClass>> {
        let mut out = Vec::new();
        for target in self.pieces.keys() {
            if !gate(flavor, *target, a.index, b.index)? {
                continue;
            }
            if let Some(c) = self.cup_at(flavor, *target, a, b)? {
                out.push(c);
            }
        }
        Ok(out)
    }
}

fn missing(index: IndexPair) -> Error {
    Error::Validation(format!("no cohomology at {index} (void piece)"))
}
