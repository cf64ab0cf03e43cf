//! Simplicial complexes on a ground set `[m]`, with ghost vertices and the
//! void complex kept distinct from `{∅}`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::IntMatrix;

/// Largest supported ground set; subsets are stored as bitmasks.
pub const MAX_VERTICES: usize = 31;

/// A subset of `[m] = {1..m}`, stored as a bitmask (bit `v-1` for vertex `v`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Builds a set from 1-based vertex labels.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Result<Self> {
        let mut bits = 0u32;
        for v in vs {
            if v == 0 || v > MAX_VERTICES {
                return Err(Error::Parse(format!("vertex {v} out of range 1..={MAX_VERTICES}")));
            }
            bits |= 1 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    /// `{1..m}`.
    pub fn full(m: usize) -> Self {
        if m >= 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << m) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << (v - 1))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v >= 1 && self.0 & (1 << (v - 1)) != 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn insert(self, v: usize) -> VertexSet {
        VertexSet(self.0 | (1 << (v - 1)))
    }

    pub fn remove(self, v: usize) -> VertexSet {
        VertexSet(self.0 & !(1 << (v - 1)))
    }

    /// Ascending 1-based vertices.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(t + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Number of elements strictly below `v`.
    pub fn rank_of(self, v: usize) -> usize {
        (self.0 & ((1u32 << (v - 1)) - 1)).count_ones() as usize
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut sub = 0u32;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = VertexSet(sub);
            if sub == full {
                done = true;
            } else {
                sub = (sub.wrapping_sub(full)) & full;
            }
            Some(out)
        })
    }

    /// Lexicographic comparison of the ascending vertex lists.
    pub fn lex_cmp(self, other: VertexSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A simplicial complex on `[m]`. `facets == None` is the void complex (no
/// faces at all); `Some(vec![∅])` is `{∅}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    m: usize,
    facets: Option<Vec<VertexSet>>,
}

impl SimplicialComplex {
    /// Builds a complex from any generating family; non-maximal sets are dropped.
    pub fn new(m: usize, generators: Vec<VertexSet>) -> Result<Self> {
        if m > MAX_VERTICES {
            return Err(Error::Validation(format!("m = {m} exceeds {MAX_VERTICES}")));
        }
        let ground = VertexSet::full(m);
        for g in &generators {
            if !g.is_subset(ground) {
                return Err(Error::Validation(format!("face {g} not inside [{m}]")));
            }
        }
        Ok(SimplicialComplex { m, facets: Some(maximal(generators)) })
    }

    pub fn void(m: usize) -> Self {
        SimplicialComplex { m, facets: None }
    }

    /// `{∅}` on `[m]`: every vertex a ghost.
    pub fn empty_face(m: usize) -> Self {
        SimplicialComplex { m, facets: Some(vec![VertexSet::EMPTY]) }
    }

    pub fn simplex(m: usize) -> Self {
        SimplicialComplex { m, facets: Some(vec![VertexSet::full(m)]) }
    }

    /// Boundary of the `m`-gon: edges `{i, i+1}` with indices mod `m`.
    pub fn polygon(m: usize) -> Self {
        let edges = (1..=m)
            .map(|i| VertexSet::singleton(i).insert(i % m + 1))
            .collect();
        SimplicialComplex::new(m, edges).expect("polygon within range")
    }

    pub fn from_facet_lists(m: usize, facets: &[&[usize]]) -> Result<Self> {
        let sets = facets
            .iter()
            .map(|f| VertexSet::from_vertices(f.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        SimplicialComplex::new(m, sets)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_none()
    }

    pub fn facets(&self) -> Option<&[VertexSet]> {
        self.facets.as_deref()
    }

    pub fn ground(&self) -> VertexSet {
        VertexSet::full(self.m)
    }

    pub fn contains_face(&self, tau: VertexSet) -> bool {
        match &self.facets {
            None => false,
            Some(fs) => fs.iter().any(|f| tau.is_subset(*f)),
        }
    }

    /// Every face, sorted by size then lexicographically.
    pub fn faces(&self) -> Vec<VertexSet> {
        let Some(fs) = &self.facets else { return Vec::new() };
        let mut all = BTreeSet::new();
        for f in fs {
            for s in f.subsets() {
                all.insert(s);
            }
        }
        let mut v: Vec<_> = all.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(*b)));
        v
    }

    /// Minimal non-faces inside the ground set.
    pub fn minimal_nonfaces(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = Vec::new();
        let mut cands: Vec<VertexSet> = self.ground().subsets().collect();
        cands.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(*b)));
        for c in cands {
            if !self.contains_face(c) && !out.iter().any(|n| n.is_subset(c)) {
                out.push(c);
            }
        }
        out
    }

    /// `{τ | τ ∩ σ = ∅, τ ∪ σ ∈ K}`; void when `σ ∉ K`.
    pub fn link(&self, sigma: VertexSet) -> SimplicialComplex {
        let Some(fs) = &self.facets else { return SimplicialComplex::void(self.m) };
        if !self.contains_face(sigma) {
            return SimplicialComplex::void(self.m);
        }
        let gens = fs
            .iter()
            .filter(|f| sigma.is_subset(**f))
            .map(|f| f.difference(sigma))
            .collect();
        SimplicialComplex { m: self.m, facets: Some(maximal(gens)) }
    }

    /// Full subcomplex on `ω`; void stays void.
    pub fn restrict(&self, omega: VertexSet) -> SimplicialComplex {
        let Some(fs) = &self.facets else { return SimplicialComplex::void(self.m) };
        let gens = fs.iter().map(|f| f.intersection(omega)).collect();
        SimplicialComplex { m: self.m, facets: Some(maximal(gens)) }
    }

    /// The Hochster piece `(link σ)|_ω`, void when `σ ∉ K`.
    pub fn k_sigma_omega(&self, sigma: VertexSet, omega: VertexSet) -> Result<SimplicialComplex> {
        if !sigma.is_disjoint(omega) {
            return Err(Error::Validation(format!("index pair overlaps: σ={sigma}, ω={omega}")));
        }
        Ok(self.link(sigma).restrict(omega))
    }

    /// Alternating face count `Σ (-1)^{|F|-1}` over nonempty faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces()
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| if f.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    /// Augmented cochain complex with face `B` in degree `|B|`.
    pub fn augmented_cochain_complex(&self, ground: VertexSet) -> Result<AugmentedCochainComplex> {
        let faces = self.faces();
        if let Some(bad) = faces.iter().find(|f| !f.is_subset(ground)) {
            return Err(Error::Validation(format!("face {bad} outside ground {ground}")));
        }
        let top = faces.iter().map(|f| f.len()).max();
        let mut bases: Vec<Vec<VertexSet>> = match top {
            None => Vec::new(),
            Some(t) => vec![Vec::new(); t + 1],
        };
        for f in faces {
            bases[f.len()].push(f);
        }
        let mut coboundaries = Vec::with_capacity(bases.len());
        for d in 0..bases.len() {
            let empty = Vec::new();
            let next = bases.get(d + 1).unwrap_or(&empty);
            let mut mat = IntMatrix::zeros(next.len(), bases[d].len());
            for (c, b) in bases[d].iter().enumerate() {
                for v in ground.difference(*b).iter() {
                    let up = b.insert(v);
                    if let Ok(r) = next.binary_search_by(|x| x.lex_cmp(up)) {
                        // Sign (-1)^{p} with p the 1-based position of v in B ∪ {v}.
                        let sign = if b.rank_of(v) % 2 == 1 { 1 } else { -1 };
                        mat.set(r, c, BigInt::from(sign));
                    }
                }
            }
            coboundaries.push(mat);
        }
        Ok(AugmentedCochainComplex { bases, coboundaries })
    }
}

fn maximal(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.lex_cmp(*b)));
    sets.dedup();
    let mut out: Vec<VertexSet> = Vec::new();
    for s in sets {
        if !out.iter().any(|f| s.is_subset(*f)) {
            out.push(s);
        }
    }
    out.sort_by(|a, b| a.lex_cmp(*b));
    out
}

/// `ΣC̃*(L)`: per degree a lexicographic face basis and integer coboundaries
/// `δ_d : C^d → C^{d+1}` (rows indexed by degree `d+1` faces).
#[derive(Clone, Debug)]
pub struct AugmentedCochainComplex {
    pub bases: Vec<Vec<VertexSet>>,
    pub coboundaries: Vec<IntMatrix>,
}

impl AugmentedCochainComplex {
    pub fn dim(&self, d: usize) -> usize {
        self.bases.get(d).map_or(0, |b| b.len())
    }

    pub fn index_of(&self, face: VertexSet) -> Option<usize> {
        self.bases.get(face.len())?.binary_search_by(|x| x.lex_cmp(face)).ok()
    }

    /// `δ∘δ = 0` in every degree.
    pub fn squares_to_zero(&self) -> bool {
        self.coboundaries
            .windows(2)
            .all(|w| w[1].mul(&w[0]).is_zero())
    }
}

/// JSON form: `{"m": 4, "facets": [[1,2],[2,3]]}`; `null` facets is void.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComplexFile {
    pub m: usize,
    pub facets: Option<Vec<Vec<usize>>>,
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<SimplicialComplex> {
        match self.facets {
            None => Ok(SimplicialComplex::void(self.m)),
            Some(fs) if fs.is_empty() => Ok(SimplicialComplex::empty_face(self.m)),
            Some(fs) => {
                let sets = fs
                    .into_iter()
                    .map(|f| {
                        if let Some(v) = f.iter().find(|v| **v == 0 || **v > self.m) {
                            return Err(Error::Parse(format!("vertex {v} outside 1..={}", self.m)));
                        }
                        VertexSet::from_vertices(f)
                    })
                    .collect::<Result<Vec<_>>>()?;
                SimplicialComplex::new(self.m, sets)
            }
        }
    }

    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexFile {
            m: k.m(),
            facets: k.facets().map(|fs| fs.iter().map(|f| f.to_vec()).collect()),
        }
    }
}

impl SimplicialComplex {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ComplexFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("complex: {e}")))?;
        file.into_complex()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexFile::from_complex(self)).expect("complex serializes")
    }
}

/// The six-vertex triangulation of the real projective plane.
pub fn rp2() -> SimplicialComplex {
    SimplicialComplex::from_facet_lists(
        6,
        &[
            &[1, 2, 3],
            &[1, 3, 4],
            &[1, 4, 5],
            &[1, 5, 6],
            &[1, 2, 6],
            &[2, 3, 5],
            &[2, 4, 5],
            &[2, 4, 6],
            &[3, 4, 6],
            &[3, 5, 6],
        ],
    )
    .expect("rp2 in range")
}

/// A random complex on `[m]`: each vertex is a ghost with small probability,
/// then random faces are added among the live vertices.
pub fn random_complex<R: rand::Rng>(rng: &mut R, m: usize) -> SimplicialComplex {
    let mut live = VertexSet::EMPTY;
    for v in 1..=m {
        if rng.gen_bool(0.85) {
            live = live.insert(v);
        }
    }
    let mut gens = vec![VertexSet::EMPTY];
    for v in live.iter() {
        gens.push(VertexSet::singleton(v));
    }
    let tries = rng.gen_range(0..=2 * m);
    for _ in 0..tries {
        let size = rng.gen_range(2..=3.min(live.len().max(2)));
        let verts: Vec<usize> = live.iter().collect();
        if verts.len() < size {
            break;
        }
        let mut face = VertexSet::EMPTY;
        while face.len() < size {
            face = face.insert(verts[rng.gen_range(0..verts.len())]);
        }
        gens.push(face);
    }
    SimplicialComplex::new(m, gens).expect("random complex in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied()).unwrap()
    }

    #[test]
    fn contains_face_examples() {
        let hex = SimplicialComplex::polygon(6);
        assert!(hex.contains_face(vs(&[1, 2])));
        assert!(!SimplicialComplex::void(3).contains_face(VertexSet::EMPTY));
        assert!(!SimplicialComplex::empty_face(1).contains_face(vs(&[1])));
        assert!(SimplicialComplex::empty_face(1).contains_face(VertexSet::EMPTY));
    }

    #[test]
    fn link_examples() {
        let hex = SimplicialComplex::polygon(6);
        assert_eq!(hex.link(vs(&[1])).facets().unwrap(), &[vs(&[2]), vs(&[6])]);
        assert_eq!(hex.link(VertexSet::EMPTY), hex);
        assert!(hex.link(vs(&[1, 3])).is_void());
    }

    #[test]
    fn restrict_examples() {
        let hex = SimplicialComplex::polygon(6);
        assert_eq!(hex.restrict(vs(&[1, 2, 4])).facets().unwrap(), &[vs(&[1, 2]), vs(&[4])]);
        assert_eq!(hex.restrict(VertexSet::EMPTY), SimplicialComplex::empty_face(6));
        assert_eq!(hex.restrict(VertexSet::full(6)), hex);
        assert!(SimplicialComplex::void(3).restrict(vs(&[1])).is_void());
    }

    #[test]
    fn hochster_piece_examples() {
        let hex = SimplicialComplex::polygon(6);
        let piece = hex.k_sigma_omega(vs(&[1]), vs(&[3, 4, 5])).unwrap();
        assert_eq!(piece, SimplicialComplex::empty_face(6));
        assert_eq!(hex.k_sigma_omega(VertexSet::EMPTY, VertexSet::full(6)).unwrap(), hex);
        assert!(hex.k_sigma_omega(vs(&[2, 5]), vs(&[1])).unwrap().is_void());
        assert!(hex.k_sigma_omega(vs(&[1]), vs(&[1, 2])).is_err());
    }

    #[test]
    fn cochain_complex_of_empty_face() {
        let c = SimplicialComplex::empty_face(2).augmented_cochain_complex(VertexSet::full(2)).unwrap();
        assert_eq!(c.bases, vec![vec![VertexSet::EMPTY]]);
        assert!(c.coboundaries[0].is_zero());
    }

    #[test]
    fn cochain_complex_of_triangle_boundary() {
        let k = SimplicialComplex::from_facet_lists(3, &[&[1, 2], &[1, 3], &[2, 3]]).unwrap();
        let c = k.augmented_cochain_complex(VertexSet::full(3)).unwrap();
        assert_eq!(c.bases[2], vec![vs(&[1, 2]), vs(&[1, 3]), vs(&[2, 3])]);
        // δ{1} = +{1,2} + {1,3}
        let d1 = &c.coboundaries[1];
        let col = c.index_of(vs(&[1])).unwrap();
        assert_eq!(d1.get(0, col), &BigInt::from(1));
        assert_eq!(d1.get(1, col), &BigInt::from(1));
        assert_eq!(d1.get(2, col), &BigInt::from(0));
        // δ{2} = -{1,2} + {2,3}
        let col = c.index_of(vs(&[2])).unwrap();
        assert_eq!(d1.get(0, col), &BigInt::from(-1));
        assert_eq!(d1.get(2, col), &BigInt::from(1));
        assert!(c.squares_to_zero());
    }

    #[test]
    fn void_complex_is_zero_complex() {
        let c = SimplicialComplex::void(3).augmented_cochain_complex(VertexSet::full(3)).unwrap();
        assert!(c.bases.is_empty());
    }

    #[test]
    fn json_round_trip_and_conventions() {
        let k = SimplicialComplex::from_json(r#"{"m":3,"facets":null}"#).unwrap();
        assert!(k.is_void());
        let k = SimplicialComplex::from_json(r#"{"m":3,"facets":[]}"#).unwrap();
        assert_eq!(k, SimplicialComplex::empty_face(3));
        let k = SimplicialComplex::from_json(r#"{"m":3,"facets":[[]]}"#).unwrap();
        assert_eq!(k, SimplicialComplex::empty_face(3));
        let hex = SimplicialComplex::polygon(6);
        assert_eq!(SimplicialComplex::from_json(&hex.to_json()).unwrap(), hex);
        assert!(SimplicialComplex::from_json(r#"{"m":2,"facets":[[3]]}"#).is_err());
    }

    #[test]
    fn subsets_enumerate_powerset() {
        assert_eq!(vs(&[1, 3]).subsets().count(), 4);
        assert_eq!(VertexSet::EMPTY.subsets().collect::<Vec<_>>(), vec![VertexSet::EMPTY]);
    }

    #[test]
    fn minimal_nonfaces_of_square() {
        let sq = SimplicialComplex::polygon(4);
        assert_eq!(sq.minimal_nonfaces(), vec![vs(&[1, 3]), vs(&[2, 4])]);
    }
}
