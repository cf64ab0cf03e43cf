//! Cohomology groups and cup-product rings of `Z(K; X, A)`: the complex side
//! (Hochster pieces with a restriction product) tensored index-by-index with
//! the pair side (the per-coordinate dual products).

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlinalg::CoefficientRing;
use crate::indexed::{all_indices, interleave_sign, IndexPair, Sector, World};
use crate::kalgebra::{total_complex_on, HochsterClass, ProductFlavor, TotalComplex};
use crate::pairs::{classify, dual_product, ClassFlag, PairClass, PairData, PairProduct};
use crate::par::Parallelism;
use crate::ring::{fingerprint as ring_fingerprint, Fingerprint, ProductEntry, RingBasisElement, RingPresentation};
use crate::simplicial::{SimplicialComplex, VertexSet};

/// Replicates a single pair `m` times; otherwise requires exactly `m` pairs.
pub fn expand_pairs(pairs: &[PairData], m: usize) -> Result<Vec<PairData>> {
    match pairs.len() {
        1 => Ok(vec![pairs[0].clone(); m]),
        n if n == m => Ok(pairs.to_vec()),
        n => Err(Error::Validation(format!("need 1 or {m} pairs, got {n}"))),
    }
}

fn check_rings(pairs: &[PairData], ring: CoefficientRing) -> Result<()> {
    for p in pairs {
        if p.ring != CoefficientRing::Integers && p.ring != ring {
            return Err(Error::Validation(format!(
                "mixed coefficient rings: pair data over {} used over {ring}",
                p.ring
            )));
        }
    }
    Ok(())
}

/// The most specific flavor every pair admits.
pub fn auto_flavor(classes: &[PairClass]) -> ProductFlavor {
    use ProductFlavor as F;
    let order = if classes.iter().all(|c| c.has(ClassFlag::Mono)) {
        vec![F::RightSpecial, F::RightStrictlyNormal, F::RightWeaklySpecial, F::RightNormal, F::RightUniversal]
    } else {
        vec![F::Special, F::Normal, F::Universal]
    };
    order.into_iter().find(|f| classes.iter().all(|c| c.admits(*f))).unwrap_or(F::Universal)
}

/// One basis element: an index, a cohomology generator of its Hochster piece
/// and one pair generator per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElement {
    #[serde(serialize_with = "index_string")]
    pub index: IndexPair,
    pub k_degree: usize,
    pub k_slot: usize,
    /// Per coordinate, the position of the generator in that pair's product table.
    pub labels: Vec<usize>,
    pub total_degree: i64,
    #[serde(skip)]
    pub order: BigInt,
}

fn index_string<S: serde::Serializer>(i: &IndexPair, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(i)
}

/// Per-coordinate generator tuples allowed at an index, with their degree sums.
fn label_tuples(products: &[PairProduct], index: IndexPair) -> Vec<(Vec<usize>, i64)> {
    let mut out = vec![(Vec::new(), 0i64)];
    for (k, prod) in products.iter().enumerate() {
        let choices = prod.in_sector(index.sector(k + 1));
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for (tuple, deg) in &out {
            for g in &choices {
                let mut t = tuple.clone();
                t.push(*g);
                next.push((t, deg + prod.generators[*g].degree));
            }
        }
        out = next;
        if out.is_empty() {
            break;
        }
    }
    out
}

/// Indices with a nonzero pair-side group.
fn supported_indices(products: &[PairProduct], world: World) -> Vec<IndexPair> {
    all_indices(products.len(), world)
        .into_iter()
        .filter(|idx| (0..products.len()).all(|k| !products[k].in_sector(idx.sector(k + 1)).is_empty()))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupRow {
    pub index: String,
    /// K-degree → free rank of the Hochster piece.
    pub hochster_free: BTreeMap<usize, usize>,
    pub hochster_torsion: BTreeMap<usize, Vec<String>>,
    /// Pair-side degree → number of generator tuples.
    pub pair_ranks: BTreeMap<i64, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupTable {
    pub ring: String,
    pub rows: Vec<GroupRow>,
    pub betti: BTreeMap<i64, usize>,
    #[serde(serialize_with = "torsion_strings")]
    pub torsion: BTreeMap<i64, Vec<BigInt>>,
}

fn torsion_strings<S: serde::Serializer>(t: &BTreeMap<i64, Vec<BigInt>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let m: BTreeMap<i64, Vec<String>> = t.iter().map(|(d, v)| (*d, v.iter().map(|x| x.to_string()).collect())).collect();
    m.serialize(s)
}

impl GroupTable {
    pub fn betti_vector(&self) -> Vec<usize> {
        let top = self.betti.iter().filter(|(_, n)| **n > 0).map(|(d, _)| *d).max().unwrap_or(0);
        (0..=top).map(|d| self.betti.get(&d).copied().unwrap_or(0)).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,betti,torsion\n");
        for (d, b) in &self.betti {
            let t: Vec<String> = self.torsion.get(d).map_or(vec![], |v| v.iter().map(|x| x.to_string()).collect());
            out.push_str(&format!("{d},{b},{}\n", t.join(" ")));
        }
        out
    }
}

fn prepare(pairs: &[PairData], m: usize, ring: CoefficientRing) -> Result<(Vec<PairProduct>, Vec<PairClass>)> {
    let pairs = expand_pairs(pairs, m)?;
    check_rings(&pairs, ring)?;
    let mut products = Vec::with_capacity(m);
    let mut classes = Vec::with_capacity(m);
    for p in &pairs {
        classes.push(classify(p)?);
        let mut prod = dual_product(p)?;
        for terms in prod.table.values_mut() {
            for (_, c) in terms.iter_mut() {
                *c = ring.reduce(std::mem::take(c));
            }
            terms.retain(|(_, c)| !c.is_zero());
        }
        prod.table.retain(|_, t| !t.is_empty());
        products.push(prod);
    }
    Ok((products, classes))
}

/// `H*(Z(K; X, A))` as a direct sum over indices of Hochster cohomology
/// tensored with the (free) pair-side groups.
pub fn groups(k: &SimplicialComplex, pairs: &[PairData], ring: CoefficientRing, par: Parallelism) -> Result<GroupTable> {
    let (products, _) = prepare(pairs, k.m(), ring)?;
    let indices = supported_indices(&products, World::Full);
    let total = total_complex_on(k, World::Full, &indices, ring, par)?;
    let mut rows = Vec::new();
    let mut betti: BTreeMap<i64, usize> = BTreeMap::new();
    let mut torsion: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
    for (index, piece) in &total.pieces {
        let mut pair_ranks: BTreeMap<i64, usize> = BTreeMap::new();
        for (_, d) in label_tuples(&products, *index) {
            *pair_ranks.entry(d).or_default() += 1;
        }
        let mut row = GroupRow {
            index: index.to_string(),
            hochster_free: BTreeMap::new(),
            hochster_torsion: BTreeMap::new(),
            pair_ranks: pair_ranks.clone(),
        };
        for (d, s) in piece.summary.degrees.iter().enumerate() {
            let free = s.free_rank();
            let tors = s.torsion_orders();
            if free > 0 {
                row.hochster_free.insert(d, free);
            }
            if !tors.is_empty() {
                row.hochster_torsion.insert(d, tors.iter().map(|x| x.to_string()).collect());
            }
            for (pd, count) in &pair_ranks {
                let total_degree = d as i64 + pd;
                if free > 0 {
                    *betti.entry(total_degree).or_default() += free * count;
                }
                for t in &tors {
                    torsion.entry(total_degree).or_default().extend(std::iter::repeat_n(t.clone(), *count));
                }
            }
        }
        if !row.hochster_free.is_empty() || !row.hochster_torsion.is_empty() {
            rows.push(row);
        }
    }
    for v in torsion.values_mut() {
        v.sort();
    }
    Ok(GroupTable { ring: ring.to_string(), rows, betti, torsion })
}

/// A computed ring together with its structured basis.
#[derive(Clone, Debug)]
pub struct EngineRing {
    pub flavor: ProductFlavor,
    pub elements: Vec<BasisElement>,
    pub presentation: RingPresentation,
    pub pair_products: Vec<PairProduct>,
}

impl EngineRing {
    pub fn position(&self, index: IndexPair, k_degree: usize, k_slot: usize, labels: &[usize]) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| e.index == index && e.k_degree == k_degree && e.k_slot == k_slot && e.labels == labels)
    }
}

type KClass = (IndexPair, usize, usize);

struct Assembly<'a> {
    flavor: ProductFlavor,
    ring: CoefficientRing,
    products: &'a [PairProduct],
    total: &'a TotalComplex,
    elements: &'a [BasisElement],
    lookup: &'a HashMap<(KClass, Vec<usize>), usize>,
}

impl Assembly<'_> {
    /// `Σ_tuples coef · labels` for the per-coordinate product of two tuples,
    /// including the interleaving sign unless the flavor carries it.
    fn pair_side(&self, l1: &[usize], l2: &[usize]) -> Vec<(Vec<usize>, BigInt)> {
        let mut out: Vec<(Vec<usize>, BigInt)> = vec![(Vec::new(), BigInt::one())];
        for (k, prod) in self.products.iter().enumerate() {
            let terms = prod.multiply(l1[k], l2[k]);
            if terms.is_empty() {
                return vec![];
            }
            let mut next = Vec::with_capacity(out.len() * terms.len());
            for (tuple, c) in &out {
                for (g, c2) in terms {
                    let mut t = tuple.clone();
                    t.push(*g);
                    next.push((t, c * c2));
                }
            }
            out = next;
        }
        if self.flavor != ProductFlavor::RightSpecialSigned {
            let degrees: Vec<(i64, i64)> = (0..l1.len())
                .map(|k| (self.products[k].generators[l1[k]].degree, self.products[k].generators[l2[k]].degree))
                .collect();
            if interleave_sign(&degrees) < 0 {
                for (_, c) in out.iter_mut() {
                    *c = -std::mem::take(c);
                }
            }
        }
        out
    }

    /// Coordinates where the labels sit in the image sector with odd degree.
    fn odd_neutral(&self, labels: &[usize]) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for (k, g) in labels.iter().enumerate() {
            let gen = &self.products[k].generators[*g];
            if gen.sector == Sector::Neutral && gen.degree % 2 != 0 {
                s = s.insert(k + 1);
            }
        }
        s
    }

    /// Whether moving the letters created at `created` past the preceding
    /// target labels is odd: `Σ_{j ∈ created} Σ_{i < j} |h_i|`.
    fn created_sign(&self, labels: &[usize], created: VertexSet) -> bool {
        let mut parity = 0i64;
        for j in created.iter() {
            for (k, g) in labels.iter().enumerate().take(j - 1) {
                parity += self.products[k].generators[*g].degree;
            }
        }
        parity % 2 != 0
    }

    fn target_index(&self, labels: &[usize]) -> IndexPair {
        let sectors: Vec<Sector> = labels.iter().enumerate().map(|(k, g)| self.products[k].generators[*g].sector).collect();
        IndexPair::from_sectors(&sectors)
    }

    /// All products `e_i · e_j` with `e_i` over `c1` and `e_j` over `c2`.
    fn products_over(
        &self,
        c1: KClass,
        c2: KClass,
        left: &[usize],
        right: &[usize],
    ) -> Result<Vec<ProductEntry>> {
        let a = self.total.basis_class(c1.0, c1.1, c1.2);
        let b = self.total.basis_class(c2.0, c2.1, c2.2);
        let mut cache: HashMap<(IndexPair, VertexSet), Option<HochsterClass>> = HashMap::new();
        let mut out = Vec::new();
        for &i in left {
            let e1 = &self.elements[i];
            let h1 = e1.total_degree - e1.k_degree as i64;
            let koszul = if (h1 * c2.1 as i64) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let twist_set = self.odd_neutral(&e1.labels);
            for &j in right {
                let e2 = &self.elements[j];
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (labels, c) in self.pair_side(&e1.labels, &e2.labels) {
                    let target = self.target_index(&labels);
                    let kprod = match cache.get(&(target, twist_set)) {
                        Some(v) => v.clone(),
                        None => {
                            let v = if self.total.piece(target).is_some() {
                                self.total.cup_at_twisted(self.flavor, target, &a, &b, twist_set)?
                            } else {
                                None
                            };
                            cache.insert((target, twist_set), v.clone());
                            v
                        }
                    };
                    let Some(kprod) = kprod else { continue };
                    let created = target.omega().difference(c1.0.omega().union(c2.0.omega()));
                    let c = if self.created_sign(&labels, created) { -c } else { c };
                    for (slot, kc) in kprod.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        let key = ((target, kprod.degree, slot), labels.clone());
                        let pos = *self.lookup.get(&key).ok_or_else(|| {
                            Error::Consistency(format!("product lands outside the basis at {target}"))
                        })?;
                        *acc.entry(pos).or_insert_with(BigInt::zero) += &c * kc * &koszul;
                    }
                }
                let terms: Vec<(usize, BigInt)> = acc
                    .into_iter()
                    .map(|(pos, c)| {
                        let c = self.ring.reduce(c);
                        let order = &self.elements[pos].order;
                        (pos, if order.is_zero() { c } else { c.mod_floor(order) })
                    })
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                if !terms.is_empty() {
                    out.push(((i, j), terms));
                }
            }
        }
        Ok(out)
    }
}

fn label_string(products: &[PairProduct], labels: &[usize]) -> String {
    let names: Vec<&str> = labels.iter().enumerate().map(|(k, g)| products[k].generators[*g].label.as_str()).collect();
    names.join(",")
}

/// The cup-product ring, with the complex-side product of the given flavor
/// (`None` picks the most specific admissible one).
pub fn ring(
    k: &SimplicialComplex,
    pairs: &[PairData],
    flavor: Option<ProductFlavor>,
    ring: CoefficientRing,
    par: Parallelism,
) -> Result<EngineRing> {
    let m = k.m();
    let (products, classes) = prepare(pairs, m, ring)?;
    let flavor = match flavor {
        Some(f) => {
            if let Some(n) = classes.iter().position(|c| !c.admits(f)) {
                return Err(Error::Validation(format!("flavor {f} is not admissible for pair {}", n + 1)));
            }
            f
        }
        None => auto_flavor(&classes),
    };
    let world = if flavor.is_right() { World::Right } else { World::Full };
    let indices = supported_indices(&products, world);
    let total = total_complex_on(k, world, &indices, ring, par)?;

    let mut elements = Vec::new();
    let mut kclasses: Vec<KClass> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (index, piece) in &total.pieces {
        let tuples = label_tuples(&products, *index);
        for d in 0..piece.summary.degrees.len() {
            for slot in 0..piece.generator_count(d) {
                let mut group = Vec::new();
                for (labels, pd) in &tuples {
                    group.push(elements.len());
                    elements.push(BasisElement {
                        index: *index,
                        k_degree: d,
                        k_slot: slot,
                        labels: labels.clone(),
                        total_degree: d as i64 + pd,
                        order: piece.order(d, slot),
                    });
                }
                kclasses.push((*index, d, slot));
                groups.push(group);
            }
        }
    }
    let lookup: HashMap<(KClass, Vec<usize>), usize> = elements
        .iter()
        .enumerate()
        .map(|(n, e)| (((e.index, e.k_degree, e.k_slot), e.labels.clone()), n))
        .collect();

    let assembly = Assembly { flavor, ring, products: &products, total: &total, elements: &elements, lookup: &lookup };
    let class_pairs: Vec<(usize, usize)> =
        (0..kclasses.len()).flat_map(|a| (0..kclasses.len()).map(move |b| (a, b))).collect();
    let computed = par.map(&class_pairs, |(a, b)| {
        assembly.products_over(kclasses[*a], kclasses[*b], &groups[*a], &groups[*b])
    });
    let mut table = BTreeMap::new();
    for chunk in computed {
        for (key, terms) in chunk? {
            table.insert(key, terms);
        }
    }

    let empty = IndexPair::right(VertexSet::EMPTY);
    let unit_labels: Vec<usize> = products.iter().map(|p| p.unit).collect();
    let unit = lookup.get(&((empty, 0, 0), unit_labels)).copied();
    let basis = elements
        .iter()
        .map(|e| RingBasisElement {
            label: format!("{} h{}.{} ({})", e.index, e.k_degree, e.k_slot, label_string(&products, &e.labels)),
            degree: e.total_degree,
            order: e.order.clone(),
        })
        .collect();
    let presentation = RingPresentation { ring, basis, products: table, unit };
    Ok(EngineRing { flavor, elements, presentation, pair_products: products })
}

/// `(H*(X_1) ⊗ … ⊗ H*(X_m)) / I(K)` for pairs with `i*` onto: tensors whose
/// cokernel-sector support is a non-face are killed.
pub fn stanley_reisner(k: &SimplicialComplex, pairs: &[PairData], ring: CoefficientRing) -> Result<RingPresentation> {
    let m = k.m();
    let (products, classes) = prepare(pairs, m, ring)?;
    if let Some(n) = classes.iter().position(|c| !c.has(ClassFlag::Epi)) {
        return Err(Error::Validation(format!("pair {} has a nonzero kernel; the quotient formula needs i* onto", n + 1)));
    }
    let mut basis_labels: Vec<Vec<usize>> = Vec::new();
    for sigma in VertexSet::full(m).subsets().filter(|s| k.contains_face(*s)) {
        basis_labels.extend(label_tuples(&products, IndexPair::new(sigma, VertexSet::EMPTY)?).into_iter().map(|(l, _)| l));
    }
    basis_labels.sort_by_key(|l| {
        let sigma = support(&products, l);
        (IndexPair::new(sigma, VertexSet::EMPTY).expect("disjoint"), l.clone())
    });
    let lookup: HashMap<Vec<usize>, usize> = basis_labels.iter().enumerate().map(|(n, l)| (l.clone(), n)).collect();
    let mut table = BTreeMap::new();
    for (i, l1) in basis_labels.iter().enumerate() {
        for (j, l2) in basis_labels.iter().enumerate() {
            let mut out: Vec<(Vec<usize>, BigInt)> = vec![(Vec::new(), BigInt::one())];
            for (pos, prod) in products.iter().enumerate() {
                let mut next = Vec::new();
                for (t, c) in &out {
                    for (g, c2) in prod.multiply(l1[pos], l2[pos]) {
                        let mut t = t.clone();
                        t.push(*g);
                        next.push((t, c * c2));
                    }
                }
                out = next;
            }
            let degrees: Vec<(i64, i64)> =
                (0..m).map(|p| (products[p].generators[l1[p]].degree, products[p].generators[l2[p]].degree)).collect();
            let sign = BigInt::from(interleave_sign(&degrees));
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (t, c) in out {
                if let Some(&n) = lookup.get(&t) {
                    *acc.entry(n).or_insert_with(BigInt::zero) += c * &sign;
                }
            }
            let terms: Vec<(usize, BigInt)> =
                acc.into_iter().map(|(n, c)| (n, ring.reduce(c))).filter(|(_, c)| !c.is_zero()).collect();
            if !terms.is_empty() {
                table.insert((i, j), terms);
            }
        }
    }
    let basis = basis_labels
        .iter()
        .map(|l| RingBasisElement {
            label: label_string(&products, l),
            degree: l.iter().enumerate().map(|(p, g)| products[p].generators[*g].degree).sum(),
            order: BigInt::zero(),
        })
        .collect();
    let unit_labels: Vec<usize> = products.iter().map(|p| p.unit).collect();
    Ok(RingPresentation { ring, basis, products: table, unit: lookup.get(&unit_labels).copied() })
}

fn support(products: &[PairProduct], labels: &[usize]) -> VertexSet {
    let mut s = VertexSet::EMPTY;
    for (k, g) in labels.iter().enumerate() {
        if products[k].generators[*g].sector == Sector::Sigma {
            s = s.insert(k + 1);
        }
    }
    s
}

/// Fingerprint over `Q` (from the integral ring) plus each prime field.
pub fn fingerprint(
    k: &SimplicialComplex,
    pairs: &[PairData],
    flavor: Option<ProductFlavor>,
    primes: &[u64],
    par: Parallelism,
) -> Result<Fingerprint> {
    let mut fp = ring_fingerprint(&ring(k, pairs, flavor, CoefficientRing::Integers, par)?.presentation);
    for p in primes {
        let r = ring(k, pairs, flavor, CoefficientRing::prime(*p)?, par)?;
        fp.absorb_ranks(&ring_fingerprint(&r.presentation));
    }
    Ok(fp)
}

/// All simplicial complexes on `[m]` (ghost vertices allowed), the void one excluded.
pub fn all_complexes(m: usize) -> Vec<SimplicialComplex> {
    assert!(m <= 4, "exhaustive enumeration is for m ≤ 4");
    let n = 1usize << m;
    let mut out = Vec::new();
    for family in 1u32..(1u32 << n) {
        if family & 1 == 0 {
            continue;
        }
        let members = |s: usize| family >> s & 1 == 1;
        let closed = (0..n).filter(|&s| members(s)).all(|s| (0..m).all(|v| s >> v & 1 == 0 || members(s & !(1 << v))));
        if !closed {
            continue;
        }
        let gens: Vec<VertexSet> = (0..n).filter(|&s| members(s)).map(|s| VertexSet::from_bits(s as u32)).collect();
        out.push(SimplicialComplex::new(m, gens).expect("subsets of [m]"));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Separation {
    pub complex: String,
    pub m: usize,
    pub betti: Vec<usize>,
    pub first: Fingerprint,
    pub second: Fingerprint,
    pub differences: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub searched: usize,
    pub witnesses: Vec<Separation>,
}

/// Searches complexes with `m` in the given range for ones where the two
/// pair choices give equal Betti tables but different fingerprints.
pub fn separate(
    first: &PairData,
    second: &PairData,
    ms: std::ops::RangeInclusive<usize>,
    primes: &[u64],
    par: Parallelism,
) -> Result<SeparationReport> {
    let complexes: Vec<SimplicialComplex> = ms.flat_map(all_complexes).collect();
    let results = par.map(&complexes, |k| -> Result<Option<Separation>> {
        let f1 = fingerprint(k, std::slice::from_ref(first), None, primes, Parallelism::Sequential)?;
        let f2 = fingerprint(k, std::slice::from_ref(second), None, primes, Parallelism::Sequential)?;
        let cmp = crate::ring::compare_fingerprints(&f1, &f2);
        if cmp.betti_equal && cmp.torsion_equal && !cmp.differing_ranks.is_empty() {
            let top = f1.betti.iter().filter(|(_, n)| **n > 0).map(|(d, _)| *d).max().unwrap_or(0);
            let betti = (0..=top).map(|d| f1.betti.get(&d).copied().unwrap_or(0)).collect();
            Ok(Some(Separation {
                complex: k.to_json(),
                m: k.m(),
                betti,
                first: f1,
                second: f2,
                differences: cmp.differing_ranks,
            }))
        } else {
            Ok(None)
        }
    });
    let mut witnesses = Vec::new();
    for r in results {
        if let Some(s) = r? {
            witnesses.push(s);
        }
    }
    Ok(SeparationReport { searched: complexes.len(), witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::{disk_sphere, example_2_9, sphere_pair};
    use crate::ring::{fingerprint as fp, pairing_matrix};

    fn z() -> CoefficientRing {
        CoefficientRing::Integers
    }

    #[test]
    fn empty_face_gives_product_of_subspaces() {
        // Z({∅}; D², S¹) = (S¹)^3
        let k = SimplicialComplex::empty_face(3);
        let g = groups(&k, &[disk_sphere(2).unwrap()], z(), Parallelism::Sequential).unwrap();
        assert_eq!(g.betti_vector(), vec![1, 3, 3, 1]);
        let r = ring(&k, &[disk_sphere(2).unwrap()], None, z(), Parallelism::Sequential).unwrap();
        assert!(r.presentation.law_violations().is_empty(), "{:?}", r.presentation.law_violations());
        assert_eq!(fp(&r.presentation).mult_rank("Q", 1, 2), Some(3));
    }

    #[test]
    fn hexagon_groups_and_ring() {
        let k = SimplicialComplex::polygon(6);
        let d2 = [disk_sphere(2).unwrap()];
        assert_eq!(groups(&k, &d2, z(), Parallelism::Sequential).unwrap().betti_vector(), vec![1, 0, 0, 9, 16, 9, 0, 0, 1]);
        let r = ring(&k, &d2, Some(ProductFlavor::RightSpecialSigned), z(), Parallelism::Parallel).unwrap();
        let f = fp(&r.presentation);
        assert_eq!(f.mult_rank("Q", 3, 5), Some(9));
        assert_eq!(f.mult_rank("Q", 4, 4), Some(16));
        assert!(pairing_matrix(&r.presentation, 4, 4).unwrap().determinant().magnitude().is_one());
    }

    #[test]
    fn sphere_pair_shifts_degrees() {
        let k = SimplicialComplex::polygon(4);
        let g = groups(&k, &[sphere_pair(4, 2).unwrap()], z(), Parallelism::Sequential).unwrap();
        assert_eq!(g.betti.get(&0), Some(&1));
        assert!(g.betti.values().sum::<usize>() > 1);
    }

    #[test]
    fn inadmissible_flavor_is_rejected() {
        let k = SimplicialComplex::polygon(4);
        let e2 = [example_2_9(2).unwrap()];
        assert!(ring(&k, &e2, Some(ProductFlavor::RightSpecial), z(), Parallelism::Sequential).is_err());
        assert_eq!(auto_flavor(&[classify(&e2[0]).unwrap()]), ProductFlavor::RightWeaklySpecial);
    }

    #[test]
    fn complexes_on_two_vertices() {
        // {∅}, {∅,1}, {∅,2}, {∅,1,2}, full simplex
        assert_eq!(all_complexes(2).len(), 5);
        assert_eq!(all_complexes(4).len(), 167);
    }
}
