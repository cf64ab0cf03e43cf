//! Graded rings given by a basis and sparse structure constants, their
//! basis-free fingerprints, and the passage from a cochain algebra to its
//! cohomology ring.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::{homology, CoefficientRing, FreeComplex, HomologySummary, IntMatrix};
use crate::par::Parallelism;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingBasisElement {
    pub label: String,
    pub degree: i64,
    /// Additive order; zero for a free generator.
    #[serde(with = "bigint_string")]
    pub order: BigInt,
}

impl RingBasisElement {
    pub fn is_free(&self) -> bool {
        self.order.is_zero()
    }
}

/// Sparse element: basis position → coefficient.
pub type RingElement = BTreeMap<usize, BigInt>;

/// One structure-constant row: `(i, j) → [(k, c)]`.
pub(crate) type ProductEntry = ((usize, usize), Vec<(usize, BigInt)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub ring: CoefficientRing,
    pub basis: Vec<RingBasisElement>,
    pub products: BTreeMap<(usize, usize), Vec<(usize, BigInt)>>,
    pub unit: Option<usize>,
}

impl RingPresentation {
    pub fn product(&self, i: usize, j: usize) -> &[(usize, BigInt)] {
        self.products.get(&(i, j)).map_or(&[], |v| v.as_slice())
    }

    /// Reduces a coefficient for target `k` (ring and torsion order).
    pub fn reduce(&self, k: usize, c: BigInt) -> BigInt {
        let c = self.ring.reduce(c);
        let order = &self.basis[k].order;
        if order.is_zero() {
            c
        } else {
            num_integer::Integer::mod_floor(&c, order)
        }
    }

    pub fn normalize(&self, mut e: RingElement) -> RingElement {
        e = e.into_iter().map(|(k, c)| (k, self.reduce(k, c))).collect();
        e.retain(|_, c| !c.is_zero());
        e
    }

    pub fn multiply(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut out = RingElement::new();
        for (i, ca) in a {
            for (j, cb) in b {
                for (k, c) in self.product(*i, *j) {
                    *out.entry(*k).or_insert_with(BigInt::zero) += ca * cb * c;
                }
            }
        }
        self.normalize(out)
    }

    pub fn basis_element(&self, i: usize) -> RingElement {
        RingElement::from([(i, BigInt::one())])
    }

    pub fn betti(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for b in &self.basis {
            let e = out.entry(b.degree).or_insert(0);
            if b.is_free() {
                *e += 1;
            }
        }
        out
    }

    pub fn torsion(&self) -> BTreeMap<i64, Vec<BigInt>> {
        let mut out: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
        for b in self.basis.iter().filter(|b| !b.is_free()) {
            out.entry(b.degree).or_default().push(b.order.clone());
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }

    /// Betti numbers `b_0..b_top` as a dense vector.
    pub fn betti_vector(&self) -> Vec<usize> {
        let betti = self.betti();
        let top = betti.iter().filter(|(_, n)| **n > 0).map(|(d, _)| *d).max().unwrap_or(0);
        (0..=top).map(|d| betti.get(&d).copied().unwrap_or(0)).collect()
    }

    /// Violations of the graded ring laws.
    pub fn law_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.basis.len();
        let deg = |i: usize| self.basis[i].degree;
        for ((i, j), terms) in &self.products {
            for (k, c) in terms {
                if deg(*k) != deg(*i) + deg(*j) && !c.is_zero() {
                    out.push(format!("degree: e{i}·e{j} has a term on e{k}"));
                }
            }
        }
        match self.unit {
            Some(u) => {
                for i in 0..n {
                    let e = self.basis_element(i);
                    let u = self.basis_element(u);
                    let expect = self.normalize(e.clone());
                    if self.multiply(&u, &e) != expect || self.multiply(&e, &u) != expect {
                        out.push(format!("unit: fails on e{i}"));
                    }
                }
            }
            None => out.push("unit: none recorded".into()),
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.multiply(&self.basis_element(i), &self.basis_element(j));
                let ji = self.multiply(&self.basis_element(j), &self.basis_element(i));
                let sign = if deg(i) * deg(j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let ji = self.normalize(ji.into_iter().map(|(k, c)| (k, c * &sign)).collect());
                if ij != ji {
                    out.push(format!("commutativity: e{i}, e{j}"));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.multiply(&self.basis_element(i), &self.basis_element(j));
                for k in 0..n {
                    let jk = self.multiply(&self.basis_element(j), &self.basis_element(k));
                    let l = self.multiply(&ij, &self.basis_element(k));
                    let r = self.multiply(&self.basis_element(i), &jk);
                    if l != r {
                        out.push(format!("associativity: e{i}, e{j}, e{k}"));
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RingFile::from(self)).expect("ring serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: RingFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("ring file: {e}")))?;
        f.try_into()
    }

    /// `degree,betti,torsion` rows.
    pub fn betti_csv(&self) -> String {
        let betti = self.betti();
        let torsion = self.torsion();
        let mut out = String::from("degree,betti,torsion\n");
        for (d, b) in &betti {
            let t: Vec<String> = torsion.get(d).map_or(vec![], |v| v.iter().map(|x| x.to_string()).collect());
            out.push_str(&format!("{d},{b},{}\n", t.join(" ")));
        }
        out
    }
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct TermFile {
    k: usize,
    #[serde(with = "bigint_string")]
    c: BigInt,
}

#[derive(Serialize, Deserialize)]
struct ProductFile {
    i: usize,
    j: usize,
    terms: Vec<TermFile>,
}

#[derive(Serialize, Deserialize)]
struct TorsionFile {
    k: usize,
    #[serde(with = "bigint_string")]
    order: BigInt,
}

#[derive(Serialize, Deserialize)]
struct BasisFile {
    label: String,
    degree: i64,
}

#[derive(Serialize, Deserialize)]
struct RingFile {
    ring: String,
    unit: Option<usize>,
    basis: Vec<BasisFile>,
    torsion: Vec<TorsionFile>,
    products: Vec<ProductFile>,
    betti: BTreeMap<i64, usize>,
    fingerprint: Fingerprint,
}

impl From<&RingPresentation> for RingFile {
    fn from(r: &RingPresentation) -> Self {
        RingFile {
            ring: r.ring.to_string(),
            unit: r.unit,
            basis: r.basis.iter().map(|b| BasisFile { label: b.label.clone(), degree: b.degree }).collect(),
            torsion: r
                .basis
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_free())
                .map(|(k, b)| TorsionFile { k, order: b.order.clone() })
                .collect(),
            products: r
                .products
                .iter()
                .map(|((i, j), t)| ProductFile {
                    i: *i,
                    j: *j,
                    terms: t.iter().map(|(k, c)| TermFile { k: *k, c: c.clone() }).collect(),
                })
                .collect(),
            betti: r.betti(),
            fingerprint: fingerprint(r),
        }
    }
}

impl TryFrom<RingFile> for RingPresentation {
    type Error = Error;

    fn try_from(f: RingFile) -> Result<Self> {
        let ring: CoefficientRing = f.ring.parse()?;
        let mut basis: Vec<RingBasisElement> = f
            .basis
            .into_iter()
            .map(|b| RingBasisElement { label: b.label, degree: b.degree, order: BigInt::zero() })
            .collect();
        let n = basis.len();
        let check = |k: usize| {
            if k < n {
                Ok(k)
            } else {
                Err(Error::Parse(format!("basis index {k} out of range")))
            }
        };
        for t in f.torsion {
            basis[check(t.k)?].order = t.order;
        }
        let mut products = BTreeMap::new();
        for p in f.products {
            let terms = p.terms.into_iter().map(|t| Ok((check(t.k)?, t.c))).collect::<Result<Vec<_>>>()?;
            products.insert((check(p.i)?, check(p.j)?), terms);
        }
        if let Some(u) = f.unit {
            check(u)?;
        }
        Ok(RingPresentation { ring, basis, products, unit: f.unit })
    }
}

/// Basis-free invariants of a graded ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub betti: BTreeMap<i64, usize>,
    #[serde(with = "torsion_table")]
    pub torsion: BTreeMap<i64, Vec<BigInt>>,
    /// Field name → "p,q" → rank of `H^p → Hom(H^q, H^{p+q})`.
    pub mult_ranks: BTreeMap<String, BTreeMap<String, usize>>,
    /// Field name → "p,q" → dimension of the span of `H^p · H^q`.
    pub image_ranks: BTreeMap<String, BTreeMap<String, usize>>,
}

mod torsion_table {
    use std::collections::BTreeMap;

    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(t: &BTreeMap<i64, Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<i64, Vec<String>> = t.iter().map(|(d, v)| (*d, v.iter().map(|x| x.to_string()).collect())).collect();
        m.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<i64, Vec<BigInt>>, D::Error> {
        let m = BTreeMap::<i64, Vec<String>>::deserialize(d)?;
        m.into_iter()
            .map(|(k, v)| {
                let v = v.iter().map(|x| x.parse().map_err(serde::de::Error::custom)).collect::<Result<_, _>>()?;
                Ok((k, v))
            })
            .collect()
    }
}

pub fn pq_key(p: i64, q: i64) -> String {
    format!("{p},{q}")
}

impl Fingerprint {
    pub fn mult_rank(&self, field: &str, p: i64, q: i64) -> Option<usize> {
        self.mult_ranks.get(field)?.get(&pq_key(p, q)).copied()
    }

    /// Merges the rank tables of another fingerprint (e.g. one computed over
    /// a prime field) into this one.
    pub fn absorb_ranks(&mut self, other: &Fingerprint) {
        self.mult_ranks.extend(other.mult_ranks.clone());
        self.image_ranks.extend(other.image_ranks.clone());
    }
}

fn field_name(ring: CoefficientRing) -> String {
    match ring {
        CoefficientRing::Integers | CoefficientRing::Rationals => "Q".into(),
        CoefficientRing::PrimeField(p) => format!("F{p}"),
    }
}

/// Betti/torsion tables plus multiplication ranks over the presentation's
/// field (`Q` for integral presentations, using the free part).
pub fn fingerprint(r: &RingPresentation) -> Fingerprint {
    let rank_ring = match r.ring {
        CoefficientRing::PrimeField(_) => r.ring,
        _ => CoefficientRing::Rationals,
    };
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, b) in r.basis.iter().enumerate() {
        if b.is_free() {
            by_degree.entry(b.degree).or_default().push(i);
        }
    }
    let mut mult = BTreeMap::new();
    let mut image = BTreeMap::new();
    for (p, hp) in &by_degree {
        for (q, hq) in &by_degree {
            let Some(hpq) = by_degree.get(&(p + q)) else {
                mult.insert(pq_key(*p, *q), 0);
                image.insert(pq_key(*p, *q), 0);
                continue;
            };
            let pos: BTreeMap<usize, usize> = hpq.iter().enumerate().map(|(n, k)| (*k, n)).collect();
            // rows: i ∈ H^p; columns: (j, k) ∈ H^q × H^{p+q}
            let mut flat = IntMatrix::zeros(hp.len(), hq.len() * hpq.len());
            // rows: (i, j); columns: k
            let mut span = IntMatrix::zeros(hp.len() * hq.len(), hpq.len());
            for (a, i) in hp.iter().enumerate() {
                for (b, j) in hq.iter().enumerate() {
                    for (k, c) in r.product(*i, *j) {
                        if let Some(&n) = pos.get(k) {
                            flat.set(a, b * hpq.len() + n, c.clone());
                            span.set(a * hq.len() + b, n, c.clone());
                        }
                    }
                }
            }
            mult.insert(pq_key(*p, *q), flat.rank_over(rank_ring));
            image.insert(pq_key(*p, *q), span.rank_over(rank_ring));
        }
    }
    let name = field_name(r.ring);
    Fingerprint {
        betti: r.betti(),
        torsion: r.torsion(),
        mult_ranks: BTreeMap::from([(name.clone(), mult)]),
        image_ranks: BTreeMap::from([(name, image)]),
    }
}

/// Multiplication matrix `H^p × H^q → H^{p+q}` when the target has rank one
/// (a Poincaré-type pairing); `None` otherwise.
pub fn pairing_matrix(r: &RingPresentation, p: i64, q: i64) -> Option<IntMatrix> {
    let free = |d: i64| -> Vec<usize> { (0..r.basis.len()).filter(|&i| r.basis[i].degree == d && r.basis[i].is_free()).collect() };
    let (hp, hq, top) = (free(p), free(q), free(p + q));
    if top.len() != 1 {
        return None;
    }
    let mut m = IntMatrix::zeros(hp.len(), hq.len());
    for (a, i) in hp.iter().enumerate() {
        for (b, j) in hq.iter().enumerate() {
            for (k, c) in r.product(*i, *j) {
                if *k == top[0] {
                    m.set(a, b, c.clone());
                }
            }
        }
    }
    Some(m)
}

/// Which basis-free invariants differ between two rings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub betti_equal: bool,
    pub torsion_equal: bool,
    pub differing_ranks: Vec<String>,
}

impl Comparison {
    pub fn all_equal(&self) -> bool {
        self.betti_equal && self.torsion_equal && self.differing_ranks.is_empty()
    }
}

pub fn compare_fingerprints(a: &Fingerprint, b: &Fingerprint) -> Comparison {
    let mut differing = Vec::new();
    for tables in [(&a.mult_ranks, &b.mult_ranks, "mult"), (&a.image_ranks, &b.image_ranks, "image")] {
        let (ta, tb, kind) = tables;
        for field in ta.keys().chain(tb.keys()).collect::<std::collections::BTreeSet<_>>() {
            let (fa, fb) = (ta.get(field), tb.get(field));
            let keys: std::collections::BTreeSet<&String> =
                fa.into_iter().chain(fb).flat_map(|m| m.keys()).collect();
            for key in keys {
                let va = fa.and_then(|m| m.get(key)).copied().unwrap_or(0);
                let vb = fb.and_then(|m| m.get(key)).copied().unwrap_or(0);
                if va != vb {
                    differing.push(format!("{kind}[{field}]({key}): {va} vs {vb}"));
                }
            }
        }
    }
    let strip = |m: &BTreeMap<i64, usize>| -> BTreeMap<i64, usize> { m.iter().filter(|(_, v)| **v > 0).map(|(k, v)| (*k, *v)).collect() };
    let strip_t = |m: &BTreeMap<i64, Vec<BigInt>>| -> BTreeMap<i64, Vec<BigInt>> { m.iter().filter(|(_, v)| !v.is_empty()).map(|(k, v)| (*k, v.clone())).collect() };
    Comparison {
        betti_equal: strip(&a.betti) == strip(&b.betti),
        torsion_equal: strip_t(&a.torsion) == strip_t(&b.torsion),
        differing_ranks: differing,
    }
}

/// A finite cochain algebra: a cochain complex (degree `n` ↦ basis of size
/// `dims[n]`) and the product of basis cochains, landing in degree `p + q`.
pub trait CochainAlgebra: Sync {
    fn complex(&self) -> &FreeComplex;
    fn product(&self, p: usize, i: usize, q: usize, j: usize) -> Vec<(usize, BigInt)>;
    /// The unit cocycle in degree 0.
    fn unit(&self) -> Vec<BigInt>;
    fn label(&self, _degree: usize, slot: usize) -> String {
        format!("h{slot}")
    }
}

/// The cohomology ring of a cochain algebra, with basis the homology
/// generators (free ones, then torsion ones, per degree).
pub fn cohomology_ring<A: CochainAlgebra>(
    alg: &A,
    ring: CoefficientRing,
    par: Parallelism,
) -> Result<(RingPresentation, HomologySummary)> {
    let summary = homology(alg.complex(), ring)?;
    let mut basis = Vec::new();
    let mut slots = Vec::new();
    for (d, s) in summary.degrees.iter().enumerate() {
        for (slot, _) in s.free_reps.iter().enumerate() {
            basis.push(RingBasisElement { label: alg.label(d, slot), degree: d as i64, order: BigInt::zero() });
            slots.push((d, slot));
        }
        for (n, (order, _)) in s.torsion.iter().enumerate() {
            let slot = s.free_reps.len() + n;
            basis.push(RingBasisElement { label: alg.label(d, slot), degree: d as i64, order: order.clone() });
            slots.push((d, slot));
        }
    }
    let offset: Vec<usize> = {
        let mut acc = 0;
        summary
            .degrees
            .iter()
            .map(|s| {
                let o = acc;
                acc += s.generator_count();
                o
            })
            .collect()
    };
    let rep = |d: usize, slot: usize| -> &Vec<BigInt> {
        let s = &summary.degrees[d];
        if slot < s.free_reps.len() {
            &s.free_reps[slot]
        } else {
            &s.torsion[slot - s.free_reps.len()].1
        }
    };
    let dims = alg.complex().dims.clone();
    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (0..basis.len()).map(move |j| (i, j)))
        .filter(|(i, j)| (slots[*i].0 + slots[*j].0) < dims.len())
        .collect();
    let computed = par.map(&pairs, |(i, j)| -> Result<ProductEntry> {
        let (p, a) = slots[*i];
        let (q, b) = slots[*j];
        let (za, zb) = (rep(p, a), rep(q, b));
        let mut z = vec![BigInt::zero(); dims[p + q]];
        for (x, ca) in za.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (y, cb) in zb.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (k, c) in alg.product(p, x, q, y) {
                    z[k] += ca * cb * c;
                }
            }
        }
        let z: Vec<BigInt> = z.into_iter().map(|c| ring.reduce(c)).collect();
        let coords = summary.coordinates(p + q, &z)?;
        let terms = coords
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| (offset[p + q] + n, c))
            .collect();
        Ok(((*i, *j), terms))
    });
    let mut products = BTreeMap::new();
    for c in computed {
        let (key, terms): (_, Vec<_>) = c?;
        if !terms.is_empty() {
            products.insert(key, terms);
        }
    }
    let unit_coords = summary.coordinates(0, &alg.unit())?;
    let nonzero: Vec<usize> = (0..unit_coords.len()).filter(|&n| !unit_coords[n].is_zero()).collect();
    let unit = match nonzero.as_slice() {
        [n] if unit_coords[*n].is_one() => Some(offset[0] + n),
        _ => None,
    };
    Ok((RingPresentation { ring, basis, products, unit }, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exterior algebra on one degree-1 generator with zero differential.
    struct Circle {
        c: FreeComplex,
    }

    impl CochainAlgebra for Circle {
        fn complex(&self) -> &FreeComplex {
            &self.c
        }
        fn product(&self, p: usize, _i: usize, q: usize, _j: usize) -> Vec<(usize, BigInt)> {
            if p + q <= 1 {
                vec![(0, BigInt::one())]
            } else {
                vec![]
            }
        }
        fn unit(&self) -> Vec<BigInt> {
            vec![BigInt::one()]
        }
    }

    fn circle() -> Circle {
        Circle { c: FreeComplex::cochain(vec![1, 1], vec![IntMatrix::zeros(1, 1), IntMatrix::zeros(0, 1)]).unwrap() }
    }

    #[test]
    fn circle_ring() {
        let (r, _) = cohomology_ring(&circle(), CoefficientRing::Integers, Parallelism::Sequential).unwrap();
        assert_eq!(r.betti_vector(), vec![1, 1]);
        assert_eq!(r.unit, Some(0));
        assert!(r.law_violations().is_empty(), "{:?}", r.law_violations());
        let f = fingerprint(&r);
        assert_eq!(f.mult_rank("Q", 0, 1), Some(1));
        assert_eq!(f.mult_rank("Q", 1, 1), Some(0));
    }

    #[test]
    fn json_round_trip() {
        let (r, _) = cohomology_ring(&circle(), CoefficientRing::Integers, Parallelism::Sequential).unwrap();
        let back = RingPresentation::from_json(&r.to_json()).unwrap();
        assert_eq!(r, back);
        assert_eq!(r.betti_csv(), "degree,betti,torsion\n0,1,\n1,1,\n");
    }

    #[test]
    fn comparison_flags_rank_differences() {
        let (r, _) = cohomology_ring(&circle(), CoefficientRing::Integers, Parallelism::Sequential).unwrap();
        let mut f = fingerprint(&r);
        assert!(compare_fingerprints(&f, &f).all_equal());
        f.mult_ranks.get_mut("Q").unwrap().insert(pq_key(1, 1), 1);
        let c = compare_fingerprints(&fingerprint(&r), &f);
        assert!(c.betti_equal && !c.all_equal());
    }
}
