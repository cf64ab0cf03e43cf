//! Independent check for the moment-angle case `Z(K; D², S¹)`: the cohomology
//! ring of the finite Koszul-type algebra `Λ[u_1..u_m] ⊗ Z(K) / (x_i², u_i x_i)`
//! with `d u_i = x_i`, `|u_i| = 1`, `|x_i| = 2`.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactlinalg::{CoefficientRing, FreeComplex, IntMatrix};
use crate::kalgebra::shuffle_sign;
use crate::pairs::{disk_sphere, PairData};
use crate::par::Parallelism;
use crate::ring::{compare_fingerprints, fingerprint, CochainAlgebra, Comparison, RingPresentation};
use crate::simplicial::{SimplicialComplex, VertexSet};

/// A monomial `u_J x_I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub u: VertexSet,
    pub x: VertexSet,
}

impl Monomial {
    pub fn degree(self) -> usize {
        self.u.len() + 2 * self.x.len()
    }
}

pub struct KoszulDga {
    pub k: SimplicialComplex,
    pub bases: Vec<Vec<Monomial>>,
    index: HashMap<Monomial, usize>,
    complex: FreeComplex,
}

impl KoszulDga {
    pub fn new(k: &SimplicialComplex) -> Result<Self> {
        if k.is_void() {
            return Err(Error::Validation("the Koszul model needs a nonvoid complex".into()));
        }
        let m = k.m();
        let ground = VertexSet::full(m);
        let mut bases: Vec<Vec<Monomial>> = vec![Vec::new(); 3 * m + 1];
        for x in k.faces() {
            for u in ground.difference(x).subsets() {
                let mono = Monomial { u, x };
                bases[mono.degree()].push(mono);
            }
        }
        while bases.len() > 1 && bases.last().is_some_and(|b| b.is_empty()) {
            bases.pop();
        }
        let mut index = HashMap::new();
        for b in &bases {
            for (i, mono) in b.iter().enumerate() {
                index.insert(*mono, i);
            }
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let mut maps = Vec::with_capacity(dims.len());
        for (d, b) in bases.iter().enumerate() {
            let target = dims.get(d + 1).copied().unwrap_or(0);
            let mut mat = IntMatrix::zeros(target, b.len());
            for (col, mono) in b.iter().enumerate() {
                for (pos, j) in mono.u.iter().enumerate() {
                    let img = Monomial { u: mono.u.remove(j), x: mono.x.insert(j) };
                    if let Some(&row) = index.get(&img).filter(|_| k.contains_face(img.x)) {
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        mat.set(row, col, BigInt::from(sign));
                    }
                }
            }
            maps.push(mat);
        }
        let complex = FreeComplex::cochain(dims, maps)?;
        Ok(KoszulDga { k: k.clone(), bases, index, complex })
    }

    /// `a · b` of two monomials.
    pub fn multiply(&self, a: Monomial, b: Monomial) -> Option<(Monomial, i8)> {
        if !a.u.is_disjoint(b.u) || !a.x.is_disjoint(b.x) {
            return None;
        }
        let (u, x) = (a.u.union(b.u), a.x.union(b.x));
        if !u.is_disjoint(x) || !self.k.contains_face(x) {
            return None;
        }
        Some((Monomial { u, x }, shuffle_sign(a.u, b.u).ok()?))
    }
}

impl CochainAlgebra for KoszulDga {
    fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    fn product(&self, p: usize, i: usize, q: usize, j: usize) -> Vec<(usize, BigInt)> {
        match self.multiply(self.bases[p][i], self.bases[q][j]) {
            Some((mono, sign)) => vec![(self.index[&mono], BigInt::from(sign))],
            None => vec![],
        }
    }

    fn unit(&self) -> Vec<BigInt> {
        vec![BigInt::from(1)]
    }
}

/// The cohomology ring of `Z(K; D², S¹)` computed from the Koszul model.
pub fn koszul_ring(k: &SimplicialComplex, ring: CoefficientRing, par: Parallelism) -> Result<RingPresentation> {
    let dga = KoszulDga::new(k)?;
    let (r, _) = crate::ring::cohomology_ring(&dga, ring, par)?;
    Ok(r)
}

/// Whether every pair is the one the oracle models, `(D², S¹)`.
pub fn models(pairs: &[PairData]) -> bool {
    let d2 = disk_sphere(2).expect("built-in is valid");
    !pairs.is_empty() && pairs.iter().all(|p| *p == d2)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct OracleReport {
    pub comparable: bool,
    pub comparison: Comparison,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.comparable && self.comparison.all_equal()
    }
}

pub fn compare(a: &RingPresentation, b: &RingPresentation) -> Comparison {
    compare_fingerprints(&fingerprint(a), &fingerprint(b))
}

/// Compares an engine ring for `pairs` against the oracle; inputs other than
/// `(D², S¹)` everywhere are reported as not comparable.
pub fn check(engine: &RingPresentation, oracle: &RingPresentation, pairs: &[PairData]) -> OracleReport {
    OracleReport { comparable: models(pairs), comparison: compare(engine, oracle) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::pairing_matrix;

    fn ring(k: &SimplicialComplex) -> RingPresentation {
        koszul_ring(k, CoefficientRing::Integers, Parallelism::Sequential).unwrap()
    }

    #[test]
    fn differential_squares_to_zero() {
        for k in [SimplicialComplex::polygon(5), crate::simplicial::rp2(), SimplicialComplex::empty_face(3)] {
            assert!(KoszulDga::new(&k).unwrap().complex.squares_to_zero());
        }
    }

    #[test]
    fn simplex_is_contractible() {
        let r = ring(&SimplicialComplex::simplex(3));
        assert_eq!(r.betti_vector(), vec![1]);
    }

    #[test]
    fn two_points_give_three_sphere() {
        let k = SimplicialComplex::from_facet_lists(2, &[&[1], &[2]]).unwrap();
        assert_eq!(ring(&k).betti_vector(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn hexagon_is_a_connected_sum() {
        let r = ring(&SimplicialComplex::polygon(6));
        assert_eq!(r.betti_vector(), vec![1, 0, 0, 9, 16, 9, 0, 0, 1]);
        assert!(r.torsion().is_empty());
        let f = fingerprint(&r);
        assert_eq!(f.mult_rank("Q", 3, 5), Some(9));
        assert_eq!(f.mult_rank("Q", 4, 4), Some(16));
        assert_eq!(pairing_matrix(&r, 3, 5).unwrap().determinant().magnitude().to_string(), "1");
        assert_eq!(pairing_matrix(&r, 4, 4).unwrap().determinant().magnitude().to_string(), "1");
        assert!(r.law_violations().is_empty());
    }

    #[test]
    fn void_complex_is_rejected() {
        assert!(KoszulDga::new(&SimplicialComplex::void(2)).is_err());
    }

    #[test]
    fn guard_flags_other_pairs() {
        assert!(models(&[disk_sphere(2).unwrap()]));
        assert!(!models(&[disk_sphere(3).unwrap()]));
    }
}
