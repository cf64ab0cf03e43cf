//! Direct chain model: the subcomplex of `C_1 ⊗ … ⊗ C_m` (one character
//! complex per pair) spanned by tensors whose cokernel/lift support is a face,
//! with the tensor coproduct under full Koszul signs. Its dual cochain algebra
//! computes `H*(Z(K; X, A))` without any index bookkeeping.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use polyprod_core::exactlinalg::{CoefficientRing, FreeComplex, IntMatrix};
use polyprod_core::pairs::{bar, PairData};
use polyprod_core::par::Parallelism;
use polyprod_core::ring::{cohomology_ring, CochainAlgebra, RingPresentation};
use polyprod_core::simplicial::{SimplicialComplex, VertexSet};

#[derive(Clone, Debug)]
struct Coordinate {
    labels: Vec<String>,
    degrees: Vec<i64>,
    /// Generators in the cokernel or lift sector (they need a face).
    relative: Vec<bool>,
    /// `d` on generators: lift → kernel generator.
    boundary: Vec<Option<usize>>,
    /// (left, right) → [(source, coefficient)]
    transpose: HashMap<(usize, usize), Vec<(usize, i64)>>,
}

impl Coordinate {
    fn new(p: &PairData) -> Self {
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        let mut relative = Vec::new();
        for g in &p.eta {
            labels.push(g.label.clone());
            degrees.push(g.deg);
            relative.push(false);
        }
        for g in &p.gamma {
            labels.push(g.label.clone());
            degrees.push(g.deg);
            relative.push(false);
        }
        for g in &p.gamma {
            labels.push(bar(&g.label));
            degrees.push(g.deg + 1);
            relative.push(true);
        }
        for g in &p.alpha {
            labels.push(g.label.clone());
            degrees.push(g.deg);
            relative.push(true);
        }
        let pos: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let boundary = labels
            .iter()
            .map(|l| l.strip_prefix("bar:").map(|x| pos[x]))
            .collect();
        let mut transpose: HashMap<(usize, usize), Vec<(usize, i64)>> = HashMap::new();
        for t in &p.psi {
            transpose
                .entry((pos[t.left.as_str()], pos[t.right.as_str()]))
                .or_default()
                .push((pos[t.src.as_str()], t.coef));
        }
        Coordinate { labels, degrees, relative, boundary, transpose }
    }
}

pub struct TensorModel {
    k: SimplicialComplex,
    coords: Vec<Coordinate>,
    bases: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, usize>,
    complex: FreeComplex,
}

fn tensor_degree(coords: &[Coordinate], t: &[usize]) -> i64 {
    t.iter().enumerate().map(|(k, g)| coords[k].degrees[*g]).sum()
}

impl TensorModel {
    pub fn new(k: &SimplicialComplex, pairs: &[PairData]) -> Self {
        let m = k.m();
        let pairs: Vec<PairData> = if pairs.len() == 1 { vec![pairs[0].clone(); m] } else { pairs.to_vec() };
        let coords: Vec<Coordinate> = pairs.iter().map(Coordinate::new).collect();
        let mut all: Vec<Vec<usize>> = vec![vec![]];
        for c in &coords {
            all = all
                .into_iter()
                .flat_map(|t| {
                    (0..c.labels.len()).map(move |g| {
                        let mut t = t.clone();
                        t.push(g);
                        t
                    })
                })
                .collect();
        }
        let support = |t: &[usize]| {
            let mut s = VertexSet::EMPTY;
            for (k, g) in t.iter().enumerate() {
                if coords[k].relative[*g] {
                    s = s.insert(k + 1);
                }
            }
            s
        };
        let tensors: Vec<Vec<usize>> = all.into_iter().filter(|t| k.contains_face(support(t))).collect();
        let top = tensors.iter().map(|t| tensor_degree(&coords, t)).max().unwrap_or(0) as usize;
        let mut bases = vec![Vec::new(); top + 1];
        for t in tensors {
            bases[tensor_degree(&coords, &t) as usize].push(t);
        }
        let mut index = HashMap::new();
        for b in &bases {
            for (i, t) in b.iter().enumerate() {
                index.insert(t.clone(), i);
            }
        }
        // δ = transpose of d; d(t) = Σ_i (−1)^{Σ_{j<i}|t_j|} t_1 ⊗ … ⊗ d t_i ⊗ …
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let mut maps = Vec::new();
        for n in 0..dims.len() {
            let target = dims.get(n + 1).copied().unwrap_or(0);
            let mut mat = IntMatrix::zeros(target, dims[n]);
            if n + 1 < dims.len() {
                for (row, t) in bases[n + 1].iter().enumerate() {
                    let mut before = 0i64;
                    for (i, g) in t.iter().enumerate() {
                        if let Some(x) = coords[i].boundary[*g] {
                            let mut s = t.clone();
                            s[i] = x;
                            if let Some(&col) = index.get(&s) {
                                let sign = if before % 2 == 0 { 1 } else { -1 };
                                let cur = mat.get(row, col).clone();
                                mat.set(row, col, cur + sign);
                            }
                        }
                        before += coords[i].degrees[*g];
                    }
                }
            }
            maps.push(mat);
        }
        let complex = FreeComplex::cochain(dims, maps).expect("shapes match");
        TensorModel { k: k.clone(), coords, bases, index, complex }
    }

    pub fn ring(&self, ring: CoefficientRing) -> RingPresentation {
        cohomology_ring(self, ring, Parallelism::Parallel).expect("tensor model ring").0
    }
}

impl CochainAlgebra for TensorModel {
    fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    fn product(&self, p: usize, i: usize, q: usize, j: usize) -> Vec<(usize, BigInt)> {
        let (a, b) = (&self.bases[p][i], &self.bases[q][j]);
        // (f·g)(T) = Σ_{ψ(T) ∋ ±t'⊗t''} ± f(t') g(t''), sign (−1)^{Σ_{j<i} |t''_j||t'_i|}
        let deg = |k: usize, g: usize| self.coords[k].degrees[g];
        let mut sign = 0i64;
        let mut right_sum = 0i64;
        for (k, (ga, gb)) in a.iter().zip(b).enumerate() {
            sign += right_sum * deg(k, *ga);
            right_sum += deg(k, *gb);
        }
        let mut out: Vec<(Vec<usize>, BigInt)> = vec![(vec![], BigInt::from(if sign % 2 == 0 { 1 } else { -1 }))];
        for (k, c) in self.coords.iter().enumerate() {
            let Some(srcs) = c.transpose.get(&(a[k], b[k])) else { return vec![] };
            out = out
                .into_iter()
                .flat_map(|(t, coef)| {
                    srcs.iter().map(move |(s, c2)| {
                        let mut t = t.clone();
                        t.push(*s);
                        (t, &coef * c2)
                    })
                })
                .collect();
        }
        let mut acc: HashMap<usize, BigInt> = HashMap::new();
        for (t, c) in out {
            if let Some(&n) = self.index.get(&t) {
                *acc.entry(n).or_insert_with(BigInt::zero) += c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn unit(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.bases[0].len()];
        let unit: Vec<usize> = self.coords.iter().map(|c| c.labels.iter().position(|l| l == "1").unwrap()).collect();
        v[self.index[&unit]] = BigInt::from(1);
        v
    }
}
