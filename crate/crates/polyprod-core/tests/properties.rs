mod common;

use common::tmodel::TensorModel;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use polyprod_core::engine::{self, all_complexes};
use polyprod_core::exactlinalg::{smith_normal_form, smith_normal_form_over, CoefficientRing, IntMatrix};
use polyprod_core::indexed::{all_indices, interleave_sign, IndexPair, World};
use polyprod_core::kalgebra::{gate, letter_restriction_product, pi_delta, total_complex, Cochain, HochsterClass, ProductFlavor};
use polyprod_core::koszul_oracle::KoszulDga;
use polyprod_core::pairs::parse_pair_spec;
use polyprod_core::par::Parallelism;
use polyprod_core::ring::CochainAlgebra;
use polyprod_core::simplicial::{random_complex, SimplicialComplex, VertexSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn complex(seed: u64, m: usize) -> SimplicialComplex {
    random_complex(&mut ChaCha8Rng::seed_from_u64(seed), m)
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..7, 0usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-9i64..=9, c), r).prop_map(move |rows| {
            if rows.is_empty() {
                IntMatrix::zeros(0, c)
            } else {
                IntMatrix::from_rows(&rows)
            }
        })
    })
}

fn is_diagonal(s: &IntMatrix) -> bool {
    (0..s.rows()).all(|i| (0..s.cols()).all(|j| i == j || s.get(i, j).is_zero()))
}

const PAIRS: &[&str] = &[
    "disk_sphere:1",
    "disk_sphere:2",
    "sphere_pair:3:1",
    "cp_truncated:2",
    "cone_pair:torus",
    "suspended_cone_pair:torus",
    "example_2_9:1",
    "example_2_9:2",
];

fn pair(n: usize) -> polyprod_core::pairs::PairData {
    parse_pair_spec(&format!("builtin:{}", PAIRS[n % PAIRS.len()])).unwrap().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_factorizes(a in matrix()) {
        let f = smith_normal_form(&a);
        prop_assert_eq!(f.u.mul(&a).mul(&f.v), f.s.clone());
        prop_assert_eq!(f.u.mul(&f.u_inv), IntMatrix::identity(a.rows()));
        prop_assert_eq!(f.v.mul(&f.v_inv), IntMatrix::identity(a.cols()));
        prop_assert!(is_diagonal(&f.s));
        let d = f.diagonal();
        prop_assert!(d.iter().all(|x| x > &BigInt::zero()));
        prop_assert!(d.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    }

    #[test]
    fn smith_form_over_f3_is_rank_form(a in matrix()) {
        let f = smith_normal_form_over(&a, CoefficientRing::PrimeField(3));
        let reduce = |m: &IntMatrix| {
            let mut out = m.clone();
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out.set(i, j, m.get(i, j).mod_floor(&BigInt::from(3)));
                }
            }
            out
        };
        prop_assert_eq!(reduce(&f.u.mul(&a).mul(&f.v)), reduce(&f.s));
        prop_assert!(f.diagonal().iter().all(|x| x.is_one()));
    }

    #[test]
    fn interleave_sign_counts_crossings(degrees in prop::collection::vec((0i64..5, 0i64..5), 0..7)) {
        // moving each a_i left past b_j for j < i
        let crossings: i64 = (0..degrees.len())
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| degrees[i].0 * degrees[j].1)
            .sum();
        prop_assert_eq!(interleave_sign(&degrees), if crossings % 2 == 0 { 1 } else { -1 });
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coboundaries_square_to_zero(seed in any::<u64>(), m in 1usize..7) {
        let k = complex(seed, m);
        prop_assert!(k.augmented_cochain_complex(k.ground()).unwrap().squares_to_zero());
        for idx in all_indices(m.min(4), World::Full) {
            if m > 4 { break; }
            if let Ok(piece) = k.k_sigma_omega(idx.sigma(), idx.omega()) {
                if !piece.is_void() {
                    prop_assert!(piece.augmented_cochain_complex(k.ground()).unwrap().squares_to_zero());
                }
            }
        }
        if !k.is_void() {
            prop_assert!(KoszulDga::new(&k).unwrap().complex().squares_to_zero());
        }
        if m <= 4 {
            prop_assert!(TensorModel::new(&k, &[pair(seed as usize)]).complex().squares_to_zero());
        }
    }

    #[test]
    fn coordinates_are_linear_and_kill_coboundaries(seed in any::<u64>(), m in 1usize..6) {
        let k = complex(seed, m);
        let total = total_complex(&k, World::Full, CoefficientRing::Integers, Parallelism::Sequential).unwrap();
        for piece in total.pieces.values() {
            for d in 0..piece.cochains.bases.len() {
                let n = piece.generator_count(d);
                for slot in 0..n {
                    let mut coords = vec![BigInt::zero(); n];
                    coords[slot] = BigInt::from(2);
                    let z = piece.cocycle(d, &coords);
                    let back = piece.coordinates(d, &z).unwrap();
                    let order = piece.order(d, slot);
                    let expect = if order.is_zero() { BigInt::from(2) } else { BigInt::from(2).mod_floor(&order) };
                    prop_assert_eq!(&back[slot], &expect);
                }
                if d > 0 {
                    // δ of every (d−1)-face is exact
                    for face in &piece.cochains.bases[d - 1] {
                        let c = Cochain::from([(*face, BigInt::one())]);
                        let b = piece.coboundary(d - 1, &c);
                        prop_assert!(piece.coordinates(d, &b).unwrap().iter().all(|x| x.is_zero()));
                    }
                }
            }
        }
    }

    #[test]
    fn cup_products_are_cocycles_and_representative_free(seed in any::<u64>(), m in 2usize..6, f in 0usize..3) {
        let k = complex(seed, m);
        let flavor = [ProductFlavor::Universal, ProductFlavor::RightUniversal, ProductFlavor::RightSpecialSigned][f];
        let world = if flavor.is_right() { World::Right } else { World::Full };
        let total = total_complex(&k, world, CoefficientRing::Integers, Parallelism::Sequential).unwrap();
        let classes: Vec<HochsterClass> = total
            .pieces
            .iter()
            .flat_map(|(idx, p)| {
                (0..p.cochains.bases.len()).flat_map(move |d| (0..p.generator_count(d)).map(move |s| (*idx, d, s)))
            })
            .map(|(idx, d, s)| total.basis_class(idx, d, s))
            .take(12)
            .collect();
        for a in &classes {
            for b in &classes {
                // cup_at rejects non-cocycle products
                let direct = total.cup_classes(flavor, a, b).unwrap();
                let pa = total.piece(a.index).unwrap();
                let pb = total.piece(b.index).unwrap();
                if a.degree == 0 || b.degree == 0 {
                    continue;
                }
                // shift both representatives by coboundaries
                let shift = |p: &polyprod_core::kalgebra::HochsterPiece, d: usize, z: Cochain| {
                    let mut z = z;
                    for (face, c) in p.coboundary(d - 1, &Cochain::from([(p.cochains.bases[d - 1][0], BigInt::from(3))])) {
                        *z.entry(face).or_insert_with(BigInt::zero) += c;
                    }
                    z
                };
                let za = shift(pa, a.degree, pa.cocycle(a.degree, &a.coords));
                let zb = shift(pb, b.degree, pb.cocycle(b.degree, &b.coords));
                for target in total.pieces.keys() {
                    if !gate(flavor, *target, a.index, b.index).unwrap() {
                        continue;
                    }
                    let z = total.product_cochain(flavor, *target, a.index, &za, b.index, &zb).unwrap();
                    let tp = total.piece(*target).unwrap();
                    let Some(deg) = z.keys().next().map(|f| f.len()) else {
                        prop_assert!(direct.iter().all(|c| c.index != *target));
                        continue;
                    };
                    prop_assert!(tp.coboundary(deg, &z).is_empty());
                    let coords = tp.coordinates(deg, &z).unwrap();
                    match direct.iter().find(|c| c.index == *target) {
                        Some(c) => prop_assert_eq!(&c.coords, &coords),
                        None => prop_assert!(coords.iter().all(|x| x.is_zero())),
                    }
                }
            }
        }
    }

    #[test]
    fn engine_rings_satisfy_ring_laws(seed in any::<u64>(), m in 1usize..5, p in 0usize..PAIRS.len()) {
        let k = complex(seed, m);
        let r = engine::ring(&k, &[pair(p)], None, CoefficientRing::Integers, Parallelism::Sequential).unwrap();
        prop_assert!(r.presentation.law_violations().is_empty(), "{:?}", r.presentation.law_violations());
        prop_assert!(r.presentation.unit.is_some());
    }

    #[test]
    fn engine_matches_tensor_model(seed in any::<u64>(), m in 1usize..4, p in 0usize..PAIRS.len(), q in 0usize..PAIRS.len()) {
        let k = complex(seed, m);
        let pairs: Vec<_> = (0..m).map(|i| pair(if i == 0 { p } else { q })).collect();
        let e = engine::ring(&k, &pairs, Some(ProductFlavor::Universal), CoefficientRing::Integers, Parallelism::Sequential).unwrap();
        let t = TensorModel::new(&k, &pairs).ring(CoefficientRing::Integers);
        let cmp = polyprod_core::koszul_oracle::compare(&e.presentation, &t);
        prop_assert!(cmp.all_equal(), "{:?}", cmp);
    }
}

/// Flavor implications: a product that is live for a narrower flavor is live
/// for every coarser one.
#[test]
fn gate_monotonicity_exhaustive() {
    use ProductFlavor::*;
    let chains: &[(ProductFlavor, ProductFlavor)] = &[
        (Special, Normal),
        (Normal, Universal),
        (RightSpecial, RightStrictlyNormal),
        (RightStrictlyNormal, RightNormal),
        (RightNormal, RightUniversal),
        (RightSpecial, RightWeaklySpecial),
        (RightWeaklySpecial, RightUniversal),
        (RightSpecialSigned, RightSpecial),
        (RightSpecial, RightSpecialSigned),
    ];
    for m in 1..=4 {
        let full = all_indices(m, World::Full);
        let right = all_indices(m, World::Right);
        for (narrow, wide) in chains {
            let family = if narrow.is_right() { &right } else { &full };
            for t in family {
                for a in family {
                    for b in family {
                        if gate(*narrow, *t, *a, *b).unwrap() {
                            assert!(gate(*wide, *t, *a, *b).unwrap(), "{narrow} ⇒ {wide} fails at {a} ⊗ {b} → {t}");
                        }
                    }
                }
            }
        }
        // on (∅, ω) indices the universal gate is always open
        for t in &right {
            for a in &right {
                for b in &right {
                    assert!(gate(Universal, *t, *a, *b).unwrap());
                }
            }
        }
    }
}

/// The per-coordinate letter model agrees with gate + diagonal product for
/// every flavor, on every index triple and face pair, for all complexes on ≤ 3 vertices.
#[test]
fn letter_model_matches_gate_and_diagonal_product() {
    for m in 1..=3 {
        for k in all_complexes(m) {
            for flavor in ProductFlavor::ALL {
                let world = if flavor.is_right() { World::Right } else { World::Full };
                let indices = all_indices(m, world);
                for t in &indices {
                    for a in &indices {
                        for b in &indices {
                            let (Ok(ka), Ok(kb)) =
                                (k.k_sigma_omega(a.sigma(), a.omega()), k.k_sigma_omega(b.sigma(), b.omega()))
                            else {
                                continue;
                            };
                            for mu in ka.faces() {
                                for nu in kb.faces() {
                                    let letters = letter_restriction_product(&k, flavor, *t, *a, *b, mu, nu);
                                    let direct = if gate(flavor, *t, *a, *b).unwrap() {
                                        let mut c = pi_delta(&k, *t, *a, *b, mu, nu).unwrap();
                                        if flavor == ProductFlavor::RightSpecialSigned {
                                            let s = polyprod_core::kalgebra::shuffle_sign(a.omega(), b.omega());
                                            let s = s.map(BigInt::from).unwrap_or_else(|_| BigInt::zero());
                                            c.values_mut().for_each(|x| *x *= &s);
                                            c.retain(|_, x| !x.is_zero());
                                        }
                                        c
                                    } else {
                                        Cochain::new()
                                    };
                                    assert_eq!(letters, direct, "{flavor}: {a} ⊗ {b} → {t}, faces {mu} {nu} on {}", k.to_json());
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn separating_right_indices_from_full() {
    // sanity: the two worlds share exactly the (∅, ω) indices
    let full = all_indices(3, World::Full);
    let right = all_indices(3, World::Right);
    assert!(right.iter().all(|r| full.contains(r)));
    assert_eq!(full.iter().filter(|i| i.sigma().is_empty()).count(), right.len());
    assert_eq!(IndexPair::right(VertexSet::full(3)).omega().len(), 3);
}
