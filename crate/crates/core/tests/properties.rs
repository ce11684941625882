mod common;

use common::checks;
use macloops_core::cellular::{Cell, CellularChain};
use macloops_core::loopalg::{LoopAlgebra, NormalForm, Word};
use macloops_core::{SimplicialComplex, VertexSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pentagon() -> LoopAlgebra {
    LoopAlgebra::new(&SimplicialComplex::polygon_boundary(5).unwrap()).unwrap()
}

#[test]
fn boundary_and_differential_square_to_zero() {
    for m in 0..=6 {
        let simplex = SimplicialComplex::simplex(m).unwrap();
        checks::boundary_squared(&simplex).unwrap();
        checks::differential_squared(&simplex).unwrap();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let k = checks::random_complex(&mut rng, 6);
        checks::differential_squared(&k).unwrap();
    }
}

#[test]
fn hochster_agrees_with_cellular_on_random_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 0..200 {
        let k = checks::random_complex(&mut rng, 1 + n % 5);
        checks::hochster_matches_cellular(&k).unwrap();
    }
}

#[test]
fn zero_detection_matches_rewrite_closure() {
    let words = checks::zero_detection(&pentagon(), 6).unwrap();
    assert_eq!(words, (0..=6).map(|l| 5usize.pow(l)).sum::<usize>());
}

#[test]
fn stokes_sign_is_plus_one() {
    for m in 1..=5 {
        assert_eq!(checks::stokes_sign(&SimplicialComplex::simplex(m).unwrap()).unwrap(), Some(1));
    }
    let hexagon = SimplicialComplex::polygon_boundary(6).unwrap();
    assert_eq!(checks::stokes_sign(&hexagon).unwrap(), Some(1));
}

proptest! {
    #[test]
    fn normal_form_ignores_rewrite_order(seed in any::<u64>(), word in prop::collection::vec(1usize..=6, 0..9)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = checks::random_flag_complex(&mut rng, 6, 0.5);
        let alg = LoopAlgebra::new(&k).unwrap();
        prop_assert!(checks::rewrite_independence(&alg, &word, 12, &mut rng).is_ok());
    }

    #[test]
    fn normal_form_is_idempotent(word in prop::collection::vec(1usize..=5, 0..8)) {
        let alg = pentagon();
        if let NormalForm::Word { sign: _, word: w } = alg.normal_form(&Word::new(word)).unwrap() {
            prop_assert_eq!(alg.normal_form(&w).unwrap(), NormalForm::Word { sign: 1, word: w.clone() });
        }
    }

    #[test]
    fn commutator_identities(seed in any::<u64>(), da in 1usize..4, db in 1usize..4, dc in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = pentagon();
        let a = checks::random_element(&alg, &mut rng, da, 3);
        let b = checks::random_element(&alg, &mut rng, db, 3);
        let c = checks::random_element(&alg, &mut rng, dc, 2);
        prop_assert!(checks::antisymmetry_and_jacobi(&alg, (&a, da), (&b, db), (&c, dc)).is_ok());
    }

    #[test]
    fn vertex_set_algebra(a in 0u64..1 << 10, b in 0u64..1 << 10) {
        let (x, y) = (VertexSet::from_bits(a), VertexSet::from_bits(b));
        prop_assert_eq!(x.union(y).len() + x.intersection(y).len(), x.len() + y.len());
        prop_assert!(x.difference(y).is_disjoint(y));
        prop_assert_eq!(x.subsets().count(), 1usize << x.len());
        prop_assert!(x.subsets().all(|s| s.is_subset(x)));
    }

    #[test]
    fn chain_text_is_stable(cells in prop::collection::vec((0u64..1 << 5, 0u64..1 << 5, -3i64..=3), 0..6)) {
        let mut chain = CellularChain::zero();
        for (d, s, n) in cells {
            let (disc, circle) = (VertexSet::from_bits(d), VertexSet::from_bits(s & !d));
            chain.add_term(Cell::new(disc, circle).unwrap(), n);
        }
        prop_assert_eq!(CellularChain::parse(&chain.to_string()).unwrap(), chain);
    }
}
