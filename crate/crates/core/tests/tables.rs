//! Golden checks of the pentagon and hexagon tables: Betti numbers,
//! cohomology pairings, cycle bases and their commutators.

use macloops_core::cellular::{homology_coordinates, is_cycle, zk_homology, zk_homology_echelon};
use macloops_core::koszul::{evaluate_element, KoszulAlgebra};
use macloops_core::linalg::{rational, Matrix, Rational};
use macloops_core::presets::{reference_cohomology, reference_commutators, reference_cycle_basis, Preset};
use macloops_core::{hochster_cohomology, hurewicz_image, SimplicialComplex};
use num_traits::{One, Zero};

fn polygon(n: usize) -> SimplicialComplex {
    SimplicialComplex::polygon_boundary(n).unwrap()
}

fn is_signed_identity(m: &[Vec<Rational>]) -> Option<i64> {
    let s = m.first()?.first()?.clone();
    if s != rational(1) && s != rational(-1) {
        return None;
    }
    for (a, row) in m.iter().enumerate() {
        for (b, x) in row.iter().enumerate() {
            let want = if a == b { s.clone() } else { Rational::zero() };
            if *x != want {
                return None;
            }
        }
    }
    Some(if s.is_one() { 1 } else { -1 })
}

#[test]
fn betti_numbers_both_ways() {
    for (n, dense) in [(5, vec![1, 0, 0, 5, 5, 0, 0, 1]), (6, vec![1, 0, 0, 9, 16, 9, 0, 0, 1])] {
        let k = polygon(n);
        let top = dense.len() as i64 - 1;
        assert_eq!(hochster_cohomology(&k).dense(top), dense);
        assert_eq!(zk_homology(&k).ranks.dense(top), dense);
    }
}

#[test]
fn square_is_product_of_spheres() {
    // Z_K for the 4-cycle is S^3 x S^3
    let h = zk_homology(&polygon(4));
    assert_eq!(h.ranks.dense(6), vec![1, 0, 0, 2, 0, 0, 1]);
    assert!(h.torsion.is_empty());
}

#[test]
fn preset_cycles_form_bases() {
    for preset in [Preset::Pentagon, Preset::Hexagon] {
        let k = preset.complex();
        let echelon = zk_homology_echelon(&k);
        for (d, cycles) in reference_cycle_basis(&k).unwrap() {
            assert!(cycles.iter().all(is_cycle));
            let rows: Vec<Vec<Rational>> =
                cycles.iter().map(|c| homology_coordinates(&k, c, &echelon.cycles[&d]).unwrap()).collect();
            let det = Matrix::from_rows(rows).determinant();
            assert!(det == rational(1) || det == rational(-1), "degree {} det {}", d, det);
        }
    }
}

#[test]
fn commutators_map_to_cycles() {
    for preset in [Preset::Pentagon, Preset::Hexagon] {
        let k = preset.complex();
        let cycles = reference_cycle_basis(&k).unwrap();
        for (d, rows) in reference_commutators(&k).unwrap() {
            for ((sign, expr), cycle) in rows.iter().zip(&cycles[&d]) {
                let image = &hurewicz_image(expr, &k).unwrap() * *sign;
                assert_eq!(&image, cycle, "{:?} {}", preset, expr);
            }
        }
    }
}

#[test]
fn pairings_are_identities() {
    for (preset, pairs) in [(Preset::Pentagon, vec![(3, 4)]), (Preset::Hexagon, vec![(3, 5), (4, 4)])] {
        let k = preset.complex();
        let alg = KoszulAlgebra::new(&k);
        let data = reference_cohomology(&k).unwrap();
        assert!(alg.is_cocycle(&data.top.representative));
        for (p, q) in pairs {
            let r = data.pairing(p, q).unwrap();
            let m = alg.pairing_matrix(&r.left, &r.right, &data.top).unwrap();
            assert_eq!(is_signed_identity(&m), Some(1), "{:?} ({}, {})", preset, p, q);
        }
    }
}

#[test]
fn hexagon_middle_pairing_is_antidiagonal_on_full_basis() {
    let k = polygon(6);
    let alg = KoszulAlgebra::new(&k);
    let data = reference_cohomology(&k).unwrap();
    let basis = data.basis(4).unwrap();
    let m = alg.pairing_matrix(&basis, &basis, &data.top).unwrap();
    // even degrees commute, so the form is symmetric
    for a in 0..16 {
        for b in 0..16 {
            assert_eq!(m[a][b], m[b][a]);
            let expected = if (a + 8 == b) || (b + 8 == a) { rational(1) } else { rational(0) };
            assert_eq!(m[a][b], expected);
        }
    }
}

#[test]
fn cohomology_classes_evaluate_on_cycles() {
    for preset in [Preset::Pentagon, Preset::Hexagon] {
        let k = preset.complex();
        let data = reference_cohomology(&k).unwrap();
        let cycles = reference_cycle_basis(&k).unwrap();
        for (d, chains) in &cycles {
            let classes = data.basis(*d).unwrap();
            let m: Vec<Vec<Rational>> = classes
                .iter()
                .map(|c| chains.iter().map(|z| rational(evaluate_element(&c.representative, z))).collect())
                .collect();
            assert!(!Matrix::from_rows(m).determinant().is_zero(), "{:?} degree {}", preset, d);
        }
    }
}

#[test]
fn computed_pairing_is_unimodular() {
    for (n, p, q) in [(5, 3, 4), (6, 3, 5), (6, 4, 4)] {
        let alg = KoszulAlgebra::new(&polygon(n));
        let t = alg.product_pairing_table(p, q).unwrap();
        let det = Matrix::from_rows(t.entries).determinant();
        assert!(det == rational(1) || det == rational(-1));
    }
}
