//! Oracle tests for the deformation directions and the H^2 lower bound.

use lieqf::catalog::{self, Family, FamilySpec};
use lieqf::cohomology::{classes_rank, is_cocycle};
use lieqf::deform::{deformation_cocycle, gamma_coefficients, h2_bound_check};
use lieqf::exactlin::sc;
use num::Zero;

fn completed_a_family(n: usize, k: usize) -> lieqf::liecore::LieAlgebra {
    let spec = FamilySpec::new(Family::AC, n).with_k(k);
    let g = catalog::build_family(&spec).unwrap();
    let torus = catalog::torus_spec(&spec).unwrap();
    catalog::semidirect_sum(&g, &torus).unwrap()
}

#[test]
fn gamma_frozen_values() {
    // n=10, k=2 gives t=4, so gamma^1..gamma^3 are available
    let gamma = gamma_coefficients(10, 2).unwrap();
    assert_eq!(gamma.count(), 3);
    assert_eq!(gamma.get(1, 1, 2).unwrap(), sc(1));
    assert_eq!(gamma.get(1, 1, 3).unwrap(), sc(1));
    assert_eq!(gamma.get(2, 1, 4).unwrap(), sc(-1));
    assert_eq!(gamma.get(3, 1, 6).unwrap(), sc(1));
    // antisymmetry and zero diagonal
    assert_eq!(gamma.get(2, 4, 1).unwrap(), sc(1));
    assert_eq!(gamma.get(1, 3, 3).unwrap(), sc(0));
}

#[test]
fn gamma_matches_unit_seed_structure_tables() {
    let gamma = gamma_coefficients(9, 2).unwrap();
    for l in 1..=gamma.count() {
        let mut alphas = vec![sc(0); gamma.count()];
        alphas[l - 1] = sc(1);
        let table = catalog::structure_table(&alphas, 6);
        for i in 1..=6i64 {
            for j in 1..=6i64 {
                assert_eq!(gamma.get(l, i, j).unwrap(), table.get(i, j), "l={l} ({i},{j})");
            }
        }
    }
}

#[test]
fn gamma_rejects_out_of_range_arguments() {
    assert!(gamma_coefficients(8, 1).is_err());
    assert!(gamma_coefficients(8, 5).is_err());
    let gamma = gamma_coefficients(8, 2).unwrap();
    assert!(gamma.get(0, 1, 2).is_err());
    assert!(gamma.get(gamma.count() + 1, 1, 2).is_err());
}

#[test]
fn deformation_direction_has_the_printed_support() {
    // n=8, k=2: F_1^2 sends (Y2, Y3) to gamma^2_{2,3} Y6 = Y6; with the
    // rank-2 torus in front the ambient indices are shifted by 2
    let base = completed_a_family(8, 2);
    assert_eq!(base.dim(), 10);
    let f = deformation_cocycle(&base, 2, 2).unwrap();
    let v = f.value(2 + 2, 2 + 3);
    assert_eq!(v[2 + 6], sc(1));
    assert!(v.iter().enumerate().all(|(m, c)| m == 8 || c.is_zero()));
    // alternating: value on a torus pair and on out-of-range pairs is zero
    assert!(f.value(0, 1).iter().all(Zero::is_zero));
    assert!(f.value(2 + 4, 2 + 5).iter().all(Zero::is_zero));
}

#[test]
fn deformation_directions_are_cocycles() {
    for (n, k) in [(8, 2), (9, 2), (10, 3)] {
        let base = completed_a_family(n, k);
        let t = (n - k) / 2;
        for l in 2..t {
            let f = deformation_cocycle(&base, l, k).unwrap();
            assert!(!f.is_zero());
            assert!(is_cocycle(&base, &f).unwrap(), "n={n} k={k} l={l}");
        }
    }
}

#[test]
fn deformation_classes_are_independent() {
    // (11, 3) is the smallest instance whose two directions are both closed
    let n = 11;
    let k = 3;
    let base = completed_a_family(n, k);
    let t = (n - k) / 2;
    assert_eq!(t, 4);
    let cocycles: Vec<_> = (2..t)
        .map(|l| deformation_cocycle(&base, l, k).unwrap())
        .collect();
    for f in &cocycles {
        assert!(is_cocycle(&base, f).unwrap());
    }
    assert_eq!(cocycles.len(), t - 2);
    assert_eq!(classes_rank(&base, &cocycles).unwrap(), t - 2);
}

#[test]
fn obstructed_direction_is_rejected() {
    // At (10, 2) the Jacobi identity imposes 3 alpha_2^2 = 2 alpha_1 alpha_3
    // on the A-family, so the l = 3 direction at the base point
    // (1, 0, 0) has a nonzero first-order obstruction and is not closed,
    // while l = 2 is.
    let base = completed_a_family(10, 2);
    let f2 = deformation_cocycle(&base, 2, 2).unwrap();
    assert!(is_cocycle(&base, &f2).unwrap());
    let f3 = deformation_cocycle(&base, 3, 2).unwrap();
    assert!(!is_cocycle(&base, &f3).unwrap());
}

#[test]
fn deformation_cocycle_rejects_bad_indices() {
    let base = completed_a_family(8, 2);
    assert!(deformation_cocycle(&base, 1, 2).is_err());
    assert!(deformation_cocycle(&base, 3, 2).is_err()); // t=3, so only l=2
}

#[test]
fn h2_bound_rows() {
    let row = h2_bound_check(8, 2).unwrap();
    assert_eq!((row.t, row.bound, row.closed, row.classes), (3, 1, 1, 1));
    assert_eq!(row.h2, 1);

    // one of the two directions is obstructed here; the closed one still
    // realizes a class and the bound holds for the closed subset
    let row = h2_bound_check(10, 2).unwrap();
    assert_eq!((row.t, row.bound, row.closed, row.classes), (4, 2, 1, 1));
    assert_eq!(row.h2, 1);

    // smallest instance attaining bound 2
    let row = h2_bound_check(11, 3).unwrap();
    assert_eq!((row.t, row.bound, row.closed, row.classes), (4, 2, 2, 2));
    assert_eq!(row.h2, 2);
}

#[test]
fn h2_bound_is_vacuous_for_small_t() {
    // n=7, k=3 gives t=2: the bound is 0 and there are no cocycles to check
    let row = h2_bound_check(7, 3).unwrap();
    assert_eq!((row.t, row.bound, row.closed, row.classes), (2, 0, 0, 0));
}

#[test]
fn h2_bound_rejects_bad_parameters() {
    assert!(h2_bound_check(8, 1).is_err());
    assert!(h2_bound_check(8, 7).is_err());
}
