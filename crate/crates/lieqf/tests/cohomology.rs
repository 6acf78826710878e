//! Oracle tests for the adjoint Chevalley–Eilenberg complex.

mod common;

use common::{abelian, heisenberg, non_abelian_2d};
use lieqf::catalog::{self, Family, FamilySpec};
use lieqf::cohomology::{
    classes_rank, cochain_dim, cohomology_dim, cohomology_report, differential_matrix, is_cocycle,
    Cochain2,
};
use lieqf::derivations::derivation_space;
use lieqf::exactlin::{self, sc, Matrix};
use lieqf::Scalar;
use num::Zero;

#[test]
fn cochain_dimensions() {
    assert_eq!(cochain_dim(6, 0).unwrap(), 6);
    assert_eq!(cochain_dim(6, 1).unwrap(), 36);
    assert_eq!(cochain_dim(6, 2).unwrap(), 90);
    assert_eq!(cochain_dim(13, 3).unwrap(), 3718);
}

#[test]
fn cochain_dim_rejects_degree_above_dimension() {
    assert!(cochain_dim(3, 4).is_err());
}

fn compose_is_zero(d_low: &Matrix, d_high: &Matrix, domain_dim: usize) -> bool {
    for c in 0..domain_dim {
        let mut e = vec![Scalar::zero(); domain_dim];
        e[c] = sc(1);
        let u = d_low.mul_vec(&e).unwrap();
        let v = d_high.mul_vec(&u).unwrap();
        if v.iter().any(|x| !x.is_zero()) {
            return false;
        }
    }
    true
}

#[test]
fn differentials_compose_to_zero() {
    let g = catalog::build_family(&FamilySpec::new(Family::E73, 7)).unwrap();
    let d0 = differential_matrix(&g, 0).unwrap().d;
    let d1 = differential_matrix(&g, 1).unwrap().d;
    let d2 = differential_matrix(&g, 2).unwrap().d;
    assert!(compose_is_zero(&d0, &d1, cochain_dim(7, 0).unwrap()));
    assert!(compose_is_zero(&d1, &d2, cochain_dim(7, 1).unwrap()));
}

#[test]
fn kernel_of_d0_is_the_center() {
    for g in [
        heisenberg(),
        non_abelian_2d(),
        catalog::build_family(&FamilySpec::parse("Qnr:n=7,r=3").unwrap()).unwrap(),
    ] {
        assert_eq!(cohomology_dim(&g, 0).unwrap(), g.center().unwrap().dim());
    }
}

#[test]
fn kernel_of_d1_is_the_derivation_space() {
    let g = heisenberg();
    let slice = differential_matrix(&g, 1).unwrap();
    let d1_kernel = cochain_dim(3, 1).unwrap() - exactlin::rank(&slice.d);
    assert_eq!(d1_kernel, derivation_space(&g).unwrap().dim());
    assert_eq!(d1_kernel, 6);
}

#[test]
fn two_dim_non_abelian_has_trivial_cohomology() {
    let g = non_abelian_2d();
    assert_eq!(cohomology_dim(&g, 0).unwrap(), 0);
    assert_eq!(cohomology_dim(&g, 1).unwrap(), 0);
    assert_eq!(cohomology_dim(&g, 2).unwrap(), 0);
}

#[test]
fn abelian_plane_cohomology() {
    let g = abelian(2);
    assert_eq!(cohomology_dim(&g, 0).unwrap(), 2);
    assert_eq!(cohomology_dim(&g, 1).unwrap(), 4);
    assert_eq!(cohomology_dim(&g, 2).unwrap(), 2);
}

#[test]
fn heisenberg_h0_is_its_center() {
    assert_eq!(cohomology_dim(&heisenberg(), 0).unwrap(), 1);
}

#[test]
fn report_is_internally_consistent() {
    let g = catalog::build_family(&FamilySpec::parse("Lnr:n=6,r=3").unwrap()).unwrap();
    let rep = cohomology_report(&g, "Lnr:n=6,r=3").unwrap();
    assert_eq!(rep.dims["C0"], 6);
    assert_eq!(rep.dims["C1"], 36);
    assert_eq!(rep.h["H0"], rep.dims["C0"] - rep.ranks["d0"]);
    assert_eq!(rep.h["H1"], rep.dims["C1"] - rep.ranks["d1"] - rep.ranks["d0"]);
    assert_eq!(rep.h["H2"], rep.dims["C2"] - rep.ranks["d2"] - rep.ranks["d1"]);
    assert_eq!(rep.h["H0"], g.center().unwrap().dim());
    assert_eq!(rep.algebra, "Lnr:n=6,r=3");
}

#[test]
fn zero_cochain_is_a_cocycle_with_no_class() {
    let g = catalog::build_family(&FamilySpec::new(Family::E73, 7)).unwrap();
    let z = Cochain2::new(g.dim());
    assert!(is_cocycle(&g, &z).unwrap());
    assert_eq!(classes_rank(&g, &[z]).unwrap(), 0);
}

#[test]
fn coboundaries_contribute_no_class() {
    // push a basis 1-cochain through d1 and feed the resulting cocycle back in
    let g = heisenberg();
    let n = g.dim();
    let slice = differential_matrix(&g, 1).unwrap();
    // phi = the map sending Y2 to Y0 (1-cochain coordinate subset {2}, target 0)
    let mut phi = vec![Scalar::zero(); cochain_dim(n, 1).unwrap()];
    phi[2 * n] = sc(1);
    let img = slice.d.mul_vec(&phi).unwrap();
    let mut f = Cochain2::new(n);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    for (pi, (i, j)) in pairs.iter().enumerate() {
        for m in 0..n {
            let c = img[pi * n + m].clone();
            if !c.is_zero() {
                f.add_term(*i, *j, m, c).unwrap();
            }
        }
    }
    assert!(!f.is_zero());
    assert!(is_cocycle(&g, &f).unwrap());
    assert_eq!(classes_rank(&g, &[f]).unwrap(), 0);
}

#[test]
fn non_cocycles_are_rejected() {
    let g = catalog::build_family(&FamilySpec::new(Family::E73, 7)).unwrap();
    let mut bad = None;
    for (i, j, m) in [(0, 1, 6), (2, 3, 0), (1, 2, 4)] {
        let mut f = Cochain2::new(7);
        f.add_term(i, j, m, sc(1)).unwrap();
        if !is_cocycle(&g, &f).unwrap() {
            bad = Some(f);
            break;
        }
    }
    let f = bad.expect("some elementary 2-cochain fails the cocycle condition");
    assert!(classes_rank(&g, &[f]).is_err());
}
