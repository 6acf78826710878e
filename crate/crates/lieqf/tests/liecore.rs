//! Oracle tests for the Lie algebra data model and filtration invariants.

mod common;

use common::{abelian, broken_sl2_like, heisenberg, non_abelian_2d};
use lieqf::catalog::{build_family, Family, FamilySpec};
use lieqf::exactlin::sc;
use lieqf::liecore::{LieAlgebra, Nilpotency};
use num::Zero;

fn unit(n: usize, i: usize) -> Vec<lieqf::Scalar> {
    let mut v = vec![lieqf::Scalar::zero(); n];
    v[i] = sc(1);
    v
}

fn lc(n: usize) -> LieAlgebra {
    build_family(&FamilySpec::new(Family::LC, n)).unwrap()
}

#[test]
fn bracket_on_the_filiform_chain() {
    let g = lc(6);
    // [Y0, Y1] = Y2
    assert_eq!(g.bracket(&unit(6, 0), &unit(6, 1)).unwrap(), unit(6, 2));
}

#[test]
fn bracket_is_alternating() {
    let g = heisenberg();
    let x = vec![sc(1), sc(2), sc(-3)];
    assert!(g.bracket(&x, &x).unwrap().iter().all(|v| v.is_zero()));
    let y = vec![sc(0), sc(1), sc(5)];
    let xy = g.bracket(&x, &y).unwrap();
    let yx = g.bracket(&y, &x).unwrap();
    assert_eq!(xy, yx.into_iter().map(|v| -v).collect::<Vec<_>>());
}

#[test]
fn bracket_in_the_seven_dimensional_exceptional_algebra() {
    let g = build_family(&FamilySpec::new(Family::E73, 7)).unwrap();
    // [Y2, Y6] = -Y5
    let got = g.bracket(&unit(7, 2), &unit(7, 6)).unwrap();
    let mut expect = vec![lieqf::Scalar::zero(); 7];
    expect[5] = sc(-1);
    assert_eq!(got, expect);
}

#[test]
fn jacobi_defect_of_abelian_is_empty() {
    assert!(abelian(4).jacobi_defect().is_empty());
}

#[test]
fn jacobi_defect_of_catalog_algebra_is_empty() {
    let g = build_family(&FamilySpec::new(Family::E73, 7)).unwrap();
    assert!(g.jacobi_defect().is_empty());
}

#[test]
fn jacobi_defect_of_broken_table() {
    // [h,e]=e, [e,f]=h, [h,f]=0: the cyclic sum at (h,e,f) is -h
    let g = broken_sl2_like();
    let defects = g.jacobi_defect();
    assert_eq!(defects.len(), 1);
    let (i, j, k, d) = &defects[0];
    assert_eq!((*i, *j, *k), (0, 1, 2));
    assert_eq!(d, &vec![sc(-1), sc(0), sc(0)]);
}

#[test]
fn center_of_abelian_is_everything() {
    assert_eq!(abelian(3).center().unwrap().dim(), 3);
}

#[test]
fn center_of_filiform_plus_line() {
    // L5 + C in dimension 6: center spanned by Y4 and Y5
    let g = lc(6);
    let z = g.center().unwrap();
    assert_eq!(z.dim(), 2);
    assert!(z.contains(&unit(6, 4)));
    assert!(z.contains(&unit(6, 5)));
}

#[test]
fn center_requires_a_lie_algebra() {
    assert!(broken_sl2_like().center().is_err());
}

#[test]
fn series_of_abelian() {
    let (series, nil) = abelian(5).lower_central_series().unwrap();
    assert_eq!(series.len(), 2);
    assert_eq!(series[1].dim(), 0);
    assert_eq!(nil, Nilpotency::Nilpotent { nilindex: 1 });
}

#[test]
fn quasi_filiform_nilindex() {
    let g = lc(6);
    assert_eq!(g.nilindex().unwrap(), Some(4));
}

#[test]
fn non_nilpotent_detection() {
    let g = non_abelian_2d();
    let (series, nil) = g.lower_central_series().unwrap();
    assert_eq!(nil, Nilpotency::NotNilpotent);
    assert_eq!(series.last().unwrap().dim(), 1); // stabilizes at span{x}
}

#[test]
fn series_is_strictly_decreasing() {
    let g = build_family(&FamilySpec::parse("Cnr_k:n=8,r=3,k=2").unwrap()).unwrap();
    let (series, _) = g.lower_central_series().unwrap();
    for w in series.windows(2) {
        assert!(w[1].dim() < w[0].dim());
        // inclusion: every basis vector of the smaller term lies in the larger
        for v in &w[1].basis {
            assert!(w[0].contains(v));
        }
    }
}

#[test]
fn types_of_reference_algebras() {
    assert_eq!(lc(7).type_of().unwrap(), 3);
    let lnr = build_family(&FamilySpec::parse("Lnr:n=7,r=3").unwrap()).unwrap();
    assert_eq!(lnr.type_of().unwrap(), 2);
    assert_eq!(abelian(4).type_of().unwrap(), 4);
}

#[test]
fn graded_psequence_one_generator_families() {
    let gr = lc(6).associated_graded().unwrap();
    assert_eq!(gr.psequence, vec![3, 1, 1, 1]);
}

#[test]
fn graded_psequence_two_generator_families() {
    let g = build_family(&FamilySpec::parse("Lnr:n=6,r=3").unwrap()).unwrap();
    let gr = g.associated_graded().unwrap();
    assert_eq!(gr.psequence, vec![2, 1, 2, 1]);
}

#[test]
fn graded_abelian_is_a_single_piece() {
    let gr = abelian(4).associated_graded().unwrap();
    assert_eq!(gr.psequence, vec![4]);
    assert_eq!(gr.pieces.len(), 1);
}

#[test]
fn graded_rejects_non_nilpotent_input() {
    assert!(non_abelian_2d().associated_graded().is_err());
}

#[test]
fn graded_psequence_matches_series_quotients() {
    let g = build_family(&FamilySpec::parse("Qnr:n=9,r=5").unwrap()).unwrap();
    let (series, _) = g.lower_central_series().unwrap();
    let direct: Vec<usize> = series
        .windows(2)
        .map(|w| w[0].dim() - w[1].dim())
        .collect();
    assert_eq!(g.associated_graded().unwrap().psequence, direct);
}

#[test]
fn json_round_trip() {
    let g = build_family(&FamilySpec::parse("E952:n=9").unwrap()).unwrap();
    let back = LieAlgebra::from_json(&g.to_json()).unwrap();
    assert_eq!(g, back);
}

#[test]
fn json_loader_rejects_bad_documents() {
    // i >= j
    let bad = r#"{"dim":2,"labels":["Y0","Y1"],"brackets":[{"i":1,"j":0,"terms":[{"k":0,"c":"1"}]}]}"#;
    assert!(LieAlgebra::from_json(bad).is_err());
    // duplicate pair
    let dup = r#"{"dim":3,"labels":["a","b","c"],"brackets":[
        {"i":0,"j":1,"terms":[{"k":2,"c":"1"}]},
        {"i":0,"j":1,"terms":[{"k":2,"c":"2"}]}]}"#;
    assert!(LieAlgebra::from_json(dup).is_err());
    // out-of-range index
    let oob = r#"{"dim":2,"labels":["a","b"],"brackets":[{"i":0,"j":1,"terms":[{"k":5,"c":"1"}]}]}"#;
    assert!(LieAlgebra::from_json(oob).is_err());
}

#[test]
fn bracket_rejects_wrong_lengths() {
    let g = heisenberg();
    assert!(g.bracket(&unit(3, 0), &unit(2, 0)).is_err());
}
