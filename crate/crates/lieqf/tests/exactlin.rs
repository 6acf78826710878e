//! Frozen oracles and conventions for the exact linear algebra layer.

use lieqf::exactlin::{
    frac, kernel_basis, rank, sc, scalar_from_str, scalar_to_string, solve, Matrix, Scalar,
};
use num::Zero;

#[test]
fn rank_identity() {
    assert_eq!(rank(&Matrix::identity(3)), 3);
}

#[test]
fn rank_zero_matrix() {
    assert_eq!(rank(&Matrix::new(4, 7)), 0);
}

#[test]
fn rank_proportional_rows() {
    let m = Matrix::from_rows(
        vec![vec![sc(1), sc(2)], vec![sc(2), sc(4)]],
        2,
    );
    assert_eq!(rank(&m), 1);
}

#[test]
fn kernel_of_identity_is_empty() {
    assert!(kernel_basis(&Matrix::identity(2)).is_empty());
}

#[test]
fn kernel_of_difference_row() {
    let m = Matrix::from_rows(vec![vec![sc(1), sc(-1)]], 2);
    let basis = kernel_basis(&m);
    assert_eq!(basis, vec![vec![sc(1), sc(1)]]);
}

#[test]
fn kernel_of_proportional_rows() {
    let m = Matrix::from_rows(
        vec![vec![sc(1), sc(2)], vec![sc(2), sc(4)]],
        2,
    );
    // reduced echelon convention: free column 1 gets unit value
    let basis = kernel_basis(&m);
    assert_eq!(basis, vec![vec![sc(-2), sc(1)]]);
}

#[test]
fn kernel_free_columns_in_increasing_order() {
    // one pivot at column 1; free columns 0 and 2, in that order
    let m = Matrix::from_rows(vec![vec![sc(0), sc(3), sc(6)]], 3);
    let basis = kernel_basis(&m);
    assert_eq!(
        basis,
        vec![
            vec![sc(1), sc(0), sc(0)],
            vec![sc(0), sc(-2), sc(1)],
        ]
    );
}

#[test]
fn solve_identity() {
    let b = vec![sc(3), frac(1, 2)];
    assert_eq!(
        solve(&Matrix::identity(2), &b).unwrap(),
        Some(b.clone())
    );
}

#[test]
fn solve_inconsistent() {
    let m = Matrix::new(2, 2);
    assert_eq!(solve(&m, &[sc(1), sc(0)]).unwrap(), None);
}

#[test]
fn solve_diagonal() {
    let m = Matrix::from_rows(
        vec![vec![sc(2), sc(0)], vec![sc(0), sc(4)]],
        2,
    );
    assert_eq!(
        solve(&m, &[sc(1), sc(2)]).unwrap(),
        Some(vec![frac(1, 2), frac(1, 2)])
    );
}

#[test]
fn solve_free_variables_are_zeroed() {
    // x0 + x1 = 2 has the deterministic solution (2, 0)
    let m = Matrix::from_rows(vec![vec![sc(1), sc(1)]], 2);
    assert_eq!(solve(&m, &[sc(2)]).unwrap(), Some(vec![sc(2), sc(0)]));
}

#[test]
fn solve_rejects_dimension_mismatch() {
    let m = Matrix::new(2, 2);
    assert!(solve(&m, &[sc(1)]).is_err());
}

#[test]
fn rational_parsing_and_formatting() {
    assert_eq!(scalar_to_string(&frac(-3, 6)), "-1/2");
    assert_eq!(scalar_to_string(&sc(0)), "0");
    assert_eq!(scalar_from_str("-7/14").unwrap(), frac(-1, 2));
    assert!(scalar_from_str("3/0").is_err());
}

#[test]
fn rank_survives_awkward_fractions() {
    let m = Matrix::from_rows(
        vec![
            vec![frac(1, 3), frac(2, 7), sc(0)],
            vec![frac(5, 9), frac(10, 21), sc(0)],
            vec![sc(0), sc(1), frac(-13, 11)],
        ],
        3,
    );
    // rows 1 and 2 are proportional
    assert_eq!(rank(&m), 2);
    for v in kernel_basis(&m) {
        assert!(m.mul_vec(&v).unwrap().iter().all(Scalar::is_zero));
    }
}
