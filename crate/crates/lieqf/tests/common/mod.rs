//! Shared small-algebra fixtures for the integration tests.
#![allow(dead_code)] // not every test target uses every fixture

use lieqf::exactlin::sc;
use lieqf::liecore::LieAlgebra;

/// Abelian algebra of the given dimension.
pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::new(n)
}

/// Heisenberg algebra: [x, y] = z.
pub fn heisenberg() -> LieAlgebra {
    let mut g = LieAlgebra::new(3);
    g.add_bracket(0, 1, 2, sc(1)).unwrap();
    g
}

/// The 2-dimensional non-abelian algebra: [x, y] = x.
pub fn non_abelian_2d() -> LieAlgebra {
    let mut g = LieAlgebra::new(2);
    g.add_bracket(0, 1, 0, sc(1)).unwrap();
    g
}

/// A deliberately broken table: [h,e] = e, [e,f] = h, [h,f] = 0.
/// Jacobi fails at (h, e, f) with defect -h.
pub fn broken_sl2_like() -> LieAlgebra {
    let mut g = LieAlgebra::new(3);
    g.add_bracket(0, 1, 1, sc(1)).unwrap(); // [h,e] = e
    g.add_bracket(1, 2, 0, sc(1)).unwrap(); // [e,f] = h
    g
}
