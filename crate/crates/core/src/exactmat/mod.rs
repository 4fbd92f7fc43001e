//! Exact dense linear algebra over ℚ.
//!
//! Ranks use fraction-free elimination, characteristic polynomials a
//! Hessenberg reduction. Irreducibility is certified by the dimension of the
//! generated algebra reaching n², and the gluing solver returns the
//! leftmost-pivot solution with free unknowns at zero.

pub mod algebra;
pub mod echelon;
pub mod mat;
pub mod poly;
pub mod rat;

pub use algebra::{
    algebra_closure_dim, centralizer_dim, charpoly, intertwiner_dim, is_nilpotent, jordan_matrix,
    jordan_type_nilpotent, nilpotent_jordan_basis, solve_coboundary_sum,
};
pub use echelon::{det, inverse, nullspace, rank};
pub use mat::Mat;
pub use poly::Poly;
pub use rat::{fmt_rat, parse_rat, ri, rq, Rat};
