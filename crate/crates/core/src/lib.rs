//! Exact construction and determinant evaluation for Vieta matrices.
//!
//! The Vieta matrix of nodes `a_1, ..., a_n` has, in column `j`, the
//! elementary symmetric values `e_0, ..., e_{n-1}` of the nodes with `a_j`
//! left out. Its determinant is `prod_{i<k} (a_i - a_k)`. The same matrix is
//! the Jacobian of `(e_1, ..., e_n)`, and up to a factorial factor it gives
//! the Wronskian of the nodal polynomials `prod_{i != j} (x - a_i)`.
//!
//! Everything is exact over the rationals. Closed forms live in
//! [`structmat`] and [`calculus`]; the independent determinant oracles in
//! [`exactdet`]; the name-selected strategies in [`method`]; randomized
//! checking in [`verify`]; timing in [`bench`].

pub mod bench;
pub mod calculus;
pub mod exactdet;
pub mod matrix;
pub mod method;
pub mod rational;
pub mod structmat;
pub mod sympoly;
pub mod verify;

#[cfg(test)]
mod testing;

pub use calculus::{
    elem_sym_map, jacobian_det_closed, jacobian_matrix, nodal_basis, poly_derivative, wronskian_closed,
    wronskian_matrix, NodalBasis,
};
pub use exactdet::{det_bareiss, det_laplace, det_laplace_with_limit, DetError, LAPLACE_DEFAULT_MAX};
pub use matrix::{ExactMatrix, MatrixError};
pub use method::{DeterminantMethod, MatrixKind, MethodRegistry};
pub use rational::{parse_rational, rat_arith, ArithOp, ParseRationalError, Rational};
pub use structmat::{
    build_vandermonde, build_vieta, shift_nodes, vandermonde_det_closed, vieta_det_closed, vieta_extension_poly,
};
pub use sympoly::{elem_sym_all, leave_one_out_table, poly_from_roots, DensePolynomial, LeaveOneOutTable, NodeSet};
pub use verify::{IdentityRegistry, VerifyConfig, VerifyReport};
