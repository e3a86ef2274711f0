#![forbid(unsafe_code)]

//! Exact rational linear algebra built around Rohde's parametrization of
//! {1}-inverses.
//!
//! Every matrix `A` of rank `a` admits regular `Q`, `P` with `QAP = E_a`
//! (the rank normal form). From that factorization the complete family of
//! {1}-inverses is
//!
//! ```text
//! A⁽¹⁾ = P · [ I_a  U ] · Q
//!            [ V    W ]
//! ```
//!
//! with `U`, `V`, `W` free. The crate builds that family symbolically and
//! uses it to decide consistency of, and write down minimal-parameter
//! general solutions for, `Ax = c`, `AX = C`, `xB = d`, `XB = D` and
//! `AXB = C`. All arithmetic is over big-integer fractions, so every check
//! is exact.
//!
//! The [`oracle`] module is an independent plain-elimination solver that
//! shares nothing with the main path beyond [`Matrix`]; tests use it as
//! ground truth.

pub mod error;
pub mod json;
pub mod matrix;
pub mod oneinv;
pub mod oracle;
pub mod rational;
pub mod rnf;
pub mod sample;
pub mod solve;
pub mod symexpr;

pub use error::{Error, Result};
pub use matrix::{mat_inverse, mat_mul, Matrix};
pub use oneinv::{rohde_inverse, rohde_inverse_row_side, verify_g1, G1Violation, RohdeInverse};
pub use oracle::{affine_sets_equal, gauss_solve, kron_nullity, solution_to_affine_set, AffineSet};
pub use rational::{parse_rational, rat, Rational};
pub use rnf::{decompose, decompose_for_row_system, RankDecomposition};
pub use solve::{
    consistent_mat_left, consistent_row, consistent_vec, general_solution_row,
    general_solution_vec, homogeneous_solution, short_form_solution, solve_ax_c, solve_axb_c,
    solve_xb_d, GeneralSolution, Solution, Witness,
};
pub use symexpr::{instantiate, param_coefficient_matrix, pm_mul, AffineExpr, Param, ParamMatrix};
