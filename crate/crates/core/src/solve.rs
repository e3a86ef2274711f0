//! Consistency tests and general solutions of `Ax = c`, `AX = C`, `xB = d`,
//! `XB = D` and `AXB = C`.
//!
//! With `QAP = E_a` every solvable `AX = C` has solutions exactly
//! `X = P · [C'_a ; T]` where `C' = QC` and `T` ranges freely; the trailing
//! `m − a` rows of `C'` must vanish. Row systems are the transpose picture
//! with `RBS = E_b`. Free rows are introduced as fresh parameters `t_1`,
//! `t_2`, … numbered row-major within each solve.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::oneinv::rohde_inverse;
use crate::rational::Rational;
use crate::rnf::{decompose, decompose_for_row_system, RankDecomposition};
use crate::symexpr::{AffineExpr, FreshParams, Param, ParamMatrix};

/// A nonzero entry of the transformed right-hand side (`QC`, `DS` or `QCS`)
/// in a position that must vanish for solvability. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub value: Rational,
}

/// Parametric description of all solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralSolution {
    /// The unknown as an affine function of `params`.
    pub general: ParamMatrix,
    pub params: Vec<Param>,
    /// `general` with every parameter set to zero.
    pub particular: Matrix,
}

impl GeneralSolution {
    fn from_general(general: ParamMatrix) -> Self {
        let params = general.params();
        let particular = general.constant_part();
        Self {
            general,
            params,
            particular,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Consistent(GeneralSolution),
    Inconsistent(Witness),
}

impl Solution {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Solution::Consistent(_))
    }

    pub fn general(&self) -> Option<&GeneralSolution> {
        match self {
            Solution::Consistent(g) => Some(g),
            Solution::Inconsistent(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Solution::Consistent(_) => None,
            Solution::Inconsistent(w) => Some(w),
        }
    }

    /// Number of free parameters; zero when inconsistent.
    pub fn param_count(&self) -> usize {
        self.general().map_or(0, |g| g.params.len())
    }
}

fn first_forbidden(m: &Matrix, allowed: impl Fn(usize, usize) -> bool) -> Option<Witness> {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !allowed(i, j) && !m[(i, j)].is_zero())
        .map(|(row, col)| Witness {
            row,
            col,
            value: m[(row, col)].clone(),
        })
}

/// Fills a grid with `known(i, j)` where it returns `Some`, and fresh
/// parameters elsewhere (row-major).
fn fill_grid(
    rows: usize,
    cols: usize,
    known: impl Fn(usize, usize) -> Option<Rational>,
) -> ParamMatrix {
    let mut fresh = FreshParams::new("t");
    let mut grid = ParamMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            grid[(i, j)] = match known(i, j) {
                Some(v) => AffineExpr::constant(v),
                None => AffineExpr::param(fresh.next()),
            };
        }
    }
    grid
}

fn solve_left(dec: &RankDecomposition, c: &Matrix) -> Solution {
    let a = dec.rank;
    let transformed = dec.q.mul(c).expect("caller checked shapes");
    if let Some(w) = first_forbidden(&transformed, |i, _| i < a) {
        return Solution::Inconsistent(w);
    }
    let grid = fill_grid(dec.cols(), c.cols(), |i, j| (i < a).then(|| transformed[(i, j)].clone()));
    let general = grid.left_mul(&dec.p).expect("P is n×n");
    Solution::Consistent(GeneralSolution::from_general(general))
}

fn solve_right(dec: &RankDecomposition, d: &Matrix) -> Solution {
    let b = dec.rank;
    let transformed = d.mul(&dec.p).expect("caller checked shapes");
    if let Some(w) = first_forbidden(&transformed, |_, j| j < b) {
        return Solution::Inconsistent(w);
    }
    let grid = fill_grid(d.rows(), dec.rows(), |i, j| (j < b).then(|| transformed[(i, j)].clone()));
    let general = grid.right_mul(&dec.q).expect("R is n×n");
    Solution::Consistent(GeneralSolution::from_general(general))
}

fn check_rows(op: &'static str, a: &Matrix, c: &Matrix, vector: bool) -> Result<()> {
    if c.rows() != a.rows() || (vector && c.cols() != 1) {
        return Err(Error::shape(op, a.shape(), c.shape()));
    }
    Ok(())
}

fn check_cols(op: &'static str, b: &Matrix, d: &Matrix, vector: bool) -> Result<()> {
    if d.cols() != b.cols() || (vector && d.rows() != 1) {
        return Err(Error::shape(op, b.shape(), d.shape()));
    }
    Ok(())
}

fn trailing_rows_vanish(dec: &RankDecomposition, c: &Matrix) -> bool {
    let transformed = dec.q.mul(c).expect("caller checked shapes");
    first_forbidden(&transformed, |i, _| i < dec.rank).is_none()
}

fn trailing_cols_vanish(dec: &RankDecomposition, d: &Matrix) -> bool {
    let transformed = d.mul(&dec.p).expect("caller checked shapes");
    first_forbidden(&transformed, |_, j| j < dec.rank).is_none()
}

/// `Ax = c` is solvable iff the last `m − a` coordinates of `Qc` vanish.
pub fn consistent_vec(a: &Matrix, c: &Matrix) -> Result<bool> {
    check_rows("consistent_vec", a, c, true)?;
    Ok(trailing_rows_vanish(&decompose(a), c))
}

/// General solution `x = P · [c'_a ; t]` of `Ax = c` with `n − a` fresh
/// parameters.
pub fn general_solution_vec(a: &Matrix, c: &Matrix) -> Result<Solution> {
    check_rows("general_solution_vec", a, c, true)?;
    Ok(solve_left(&decompose(a), c))
}

/// Null space of `a` as `x = P · [0 ; t]`.
pub fn homogeneous_solution(a: &Matrix) -> Solution {
    solve_left(&decompose(a), &Matrix::zeros(a.rows(), 1))
}

/// The short form `x = A⁽¹⁾c` with the Rohde inverse left symbolic.
///
/// The `U` and `W` blocks drop out because the trailing part of `Qc` is
/// zero, leaving `P · [c'_a ; V·c'_a]`. The parameters are the `v_i_j`
/// entries that survive, so there are generally more of them than the
/// `n − a` independent directions they span.
pub fn short_form_solution(a: &Matrix, c: &Matrix) -> Result<Solution> {
    check_rows("short_form_solution", a, c, true)?;
    if c.is_zero() {
        return Err(Error::ZeroRightHandSide);
    }
    let dec = decompose(a);
    let transformed = dec.q.mul(c).expect("shapes checked");
    if let Some(w) = first_forbidden(&transformed, |i, _| i < dec.rank) {
        return Ok(Solution::Inconsistent(w));
    }
    let general = rohde_inverse(&dec).pm.right_mul(c).expect("shapes checked");
    Ok(Solution::Consistent(GeneralSolution::from_general(general)))
}

/// `AX = C` is solvable iff the last `m − a` rows of `QC` vanish.
pub fn consistent_mat_left(a: &Matrix, c: &Matrix) -> Result<bool> {
    check_rows("consistent_mat_left", a, c, false)?;
    Ok(trailing_rows_vanish(&decompose(a), c))
}

/// General solution `X = P · [C'_a ; T]` of `AX = C`, `(n − a)k` parameters.
pub fn solve_ax_c(a: &Matrix, c: &Matrix) -> Result<Solution> {
    check_rows("solve_ax_c", a, c, false)?;
    Ok(solve_left(&decompose(a), c))
}

/// `xB = d` is solvable iff the last `m − b` entries of `dS` vanish.
pub fn consistent_row(b: &Matrix, d: &Matrix) -> Result<bool> {
    check_cols("consistent_row", b, d, true)?;
    Ok(trailing_cols_vanish(&decompose_for_row_system(b), d))
}

/// General solution `x = [d'_b | t] · R` of `xB = d`, `n − b` parameters.
pub fn general_solution_row(b: &Matrix, d: &Matrix) -> Result<Solution> {
    check_cols("general_solution_row", b, d, true)?;
    Ok(solve_right(&decompose_for_row_system(b), d))
}

/// General solution `X = [D'_b | T] · R` of `XB = D`, `k(n − b)` parameters.
pub fn solve_xb_d(b: &Matrix, d: &Matrix) -> Result<Solution> {
    check_cols("solve_xb_d", b, d, false)?;
    Ok(solve_right(&decompose_for_row_system(b), d))
}

/// General solution of `AXB = C`.
///
/// Solvable iff `QCS` vanishes outside its leading `a×b` block `G`; then
/// `X = P · [[G, F], [H, L]] · R` with `F`, `H`, `L` free, `nk − ab`
/// parameters in total.
pub fn solve_axb_c(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<Solution> {
    if c.rows() != a.rows() {
        return Err(Error::shape("solve_axb_c (A, C)", a.shape(), c.shape()));
    }
    if c.cols() != b.cols() {
        return Err(Error::shape("solve_axb_c (B, C)", b.shape(), c.shape()));
    }
    let left = decompose(a);
    let right = decompose_for_row_system(b);
    let (ra, rb) = (left.rank, right.rank);
    let transformed = left
        .q
        .mul(c)
        .and_then(|x| x.mul(&right.p))
        .expect("shapes checked");
    if let Some(w) = first_forbidden(&transformed, |i, j| i < ra && j < rb) {
        return Ok(Solution::Inconsistent(w));
    }
    let grid = fill_grid(a.cols(), b.rows(), |i, j| {
        (i < ra && j < rb).then(|| transformed[(i, j)].clone())
    });
    let general = grid
        .left_mul(&left.p)
        .and_then(|x| x.right_mul(&right.q))
        .expect("shapes checked");
    Ok(Solution::Consistent(GeneralSolution::from_general(general)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use std::collections::BTreeMap;

    fn example_a() -> Matrix {
        Matrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6])
    }

    #[test]
    fn consistent_vec_examples() {
        let a = example_a();
        assert!(consistent_vec(&a, &Matrix::from_i64(2, 1, &[7, 8])).unwrap());
        let dep = Matrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        assert!(consistent_vec(&dep, &Matrix::from_i64(2, 1, &[1, 2])).unwrap());
        assert!(!consistent_vec(&dep, &Matrix::from_i64(2, 1, &[1, 3])).unwrap());
        assert!(consistent_vec(&Matrix::zeros(3, 2), &Matrix::zeros(3, 1)).unwrap());
    }

    #[test]
    fn shape_errors() {
        let a = example_a();
        assert!(matches!(consistent_vec(&a, &Matrix::zeros(3, 1)), Err(Error::Shape { .. })));
        assert!(matches!(consistent_vec(&a, &Matrix::zeros(2, 2)), Err(Error::Shape { .. })));
        assert!(matches!(solve_ax_c(&a, &Matrix::zeros(3, 2)), Err(Error::Shape { .. })));
        assert!(matches!(consistent_row(&a, &Matrix::zeros(1, 2)), Err(Error::Shape { .. })));
        assert!(matches!(
            solve_axb_c(&a, &Matrix::identity(3), &Matrix::zeros(2, 2)),
            Err(Error::Shape { .. })
        ));
    }

    #[test]
    fn example2_particular_and_direction() {
        let sol = general_solution_vec(&example_a(), &Matrix::from_i64(2, 1, &[7, 8])).unwrap();
        let g = sol.general().unwrap();
        assert_eq!(g.params.len(), 1);
        assert_eq!(g.params[0].name(), "t_1");
        let (coef, _) = crate::symexpr::param_coefficient_matrix(&g.general);
        // direction is a multiple of (1, −2, 1)
        let s = coef[(0, 0)].clone();
        assert_eq!(coef, Matrix::from_i64(3, 1, &[1, -2, 1]).scale(&s));
    }

    #[test]
    fn identity_gives_unique_solution() {
        let c = Matrix::from_i64(3, 1, &[4, -1, 2]);
        let sol = general_solution_vec(&Matrix::identity(3), &c).unwrap();
        let g = sol.general().unwrap();
        assert!(g.params.is_empty());
        assert_eq!(g.particular, c);
    }

    #[test]
    fn inconsistent_carries_witness() {
        let dep = Matrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        let sol = general_solution_vec(&dep, &Matrix::from_i64(2, 1, &[1, 3])).unwrap();
        let w = sol.witness().unwrap();
        assert_eq!((w.row, w.col), (1, 0));
        assert!(!w.value.is_zero());
        assert_eq!(sol.param_count(), 0);
    }

    #[test]
    fn homogeneous_extremes() {
        let inv = Matrix::from_i64(2, 2, &[1, 2, 3, 5]);
        let sol = homogeneous_solution(&inv);
        assert_eq!(sol.param_count(), 0);
        assert!(sol.general().unwrap().particular.is_zero());

        let sol = homogeneous_solution(&Matrix::zeros(2, 4));
        assert_eq!(sol.param_count(), 4);
    }

    #[test]
    fn short_form_example2() {
        let c = Matrix::from_i64(2, 1, &[7, 8]);
        let sol = short_form_solution(&example_a(), &c).unwrap();
        let g = sol.general().unwrap();
        let names: Vec<_> = g.params.iter().map(Param::name).collect();
        assert_eq!(names, ["v_1_1", "v_1_2"]);
        // every instantiation solves the system
        let mut assign = BTreeMap::new();
        assign.insert(g.params[0].clone(), rat(3, 2));
        assign.insert(g.params[1].clone(), rat(-5, 1));
        let x = g.general.instantiate(&assign).unwrap();
        assert_eq!(example_a().mul(&x).unwrap(), c);
    }

    #[test]
    fn short_form_rejects_zero_rhs() {
        assert_eq!(
            short_form_solution(&example_a(), &Matrix::zeros(2, 1)),
            Err(Error::ZeroRightHandSide)
        );
        let dep = Matrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        let sol = short_form_solution(&dep, &Matrix::from_i64(2, 1, &[1, 3])).unwrap();
        assert!(!sol.is_consistent());
    }

    #[test]
    fn short_form_invertible() {
        let a = Matrix::from_i64(2, 2, &[2, 1, 1, 1]);
        let c = Matrix::from_i64(2, 1, &[3, 2]);
        let sol = short_form_solution(&a, &c).unwrap();
        let g = sol.general().unwrap();
        assert!(g.params.is_empty());
        assert_eq!(g.particular, Matrix::from_i64(2, 1, &[1, 1]));
    }

    #[test]
    fn consistent_mat_left_examples() {
        let a = Matrix::from_i64(2, 2, &[1, -2, -2, 4]);
        let c = Matrix::from_i64(2, 3, &[1, 2, 1, -2, -4, -2]);
        assert!(consistent_mat_left(&a, &c).unwrap());
        assert!(consistent_mat_left(&a, &Matrix::zeros(2, 3)).unwrap());
        let bad = Matrix::from_i64(2, 3, &[1, 2, 1, 0, 0, 0]);
        assert!(!consistent_mat_left(&a, &bad).unwrap());
    }

    #[test]
    fn ax_c_first_stage_of_two_sided_example() {
        let a = Matrix::from_i64(2, 2, &[1, -2, -2, 4]);
        let c = Matrix::from_i64(2, 3, &[1, 2, 1, -2, -4, -2]);
        let sol = solve_ax_c(&a, &c).unwrap();
        let g = sol.general().unwrap();
        assert_eq!(g.params.len(), 3);
        assert_eq!(a.mul(&g.particular).unwrap(), c);

        let sol = solve_ax_c(&Matrix::identity(2), &c).unwrap();
        assert_eq!(sol.general().unwrap().particular, c);
        assert_eq!(sol.param_count(), 0);

        let sol = solve_ax_c(&a, &Matrix::zeros(2, 3)).unwrap();
        assert_eq!(sol.param_count(), 3);
    }

    #[test]
    fn row_system_transposed_example2() {
        let b = Matrix::from_i64(3, 2, &[1, 4, 2, 5, 3, 6]);
        let d = Matrix::from_i64(1, 2, &[7, 8]);
        assert!(consistent_row(&b, &d).unwrap());
        let sol = general_solution_row(&b, &d).unwrap();
        let g = sol.general().unwrap();
        assert_eq!(g.general.shape(), (1, 3));
        assert_eq!(g.params.len(), 1);
        assert_eq!(g.particular.mul(&b).unwrap(), d);
    }

    #[test]
    fn row_system_trivial_cases() {
        let b = Matrix::from_i64(2, 2, &[1, 2, 3, 4]);
        let d = Matrix::from_i64(1, 2, &[5, 6]);
        let sol = general_solution_row(&b, &d).unwrap();
        assert_eq!(sol.general().unwrap().particular, d.mul(&b.inverse().unwrap()).unwrap());

        let sol = solve_xb_d(&Matrix::identity(3), &Matrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]))
            .unwrap();
        assert_eq!(sol.param_count(), 0);

        let dep = Matrix::from_i64(3, 2, &[1, 2, 2, 4, 0, 0]);
        let sol = solve_xb_d(&dep, &Matrix::zeros(2, 2)).unwrap();
        assert_eq!(sol.param_count(), 2 * (3 - 1));
        assert!(!consistent_row(&dep, &Matrix::from_i64(1, 2, &[1, 1])).unwrap());
    }

    #[test]
    fn two_sided_worked_example() {
        let a = Matrix::from_i64(2, 2, &[1, -2, -2, 4]);
        let b = Matrix::from_i64(3, 3, &[1, 2, 1, 1, 2, 1, 1, 2, 1]);
        let c = Matrix::from_i64(2, 3, &[1, 2, 1, -2, -4, -2]);
        let sol = solve_axb_c(&a, &b, &c).unwrap();
        let g = sol.general().unwrap();
        assert_eq!(g.params.len(), 5);
        let x = &g.particular;
        assert_eq!(a.mul(x).unwrap().mul(&b).unwrap(), c);
    }

    #[test]
    fn two_sided_trivial_cases() {
        let c = Matrix::from_i64(2, 2, &[1, 2, 3, 4]);
        let sol = solve_axb_c(&Matrix::identity(2), &Matrix::identity(2), &c).unwrap();
        assert_eq!(sol.general().unwrap().particular, c);
        assert_eq!(sol.param_count(), 0);

        let a = Matrix::from_i64(2, 3, &[1, 0, 1, 0, 0, 0]);
        let b = Matrix::from_i64(2, 2, &[1, 1, 1, 1]);
        let sol = solve_axb_c(&a, &b, &Matrix::zeros(2, 2)).unwrap();
        assert_eq!(sol.param_count(), 3 * 2 - 1);
        assert!(sol.general().unwrap().particular.is_zero());

        let sol = solve_axb_c(&a, &b, &Matrix::from_i64(2, 2, &[1, 0, 0, 0])).unwrap();
        assert!(!sol.is_consistent());
    }
}
