//! Classical Gauss–Jordan solver used as ground truth.
//!
//! Nothing here touches [`crate::rnf`], [`crate::oneinv`] or
//! [`crate::solve`]; the only shared code is [`Matrix`] itself, so agreement
//! between the two paths is evidence rather than a tautology.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::solve::GeneralSolution;
use crate::symexpr::param_coefficient_matrix;

/// `particular + span(basis)`, all members of the same shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSet {
    pub particular: Matrix,
    pub basis: Vec<Matrix>,
}

impl AffineSet {
    /// Dimension of the direction space (the number of free parameters).
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.particular.shape()
    }

    /// Membership by solving for coordinates in the basis.
    pub fn contains(&self, x: &Matrix) -> bool {
        if x.shape() != self.shape() {
            return false;
        }
        let diff = x.sub(&self.particular).expect("same shape");
        let columns = stack_rows(&self.basis, diff.as_slice().len()).transpose();
        let rhs = Matrix::column(diff.into_vec());
        solve_flat(&columns, &rhs).is_some()
    }

    fn basis_rank(&self) -> usize {
        rank(&stack_rows(&self.basis, self.particular.as_slice().len()))
    }
}

/// Reduced row echelon form and pivot columns. Pivot: first nonzero entry
/// from the top in each column.
fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (rows, cols) = m.shape();
    let mut w: Vec<Vec<Rational>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !w[i][c].is_zero()) else {
            continue;
        };
        w.swap(r, p);
        let inv = w[r][c].recip();
        for x in &mut w[r] {
            *x *= &inv;
        }
        let pivot_row = w[r].clone();
        for (i, row) in w.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let reduced = Matrix::new(rows, cols, w.into_iter().flatten().collect()).expect("rectangular");
    (reduced, pivots)
}

/// Rank by row reduction.
pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

fn stack_rows(vectors: &[Matrix], len: usize) -> Matrix {
    let data = vectors.iter().flat_map(|v| v.as_slice().iter().cloned()).collect();
    Matrix::new(vectors.len(), len, data).expect("equal-length vectors")
}

/// Solves `a·x = c` for a column `c`; `None` when inconsistent.
fn solve_flat(a: &Matrix, c: &Matrix) -> Option<(Matrix, Vec<Matrix>)> {
    let (m, n) = a.shape();
    let mut aug = Matrix::zeros(m, n + 1);
    for i in 0..m {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = c[(i, 0)].clone();
    }
    let (reduced, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut particular = Matrix::zeros(n, 1);
    for (r, &pc) in pivots.iter().enumerate() {
        particular[(pc, 0)] = reduced[(r, n)].clone();
    }
    let basis = (0..n)
        .filter(|j| !pivots.contains(j))
        .map(|free| {
            let mut v = Matrix::zeros(n, 1);
            v[(free, 0)] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[(pc, 0)] = -reduced[(r, free)].clone();
            }
            v
        })
        .collect();
    Some((particular, basis))
}

/// Solves `a·x = c` by row reduction of `[a | c]`.
///
/// Returns `Ok(None)` if the system is inconsistent. The basis spans the
/// null space of `a` and has `n − rank(a)` members.
pub fn gauss_solve(a: &Matrix, c: &Matrix) -> Result<Option<AffineSet>> {
    if c.rows() != a.rows() || c.cols() != 1 {
        return Err(Error::shape("gauss_solve", a.shape(), c.shape()));
    }
    Ok(solve_flat(a, c).map(|(particular, basis)| AffineSet { particular, basis }))
}

/// Coefficient matrix (ml × nk) of the map `X ↦ A·X·B` on row-major
/// flattened `X` (n×k) and `A·X·B` (m×l).
pub fn kron_coefficients(a: &Matrix, b: &Matrix) -> Matrix {
    let (m, n) = a.shape();
    let (k, l) = b.shape();
    let mut out = Matrix::zeros(m * l, n * k);
    for i in 0..m {
        for p in 0..n {
            let aip = &a[(i, p)];
            if aip.is_zero() {
                continue;
            }
            for q in 0..k {
                for j in 0..l {
                    let bqj = &b[(q, j)];
                    if !bqj.is_zero() {
                        out[(i * l + j, p * k + q)] = aip * bqj;
                    }
                }
            }
        }
    }
    out
}

/// Dimension of the solution space of `A·X·B = 0`.
pub fn kron_nullity(a: &Matrix, b: &Matrix) -> usize {
    a.cols() * b.rows() - rank(&kron_coefficients(a, b))
}

/// Solves `A·X·B = C` through the flattened system. Covers `AX = C`
/// (`B = I`) and `XB = D` (`A = I`) as well.
pub fn gauss_solve_axb(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<Option<AffineSet>> {
    if c.shape() != (a.rows(), b.cols()) {
        return Err(Error::shape("gauss_solve_axb", (a.rows(), b.cols()), c.shape()));
    }
    let (n, k) = (a.cols(), b.rows());
    let coeffs = kron_coefficients(a, b);
    let rhs = Matrix::column(c.as_slice().to_vec());
    let reshape = |v: Matrix| Matrix::new(n, k, v.into_vec()).expect("n·k entries");
    Ok(solve_flat(&coeffs, &rhs).map(|(p, basis)| AffineSet {
        particular: reshape(p),
        basis: basis.into_iter().map(reshape).collect(),
    }))
}

/// Converts a parametric solution to an explicit affine set.
///
/// The particular member is the all-zero instantiation; the basis is an
/// independent subset of the per-parameter coefficient matrices.
pub fn solution_to_affine_set(sol: &GeneralSolution) -> AffineSet {
    let (rows, cols) = sol.general.shape();
    let (coef, _) = param_coefficient_matrix(&sol.general);
    let (_, independent) = rref(&coef);
    let basis = independent
        .into_iter()
        .map(|j| {
            let data = (0..coef.rows()).map(|i| coef[(i, j)].clone()).collect();
            Matrix::new(rows, cols, data).expect("entry count matches shape")
        })
        .collect();
    AffineSet {
        particular: sol.particular.clone(),
        basis,
    }
}

/// Set equality: same direction space and each particular member lies in
/// the other set.
pub fn affine_sets_equal(s1: &AffineSet, s2: &AffineSet) -> bool {
    if s1.shape() != s2.shape() {
        return false;
    }
    let r1 = s1.basis_rank();
    let r2 = s2.basis_rank();
    let mut all = s1.basis.clone();
    all.extend(s2.basis.iter().cloned());
    let joint = rank(&stack_rows(&all, s1.particular.as_slice().len()));
    r1 == r2 && joint == r1 && s1.contains(&s2.particular) && s2.contains(&s1.particular)
}
