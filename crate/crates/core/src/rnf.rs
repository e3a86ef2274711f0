//! Rank normal form `Q·A·P = E_a` by Gauss–Jordan elimination with
//! accumulated elementary transforms.

use num_traits::{One, Zero};

use crate::matrix::Matrix;

/// Regular `q` (m×m) and `p` (n×n), with inverses, such that
/// `q · A · p = E_rank`.
///
/// For a row-system decomposition (see [`decompose_for_row_system`]) the
/// same fields hold `R` in `q` and `S` in `p`, so `q · B · p = E_rank` still
/// reads left-to-right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankDecomposition {
    pub q: Matrix,
    pub q_inv: Matrix,
    pub p: Matrix,
    pub p_inv: Matrix,
    pub rank: usize,
}

impl RankDecomposition {
    /// Rows of the decomposed matrix.
    pub fn rows(&self) -> usize {
        self.q.rows()
    }

    /// Columns of the decomposed matrix.
    pub fn cols(&self) -> usize {
        self.p.rows()
    }

    /// `E_rank` of the decomposed shape.
    pub fn normal_form(&self) -> Matrix {
        let mut e = Matrix::zeros(self.rows(), self.cols());
        for i in 0..self.rank {
            e[(i, i)] = One::one();
        }
        e
    }
}

/// Computes `Q`, `P`, their inverses and the rank of `a`.
///
/// Rows are reduced to reduced row echelon form (pivot: first nonzero entry
/// from the top in the leftmost unconsumed column), the remaining entries of
/// each pivot row are cleared by column operations, and pivot columns are
/// then swapped into the leading block. Deterministic.
pub fn decompose(a: &Matrix) -> RankDecomposition {
    let (m, n) = a.shape();
    let mut work = a.clone();
    let mut q = Matrix::identity(m);
    let mut q_inv = Matrix::identity(m);
    let mut p = Matrix::identity(n);
    let mut p_inv = Matrix::identity(n);

    // Row phase. Each step left-multiplies by E: q ← E·q, q_inv ← q_inv·E⁻¹.
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(pivot) = (row..m).find(|&r| !work[(r, col)].is_zero()) else {
            continue;
        };
        work.swap_rows(row, pivot);
        q.swap_rows(row, pivot);
        q_inv.swap_cols(row, pivot);

        let s = work[(row, col)].recip();
        let s_inv = work[(row, col)].clone();
        work.scale_row(row, &s);
        q.scale_row(row, &s);
        q_inv.scale_col(row, &s_inv);

        for r in 0..m {
            if r == row || work[(r, col)].is_zero() {
                continue;
            }
            let f = -work[(r, col)].clone();
            work.add_row_multiple(r, row, &f);
            q.add_row_multiple(r, row, &f);
            // (I + f·e_r e_rowᵀ)⁻¹ = I − f·e_r e_rowᵀ; right-multiplying
            // subtracts f·col[r] from col[row].
            q_inv.add_col_multiple(row, r, &-f);
        }
        pivot_cols.push(col);
        row += 1;
    }
    let rank = pivot_cols.len();

    // Column phase. Each step right-multiplies by F: p ← p·F, p_inv ← F⁻¹·p_inv.
    for (r, &pc) in pivot_cols.iter().enumerate() {
        for c in 0..n {
            if c == pc || work[(r, c)].is_zero() {
                continue;
            }
            let f = -work[(r, c)].clone();
            work.add_col_multiple(c, pc, &f);
            p.add_col_multiple(c, pc, &f);
            p_inv.add_row_multiple(pc, c, &-f);
        }
    }
    for (r, &pc) in pivot_cols.iter().enumerate() {
        work.swap_cols(r, pc);
        p.swap_cols(r, pc);
        p_inv.swap_rows(r, pc);
    }

    let dec = RankDecomposition {
        q,
        q_inv,
        p,
        p_inv,
        rank,
    };
    debug_assert_eq!(work, dec.normal_form());
    dec
}

/// Decomposition `R·B·S = E_b` used by row systems `xB = d` and `XB = D`.
///
/// Computed by decomposing `Bᵀ` and transposing: if `Q'·Bᵀ·P' = E`, then
/// `P'ᵀ·B·Q'ᵀ = Eᵀ`. The result carries `R` (n×n) in `q` and `S` (m×m) in
/// `p`.
pub fn decompose_for_row_system(b: &Matrix) -> RankDecomposition {
    let t = decompose(&b.transpose());
    RankDecomposition {
        q: t.p.transpose(),
        q_inv: t.p_inv.transpose(),
        p: t.q.transpose(),
        p_inv: t.q_inv.transpose(),
        rank: t.rank,
    }
}
