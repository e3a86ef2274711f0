//! Rohde's general {1}-inverse `P · [[I_a, U], [V, W]] · Q`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::Matrix;
use crate::rational::{rat, Rational};
use crate::rnf::{decompose_for_row_system, RankDecomposition};
use crate::symexpr::{AffineExpr, Param, ParamMatrix};

/// The full family of {1}-inverses of a matrix, held symbolically.
///
/// For a column-side inverse of `A` (m×n, rank a) the free blocks are
/// `U` (a×(m−a)), `V` ((n−a)×a) and `W` ((n−a)×(m−a)), with parameters
/// named `u_i_j`, `v_i_j`, `w_i_j`. The row-side constructor uses the
/// letters `m`, `n`, `k` for the same three block positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RohdeInverse {
    pub pm: ParamMatrix,
    pub decomposition: RankDecomposition,
    pub u_params: Vec<Vec<Param>>,
    pub v_params: Vec<Vec<Param>>,
    pub w_params: Vec<Vec<Param>>,
}

impl RohdeInverse {
    pub fn param_count(&self) -> usize {
        [&self.u_params, &self.v_params, &self.w_params]
            .iter()
            .flat_map(|g| g.iter())
            .map(Vec::len)
            .sum()
    }

    /// Shapes of the `U`, `V`, `W` blocks as `(rows, cols)`.
    pub fn block_shapes(&self) -> [(usize, usize); 3] {
        let a = self.decomposition.rank;
        let (rows, cols) = self.pm.shape();
        [(a, cols - a), (rows - a, a), (rows - a, cols - a)]
    }
}

fn param_grid(
    rows: usize,
    cols: usize,
    letter: &str,
    ordinal: &mut u32,
) -> Vec<Vec<Param>> {
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    *ordinal += 1;
                    Param::new(*ordinal, format!("{letter}_{}_{}", i + 1, j + 1))
                })
                .collect()
        })
        .collect()
}

fn build(dec: RankDecomposition, letters: [&str; 3]) -> RohdeInverse {
    // Inverse shape: (columns of the source) × (rows of the source).
    let rows = dec.p.rows();
    let cols = dec.q.rows();
    let a = dec.rank;
    let mut ordinal = 0;
    let u = param_grid(a, cols - a, letters[0], &mut ordinal);
    let v = param_grid(rows - a, a, letters[1], &mut ordinal);
    let w = param_grid(rows - a, cols - a, letters[2], &mut ordinal);

    let mut middle = ParamMatrix::zeros(rows, cols);
    for i in 0..a {
        middle[(i, i)] = AffineExpr::constant(Rational::one());
        for j in a..cols {
            middle[(i, j)] = AffineExpr::param(u[i][j - a].clone());
        }
    }
    for i in a..rows {
        for j in 0..a {
            middle[(i, j)] = AffineExpr::param(v[i - a][j].clone());
        }
        for j in a..cols {
            middle[(i, j)] = AffineExpr::param(w[i - a][j - a].clone());
        }
    }
    let pm = middle
        .left_mul(&dec.p)
        .and_then(|x| x.right_mul(&dec.q))
        .expect("decomposition factors have matching shapes");

    RohdeInverse {
        pm,
        decomposition: dec,
        u_params: u,
        v_params: v,
        w_params: w,
    }
}

/// Every {1}-inverse of the decomposed matrix, as `P · [[I, U], [V, W]] · Q`.
pub fn rohde_inverse(dec: &RankDecomposition) -> RohdeInverse {
    build(dec.clone(), ["u", "v", "w"])
}

/// Every {1}-inverse of `b` in the row-side form `S · [[I, M], [N, K]] · R`
/// where `R · b · S = E_b`.
pub fn rohde_inverse_row_side(b: &Matrix) -> RohdeInverse {
    build(decompose_for_row_system(b), ["m", "n", "k"])
}

/// Why a candidate failed the `A·G·A = A` test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum G1Violation {
    /// `G` is not `cols(A) × rows(A)`.
    Shape { expected: (usize, usize), found: (usize, usize) },
    /// Entry of `A·G·A` that differs from `A` symbolically.
    Entry { row: usize, col: usize, found: AffineExpr },
    /// Entry that differed under a random instantiation.
    Trial { trial: usize, row: usize, col: usize },
}

impl fmt::Display for G1Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            G1Violation::Shape { expected, found } => write!(
                f,
                "candidate is {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            G1Violation::Entry { row, col, found } => {
                write!(f, "A·G·A differs from A at ({row}, {col}): {found}")
            }
            G1Violation::Trial { trial, row, col } => {
                write!(f, "random instantiation {trial} fails at ({row}, {col})")
            }
        }
    }
}

/// Checks `A·G·A = A` symbolically, then under `trials` random
/// instantiations (fixed seed) as a cross-check.
pub fn check_g1(a: &Matrix, g: &ParamMatrix, trials: usize) -> Result<(), G1Violation> {
    let expected = (a.cols(), a.rows());
    if g.shape() != expected {
        return Err(G1Violation::Shape {
            expected,
            found: g.shape(),
        });
    }
    let aga = g
        .left_mul(a)
        .and_then(|x| x.right_mul(a))
        .expect("shapes checked above");
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let e = &aga[(i, j)];
            if !e.is_constant() || e.constant_term() != &a[(i, j)] {
                return Err(G1Violation::Entry {
                    row: i,
                    col: j,
                    found: e.clone(),
                });
            }
        }
    }

    let params = g.params();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6731_5eed);
    for trial in 0..trials {
        let assignment: BTreeMap<Param, Rational> = params
            .iter()
            .map(|p| (p.clone(), rat(rng.random_range(-9..=9), rng.random_range(1..=4))))
            .collect();
        let concrete = g.instantiate(&assignment).expect("all parameters assigned");
        let product = a
            .mul(&concrete)
            .and_then(|x| x.mul(a))
            .expect("shapes checked above");
        if let Some(k) = (0..product.as_slice().len())
            .find(|&k| product.as_slice()[k] != a.as_slice()[k])
        {
            return Err(G1Violation::Trial {
                trial,
                row: k / a.cols(),
                col: k % a.cols(),
            });
        }
    }
    Ok(())
}

/// `true` iff `g` is a {1}-inverse of `a` for every parameter value.
pub fn verify_g1(a: &Matrix, g: &ParamMatrix, trials: usize) -> bool {
    check_g1(a, g, trials).is_ok()
}
