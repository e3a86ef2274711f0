use thiserror::Error;

/// Errors raised by the algebraic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands whose shapes do not compose.
    #[error("shape mismatch in {op}: {lhs_rows}x{lhs_cols} vs {rhs_rows}x{rhs_cols}")]
    Shape {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },
    /// A square matrix without an inverse.
    #[error("singular matrix: no pivot in column {pivot_col}")]
    Singular { pivot_col: usize },
    /// Product of two matrices that both carry free parameters.
    #[error("product of two parametric matrices is not affine")]
    Degree,
    /// Instantiation without a value for some parameter.
    #[error("no value bound for parameter `{0}`")]
    UnboundParameter(String),
    /// The short-form solution `x = A⁽¹⁾c` needs `c ≠ 0`.
    #[error("right-hand side is zero; the short form degenerates to x = 0")]
    ZeroRightHandSide,
    /// Entry grid length does not match the declared shape.
    #[error("expected {expected} entries for the declared shape, got {found}")]
    EntryCount { expected: usize, found: usize },
}

impl Error {
    pub(crate) fn shape(op: &'static str, lhs: (usize, usize), rhs: (usize, usize)) -> Self {
        Error::Shape {
            op,
            lhs_rows: lhs.0,
            lhs_cols: lhs.1,
            rhs_rows: rhs.0,
            rhs_cols: rhs.1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
