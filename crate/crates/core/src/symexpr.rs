//! Affine expressions over named free parameters and matrices of them.
//!
//! Only degree ≤ 1 is representable; multiplying two parametric matrices is
//! rejected with [`Error::Degree`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;

/// A free parameter. Ordered by ordinal, then name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Param {
    ordinal: u32,
    name: Arc<str>,
}

impl Param {
    pub fn new(ordinal: u32, name: impl Into<Arc<str>>) -> Self {
        Self {
            ordinal,
            name: name.into(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ordinal(&self) -> u32 {
        self.ordinal
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// `constant + Σ coefficient · param`, never storing a zero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AffineExpr {
    constant: Rational,
    terms: BTreeMap<Param, Rational>,
}

impl AffineExpr {
    pub fn constant(value: Rational) -> Self {
        Self {
            constant: value,
            terms: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The expression `1 · param`.
    pub fn param(param: Param) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(param, Rational::one());
        Self {
            constant: Rational::zero(),
            terms,
        }
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    /// Coefficient of `param` (zero if absent).
    pub fn coefficient(&self, param: &Param) -> Rational {
        self.terms.get(param).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in parameter order.
    pub fn terms(&self) -> impl Iterator<Item = (&Param, &Rational)> {
        self.terms.iter()
    }

    pub fn params(&self) -> impl Iterator<Item = &Param> {
        self.terms.keys()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    /// `self += factor · other`
    pub fn add_scaled(&mut self, other: &AffineExpr, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        self.constant += &other.constant * factor;
        for (p, c) in &other.terms {
            let v = c * factor;
            match self.terms.get_mut(p) {
                Some(existing) => {
                    *existing += v;
                    if existing.is_zero() {
                        self.terms.remove(p);
                    }
                }
                None => {
                    self.terms.insert(p.clone(), v);
                }
            }
        }
    }

    pub fn scaled(&self, factor: &Rational) -> AffineExpr {
        let mut out = AffineExpr::zero();
        out.add_scaled(self, factor);
        out
    }

    /// Product of two expressions; fails unless one of them is constant.
    pub fn mul(&self, rhs: &AffineExpr) -> Result<AffineExpr> {
        if self.is_constant() {
            Ok(rhs.scaled(&self.constant))
        } else if rhs.is_constant() {
            Ok(self.scaled(&rhs.constant))
        } else {
            Err(Error::Degree)
        }
    }

    /// Evaluates with `lookup` supplying each parameter's value.
    pub fn eval_with<F>(&self, mut lookup: F) -> Result<Rational>
    where
        F: FnMut(&Param) -> Option<Rational>,
    {
        let mut acc = self.constant.clone();
        for (p, c) in &self.terms {
            let v = lookup(p).ok_or_else(|| Error::UnboundParameter(p.name().to_owned()))?;
            acc += c * v;
        }
        Ok(acc)
    }
}

impl From<Rational> for AffineExpr {
    fn from(value: Rational) -> Self {
        AffineExpr::constant(value)
    }
}

impl std::ops::Add<&AffineExpr> for &AffineExpr {
    type Output = AffineExpr;

    fn add(self, rhs: &AffineExpr) -> AffineExpr {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl std::ops::Sub<&AffineExpr> for &AffineExpr {
    type Output = AffineExpr;

    fn sub(self, rhs: &AffineExpr) -> AffineExpr {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

/// Renders as `"-19/3 + 1*t_1"`: the constant first (omitted when zero and
/// terms exist), then `± |coefficient|*name` per term in parameter order.
impl fmt::Display for AffineExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_zero() || self.terms.is_empty() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (p, c) in &self.terms {
            if first {
                write!(f, "{c}*{p}")?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}*{p}", -c)?;
            } else {
                write!(f, " + {c}*{p}")?;
            }
        }
        Ok(())
    }
}

/// Matrix of [`AffineExpr`] entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<AffineExpr>,
}

impl ParamMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<AffineExpr>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![AffineExpr::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[AffineExpr] {
        &self.entries
    }

    /// Union of all parameters, sorted.
    pub fn params(&self) -> Vec<Param> {
        let set: BTreeSet<&Param> = self.entries.iter().flat_map(AffineExpr::params).collect();
        set.into_iter().cloned().collect()
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(AffineExpr::is_constant)
    }

    pub fn transpose(&self) -> ParamMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self[(i, j)].clone());
            }
        }
        ParamMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Exact affine product; at most one factor may carry parameters.
    pub fn mul(&self, rhs: &ParamMatrix) -> Result<ParamMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::shape("pm_mul", self.shape(), rhs.shape()));
        }
        if !self.is_constant() && !rhs.is_constant() {
            return Err(Error::Degree);
        }
        let mut out = ParamMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let cell = &mut out.entries[i * rhs.cols + j];
                    if a.is_constant() {
                        cell.add_scaled(b, &a.constant);
                    } else {
                        cell.add_scaled(a, &b.constant);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `lhs · self` for a constant left factor.
    pub fn left_mul(&self, lhs: &Matrix) -> Result<ParamMatrix> {
        ParamMatrix::from(lhs).mul(self)
    }

    /// `self · rhs` for a constant right factor.
    pub fn right_mul(&self, rhs: &Matrix) -> Result<ParamMatrix> {
        self.mul(&ParamMatrix::from(rhs))
    }

    pub fn sub(&self, rhs: &ParamMatrix) -> Result<ParamMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::shape("pm_sub", self.shape(), rhs.shape()));
        }
        Ok(ParamMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        })
    }

    /// Evaluates every entry using `lookup`.
    pub fn instantiate_with<F>(&self, mut lookup: F) -> Result<Matrix>
    where
        F: FnMut(&Param) -> Option<Rational>,
    {
        let data = self
            .entries
            .iter()
            .map(|e| e.eval_with(&mut lookup))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(self.rows, self.cols, data)
    }

    /// Evaluates every entry from an explicit assignment.
    pub fn instantiate(&self, assignment: &BTreeMap<Param, Rational>) -> Result<Matrix> {
        self.instantiate_with(|p| assignment.get(p).cloned())
    }

    /// The constant parts, i.e. every parameter set to zero.
    pub fn constant_part(&self) -> Matrix {
        let data = self.entries.iter().map(|e| e.constant.clone()).collect();
        Matrix::new(self.rows, self.cols, data).expect("shape preserved")
    }
}

impl From<&Matrix> for ParamMatrix {
    fn from(m: &Matrix) -> Self {
        ParamMatrix {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.as_slice().iter().cloned().map(AffineExpr::constant).collect(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for ParamMatrix {
    type Output = AffineExpr;

    fn index(&self, (i, j): (usize, usize)) -> &AffineExpr {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ParamMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut AffineExpr {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

/// Exact product of two possibly-parametric matrices.
pub fn pm_mul(lhs: &ParamMatrix, rhs: &ParamMatrix) -> Result<ParamMatrix> {
    lhs.mul(rhs)
}

/// Evaluates `pm` under `assignment`; every parameter must be bound.
pub fn instantiate(pm: &ParamMatrix, assignment: &BTreeMap<Param, Rational>) -> Result<Matrix> {
    pm.instantiate(assignment)
}

/// Coefficients of `pm` flattened row-major: one row per entry, one column
/// per parameter (in the returned order). Constant parts are dropped.
pub fn param_coefficient_matrix(pm: &ParamMatrix) -> (Matrix, Vec<Param>) {
    let params = pm.params();
    let mut out = Matrix::zeros(pm.entries.len(), params.len());
    for (i, e) in pm.entries.iter().enumerate() {
        for (j, p) in params.iter().enumerate() {
            if let Some(c) = e.terms.get(p) {
                out[(i, j)] = c.clone();
            }
        }
    }
    (out, params)
}

/// Sequential allocator of fresh parameters named `{prefix}_{k}`, k from 1.
#[derive(Debug)]
pub(crate) struct FreshParams {
    prefix: &'static str,
    next: u32,
}

impl FreshParams {
    pub(crate) fn new(prefix: &'static str) -> Self {
        Self { prefix, next: 0 }
    }

    pub(crate) fn next(&mut self) -> Param {
        self.next += 1;
        Param::new(self.next, format!("{}_{}", self.prefix, self.next))
    }
}
