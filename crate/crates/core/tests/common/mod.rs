#![allow(dead_code)]

use std::collections::BTreeMap;

use gensolve_core::sample::Sampler;
use gensolve_core::{rat, GeneralSolution, Matrix, Param, ParamMatrix, Rational};

pub fn col(values: &[Rational]) -> Matrix {
    Matrix::column(values.to_vec())
}

pub fn ints(rows: usize, cols: usize, values: &[i64]) -> Matrix {
    Matrix::from_i64(rows, cols, values)
}

pub fn random_assignment(s: &mut Sampler, params: &[Param]) -> BTreeMap<Param, Rational> {
    params.iter().map(|p| (p.clone(), s.rational())).collect()
}

pub fn zero_assignment(params: &[Param]) -> BTreeMap<Param, Rational> {
    params.iter().map(|p| (p.clone(), rat(0, 1))).collect()
}

/// `count` random members of the solution set.
pub fn members(s: &mut Sampler, g: &GeneralSolution, count: usize) -> Vec<Matrix> {
    (0..count)
        .map(|_| {
            let assign = random_assignment(s, &g.params);
            g.general.instantiate(&assign).unwrap()
        })
        .collect()
}

pub fn flat(pm: &ParamMatrix) -> ParamMatrix {
    ParamMatrix::new(pm.rows() * pm.cols(), 1, pm.entries().to_vec()).unwrap()
}
