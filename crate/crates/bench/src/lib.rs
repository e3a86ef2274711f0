//! Workloads shared by the criterion benches.

use gensolve_core::sample::Sampler;
use gensolve_core::Matrix;

/// A consistent `AXB = C` instance with `A` n×n and `B` n×n, built from a
/// planted solution.
pub fn two_sided_instance(n: usize, seed: u64) -> (Matrix, Matrix, Matrix) {
    let mut s = Sampler::new(seed);
    let a = s.matrix(n, n);
    let b = s.matrix(n, n);
    let x = s.dense(n, n);
    let c = a.mul(&x).and_then(|ax| ax.mul(&b)).expect("square shapes");
    (a, b, c)
}

/// A consistent `Ax = c` instance with an m×n matrix.
pub fn vector_instance(m: usize, n: usize, seed: u64) -> (Matrix, Matrix) {
    let mut s = Sampler::new(seed);
    let a = s.matrix(m, n);
    let x = s.dense(n, 1);
    let c = a.mul(&x).expect("n columns");
    (a, c)
}
