//! Seeded random matrices for property tests, benchmarks and the CLI
//! self-check.
//!
//! Entries are `p/q` with `|p| ≤ 9` and `1 ≤ q ≤ 4`. Plain random matrices
//! are almost always of full rank, so most draws also copy, negate or zero
//! out rows and columns to produce rank deficiency without leaving the
//! entry range.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::Matrix;
use crate::rational::{rat, Rational};

pub const MAX_NUMERATOR: i64 = 9;
pub const MAX_DENOMINATOR: i64 = 4;

#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform dimension in `1..=max`.
    pub fn dim(&mut self, max: usize) -> usize {
        self.rng.random_range(1..=max)
    }

    pub fn rational(&mut self) -> Rational {
        rat(
            self.rng.random_range(-MAX_NUMERATOR..=MAX_NUMERATOR),
            self.rng.random_range(1..=MAX_DENOMINATOR),
        )
    }

    /// Independent entries, no structure.
    pub fn dense(&mut self, rows: usize, cols: usize) -> Matrix {
        let data = (0..rows * cols).map(|_| self.rational()).collect();
        Matrix::new(rows, cols, data).expect("exact length")
    }

    /// A random matrix that is frequently rank deficient.
    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let roll: f64 = self.rng.random();
        if roll < 0.05 {
            return Matrix::zeros(rows, cols);
        }
        let mut m = self.dense(rows, cols);
        if roll < 0.35 {
            return m;
        }
        self.degrade_rows(&mut m);
        let mut t = m.transpose();
        self.degrade_rows(&mut t);
        t.transpose()
    }

    fn degrade_rows(&mut self, m: &mut Matrix) {
        for i in 1..m.rows() {
            let roll: f64 = self.rng.random();
            if roll < 0.3 {
                let src = self.rng.random_range(0..i);
                let sign = if self.rng.random_bool(0.5) { 1 } else { -1 };
                for j in 0..m.cols() {
                    m[(i, j)] = &m[(src, j)] * rat(sign, 1);
                }
            } else if roll < 0.4 {
                for j in 0..m.cols() {
                    m[(i, j)] = rat(0, 1);
                }
            }
        }
    }
}
