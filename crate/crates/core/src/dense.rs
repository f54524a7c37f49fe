//! Small dense complex matrices for oracle comparisons.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::gf::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: Complex64) {
        self.data[row * self.dim + col] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        DenseMatrix { dim: self.dim, data: self.data.iter().map(|&v| v * s).collect() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Max-norm of `U^dagger U - I`.
    pub fn unitarity_defect(&self) -> f64 {
        self.adjoint().mul(self).max_abs_diff(&Self::identity(self.dim))
    }

    /// `tr(A^dagger B)`.
    pub fn hilbert_schmidt(&self, other: &Self) -> Complex64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }
}

/// `zeta^k` for `k` in `0..N`, `zeta = exp(2 pi i / N)`, `N = field.phase_modulus()`.
pub fn zeta_powers(field: &Field) -> Vec<Complex64> {
    let n = field.phase_modulus();
    (0..n)
        .map(|k| {
            // exact values for the quarter turns used with p = 2
            match (n, k) {
                (4, 0) => Complex64::new(1.0, 0.0),
                (4, 1) => Complex64::new(0.0, 1.0),
                (4, 2) => Complex64::new(-1.0, 0.0),
                (4, 3) => Complex64::new(0.0, -1.0),
                _ => Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64),
            }
        })
        .collect()
}
