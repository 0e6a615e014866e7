//! Dense complex matrices, density matrices and random unitaries.

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::scalar::{complex, Real};
use crate::{CMatrix, CVector};

/// Largest matrix dimension built by the brute-force routines.
pub const MAX_DIM: usize = 4096;

pub fn zeros<F: Real>(n: usize) -> CMatrix<F> {
    DMatrix::from_element(n, n, Complex::new(F::zero(), F::zero()))
}

pub fn identity<F: Real>(n: usize) -> CMatrix<F> {
    DMatrix::identity(n, n)
}

/// 0/1 matrix sending basis vector `x` to `image(x)`.
pub fn permutation_matrix<F: Real>(n: usize, image: impl Fn(usize) -> usize) -> CMatrix<F> {
    let mut m = zeros(n);
    for x in 0..n {
        m[(image(x), x)] = Complex::new(F::one(), F::zero());
    }
    m
}

pub fn trace<F: Real>(m: &CMatrix<F>) -> Complex<F> {
    m.trace()
}

/// `tr(a b)` without forming the product.
pub fn trace_of_product<F: Real>(a: &CMatrix<F>, b: &CMatrix<F>) -> Complex<F> {
    let n = a.nrows();
    let mut acc = Complex::new(F::zero(), F::zero());
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff<F: Real>(a: &CMatrix<F>, b: &CMatrix<F>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (*x - *y).modulus().as_f64())
        .fold(0.0, f64::max)
}

pub fn is_hermitian<F: Real>(m: &CMatrix<F>, tol: f64) -> bool {
    m.is_square() && max_abs_diff(m, &m.adjoint()) <= tol
}

pub fn is_unitary<F: Real>(m: &CMatrix<F>, tol: f64) -> bool {
    m.is_square() && max_abs_diff(&(m.adjoint() * m), &identity(m.nrows())) <= tol
}

/// `a ⊗ b` with `a` on the most significant index.
pub fn kron<F: Real>(a: &CMatrix<F>, b: &CMatrix<F>) -> CMatrix<F> {
    a.kronecker(b)
}

pub fn kron_vec<F: Real>(a: &CVector<F>, b: &CVector<F>) -> CVector<F> {
    a.kronecker(b)
}

/// `m^{⊗k}`; `m^{⊗0}` is the 1x1 identity.
pub fn tensor_power<F: Real>(m: &CMatrix<F>, k: usize) -> CMatrix<F> {
    (0..k).fold(identity(1), |acc, _| kron(&acc, m))
}

/// Haar-random unitary via QR of a complex Ginibre matrix with the phases
/// of `R`'s diagonal pushed into `Q`.
pub fn random_unitary<F: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix<F> {
    let g = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        complex::<F>(re, im)
    });
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let norm = d.modulus();
        if norm > F::zero() {
            let phase = d / Complex::new(norm, F::zero());
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Uniformly random unit vector in `C^n`.
pub fn random_unit_vector<F: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> CVector<F> {
    loop {
        let v = CVector::<F>::from_fn(n, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            complex::<F>(re, im)
        });
        let norm = v.norm();
        if norm > F::cast(1e-6) {
            return v.unscale(norm);
        }
    }
}

/// A Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<F: Real> {
    matrix: CMatrix<F>,
}

impl<F: Real> DensityMatrix<F> {
    /// Validates Hermiticity, unit trace and positivity to `F::VALIDATION_TOL`.
    pub fn new(matrix: CMatrix<F>) -> Result<Self> {
        let tol = F::VALIDATION_TOL;
        if !matrix.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "density matrix must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if !is_hermitian(&matrix, tol) {
            return Err(Error::InvariantViolation(
                "density matrix is not Hermitian".into(),
            ));
        }
        let tr = matrix.trace();
        if (tr - Complex::new(F::one(), F::zero())).modulus().as_f64() > tol {
            return Err(Error::InvariantViolation(format!(
                "density matrix has trace {:?}",
                tr
            )));
        }
        let min_eig = matrix
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .map(|x| x.as_f64())
            .fold(f64::INFINITY, f64::min);
        if min_eig < -tol {
            return Err(Error::InvariantViolation(format!(
                "density matrix has eigenvalue {min_eig}"
            )));
        }
        Ok(Self { matrix })
    }

    /// Wraps a matrix that is a density matrix by construction.
    pub(crate) fn new_unchecked(matrix: CMatrix<F>) -> Self {
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<F> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<F> {
        self.matrix
    }

    /// `I_rank / rank` on the first `rank` basis vectors of `C^dim`.
    pub fn flat(dim: usize, rank: usize) -> Result<Self> {
        if rank == 0 || rank > dim {
            return Err(crate::error::invalid(format!(
                "flat state needs 1 <= rank <= dim, got rank={rank}, dim={dim}"
            )));
        }
        let mut m = zeros(dim);
        let w = complex::<F>(1.0 / rank as f64, 0.0);
        for i in 0..rank {
            m[(i, i)] = w;
        }
        Ok(Self { matrix: m })
    }

    /// `|v><v|` for a unit vector `v`.
    pub fn pure(v: &CVector<F>) -> Result<Self> {
        Self::new(v * v.adjoint())
    }

    pub fn tensor_power(&self, k: usize) -> Self {
        Self {
            matrix: tensor_power(&self.matrix, k),
        }
    }

    /// `u ρ u†` for a unitary `u`.
    pub fn conjugate_by(&self, u: &CMatrix<F>) -> Self {
        Self {
            matrix: u * &self.matrix * u.adjoint(),
        }
    }

    pub fn purity(&self) -> F {
        trace_of_product(&self.matrix, &self.matrix).re
    }
}
