//! Small dense complex linear algebra used by the propagators.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Pauli matrices `[σx, σy, σz]`.
pub fn pauli() -> [Matrix2<Complex64>; 3] {
    [
        Matrix2::new(ZERO, ONE, ONE, ZERO),
        Matrix2::new(ZERO, -I, I, ZERO),
        Matrix2::new(ONE, ZERO, ZERO, -ONE),
    ]
}

/// Pauli matrices as dynamic 2×2 matrices.
pub fn pauli_dyn() -> [CMatrix; 3] {
    pauli().map(|s| to_dyn(&s))
}

pub fn to_dyn(m: &Matrix2<Complex64>) -> CMatrix {
    CMatrix::from_fn(2, 2, |i, j| m[(i, j)])
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// `exp(-i t H)` for Hermitian `H`, through the eigendecomposition so the
/// result is unitary to rounding.
pub fn expm_hermitian(h: &CMatrix, t: f64) -> CMatrix {
    let eig = h.clone().symmetric_eigen();
    let v = &eig.eigenvectors;
    let phases = eig.eigenvalues.map(|lambda| Complex64::from_polar(1.0, -t * lambda));
    let mut scaled = v.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        col *= phases[j];
    }
    scaled * v.adjoint()
}

/// Operator (spectral) norm of a Hermitian matrix.
pub fn spectral_norm_hermitian(h: &CMatrix) -> f64 {
    if h.is_empty() {
        return 0.0;
    }
    h.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

/// Largest entry of `|H - H†|`.
pub fn hermiticity_defect(h: &CMatrix) -> f64 {
    (h - h.adjoint()).iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Largest entry of `|U†U - 1|`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    (u.adjoint() * u - identity(n))
        .iter()
        .fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let [x, y, z] = pauli();
        assert!((x * y - z * I).norm() < 1e-15);
        assert!((y * z - x * I).norm() < 1e-15);
        assert!((x * x - Matrix2::identity()).norm() < 1e-15);
    }

    #[test]
    fn expm_of_sigma_y_is_rotation() {
        let [_, y, _] = pauli_dyn();
        let u = expm_hermitian(&y, std::f64::consts::FRAC_PI_2);
        // exp(-i π/2 σy) = -i σy
        let expected = &y * (-I);
        assert!((u - expected).norm() < 1e-14);
    }

    #[test]
    fn expm_matches_taylor_series_for_small_generator() {
        let h = CMatrix::from_fn(3, 3, |i, j| {
            let re = (i + 2 * j) as f64 * 0.1 - 0.2;
            let im = if i == j { 0.0 } else { (i as f64 - j as f64) * 0.07 };
            Complex64::new(re, im)
        });
        let h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
        let t = 0.3;
        let mut series = identity(3);
        let mut term = identity(3);
        for k in 1..30 {
            term = &term * &h * (-I * t / k as f64);
            series += &term;
        }
        assert!((expm_hermitian(&h, t) - series).norm() < 1e-13);
        assert!(unitarity_defect(&expm_hermitian(&h, t)) < 1e-14);
    }

    #[test]
    fn spectral_norm_of_pauli_is_one() {
        for s in pauli_dyn() {
            assert!((spectral_norm_hermitian(&s) - 1.0).abs() < 1e-14);
        }
    }
}
