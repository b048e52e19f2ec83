//! Small dense helpers over `nalgebra` for two-qubit operators.

use nalgebra::{Complex, Matrix2, Matrix4, SymmetricEigen};

pub type C64 = Complex<f64>;
pub type Op2 = Matrix2<C64>;
pub type Op4 = Matrix4<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn identity2() -> Op2 {
    Op2::identity()
}

pub fn sigma_x() -> Op2 {
    Op2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))
}

pub fn sigma_y() -> Op2 {
    Op2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0))
}

pub fn sigma_z() -> Op2 {
    Op2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0))
}

/// Pauli matrices indexed `0 -> x`, `1 -> y`, `2 -> z`.
pub fn pauli(i: usize) -> Op2 {
    match i {
        0 => sigma_x(),
        1 => sigma_y(),
        2 => sigma_z(),
        _ => panic!("pauli index {i} out of range"),
    }
}

/// Kronecker product `a ⊗ b` with `a` acting on the first (most significant) qubit.
pub fn kron(a: &Op2, b: &Op2) -> Op4 {
    Op4::from_fn(|i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

/// Eigenvalues of a Hermitian 4×4 matrix, sorted descending.
pub fn hermitian_eigenvalues(m: &Op4) -> [f64; 4] {
    let eig = SymmetricEigen::new(*m);
    let mut vals = [0.0; 4];
    for (v, e) in vals.iter_mut().zip(eig.eigenvalues.iter()) {
        *v = *e;
    }
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues below zero (rounding) are clamped.
pub fn psd_sqrt(m: &Op4) -> Op4 {
    let eig = SymmetricEigen::new(*m);
    let d = Op4::from_diagonal(&eig.eigenvalues.map(|l| c(l.max(0.0).sqrt(), 0.0)));
    eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// Von Neumann entropy in bits of a Hermitian 4×4 density matrix.
pub fn dense_entropy(m: &Op4) -> f64 {
    hermitian_eigenvalues(m)
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum()
}

/// Partial trace of a two-qubit operator over the second qubit.
pub fn trace_second(m: &Op4) -> Op2 {
    Op2::from_fn(|i, j| m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)])
}

/// Partial trace of a two-qubit operator over the first qubit.
pub fn trace_first(m: &Op4) -> Op2 {
    Op2::from_fn(|i, j| m[(i, j)] + m[(i + 2, j + 2)])
}
