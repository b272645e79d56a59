//! Pauli matrices and two-qubit helpers.

use nalgebra::{Matrix2, Matrix4, Vector3, Vector4};
use num_complex::Complex64;

pub type C = Complex64;

pub const ZERO: C = C::new(0.0, 0.0);
pub const ONE: C = C::new(1.0, 0.0);
pub const I: C = C::new(0.0, 1.0);

pub fn identity() -> Matrix2<C> {
    Matrix2::identity()
}

pub fn sigma_x() -> Matrix2<C> {
    Matrix2::new(ZERO, ONE, ONE, ZERO)
}

pub fn sigma_y() -> Matrix2<C> {
    Matrix2::new(ZERO, -I, I, ZERO)
}

pub fn sigma_z() -> Matrix2<C> {
    Matrix2::new(ONE, ZERO, ZERO, -ONE)
}

/// `v · σ⃗` for a real 3-vector.
pub fn sigma_dot(v: &Vector3<f64>) -> Matrix2<C> {
    sigma_x() * C::from(v.x) + sigma_y() * C::from(v.y) + sigma_z() * C::from(v.z)
}

/// Slot-1-major tensor product: `(A ⊗ B)[2i+k, 2j+l] = A[i,j] B[k,l]`.
pub fn kron(a: &Matrix2<C>, b: &Matrix2<C>) -> Matrix4<C> {
    Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

pub fn inner(a: &Vector4<C>, b: &Vector4<C>) -> C {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}
