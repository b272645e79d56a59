use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use super::{BoostParameters, MomentumState, Sign};

/// A real 4×4 Lorentz matrix acting on `(x, y, z, t)` column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lorentz4(pub Matrix4<f64>);

impl Lorentz4 {
    pub fn identity() -> Self {
        Lorentz4(Matrix4::identity())
    }

    pub fn metric() -> Matrix4<f64> {
        Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, 1.0, -1.0))
    }

    pub fn apply(&self, v: &Vector4<f64>) -> Vector4<f64> {
        self.0 * v
    }

    pub fn compose(&self, other: &Lorentz4) -> Lorentz4 {
        Lorentz4(self.0 * other.0)
    }

    /// `max |Λᵀ η Λ − η|`, relative to the largest entry of `Λ` squared.
    pub fn metric_defect(&self) -> f64 {
        let eta = Self::metric();
        let scale = self.0.amax().powi(2).max(1.0);
        (self.0.transpose() * eta * self.0 - eta).amax() / scale
    }
}

/// Standard boost `L(±p)` taking the rest momentum `(0, 0, 0, m)` to `(±p⃗, p⁰)`.
pub fn standard_boost(m: &MomentumState, sign: Sign) -> Lorentz4 {
    let n = m.direction() * sign.factor();
    let ch = m.rapidity().cosh();
    let sh = m.rapidity().sinh();
    let mut l = Matrix4::identity();
    for i in 0..3 {
        for j in 0..3 {
            l[(i, j)] += (ch - 1.0) * n[i] * n[j];
        }
        l[(i, 3)] = sh * n[i];
        l[(3, i)] = sh * n[i];
    }
    l[(3, 3)] = ch;
    Lorentz4(l)
}

/// Pure boost along `x̂` with rapidity `α`.
pub fn boost_matrix(b: &BoostParameters) -> Lorentz4 {
    let mut l = Matrix4::identity();
    l[(0, 0)] = b.cosh();
    l[(3, 3)] = b.cosh();
    l[(0, 3)] = b.sinh();
    l[(3, 0)] = b.sinh();
    Lorentz4(l)
}
