use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::{BoostParameters, MomentumState, Sign, IN_PLANE_TOLERANCE};
use crate::error::{Error, Result};

/// A spatial rotation by `omega` about `axis`, kept as its half-angle pair.
///
/// `sin_half` is nonnegative; the orientation lives entirely in `axis`, which
/// is a unit vector when `sin_half > 0` and exactly zero otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WignerRotation {
    pub cos_half: f64,
    pub sin_half: f64,
    pub axis: Vector3<f64>,
}

impl WignerRotation {
    pub fn identity() -> Self {
        WignerRotation {
            cos_half: 1.0,
            sin_half: 0.0,
            axis: Vector3::zeros(),
        }
    }

    /// Builds a rotation from `cos(Ω/2)` and the vector `sin(Ω/2)·n̂`.
    pub fn from_half_vector(cos_half: f64, half_vector: Vector3<f64>) -> Self {
        let sin_half = half_vector.norm();
        let axis = if sin_half > 0.0 {
            half_vector / sin_half
        } else {
            Vector3::zeros()
        };
        WignerRotation {
            cos_half,
            sin_half,
            axis,
        }
    }

    pub fn omega(&self) -> f64 {
        2.0 * self.sin_half.atan2(self.cos_half)
    }

    /// `sin(Ω/2)·n̂`
    pub fn half_vector(&self) -> Vector3<f64> {
        self.axis * self.sin_half
    }
}

/// `r = |ê × p̂|` and the angle `η` of `ê × p̂` in the y-z plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaDecomposition {
    pub r: f64,
    pub cos_eta: f64,
    pub sin_eta: f64,
}

/// Collinear momentum (`r = 0`) gets `(cos η, sin η) = (1, 0)`.
pub fn eta_decomposition(theta: f64, phi: f64) -> EtaDecomposition {
    let (st, ct) = theta.sin_cos();
    let sy = st * phi.sin();
    let r = sy.hypot(ct);
    if r == 0.0 {
        return EtaDecomposition {
            r: 0.0,
            cos_eta: 1.0,
            sin_eta: 0.0,
        };
    }
    EtaDecomposition {
        r,
        cos_eta: ct / r,
        sin_eta: sy / r,
    }
}

/// Wigner rotation for boost and particle half-rapidity product `k`.
///
/// Dividing numerator and denominator of the half-angle formulas by
/// `cosh(α/2)cosh(δ/2)` gives
/// `cos(Ω/2) = (1 + k u) / √((1 + k u)² + k² r²)` with `u = ê·(±p̂)`,
/// and `sin(Ω/2) n̂ = k (ê × ±p̂) / (same)`.
pub(crate) fn rotation_from_k(k: f64, m: &MomentumState, sign: Sign) -> WignerRotation {
    let s = sign.factor();
    let u = s * m.theta().sin() * m.phi().cos();
    let eta = eta_decomposition(m.theta(), m.phi());
    let num = 1.0 + k * u;
    let perp = k * eta.r;
    let den = num.hypot(perp);
    let sin_half = perp / den;
    let axis = if sin_half > 0.0 {
        Vector3::new(0.0, -eta.cos_eta, eta.sin_eta) * s
    } else {
        Vector3::zeros()
    };
    WignerRotation {
        cos_half: num / den,
        sin_half,
        axis,
    }
}

/// Wigner rotation picked up by the particle carrying `±p⃗` when the observer
/// is boosted by `b`.
pub fn wigner_rotation(b: &BoostParameters, m: &MomentumState, sign: Sign) -> WignerRotation {
    rotation_from_k(b.tanh_half() * m.tanh_half(), m, sign)
}

/// The `β → 1` limit of [`wigner_rotation`].
pub fn wigner_rotation_ultra_relativistic(m: &MomentumState, sign: Sign) -> WignerRotation {
    rotation_from_k(m.tanh_half(), m, sign)
}

/// In-plane form: with `p̂` in the x-z plane the rotation axis is `∓ŷ` and
/// `cos(Ω±/2) = (1 ± k sinθcosφ)/√(1 + k² ± 2k sinθcosφ)`.
///
/// Fails with [`Error::NotInPlane`] unless `|sin φ| ≤ 1e-12`.
pub fn wigner_rotation_in_plane(
    b: &BoostParameters,
    m: &MomentumState,
    sign: Sign,
) -> Result<WignerRotation> {
    let sin_phi = m.phi().sin();
    if sin_phi.abs() > IN_PLANE_TOLERANCE {
        return Err(Error::NotInPlane(sin_phi));
    }
    let s = sign.factor();
    let k = b.tanh_half() * m.tanh_half();
    let u = m.theta().sin() * m.phi().cos();
    let den = (1.0 + k * k + 2.0 * s * k * u).sqrt();
    let cos_half = (1.0 + s * k * u) / den;
    let signed_sin = k * m.theta().cos() / den;
    Ok(WignerRotation::from_half_vector(
        cos_half,
        Vector3::new(0.0, -s * signed_sin, 0.0),
    ))
}
