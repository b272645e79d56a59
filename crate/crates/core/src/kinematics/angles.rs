use serde::{Deserialize, Serialize};

use super::wigner::{eta_decomposition, rotation_from_k, WignerRotation};
use super::{BoostParameters, MomentumState, Sign, IN_PLANE_TOLERANCE};
use crate::error::{Error, Result};

/// Half-sum `Ω̄ = (Ω_p + Ω_−p)/2` and half-difference `ΔΩ = (Ω_p − Ω_−p)/2`
/// of the pair's Wigner angles, the direction angle `η`, and the coefficient
/// tuples they generate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleDecomposition {
    pub omega_bar: f64,
    pub delta_omega: f64,
    pub cos_omega_bar: f64,
    pub sin_omega_bar: f64,
    pub cos_delta_omega: f64,
    pub sin_delta_omega: f64,
    pub r: f64,
    pub cos_eta: f64,
    pub sin_eta: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub w: f64,
    pub xp: f64,
    pub yp: f64,
    pub zp: f64,
    /// `coth²(α/2)coth²(δ/2)`, `+∞` when either rapidity vanishes.
    pub t: f64,
}

impl AngleDecomposition {
    pub fn new(b: &BoostParameters, m: &MomentumState) -> Self {
        Self::from_k(b.tanh_half() * m.tanh_half(), m)
    }

    /// The `β → 1` limit, where `k = tanh(δ/2)`.
    pub fn ultra_relativistic(m: &MomentumState) -> Self {
        Self::from_k(m.tanh_half(), m)
    }

    fn from_k(k: f64, m: &MomentumState) -> Self {
        let plus = rotation_from_k(k, m, Sign::Plus);
        let minus = rotation_from_k(k, m, Sign::Minus);
        let t = if k == 0.0 { f64::INFINITY } else { 1.0 / (k * k) };
        Self::from_rotations(&plus, &minus, m.theta(), m.phi(), t)
    }

    /// Combines the two rotations through half-angle sum and difference
    /// identities. The axes are `±(0, −cos η, sin η)`, so `Ω_−p` is
    /// taken as `−sin_half` along the `+p` axis.
    pub fn from_rotations(
        plus: &WignerRotation,
        minus: &WignerRotation,
        theta: f64,
        phi: f64,
        t: f64,
    ) -> Self {
        let eta = eta_decomposition(theta, phi);
        let (cp, sp) = (plus.cos_half, plus.sin_half);
        let (cm, sm) = (minus.cos_half, minus.sin_half);
        let cos_omega_bar = cp * cm - sp * sm;
        let sin_omega_bar = sp * cm + cp * sm;
        let cos_delta_omega = cp * cm + sp * sm;
        let sin_delta_omega = sp * cm - cp * sm;

        let (ce, se) = (eta.cos_eta, eta.sin_eta);
        AngleDecomposition {
            omega_bar: sin_omega_bar.atan2(cos_omega_bar),
            delta_omega: sin_delta_omega.atan2(cos_delta_omega),
            cos_omega_bar,
            sin_omega_bar,
            cos_delta_omega,
            sin_delta_omega,
            r: eta.r,
            cos_eta: ce,
            sin_eta: se,
            x: cos_omega_bar * ce * ce + cos_delta_omega * se * se,
            y: sin_omega_bar * ce,
            z: sin_delta_omega * se,
            w: (cos_delta_omega - cos_omega_bar) * se * ce,
            xp: sin_delta_omega * ce,
            yp: sin_delta_omega * se,
            zp: cos_delta_omega,
            t,
        }
    }

    /// `X² − Y² − Z² + W²`
    pub fn q_minus(&self) -> f64 {
        self.x * self.x - self.y * self.y - self.z * self.z + self.w * self.w
    }

    /// `X² + Y² − Z² − W²`
    pub fn q_plus(&self) -> f64 {
        self.x * self.x + self.y * self.y - self.z * self.z - self.w * self.w
    }
}

pub fn angle_decomposition(b: &BoostParameters, m: &MomentumState) -> AngleDecomposition {
    AngleDecomposition::new(b, m)
}

/// Signed half-sum and half-difference angles for momentum in the x-z plane,
/// from the in-plane closed forms
///
/// ```text
/// cos Ω̄  = (1 − k²) / D          sin Ω̄  = 2k cosθ / D
/// cos ΔΩ = (1 + k² cos2θ) / D    sin ΔΩ = −2k² sinθcosθ cosφ / D
/// D = √((1 + k²)² − 4k² sin²θ cos²φ)
/// ```
///
/// The angles are signed: `Ω_p` about `−ŷ`, `Ω_−p` about `+ŷ`. They equal
/// `cos η` times the unsigned ones of [`AngleDecomposition`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InPlaneAngles {
    pub cos_sum_half: f64,
    pub sin_sum_half: f64,
    pub cos_diff_half: f64,
    pub sin_diff_half: f64,
}

impl InPlaneAngles {
    pub fn new(b: &BoostParameters, m: &MomentumState) -> Result<Self> {
        Self::from_k(b.tanh_half() * m.tanh_half(), m)
    }

    pub fn ultra_relativistic(m: &MomentumState) -> Result<Self> {
        Self::from_k(m.tanh_half(), m)
    }

    fn from_k(k: f64, m: &MomentumState) -> Result<Self> {
        let sin_phi = m.phi().sin();
        if sin_phi.abs() > IN_PLANE_TOLERANCE {
            return Err(Error::NotInPlane(sin_phi));
        }
        let u = m.theta().sin() * m.phi().cos();
        let w = m.theta().cos();
        let kk = k * k;
        let d = ((1.0 + kk - 2.0 * k * u) * (1.0 + kk + 2.0 * k * u)).sqrt();
        Ok(InPlaneAngles {
            cos_sum_half: (1.0 - kk) / d,
            sin_sum_half: 2.0 * k * w / d,
            cos_diff_half: (1.0 + kk * (w * w - u * u)) / d,
            sin_diff_half: -2.0 * kk * u * w / d,
        })
    }

    /// `cos(Ω_p + Ω_−p)`
    pub fn cos_sum(&self) -> f64 {
        (self.cos_sum_half - self.sin_sum_half) * (self.cos_sum_half + self.sin_sum_half)
    }

    /// `sin(Ω_p + Ω_−p)`
    pub fn sin_sum(&self) -> f64 {
        2.0 * self.sin_sum_half * self.cos_sum_half
    }

    /// `cos(Ω_p − Ω_−p)`
    pub fn cos_diff(&self) -> f64 {
        (self.cos_diff_half - self.sin_diff_half) * (self.cos_diff_half + self.sin_diff_half)
    }

    /// `sin(Ω_p − Ω_−p)`
    pub fn sin_diff(&self) -> f64 {
        2.0 * self.sin_diff_half * self.cos_diff_half
    }
}
