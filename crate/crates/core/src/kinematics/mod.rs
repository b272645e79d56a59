//! Scalar and 4-vector kinematics.
//!
//! The observer is boosted along `x̂` with rapidity `α`; the particle pair has
//! mass `m`, rapidity `δ` and direction `p̂ = (sinθ cosφ, sinθ sinφ, cosθ)`.
//! Slot 1 carries `+p⃗`, slot 2 carries `-p⃗`.

mod angles;
pub mod quadratics;
mod lorentz;
mod wigner;

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub use angles::{angle_decomposition, AngleDecomposition, InPlaneAngles};
pub use quadratics::{t_quadratics, TQuadratics};
pub use lorentz::{boost_matrix, standard_boost, Lorentz4};
pub use wigner::{
    eta_decomposition, wigner_rotation, wigner_rotation_in_plane,
    wigner_rotation_ultra_relativistic, EtaDecomposition, WignerRotation,
};

/// Largest `|sin φ|` still treated as momentum in the x-z plane.
pub const IN_PLANE_TOLERANCE: f64 = 1e-12;

/// Which particle of the pair: `Plus` carries `+p⃗` (slot 1), `Minus` carries `-p⃗` (slot 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "+p" => Ok(Sign::Plus),
            "-" | "minus" | "-p" => Ok(Sign::Minus),
            other => domain(format!("sign must be + or -, got `{other}`")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Which family of closed forms to use: momentum in the x-z plane (case A)
/// or a general direction (case B).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Geometry {
    InPlane,
    OutOfPlane,
}

impl FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" | "in-plane" => Ok(Geometry::InPlane),
            "B" | "b" | "out-of-plane" => Ok(Geometry::OutOfPlane),
            other => domain(format!("case must be A or B, got `{other}`")),
        }
    }
}

pub fn rapidity_from_beta(beta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&beta) {
        return domain(format!("beta must lie in [0, 1), got {beta}"));
    }
    Ok(beta.atanh())
}

pub fn beta_from_rapidity(rapidity: f64) -> Result<f64> {
    if !(rapidity.is_finite() && rapidity >= 0.0) {
        return domain(format!("rapidity must be finite and >= 0, got {rapidity}"));
    }
    let beta = rapidity.tanh();
    if beta >= 1.0 {
        return domain(format!("rapidity {rapidity} rounds to beta = 1"));
    }
    Ok(beta)
}

/// Observer boost along `x̂`.
///
/// Besides `β` and `α` the hyperbolic functions that the formulas need are
/// cached, each from the most accurate route for the constructor used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoostParameters {
    beta: f64,
    rapidity: f64,
    cosh: f64,
    sinh: f64,
    inv_gamma: f64,
    tanh_half: f64,
}

impl BoostParameters {
    pub fn rest() -> Self {
        BoostParameters {
            beta: 0.0,
            rapidity: 0.0,
            cosh: 1.0,
            sinh: 0.0,
            inv_gamma: 1.0,
            tanh_half: 0.0,
        }
    }

    pub fn from_beta(beta: f64) -> Result<Self> {
        let rapidity = rapidity_from_beta(beta)?;
        let inv_gamma = ((1.0 - beta) * (1.0 + beta)).sqrt();
        Ok(BoostParameters {
            beta,
            rapidity,
            cosh: 1.0 / inv_gamma,
            sinh: beta / inv_gamma,
            inv_gamma,
            tanh_half: beta / (1.0 + inv_gamma),
        })
    }

    pub fn from_rapidity(rapidity: f64) -> Result<Self> {
        let beta = beta_from_rapidity(rapidity)?;
        let cosh = rapidity.cosh();
        Ok(BoostParameters {
            beta,
            rapidity,
            cosh,
            sinh: rapidity.sinh(),
            inv_gamma: 1.0 / cosh,
            tanh_half: (0.5 * rapidity).tanh(),
        })
    }

    /// Boost with `cosh α = gamma`.
    pub fn from_cosh(gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma >= 1.0) {
            return domain(format!("cosh(alpha) must be finite and >= 1, got {gamma}"));
        }
        let sinh = ((gamma - 1.0) * (gamma + 1.0)).sqrt();
        let beta = sinh / gamma;
        if beta >= 1.0 {
            return domain(format!("cosh(alpha) = {gamma} rounds to beta = 1"));
        }
        Ok(BoostParameters {
            beta,
            rapidity: gamma.acosh(),
            cosh: gamma,
            sinh,
            inv_gamma: 1.0 / gamma,
            tanh_half: sinh / (gamma + 1.0),
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    pub fn cosh(&self) -> f64 {
        self.cosh
    }

    pub fn sinh(&self) -> f64 {
        self.sinh
    }

    /// `√(1 − β²)`
    pub fn inv_gamma(&self) -> f64 {
        self.inv_gamma
    }

    /// `tanh(α/2)`
    pub fn tanh_half(&self) -> f64 {
        self.tanh_half
    }

    pub fn axis(&self) -> Vector3<f64> {
        Vector3::x()
    }
}

/// Kinematics of the particle carrying `+p⃗`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumState {
    mass: f64,
    rapidity: f64,
    theta: f64,
    phi: f64,
}

impl MomentumState {
    /// `phi` is wrapped into `[0, 2π)`; `theta` must lie in `[0, π]`.
    pub fn new(mass: f64, rapidity: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return domain(format!("mass must be finite and > 0, got {mass}"));
        }
        if !(rapidity.is_finite() && rapidity >= 0.0) {
            return domain(format!("rapidity delta must be finite and >= 0, got {rapidity}"));
        }
        if !(0.0..=PI).contains(&theta) {
            return domain(format!("theta must lie in [0, pi], got {theta}"));
        }
        if !phi.is_finite() {
            return domain(format!("phi must be finite, got {phi}"));
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(MomentumState {
            mass,
            rapidity,
            theta,
            phi,
        })
    }

    pub fn from_cosh_delta(mass: f64, cosh_delta: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(cosh_delta.is_finite() && cosh_delta >= 1.0) {
            return domain(format!("cosh(delta) must be finite and >= 1, got {cosh_delta}"));
        }
        Self::new(mass, cosh_delta.acosh(), theta, phi)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn energy(&self) -> f64 {
        self.mass * self.rapidity.cosh()
    }

    pub fn momentum_magnitude(&self) -> f64 {
        self.mass * self.rapidity.sinh()
    }

    /// `tanh(δ/2)`
    pub fn tanh_half(&self) -> f64 {
        (0.5 * self.rapidity).tanh()
    }

    pub fn direction(&self) -> Vector3<f64> {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        Vector3::new(st * cp, st * sp, ct)
    }

    pub fn is_in_plane(&self) -> bool {
        self.phi.sin().abs() <= IN_PLANE_TOLERANCE
    }

    /// Same kinematics with a different direction.
    pub fn with_angles(&self, theta: f64, phi: f64) -> Result<Self> {
        Self::new(self.mass, self.rapidity, theta, phi)
    }
}

/// `(±p⃗, p⁰)` for the particle selected by `sign`.
pub fn four_momentum(m: &MomentumState, sign: Sign) -> (Vector3<f64>, f64) {
    (
        m.direction() * (sign.factor() * m.momentum_magnitude()),
        m.energy(),
    )
}

/// `(Λp)⁰ = p⁰ cosh α + p_x sinh α` for the particle selected by `sign`.
pub fn boosted_energy(m: &MomentumState, b: &BoostParameters, sign: Sign) -> f64 {
    let (p, p0) = four_momentum(m, sign);
    p0 * b.cosh() + p.x * b.sinh()
}
