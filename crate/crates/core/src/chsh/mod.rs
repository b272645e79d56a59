//! CHSH combination `E(a,b) + E(a,b′) + E(a′,b) − E(a′,b′)` for boosted Bell
//! states, its closed forms at the canonical settings, and a maximizer.

mod maximize;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{domain, Error, Result};
use crate::kinematics::{
    AngleDecomposition, BoostParameters, Geometry, InPlaneAngles, MomentumState,
    IN_PLANE_TOLERANCE,
};
use crate::observables::{joint_expectation, MeasurementDirection};
use crate::spin_states::{bell_state, boost_two_particle, BellLabel, TwoParticleSpinState};

pub use maximize::{
    correlation_matrix, maximize_chsh, maximize_chsh_with, optimal_chsh, MaximizeOptions,
    MaximizeResult, Method,
};

/// `2√2`
pub const TSIRELSON_BOUND: f64 = 2.0 * std::f64::consts::SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChshSettings {
    pub a: MeasurementDirection,
    pub a_prime: MeasurementDirection,
    pub b: MeasurementDirection,
    pub b_prime: MeasurementDirection,
}

/// Settings that reach `2√2` at rest for each label.
///
/// `00` uses `a = (1,−1,0)/√2`, `a′ = (−1,−1,0)/√2`, `b = ŷ`, `b′ = x̂`;
/// `01` negates the x-y plane components of `a` and `a′`.
/// `11` and `10` reuse those sets with `b′ = −x̂`.
pub fn canonical_settings(label: BellLabel) -> ChshSettings {
    let h = FRAC_1_SQRT_2;
    let unit = |x, y, z| MeasurementDirection::new(Vector3::new(x, y, z)).expect("unit vector");
    let (a, a_prime) = match label {
        BellLabel::B00 | BellLabel::B11 => (unit(h, -h, 0.0), unit(-h, -h, 0.0)),
        BellLabel::B01 | BellLabel::B10 => (unit(-h, h, 0.0), unit(h, h, 0.0)),
    };
    let b_prime = match label {
        BellLabel::B00 | BellLabel::B01 => unit(1.0, 0.0, 0.0),
        BellLabel::B10 | BellLabel::B11 => unit(-1.0, 0.0, 0.0),
    };
    ChshSettings {
        a,
        a_prime,
        b: MeasurementDirection::y_axis(),
        b_prime,
    }
}

/// CHSH value of an already boosted state.
pub fn chsh_of_state(
    state: &TwoParticleSpinState,
    s: &ChshSettings,
    boost: &BoostParameters,
) -> f64 {
    let e = |a: &MeasurementDirection, b: &MeasurementDirection| joint_expectation(state, a, b, boost);
    let value = e(&s.a, &s.b) + e(&s.a, &s.b_prime) + e(&s.a_prime, &s.b) - e(&s.a_prime, &s.b_prime);
    debug_assert!(value.abs() <= TSIRELSON_BOUND + 1e-9, "CHSH {value} exceeds 2√2");
    value
}

/// Boosts `Ψ_label` with the SU(2) matrices and evaluates CHSH densely.
pub fn chsh_value(
    label: BellLabel,
    settings: &ChshSettings,
    boost: &BoostParameters,
    m: &MomentumState,
) -> f64 {
    let state = boost_two_particle(&bell_state(label), boost, m);
    chsh_of_state(&state, settings, boost)
}

fn check_beta(beta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&beta) {
        return domain(format!("beta must lie in [0, 1], got {beta}"));
    }
    Ok(((1.0 - beta) * (1.0 + beta)).sqrt())
}

/// `2/√(2−β²) = 2/√(1 + g²)`
fn prefactor(g: f64) -> f64 {
    2.0 / (1.0 + g * g).sqrt()
}

fn supported(label: BellLabel) -> Result<()> {
    match label {
        BellLabel::B00 | BellLabel::B01 => Ok(()),
        other => Err(Error::MatrixPathOnly(other.as_str())),
    }
}

/// Canonical-settings CHSH from the closed forms, for `β ∈ [0, 1]`.
///
/// * in-plane, `00`: `K (g + cos(Ω_p + Ω_−p))`
/// * in-plane, `01`: `K (g + cos(Ω_p − Ω_−p))`
/// * general, `00`: `K ((X² − Y² − Z² + W²) + (X² + Y² − Z² − W²) g)`
/// * general, `01`: `K ((−X′² − Y′² + Z′²) + (X′² − Y′² + Z′²) g)`
///
/// with `K = 2/√(2−β²)`, `g = √(1−β²)`.
pub fn chsh_closed_form(
    label: BellLabel,
    beta: f64,
    angles: &AngleDecomposition,
    geometry: Geometry,
) -> Result<f64> {
    supported(label)?;
    let g = check_beta(beta)?;
    let k = prefactor(g);
    match geometry {
        Geometry::InPlane => {
            if angles.sin_eta.abs() > IN_PLANE_TOLERANCE {
                return Err(Error::NotInPlane(angles.sin_eta));
            }
            let (c, s) = match label {
                BellLabel::B00 => (angles.cos_omega_bar, angles.sin_omega_bar),
                _ => (angles.cos_delta_omega, angles.sin_delta_omega),
            };
            Ok(k * (g + (c - s) * (c + s)))
        }
        Geometry::OutOfPlane => {
            let v = match label {
                BellLabel::B00 => angles.q_minus() + angles.q_plus() * g,
                _ => {
                    let (x2, y2, z2) = (angles.xp.powi(2), angles.yp.powi(2), angles.zp.powi(2));
                    (-x2 - y2 + z2) + (x2 - y2 + z2) * g
                }
            };
            Ok(k * v)
        }
    }
}

/// In-plane closed form fed by the independently derived [`InPlaneAngles`].
pub fn chsh_in_plane(label: BellLabel, beta: f64, angles: &InPlaneAngles) -> Result<f64> {
    supported(label)?;
    let g = check_beta(beta)?;
    let c = match label {
        BellLabel::B00 => angles.cos_sum(),
        _ => angles.cos_diff(),
    };
    Ok(prefactor(g) * (g + c))
}

/// `2√2 − (2/√(2−β²))(1 + √(1−β²))`, computed without cancellation as
/// `2d / (√2 + √(2 − d))` with `d = β⁴ / ((1 + g)²(1 + g²))`.
pub fn universal_curve_deficit(beta: f64) -> Result<f64> {
    let d = curve_d(beta)?;
    Ok(2.0 * d / (std::f64::consts::SQRT_2 + (2.0 - d).sqrt()))
}

fn curve_d(beta: f64) -> Result<f64> {
    let g = check_beta(beta)?;
    let b2 = beta * beta;
    Ok(b2 * b2 / ((1.0 + g) * (1.0 + g) * (1.0 + g * g)))
}

/// `(2/√(2−β²))(1 + √(1−β²))`, evaluated as `2√(2 − d)` so that rounding
/// cannot make it increase.
pub fn universal_curve(beta: f64) -> Result<f64> {
    Ok(2.0 * (2.0 - curve_d(beta)?).sqrt())
}
