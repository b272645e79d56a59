//! WebAssembly bindings for the browser demo in `www/`.
//!
//! The plain functions do the work and are what the native tests exercise;
//! the `#[wasm_bindgen]` exports only convert errors to JS strings.

use wasm_bindgen::prelude::*;

use relbell::chsh::{canonical_settings, chsh_closed_form, chsh_value, universal_curve};
use relbell::kinematics::{angle_decomposition, wigner_rotation as rotation};
use relbell::spin_states::boost_bell_matrix_path;
use relbell::{BellLabel, BoostParameters, Error, Geometry, MomentumState, Result, Sign};

/// Largest β on the demo curve.
pub const BETA_MAX: f64 = 0.999;

fn kinematics(beta: f64, delta: f64, theta: f64, phi: f64) -> Result<(BoostParameters, MomentumState)> {
    Ok((BoostParameters::from_beta(beta)?, MomentumState::new(1.0, delta, theta, phi)?))
}

/// `steps` rows of `(β, chsh_canonical, universal_curve)` for
/// `β ∈ [0, 0.999]`, flattened. The canonical value comes from the closed
/// form where one exists and from the matrix path otherwise.
pub fn chsh_curve(label: &str, delta: f64, theta: f64, phi: f64, steps: usize) -> Result<Vec<f64>> {
    let label: BellLabel = label.parse()?;
    if steps < 2 {
        return Err(Error::Domain("curve needs at least 2 points".into()));
    }
    let settings = canonical_settings(label);
    let mut out = Vec::with_capacity(3 * steps);
    for i in 0..steps {
        let beta = BETA_MAX * i as f64 / (steps - 1) as f64;
        let (b, m) = kinematics(beta, delta, theta, phi)?;
        let geometry = if m.is_in_plane() { Geometry::InPlane } else { Geometry::OutOfPlane };
        let value = match chsh_closed_form(label, beta, &angle_decomposition(&b, &m), geometry) {
            Err(Error::MatrixPathOnly(_)) => chsh_value(label, &settings, &b, &m),
            other => other?,
        };
        out.extend([beta, value, universal_curve(beta)?]);
    }
    Ok(out)
}

/// `[Ω, cos(Ω/2), sin(Ω/2), n_x, n_y, n_z]` for the particle with sign `±`.
pub fn wigner_rotation(beta: f64, delta: f64, theta: f64, phi: f64, sign: &str) -> Result<Vec<f64>> {
    let sign: Sign = sign.parse()?;
    let (b, m) = kinematics(beta, delta, theta, phi)?;
    let r = rotation(&b, &m, sign);
    Ok(vec![r.omega(), r.cos_half, r.sin_half, r.axis.x, r.axis.y, r.axis.z])
}

/// Bell-basis coefficients of the boosted state as `[re₀₀, im₀₀, …, re₁₁, im₁₁]`.
pub fn boost_bell(label: &str, beta: f64, delta: f64, theta: f64, phi: f64) -> Result<Vec<f64>> {
    let label: BellLabel = label.parse()?;
    let (b, m) = kinematics(beta, delta, theta, phi)?;
    Ok(boost_bell_matrix_path(label, &b, &m)
        .as_array()
        .iter()
        .flat_map(|z| [z.re, z.im])
        .collect())
}

fn js(r: Result<Vec<f64>>) -> std::result::Result<Vec<f64>, JsValue> {
    r.map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen(js_name = chshCurve)]
pub fn chsh_curve_js(label: &str, delta: f64, theta: f64, phi: f64, steps: usize) -> std::result::Result<Vec<f64>, JsValue> {
    js(chsh_curve(label, delta, theta, phi, steps))
}

#[wasm_bindgen(js_name = wignerRotation)]
pub fn wigner_rotation_js(beta: f64, delta: f64, theta: f64, phi: f64, sign: &str) -> std::result::Result<Vec<f64>, JsValue> {
    js(wigner_rotation(beta, delta, theta, phi, sign))
}

#[wasm_bindgen(js_name = boostBell)]
pub fn boost_bell_js(label: &str, beta: f64, delta: f64, theta: f64, phi: f64) -> std::result::Result<Vec<f64>, JsValue> {
    js(boost_bell(label, beta, delta, theta, phi))
}
