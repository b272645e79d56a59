//! Normalized relativistic spin observables and joint expectation values.
//!
//! A boosted observer measuring spin along `a⃗` effectively measures along
//! `m⃗ = (a_x, √(1−β²) a_y, √(1−β²) a_z)`; the observable is `m̂·σ⃗`.

use nalgebra::{Matrix2, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::kinematics::{AngleDecomposition, BoostParameters, Geometry, InPlaneAngles, MomentumState};
use crate::pauli::{self, kron, C};
use crate::spin_states::{BellLabel, TwoParticleSpinState};

const UNIT_TOLERANCE: f64 = 1e-9;

/// Below this `|a_x|` the classical-limit correlation is taken as 0.
pub const AXIS_ZERO_TOLERANCE: f64 = 1e-12;

/// A unit measurement direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementDirection(Vector3<f64>);

impl MeasurementDirection {
    /// Accepts vectors whose norm is within `1e-9` of 1 and renormalizes them.
    pub fn new(v: Vector3<f64>) -> Result<Self> {
        let n = v.norm();
        if !((n - 1.0).abs() <= UNIT_TOLERANCE) {
            return domain(format!("measurement direction has norm {n}, expected 1"));
        }
        Ok(MeasurementDirection(v / n))
    }

    /// Scales any finite nonzero vector to unit length.
    pub fn normalized(v: Vector3<f64>) -> Result<Self> {
        let n = v.norm();
        if !(n.is_finite() && n > 0.0) {
            return domain("measurement direction must be finite and nonzero");
        }
        Ok(MeasurementDirection(v / n))
    }

    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        MeasurementDirection(Vector3::new(st * cp, st * sp, ct))
    }

    pub fn x_axis() -> Self {
        MeasurementDirection(Vector3::x())
    }

    pub fn y_axis() -> Self {
        MeasurementDirection(Vector3::y())
    }

    pub fn z_axis() -> Self {
        MeasurementDirection(Vector3::z())
    }

    pub fn vector(&self) -> Vector3<f64> {
        self.0
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn z(&self) -> f64 {
        self.0.z
    }
}

/// `m̂·σ⃗` together with `m̂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinObservable {
    pub matrix: Matrix2<C>,
    pub direction: Vector3<f64>,
}

impl SpinObservable {
    pub fn from_direction(direction: Vector3<f64>) -> Self {
        SpinObservable {
            matrix: pauli::sigma_dot(&direction),
            direction,
        }
    }
}

/// Parallel component kept, perpendicular components scaled by `√(1−β²)`.
pub fn relativistic_spin_vector(s: &Vector3<f64>, b: &BoostParameters) -> Vector3<f64> {
    let g = b.inv_gamma();
    Vector3::new(s.x, g * s.y, g * s.z)
}

pub fn spin_observable(a: &MeasurementDirection, b: &BoostParameters) -> SpinObservable {
    let m = relativistic_spin_vector(&a.vector(), b);
    SpinObservable::from_direction(m / m.norm())
}

/// `⟨s| â_β ⊗ b̂_β |s⟩` by dense 4×4 evaluation.
pub fn joint_expectation(
    state: &TwoParticleSpinState,
    a: &MeasurementDirection,
    b: &MeasurementDirection,
    boost: &BoostParameters,
) -> f64 {
    let op = kron(
        &spin_observable(a, boost).matrix,
        &spin_observable(b, boost).matrix,
    );
    pauli::inner(&state.amplitudes, &(op * state.amplitudes)).re
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientPair {
    /// The half-sum combination.
    pub sum: f64,
    /// The half-difference combination divided by `i`.
    pub diff: f64,
}

/// The eight bilinear coefficient families in `a⃗`, `b⃗` and `√(1−β²)` that
/// multiply the quadratic monomials of the out-of-plane correlation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub a: CoefficientPair,
    pub b: CoefficientPair,
    pub c: CoefficientPair,
    pub d: CoefficientPair,
    pub e: CoefficientPair,
    pub f: CoefficientPair,
    pub g: CoefficientPair,
    pub h: CoefficientPair,
}

impl CoefficientTable {
    /// `g` is `√(1−β²)`.
    pub fn new(a: &MeasurementDirection, b: &MeasurementDirection, g: f64) -> Self {
        let (ax, ay, az) = (a.x(), a.y(), a.z());
        let (bx, by, bz) = (b.x(), b.y(), b.z());
        let g2 = g * g;
        let pair = |sum, diff| CoefficientPair { sum, diff };
        let b_sum = g * (az * bx - bz * ax);
        let f_sum = g * (az * bx + bz * ax);
        let a_diff = g * (ax * by + bx * ay);
        let c_diff = g * (ax * by - bx * ay);
        let b_diff = g2 * (az * by + bz * ay);
        let d_diff = g2 * (az * by - bz * ay);
        CoefficientTable {
            a: pair(ax * bx - g2 * ay * by + g2 * az * bz, a_diff),
            b: pair(b_sum, b_diff),
            c: pair(-ax * bx - g2 * ay * by - g2 * az * bz, c_diff),
            d: pair(b_sum, d_diff),
            e: pair(-ax * bx + g2 * ay * by + g2 * az * bz, a_diff),
            f: pair(f_sum, d_diff),
            g: pair(ax * bx + g2 * ay * by - g2 * az * bz, c_diff),
            h: pair(f_sum, b_diff),
        }
    }
}

/// `√(1−β²)` for `β ∈ [0, 1]`.
fn inv_gamma(beta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&beta) {
        return domain(format!("beta must lie in [0, 1], got {beta}"));
    }
    Ok(((1.0 - beta) * (1.0 + beta)).sqrt())
}

/// `√([1 + β²(a_x² − 1)][1 + β²(b_x² − 1)])`, the product of the two
/// unnormalized observable lengths.
fn normalization(a: &MeasurementDirection, b: &MeasurementDirection, g: f64) -> Result<f64> {
    let len = |v: &MeasurementDirection| (v.x() * v.x() + g * g * (v.y() * v.y() + v.z() * v.z())).sqrt();
    let n = len(a) * len(b);
    if n == 0.0 {
        return domain("observable vanishes: measurement direction perpendicular to the boost at beta = 1");
    }
    Ok(n)
}

fn supported(label: BellLabel) -> Result<()> {
    match label {
        BellLabel::B00 | BellLabel::B01 => Ok(()),
        other => Err(Error::MatrixPathOnly(other.as_str())),
    }
}

/// In-plane closed form in terms of the signed pair angles:
///
/// ```text
/// Ψ₀₀: {[a_x b_x + g² a_z b_z] cos Σ − g² a_y b_y − g (a_z b_x − b_z a_x) sin Σ} / N
/// Ψ₀₁: {[−a_x b_x + g² a_z b_z] cos Δ + g² a_y b_y + g (a_z b_x + b_z a_x) sin Δ} / N
/// ```
///
/// with `Σ = Ω_p + Ω_−p`, `Δ = Ω_p − Ω_−p`, `g = √(1−β²)`.
pub fn expectation_in_plane(
    label: BellLabel,
    angles: &InPlaneAngles,
    a: &MeasurementDirection,
    b: &MeasurementDirection,
    beta: f64,
) -> Result<f64> {
    supported(label)?;
    let g = inv_gamma(beta)?;
    let n = normalization(a, b, g)?;
    Ok(in_plane_numerator(
        label,
        (angles.cos_sum(), angles.sin_sum()),
        (angles.cos_diff(), angles.sin_diff()),
        a,
        b,
        g,
    ) / n)
}

fn in_plane_numerator(
    label: BellLabel,
    sum: (f64, f64),
    diff: (f64, f64),
    a: &MeasurementDirection,
    b: &MeasurementDirection,
    g: f64,
) -> f64 {
    let (ax, ay, az) = (a.x(), a.y(), a.z());
    let (bx, by, bz) = (b.x(), b.y(), b.z());
    let g2 = g * g;
    match label {
        BellLabel::B00 => {
            (ax * bx + g2 * az * bz) * sum.0 - g2 * ay * by - g * (az * bx - bz * ax) * sum.1
        }
        _ => (-ax * bx + g2 * az * bz) * diff.0 + g2 * ay * by + g * (az * bx + bz * ax) * diff.1,
    }
}

/// General-direction closed form, quadratic in `(X, Y, Z, W)` for `Ψ₀₀` and
/// in `(X′, Y′, Z′)` for `Ψ₀₁`.
pub fn expectation_out_of_plane(
    label: BellLabel,
    angles: &AngleDecomposition,
    a: &MeasurementDirection,
    b: &MeasurementDirection,
    beta: f64,
) -> Result<f64> {
    supported(label)?;
    let g = inv_gamma(beta)?;
    let n = normalization(a, b, g)?;
    let t = CoefficientTable::new(a, b, g);
    let num = match label {
        BellLabel::B00 => {
            let (x, y, z, w) = (angles.x, angles.y, angles.z, angles.w);
            t.a.sum * x * x + t.c.sum * y * y + t.e.sum * z * z + t.g.sum * w * w
                - 2.0
                    * (t.b.sum * x * y + t.a.diff * x * z + t.b.diff * x * w - t.d.diff * y * z
                        + t.c.diff * y * w
                        + t.f.sum * z * w)
        }
        _ => {
            let (x, y, z) = (angles.xp, angles.yp, angles.zp);
            t.g.sum * x * x + t.a.sum * y * y + t.e.sum * z * z
                + 2.0 * (t.f.sum * x * z + t.a.diff * y * z - t.b.diff * x * y)
        }
    };
    Ok(num / n)
}

/// Evaluates the closed form of the requested geometry from an
/// [`AngleDecomposition`]. The in-plane form needs `sin η = 0`.
/// Labels `10` and `11` return [`Error::MatrixPathOnly`].
pub fn expectation_closed_form(
    label: BellLabel,
    geometry: Geometry,
    angles: &AngleDecomposition,
    a: &MeasurementDirection,
    b: &MeasurementDirection,
    beta: f64,
) -> Result<f64> {
    match geometry {
        Geometry::OutOfPlane => expectation_out_of_plane(label, angles, a, b, beta),
        Geometry::InPlane => {
            supported(label)?;
            if angles.sin_eta.abs() > crate::kinematics::IN_PLANE_TOLERANCE {
                return Err(Error::NotInPlane(angles.sin_eta));
            }
            let g = inv_gamma(beta)?;
            let n = normalization(a, b, g)?;
            let double = |c: f64, s: f64| ((c - s) * (c + s), angles.cos_eta * 2.0 * s * c);
            let sum = double(angles.cos_omega_bar, angles.sin_omega_bar);
            let diff = double(angles.cos_delta_omega, angles.sin_delta_omega);
            Ok(in_plane_numerator(label, sum, diff, a, b, g) / n)
        }
    }
}

/// The `β → 1` correlation at fixed momentum.
pub fn expectation_ultra_relativistic(
    label: BellLabel,
    m: &MomentumState,
    a: &MeasurementDirection,
    b: &MeasurementDirection,
) -> Result<f64> {
    expectation_out_of_plane(label, &AngleDecomposition::ultra_relativistic(m), a, b, 1.0)
}

/// `sign(a_x)·sign(b_x)`, or 0 when either component vanishes.
pub fn classical_limit_correlation(a: &MeasurementDirection, b: &MeasurementDirection) -> f64 {
    let sign = |v: f64| {
        if v.abs() <= AXIS_ZERO_TOLERANCE {
            0.0
        } else {
            v.signum()
        }
    };
    sign(a.x()) * sign(b.x())
}
