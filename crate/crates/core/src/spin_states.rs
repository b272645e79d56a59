//! Spin-½ Wigner matrices, two-particle spin states and the Bell basis.
//!
//! Amplitudes are ordered `(↑↑, ↑↓, ↓↑, ↓↓)`; the first arrow belongs to the
//! particle carrying `+p⃗`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix2, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{
    boosted_energy, wigner_rotation, AngleDecomposition, BoostParameters, InPlaneAngles,
    MomentumState, Sign, WignerRotation,
};
use crate::pauli::{self, kron, C, I, ZERO};

/// A 2×2 special unitary matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Matrix(pub Matrix2<C>);

impl Su2Matrix {
    pub fn identity() -> Self {
        Su2Matrix(Matrix2::identity())
    }

    pub fn matrix(&self) -> &Matrix2<C> {
        &self.0
    }

    pub fn determinant(&self) -> C {
        let m = &self.0;
        m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
    }

    /// `max |M†M − I|`
    pub fn unitarity_defect(&self) -> f64 {
        (self.0.adjoint() * self.0 - Matrix2::identity())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_deviation(&self, other: &Su2Matrix) -> f64 {
        (self.0 - other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `cos(Ω/2)·1 + i sin(Ω/2)·σ⃗·n̂`.
///
/// The orientation of the particle (`±p⃗`) is already part of `w.axis`.
pub fn wigner_matrix(w: &WignerRotation) -> Su2Matrix {
    let rot = pauli::sigma_dot(&w.half_vector()) * I;
    Su2Matrix(pauli::identity() * C::from(w.cos_half) + rot)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BellLabel {
    #[serde(rename = "00")]
    B00,
    #[serde(rename = "01")]
    B01,
    #[serde(rename = "10")]
    B10,
    #[serde(rename = "11")]
    B11,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [BellLabel::B00, BellLabel::B01, BellLabel::B10, BellLabel::B11];

    pub fn as_str(self) -> &'static str {
        match self {
            BellLabel::B00 => "00",
            BellLabel::B01 => "01",
            BellLabel::B10 => "10",
            BellLabel::B11 => "11",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl FromStr for BellLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "00" => Ok(BellLabel::B00),
            "01" => Ok(BellLabel::B01),
            "10" => Ok(BellLabel::B10),
            "11" => Ok(BellLabel::B11),
            other => Err(Error::InvalidLabel(other.to_string())),
        }
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Normalized spin amplitudes plus the energy factor that a boost strips off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoParticleSpinState {
    pub amplitudes: Vector4<C>,
    pub prefactor: f64,
}

impl TwoParticleSpinState {
    /// Normalizes `amplitudes`; rejects the zero vector.
    pub fn new(amplitudes: Vector4<C>) -> Result<Self> {
        let n = amplitudes.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Domain("state amplitudes must be finite and nonzero".into()));
        }
        Ok(TwoParticleSpinState {
            amplitudes: amplitudes / C::from(n),
            prefactor: 1.0,
        })
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// Exchanges the roles of the two particles.
    pub fn swap_slots(&self) -> Self {
        let a = &self.amplitudes;
        TwoParticleSpinState {
            amplitudes: Vector4::new(a[0], a[2], a[1], a[3]),
            prefactor: self.prefactor,
        }
    }

    pub fn inner(&self, other: &TwoParticleSpinState) -> C {
        pauli::inner(&self.amplitudes, &other.amplitudes)
    }
}

/// Coefficients over the Bell basis `Ψ₀₀, Ψ₀₁, Ψ₁₀, Ψ₁₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDecomposition {
    pub c00: C,
    pub c01: C,
    pub c10: C,
    pub c11: C,
}

impl BellDecomposition {
    pub fn from_array(c: [C; 4]) -> Self {
        BellDecomposition {
            c00: c[0],
            c01: c[1],
            c10: c[2],
            c11: c[3],
        }
    }

    pub fn as_array(&self) -> [C; 4] {
        [self.c00, self.c01, self.c10, self.c11]
    }

    pub fn get(&self, label: BellLabel) -> C {
        self.as_array()[label.index()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.as_array().iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn max_deviation(&self, other: &BellDecomposition) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Back to product-basis amplitudes (prefactor 1).
    pub fn recompose(&self) -> TwoParticleSpinState {
        let amplitudes = BellLabel::ALL
            .iter()
            .map(|&l| bell_state(l).amplitudes * self.get(l))
            .fold(Vector4::zeros(), |acc, v| acc + v);
        TwoParticleSpinState {
            amplitudes,
            prefactor: 1.0,
        }
    }
}

pub fn bell_state(label: BellLabel) -> TwoParticleSpinState {
    let h = C::from(std::f64::consts::FRAC_1_SQRT_2);
    let amplitudes = match label {
        BellLabel::B00 => Vector4::new(h, ZERO, ZERO, h),
        BellLabel::B01 => Vector4::new(h, ZERO, ZERO, -h),
        BellLabel::B10 => Vector4::new(ZERO, h, h, ZERO),
        BellLabel::B11 => Vector4::new(ZERO, h, -h, ZERO),
    };
    TwoParticleSpinState {
        amplitudes,
        prefactor: 1.0,
    }
}

/// `√((Λp)⁰/p⁰) · √((Λ𝒫p)⁰/p⁰)`
pub fn energy_prefactor(b: &BoostParameters, m: &MomentumState) -> f64 {
    let p0 = m.energy();
    (boosted_energy(m, b, Sign::Plus) / p0).sqrt() * (boosted_energy(m, b, Sign::Minus) / p0).sqrt()
}

/// Applies `D(W(Λ,p)) ⊗ D(W(Λ,𝒫p))` to the amplitudes.
pub fn boost_two_particle(
    s: &TwoParticleSpinState,
    b: &BoostParameters,
    m: &MomentumState,
) -> TwoParticleSpinState {
    let d1 = wigner_matrix(&wigner_rotation(b, m, Sign::Plus));
    let d2 = wigner_matrix(&wigner_rotation(b, m, Sign::Minus));
    let amplitudes = kron(&d1.0, &d2.0) * s.amplitudes;
    let n = amplitudes.norm();
    TwoParticleSpinState {
        amplitudes: amplitudes / C::from(n),
        prefactor: energy_prefactor(b, m),
    }
}

/// `c_ij = ⟨Ψ_ij|s⟩`
pub fn bell_decompose(s: &TwoParticleSpinState) -> BellDecomposition {
    let c = BellLabel::ALL.map(|l| bell_state(l).inner(s));
    BellDecomposition::from_array(c)
}

/// Bell-basis coefficients of the boosted `Ψ_label`, for any momentum direction.
pub fn boost_bell_closed_form(label: BellLabel, a: &AngleDecomposition) -> BellDecomposition {
    let re = C::from;
    let im = |x: f64| C::new(0.0, x);
    let (ce, se) = (a.cos_eta, a.sin_eta);
    match label {
        BellLabel::B00 => BellDecomposition::from_array([re(a.x), im(a.z), im(-a.w), re(-a.y)]),
        BellLabel::B01 => BellDecomposition::from_array([im(a.yp), re(a.zp), re(a.xp), ZERO]),
        BellLabel::B10 => BellDecomposition::from_array([
            im(-(a.cos_omega_bar - a.cos_delta_omega) * ce * se),
            re(-a.sin_delta_omega * ce),
            re(a.cos_omega_bar * se * se + a.cos_delta_omega * ce * ce),
            im(a.sin_omega_bar * se),
        ]),
        BellLabel::B11 => BellDecomposition::from_array([
            re(a.sin_omega_bar * ce),
            ZERO,
            im(a.sin_omega_bar * se),
            re(a.cos_omega_bar),
        ]),
    }
}

/// In-plane Bell-basis coefficients: `Ω̄` mixes `Ψ₀₀` with `Ψ₁₁`, `ΔΩ` mixes
/// `Ψ₀₁` with `Ψ₁₀`, and every coefficient is real.
pub fn boost_bell_in_plane(label: BellLabel, p: &InPlaneAngles) -> BellDecomposition {
    let (cs, ss) = (C::from(p.cos_sum_half), C::from(p.sin_sum_half));
    let (cd, sd) = (C::from(p.cos_diff_half), C::from(p.sin_diff_half));
    let c = match label {
        BellLabel::B00 => [cs, ZERO, ZERO, -ss],
        BellLabel::B01 => [ZERO, cd, sd, ZERO],
        BellLabel::B10 => [ZERO, -sd, cd, ZERO],
        BellLabel::B11 => [ss, ZERO, ZERO, cs],
    };
    BellDecomposition::from_array(c)
}

/// Matrix path: boost `Ψ_label` with the SU(2) matrices and project back.
pub fn boost_bell_matrix_path(
    label: BellLabel,
    b: &BoostParameters,
    m: &MomentumState,
) -> BellDecomposition {
    bell_decompose(&boost_two_particle(&bell_state(label), b, m))
}
