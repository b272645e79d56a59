//! Brute-force ground truth, built without any of the half-angle algebra:
//! the 4×4 little-group element, the direct spin-½ Wigner matrix, dense
//! tensor expectations, and a seeded suite comparing them with the closed
//! forms.

mod crosscheck;
mod dd;

use nalgebra::{Matrix4, Vector3, Vector4};

use crate::error::{Error, Result};
use crate::kinematics::{BoostParameters, MomentumState, Sign, WignerRotation};
use crate::observables::{MeasurementDirection, SpinObservable};
use crate::pauli::{self, kron, C};
use crate::spin_states::{BellLabel, bell_state, Su2Matrix, TwoParticleSpinState};

pub use crate::kinematics::Lorentz4;
pub use crosscheck::{
    crosscheck_samples, crosscheck_suite, sample_tuples, Comparison, CrosscheckReport,
    SampleTuple, CROSSCHECK_TOLERANCE,
};

/// Below this `|sin(Ω/2)|` the extracted axis is reported as zero.
pub const AXIS_CUTOFF: f64 = 1e-15;

/// `W(Λ, ±p) = L⁻¹(Λp) Λ L(p)` and the rotation read off its spatial block.
///
/// `W` is the active rotation by `Ω` about `−n̂`, so the extracted axis is
/// negated to match the spin-space convention `cos(Ω/2) + i sin(Ω/2) σ⃗·n̂`.
/// Fails with [`Error::Internal`] if `W` is not a rotation.
pub fn little_group_element(
    b: &BoostParameters,
    m: &MomentumState,
    sign: Sign,
) -> Result<(Lorentz4, WignerRotation)> {
    let k = dd::DdKinematics::new(b, m, sign);
    let w_dd = dd::little_group(&k);
    let w = w_dd.to_f64();

    let fixes_rest = (0..3).all(|i| w[(i, 3)].abs() <= 1e-10 && w[(3, i)].abs() <= 1e-10)
        && (w[(3, 3)] - 1.0).abs() <= 1e-10;
    let r = w.fixed_view::<3, 3>(0, 0).into_owned();
    let orth = (r.transpose() * r - nalgebra::Matrix3::identity()).amax();
    if !fixes_rest || orth > 1e-9 {
        return Err(Error::Internal(format!(
            "little-group element is not a rotation (orthogonality defect {orth:e})"
        )));
    }

    let (cos_half, v) = dd::rotation_half_angles(&w_dd);
    let half = -Vector3::from(v);
    let rotation = if half.norm() <= AXIS_CUTOFF {
        WignerRotation {
            cos_half,
            sin_half: 0.0,
            axis: Vector3::zeros(),
        }
    } else {
        WignerRotation::from_half_vector(cos_half, half)
    };
    Ok((Lorentz4(w), rotation))
}

/// The spin-½ Wigner matrix straight from momenta and energies.
pub fn wigner_matrix_direct(b: &BoostParameters, m: &MomentumState, sign: Sign) -> Su2Matrix {
    Su2Matrix(dd::direct_matrix(&dd::DdKinematics::new(b, m, sign)))
}

/// `Ψ_label` boosted with the direct matrices.
pub fn boost_bell_direct(label: BellLabel, b: &BoostParameters, m: &MomentumState) -> TwoParticleSpinState {
    let d1 = wigner_matrix_direct(b, m, Sign::Plus);
    let d2 = wigner_matrix_direct(b, m, Sign::Minus);
    let amplitudes = kron(&d1.0, &d2.0) * bell_state(label).amplitudes;
    TwoParticleSpinState {
        amplitudes,
        prefactor: crate::spin_states::energy_prefactor(b, m),
    }
}

/// `⟨s| A ⊗ B |s⟩` with the 4×4 operator built explicitly.
pub fn dense_expectation(state: &TwoParticleSpinState, op_a: &SpinObservable, op_b: &SpinObservable) -> f64 {
    let op = kron(&op_a.matrix, &op_b.matrix);
    pauli::inner(&state.amplitudes, &(op * state.amplitudes)).re
}

/// Columns of `â ⊗ b̂` on `(↑↑, ↑↓, ↓↑, ↓↓)` written out term by term:
/// with `g = √(1−β²)`, `α± = a_x ± i g a_y`, `β± = b_x ± i g b_y`,
/// `A = g a_z`, `B = g b_z`,
///
/// ```text
/// ↑↑ → ( AB,    Aβ+,   Bα+,   α+β+) / N
/// ↑↓ → ( Aβ−,  −AB,    α+β−, −Bα+ ) / N
/// ↓↑ → ( Bα−,   α−β+, −AB,   −Aβ+ ) / N
/// ↓↓ → ( α−β−, −Bα−,  −Aβ−,   AB  ) / N
/// ```
pub fn basis_action_matrix(a: &MeasurementDirection, b: &MeasurementDirection, boost: &BoostParameters) -> Matrix4<C> {
    let g = boost.inv_gamma();
    let ap = C::new(a.x(), g * a.y());
    let am = ap.conj();
    let bp = C::new(b.x(), g * b.y());
    let bm = bp.conj();
    let az = C::from(g * a.z());
    let bz = C::from(g * b.z());
    let n = ((a.x() * a.x() + g * g * (1.0 - a.x() * a.x())) * (b.x() * b.x() + g * g * (1.0 - b.x() * b.x()))).sqrt();
    let cols = [
        Vector4::new(az * bz, az * bp, bz * ap, ap * bp),
        Vector4::new(az * bm, -az * bz, ap * bm, -bz * ap),
        Vector4::new(bz * am, am * bp, -az * bz, -az * bp),
        Vector4::new(am * bm, -bz * am, -az * bm, az * bz),
    ];
    Matrix4::from_columns(&cols) / C::from(n)
}

/// `max |basis_action_matrix − â ⊗ b̂|`
pub fn basis_action_defect(a: &MeasurementDirection, b: &MeasurementDirection, boost: &BoostParameters) -> f64 {
    let dense = kron(
        &crate::observables::spin_observable(a, boost).matrix,
        &crate::observables::spin_observable(b, boost).matrix,
    );
    (basis_action_matrix(a, b, boost) - dense)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{standard_boost, wigner_rotation};
    use crate::observables::spin_observable;
    use crate::spin_states::wigner_matrix;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn worked() -> (BoostParameters, MomentumState) {
        (
            BoostParameters::from_cosh(2.0).unwrap(),
            MomentumState::from_cosh_delta(1.0, 2.0, 0.0, 0.0).unwrap(),
        )
    }

    #[test]
    fn rest_and_collinear_give_identity() {
        let m = MomentumState::new(1.0, 2.0, 0.7, 1.3).unwrap();
        let (w, r) = little_group_element(&BoostParameters::rest(), &m, Sign::Plus).unwrap();
        assert!((w.0 - Matrix4::identity()).amax() < 1e-15);
        assert_eq!(r.sin_half, 0.0);
        assert!(wigner_matrix_direct(&BoostParameters::rest(), &m, Sign::Minus).max_deviation(&Su2Matrix::identity()) < 1e-15);

        let b = BoostParameters::from_beta(0.8).unwrap();
        let along = MomentumState::new(1.0, 3.0, FRAC_PI_2, 0.0).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let (w, _) = little_group_element(&b, &along, sign).unwrap();
            assert!((w.0 - Matrix4::identity()).amax() < 1e-12);
        }
    }

    #[test]
    fn worked_point() {
        let (b, m) = worked();
        let (w, r) = little_group_element(&b, &m, Sign::Plus).unwrap();
        assert_relative_eq!(r.axis, -Vector3::y(), epsilon = 1e-12);
        assert_relative_eq!(r.omega().cos(), 0.8, epsilon = 1e-12);
        assert_relative_eq!(w.0[(0, 0)], 0.8, epsilon = 1e-12);
        assert!(w.metric_defect() < 1e-12);

        let d = wigner_matrix_direct(&b, &m, Sign::Plus);
        let (c, s) = (0.9f64.sqrt(), 0.1f64.sqrt());
        let expected = Su2Matrix(nalgebra::Matrix2::new(C::from(c), C::from(-s), C::from(s), C::from(c)));
        assert!(d.max_deviation(&expected) < 1e-12);
    }

    #[test]
    fn dense_expectation_examples() {
        let rest = BoostParameters::rest();
        let z = spin_observable(&MeasurementDirection::z_axis(), &rest);
        let up = TwoParticleSpinState::new(Vector4::new(C::from(1.0), C::from(0.0), C::from(0.0), C::from(0.0))).unwrap();
        assert_relative_eq!(dense_expectation(&up, &z, &z), 1.0);
        assert_relative_eq!(dense_expectation(&bell_state(BellLabel::B11), &z, &z), -1.0);

        let (b, m) = worked();
        let zb = spin_observable(&MeasurementDirection::z_axis(), &b);
        let s = boost_bell_direct(BellLabel::B00, &b, &m);
        assert_relative_eq!(dense_expectation(&s, &zb, &zb), 0.28, epsilon = 1e-12);
    }

    proptest! {
        #[test]
        fn three_way_rotation_agreement(
            beta in 0.0..0.999f64,
            delta in 0.0..10.0f64,
            theta in 0.0..PI,
            phi in 0.0..TAU,
        ) {
            let b = BoostParameters::from_beta(beta).unwrap();
            let m = MomentumState::new(1.0, delta, theta, phi).unwrap();
            for sign in [Sign::Plus, Sign::Minus] {
                let closed = wigner_rotation(&b, &m, sign);
                let (w, extracted) = little_group_element(&b, &m, sign).unwrap();
                prop_assert!((closed.cos_half - extracted.cos_half).abs() < 1e-9);
                prop_assert!((closed.half_vector() - extracted.half_vector()).amax() < 1e-9);
                prop_assert!(w.metric_defect() < 1e-10);
                prop_assert!(standard_boost(&m, sign).metric_defect() < 1e-10);
                let direct = wigner_matrix_direct(&b, &m, sign);
                prop_assert!(direct.max_deviation(&wigner_matrix(&closed)) < 1e-10);
                prop_assert!(direct.unitarity_defect() < 1e-12);
            }
        }

        #[test]
        fn basis_actions_match_tensor_product(
            beta in 0.0..0.999f64,
            ca in -1.0..=1.0f64, pa in 0.0..TAU,
            cb in -1.0..=1.0f64, pb in 0.0..TAU,
        ) {
            let boost = BoostParameters::from_beta(beta).unwrap();
            let a = MeasurementDirection::from_angles(ca.acos(), pa);
            let b = MeasurementDirection::from_angles(cb.acos(), pb);
            prop_assert!(basis_action_defect(&a, &b, &boost) < 1e-12);
        }
    }
}
