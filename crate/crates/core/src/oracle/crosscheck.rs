use nalgebra::Vector3;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use super::{
    basis_action_defect, boost_bell_direct, dense_expectation, little_group_element,
    wigner_matrix_direct,
};
use crate::chsh::{canonical_settings, chsh_closed_form, chsh_value};
use crate::error::{domain, Result};
use crate::kinematics::{
    boost_matrix, standard_boost, wigner_rotation, AngleDecomposition, BoostParameters, Geometry,
    MomentumState, Sign,
};
use crate::observables::{expectation_out_of_plane, spin_observable, MeasurementDirection};
use crate::spin_states::{
    bell_decompose, boost_bell_closed_form, boost_two_particle, bell_state, wigner_matrix,
    BellLabel,
};

pub const CROSSCHECK_TOLERANCE: f64 = 1e-9;

/// One sampled parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleTuple {
    pub beta: f64,
    pub delta: f64,
    pub theta: f64,
    pub phi: f64,
    pub a: [f64; 3],
    pub b: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub name: String,
    pub max_deviation: f64,
    pub worst_sample: Option<SampleTuple>,
    /// Whether a global phase had to be removed before comparing (never so far).
    pub phase_aligned: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub seed: Option<u64>,
    pub samples: usize,
    pub tolerance: f64,
    pub comparisons: Vec<Comparison>,
    pub passed: bool,
}

impl CrosscheckReport {
    pub fn failures(&self) -> impl Iterator<Item = &Comparison> {
        self.comparisons.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Comparison> {
        self.comparisons.iter().find(|c| c.name == name)
    }
}

/// Draws `n` tuples from ChaCha8 seeded with `seed`. Each double is
/// `(next_u64 >> 11) · 2⁻⁵³`; per tuple, in order: `β = 0.999u`, `δ = 10u`,
/// `θ = πu`, `φ = 2πu`, then `a⃗` and `b⃗` as `(cos θ = 1 − 2u, φ = 2πu)`.
pub fn sample_tuples(seed: u64, n: usize) -> Vec<SampleTuple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut u = move || (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    let sphere = |u1: f64, u2: f64| {
        let d = MeasurementDirection::from_angles((1.0 - 2.0 * u1).acos(), TAU * u2).vector();
        [d.x, d.y, d.z]
    };
    (0..n)
        .map(|_| {
            let (beta, delta, theta, phi) = (0.999 * u(), 10.0 * u(), PI * u(), TAU * u());
            let (a1, a2, b1, b2) = (u(), u(), u(), u());
            SampleTuple {
                beta,
                delta,
                theta,
                phi,
                a: sphere(a1, a2),
                b: sphere(b1, b2),
            }
        })
        .collect()
}

pub fn crosscheck_suite(seed: u64, n_samples: usize) -> Result<CrosscheckReport> {
    if n_samples == 0 {
        return domain("crosscheck needs at least one sample");
    }
    let mut report = crosscheck_samples(&sample_tuples(seed, n_samples))?;
    report.seed = Some(seed);
    Ok(report)
}

struct Tracker {
    name: &'static str,
    max: f64,
    worst: Option<SampleTuple>,
}

impl Tracker {
    fn record(&mut self, deviation: f64, s: &SampleTuple) {
        if deviation > self.max || deviation.is_nan() {
            self.max = if deviation.is_nan() { f64::INFINITY } else { deviation };
            self.worst = Some(*s);
        }
    }
}

const NAMES: [&str; 10] = [
    "little_group_vs_closed_rotation",
    "lorentz_metric_preservation",
    "direct_su2_vs_angle_su2",
    "bell_closed_vs_matrix",
    "bell_closed_vs_direct",
    "basis_actions_vs_tensor",
    "expectation_closed_vs_dense",
    "chsh_closed_vs_assembled",
    "coefficient_normalization",
    "boosted_state_normalization",
];

/// Runs every path comparison on the given tuples.
pub fn crosscheck_samples(samples: &[SampleTuple]) -> Result<CrosscheckReport> {
    if samples.is_empty() {
        return domain("crosscheck needs at least one sample");
    }
    let mut t: Vec<Tracker> = NAMES
        .iter()
        .map(|&name| Tracker { name, max: 0.0, worst: None })
        .collect();

    for s in samples {
        let b = BoostParameters::from_beta(s.beta)?;
        let m = MomentumState::new(1.0, s.delta, s.theta, s.phi)?;
        let a_dir = MeasurementDirection::new(Vector3::from(s.a))?;
        let b_dir = MeasurementDirection::new(Vector3::from(s.b))?;
        let angles = AngleDecomposition::new(&b, &m);

        for sign in [Sign::Plus, Sign::Minus] {
            let closed = wigner_rotation(&b, &m, sign);
            let (w, extracted) = little_group_element(&b, &m, sign)?;
            let dev = (closed.cos_half - extracted.cos_half)
                .abs()
                .max((closed.half_vector() - extracted.half_vector()).amax());
            t[0].record(dev, s);
            let metric = w
                .metric_defect()
                .max(standard_boost(&m, sign).metric_defect())
                .max(boost_matrix(&b).metric_defect());
            t[1].record(metric, s);
            let direct = wigner_matrix_direct(&b, &m, sign);
            t[2].record(direct.max_deviation(&wigner_matrix(&closed)), s);
        }

        for label in BellLabel::ALL {
            let closed = boost_bell_closed_form(label, &angles);
            let matrix = bell_decompose(&boost_two_particle(&bell_state(label), &b, &m));
            t[3].record(closed.max_deviation(&matrix), s);
            let direct = boost_bell_direct(label, &b, &m);
            t[4].record(closed.max_deviation(&bell_decompose(&direct)), s);
            t[9].record((direct.norm() - 1.0).abs(), s);
        }

        t[5].record(basis_action_defect(&a_dir, &b_dir, &b), s);

        let op_a = spin_observable(&a_dir, &b);
        let op_b = spin_observable(&b_dir, &b);
        for label in [BellLabel::B00, BellLabel::B01] {
            let closed = expectation_out_of_plane(label, &angles, &a_dir, &b_dir, s.beta)?;
            let dense = dense_expectation(&boost_bell_direct(label, &b, &m), &op_a, &op_b);
            t[6].record((closed - dense).abs(), s);

            let chsh_closed = chsh_closed_form(label, s.beta, &angles, Geometry::OutOfPlane)?;
            let chsh_dense = chsh_value(label, &canonical_settings(label), &b, &m);
            t[7].record((chsh_closed - chsh_dense).abs(), s);
        }

        let n4 = angles.x.powi(2) + angles.y.powi(2) + angles.z.powi(2) + angles.w.powi(2);
        let n3 = angles.xp.powi(2) + angles.yp.powi(2) + angles.zp.powi(2);
        t[8].record((n4 - 1.0).abs().max((n3 - 1.0).abs()), s);
    }

    let comparisons: Vec<Comparison> = t
        .into_iter()
        .map(|tr| Comparison {
            name: tr.name.to_string(),
            max_deviation: tr.max,
            worst_sample: tr.worst,
            phase_aligned: false,
            passed: tr.max <= CROSSCHECK_TOLERANCE,
        })
        .collect();
    Ok(CrosscheckReport {
        seed: None,
        samples: samples.len(),
        tolerance: CROSSCHECK_TOLERANCE,
        passed: comparisons.iter().all(|c| c.passed),
        comparisons,
    })
}
