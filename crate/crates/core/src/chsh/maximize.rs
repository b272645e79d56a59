//! Search over measurement settings for the largest CHSH value.
//!
//! Each direction is parametrized by spherical angles `(θ, φ)`, so the search
//! space is `[θa, φa, θa′, φa′, θb, φb, θb′, φb′]` without constraints.
//! Because `⟨σ·u ⊗ σ·v⟩ = uᵀ T v` for the state's correlation matrix `T`,
//! the objective only needs `T` and the effective directions.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};
use std::str::FromStr;

use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{canonical_settings, chsh_value, ChshSettings};
use crate::error::{domain, Error, Result};
use crate::kinematics::{BoostParameters, MomentumState};
use crate::observables::{relativistic_spin_vector, MeasurementDirection};
use crate::pauli::{self, kron};
use crate::spin_states::{bell_state, boost_two_particle, BellLabel, TwoParticleSpinState};

type Params = [f64; 8];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Block-coordinate lattice scan with shrinking local refinement.
    Grid,
    /// Multi-start Nelder–Mead.
    Simplex,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(Method::Grid),
            "simplex" => Ok(Method::Simplex),
            other => domain(format!("method must be grid or simplex, got `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximizeOptions {
    pub seed: u64,
    /// Random starts for the simplex method, in addition to the canonical one.
    pub starts: usize,
    /// Per-start iteration cap (simplex) or sweep cap (grid).
    pub max_iterations: usize,
    /// Objective tolerance.
    pub tolerance: f64,
}

impl Default for MaximizeOptions {
    fn default() -> Self {
        MaximizeOptions {
            seed: 0,
            starts: 16,
            max_iterations: 5000,
            tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximizeResult {
    pub settings: ChshSettings,
    /// CHSH of `settings`, evaluated on the boosted state by the dense path.
    pub value: f64,
    pub canonical_value: f64,
    pub angles: Params,
    /// False when the iteration cap was hit first; `settings` is then the
    /// best point found.
    pub converged: bool,
    pub evaluations: usize,
}

/// `T_ij = ⟨ψ| σ_i ⊗ σ_j |ψ⟩`
pub fn correlation_matrix(state: &TwoParticleSpinState) -> Matrix3<f64> {
    let sigma = [pauli::sigma_x(), pauli::sigma_y(), pauli::sigma_z()];
    Matrix3::from_fn(|i, j| {
        let op = kron(&sigma[i], &sigma[j]);
        pauli::inner(&state.amplitudes, &(op * state.amplitudes)).re
    })
}

/// Largest CHSH value any settings can reach on `state`: `2√(λ₁ + λ₂)` for
/// the two largest eigenvalues of `TᵀT`. With `β < 1` every effective
/// direction is reachable, so this bounds the search.
pub fn optimal_chsh(state: &TwoParticleSpinState) -> f64 {
    let t = correlation_matrix(state);
    let mut ev: Vec<f64> = SymmetricEigen::new(t.transpose() * t).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    2.0 * (ev[0] + ev[1]).max(0.0).sqrt()
}

fn direction(theta: f64, phi: f64) -> MeasurementDirection {
    MeasurementDirection::from_angles(theta, phi)
}

fn angles_of(d: &MeasurementDirection) -> (f64, f64) {
    let v = d.vector();
    (v.z.clamp(-1.0, 1.0).acos(), v.y.atan2(v.x))
}

fn settings_from(x: &Params) -> ChshSettings {
    ChshSettings {
        a: direction(x[0], x[1]),
        a_prime: direction(x[2], x[3]),
        b: direction(x[4], x[5]),
        b_prime: direction(x[6], x[7]),
    }
}

fn params_from(s: &ChshSettings) -> Params {
    let mut x = [0.0; 8];
    for (i, d) in [s.a, s.a_prime, s.b, s.b_prime].iter().enumerate() {
        let (t, p) = angles_of(d);
        x[2 * i] = t;
        x[2 * i + 1] = p;
    }
    x
}

struct Objective {
    t: Matrix3<f64>,
    boost: BoostParameters,
    evaluations: usize,
}

impl Objective {
    fn effective(&self, theta: f64, phi: f64) -> Vector3<f64> {
        let m = relativistic_spin_vector(&direction(theta, phi).vector(), &self.boost);
        m / m.norm()
    }

    fn eval(&mut self, x: &Params) -> f64 {
        self.evaluations += 1;
        let a = self.effective(x[0], x[1]);
        let ap = self.effective(x[2], x[3]);
        let b = self.effective(x[4], x[5]);
        let bp = self.effective(x[6], x[7]);
        (a.transpose() * self.t * (b + bp))[0] + (ap.transpose() * self.t * (b - bp))[0]
    }
}

pub fn maximize_chsh(
    label: BellLabel,
    boost: &BoostParameters,
    m: &MomentumState,
    method: Method,
) -> MaximizeResult {
    maximize_chsh_with(label, boost, m, method, &MaximizeOptions::default())
}

pub fn maximize_chsh_with(
    label: BellLabel,
    boost: &BoostParameters,
    m: &MomentumState,
    method: Method,
    options: &MaximizeOptions,
) -> MaximizeResult {
    match method {
        Method::Grid => grid_search(label, boost, m, options),
        Method::Simplex => {
            let starts = random_starts(options.seed, options.starts);
            maximize_simplex_from(label, boost, m, &starts, options)
        }
    }
}

/// `n` uniformly distributed starts: `cos θ` and `φ` uniform per direction,
/// doubles taken as `(next_u64 >> 11) · 2⁻⁵³` from ChaCha8.
pub fn random_starts(seed: u64, n: usize) -> Vec<Params> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut uniform = move || (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    (0..n)
        .map(|_| {
            let mut x = [0.0; 8];
            for i in 0..4 {
                x[2 * i] = (1.0 - 2.0 * uniform()).acos();
                x[2 * i + 1] = TAU * uniform();
            }
            x
        })
        .collect()
}

fn finish(
    label: BellLabel,
    boost: &BoostParameters,
    m: &MomentumState,
    x: Params,
    converged: bool,
    evaluations: usize,
) -> MaximizeResult {
    let settings = settings_from(&x);
    MaximizeResult {
        settings,
        value: chsh_value(label, &settings, boost, m),
        canonical_value: chsh_value(label, &canonical_settings(label), boost, m),
        angles: x,
        converged,
        evaluations,
    }
}

fn objective(label: BellLabel, boost: &BoostParameters, m: &MomentumState) -> Objective {
    let state = boost_two_particle(&bell_state(label), boost, m);
    Objective {
        t: correlation_matrix(&state),
        boost: *boost,
        evaluations: 0,
    }
}

/// Orders candidates by value, then lexicographically by parameters, so the
/// winner does not depend on the order the starts were run in.
fn better(a: &(f64, Params), b: &(f64, Params)) -> bool {
    match a.0.total_cmp(&b.0) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => a.1.iter().zip(&b.1).map(|(p, q)| p.total_cmp(q)).find(|o| o.is_ne()) == Some(Ordering::Less),
    }
}

/// Nelder–Mead from the canonical settings and every point in `starts`.
pub fn maximize_simplex_from(
    label: BellLabel,
    boost: &BoostParameters,
    m: &MomentumState,
    starts: &[Params],
    options: &MaximizeOptions,
) -> MaximizeResult {
    let mut obj = objective(label, boost, m);
    let canonical = params_from(&canonical_settings(label));
    let mut best: Option<(f64, Params, bool)> = None;
    for x0 in std::iter::once(&canonical).chain(starts) {
        let (x, fx, ok) = polish(&mut obj, *x0, options);
        let take = match &best {
            None => true,
            Some((bf, bx, _)) => better(&(fx, x), &(*bf, *bx)),
        };
        if take {
            best = Some((fx, x, ok));
        }
    }
    let (_, x, ok) = best.expect("at least the canonical start");
    finish(label, boost, m, x, ok, obj.evaluations)
}

/// Restarts Nelder–Mead from its own optimum until a restart gains less than
/// the tolerance.
fn polish(obj: &mut Objective, x0: Params, options: &MaximizeOptions) -> (Params, f64, bool) {
    let (mut x, mut fx, mut ok) = nelder_mead(obj, x0, 0.5, options);
    for _ in 0..4 {
        let (y, fy, ok_y) = nelder_mead(obj, x, 0.05, options);
        let gain = fy - fx;
        if fy > fx {
            x = y;
            fx = fy;
        }
        ok = ok && ok_y;
        if gain <= options.tolerance {
            break;
        }
    }
    (x, fx, ok)
}

/// Maximizes with the standard reflection/expansion/contraction/shrink
/// coefficients (1, 2, ½, ½). Stops when the simplex values span at most
/// `tolerance`.
fn nelder_mead(obj: &mut Objective, x0: Params, step: f64, options: &MaximizeOptions) -> (Params, f64, bool) {
    const N: usize = 8;
    let mut simplex: Vec<(Params, f64)> = Vec::with_capacity(N + 1);
    simplex.push((x0, obj.eval(&x0)));
    for i in 0..N {
        let mut x = x0;
        x[i] += step;
        simplex.push((x, obj.eval(&x)));
    }
    let sort = |s: &mut Vec<(Params, f64)>| s.sort_by(|a, b| b.1.total_cmp(&a.1));
    let combine = |c: &Params, x: &Params, t: f64| -> Params {
        let mut out = [0.0; N];
        for k in 0..N {
            out[k] = c[k] + t * (x[k] - c[k]);
        }
        out
    };
    let mut converged = false;
    for _ in 0..options.max_iterations {
        sort(&mut simplex);
        if simplex[0].1 - simplex[N].1 <= options.tolerance {
            converged = true;
            break;
        }
        let mut centroid = [0.0; N];
        for (x, _) in &simplex[..N] {
            for k in 0..N {
                centroid[k] += x[k] / N as f64;
            }
        }
        let worst = simplex[N];
        let xr = combine(&centroid, &worst.0, -1.0);
        let fr = obj.eval(&xr);
        if fr > simplex[0].1 {
            let xe = combine(&centroid, &worst.0, -2.0);
            let fe = obj.eval(&xe);
            simplex[N] = if fe > fr { (xe, fe) } else { (xr, fr) };
        } else if fr > simplex[N - 1].1 {
            simplex[N] = (xr, fr);
        } else {
            let (xc, fc) = if fr > worst.1 {
                let xc = combine(&centroid, &xr, 0.5);
                (xc, obj.eval(&xc))
            } else {
                let xc = combine(&centroid, &worst.0, 0.5);
                (xc, obj.eval(&xc))
            };
            if fc > fr.max(worst.1) {
                simplex[N] = (xc, fc);
            } else {
                let best = simplex[0].0;
                for entry in simplex.iter_mut().skip(1) {
                    let x = combine(&best, &entry.0, 0.5);
                    *entry = (x, obj.eval(&x));
                }
            }
        }
    }
    sort(&mut simplex);
    (simplex[0].0, simplex[0].1, converged)
}

/// Starting from the canonical settings, scans each direction over a
/// `(θ, φ)` lattice with the other three fixed; once a sweep stops
/// improving, the lattice is recentred and shrunk by 4.
fn grid_search(
    label: BellLabel,
    boost: &BoostParameters,
    m: &MomentumState,
    options: &MaximizeOptions,
) -> MaximizeResult {
    let mut obj = objective(label, boost, m);
    let mut x = params_from(&canonical_settings(label));
    let mut fx = obj.eval(&x);
    let (mut w_theta, mut w_phi) = (PI / 2.0, PI);
    let mut n = 25;
    let mut converged = false;
    for _ in 0..options.max_iterations {
        let start = fx;
        for block in 0..4 {
            let (c_theta, c_phi) = (x[2 * block], x[2 * block + 1]);
            for i in 0..n {
                for j in 0..n {
                    let s = |k: usize| 2.0 * k as f64 / (n - 1) as f64 - 1.0;
                    let mut y = x;
                    y[2 * block] = c_theta + w_theta * s(i);
                    y[2 * block + 1] = c_phi + w_phi * s(j);
                    let fy = obj.eval(&y);
                    if fy > fx {
                        x = y;
                        fx = fy;
                    }
                }
            }
        }
        if fx - start <= options.tolerance {
            w_theta *= 0.25;
            w_phi *= 0.25;
            n = 9;
            if w_phi < 1e-9 {
                converged = true;
                break;
            }
        }
    }
    finish(label, boost, m, x, converged, obj.evaluations)
}
