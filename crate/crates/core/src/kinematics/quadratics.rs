//! The coefficient quadratics `X² ∓ Y² − Z² ± W²` written in terms of
//! `t = coth²(α/2)coth²(δ/2)`, their two-sided bounds, and the monotone
//! envelopes `f` and `g` behind those bounds.

use serde::{Deserialize, Serialize};

use super::wigner::eta_decomposition;
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TQuadratics {
    /// `X² − Y² − Z² + W²`
    pub q_minus: f64,
    /// `X² + Y² − Z² − W²`
    pub q_plus: f64,
    /// `2 sin²θ sin²φ − 1`
    pub lower_minus: f64,
    /// `cos 2η`
    pub lower_plus: f64,
}

fn check_t(t: f64) -> Result<()> {
    if !(t >= 1.0) {
        return domain(format!("t must be >= 1, got {t}"));
    }
    Ok(())
}

/// `(t − 1)² + 4 t r²`
fn denominator(t: f64, r2: f64) -> f64 {
    (t - 1.0) * (t - 1.0) + 4.0 * t * r2
}

/// Evaluates both quadratics from `t` alone. `t = +∞` returns the limit 1.
pub fn t_quadratics(t: f64, theta: f64, phi: f64) -> Result<TQuadratics> {
    check_t(t)?;
    let eta = eta_decomposition(theta, phi);
    let r2 = eta.r * eta.r;
    let cos2 = theta.cos().powi(2);
    let s2 = (theta.sin() * phi.sin()).powi(2);
    let lower_minus = 2.0 * s2 - 1.0;
    let lower_plus = (eta.cos_eta - eta.sin_eta) * (eta.cos_eta + eta.sin_eta);
    if t.is_infinite() {
        return Ok(TQuadratics {
            q_minus: 1.0,
            q_plus: 1.0,
            lower_minus,
            lower_plus,
        });
    }
    let den = denominator(t, r2);
    let num_minus = t * cos2 + (1.0 - r2) * s2;
    let num_plus = s2 * (1.0 - s2);
    let q = |num: f64| if num == 0.0 { 1.0 } else { 1.0 - 8.0 * num / den };
    Ok(TQuadratics {
        q_minus: q(num_minus),
        q_plus: q(num_plus),
        lower_minus,
        lower_plus,
    })
}

/// `f(t) = (t + (1 − r²) tan²η) / ((t − 1)² + 4 r² t)`; `+∞` when `cos η = 0`.
pub fn envelope_f(t: f64, theta: f64, phi: f64) -> Result<f64> {
    check_t(t)?;
    if t.is_infinite() {
        return Ok(0.0);
    }
    let eta = eta_decomposition(theta, phi);
    if eta.cos_eta == 0.0 {
        return Ok(f64::INFINITY);
    }
    let r2 = eta.r * eta.r;
    let a = (1.0 - r2) * (eta.sin_eta / eta.cos_eta).powi(2);
    Ok((t + a) / denominator(t, r2))
}

/// `g(t) = (1 − r² sin²η) / ((t − 1)² + 4 r² t)`
pub fn envelope_g(t: f64, theta: f64, phi: f64) -> Result<f64> {
    check_t(t)?;
    if t.is_infinite() {
        return Ok(0.0);
    }
    let eta = eta_decomposition(theta, phi);
    let r2 = eta.r * eta.r;
    Ok((1.0 - r2 * eta.sin_eta * eta.sin_eta) / denominator(t, r2))
}

/// Summary of a grid scan over `t × θ × φ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsScan {
    pub points: usize,
    /// Smallest `q − lower` over both quadratics.
    pub min_lower_slack: f64,
    /// Smallest `1 − q` over both quadratics.
    pub min_upper_slack: f64,
    /// Largest forward difference of `f` along `t` (finite values only).
    pub max_f_increase: f64,
    /// Largest forward difference of `g` along `t`.
    pub max_g_increase: f64,
}

impl BoundsScan {
    pub fn passes(&self, tol: f64) -> bool {
        self.min_lower_slack >= -tol
            && self.min_upper_slack >= -tol
            && self.max_f_increase <= 0.0
            && self.max_g_increase <= 0.0
    }
}

/// `n_t` log-spaced `t ∈ [1, t_max]`, `n_theta` points on `[0, π]`,
/// `n_phi` points on `[0, 2π)`.
pub fn scan_bounds(n_t: usize, n_theta: usize, n_phi: usize, t_max: f64) -> Result<BoundsScan> {
    if n_t < 2 || n_theta < 1 || n_phi < 1 || !(t_max > 1.0) {
        return domain("scan needs n_t >= 2, nonempty angle grids and t_max > 1");
    }
    let log_max = t_max.ln();
    let ts: Vec<f64> = (0..n_t)
        .map(|i| (log_max * i as f64 / (n_t - 1) as f64).exp())
        .collect();
    let mut scan = BoundsScan {
        points: 0,
        min_lower_slack: f64::INFINITY,
        min_upper_slack: f64::INFINITY,
        max_f_increase: f64::NEG_INFINITY,
        max_g_increase: f64::NEG_INFINITY,
    };
    for i in 0..n_theta {
        let theta = if n_theta == 1 {
            0.0
        } else {
            std::f64::consts::PI * i as f64 / (n_theta - 1) as f64
        };
        for j in 0..n_phi {
            let phi = std::f64::consts::TAU * j as f64 / n_phi as f64;
            let mut prev: Option<(f64, f64)> = None;
            for &t in &ts {
                let q = t_quadratics(t, theta, phi)?;
                scan.points += 1;
                scan.min_lower_slack = scan
                    .min_lower_slack
                    .min(q.q_minus - q.lower_minus)
                    .min(q.q_plus - q.lower_plus);
                scan.min_upper_slack = scan
                    .min_upper_slack
                    .min(1.0 - q.q_minus)
                    .min(1.0 - q.q_plus);
                let f = envelope_f(t, theta, phi)?;
                let g = envelope_g(t, theta, phi)?;
                if let Some((pf, pg)) = prev {
                    if f.is_finite() && pf.is_finite() {
                        scan.max_f_increase = scan.max_f_increase.max(f - pf);
                    }
                    if g.is_finite() && pg.is_finite() {
                        scan.max_g_increase = scan.max_g_increase.max(g - pg);
                    }
                }
                prev = Some((f, g));
            }
        }
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{AngleDecomposition, BoostParameters, MomentumState};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn worked_point() {
        let q = t_quadratics(9.0, 0.0, 0.0).unwrap();
        assert_relative_eq!(q.q_minus, 0.28, epsilon = 1e-15);
        assert_relative_eq!(q.q_plus, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn infinite_t_gives_one() {
        let q = t_quadratics(f64::INFINITY, 1.0, 2.0).unwrap();
        assert_eq!((q.q_minus, q.q_plus), (1.0, 1.0));
        assert_eq!(envelope_f(f64::INFINITY, 1.0, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn t_below_one_is_rejected() {
        assert!(t_quadratics(0.5, 0.0, 0.0).is_err());
        assert!(t_quadratics(f64::NAN, 0.0, 0.0).is_err());
        assert!(envelope_g(0.99, 0.0, 0.0).is_err());
    }

    #[test]
    fn lower_bound_saturates_at_t_one() {
        for (theta, phi) in [(0.3, 0.2), (1.0, 2.0), (2.5, 4.0), (0.0, 0.0), (PI / 2.0, PI / 2.0)] {
            let q = t_quadratics(1.0, theta, phi).unwrap();
            assert_relative_eq!(q.q_minus, q.lower_minus, epsilon = 1e-12);
        }
    }

    #[test]
    fn small_grid_scan_passes() {
        let scan = scan_bounds(20, 9, 12, 1e6).unwrap();
        assert_eq!(scan.points, 20 * 9 * 12);
        assert!(scan.passes(1e-12), "{scan:?}");
    }

    proptest! {
        #[test]
        fn t_form_matches_coefficient_tuple(
            beta in 0.0..0.999f64,
            delta in 0.0..10.0f64,
            theta in 0.0..PI,
            phi in 0.0..TAU,
        ) {
            let b = BoostParameters::from_beta(beta).unwrap();
            let m = MomentumState::new(1.0, delta, theta, phi).unwrap();
            let a = AngleDecomposition::new(&b, &m);
            let q = t_quadratics(a.t, m.theta(), m.phi()).unwrap();
            prop_assert!((q.q_minus - a.q_minus()).abs() < 1e-10);
            prop_assert!((q.q_plus - a.q_plus()).abs() < 1e-10);
        }
    }
}
