use std::f64::consts::{PI, SQRT_2, TAU};
use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relbell::chsh::{
    canonical_settings, chsh_closed_form, chsh_value, maximize_chsh_with, universal_curve,
    universal_curve_deficit, MaximizeOptions, Method, TSIRELSON_BOUND,
};
use relbell::kinematics::{
    angle_decomposition, quadratics, wigner_rotation, wigner_rotation_in_plane, AngleDecomposition,
    InPlaneAngles, Geometry, Sign,
};
use relbell::observables::{
    expectation_closed_form, expectation_in_plane, expectation_out_of_plane, joint_expectation,
    spin_observable, MeasurementDirection,
};
use relbell::oracle::{
    boost_bell_direct, crosscheck_suite, dense_expectation, little_group_element, sample_tuples,
    wigner_matrix_direct,
};
use relbell::spin_states::{
    bell_decompose, bell_state, boost_bell_closed_form, boost_bell_in_plane,
    boost_bell_matrix_path, boost_two_particle, wigner_matrix, BellDecomposition,
};
use relbell::{BellLabel, BoostParameters, MomentumState};

fn report(n: u32, ok: bool, detail: String) {
    println!("criterion {n:>2}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn uniforms(seed: u64) -> impl FnMut() -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    move || (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[test]
fn criterion_01_rest_frame_chsh() {
    let rest = BoostParameters::rest();
    let m = MomentumState::new(1.0, 1.7, 0.9, 2.1).unwrap();
    let v = chsh_value(BellLabel::B00, &canonical_settings(BellLabel::B00), &rest, &m);
    let dev = (v - 2.0 * SQRT_2).abs();
    report(1, dev <= 1e-12, format!("CHSH = {v:.15}, |CHSH − 2√2| = {dev:e}"));
}

#[test]
fn criterion_02_ultra_relativistic_endpoint() {
    let endpoint = universal_curve(1.0).unwrap();
    let mut ok = endpoint == 2.0;
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_ratio = 0.0f64;
    let mut converging = true;
    for &(delta, theta) in &[(0.5, 0.3), (2.0, 1.2), (6.0, PI / 2.0), (9.0, 2.8)] {
        let m = MomentumState::new(1.0, delta, theta, 0.0).unwrap();
        let limit_angles = AngleDecomposition::ultra_relativistic(&m);
        let limit = chsh_closed_form(BellLabel::B00, 1.0, &limit_angles, Geometry::InPlane).unwrap();
        ok &= limit <= 2.0;
        let mut prev_gap = f64::INFINITY;
        for k in 1..=10 {
            let beta = 1.0 - 10f64.powi(-k);
            let b = BoostParameters::from_beta(beta).unwrap();
            let v = chsh_closed_form(BellLabel::B00, beta, &angle_decomposition(&b, &m), Geometry::InPlane).unwrap();
            let g = b.inv_gamma();
            // K(g + cos 2Ω̄) ≤ 2(1 + g)/√(1 + g²)
            worst_excess = worst_excess.max(v - 2.0 * (1.0 + g) / (1.0 + g * g).sqrt());
            let gap = (v - limit).abs();
            converging &= gap < prev_gap;
            prev_gap = gap;
            worst_ratio = worst_ratio.max(gap / g);
        }
    }
    // the approach to the limit is O(1/γ)
    ok &= worst_excess <= 1e-12 && converging && worst_ratio <= 100.0;
    report(
        2,
        ok,
        format!("universal_curve(1) = {endpoint}, max excess over bound {worst_excess:e}, max |CHSH − limit|·γ = {worst_ratio:.3}"),
    );
}

#[test]
fn criterion_03_worked_point_three_paths() {
    let b = BoostParameters::from_cosh(2.0).unwrap();
    let m = MomentumState::from_cosh_delta(1.0, 2.0, 0.0, 0.0).unwrap();
    let angles = angle_decomposition(&b, &m);
    let z = MeasurementDirection::z_axis();
    let label = BellLabel::B00;
    let mut devs = Vec::new();

    let closed = wigner_rotation(&b, &m, Sign::Plus);
    let (_, oracle) = little_group_element(&b, &m, Sign::Plus).unwrap();
    let su2 = wigner_matrix(&closed);
    let su2_omega = 2.0 * su2.0[(0, 0)].re.acos();
    let omega = 0.8f64.acos();
    devs.push((closed.omega() - omega).abs());
    devs.push((oracle.omega() - omega).abs());
    devs.push((su2_omega - omega).abs());
    devs.push(su2.max_deviation(&wigner_matrix_direct(&b, &m, Sign::Plus)));

    let expected = BellDecomposition::from_array([0.8.into(), 0.0.into(), 0.0.into(), (-0.6).into()]);
    let direct_state = boost_bell_direct(label, &b, &m);
    devs.push(boost_bell_closed_form(label, &angles).max_deviation(&expected));
    devs.push(boost_bell_matrix_path(label, &b, &m).max_deviation(&expected));
    devs.push(bell_decompose(&direct_state).max_deviation(&expected));

    let op_z = spin_observable(&z, &b);
    let zz = [
        expectation_closed_form(label, Geometry::InPlane, &angles, &z, &z, b.beta()).unwrap(),
        joint_expectation(&boost_two_particle(&bell_state(label), &b, &m), &z, &z, &b),
        dense_expectation(&direct_state, &op_z, &op_z),
    ];
    devs.extend(zz.iter().map(|v| (v - 0.28).abs()));

    let s = canonical_settings(label);
    let ops = [&s.a, &s.a_prime, &s.b, &s.b_prime].map(|d| spin_observable(d, &b));
    let e = |i: usize, j: usize| dense_expectation(&direct_state, &ops[i], &ops[j]);
    let chsh = [
        chsh_closed_form(label, b.beta(), &angles, Geometry::InPlane).unwrap(),
        chsh_value(label, &s, &b, &m),
        e(0, 2) + e(0, 3) + e(1, 2) - e(1, 3),
    ];
    let chsh_expected = 2.0 / 1.25f64.sqrt() * 0.78;
    devs.extend(chsh.iter().map(|v| (v - chsh_expected).abs()));

    let worst = devs.iter().cloned().fold(0.0, f64::max);
    report(
        3,
        worst <= 1e-9,
        format!("Ω = {:.6}, ⟨ẑẑ⟩ = {:.6}, CHSH = {:.7}, worst deviation {worst:e}", closed.omega(), zz[0], chsh[0]),
    );
}

#[test]
fn criterion_04_oracle_suite() {
    let start = Instant::now();
    let r = crosscheck_suite(42, 1000).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let worst = r.comparisons.iter().map(|c| c.max_deviation).fold(0.0, f64::max);
    for c in &r.comparisons {
        println!("    {:<34} {:e}", c.name, c.max_deviation);
    }
    report(
        4,
        r.passed && elapsed < 10.0,
        format!("{} comparisons, worst {worst:e}, {elapsed:.2} s", r.comparisons.len()),
    );
}

#[test]
fn criterion_05_quadratic_bounds() {
    let s = quadratics::scan_bounds(100, 50, 50, 1e6).unwrap();
    report(
        5,
        s.passes(1e-12),
        format!(
            "{} points, slack lower {:e} upper {:e}, max Δf {:e}, max Δg {:e}",
            s.points, s.min_lower_slack, s.min_upper_slack, s.max_f_increase, s.max_g_increase
        ),
    );
}

#[test]
fn criterion_06_normalization() {
    let mut coeff = 0.0f64;
    let mut state = 0.0f64;
    for s in sample_tuples(42, 1000) {
        let b = BoostParameters::from_beta(s.beta).unwrap();
        let m = MomentumState::new(1.0, s.delta, s.theta, s.phi).unwrap();
        let a = angle_decomposition(&b, &m);
        coeff = coeff
            .max((a.x * a.x + a.y * a.y + a.z * a.z + a.w * a.w - 1.0).abs())
            .max((a.xp * a.xp + a.yp * a.yp + a.zp * a.zp - 1.0).abs());
        for label in BellLabel::ALL {
            state = state
                .max((boost_two_particle(&bell_state(label), &b, &m).norm() - 1.0).abs())
                .max((boost_bell_direct(label, &b, &m).norm() - 1.0).abs())
                .max((boost_bell_closed_form(label, &a).norm_sqr().sqrt() - 1.0).abs());
        }
    }
    report(
        6,
        coeff <= 1e-10 && state <= 1e-12,
        format!("coefficient defect {coeff:e}, state norm defect {state:e}"),
    );
}

#[test]
fn criterion_07_case_reduction() {
    let mut u = uniforms(7);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let b = BoostParameters::from_rapidity(5.0 * u()).unwrap();
        let m = MomentumState::new(1.0, 10.0 * u(), PI * u(), 0.0).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let a = wigner_rotation_in_plane(&b, &m, sign).unwrap();
            let bb = wigner_rotation(&b, &m, sign);
            worst = worst
                .max((a.cos_half - bb.cos_half).abs())
                .max((a.half_vector() - bb.half_vector()).amax());
        }
        let plane = InPlaneAngles::new(&b, &m).unwrap();
        let general = angle_decomposition(&b, &m);
        for label in BellLabel::ALL {
            worst = worst.max(boost_bell_in_plane(label, &plane).max_deviation(&boost_bell_closed_form(label, &general)));
        }
        let da = MeasurementDirection::from_angles((1.0 - 2.0 * u()).acos(), TAU * u());
        let db = MeasurementDirection::from_angles((1.0 - 2.0 * u()).acos(), TAU * u());
        for label in [BellLabel::B00, BellLabel::B01] {
            let ea = expectation_in_plane(label, &plane, &da, &db, b.beta()).unwrap();
            let eb = expectation_out_of_plane(label, &general, &da, &db, b.beta()).unwrap();
            worst = worst.max((ea - eb).abs());
        }
    }
    report(7, worst <= 1e-12, format!("200 tuples at φ = 0, worst case A/B deviation {worst:e}"));
}

#[test]
fn criterion_08_monotonicity() {
    let n = 10_000;
    let betas: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
    let curve: Vec<f64> = betas.iter().map(|&b| universal_curve(b).unwrap()).collect();
    let deficit: Vec<f64> = betas.iter().map(|&b| universal_curve_deficit(b).unwrap()).collect();
    let rising = curve.windows(2).filter(|w| w[1] > w[0]).count();
    let flat = deficit.windows(2).filter(|w| w[1] <= w[0]).count();
    report(
        8,
        rising == 0 && flat == 0 && curve[0] == TSIRELSON_BOUND && curve[n - 1] == 2.0,
        format!("{n} points, {rising} increases in the curve, {flat} non-increasing deficit steps"),
    );
}

#[test]
fn criterion_09_label_universality() {
    let mut worst_plane = 0.0f64;
    let mut worst = 0.0f64;
    let mut u = uniforms(9);
    for i in 0..200 {
        let b = BoostParameters::from_beta(0.999 * u()).unwrap();
        let phi = if i % 2 == 0 { 0.0 } else { TAU * u() };
        let m = MomentumState::new(1.0, 10.0 * u(), PI * u(), phi).unwrap();
        for (label, partner) in [(BellLabel::B10, BellLabel::B01), (BellLabel::B11, BellLabel::B00)] {
            let d = (chsh_value(label, &canonical_settings(label), &b, &m)
                - chsh_value(partner, &canonical_settings(partner), &b, &m))
            .abs();
            worst = worst.max(d);
            if phi == 0.0 {
                worst_plane = worst_plane.max(d);
            }
        }
    }
    report(
        9,
        worst <= 1e-10,
        format!("in-plane worst {worst_plane:e}, full-domain worst {worst:e}"),
    );
}

#[test]
fn criterion_10_maximizer() {
    let opts = MaximizeOptions { starts: 8, ..MaximizeOptions::default() };
    let rest = BoostParameters::rest();
    let m0 = MomentumState::new(1.0, 1.0, 0.4, 0.0).unwrap();
    let mut ok = true;
    let mut rest_dev = 0.0f64;
    for method in [Method::Simplex, Method::Grid] {
        let r = maximize_chsh_with(BellLabel::B00, &rest, &m0, method, &opts);
        rest_dev = rest_dev.max((r.value - TSIRELSON_BOUND).abs());
    }
    ok &= rest_dev <= 1e-6;

    let mut worst_margin = f64::INFINITY;
    let mut u = uniforms(10);
    for i in 0..12 {
        let b = BoostParameters::from_beta(0.999 * u()).unwrap();
        let m = MomentumState::new(1.0, 10.0 * u(), PI * u(), TAU * u()).unwrap();
        let label = BellLabel::ALL[i % 4];
        let method = if i % 3 == 0 { Method::Grid } else { Method::Simplex };
        let r = maximize_chsh_with(label, &b, &m, method, &opts);
        let canonical = chsh_value(label, &canonical_settings(label), &b, &m);
        worst_margin = worst_margin.min(r.value - canonical);
        ok &= r.value.abs() <= TSIRELSON_BOUND + 1e-9;
    }
    ok &= worst_margin >= -1e-12;
    report(
        10,
        ok,
        format!("rest-frame |max − 2√2| = {rest_dev:e}, min (max − canonical) = {worst_margin:e}"),
    );
}

