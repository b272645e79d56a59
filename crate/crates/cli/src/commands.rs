use std::f64::consts::{PI, TAU};

use nalgebra::Vector3;
use relbell::chsh::{
    canonical_settings, chsh_closed_form, chsh_of_state, chsh_value, maximize_chsh_with,
    universal_curve, ChshSettings, MaximizeOptions, Method,
};
use relbell::kinematics::{angle_decomposition, quadratics, wigner_rotation};
use relbell::observables::{expectation_closed_form, joint_expectation, MeasurementDirection};
use relbell::oracle::crosscheck_suite;
use relbell::spin_states::{
    bell_state, boost_bell_closed_form, boost_bell_in_plane, boost_bell_matrix_path,
    boost_two_particle,
};
use relbell::{
    BellDecomposition, BellLabel, BoostParameters, Error, Geometry, InPlaneAngles, MomentumState,
    Result, Sign,
};

use crate::output::{Cell, Table};
use crate::{Command, KinArgs, PathArg, StateArgs, Suite, SweepParam};

/// Tolerance for the t-quadratic bound scan.
const BOUNDS_TOLERANCE: f64 = 1e-12;

pub struct Outcome {
    pub table: Table,
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Outcome {
            table,
            ok: true,
            diagnostics: Vec::new(),
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

impl KinArgs {
    fn boost(&self) -> Result<BoostParameters> {
        match (self.beta, self.cosh_alpha) {
            (Some(beta), _) => BoostParameters::from_beta(beta),
            (None, Some(c)) => BoostParameters::from_cosh(c),
            (None, None) => Ok(BoostParameters::rest()),
        }
    }

    fn momentum(&self) -> Result<MomentumState> {
        match (self.delta, self.cosh_delta) {
            (Some(d), _) => MomentumState::new(self.mass, d, self.theta, self.phi),
            (None, Some(c)) => MomentumState::from_cosh_delta(self.mass, c, self.theta, self.phi),
            (None, None) => MomentumState::new(self.mass, 0.0, self.theta, self.phi),
        }
    }
}

impl StateArgs {
    fn label(&self) -> Result<BellLabel> {
        self.state.parse()
    }

    fn geometry(&self, m: &MomentumState) -> Result<Geometry> {
        match self.case.as_str() {
            "auto" => Ok(if m.is_in_plane() { Geometry::InPlane } else { Geometry::OutOfPlane }),
            other => other.parse(),
        }
    }
}

fn direction(s: &str) -> Result<MeasurementDirection> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Domain(format!("direction `{s}`: {e}")))?;
    match parts[..] {
        [x, y, z] => MeasurementDirection::normalized(Vector3::new(x, y, z)),
        _ => usage(format!("direction `{s}` must be three comma-separated numbers")),
    }
}

fn closed_coefficients(label: BellLabel, geometry: Geometry, b: &BoostParameters, m: &MomentumState) -> Result<BellDecomposition> {
    Ok(match geometry {
        Geometry::InPlane => boost_bell_in_plane(label, &InPlaneAngles::new(b, m)?),
        Geometry::OutOfPlane => boost_bell_closed_form(label, &angle_decomposition(b, m)),
    })
}

/// Closed-form value, or `None` under `--path both` when the label has no
/// closed form.
fn optional_closed(path: PathArg, value: Result<f64>) -> Result<Option<f64>> {
    match value {
        Ok(v) => Ok(Some(v)),
        Err(Error::MatrixPathOnly(_)) if path == PathArg::Both => Ok(None),
        Err(e) => Err(e),
    }
}

fn path_columns(path: PathArg, closed: &str, matrix: &str) -> Vec<String> {
    let mut cols = vec!["label".to_string()];
    if path != PathArg::Matrix {
        cols.push(closed.into());
    }
    if path != PathArg::Closed {
        cols.push(matrix.into());
    }
    if path == PathArg::Both {
        cols.push("max_deviation".into());
    }
    cols
}

fn path_row(label: BellLabel, path: PathArg, closed: Option<f64>, matrix: Option<f64>) -> Vec<Cell> {
    let mut row = vec![Cell::from(label.as_str())];
    if path != PathArg::Matrix {
        row.push(closed.into());
    }
    if path != PathArg::Closed {
        row.push(matrix.into());
    }
    if path == PathArg::Both {
        row.push(closed.zip(matrix).map(|(c, m)| (c - m).abs()).into());
    }
    row
}

pub fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Wigner { kin, sign } => wigner(&kin, &sign),
        Command::BoostBell { state, kin, path } => boost_bell(&state, &kin, path),
        Command::Correlate { state, kin, a, b, path } => correlate(&state, &kin, &a, &b, path),
        Command::Chsh { state, kin, canonical: _, a, a_prime, b, b_prime, path } => {
            let custom = match (a, a_prime, b, b_prime) {
                (Some(a), Some(ap), Some(b), Some(bp)) => Some(ChshSettings {
                    a: direction(&a)?,
                    a_prime: direction(&ap)?,
                    b: direction(&b)?,
                    b_prime: direction(&bp)?,
                }),
                (None, None, None, None) => None,
                _ => return usage("give all of --a, --a-prime, --b, --b-prime or none"),
            };
            chsh(&state, &kin, custom, path)
        }
        Command::Sweep { state, kin, param, from, to, steps } => sweep(&state, &kin, param, from, to, steps),
        Command::Maximize { state, kin, method, starts, seed, max_iterations, tolerance } => {
            let options = MaximizeOptions { seed, starts, max_iterations, tolerance };
            maximize(&state, &kin, method.parse()?, &options)
        }
        Command::Verify { suite, samples, seed } => verify(suite, samples, seed),
    }
}

fn wigner(kin: &KinArgs, sign: &str) -> Result<Outcome> {
    let sign: Sign = sign.parse()?;
    let r = wigner_rotation(&kin.boost()?, &kin.momentum()?, sign);
    Ok(Table::record(vec![
        ("sign", sign.to_string().into()),
        ("omega", r.omega().into()),
        ("cos_half", r.cos_half.into()),
        ("sin_half", r.sin_half.into()),
        ("axis_x", r.axis.x.into()),
        ("axis_y", r.axis.y.into()),
        ("axis_z", r.axis.z.into()),
    ])
    .into())
}

fn boost_bell(state: &StateArgs, kin: &KinArgs, path: PathArg) -> Result<Outcome> {
    let (label, b, m) = (state.label()?, kin.boost()?, kin.momentum()?);
    let mut columns = vec!["label", "path"];
    let coeff_names: Vec<String> = BellLabel::ALL
        .iter()
        .flat_map(|l| [format!("c{}_re", l.as_str()), format!("c{}_im", l.as_str())])
        .collect();
    columns.extend(coeff_names.iter().map(String::as_str));
    if path == PathArg::Both {
        columns.push("max_deviation");
    }

    let mut results = Vec::new();
    if path != PathArg::Matrix {
        results.push(("closed", closed_coefficients(label, state.geometry(&m)?, &b, &m)?));
    }
    if path != PathArg::Closed {
        results.push(("matrix", boost_bell_matrix_path(label, &b, &m)));
    }
    let deviation = (path == PathArg::Both).then(|| results[0].1.max_deviation(&results[1].1));

    let mut table = Table::new(&columns);
    for (name, c) in &results {
        let mut row = vec![Cell::from(label.as_str()), Cell::from(*name)];
        for z in c.as_array() {
            row.push(z.re.into());
            row.push(z.im.into());
        }
        if let Some(d) = deviation {
            row.push(d.into());
        }
        table.push(row);
    }
    table.record = results.len() == 1;
    Ok(table.into())
}

fn correlate(state: &StateArgs, kin: &KinArgs, a: &str, b: &str, path: PathArg) -> Result<Outcome> {
    let (label, boost, m) = (state.label()?, kin.boost()?, kin.momentum()?);
    let (a, b) = (direction(a)?, direction(b)?);
    let closed = if path == PathArg::Matrix {
        None
    } else {
        let angles = angle_decomposition(&boost, &m);
        let value = expectation_closed_form(label, state.geometry(&m)?, &angles, &a, &b, boost.beta());
        optional_closed(path, value)?
    };
    let matrix = (path != PathArg::Closed)
        .then(|| joint_expectation(&boost_two_particle(&bell_state(label), &boost, &m), &a, &b, &boost));
    let columns = path_columns(path, "expectation_closed", "expectation_matrix");
    let mut table = Table::new(&columns.iter().map(String::as_str).collect::<Vec<_>>());
    table.push(path_row(label, path, closed, matrix));
    table.record = true;
    Ok(table.into())
}

fn chsh(state: &StateArgs, kin: &KinArgs, custom: Option<ChshSettings>, path: PathArg) -> Result<Outcome> {
    let (label, boost, m) = (state.label()?, kin.boost()?, kin.momentum()?);
    let closed = match (path, custom) {
        (PathArg::Matrix, _) => None,
        (PathArg::Closed, Some(_)) => return usage("closed forms cover the canonical settings only"),
        (PathArg::Both, Some(_)) => None,
        (_, None) => {
            let angles = angle_decomposition(&boost, &m);
            optional_closed(path, chsh_closed_form(label, boost.beta(), &angles, state.geometry(&m)?))?
        }
    };
    let settings = custom.unwrap_or_else(|| canonical_settings(label));
    let matrix = (path != PathArg::Closed).then(|| {
        let s = boost_two_particle(&bell_state(label), &boost, &m);
        chsh_of_state(&s, &settings, &boost)
    });
    let mut columns = path_columns(path, "chsh_closed", "chsh_matrix");
    columns.push("universal_curve".into());
    let mut row = path_row(label, path, closed, matrix);
    row.push(universal_curve(boost.beta())?.into());
    let mut table = Table::new(&columns.iter().map(String::as_str).collect::<Vec<_>>());
    table.push(row);
    table.record = true;
    Ok(table.into())
}

fn sweep(
    state: &StateArgs,
    kin: &KinArgs,
    param: SweepParam,
    from: Option<f64>,
    to: Option<f64>,
    steps: usize,
) -> Result<Outcome> {
    let label = state.label()?;
    let (name, lo, hi) = match param {
        SweepParam::Beta => ("beta", 0.0, 0.999),
        SweepParam::Delta => ("delta", 0.0, 10.0),
        SweepParam::Theta => ("theta", 0.0, PI),
        SweepParam::Phi => ("phi", 0.0, TAU),
    };
    let fixed_conflict = match param {
        SweepParam::Beta => kin.beta.is_some() || kin.cosh_alpha.is_some(),
        SweepParam::Delta => kin.delta.is_some() || kin.cosh_delta.is_some(),
        _ => false,
    };
    if fixed_conflict {
        return usage(format!("`{name}` is swept; do not also fix it"));
    }
    let (from, to) = (from.unwrap_or(lo), to.unwrap_or(hi));
    if !(from <= to) {
        return usage(format!("sweep needs from ≤ to, got {from} > {to}"));
    }
    if steps < 2 {
        return usage("sweep needs at least 2 steps");
    }
    if param == SweepParam::Beta && !(from >= 0.0 && to <= 0.999) {
        return usage("swept β must stay within [0, 0.999]");
    }

    let settings = canonical_settings(label);
    let mut table = Table::new(&[name, "chsh_closed", "chsh_matrix", "universal_curve", "q_minus", "q_plus"]);
    for i in 0..steps {
        let x = if i == steps - 1 { to } else { from + (to - from) * i as f64 / (steps - 1) as f64 };
        let mut k = kin.clone();
        match param {
            SweepParam::Beta => k.beta = Some(x),
            SweepParam::Delta => k.delta = Some(x),
            SweepParam::Theta => k.theta = x,
            SweepParam::Phi => k.phi = x,
        }
        let (b, m) = (k.boost()?, k.momentum()?);
        let angles = angle_decomposition(&b, &m);
        let closed = optional_closed(PathArg::Both, chsh_closed_form(label, b.beta(), &angles, state.geometry(&m)?))?;
        table.push(vec![
            x.into(),
            closed.into(),
            chsh_value(label, &settings, &b, &m).into(),
            universal_curve(b.beta())?.into(),
            angles.q_minus().into(),
            angles.q_plus().into(),
        ]);
    }
    Ok(table.into())
}

fn maximize(state: &StateArgs, kin: &KinArgs, method: Method, options: &MaximizeOptions) -> Result<Outcome> {
    let (label, b, m) = (state.label()?, kin.boost()?, kin.momentum()?);
    let r = maximize_chsh_with(label, &b, &m, method, options);
    let mut fields = vec![
        ("label", Cell::from(label.as_str())),
        ("method", Cell::from(format!("{method:?}").to_lowercase())),
        ("value", r.value.into()),
        ("canonical_value", r.canonical_value.into()),
        ("converged", r.converged.into()),
        ("evaluations", r.evaluations.into()),
    ];
    let s = &r.settings;
    let names = [
        ["a_x", "a_y", "a_z"],
        ["a_prime_x", "a_prime_y", "a_prime_z"],
        ["b_x", "b_y", "b_z"],
        ["b_prime_x", "b_prime_y", "b_prime_z"],
    ];
    for (d, n) in [&s.a, &s.a_prime, &s.b, &s.b_prime].into_iter().zip(names) {
        let v = d.vector();
        fields.extend([(n[0], v.x.into()), (n[1], v.y.into()), (n[2], v.z.into())]);
    }
    Ok(Table::record(fields).into())
}

fn verify(suite: Suite, samples: usize, seed: u64) -> Result<Outcome> {
    let mut table = Table::new(&["suite", "check", "value", "limit", "passed"]);
    let mut diagnostics = Vec::new();
    if suite != Suite::Bounds {
        let report = crosscheck_suite(seed, samples)?;
        for c in &report.comparisons {
            table.push(vec![
                "oracle".into(),
                c.name.as_str().into(),
                c.max_deviation.into(),
                report.tolerance.into(),
                c.passed.into(),
            ]);
            if !c.passed {
                let tuple = serde_json::to_string(&c.worst_sample).unwrap_or_default();
                diagnostics.push(format!("{} failed: deviation {:e} at {tuple}", c.name, c.max_deviation));
            }
        }
    }
    if suite != Suite::Oracle {
        let scan = quadratics::scan_bounds(100, 50, 50, 1e6)?;
        let checks = [
            ("lower_bound_violation", (-scan.min_lower_slack).max(0.0), BOUNDS_TOLERANCE),
            ("upper_bound_violation", (-scan.min_upper_slack).max(0.0), BOUNDS_TOLERANCE),
            ("f_increase", scan.max_f_increase.max(0.0), 0.0),
            ("g_increase", scan.max_g_increase.max(0.0), 0.0),
        ];
        for (name, value, limit) in checks {
            let passed = value <= limit;
            table.push(vec!["bounds".into(), name.into(), value.into(), limit.into(), passed.into()]);
            if !passed {
                diagnostics.push(format!("{name} failed: {value:e} over {} grid points", scan.points));
            }
        }
    }
    let ok = diagnostics.is_empty();
    Ok(Outcome { table, ok, diagnostics })
}
