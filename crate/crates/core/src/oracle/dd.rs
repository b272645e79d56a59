//! Double-double evaluation of the little-group element and of the direct
//! spin-½ Wigner matrix. The 4×4 product `L⁻¹(Λp) Λ L(p)` has entries of
//! order `e^(2δ+2α)` that cancel down to O(1), so plain f64 is not enough.

use nalgebra::{Matrix2, Matrix4};
use twofloat::TwoFloat;

use crate::kinematics::{BoostParameters, MomentumState, Sign};
use crate::pauli::C;

pub(crate) type Dd = TwoFloat;

pub(crate) fn dd(x: f64) -> Dd {
    Dd::from(x)
}

pub(crate) fn lo(x: Dd) -> f64 {
    f64::from(x)
}

/// `TwoFloat`'s own quotient is only good to about one ulp of the high
/// word; one residual correction brings it to full double-double accuracy.
pub(crate) fn div(x: Dd, y: Dd) -> Dd {
    let q = x / y;
    q + (x - q * y) / y
}

#[derive(Clone, Copy)]
pub(crate) struct DdMat4(pub [[Dd; 4]; 4]);

impl DdMat4 {
    pub fn identity() -> Self {
        let mut m = [[dd(0.0); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = dd(1.0);
        }
        DdMat4(m)
    }

    pub fn mul(&self, other: &DdMat4) -> DdMat4 {
        let mut out = [[dd(0.0); 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = dd(0.0);
                for k in 0..4 {
                    acc += self.0[i][k] * other.0[k][j];
                }
                *cell = acc;
            }
        }
        DdMat4(out)
    }

    pub fn to_f64(self) -> Matrix4<f64> {
        Matrix4::from_fn(|i, j| lo(self.0[i][j]))
    }
}

/// Pure boost with rapidity functions `(ch, sh)` along the unit vector `n`.
pub(crate) fn boost(n: [Dd; 3], ch: Dd, sh: Dd) -> DdMat4 {
    let mut m = DdMat4::identity().0;
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] += (ch - 1.0) * n[i] * n[j];
        }
        m[i][3] = sh * n[i];
        m[3][i] = sh * n[i];
    }
    m[3][3] = ch;
    DdMat4(m)
}

/// Kinematic inputs raised to double-double, with `cosh² − sinh² = 1` and
/// `|n| = 1` enforced at that precision.
pub(crate) struct DdKinematics {
    pub gamma: Dd,
    pub gamma_beta: Dd,
    pub ch: Dd,
    pub sh: Dd,
    pub n: [Dd; 3],
}

impl DdKinematics {
    pub fn new(b: &BoostParameters, m: &MomentumState, sign: Sign) -> Self {
        let beta = dd(b.beta());
        let gamma = div(dd(1.0), ((dd(1.0) - beta) * (dd(1.0) + beta)).sqrt());
        let ch = dd(m.rapidity()).cosh();
        let sh = ((ch - 1.0) * (ch + 1.0)).sqrt();
        let (st, ct) = dd(m.theta()).sin_cos();
        let (sp, cp) = dd(m.phi()).sin_cos();
        let raw = [st * cp, st * sp, ct];
        let norm = (raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2]).sqrt();
        let s = sign.factor();
        DdKinematics {
            gamma,
            gamma_beta: gamma * beta,
            ch,
            sh,
            n: raw.map(|x| div(x, norm) * s),
        }
    }
}

/// `W = L⁻¹(Λp) Λ L(p)` for unit mass (W does not depend on the mass).
pub(crate) fn little_group(k: &DdKinematics) -> DdMat4 {
    let l_p = boost(k.n, k.ch, k.sh);
    let lambda = boost([dd(1.0), dd(0.0), dd(0.0)], k.gamma, k.gamma_beta);
    let q = [
        k.gamma * k.sh * k.n[0] + k.gamma_beta * k.ch,
        k.sh * k.n[1],
        k.sh * k.n[2],
    ];
    let q0 = k.gamma * k.ch + k.gamma_beta * k.sh * k.n[0];
    let q_norm = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
    let l_q_inv = if lo(q_norm) == 0.0 {
        DdMat4::identity()
    } else {
        boost(q.map(|x| -div(x, q_norm)), q0, q_norm)
    };
    l_q_inv.mul(&lambda).mul(&l_p)
}

/// Half-angle extraction from the spatial block `R` of an active rotation:
/// `cos(Ω/2) = ½√(1 + tr R)`, `sin(Ω/2) n̂ = v / (4 cos(Ω/2))` with
/// `v = (R₃₂ − R₂₃, R₁₃ − R₃₁, R₂₁ − R₁₂)`.
pub(crate) fn rotation_half_angles(w: &DdMat4) -> (f64, [f64; 3]) {
    let r = &w.0;
    let trace = r[0][0] + r[1][1] + r[2][2];
    let c = (dd(1.0) + trace).max(dd(0.0)).sqrt() * 0.5;
    let v = [r[2][1] - r[1][2], r[0][2] - r[2][0], r[1][0] - r[0][1]];
    (lo(c), v.map(|x| lo(div(x, c * 4.0))))
}

/// `[(p⁰+m) cosh(α/2) + (p⃗·ê) sinh(α/2) − i sinh(α/2) σ⃗·(p⃗×ê)] / √((p⁰+m)((Λp)⁰+m))`
/// with `m = 1` and `ê = x̂`.
pub(crate) fn direct_matrix(k: &DdKinematics) -> Matrix2<C> {
    let (p0, p) = (k.ch, k.n.map(|x| x * k.sh));
    let c = ((k.gamma + 1.0) * 0.5).sqrt();
    let s = ((k.gamma - 1.0) * 0.5).sqrt();
    let boosted0 = k.gamma * p0 + k.gamma_beta * p[0];
    let den = ((p0 + 1.0) * (boosted0 + 1.0)).sqrt();
    let a = div((p0 + 1.0) * c + p[0] * s, den);
    let sy = div(s * p[1], den);
    let sz = div(s * p[2], den);
    Matrix2::new(
        C::new(lo(a), lo(sy)),
        C::new(-lo(sz), 0.0),
        C::new(lo(sz), 0.0),
        C::new(lo(a), -lo(sy)),
    )
}
