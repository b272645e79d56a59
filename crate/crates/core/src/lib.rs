//! Lorentz-boosted, momentum-conserved Bell states of spin-½ particles.
//!
//! The crate follows a pair of particles with momenta `+p` and `-p` as seen
//! by an observer boosted along `x̂`. Each particle's spin picks up a Wigner
//! little-group rotation; the pair's spin state is re-expressed in the Bell
//! basis, measured with normalized relativistic spin observables and fed to
//! the CHSH combination.
//!
//! Every closed form has an independent counterpart:
//!
//! * [`kinematics`] evaluates the Wigner half-angles and the derived angle
//!   algebra; [`oracle`] rebuilds the same rotation from 4×4 Lorentz matrices
//!   in double-double precision.
//! * [`spin_states`] has the closed-form Bell-basis coefficients and the plain
//!   tensor-product action of the two SU(2) matrices.
//! * [`observables`] and [`chsh`] have both the closed correlation formulas
//!   and dense 4×4 expectation values.
//!
//! Units are natural (`c = 1`); the boost axis is always `x̂`.

pub mod chsh;
pub mod error;
pub mod kinematics;
pub mod observables;
pub mod oracle;
pub mod pauli;
pub mod spin_states;

pub use error::{Error, Result};
pub use kinematics::{
    AngleDecomposition, BoostParameters, Geometry, InPlaneAngles, MomentumState, Sign,
    WignerRotation,
};
pub use spin_states::{BellDecomposition, BellLabel, Su2Matrix, TwoParticleSpinState};
