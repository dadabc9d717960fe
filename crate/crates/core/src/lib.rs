//! Numerical laboratory for nonlinear Schrödinger ground states.
//!
//! The crate builds, at desk scale, the full chain from a ground-state family
//! through the linearized spectrum, modulation coordinates and their symplectic
//! identities, a Birkhoff normal-form driver, the Fermi-golden-rule damping
//! coefficient, and long-time simulation of the discrete-mode decay law.

pub mod linalg;
pub mod grid;
pub mod field;
pub mod model;
pub mod ground_state;
pub mod linearization;
pub mod modulation;
pub mod normal_form;
pub mod fgr;
pub mod dynamics;
pub mod pipeline;

pub use field::FieldPair;
pub use grid::Grid;
pub use model::Model;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field violates the reality constraint (sigma1 U != conj U), defect {0:.3e}")]
    NotPhysical(f64),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("Newton did not converge after {iters} iterations (last residual {residual:.3e})")]
    NewtonDiverged { iters: usize, residual: f64 },
    #[error("converged to a sign-changing solution: not a ground state")]
    NotGroundState,
    #[error("ground-state family is degenerate: q'(omega) = {0:.3e} within tolerance of zero")]
    DegenerateFamily(f64),
    #[error("state is outside the orbital neighborhood of the ground-state family")]
    OutsideTube,
    #[error("degenerate modulation decomposition: det A = {0:.3e}")]
    DegenerateDecomposition(f64),
    #[error("eigenmode signature failure: <sigma3 xi, xi> = {0:.3e} <= 0")]
    SignatureFailure(f64),
    #[error("small denominator: lambda.(mu-nu) = {value:.6e} is resonant ({reason})")]
    SmallDenominator { value: f64, reason: String },
    #[error("homological input term ({0}) is already in normal form")]
    NormalFormInput(String),
    #[error("linear solve breakdown: {0}")]
    LinearSolve(String),
    #[error("Lie transform step-size underflow: generator radius too large")]
    RadiusTooLarge,
    #[error("time step {dt} violates the {scheme} stability bound {bound:.3e}")]
    UnstableTimeStep { dt: f64, scheme: String, bound: f64 },
    #[error("extrapolation did not converge: {0}")]
    ExtrapolationFailed(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("missing pipeline artifact: {0}")]
    MissingArtifact(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
