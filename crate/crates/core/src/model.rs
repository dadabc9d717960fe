//! Physical model: linear potential V, nonlinearity beta, and the energy and
//! mass functionals.

use crate::field::{pairing, FieldPair};
use crate::grid::Grid;
use crate::linalg::CubicSpline;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Nonlinearity beta(s), s = |u|^2, with beta(0) = 0, and its antiderivative B.
#[derive(Debug, Clone)]
pub enum BetaSpec {
    /// beta(s) = -kappa s^q, integer q >= 1
    Power { kappa: f64, q: u32 },
    /// beta(s) = sum_j c[j] s^{j+1} (no constant term by construction)
    Poly { coeffs: Vec<f64> },
    /// cubic-spline tabulation of a smooth beta on [0, s_max]
    Table { spline: CubicSpline },
}

impl BetaSpec {
    pub fn table_from_samples(s: Vec<f64>, values: Vec<f64>) -> Self {
        BetaSpec::Table { spline: CubicSpline::new(s, values) }
    }

    pub fn beta(&self, s: f64) -> f64 {
        match self {
            BetaSpec::Power { kappa, q } => -kappa * s.powi(*q as i32),
            BetaSpec::Poly { coeffs } => {
                let mut acc = 0.0;
                for &c in coeffs.iter().rev() {
                    acc = s * (c + acc);
                }
                acc
            }
            BetaSpec::Table { spline } => spline.eval(s),
        }
    }

    pub fn beta1(&self, s: f64) -> f64 {
        match self {
            BetaSpec::Power { kappa, q } => -kappa * (*q as f64) * s.powi(*q as i32 - 1),
            BetaSpec::Poly { coeffs } => {
                let mut d = 0.0;
                for (j, &c) in coeffs.iter().enumerate() {
                    d += (j as f64 + 1.0) * c * s.powi(j as i32);
                }
                d
            }
            BetaSpec::Table { spline } => spline.deriv(s),
        }
    }

    pub fn beta2(&self, s: f64) -> f64 {
        match self {
            BetaSpec::Power { kappa, q } => {
                let q = *q as i32;
                if q < 2 {
                    0.0
                } else {
                    -kappa * (q as f64) * (q as f64 - 1.0) * s.powi(q - 2)
                }
            }
            BetaSpec::Poly { coeffs } => {
                let mut d = 0.0;
                for (j, &c) in coeffs.iter().enumerate() {
                    if j >= 1 {
                        d += (j as f64 + 1.0) * (j as f64) * c * s.powi(j as i32 - 1);
                    }
                }
                d
            }
            BetaSpec::Table { spline } => spline.deriv2(s),
        }
    }

    /// Antiderivative B(s) with B(0) = 0.
    pub fn big_b(&self, s: f64) -> f64 {
        match self {
            BetaSpec::Power { kappa, q } => -kappa * s.powi(*q as i32 + 1) / (*q as f64 + 1.0),
            BetaSpec::Poly { coeffs } => {
                let mut acc = 0.0;
                for (j, &c) in coeffs.iter().enumerate() {
                    acc += c * s.powi(j as i32 + 2) / (j as f64 + 2.0);
                }
                acc
            }
            BetaSpec::Table { spline } => spline.integral(s),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Model {
    /// V sampled on grid nodes
    pub potential: Vec<f64>,
    pub beta: BetaSpec,
    pub dimension: usize,
}

/// Potential shapes supported by configuration files.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum PotentialSpec {
    None,
    GaussianWell { depth: f64, width: f64 },
    Table { path: String },
}

impl Model {
    pub fn new(potential: Vec<f64>, beta: BetaSpec, grid: &Grid) -> Self {
        Model { potential, beta, dimension: grid.dimension() }
    }

    pub fn free(grid: &Grid) -> Self {
        Model {
            potential: vec![0.0; grid.n],
            beta: BetaSpec::Poly { coeffs: vec![] },
            dimension: grid.dimension(),
        }
    }

    pub fn cubic(grid: &Grid, kappa: f64) -> Self {
        Model {
            potential: vec![0.0; grid.n],
            beta: BetaSpec::Power { kappa, q: 1 },
            dimension: grid.dimension(),
        }
    }

    pub fn gaussian_well(&mut self, grid: &Grid, depth: f64, width: f64) {
        for (v, &r) in self.potential.iter_mut().zip(&grid.nodes) {
            *v += -depth * (-(r / width) * (r / width)).exp();
        }
    }
}

/// Mass Q(U) = int u ubar = (1/2) <U, sigma1 U>.
pub fn mass(u: &FieldPair, grid: &Grid) -> Result<f64> {
    let v = pairing(u, &u.sigma1(), grid)?;
    Ok(0.5 * v.re)
}

/// Energy E(U) = int (|grad u|^2 + V |u|^2 + B(|u|^2)); requires a physical U.
pub fn energy(u: &FieldPair, model: &Model, grid: &Grid) -> Result<f64> {
    let scale = u.plus.iter().map(|v| v.norm()).fold(0.0, f64::max);
    u.check_physical(scale)?;
    energy_unchecked(u, model, grid)
}

/// Energy evaluated without the reality check (used internally where U is
/// physical by construction); kinetic part through the discrete Laplacian.
pub fn energy_unchecked(u: &FieldPair, model: &Model, grid: &Grid) -> Result<f64> {
    if u.len() != grid.n {
        return Err(Error::GridMismatch("energy: field/grid size".into()));
    }
    let lap = grid.laplacian();
    let re: Vec<f64> = u.plus.iter().map(|v| v.re).collect();
    let im: Vec<f64> = u.plus.iter().map(|v| v.im).collect();
    let lre = lap.apply(&re);
    let lim = lap.apply(&im);
    let mut e_kin = 0.0;
    let mut e_pot = 0.0;
    let mut e_nl = 0.0;
    for i in 0..grid.n {
        let w = grid.weights[i];
        // int conj(u)(-Lap u): real by symmetry of the discrete operator
        e_kin += w * (-(re[i] * lre[i] + im[i] * lim[i]));
        let s = u.plus[i].norm_sqr();
        e_pot += w * model.potential[i] * s;
        e_nl += w * model.beta.big_b(s);
    }
    Ok(e_kin + e_pot + e_nl)
}

/// Gradient of E + omega Q in the u-component (the stationary-equation residual
/// operator applied to a real profile), used by the ground-state solver.
pub fn stationary_residual(phi_sym: &[f64], model: &Model, grid: &Grid, omega: f64, d2: &crate::linalg::Banded<f64>) -> Vec<f64> {
    let mut out = d2.apply(phi_sym);
    let u = grid.from_sym(phi_sym);
    let usq: Vec<f64> = u.iter().map(|&v| v * v).collect();
    for i in 0..grid.n {
        out[i] = -out[i] + (model.potential[i] + omega + model.beta.beta(usq[i])) * phi_sym[i];
    }
    out
}
