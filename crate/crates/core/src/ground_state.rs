//! Ground-state solver and the C1 family omega -> phi_omega.
//!
//! Stationary equation in the energy-functional convention:
//!     (-Lap + V + omega) phi + beta(phi^2) phi = 0,
//! solved by damped Newton with banded LU. The Newton Jacobian equals
//! L_plus = -Lap + V + omega + beta(phi^2) + 2 beta'(phi^2) phi^2, and
//! L_minus = -Lap + V + omega + beta(phi^2) annihilates phi.

use crate::field::FieldPair;
use crate::grid::{Grid, GridKind, Parity};
use crate::linalg::{symmetric_band_count_below, Banded};
use crate::model::{energy_unchecked, mass, Model};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct GroundState {
    pub omega: f64,
    /// real positive profile on grid nodes (u-representation)
    pub phi: Vec<f64>,
    pub q: f64,
    pub e: f64,
    pub d: f64,
    /// sup-norm of the stationary-equation residual
    pub residual: f64,
}

impl GroundState {
    pub fn field(&self) -> FieldPair {
        FieldPair::from_real_pair(&self.phi, &self.phi)
    }
}

/// L_plus in the symmetric representation as a banded matrix.
pub fn l_plus(gs_phi: &[f64], model: &Model, grid: &Grid, omega: f64) -> Banded<f64> {
    let mut a = grid.d2_sym().map(|v| -v);
    let diag: Vec<f64> = gs_phi
        .iter()
        .zip(model.potential.iter())
        .map(|(&p, &v)| {
            let s = p * p;
            v + omega + model.beta.beta(s) + 2.0 * model.beta.beta1(s) * s
        })
        .collect();
    a.add_diag(&diag);
    a
}

/// L_minus in the symmetric representation.
pub fn l_minus(gs_phi: &[f64], model: &Model, grid: &Grid, omega: f64) -> Banded<f64> {
    let mut a = grid.d2_sym().map(|v| -v);
    let diag: Vec<f64> = gs_phi
        .iter()
        .zip(model.potential.iter())
        .map(|(&p, &v)| v + omega + model.beta.beta(p * p))
        .collect();
    a.add_diag(&diag);
    a
}

fn residual_vec(phi: &[f64], model: &Model, grid: &Grid, omega: f64, d2: &Banded<f64>) -> Vec<f64> {
    // F(v) = -v'' + (V + omega) v + beta(u^2) v in sym representation
    let vsym = grid.to_sym(phi);
    let mut out = d2.apply(&vsym);
    for i in 0..grid.n {
        let s = phi[i] * phi[i];
        out[i] = -out[i] + (model.potential[i] + omega + model.beta.beta(s)) * vsym[i];
    }
    out
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, &x| m.max(x.abs()))
}

/// Default initial guess A sech(sqrt(omega) r) with the cubic closed-form amplitude.
pub fn default_guess(grid: &Grid, omega: f64) -> Vec<f64> {
    let a = (2.0 * omega).sqrt();
    grid.nodes.iter().map(|&r| a / (omega.sqrt() * r).cosh()).collect()
}

pub fn solve_ground_state(
    model: &Model,
    grid: &Grid,
    omega: f64,
    initial_guess: &[f64],
) -> Result<GroundState> {
    assert!(omega > 0.0, "omega must be positive");
    if grid.kind == GridKind::Line1d
        && grid.parity == Parity::Full
        && model.potential.iter().all(|&v| v == 0.0)
    {
        // translation-invariant case: the Newton Jacobian is singular on the
        // full line (the zero mode phi'); the even sector must be used
        return Err(Error::Config(
            "1-D with V = 0 requires the even-parity grid (translational zero mode)".into(),
        ));
    }
    let d2 = grid.d2_sym();
    let mut phi = initial_guess.to_vec();
    let guess_sup = sup(&phi);
    if guess_sup == 0.0 {
        return Err(Error::Config("initial guess must be nonzero".into()));
    }
    let max_iter = 80;
    let mut last_res = f64::INFINITY;
    for _it in 0..max_iter {
        let f = residual_vec(&phi, model, grid, omega, &d2);
        let rsup = sup(&f);
        if rsup <= 1e-10 * sup(&phi).max(1e-300) {
            break;
        }
        let jac = l_plus(&phi, model, grid, omega);
        let step_sym = jac.lu()?.solve(&f);
        let step = grid.from_sym(&step_sym);
        // damped update, halving until the residual decreases
        let fnorm: f64 = f.iter().map(|v| v * v).sum();
        let mut lam = 1.0;
        let mut cand = phi.clone();
        for _ in 0..30 {
            for i in 0..grid.n {
                cand[i] = phi[i] - lam * step[i];
            }
            let fc = residual_vec(&cand, model, grid, omega, &d2);
            let fcnorm: f64 = fc.iter().map(|v| v * v).sum();
            if fcnorm < fnorm {
                break;
            }
            lam *= 0.5;
        }
        phi = cand;
        let step_sup = lam * sup(&step);
        last_res = rsup;
        if step_sup <= 1e-12 * sup(&phi).max(1e-300) {
            break;
        }
    }
    let f = residual_vec(&phi, model, grid, omega, &d2);
    let residual = sup(&f);
    let phisup = sup(&phi);
    // collapse to the trivial zero profile counts as "not a ground state"
    if phisup < 1e-8 * guess_sup {
        return Err(Error::NotGroundState);
    }
    if residual > 1e-10 * phisup.max(1e-300) {
        return Err(Error::NewtonDiverged { iters: max_iter, residual: residual.min(last_res) });
    }
    if phi.iter().sum::<f64>() < 0.0 {
        for v in phi.iter_mut() {
            *v = -*v;
        }
    }
    if phi.iter().any(|&v| v < -1e-7 * phisup) {
        return Err(Error::NotGroundState);
    }
    let u = FieldPair::from_real_pair(&phi, &phi);
    let q = mass(&u, grid)?;
    let e = energy_unchecked(&u, model, grid)?;
    Ok(GroundState { omega, phi, q, e, d: e + omega * q, residual })
}

/// Centered-difference derivative of the profile along the family,
/// delta = 1e-4 * omega by default.
pub fn dphi_domega(
    model: &Model,
    grid: &Grid,
    gs: &GroundState,
    delta: Option<f64>,
) -> Result<(Vec<f64>, f64)> {
    let d = delta.unwrap_or(1e-4 * gs.omega);
    let p = solve_ground_state(model, grid, gs.omega + d, &gs.phi)?;
    let m = solve_ground_state(model, grid, gs.omega - d, &gs.phi)?;
    let dphi: Vec<f64> = p.phi.iter().zip(&m.phi).map(|(&a, &b)| (a - b) / (2.0 * d)).collect();
    let qprime = (p.q - m.q) / (2.0 * d);
    Ok((dphi, qprime))
}

#[derive(Debug, Clone)]
pub struct GroundStateFamily {
    pub samples: Vec<GroundState>,
    pub dphi_domega: Vec<Vec<f64>>,
    pub qprime: Vec<f64>,
    /// set when continuation stopped early at a Newton failure
    pub truncated_at: Option<f64>,
}

/// Continuation over [omega_min, omega_max]: seed at the midpoint, then walk
/// outward in both directions reusing the previous profile as the guess.
pub fn continue_family(
    model: &Model,
    grid: &Grid,
    omega_range: (f64, f64),
    n_samples: usize,
) -> Result<GroundStateFamily> {
    assert!(n_samples >= 3);
    let (lo, hi) = omega_range;
    let omegas: Vec<f64> =
        (0..n_samples).map(|k| lo + (hi - lo) * k as f64 / (n_samples - 1) as f64).collect();
    let mid = n_samples / 2;
    let seed = solve_ground_state(model, grid, omegas[mid], &default_guess(grid, omegas[mid]))?;
    let mut samples: Vec<Option<GroundState>> = vec![None; n_samples];
    let mut truncated_at = None;
    samples[mid] = Some(seed);
    for k in mid + 1..n_samples {
        let guess = samples[k - 1].as_ref().unwrap().phi.clone();
        match solve_ground_state(model, grid, omegas[k], &guess) {
            Ok(gs) => samples[k] = Some(gs),
            Err(_) => {
                truncated_at = Some(omegas[k]);
                break;
            }
        }
    }
    for k in (0..mid).rev() {
        let guess = samples[k + 1].as_ref().unwrap().phi.clone();
        match solve_ground_state(model, grid, omegas[k], &guess) {
            Ok(gs) => samples[k] = Some(gs),
            Err(_) => {
                truncated_at = Some(omegas[k]);
                break;
            }
        }
    }
    let samples: Vec<GroundState> = samples.into_iter().flatten().collect();
    let m = samples.len();
    let mut dphi = Vec::with_capacity(m);
    let mut qprime = Vec::with_capacity(m);
    for k in 0..m {
        let (km, kp) = if k == 0 {
            (0, 1)
        } else if k == m - 1 {
            (m - 2, m - 1)
        } else {
            (k - 1, k + 1)
        };
        let dw = samples[kp].omega - samples[km].omega;
        dphi.push(
            samples[kp].phi.iter().zip(&samples[km].phi).map(|(&a, &b)| (a - b) / dw).collect(),
        );
        qprime.push((samples[kp].q - samples[km].q) / dw);
    }
    Ok(GroundStateFamily { samples, dphi_domega: dphi, qprime, truncated_at })
}

#[derive(Debug, Clone)]
pub struct HypothesisH5H6Report {
    pub omegas: Vec<f64>,
    pub qprime: Vec<f64>,
    pub h5_all_positive: bool,
    /// lowest two L_plus eigenvalues per sample (even sector where applicable)
    pub lplus_low: Vec<(f64, f64)>,
    pub lplus_min_abs: Vec<f64>,
    pub h6_ok: bool,
}

/// Lowest `k` eigenvalues of a symmetric banded matrix by inertia bisection.
pub fn lowest_eigenvalues(a: &Banded<f64>, k: usize) -> Vec<f64> {
    // Gershgorin bounds
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..a.n {
        let mut r = 0.0;
        for j in i.saturating_sub(a.kl)..=(i + a.ku).min(a.n - 1) {
            if j != i {
                r += a.get(i, j).abs();
            }
        }
        lo = lo.min(a.get(i, i) - r);
        hi = hi.max(a.get(i, i) + r);
    }
    let mut out = Vec::with_capacity(k);
    for idx in 1..=k {
        let (mut l, mut u) = (lo, hi);
        for _ in 0..80 {
            let mid = 0.5 * (l + u);
            if symmetric_band_count_below(a, mid) >= idx {
                u = mid;
            } else {
                l = mid;
            }
        }
        out.push(0.5 * (l + u));
    }
    out
}

/// (H5): q'(omega) > 0 along the family; (H6): L_plus has exactly one negative
/// eigenvalue and no numerically-zero eigenvalue.
pub fn check_h5_h6(family: &GroundStateFamily, model: &Model, grid: &Grid) -> HypothesisH5H6Report {
    let mut lplus_low = Vec::new();
    let mut lplus_min_abs = Vec::new();
    let mut h6 = true;
    for gs in &family.samples {
        let a = l_plus(&gs.phi, model, grid, gs.omega);
        let scale = (0..a.n).map(|i| a.get(i, i).abs()).fold(0.0, f64::max);
        let low = lowest_eigenvalues(&a, 2);
        let neg = symmetric_band_count_below(&a, -1e-9 * scale);
        let zero_gap = low.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
        if neg != 1 || zero_gap <= 1e-6 * scale {
            h6 = false;
        }
        lplus_low.push((low[0], low[1]));
        lplus_min_abs.push(zero_gap);
    }
    let h5 = family.qprime.iter().all(|&v| v > 0.0);
    HypothesisH5H6Report {
        omegas: family.samples.iter().map(|g| g.omega).collect(),
        qprime: family.qprime.clone(),
        h5_all_positive: h5,
        lplus_low,
        lplus_min_abs,
        h6_ok: h6,
    }
}
