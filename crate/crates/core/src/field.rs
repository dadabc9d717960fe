//! Two-component lattice fields U = (u, ubar) and the grid pairings.
//!
//! Pairing conventions follow the source problem: for two-component fields the
//! bracket is the *bilinear* transpose pairing <f, g> = int (f1 g1 + f2 g2)
//! with no complex conjugation anywhere; conjugation enters only through the
//! reality constraint sigma1 U = conj(U) of physical states.

use crate::grid::Grid;
use crate::{Error, Result};
use num_complex::Complex64;

pub type C64 = Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct FieldPair {
    pub plus: Vec<C64>,
    pub minus: Vec<C64>,
}

impl FieldPair {
    pub fn zeros(n: usize) -> Self {
        FieldPair { plus: vec![C64::new(0.0, 0.0); n], minus: vec![C64::new(0.0, 0.0); n] }
    }

    pub fn len(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty()
    }

    /// Physical embedding of a scalar wave function: U = (u, conj u).
    pub fn from_scalar(u: &[C64]) -> Self {
        FieldPair { plus: u.to_vec(), minus: u.iter().map(|v| v.conj()).collect() }
    }

    /// Real two-component field (phi, phi), e.g. the ground-state pair.
    pub fn from_real_pair(p: &[f64], m: &[f64]) -> Self {
        FieldPair {
            plus: p.iter().map(|&v| C64::new(v, 0.0)).collect(),
            minus: m.iter().map(|&v| C64::new(v, 0.0)).collect(),
        }
    }

    /// Reality defect max |minus - conj(plus)|.
    pub fn reality_defect(&self) -> f64 {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(p, m)| (m - p.conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn check_physical(&self, scale: f64) -> Result<()> {
        let d = self.reality_defect();
        if d > 1e-10 * scale.max(1.0) {
            return Err(Error::NotPhysical(d));
        }
        Ok(())
    }

    pub fn conj(&self) -> Self {
        FieldPair {
            plus: self.plus.iter().map(|v| v.conj()).collect(),
            minus: self.minus.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn sigma1(&self) -> Self {
        FieldPair { plus: self.minus.clone(), minus: self.plus.clone() }
    }

    pub fn sigma2(&self) -> Self {
        // sigma2 = [[0, i], [-i, 0]]
        let i = C64::new(0.0, 1.0);
        FieldPair {
            plus: self.minus.iter().map(|v| i * v).collect(),
            minus: self.plus.iter().map(|v| -i * v).collect(),
        }
    }

    pub fn sigma3(&self) -> Self {
        FieldPair { plus: self.plus.clone(), minus: self.minus.iter().map(|v| -v).collect() }
    }

    /// e^{i sigma3 theta} U = (e^{i theta} u, e^{-i theta} ubar)
    pub fn gauge(&self, theta: f64) -> Self {
        let ep = C64::from_polar(1.0, theta);
        let em = ep.conj();
        FieldPair {
            plus: self.plus.iter().map(|v| ep * v).collect(),
            minus: self.minus.iter().map(|v| em * v).collect(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        FieldPair {
            plus: self.plus.iter().map(|v| c * v).collect(),
            minus: self.minus.iter().map(|v| c * v).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        FieldPair {
            plus: self.plus.iter().zip(&other.plus).map(|(a, b)| a + b).collect(),
            minus: self.minus.iter().zip(&other.minus).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        FieldPair {
            plus: self.plus.iter().zip(&other.plus).map(|(a, b)| a - b).collect(),
            minus: self.minus.iter().zip(&other.minus).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn axpy(&mut self, c: C64, other: &Self) {
        for (a, b) in self.plus.iter_mut().zip(&other.plus) {
            *a += c * b;
        }
        for (a, b) in self.minus.iter_mut().zip(&other.minus) {
            *a += c * b;
        }
    }

    /// L2 norm with grid weights.
    pub fn norm(&self, grid: &Grid) -> f64 {
        self.plus
            .iter()
            .zip(&self.minus)
            .zip(&grid.weights)
            .map(|((p, m), &w)| w * (p.norm_sqr() + m.norm_sqr()))
            .sum::<f64>()
            .sqrt()
    }

    /// Weighted L^{2,-s} norm with weight (1 + r^2)^{-s/2} inside the L2 norm.
    pub fn local_decay_norm(&self, grid: &Grid, s: f64) -> f64 {
        self.plus
            .iter()
            .zip(&self.minus)
            .zip(grid.nodes.iter().zip(&grid.weights))
            .map(|((p, m), (&r, &w))| {
                let wt = (1.0 + r * r).powf(-s);
                w * wt * (p.norm_sqr() + m.norm_sqr())
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// Bilinear vector pairing <f, g> = int (f1 g1 + f2 g2) dx, no conjugation.
pub fn pairing(f: &FieldPair, g: &FieldPair, grid: &Grid) -> Result<C64> {
    if f.len() != grid.n || g.len() != grid.n {
        return Err(Error::GridMismatch(format!(
            "pairing: field lengths {} / {} vs grid n = {}",
            f.len(),
            g.len(),
            grid.n
        )));
    }
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..grid.n {
        acc += grid.weights[i] * (f.plus[i] * g.plus[i] + f.minus[i] * g.minus[i]);
    }
    Ok(acc)
}

/// Unconjugated scalar pairing int f g dx used for scalar-valued samples.
pub fn scalar_pairing(f: &[C64], g: &[C64], grid: &Grid) -> C64 {
    f.iter().zip(g).zip(&grid.weights).map(|((a, b), &w)| w * a * b).sum()
}

/// The constant Pauli matrices acting componentwise on FieldPair.
#[derive(Debug, Clone)]
pub struct PauliSet {
    pub sigma1: [[C64; 2]; 2],
    pub sigma2: [[C64; 2]; 2],
    pub sigma3: [[C64; 2]; 2],
}

impl Default for PauliSet {
    fn default() -> Self {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        PauliSet {
            sigma1: [[o, l], [l, o]],
            sigma2: [[o, i], [-i, o]],
            sigma3: [[l, o], [o, -l]],
        }
    }
}

pub fn mat_mul(a: &[[C64; 2]; 2], b: &[[C64; 2]; 2]) -> [[C64; 2]; 2] {
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    pub fn random_physical(rng: &mut ChaCha8Rng, grid: &Grid, amp: f64) -> FieldPair {
        let u: Vec<C64> = grid
            .nodes
            .iter()
            .map(|&x| {
                let env = (-x * x / 8.0).exp();
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5) * amp * env
            })
            .collect();
        FieldPair::from_scalar(&u)
    }

    #[test]
    fn pauli_algebra() {
        let p = PauliSet::default();
        let id = [[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(1.0, 0.0)]];
        for s in [&p.sigma1, &p.sigma2, &p.sigma3] {
            let sq = mat_mul(s, s);
            for i in 0..2 {
                for j in 0..2 {
                    assert!((sq[i][j] - id[i][j]).norm() < 1e-15);
                }
            }
        }
        // sigma1 sigma3 = -sigma3 sigma1
        let a = mat_mul(&p.sigma1, &p.sigma3);
        let b = mat_mul(&p.sigma3, &p.sigma1);
        for i in 0..2 {
            for j in 0..2 {
                assert!((a[i][j] + b[i][j]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn unit_basis_pairing_is_weight() {
        let g = Grid::line1d(64, 5.0, 4);
        let mut f = FieldPair::zeros(64);
        f.plus[10] = C64::new(1.0, 0.0);
        let v = pairing(&f, &f, &g).unwrap();
        assert!((v.re - g.weights[10]).abs() < 1e-15 && v.im.abs() < 1e-18);
    }

    #[test]
    fn sigma3_sigma1_pairing_imaginary_on_physical() {
        // <f, s3 s1 f> purely imaginary for physical f (antisymmetric matrix, reality)
        let g = Grid::line1d(128, 8.0, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let f = random_physical(&mut rng, &g, 0.7);
            let s3s1f = f.sigma1().sigma3();
            let v = pairing(&f, &s3s1f, &g).unwrap();
            assert!(v.re.abs() < 1e-14, "re = {:.3e}", v.re);
        }
    }
}
