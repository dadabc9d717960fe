//! Spatial discretization: 1-D line (full or even-parity sector) and radial 3-D.
//!
//! All scalar operators are exposed in a "symmetric representation" in which
//! the Laplacian is a plain symmetric banded stencil with a uniform quadrature
//! weight per node:
//!   line1d        v = u,      weight h (full) or 2h (even sector)
//!   radial3d      v = r u,    weight 4 pi h
//! For radial fields the substitution turns u'' + (2/r)u' into v'' exactly, the
//! regularity condition u'(0) = 0 into odd reflection of v at r = 0, and keeps
//! every inner product a plain weighted dot product.

use crate::linalg::Banded;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridKind {
    Line1d,
    Radial3d,
}

/// Parity sector for line grids. `Even` restricts to even functions on the
/// half-line with reflecting stencils at x = 0; used to project out the
/// translational zero mode (V = 0) and for even-symmetric scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    #[default]
    Full,
    Even,
}

#[derive(Debug, Clone)]
pub struct Grid {
    pub kind: GridKind,
    pub parity: Parity,
    pub n: usize,
    /// half-width (line) or radius (radial)
    pub length: f64,
    pub h: f64,
    pub nodes: Vec<f64>,
    /// quadrature weights for fields stored in node values of u
    pub weights: Vec<f64>,
    pub laplacian_order: usize,
    /// uniform weight of the symmetric representation
    pub sym_weight: f64,
}

/// Reflection rule applied to stencil points that fall past the inner edge.
#[derive(Clone, Copy, PartialEq)]
enum Reflect {
    None,
    Even,
    Odd,
}

fn stencil(order: usize) -> Vec<f64> {
    match order {
        2 => vec![1.0, -2.0, 1.0],
        4 => vec![-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0],
        6 => vec![
            1.0 / 90.0,
            -3.0 / 20.0,
            3.0 / 2.0,
            -49.0 / 18.0,
            3.0 / 2.0,
            -3.0 / 20.0,
            1.0 / 90.0,
        ],
        _ => panic!("unsupported laplacian order {order} (use 2, 4 or 6)"),
    }
}

impl Grid {
    pub fn line1d(n: usize, half_width: f64, order: usize) -> Grid {
        let h = 2.0 * half_width / n as f64;
        let nodes: Vec<f64> = (0..n).map(|i| -half_width + (i as f64 + 0.5) * h).collect();
        Grid {
            kind: GridKind::Line1d,
            parity: Parity::Full,
            n,
            length: half_width,
            h,
            nodes,
            weights: vec![h; n],
            laplacian_order: order,
            sym_weight: h,
        }
    }

    /// Even-parity sector of the line: nodes on (0, L), integrals count both halves.
    pub fn line1d_even(n: usize, half_width: f64, order: usize) -> Grid {
        let h = half_width / n as f64;
        let nodes: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * h).collect();
        Grid {
            kind: GridKind::Line1d,
            parity: Parity::Even,
            n,
            length: half_width,
            h,
            nodes,
            weights: vec![2.0 * h; n],
            laplacian_order: order,
            sym_weight: 2.0 * h,
        }
    }

    pub fn radial3d(n: usize, radius: f64, order: usize) -> Grid {
        let h = radius / n as f64;
        let nodes: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * h).collect();
        let weights = nodes.iter().map(|&r| 4.0 * std::f64::consts::PI * r * r * h).collect();
        Grid {
            kind: GridKind::Radial3d,
            parity: Parity::Even,
            n,
            length: radius,
            h,
            nodes,
            weights,
            laplacian_order: order,
            sym_weight: 4.0 * std::f64::consts::PI * h,
        }
    }

    pub fn dimension(&self) -> usize {
        match self.kind {
            GridKind::Line1d => 1,
            GridKind::Radial3d => 3,
        }
    }

    fn reflect_rule(&self) -> Reflect {
        match (self.kind, self.parity) {
            (GridKind::Line1d, Parity::Full) => Reflect::None,
            (GridKind::Line1d, Parity::Even) => Reflect::Even,
            // v = r u is odd through the origin for regular (even) u
            (GridKind::Radial3d, _) => Reflect::Odd,
        }
    }

    /// to symmetric representation: v_i = u_i (line) or r_i u_i (radial)
    pub fn to_sym(&self, u: &[f64]) -> Vec<f64> {
        match self.kind {
            GridKind::Line1d => u.to_vec(),
            GridKind::Radial3d => u.iter().zip(&self.nodes).map(|(&v, &r)| v * r).collect(),
        }
    }

    pub fn from_sym(&self, v: &[f64]) -> Vec<f64> {
        match self.kind {
            GridKind::Line1d => v.to_vec(),
            GridKind::Radial3d => v.iter().zip(&self.nodes).map(|(&w, &r)| w / r).collect(),
        }
    }

    /// Symmetric banded second-derivative matrix acting on sym-representation
    /// fields, with Dirichlet truncation at the outer edge.
    pub fn d2_sym(&self) -> Banded<f64> {
        let order = self.laplacian_order;
        let st = stencil(order);
        let half = order / 2;
        let refl = self.reflect_rule();
        let inv_h2 = 1.0 / (self.h * self.h);
        let mut a = Banded::zeros(self.n, half, half);
        for i in 0..self.n {
            for (s, &c) in st.iter().enumerate() {
                let j = i as isize + s as isize - half as isize;
                if j >= self.n as isize {
                    continue; // Dirichlet outer boundary
                }
                let coeff = c * inv_h2;
                if j >= 0 {
                    a.add(i, j as usize, coeff);
                } else {
                    match refl {
                        Reflect::None => {} // Dirichlet
                        Reflect::Even => a.add(i, (-1 - j) as usize, coeff),
                        Reflect::Odd => a.add(i, (-1 - j) as usize, -coeff),
                    }
                }
            }
        }
        a
    }

    /// Laplacian matrix acting on u-representation node values
    /// (for radial grids this realizes u'' + (2/r) u' through v = r u).
    pub fn laplacian(&self) -> Banded<f64> {
        let d2 = self.d2_sym();
        match self.kind {
            GridKind::Line1d => d2,
            GridKind::Radial3d => {
                let n = self.n;
                let mut out = Banded::zeros(n, d2.kl, d2.ku);
                for i in 0..n {
                    for j in i.saturating_sub(d2.kl)..=(i + d2.ku).min(n - 1) {
                        let v = d2.get(i, j);
                        if v != 0.0 {
                            out.set(i, j, v * self.nodes[j] / self.nodes[i]);
                        }
                    }
                }
                out
            }
        }
    }

    /// Weighted integral of a real sampled function.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        f.iter().zip(&self.weights).map(|(&v, &w)| v * w).sum()
    }

    /// L2 norm of a real sampled function.
    pub fn norm(&self, f: &[f64]) -> f64 {
        self.integrate(&f.iter().map(|&v| v * v).collect::<Vec<_>>()).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_quadrature_matches_exact() {
        // sum w e^{-r^2} vs the ambient-dimension Gaussian integral, < 1e-8 relative
        let g = Grid::line1d(2048, 40.0, 6);
        let f: Vec<f64> = g.nodes.iter().map(|&x| (-x * x).exp()).collect();
        let exact = std::f64::consts::PI.sqrt();
        assert!((g.integrate(&f) - exact).abs() / exact < 1e-12);

        let ge = Grid::line1d_even(1024, 40.0, 6);
        let fe: Vec<f64> = ge.nodes.iter().map(|&x| (-x * x).exp()).collect();
        assert!((ge.integrate(&fe) - exact).abs() / exact < 1e-12);

        let gr = Grid::radial3d(1024, 30.0, 4);
        let fr: Vec<f64> = gr.nodes.iter().map(|&r| (-r * r).exp()).collect();
        let exact3 = std::f64::consts::PI.powf(1.5);
        assert!((gr.integrate(&fr) - exact3).abs() / exact3 < 1e-10);
    }

    fn laplacian_error(g: &Grid) -> f64 {
        // analytic: Lap e^{-r^2/2} = (r^2 - d) e^{-r^2/2}
        let d = g.dimension() as f64;
        let f: Vec<f64> = g.nodes.iter().map(|&r| (-r * r / 2.0).exp()).collect();
        let lf = g.laplacian().apply(&f);
        g.nodes
            .iter()
            .zip(&lf)
            .filter(|(&r, _)| r.abs() < 0.7 * g.length)
            .map(|(&r, &v)| (v - (r * r - d) * (-r * r / 2.0).exp()).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn laplacian_converges_at_stencil_order() {
        // two resolutions; observed order within half an order of nominal
        for (mk, order) in [
            (Box::new(|n| Grid::line1d(n, 20.0, 4)) as Box<dyn Fn(usize) -> Grid>, 4.0),
            (Box::new(|n| Grid::line1d_even(n, 20.0, 6)), 6.0),
            (Box::new(|n| Grid::radial3d(n, 20.0, 4)), 4.0),
        ] {
            let e1 = laplacian_error(&mk(400));
            let e2 = laplacian_error(&mk(800));
            let rate = (e1 / e2).log2();
            assert!(
                rate > order - 0.5,
                "observed rate {rate:.2}, expected ~{order}"
            );
        }
    }

    #[test]
    fn radial_laplacian_is_weight_selfadjoint() {
        let g = Grid::radial3d(200, 15.0, 4);
        let lap = g.laplacian();
        let u: Vec<f64> = g.nodes.iter().map(|&r| (-r * r / 2.0).exp()).collect();
        let v: Vec<f64> = g.nodes.iter().map(|&r| r * (-r * r / 3.0).exp()).collect();
        let a = g.integrate(&lap.apply(&u).iter().zip(&v).map(|(&x, &y)| x * y).collect::<Vec<_>>());
        let b = g.integrate(&lap.apply(&v).iter().zip(&u).map(|(&x, &y)| x * y).collect::<Vec<_>>());
        assert!((a - b).abs() < 1e-10 * a.abs().max(1.0));
    }
}
