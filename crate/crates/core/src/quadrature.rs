//! Product quadrature on the circle and sphere.
//!
//! The azimuth uses the periodic trapezoid rule; on the sphere the height
//! `z = cos φ` uses Gauss–Legendre nodes, which absorbs the `sin φ` surface
//! element. Weights are normalized to an average, so they sum to one.

use std::f64::consts::{PI, TAU};

use crate::geometry::UnitDirection;
use crate::{Error, Result};

pub const MIN_THETA_NODES: usize = 8;
pub const MIN_PHI_NODES: usize = 4;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi's initial guess for the i-th largest root.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Tensor-product grid of unit directions with averaging weights.
///
/// Nodes are generated on demand from the two factor rules; node `i`
/// has height index `i / n_theta` and azimuth index `i % n_theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    dim: usize,
    n_theta: usize,
    n_phi: usize,
    azimuths: Vec<(f64, f64)>,
    heights: Vec<(f64, f64)>,
}

/// Builds the grid; `n_phi` is ignored in 2D.
pub fn build_grid(dimension: usize, n_theta: usize, n_phi: usize) -> Result<QuadratureGrid> {
    if !(2..=3).contains(&dimension) {
        return Err(Error::UnsupportedDimension(dimension));
    }
    if n_theta < MIN_THETA_NODES {
        return Err(Error::InvalidArgument(format!(
            "n_theta = {n_theta} is below the minimum of {MIN_THETA_NODES}"
        )));
    }
    if dimension == 3 && n_phi < MIN_PHI_NODES {
        return Err(Error::InvalidArgument(format!(
            "n_phi = {n_phi} is below the minimum of {MIN_PHI_NODES}"
        )));
    }
    Ok(QuadratureGrid::unchecked(dimension, n_theta, n_phi))
}

impl QuadratureGrid {
    pub(crate) fn unchecked(dim: usize, n_theta: usize, n_phi: usize) -> Self {
        let azimuths = (0..n_theta)
            .map(|i| (TAU * i as f64 / n_theta as f64).sin_cos())
            .map(|(s, c)| (c, s))
            .collect();
        let (n_phi, heights) = if dim == 2 {
            (1, vec![(0.0, 1.0)])
        } else {
            let (z, w) = gauss_legendre(n_phi);
            (n_phi, z.into_iter().zip(w.into_iter().map(|w| 0.5 * w)).collect())
        };
        Self {
            dim,
            n_theta,
            n_phi,
            azimuths,
            heights,
        }
    }

    /// The same rule with both orders halved (at least one node each).
    pub fn coarsened(&self) -> Self {
        Self::unchecked(
            self.dim,
            (self.n_theta / 2).max(1),
            (self.n_phi / 2).max(1),
        )
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    /// Number of height nodes (1 in 2D).
    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn len(&self) -> usize {
        self.n_theta * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub(crate) fn node_xyz(&self, index: usize) -> ([f64; 3], f64) {
        let (c, s) = self.azimuths[index % self.n_theta];
        let (z, wz) = self.heights[index / self.n_theta];
        let r = (1.0 - z * z).max(0.0).sqrt();
        ([r * c, r * s, z], wz / self.n_theta as f64)
    }

    /// Direction and weight of node `index`.
    pub fn node(&self, index: usize) -> (UnitDirection, f64) {
        let (xyz, w) = self.node_xyz(index);
        (UnitDirection::from_xyz_unchecked(self.dim, xyz), w)
    }

    pub fn nodes(&self) -> impl Iterator<Item = (UnitDirection, f64)> + '_ {
        (0..self.len()).map(move |i| self.node(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_small_orders() {
        let (x, w) = gauss_legendre(2);
        let r = 1.0 / 3f64.sqrt();
        assert!((x[0] + r).abs() < 1e-15 && (x[1] - r).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(3);
        assert_eq!(x[1], 0.0);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-15);
        assert!((x[2] - 0.6f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let n = 12;
        let (x, w) = gauss_legendre(n);
        for deg in 0..2 * n {
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((q - exact).abs() < 1e-14, "degree {deg}: {q} vs {exact}");
        }
    }

    #[test]
    fn large_order_weights() {
        let (x, w) = gauss_legendre(1024);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
        assert!(w.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn planar_grid_nodes() {
        let g = build_grid(2, 8, 0).unwrap();
        assert_eq!(g.len(), 8);
        for (k, (u, w)) in g.nodes().enumerate() {
            let t = k as f64 * PI / 4.0;
            assert!((u.components()[0] - t.cos()).abs() < 1e-15);
            assert!((u.components()[1] - t.sin()).abs() < 1e-15);
            assert_eq!(w, 0.125);
        }
    }

    #[test]
    fn sphere_grid_weight_moments() {
        let g = build_grid(3, 16, 8).unwrap();
        let total: f64 = g.nodes().map(|(_, w)| w).sum();
        let first: f64 = g.nodes().map(|(u, w)| w * u.components()[2]).sum();
        assert!((total - 1.0).abs() < 1e-14);
        assert!(first.abs() < 1e-14);
        assert!(g.nodes().all(|(_, w)| w > 0.0));
        // E[z²] = 1/3 for the uniform measure.
        let second: f64 = g.nodes().map(|(u, w)| w * u.components()[2].powi(2)).sum();
        assert!((second - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn undersized_orders_rejected() {
        assert!(build_grid(2, 7, 0).is_err());
        assert!(build_grid(3, 8, 3).is_err());
        assert!(build_grid(1, 8, 8).is_err());
        assert!(build_grid(3, 8, 4).is_ok());
    }

    #[test]
    fn coarsened_halves_orders() {
        let g = build_grid(3, 64, 32).unwrap().coarsened();
        assert_eq!((g.n_theta(), g.n_phi()), (32, 16));
        let g = build_grid(2, 64, 0).unwrap().coarsened();
        assert_eq!((g.n_theta(), g.n_phi()), (32, 1));
    }
}
