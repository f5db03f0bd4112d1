//! Closed-form sector decomposition of the regular tetrahedron's mean
//! square width.
//!
//! In the reference frame (vertices on the unit sphere) the squared raw width
//! is the maximum of six quadratic forms `g_1..g_6`, one per edge. The terms
//! are numbered by probe-sphere order top, front, left, right, where the
//! left sphere sits at the fourth vertex, so in vertex numbering they are
//! the edges (1,2), (1,4), (1,3), (2,4), (2,3), (3,4). On the cell
//! `0 ≤ θ ≤ π/3, φ_b(θ) ≤ φ ≤ π` only `g_1` is active; the cell boundary
//! `φ_b` is where `g_1 = g_4`. The inner φ-integral over the cell has a
//! closed form, and 24 copies of the cell carry the whole integral.

use std::f64::consts::{FRAC_PI_3, PI, SQRT_2};

use serde::Serialize;

use crate::canonical::{reference_moment, CanonicalBody};
use crate::integrate::adaptive;
use crate::Result;

const S3: f64 = 1.732_050_807_568_877_2;
const S6: f64 = 2.449_489_742_783_178;

/// Number of congruent cells carrying equal shares of the integral.
pub const SYMMETRY_FACTOR: u32 = 24;

/// Raw-to-unit-edge factor on squared widths: `(2 √(2/3))² = 8/3`.
const EDGE_SQ: f64 = 8.0 / 3.0;

/// Absolute tolerance of the outer θ-integration.
pub const THETA_TOLERANCE: f64 = 1e-12;

/// One of the six edge terms, indexed 1..=6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GTerm(u8);

impl GTerm {
    pub const ALL: [GTerm; 6] = [GTerm(1), GTerm(2), GTerm(3), GTerm(4), GTerm(5), GTerm(6)];

    pub fn new(index: u8) -> Option<Self> {
        (1..=6).contains(&index).then_some(Self(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// Zero-based vertex pair whose squared projection this term is.
    pub fn pair(self) -> (usize, usize) {
        [(0, 1), (0, 3), (0, 2), (1, 3), (1, 2), (2, 3)][self.0 as usize - 1]
    }

    pub fn eval(self, a: f64, b: f64, c: f64) -> f64 {
        g_terms(a, b, c)[self.0 as usize - 1]
    }
}

/// All six terms at the direction `(a, b, c)`.
pub fn g_terms(a: f64, b: f64, c: f64) -> [f64; 6] {
    let r = SQRT_2 * a + 4.0 * c;
    [
        8.0 / 9.0 * (a * a - 2.0 * SQRT_2 * a * c + 2.0 * c * c),
        (r + S6 * b).powi(2) / 9.0,
        (r - S6 * b).powi(2) / 9.0,
        2.0 / 3.0 * (3.0 * a * a + 2.0 * S3 * a * b + b * b),
        2.0 / 3.0 * (3.0 * a * a - 2.0 * S3 * a * b + b * b),
        8.0 / 3.0 * b * b,
    ]
}

fn direction(theta: f64, phi: f64) -> (f64, f64, f64) {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    (ct * sp, st * sp, cp)
}

fn terms_at(theta: f64, phi: f64) -> [f64; 6] {
    let (a, b, c) = direction(theta, phi);
    g_terms(a, b, c)
}

/// `h(θ) = (cos θ + √3 sin θ + √(10 − cos 2θ + √3 sin 2θ)) / (2√2)`.
pub fn h_theta(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let (s2, c2) = (2.0 * theta).sin_cos();
    (c + S3 * s + (10.0 - c2 + S3 * s2).sqrt()) / (2.0 * SQRT_2)
}

/// Polar angle where `g_1 = g_4`: `2 arctan h(θ)`.
pub fn phi_boundary(theta: f64) -> f64 {
    2.0 * h_theta(theta).atan()
}

/// Index of the largest term; ties within 1e-12 go to the lowest index.
pub fn active_term(theta: f64, phi: f64) -> GTerm {
    let g = terms_at(theta, phi);
    let top = g.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let i = g.iter().position(|&x| x >= top - 1e-12).unwrap_or(0);
    GTerm(i as u8 + 1)
}

/// `√(3g/8)`: the unit-edge width along `(θ, φ)`.
pub fn surface_height(theta: f64, phi: f64) -> f64 {
    let g = terms_at(theta, phi);
    (g.iter().copied().fold(0.0, f64::max) / EDGE_SQ).sqrt()
}

/// `(3/8)(1/(4π)) g_1 sin φ`: the normalized mean-square integrand on the
/// active cell.
pub fn cell_integrand(theta: f64, phi: f64) -> f64 {
    let g1 = terms_at(theta, phi)[0];
    g1 * phi.sin() / (EDGE_SQ * 4.0 * PI)
}

/// Antiderivative of [`cell_integrand`] in φ.
pub fn antiderivative(theta: f64, phi: f64) -> f64 {
    let c2t = (2.0 * theta).cos();
    let sp = phi.sin();
    ((-3.0 + c2t) * (3.0 * phi).cos()
        - 3.0 * (7.0 + 3.0 * c2t) * phi.cos()
        - 16.0 * SQRT_2 * theta.cos() * sp * sp * sp)
        / (288.0 * PI)
}

/// `∫_{φ_b(θ)}^{π} cell_integrand(θ, φ) dφ` in closed form.
pub fn sector_inner_integral(theta: f64) -> f64 {
    let h = h_theta(theta);
    let h2 = h * h;
    let c2t = (2.0 * theta).cos();
    let num = 6.0 * h2 * h2
        + 8.0 * SQRT_2 * h2 * h * theta.cos()
        + 3.0 * h2 * (1.0 + c2t)
        + (3.0 + c2t);
    num / (18.0 * PI * (1.0 + h2).powi(3))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectorReport {
    pub phi_at_0: f64,
    pub phi_at_pi3: f64,
    /// `∫_0^{π/3} sector_inner_integral`.
    pub sector_integral: f64,
    /// Estimated error of `sector_integral`.
    pub sector_error: f64,
    pub symmetry_factor: u32,
    pub assembled_mean_square: f64,
    pub reference: f64,
    pub difference: f64,
}

/// Integrates the closed-form inner integral over `[0, π/3]` and scales by
/// the cell count.
pub fn mean_square_width_analytic() -> Result<SectorReport> {
    let outer = adaptive(sector_inner_integral, 0.0, FRAC_PI_3, THETA_TOLERANCE)?;
    let assembled = SYMMETRY_FACTOR as f64 * outer.value;
    let reference = reference_moment(CanonicalBody::Tetrahedron, 2)?.value;
    Ok(SectorReport {
        phi_at_0: phi_boundary(0.0),
        phi_at_pi3: phi_boundary(FRAC_PI_3),
        sector_integral: outer.value,
        sector_error: outer.error,
        symmetry_factor: SYMMETRY_FACTOR,
        assembled_mean_square: assembled,
        reference,
        difference: assembled - reference,
    })
}
