//! Estimators of `E[w^k]` under the uniform direction distribution.

use serde::Serialize;

use crate::geometry::Polytope;
use crate::quadrature::QuadratureGrid;
use crate::reduce;
use crate::rng::uniform_direction_stream;
use crate::{Error, Result};

pub const MIN_MONTE_CARLO_SAMPLES: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentMethod {
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub value: f64,
    pub k: u32,
    pub method: MomentMethod,
    /// Half-resolution delta for quadrature, standard error for Monte Carlo.
    pub error_estimate: f64,
    /// Width evaluations performed.
    pub evaluations: u64,
    pub seed: Option<u64>,
}

fn grid_average(p: &Polytope, k: u32, grid: &QuadratureGrid) -> f64 {
    let k = k as i32;
    reduce::sum(grid.len(), |i| {
        let (u, w) = grid.node_xyz(i);
        w * p.width_fast(&u).powi(k)
    })
}

/// Weighted grid average of `width^k`, with the difference from the same
/// rule at half the order as the error estimate.
pub fn moment_quadrature(p: &Polytope, k: u32, grid: &QuadratureGrid) -> Result<MomentEstimate> {
    if grid.dimension() != p.dimension() {
        return Err(Error::DimensionMismatch {
            polytope: p.dimension(),
            direction: grid.dimension(),
        });
    }
    let coarse = grid.coarsened();
    let value = grid_average(p, k, grid);
    let half = grid_average(p, k, &coarse);
    Ok(MomentEstimate {
        value,
        k,
        method: MomentMethod::Quadrature,
        error_estimate: (value - half).abs(),
        evaluations: (grid.len() + coarse.len()) as u64,
        seed: None,
    })
}

/// Sample mean of `width^k` over the first `n` directions of the seeded
/// stream. Bit-identical for any rayon thread count.
pub fn moment_monte_carlo(p: &Polytope, k: u32, n: u64, seed: u64) -> Result<MomentEstimate> {
    if n < MIN_MONTE_CARLO_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "Monte Carlo needs at least {MIN_MONTE_CARLO_SAMPLES} samples, got {n}"
        )));
    }
    let count = usize::try_from(n)
        .map_err(|_| Error::InvalidArgument(format!("sample count {n} is too large")))?;
    let stream = uniform_direction_stream(p.dimension(), seed)?;
    let k = k as i32;
    let stats = reduce::stats(count, |i| {
        p.width_fast(&stream.get(i as u64).xyz()).powi(k)
    });
    Ok(MomentEstimate {
        value: stats.mean,
        k: k as u32,
        method: MomentMethod::MonteCarlo,
        error_estimate: (stats.variance() / n as f64).sqrt(),
        evaluations: n,
        seed: Some(seed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{reference_moment, CanonicalBody::*};
    use crate::quadrature::build_grid;

    #[test]
    fn zeroth_moment_is_one() {
        for body in [Triangle, Square, Tetrahedron, Cube] {
            let grid = build_grid(body.dimension(), 64, 32).unwrap();
            let m = moment_quadrature(&body.polytope(), 0, &grid).unwrap();
            assert!((m.value - 1.0).abs() <= 1e-14, "{body}: {}", m.value);
        }
    }

    #[test]
    fn square_mean_square_converges() {
        let grid = build_grid(2, 65_536, 0).unwrap();
        let m = moment_quadrature(&Square.polytope(), 2, &grid).unwrap();
        let r = reference_moment(Square, 2).unwrap().value;
        assert!(((m.value - r) / r).abs() <= 1e-8);
        assert_eq!(m.evaluations, 65_536 + 32_768);
        assert_eq!(m.method, MomentMethod::Quadrature);
        assert_eq!(m.seed, None);
    }

    #[test]
    fn grid_dimension_must_match() {
        let grid = build_grid(2, 64, 0).unwrap();
        assert!(matches!(
            moment_quadrature(&Cube.polytope(), 1, &grid),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn monte_carlo_small_run() {
        let m = moment_monte_carlo(&Triangle.polytope(), 2, 1_000_000, 7).unwrap();
        let r = reference_moment(Triangle, 2).unwrap().value;
        assert!((m.value - r).abs() <= 4.0 * m.error_estimate);
        assert_eq!(m.seed, Some(7));
        assert_eq!(m.evaluations, 1_000_000);
        assert!(moment_monte_carlo(&Triangle.polytope(), 2, 99, 7).is_err());
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let p = Cube.polytope();
        let a = moment_monte_carlo(&p, 3, 10_000, 5).unwrap();
        let b = moment_monte_carlo(&p, 3, 10_000, 5).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.error_estimate.to_bits(), b.error_estimate.to_bits());
    }

    #[test]
    fn scaling_multiplies_moments() {
        let grid = build_grid(3, 64, 32).unwrap();
        let p = Tetrahedron.polytope();
        let q = p.scaled(2.5).unwrap();
        for k in 1..=3 {
            let a = moment_quadrature(&p, k, &grid).unwrap().value;
            let b = moment_quadrature(&q, k, &grid).unwrap().value;
            assert!((b / (a * 2.5f64.powi(k as i32)) - 1.0).abs() <= 1e-12);
        }
    }
}
