//! Reproduces every closed-form constant and structural identity in one run.

use std::fmt;

use anyhow::Result;
use serde::Serialize;
use widthlab::canonical::pairwise;
use widthlab::{
    build_grid, mean_square_width_analytic, moment_quadrature, reference_moment,
    uniform_direction_stream, CanonicalBody, Polytope,
};

pub const MOMENT_REL_TOL: f64 = 5e-6;
pub const ANALYTIC_TOL: f64 = 1e-9;
pub const IDENTITY_TOL: f64 = 1e-12;
pub const SWEEP_DIRECTIONS: u64 = 10_000;
pub const SWEEP_SEED: u64 = 2011;
pub const GRID_3D: (usize, usize) = (2048, 1024);
pub const GRID_2D: usize = 65_536;

/// Published four-decimal values of the sector boundary at θ = 0 and π/3.
/// They are truncated, not rounded.
pub const PHI_AT_0_PUBLISHED: f64 = 1.9106;
pub const PHI_AT_PI3_PUBLISHED: f64 = 2.1862;

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRow {
    pub name: String,
    pub computed: f64,
    pub reference: f64,
    /// Relative for moment rows, absolute otherwise.
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub pass: bool,
}

impl VerifyRow {
    fn absolute(name: impl Into<String>, computed: f64, reference: f64, tolerance: f64) -> Self {
        let deviation = (computed - reference).abs();
        Self {
            name: name.into(),
            computed,
            reference,
            deviation,
            tolerance,
            pass: deviation <= tolerance,
        }
    }

    fn relative(name: impl Into<String>, computed: f64, reference: f64, tolerance: f64) -> Self {
        let deviation = ((computed - reference) / reference).abs();
        Self {
            name: name.into(),
            computed,
            reference,
            deviation,
            tolerance,
            pass: deviation <= tolerance,
        }
    }

    /// `computed` truncated to four decimals must equal `reference`.
    fn truncated(name: impl Into<String>, computed: f64, reference: f64) -> Self {
        let deviation = computed - reference;
        Self {
            name: name.into(),
            computed,
            reference,
            deviation,
            tolerance: 1e-4,
            pass: (0.0..1e-4).contains(&deviation),
        }
    }
}

/// Quadrature grid used for a body's moment rows.
pub fn reference_grid(body: CanonicalBody) -> Result<widthlab::QuadratureGrid> {
    Ok(match body.dimension() {
        2 => build_grid(2, GRID_2D, 0)?,
        _ => build_grid(3, GRID_3D.0, GRID_3D.1)?,
    })
}

/// Largest disagreement among the three width routes.
pub fn oracle_sweep(p: &Polytope, n: u64, seed: u64) -> Result<f64> {
    let stream = uniform_direction_stream(p.dimension(), seed)?;
    let mut worst = 0.0_f64;
    for i in 0..n {
        let u = stream.get(i);
        let raw = p.width(&u)?.raw_width;
        let (g, _) = p.g_max(&u)?;
        let chord = p.ball_union_chord(&u)?;
        worst = worst.max((g.sqrt() - raw).abs()).max((chord - raw).abs());
    }
    Ok(worst)
}

/// Largest gap between the full and reduced pairwise maxima of the square
/// and the cube.
pub fn simplification_sweep(body: CanonicalBody, n: u64, seed: u64) -> Result<f64> {
    let stream = uniform_direction_stream(body.dimension(), seed)?;
    let mut worst = 0.0_f64;
    for i in 0..n {
        let [a, b, c] = stream.get(i).xyz();
        let gap = match body {
            CanonicalBody::Square => {
                pairwise::max_of(&pairwise::square_terms(a, b)) - pairwise::square_reduced(a, b)
            }
            CanonicalBody::Cube => {
                pairwise::max_of(&pairwise::cube_terms(a, b, c)) - pairwise::cube_reduced(a, b, c)
            }
            _ => anyhow::bail!("no reduced form for {body}"),
        };
        worst = worst.max(gap.abs());
    }
    Ok(worst)
}

pub fn run() -> Result<VerifyReport> {
    let mut rows = Vec::new();

    for body in CanonicalBody::ALL {
        let p = body.polytope();
        let grid = reference_grid(body)?;
        for k in [1, 2] {
            let reference = reference_moment(body, k)?;
            let est = moment_quadrature(&p, k, &grid)?;
            let label = if k == 1 { "E[w]" } else { "E[w^2]" };
            rows.push(VerifyRow::relative(
                format!("{body} {label} quadrature"),
                est.value,
                reference.value,
                MOMENT_REL_TOL,
            ));
        }
    }

    let sector = mean_square_width_analytic()?;
    rows.push(VerifyRow::absolute(
        "tetra analytic E[w^2]",
        sector.assembled_mean_square,
        sector.reference,
        ANALYTIC_TOL,
    ));
    rows.push(VerifyRow::truncated("tetra phi_b(0)", sector.phi_at_0, PHI_AT_0_PUBLISHED));
    rows.push(VerifyRow::truncated(
        "tetra phi_b(pi/3)",
        sector.phi_at_pi3,
        PHI_AT_PI3_PUBLISHED,
    ));

    rows.push(VerifyRow::absolute(
        "square 4->2 term max",
        simplification_sweep(CanonicalBody::Square, SWEEP_DIRECTIONS, SWEEP_SEED)?,
        0.0,
        IDENTITY_TOL,
    ));
    rows.push(VerifyRow::absolute(
        "cube 13->4 term max",
        simplification_sweep(CanonicalBody::Cube, SWEEP_DIRECTIONS, SWEEP_SEED)?,
        0.0,
        IDENTITY_TOL,
    ));

    for body in CanonicalBody::ALL {
        rows.push(VerifyRow::absolute(
            format!("{body} oracle equivalence"),
            oracle_sweep(&body.polytope(), SWEEP_DIRECTIONS, SWEEP_SEED)?,
            0.0,
            IDENTITY_TOL,
        ));
    }

    let pass = rows.iter().all(|r| r.pass);
    Ok(VerifyReport { rows, pass })
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<32} {:>24} {:>24} {:>10} {:>8}  status",
            "check", "computed", "reference", "deviation", "tol"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<32} {:>24.16e} {:>24.16e} {:>10.2e} {:>8.0e}  {}",
                r.name,
                r.computed,
                r.reference,
                r.deviation,
                r.tolerance,
                if r.pass { "PASS" } else { "FAIL" }
            )?;
        }
        write!(f, "overall: {}", if self.pass { "PASS" } else { "FAIL" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_rule() {
        assert!(VerifyRow::truncated("a", 2.18627, 2.1862).pass);
        assert!(!VerifyRow::truncated("a", 2.18619, 2.1862).pass);
        assert!(!VerifyRow::truncated("a", 2.1863, 2.1862).pass);
    }

    #[test]
    fn sweeps_are_tight() {
        assert!(simplification_sweep(CanonicalBody::Cube, 500, 1).unwrap() <= IDENTITY_TOL);
        assert!(simplification_sweep(CanonicalBody::Triangle, 10, 1).is_err());
        let p = CanonicalBody::Tetrahedron.polytope();
        assert!(oracle_sweep(&p, 500, 1).unwrap() <= IDENTITY_TOL);
    }

    #[test]
    fn report_fails_if_any_row_fails() {
        let mut report = VerifyReport {
            rows: vec![
                VerifyRow::absolute("ok", 1.0, 1.0, 0.0),
                VerifyRow::absolute("bad", 1.0, 2.0, 0.5),
            ],
            pass: true,
        };
        report.pass = report.rows.iter().all(|r| r.pass);
        assert!(!report.pass);
        assert!(report.to_string().contains("FAIL"));
    }
}
