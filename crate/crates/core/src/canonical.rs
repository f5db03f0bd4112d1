//! The four reference bodies and their closed-form width moments.
//!
//! Each body is built in a frame where every vertex lies on the unit circle
//! or sphere centred at the origin; `edge_norm` is the raw edge length, so
//! normalized widths refer to the unit-edge body.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::geometry::Polytope;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CanonicalBody {
    Triangle,
    Square,
    #[serde(rename = "tetra")]
    Tetrahedron,
    Cube,
}

impl CanonicalBody {
    pub const ALL: [CanonicalBody; 4] = [Self::Triangle, Self::Square, Self::Tetrahedron, Self::Cube];

    /// Identifier used on the command line and in JSON output.
    pub fn name(self) -> &'static str {
        match self {
            Self::Triangle => "triangle",
            Self::Square => "square",
            Self::Tetrahedron => "tetra",
            Self::Cube => "cube",
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            Self::Triangle | Self::Square => 2,
            Self::Tetrahedron | Self::Cube => 3,
        }
    }

    /// Raw edge length of the reference frame.
    pub fn edge_norm(self) -> f64 {
        match self {
            Self::Triangle => 3f64.sqrt(),
            Self::Square => 2f64.sqrt(),
            Self::Tetrahedron => 2.0 * (2.0f64 / 3.0).sqrt(),
            Self::Cube => 2.0 / 3f64.sqrt(),
        }
    }

    /// Reference-frame vertices, in the fixed order the pairwise tables use.
    pub fn vertices(self) -> Vec<Vec<f64>> {
        let s2 = 2f64.sqrt();
        let s3 = 3f64.sqrt();
        match self {
            Self::Triangle => vec![
                vec![0.0, 1.0],
                vec![s3 / 2.0, -0.5],
                vec![-s3 / 2.0, -0.5],
            ],
            Self::Square => {
                let h = s2 / 2.0;
                vec![vec![h, h], vec![h, -h], vec![-h, h], vec![-h, -h]]
            }
            Self::Tetrahedron => {
                let y = (2.0f64 / 3.0).sqrt();
                vec![
                    vec![0.0, 0.0, 1.0],
                    vec![2.0 * s2 / 3.0, 0.0, -1.0 / 3.0],
                    vec![-s2 / 3.0, y, -1.0 / 3.0],
                    vec![-s2 / 3.0, -y, -1.0 / 3.0],
                ]
            }
            Self::Cube => {
                let c = s3 / 3.0;
                let mut out = Vec::with_capacity(8);
                for x in [c, -c] {
                    for y in [c, -c] {
                        for z in [c, -c] {
                            out.push(vec![x, y, z]);
                        }
                    }
                }
                out
            }
        }
    }

    pub fn polytope(self) -> Polytope {
        Polytope::new(self.dimension(), &self.vertices(), self.edge_norm())
            .expect("reference bodies are valid")
    }
}

impl fmt::Display for CanonicalBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CanonicalBody {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangle" => Ok(Self::Triangle),
            "square" => Ok(Self::Square),
            "tetra" | "tetrahedron" => Ok(Self::Tetrahedron),
            "cube" => Ok(Self::Cube),
            other => Err(Error::InvalidArgument(format!(
                "unknown body `{other}` (expected triangle, square, tetra or cube)"
            ))),
        }
    }
}

/// Closed-form `E[w^k]` for a unit-edge reference body.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceMoment {
    pub body: CanonicalBody,
    pub order: u32,
    pub value: f64,
    pub formula: &'static str,
}

pub fn reference_moment(body: CanonicalBody, k: u32) -> Result<ReferenceMoment> {
    use CanonicalBody::*;
    let s3 = 3f64.sqrt();
    let (value, formula) = match (body, k) {
        (Triangle, 1) => (3.0 / PI, "3/pi"),
        (Triangle, 2) => (0.5 * (1.0 + 3.0 * s3 / (2.0 * PI)), "(1/2)(1 + 3 sqrt(3)/(2 pi))"),
        (Square, 1) => (4.0 / PI, "4/pi"),
        (Square, 2) => (1.0 + 2.0 / PI, "1 + 2/pi"),
        (Tetrahedron, 1) => (3.0 / (2.0 * PI) * (-1.0f64 / 3.0).acos(), "(3/(2 pi)) arccos(-1/3)"),
        (Tetrahedron, 2) => ((1.0 + (3.0 + s3) / PI) / 3.0, "(1/3)(1 + (3 + sqrt(3))/pi)"),
        (Cube, 1) => (1.5, "3/2"),
        (Cube, 2) => (1.0 + 4.0 / PI, "1 + 4/pi"),
        _ => return Err(Error::NotAvailable { body: body.name(), k }),
    };
    Ok(ReferenceMoment {
        body,
        order: k,
        value,
        formula,
    })
}

/// Closed-form pairwise tables `(t_i - t_j)^2` of the reference bodies, as
/// functions of the direction components `(a, b)` or `(a, b, c)`, together
/// with their reduced forms.
///
/// Every expression assumes a unit direction. Tetrahedron terms live in
/// [`crate::tetra`].
pub mod pairwise {
    const S3: f64 = 1.732_050_807_568_877_2;

    /// Triangle table, pairs (1,2), (1,3), (2,3).
    pub fn triangle_terms(a: f64, b: f64) -> [f64; 3] {
        [
            0.25 * (3.0 - 6.0 * S3 * a * b + 6.0 * b * b),
            0.75 * (1.0 + 2.0 * S3 * a * b + 2.0 * b * b),
            3.0 * a * a,
        ]
    }

    /// The four distinct square entries `2a², 2b², 2(1+2ab), 2(1-2ab)`.
    pub fn square_terms(a: f64, b: f64) -> [f64; 4] {
        [
            2.0 * a * a,
            2.0 * b * b,
            2.0 * (1.0 + 2.0 * a * b),
            2.0 * (1.0 - 2.0 * a * b),
        ]
    }

    /// Two-term form of the square's maximum.
    pub fn square_reduced(a: f64, b: f64) -> f64 {
        (2.0 * (1.0 + 2.0 * a * b)).max(2.0 * (1.0 - 2.0 * a * b))
    }

    /// The thirteen distinct expressions among the cube's 28 pairs.
    pub fn cube_terms(a: f64, b: f64, c: f64) -> [f64; 13] {
        let k = 4.0 / 3.0;
        [
            k * a * a,
            k * b * b,
            k * c * c,
            k * (1.0 + 2.0 * a * b - c * c),
            k * (1.0 + 2.0 * a * c - b * b),
            k * (1.0 - 2.0 * a * b - c * c),
            k * (1.0 - 2.0 * a * c - b * b),
            k * (b + c) * (b + c),
            k * (b - c) * (b - c),
            k * (1.0 + 2.0 * a * b + 2.0 * a * c + 2.0 * b * c),
            k * (1.0 + 2.0 * a * b - 2.0 * a * c - 2.0 * b * c),
            k * (1.0 - 2.0 * a * b - 2.0 * a * c + 2.0 * b * c),
            k * (1.0 - 2.0 * a * b + 2.0 * a * c - 2.0 * b * c),
        ]
    }

    /// Four-term form of the cube's maximum (the space diagonals).
    pub fn cube_reduced(a: f64, b: f64, c: f64) -> f64 {
        cube_terms(a, b, c)[9..].iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_of(terms: &[f64]) -> f64 {
        terms.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}
