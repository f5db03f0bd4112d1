//! Exact width evaluation for vertex-described polytopes.
//!
//! Three routes compute the same number and are kept independent so they can
//! check each other:
//!
//! - the support function, `w(u) = h(u) + h(-u)` with `h(u) = max_i <v_i, u>`;
//! - the pairwise projection maximum `g(u) = max_{i<j} <v_i - v_j, u>^2`, whose
//!   square root is the raw width;
//! - the ball-union chord: each vertex `v` spawns the ball with diameter
//!   `[0, v]`, the line `t u` meets that ball at `t = 0` and one other root,
//!   and the spread of those roots is the raw width.
//!
//! Coordinates are stored padded to three components (`z = 0` in the plane)
//! so the hot loops never branch on dimension.

use std::ops::Neg;

use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Allowed deviation of a direction's norm from 1.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// Vertices closer than this (Euclidean) are merged on construction.
pub const DEDUP_TOLERANCE: f64 = 1e-12;

/// Maxima within this of each other count as ties; the lexicographically
/// smallest index pair wins.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// A point on the unit circle (2D) or unit sphere (3D).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitDirection {
    dim: usize,
    xyz: [f64; 3],
}

impl UnitDirection {
    /// Wraps components that already have unit norm.
    pub fn new(components: &[f64]) -> Result<Self> {
        let xyz = pad(components)?;
        let norm = norm3(&xyz);
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::NotUnit(norm));
        }
        Ok(Self {
            dim: components.len(),
            xyz,
        })
    }

    /// Scales a non-zero vector onto the unit sphere.
    pub fn normalize(components: &[f64]) -> Result<Self> {
        let xyz = pad(components)?;
        if xyz.iter().any(|c| !c.is_finite()) {
            return Err(Error::NotUnit(f64::NAN));
        }
        let norm = norm3(&xyz);
        if norm == 0.0 {
            return Err(Error::ZeroDirection);
        }
        Ok(Self {
            dim: components.len(),
            xyz: [xyz[0] / norm, xyz[1] / norm, xyz[2] / norm],
        })
    }

    /// `(cos θ, sin θ)`.
    pub fn planar(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            dim: 2,
            xyz: [c, s, 0.0],
        }
    }

    /// `(cos θ sin φ, sin θ sin φ, cos φ)`, with φ the polar angle from +z.
    pub fn spherical(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self {
            dim: 3,
            xyz: [ct * sp, st * sp, cp],
        }
    }

    /// `(√(1-z²) cos θ, √(1-z²) sin θ, z)` for `z ∈ [-1, 1]`.
    pub fn cylindrical(theta: f64, z: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let r = (1.0 - z * z).max(0.0).sqrt();
        Self {
            dim: 3,
            xyz: [r * ct, r * st, z],
        }
    }

    pub(crate) fn from_xyz_unchecked(dim: usize, xyz: [f64; 3]) -> Self {
        Self { dim, xyz }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[f64] {
        &self.xyz[..self.dim]
    }

    /// Components padded with zeros to length 3.
    pub fn xyz(&self) -> [f64; 3] {
        self.xyz
    }
}

impl Neg for UnitDirection {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            dim: self.dim,
            xyz: [-self.xyz[0], -self.xyz[1], -self.xyz[2]],
        }
    }
}

impl Serialize for UnitDirection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.components().serialize(serializer)
    }
}

/// Width of a polytope in one direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WidthEvaluation {
    /// `raw_width / edge_norm`.
    pub width: f64,
    /// Width in the polytope's own coordinates.
    pub raw_width: f64,
    /// Zero-based `(i, j)` maximizing `<v_i - v_j, u>`.
    pub achieving_pair: (usize, usize),
}

/// A convex polytope given by a vertex list (interior points are harmless).
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<[f64; 3]>,
    edge_norm: f64,
}

impl Polytope {
    /// Validates and stores the vertex list.
    ///
    /// Vertices within [`DEDUP_TOLERANCE`] of an earlier vertex are dropped.
    /// `edge_norm` divides every raw width; pass 1 for bodies already in the
    /// units you want.
    pub fn new<V: AsRef<[f64]>>(dimension: usize, vertices: &[V], edge_norm: f64) -> Result<Self> {
        if !(2..=3).contains(&dimension) {
            return Err(Error::UnsupportedDimension(dimension));
        }
        if !(edge_norm.is_finite() && edge_norm > 0.0) {
            return Err(Error::InvalidEdgeNorm(edge_norm));
        }
        let mut kept: Vec<[f64; 3]> = Vec::with_capacity(vertices.len());
        for (index, v) in vertices.iter().enumerate() {
            let v = v.as_ref();
            if v.len() != dimension {
                return Err(Error::VertexArity {
                    index,
                    found: v.len(),
                    expected: dimension,
                });
            }
            if v.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite(index));
            }
            let p = pad(v)?;
            if kept.iter().all(|q| dist3(q, &p) > DEDUP_TOLERANCE) {
                kept.push(p);
            }
        }
        if kept.len() < 2 {
            return Err(Error::TooFewVertices(kept.len()));
        }
        Ok(Self {
            dim: dimension,
            vertices: kept,
            edge_norm,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn edge_norm(&self) -> f64 {
        self.edge_norm
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Vertex `i` without the padding.
    pub fn vertex(&self, i: usize) -> &[f64] {
        &self.vertices[i][..self.dim]
    }

    pub fn vertices(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.vertices.iter().map(move |v| &v[..self.dim])
    }

    /// Same body shifted by `offset`.
    pub fn translated(&self, offset: &[f64]) -> Result<Self> {
        if offset.len() != self.dim {
            return Err(Error::DimensionMismatch {
                polytope: self.dim,
                direction: offset.len(),
            });
        }
        let off = pad(offset)?;
        let moved: Vec<Vec<f64>> = self
            .vertices()
            .map(|v| v.iter().zip(off).map(|(a, b)| a + b).collect())
            .collect();
        Self::new(self.dim, &moved, self.edge_norm)
    }

    /// Vertices multiplied by `factor`; `edge_norm` is kept, so widths scale.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let moved: Vec<Vec<f64>> = self
            .vertices()
            .map(|v| v.iter().map(|c| c * factor).collect())
            .collect();
        Self::new(self.dim, &moved, self.edge_norm)
    }

    /// Vertices mapped by the row-major matrix `m` (only the leading
    /// `dimension × dimension` block is used).
    pub fn transformed(&self, m: &[[f64; 3]; 3]) -> Result<Self> {
        let moved: Vec<Vec<f64>> = self
            .vertices
            .iter()
            .map(|v| (0..self.dim).map(|r| (0..self.dim).map(|c| m[r][c] * v[c]).sum()).collect())
            .collect();
        Self::new(self.dim, &moved, self.edge_norm)
    }

    fn check(&self, u: &UnitDirection) -> Result<()> {
        if u.dim != self.dim {
            return Err(Error::DimensionMismatch {
                polytope: self.dim,
                direction: u.dim,
            });
        }
        Ok(())
    }

    /// Support function `max_i <v_i, u>`.
    pub fn support(&self, u: &UnitDirection) -> Result<f64> {
        self.support_index(u).map(|(h, _)| h)
    }

    /// Support value and the first vertex attaining it.
    pub fn support_index(&self, u: &UnitDirection) -> Result<(f64, usize)> {
        self.check(u)?;
        let mut best = (f64::NEG_INFINITY, 0);
        for (i, v) in self.vertices.iter().enumerate() {
            let p = dot3(v, &u.xyz);
            if p > best.0 {
                best = (p, i);
            }
        }
        Ok(best)
    }

    /// Width orthogonal to `u`, normalized by `edge_norm`.
    pub fn width(&self, u: &UnitDirection) -> Result<WidthEvaluation> {
        self.check(u)?;
        let proj: Vec<f64> = self.vertices.iter().map(|v| dot3(v, &u.xyz)).collect();
        let hi = proj.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = proj.iter().copied().fold(f64::INFINITY, f64::min);
        // h(u) + h(-u); -lo is exactly max <v, -u>.
        let raw_width = hi + -lo;

        let i = proj
            .iter()
            .position(|&p| p - lo >= raw_width - TIE_TOLERANCE)
            .unwrap_or(0);
        let j = proj
            .iter()
            .enumerate()
            .position(|(j, &p)| j != i && proj[i] - p >= raw_width - TIE_TOLERANCE)
            .unwrap_or(if i == 0 { 1 } else { 0 });

        Ok(WidthEvaluation {
            width: raw_width / self.edge_norm,
            raw_width,
            achieving_pair: (i, j),
        })
    }

    /// Normalized width without the dimension check or pair bookkeeping.
    #[inline]
    pub(crate) fn width_fast(&self, u: &[f64; 3]) -> f64 {
        let mut hi = f64::NEG_INFINITY;
        let mut lo = f64::INFINITY;
        for v in &self.vertices {
            let p = dot3(v, u);
            hi = hi.max(p);
            lo = lo.min(p);
        }
        (hi + -lo) / self.edge_norm
    }

    /// `max_{i<j} <v_i - v_j, u>^2` in raw coordinates, with the zero-based
    /// pair attaining it.
    pub fn g_max(&self, u: &UnitDirection) -> Result<(f64, (usize, usize))> {
        self.check(u)?;
        let n = self.vertices.len();
        let mut sq = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let d = sub3(&self.vertices[i], &self.vertices[j]);
                let p = dot3(&d, &u.xyz);
                sq.push(((i, j), p * p));
            }
        }
        let g = sq.iter().map(|&(_, s)| s).fold(0.0, f64::max);
        let pair = sq
            .iter()
            .find(|&&(_, s)| s >= g - TIE_TOLERANCE)
            .map(|&(p, _)| p)
            .unwrap_or((0, 1));
        Ok((g, pair))
    }

    /// Raw width via the union of balls with diameters `[0, v_i]`.
    ///
    /// The line is parameterized by arclength `t`, so no direction component
    /// needs to be nonzero. Each ball meets the line at the roots of
    /// `t² - 2 t <c, u> + |c|² - r² = 0` with `c = v/2`, `r = |v|/2`; the
    /// root farther from 0 is the nontrivial intersection.
    pub fn ball_union_chord(&self, u: &UnitDirection) -> Result<f64> {
        self.check(u)?;
        let mut t_max = f64::NEG_INFINITY;
        let mut t_min = f64::INFINITY;
        for v in &self.vertices {
            let centre = [0.5 * v[0], 0.5 * v[1], 0.5 * v[2]];
            let radius = 0.5 * norm3(v);
            let b = dot3(&centre, &u.xyz);
            let q = dot3(&centre, &centre) - radius * radius;
            let disc = (b * b - q).max(0.0);
            let t = b + b.signum() * disc.sqrt();
            // b == 0: both roots collapse onto the origin.
            let t = if b == 0.0 { 0.0 } else { t };
            t_max = t_max.max(t);
            t_min = t_min.min(t);
        }
        Ok(t_max - t_min)
    }

    /// Largest vertex-to-vertex distance, normalized by `edge_norm`.
    pub fn diameter(&self) -> f64 {
        let n = self.vertices.len();
        let mut best = 0.0_f64;
        for i in 0..n {
            for j in i + 1..n {
                best = best.max(dist3(&self.vertices[i], &self.vertices[j]));
            }
        }
        best / self.edge_norm
    }
}

fn pad(components: &[f64]) -> Result<[f64; 3]> {
    match *components {
        [x, y] => Ok([x, y, 0.0]),
        [x, y, z] => Ok([x, y, z]),
        _ => Err(Error::UnsupportedDimension(components.len())),
    }
}

#[inline]
pub(crate) fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
fn sub3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
fn norm3(a: &[f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

#[inline]
fn dist3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    norm3(&sub3(a, b))
}
