//! Empirical width distribution: samples, histogram, ECDF, and the support
//! interval `[min width, diameter]`.

use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::{Polytope, UnitDirection};
use crate::rng::uniform_direction_stream;
use crate::{Error, Result};

/// Normalized widths along the first `n` directions of a seeded stream.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthSampleSet {
    pub description: String,
    pub seed: u64,
    pub samples: Vec<f64>,
}

impl WidthSampleSet {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sample mean of `w^k` and its standard error.
    pub fn moment(&self, k: u32) -> (f64, f64) {
        let n = self.samples.len() as f64;
        let vals = self.samples.iter().map(|w| w.powi(k as i32));
        let mean = vals.clone().sum::<f64>() / n;
        let var = if self.samples.len() > 1 {
            vals.map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        (mean, (var / n).sqrt())
    }
}

pub fn sample_widths(p: &Polytope, n: usize, seed: u64) -> Result<WidthSampleSet> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let stream = uniform_direction_stream(p.dimension(), seed)?;
    let samples = (0..n)
        .into_par_iter()
        .map(|i| p.width_fast(&stream.get(i as u64).xyz()))
        .collect();
    Ok(WidthSampleSet {
        description: format!("{}D polytope with {} vertices", p.dimension(), p.vertex_count()),
        seed,
        samples,
    })
}

/// Binned empirical density. `masses[j]` is the fraction of *all* samples
/// falling in bin `j`, so the masses plus `overflow / n` sum to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramDensity {
    pub bin_edges: Vec<f64>,
    pub masses: Vec<f64>,
    pub n: usize,
    /// Samples outside an explicitly requested range.
    pub overflow: usize,
}

impl HistogramDensity {
    pub fn bins(&self) -> usize {
        self.masses.len()
    }

    /// Quantile by linear interpolation inside the crossing bin.
    pub fn quantile(&self, p: f64) -> f64 {
        let mut acc = 0.0;
        for (j, &m) in self.masses.iter().enumerate() {
            if acc + m >= p && m > 0.0 {
                let frac = (p - acc) / m;
                let (l, r) = (self.bin_edges[j], self.bin_edges[j + 1]);
                return l + frac.clamp(0.0, 1.0) * (r - l);
            }
            acc += m;
        }
        *self.bin_edges.last().unwrap()
    }
}

/// Histogram over `range` (default: sample min to max, right edge
/// inclusive).
pub fn histogram_density(
    s: &WidthSampleSet,
    bins: usize,
    range: Option<(f64, f64)>,
) -> Result<HistogramDensity> {
    if s.samples.is_empty() {
        return Err(Error::EmptySample);
    }
    if bins == 0 {
        return Err(Error::InvalidArgument("histogram needs at least one bin".into()));
    }
    let (lo, hi) = match range {
        Some((lo, hi)) => {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidArgument(format!("empty histogram range [{lo}, {hi}]")));
            }
            (lo, hi)
        }
        None => {
            let lo = s.samples.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = s.samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if lo < hi {
                (lo, hi)
            } else {
                let pad = 1e-9 * lo.abs().max(1.0);
                (lo - pad, hi + pad)
            }
        }
    };
    let span = hi - lo;
    let mut counts = vec![0usize; bins];
    let mut overflow = 0;
    for &x in &s.samples {
        if !(lo..=hi).contains(&x) {
            overflow += 1;
            continue;
        }
        let j = (((x - lo) / span) * bins as f64) as usize;
        counts[j.min(bins - 1)] += 1;
    }
    let n = s.samples.len();
    let mut bin_edges: Vec<f64> = (0..=bins).map(|j| lo + span * j as f64 / bins as f64).collect();
    bin_edges[bins] = hi;
    Ok(HistogramDensity {
        bin_edges,
        masses: counts.iter().map(|&c| c as f64 / n as f64).collect(),
        n,
        overflow,
    })
}

/// Right-continuous empirical CDF.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of samples `<= x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&s| s <= x) as f64 / self.sorted.len() as f64
    }

    /// `(sorted_width, rank / n)` rows.
    pub fn steps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.sorted.len() as f64;
        self.sorted.iter().enumerate().map(move |(i, &x)| (x, (i + 1) as f64 / n))
    }

    /// Smallest sample whose ECDF value reaches `p`.
    pub fn quantile(&self, p: f64) -> f64 {
        let n = self.sorted.len();
        let idx = ((p * n as f64).ceil() as usize).clamp(1, n) - 1;
        self.sorted[idx]
    }
}

pub fn ecdf(s: &WidthSampleSet) -> Result<Ecdf> {
    if s.samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut sorted = s.samples.clone();
    sorted.par_sort_unstable_by(f64::total_cmp);
    Ok(Ecdf { sorted })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WidthExtremes {
    pub min_width: f64,
    pub min_direction: UnitDirection,
    pub diameter: f64,
}

pub const MIN_COARSE: usize = 32;
pub const MIN_REFINE_ITERS: usize = 10;
const LOCAL_POINTS: usize = 9;

/// Diameter (exact) and minimum width (searched).
///
/// The minimum is located on a coarse grid over half the circle or sphere,
/// then refined by repeatedly laying a small grid over the tangent plane at
/// the current best direction and halving its extent. The width function
/// has kinks exactly where minima tend to sit, so no derivatives are used.
pub fn width_extremes(p: &Polytope, coarse: usize, refine_iters: usize) -> Result<WidthExtremes> {
    if coarse < MIN_COARSE {
        return Err(Error::InvalidArgument(format!(
            "coarse = {coarse} is below the minimum of {MIN_COARSE}"
        )));
    }
    if refine_iters < MIN_REFINE_ITERS {
        return Err(Error::InvalidArgument(format!(
            "refine_iters = {refine_iters} is below the minimum of {MIN_REFINE_ITERS}"
        )));
    }
    let dim = p.dimension();
    let eval = |u: &UnitDirection| p.width_fast(&u.xyz());

    let mut candidates: Vec<UnitDirection> = Vec::new();
    if dim == 2 {
        let step = std::f64::consts::PI / coarse as f64;
        candidates.extend((0..coarse).map(|i| UnitDirection::planar(i as f64 * step)));
    } else {
        let rings = (coarse / 4).max(1);
        let dphi = std::f64::consts::FRAC_PI_2 / rings as f64;
        let dtheta = std::f64::consts::TAU / coarse as f64;
        candidates.push(UnitDirection::spherical(0.0, 0.0));
        for j in 1..=rings {
            for i in 0..coarse {
                candidates.push(UnitDirection::spherical(i as f64 * dtheta, j as f64 * dphi));
            }
        }
    }
    let (mut best_w, mut best_u) = candidates
        .par_iter()
        .map(|u| (eval(u), *u))
        .reduce_with(|a, b| if b.0 < a.0 { b } else { a })
        .expect("coarse grid is nonempty");

    let mut half_extent = std::f64::consts::TAU / coarse as f64;
    for _ in 0..refine_iters {
        let (e1, e2) = tangent_basis(&best_u);
        let offsets: Vec<f64> = (0..LOCAL_POINTS)
            .map(|a| half_extent * (2.0 * a as f64 / (LOCAL_POINTS - 1) as f64 - 1.0))
            .collect();
        let centre = best_u.xyz();
        let rows = if dim == 2 { 1 } else { LOCAL_POINTS };
        for &s in &offsets {
            for &t in offsets.iter().take(rows) {
                let t = if dim == 2 { 0.0 } else { t };
                let v: Vec<f64> = (0..dim).map(|k| centre[k] + s * e1[k] + t * e2[k]).collect();
                let u = UnitDirection::normalize(&v)?;
                let w = eval(&u);
                if w < best_w {
                    best_w = w;
                    best_u = u;
                }
            }
        }
        half_extent *= 0.5;
    }

    Ok(WidthExtremes {
        min_width: best_w,
        min_direction: best_u,
        diameter: p.diameter(),
    })
}

fn tangent_basis(u: &UnitDirection) -> ([f64; 3], [f64; 3]) {
    let [x, y, z] = u.xyz();
    if u.dimension() == 2 {
        return ([-y, x, 0.0], [0.0; 3]);
    }
    // Cross with the axis least aligned with u.
    let axis = if x.abs() <= y.abs() && x.abs() <= z.abs() {
        [1.0, 0.0, 0.0]
    } else if y.abs() <= z.abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let e1 = normalized(cross(&[x, y, z], &axis));
    let e2 = cross(&[x, y, z], &e1);
    (e1, e2)
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalized(a: [f64; 3]) -> [f64; 3] {
    let n = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}
