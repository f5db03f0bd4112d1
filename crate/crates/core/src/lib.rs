//! Width functions, width moments and empirical width distributions of
//! convex polytopes.
//!
//! A width `w(u)` is the distance between the two supporting hyperplanes of a
//! body orthogonal to the unit direction `u`. With `u` uniform on the circle
//! or sphere, `w` is a random variable; this crate evaluates it exactly for
//! vertex-described polytopes, integrates its moments by product quadrature
//! and by seeded Monte Carlo, and estimates its distribution empirically.
//!
//! Module map:
//!
//! - [`geometry`]: directions, polytopes, support function, width, and the
//!   pairwise-projection and ball-union-chord routes to the same width.
//! - [`canonical`]: the unit-edge triangle, square, regular tetrahedron and
//!   cube in their reference frames, with closed-form moment constants.
//! - [`rng`], [`quadrature`], [`moments`]: direction sampling, spherical
//!   grids and moment estimators.
//! - [`distribution`]: width samples, histograms, ECDFs and width extremes.
//! - [`tetra`]: the sector decomposition of the tetrahedron's mean square
//!   width, assembled from a closed-form inner integral.

pub mod canonical;
pub mod distribution;
mod error;
pub mod geometry;
pub mod integrate;
pub mod moments;
pub mod quadrature;
mod reduce;
pub mod rng;
pub mod tetra;

pub use canonical::{reference_moment, CanonicalBody, ReferenceMoment};
pub use distribution::{
    ecdf, histogram_density, sample_widths, width_extremes, Ecdf, HistogramDensity,
    WidthExtremes, WidthSampleSet,
};
pub use error::{Error, Result};
pub use geometry::{Polytope, UnitDirection, WidthEvaluation};
pub use moments::{moment_monte_carlo, moment_quadrature, MomentEstimate, MomentMethod};
pub use quadrature::{build_grid, QuadratureGrid};
pub use rng::{uniform_direction_stream, DirectionStream};
pub use tetra::{mean_square_width_analytic, SectorReport};
