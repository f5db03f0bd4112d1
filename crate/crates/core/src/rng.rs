//! Counter-based direction sampling.
//!
//! Every random word is a pure function of `(seed, counter)`:
//!
//! ```text
//! key        = mix64(seed)
//! word(c)    = mix64(key + c * 0x9E3779B97F4A7C15)      (wrapping)
//! uniform(c) = (word(c) >> 11) * 2^-53                  in [0, 1)
//! mix64(z)   : z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//!              z ^= z >> 27; z *= 0x94D049BB133111EB;
//!              z ^= z >> 31
//! ```
//!
//! `mix64` is the SplitMix64 finalizer, a bijection on `u64`, and the odd
//! multiplier makes `c -> key + c * gamma` a bijection too, so for a fixed
//! seed distinct counters never collide. Direction `i` consumes counters
//! `2i` (azimuth) and `2i + 1` (height):
//!
//! ```text
//! θ = 2π · uniform(2i)
//! z = 2 · uniform(2i + 1) - 1            (3D only)
//! u = (√(1 - z²) cos θ, √(1 - z²) sin θ, z)
//! ```
//!
//! By Archimedes' hat-box theorem `z` uniform on `[-1, 1]` with independent
//! uniform `θ` is exactly the uniform surface measure. This scheme is part of
//! the output contract: changing it changes every seeded result.

use std::f64::consts::TAU;

use crate::geometry::UnitDirection;
use crate::{Error, Result};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stateless generator keyed by a seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterRng {
    key: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self { key: mix64(seed) }
    }

    #[inline]
    pub fn word(&self, counter: u64) -> u64 {
        mix64(self.key.wrapping_add(counter.wrapping_mul(GOLDEN_GAMMA)))
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    #[inline]
    pub fn uniform(&self, counter: u64) -> f64 {
        (self.word(counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Random-access sequence of uniformly distributed unit directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectionStream {
    dim: usize,
    seed: u64,
    rng: CounterRng,
}

pub fn uniform_direction_stream(dimension: usize, seed: u64) -> Result<DirectionStream> {
    if !(2..=3).contains(&dimension) {
        return Err(Error::UnsupportedDimension(dimension));
    }
    Ok(DirectionStream {
        dim: dimension,
        seed,
        rng: CounterRng::new(seed),
    })
}

impl DirectionStream {
    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Direction number `index`.
    #[inline]
    pub fn get(&self, index: u64) -> UnitDirection {
        let theta = TAU * self.rng.uniform(2 * index);
        if self.dim == 2 {
            UnitDirection::planar(theta)
        } else {
            let z = 2.0 * self.rng.uniform(2 * index + 1) - 1.0;
            UnitDirection::cylindrical(theta, z)
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = UnitDirection> + '_ {
        (0u64..).map(move |i| self.get(i))
    }
}
