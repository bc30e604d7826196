//! Random hulls, coefficient vectors and hull points for the verification
//! harnesses and property tests.
//!
//! Every randomized run derives one generator per trial from `(seed, trial)`
//! via ChaCha stream selection, so results do not depend on scheduling.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{combine, Point};
use crate::polytope::TropicalPolytope;

pub type TrialRng = ChaCha8Rng;

/// Deterministic generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Shape of randomly generated hulls.
#[derive(Debug, Clone)]
pub struct HullShape {
    pub dims: RangeInclusive<usize>,
    pub generators: RangeInclusive<usize>,
    pub coord_range: (f64, f64),
}

impl Default for HullShape {
    fn default() -> Self {
        HullShape {
            dims: 2..=4,
            generators: 1..=5,
            coord_range: (-1.0, 1.0),
        }
    }
}

impl HullShape {
    pub fn with_dim(dim: usize) -> Self {
        HullShape {
            dims: dim..=dim,
            ..Default::default()
        }
    }

    pub fn sample_dim<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        rng.random_range(self.dims.clone())
    }

    /// Unreduced random hull of the given dimension.
    pub fn polytope<R: Rng + ?Sized>(&self, rng: &mut R, dim: usize) -> TropicalPolytope {
        let m = rng.random_range(self.generators.clone());
        let gens = (0..m)
            .map(|_| random_point(rng, dim, self.coord_range))
            .collect();
        TropicalPolytope::from_unchecked(dim, gens)
    }
}

pub fn random_point<R: Rng + ?Sized>(rng: &mut R, dim: usize, (lo, hi): (f64, f64)) -> Point {
    Point::from_raw((0..dim).map(|_| rng.random_range(lo..=hi)).collect())
}

/// Normalized coefficients: each entry is `-inf` with probability 0.3 and
/// otherwise uniform in `[-2, 0]`; one uniformly chosen entry is set to `0`.
pub fn random_admissible<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Vec<f64> {
    let mut lambdas: Vec<f64> = (0..m)
        .map(|_| {
            if rng.random_bool(0.3) {
                f64::NEG_INFINITY
            } else {
                rng.random_range(-2.0..=0.0)
            }
        })
        .collect();
    lambdas[rng.random_range(0..m)] = 0.0;
    lambdas
}

/// A random member of the hull.
pub fn sample_hull_point<R: Rng + ?Sized>(rng: &mut R, p: &TropicalPolytope) -> Point {
    let lambdas = random_admissible(rng, p.len());
    Point::from_raw(combine(p.generators(), &lambdas))
}
