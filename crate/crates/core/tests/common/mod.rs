//! Test-only oracles, independent of the residuation and breakpoint code
//! they check.

#![allow(dead_code)]

use rand::Rng;
use tropic_core::{Point, TropicalPolytope};

pub fn sup(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Direct evaluation of `⊕ λ_i ⊙ v_i`.
pub fn evaluate(gens: &[Point], lambdas: &[f64]) -> Vec<f64> {
    let dim = gens[0].dim();
    (0..dim)
        .map(|j| {
            gens.iter()
                .zip(lambdas)
                .filter(|(_, l)| l.is_finite())
                .map(|(g, l)| g[j] + l)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect()
}

/// Brute-force search for admissible coefficients reconstructing `x`.
///
/// The budget of `samples` coefficient vectors is spent first on an
/// exhaustive sweep of the lattice where every coefficient is `-inf`, `0`, or
/// one of the gaps `x_j - v_ij` (keeping only normalized vectors), then on
/// uniform random normalized vectors. Returns the smallest sup distance
/// found, stopping early once it drops below `stop`.
pub fn brute_force_min_dist<R: Rng>(p: &TropicalPolytope, x: &Point, samples: usize, stop: f64, rng: &mut R) -> f64 {
    let gens = p.generators();
    let m = gens.len();
    let choices: Vec<Vec<f64>> = gens
        .iter()
        .map(|v| {
            let mut c = vec![f64::NEG_INFINITY, 0.0];
            c.extend(v.coords().iter().zip(x.coords()).map(|(vj, xj)| xj - vj).filter(|g| *g < 0.0));
            c
        })
        .collect();

    let mut best = f64::INFINITY;
    let mut used = 0usize;
    let mut idx = vec![0usize; m];
    let mut lambdas = vec![0.0; m];
    'lattice: loop {
        if used >= samples {
            break;
        }
        for i in 0..m {
            lambdas[i] = choices[i][idx[i]];
        }
        if lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max) == 0.0 {
            used += 1;
            best = best.min(sup(&evaluate(gens, &lambdas), x.coords()));
            if best < stop {
                return best;
            }
        }
        let mut k = 0;
        loop {
            if k == m {
                break 'lattice;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }

    while used < samples {
        for l in lambdas.iter_mut() {
            *l = if rng.random_bool(0.2) { f64::NEG_INFINITY } else { rng.random_range(-3.0..=0.0) };
        }
        lambdas[rng.random_range(0..m)] = 0.0;
        used += 1;
        best = best.min(sup(&evaluate(gens, &lambdas), x.coords()));
        if best < stop {
            return best;
        }
    }
    best
}
