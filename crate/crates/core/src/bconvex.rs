//! B-convex compacta in the open positive orthant.
//!
//! A set is B-convex when it is closed under `(x, y, t) ↦ max(t·x, y)` for
//! `t ∈ [0, 1]`. The coordinatewise logarithm turns B-convex hulls into
//! tropical polytopes, and multiplicative residuation mirrors
//! [`TropicalPolytope::hull_member`].

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{sup_dist, Point, DEFAULT_TOL};
use crate::error::{check_dim, Result, TropicError};
use crate::hyperspace::VerificationReport;
use crate::polytope::TropicalPolytope;
use crate::sampling::{random_admissible, trial_rng};

/// Membership tolerance used by [`b_convexity_check`].
pub const B_TOL: f64 = 1e-9;

/// `{max_i t_i·v_i : t_i ∈ [0, 1], max_i t_i = 1}` for positive generators `v_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBPolytope")]
pub struct BPolytope {
    dim: usize,
    generators: Vec<Point>,
}

#[derive(Deserialize)]
struct RawBPolytope {
    dim: usize,
    generators: Vec<Point>,
}

impl TryFrom<RawBPolytope> for BPolytope {
    type Error = TropicError;

    fn try_from(raw: RawBPolytope) -> Result<Self> {
        let p = BPolytope::new(raw.generators)?;
        check_dim(raw.dim, p.dim)?;
        Ok(p)
    }
}

fn check_positive(x: &Point) -> Result<()> {
    match x.coords().iter().enumerate().find(|(_, v)| **v <= 0.0) {
        Some((index, &value)) => Err(TropicError::NonPositiveCoordinate { index, value }),
        None => Ok(()),
    }
}

impl BPolytope {
    pub fn new(generators: Vec<Point>) -> Result<Self> {
        let dim = generators.first().ok_or(TropicError::EmptyGenerators)?.dim();
        for g in &generators {
            check_dim(dim, g.dim())?;
            check_positive(g)?;
        }
        Ok(BPolytope { dim, generators })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(rows.into_iter().map(Point::new).collect::<Result<_>>()?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    /// Multiplicative residuation: `μ_i = min(1, min_j x_j / v_ij)`. Returns
    /// the reconstruction `max_i μ_i·v_i` and `max_i μ_i`.
    fn residuate(&self, x: &[f64]) -> (Vec<f64>, f64) {
        let mut recon = vec![0.0_f64; x.len()];
        let mut top = 0.0_f64;
        for v in &self.generators {
            let mu = v.coords().iter().zip(x).fold(1.0_f64, |m, (vj, xj)| m.min(xj / vj));
            top = top.max(mu);
            for (r, vj) in recon.iter_mut().zip(v.coords()) {
                *r = r.max(mu * vj);
            }
        }
        (recon, top)
    }

    pub fn b_member(&self, x: &Point, tol: f64) -> Result<bool> {
        check_dim(self.dim, x.dim())?;
        check_positive(x)?;
        let (recon, top) = self.residuate(x.coords());
        Ok(top >= 1.0 - tol && sup_dist(&recon, x.coords()) <= tol)
    }

    /// Greedily drops, in list order, generators lying in the B-convex hull
    /// of the ones still kept.
    pub fn reduce_generators(&self) -> BPolytope {
        let mut kept = self.generators.clone();
        let mut i = 0;
        while i < kept.len() {
            if kept.len() > 1 {
                let others = BPolytope {
                    dim: self.dim,
                    generators: kept.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect(),
                };
                let (recon, top) = others.residuate(kept[i].coords());
                if top >= 1.0 - DEFAULT_TOL && sup_dist(&recon, kept[i].coords()) <= DEFAULT_TOL {
                    kept.remove(i);
                    continue;
                }
            }
            i += 1;
        }
        BPolytope {
            dim: self.dim,
            generators: kept,
        }
    }

    /// Reduced generators in lexicographic order.
    pub fn canonical(&self) -> BPolytope {
        let mut reduced = self.reduce_generators();
        reduced
            .generators
            .sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
        reduced
    }

    /// Coordinatewise `ln` of the generators.
    pub fn log_bridge(&self) -> TropicalPolytope {
        TropicalPolytope::from_unchecked(
            self.dim,
            self.generators
                .iter()
                .map(|g| Point::from_raw(g.coords().iter().map(|v| v.ln()).collect()))
                .collect(),
        )
    }

    /// Coordinatewise `exp` of the generators; fails if a coordinate overflows.
    pub fn exp_bridge(q: &TropicalPolytope) -> Result<BPolytope> {
        let gens = q
            .generators()
            .iter()
            .map(|g| Point::new(g.coords().iter().map(|v| v.exp()).collect()))
            .collect::<Result<Vec<_>>>()?;
        BPolytope::new(gens)
    }

    /// Multiplies every generator by `s > 0`.
    pub fn scaled(&self, s: f64) -> Result<BPolytope> {
        if !s.is_finite() || s <= 0.0 {
            return Err(TropicError::OutOfRange {
                name: "s",
                value: s,
                range: "(0, inf)",
            });
        }
        BPolytope::new(
            self.generators
                .iter()
                .map(|g| Point::new(g.coords().iter().map(|v| v * s).collect()))
                .collect::<Result<_>>()?,
        )
    }

    /// A random member: `max_i μ_i·v_i` with `ln μ` admissible.
    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let mus: Vec<f64> = random_admissible(rng, self.generators.len())
            .into_iter()
            .map(f64::exp)
            .collect();
        let mut out = vec![0.0_f64; self.dim];
        for (v, mu) in self.generators.iter().zip(mus) {
            for (o, vj) in out.iter_mut().zip(v.coords()) {
                *o = o.max(mu * vj);
            }
        }
        Point::from_raw(out)
    }
}

/// Samples `x, y` from the hull and `t ∈ [0, 1]` and checks `max(t·x, y)`
/// stays in the hull. The margin of a trial is how far the residuation misses
/// (reconstruction error, or shortfall of `max μ` below 1).
pub fn b_convexity_check(p: &BPolytope, trials: usize, seed: u64) -> VerificationReport {
    let mut violations = 0;
    let mut worst = if trials == 0 { 0.0 } else { f64::NEG_INFINITY };
    for trial in 0..trials as u64 {
        let mut rng = trial_rng(seed, trial);
        let x = p.sample_point(&mut rng);
        let y = p.sample_point(&mut rng);
        let t: f64 = rng.random_range(0.0..=1.0);
        let z: Vec<f64> = x.coords().iter().zip(y.coords()).map(|(a, b)| (t * a).max(*b)).collect();
        let (recon, top) = p.residuate(&z);
        let margin = sup_dist(&recon, &z).max(1.0 - top);
        worst = f64::max(worst, margin);
        if margin > B_TOL {
            violations += 1;
        }
    }
    VerificationReport {
        trials,
        violations,
        worst_margin: worst,
        seed,
    }
}
