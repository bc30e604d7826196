//! Constructions on the hyperspace of tropical polytopes: the c-structure
//! generated by finite families, the ball F-set check, the projection
//! functor and its fibers, selections, and the fiber-product counterexample.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Point, RmaxScalar};
use crate::error::{check_dim, Result, TropicError};
use crate::metrics::{hausdorff, AmbientMetric};
use crate::polytope::{f_combination, validate_coords, TropicalPolytope};
use crate::sampling::{random_admissible, sample_hull_point, trial_rng};

/// Slack allowed on the ball inequality before a trial counts as a violation.
pub const MARGIN_TOL: f64 = 1e-9;

/// Attempts per rejection-sampled neighbour before falling back to the center.
const REJECTION_CAP: usize = 10_000;

/// A finite family `{A_1, ..., A_n}` together with its top element `⊕ A_i`.
#[derive(Debug, Clone)]
pub struct CStructureFamily {
    members: Vec<TropicalPolytope>,
    top: TropicalPolytope,
}

impl CStructureFamily {
    pub fn new(members: Vec<TropicalPolytope>) -> Result<Self> {
        if members.is_empty() {
            return Err(TropicError::EmptyGenerators);
        }
        let zeros = vec![RmaxScalar::ZERO; members.len()];
        let top = f_combination(&members, &zeros)?;
        Ok(CStructureFamily { members, top })
    }

    pub fn members(&self) -> &[TropicalPolytope] {
        &self.members
    }

    pub fn top(&self) -> &TropicalPolytope {
        &self.top
    }

    /// The member `⊕ α_i ⊙ A_i` of `F({A_1, ..., A_n})`.
    pub fn f_element(&self, alphas: &[RmaxScalar]) -> Result<TropicalPolytope> {
        f_combination(&self.members, alphas)
    }

    /// Draws admissible coefficients (sometimes `-inf`) and returns the
    /// resulting element along with the coefficients used.
    pub fn sample_f_element<R: Rng + ?Sized>(&self, rng: &mut R) -> (TropicalPolytope, Vec<RmaxScalar>) {
        let alphas: Vec<RmaxScalar> = random_admissible(rng, self.members.len())
            .into_iter()
            .map(|a| RmaxScalar::new(a).unwrap())
            .collect();
        let element = self.f_element(&alphas).expect("admissible coefficients");
        (element, alphas)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub trials: usize,
    pub violations: usize,
    pub worst_margin: f64,
    pub seed: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn collect(seed: u64, margins: impl IntoIterator<Item = Vec<f64>>) -> Self {
        let mut trials = 0;
        let mut violations = 0;
        let mut worst = f64::NEG_INFINITY;
        for trial in margins {
            trials += 1;
            if trial.iter().any(|&m| m > MARGIN_TOL) {
                violations += 1;
            }
            worst = trial.into_iter().fold(worst, f64::max);
        }
        VerificationReport {
            trials,
            violations,
            worst_margin: if trials == 0 { 0.0 } else { worst },
            seed,
        }
    }
}

/// Checks that the open ball of radius `r` around `center` is an F-set.
///
/// Each trial draws `B`, `B'` within Hausdorff distance `r` of `center` and a
/// finite `t <= 0`, and measures
/// `d_H(center, B ⊕ t ⊙ B') - max(d_H(center, B), d_H(center, B'))`; it then
/// does the same for an `n`-ary combination `⊕ α_i ⊙ A_i` of 2 to 4 random
/// neighbours. A trial is a violation when any margin exceeds [`MARGIN_TOL`].
/// `worst_margin` is the largest margin seen.
pub fn verify_ball_is_fset(
    center: &TropicalPolytope,
    r: f64,
    m: AmbientMetric,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if !r.is_finite() || r <= 0.0 {
        return Err(TropicError::OutOfRange {
            name: "r",
            value: r,
            range: "(0, inf)",
        });
    }
    let center = center.reduce_generators();
    let margins: Vec<Vec<f64>> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| ball_trial(&center, r, m, seed, trial))
        .collect();
    Ok(VerificationReport::collect(seed, margins))
}

fn ball_trial(center: &TropicalPolytope, r: f64, m: AmbientMetric, seed: u64, trial: u64) -> Vec<f64> {
    let mut rng = trial_rng(seed, trial);
    let dist = |q: &TropicalPolytope| hausdorff(m, center, q).expect("equal dims");

    let (b, db) = neighbour(center, r, m, &mut rng);
    let (b2, db2) = neighbour(center, r, m, &mut rng);
    let t = if rng.random_bool(0.2) {
        0.0
    } else {
        rng.random_range(-3.0..=0.0)
    };
    let combined = b.set_oplus(&b2.shifted(t)).expect("equal dims");
    let binary = dist(&combined) - db.max(db2);

    let k = rng.random_range(2..=4);
    let (parts, dists): (Vec<_>, Vec<_>) = (0..k).map(|_| neighbour(center, r, m, &mut rng)).unzip();
    let alphas: Vec<RmaxScalar> = random_admissible(&mut rng, k)
        .into_iter()
        .map(|a| RmaxScalar::new(a).unwrap())
        .collect();
    let folded = f_combination(&parts, &alphas).expect("admissible coefficients");
    let bound = dists.iter().copied().fold(0.0, f64::max);
    let nary = dist(&folded) - bound;

    vec![binary, nary]
}

/// A random polytope within Hausdorff distance `r` of `center`, with its distance.
///
/// Candidates perturb every center generator inside the open ball of radius
/// `r`, then sometimes add perturbed hull points or drop a generator; the
/// last two moves can leave the ball, so candidates are rejection-sampled.
fn neighbour<R: Rng + ?Sized>(
    center: &TropicalPolytope,
    r: f64,
    m: AmbientMetric,
    rng: &mut R,
) -> (TropicalPolytope, f64) {
    for _ in 0..REJECTION_CAP {
        let scale = rng.random_range(0.0..1.0);
        let mut gens: Vec<Point> = center
            .generators()
            .iter()
            .map(|g| perturb(g, r * scale, m, rng))
            .collect();
        if rng.random_bool(0.5) {
            for _ in 0..rng.random_range(1..=2) {
                let base = sample_hull_point(rng, center);
                gens.push(perturb(&base, r * scale, m, rng));
            }
        }
        if gens.len() > 1 && rng.random_bool(0.3) {
            gens.swap_remove(rng.random_range(0..gens.len()));
        }
        let candidate = TropicalPolytope::from_unchecked(center.dim(), gens).reduce_generators();
        let d = hausdorff(m, center, &candidate).expect("equal dims");
        if d < r {
            return (candidate, d);
        }
    }
    (center.clone(), 0.0)
}

/// Moves `g` by strictly less than `radius` in the metric `m`.
fn perturb<R: Rng + ?Sized>(g: &Point, radius: f64, m: AmbientMetric, rng: &mut R) -> Point {
    let coords = g
        .coords()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let w = match m {
                AmbientMetric::Sup => radius,
                // past width 1 the coordinate is unconstrained; cap the noise
                AmbientMetric::Weighted => (radius * 2f64.powi(k as i32 + 1)).min(3.0),
            };
            if w > 0.0 {
                v + rng.random_range(-w..w) * 0.999_999
            } else {
                *v
            }
        })
        .collect();
    Point::from_raw(coords)
}

/// `mpcc(p)(A) = p(A)` for the projection onto `coords` (0-based).
pub fn mpcc_project(p: &TropicalPolytope, coords: &[usize]) -> Result<TropicalPolytope> {
    p.project(coords)
}

/// Whether `d` lies in the fiber of the hyperspace projection onto `base`
/// over `c`.
pub fn fiber_member(d: &TropicalPolytope, c: &TropicalPolytope, base: &[usize], tol: f64) -> Result<bool> {
    validate_coords(base, d.dim())?;
    check_dim(base.len(), c.dim())?;
    let image = mpcc_project(d, base)?;
    Ok(hausdorff(AmbientMetric::Sup, &image, c)? <= tol)
}

/// `s(A) = A × {c}`.
pub fn selection_map(p: &TropicalPolytope, c: &Point) -> TropicalPolytope {
    p.product(&TropicalPolytope::singleton(c.clone()))
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleReport {
    #[serde(rename = "A")]
    pub a: TropicalPolytope,
    #[serde(rename = "B")]
    pub b: TropicalPolytope,
    #[serde(rename = "C")]
    pub c: TropicalPolytope,
    #[serde(rename = "D")]
    pub d: TropicalPolytope,
    #[serde(rename = "D1")]
    pub d1: TropicalPolytope,
    pub pr12_d_equals_b: bool,
    pub pr12_d1_equals_b: bool,
    pub pr13_d_equals_c: bool,
    pub pr13_d1_equals_c: bool,
    pub projections_equal: bool,
    #[serde(rename = "hausdorff_D_D1")]
    pub hausdorff_d_d1: f64,
}

impl CounterexampleReport {
    /// Two distinct hulls with the same pair of projections.
    pub fn not_a_pullback(&self) -> bool {
        self.projections_equal && self.hausdorff_d_d1 > 0.0
    }
}

/// Hull equality tolerance for the counterexample's projection checks.
pub const COUNTEREXAMPLE_TOL: f64 = 1e-12;

/// The fiber-product counterexample, one retained coordinate per factor.
///
/// `B = C = {0} × [0, 1]` over `A = {0}`; `D` is the full fiber product (the
/// square in the last two coordinates) and `D1` its diagonal. Both project
/// onto `B` and `C`, yet they differ.
pub fn pullback_counterexample() -> CounterexampleReport {
    let rows = |r: &[&[f64]]| TropicalPolytope::from_rows(r.iter().map(|v| v.to_vec()).collect()).unwrap();
    let a = rows(&[&[0.]]);
    let b = rows(&[&[0., 0.], &[0., 1.]]);
    let c = b.clone();
    let d = rows(&[&[0., 0., 0.], &[0., 0., 1.], &[0., 1., 0.], &[0., 1., 1.]]);
    let d1 = rows(&[&[0., 0., 0.], &[0., 1., 1.]]);

    let eq = |p: &TropicalPolytope, coords: &[usize], target: &TropicalPolytope| {
        mpcc_project(p, coords).unwrap().hull_eq(target, COUNTEREXAMPLE_TOL)
    };
    let pr12_d_equals_b = eq(&d, &[0, 1], &b);
    let pr12_d1_equals_b = eq(&d1, &[0, 1], &b);
    let pr13_d_equals_c = eq(&d, &[0, 2], &c);
    let pr13_d1_equals_c = eq(&d1, &[0, 2], &c);
    let hausdorff_d_d1 = hausdorff(AmbientMetric::Sup, &d, &d1).unwrap();

    CounterexampleReport {
        a,
        b,
        c,
        d,
        d1,
        pr12_d_equals_b,
        pr12_d1_equals_b,
        pr13_d_equals_c,
        pr13_d1_equals_c,
        projections_equal: pr12_d_equals_b && pr12_d1_equals_b && pr13_d_equals_c && pr13_d1_equals_c,
        hausdorff_d_d1,
    }
}
