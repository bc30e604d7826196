//! Ambient metrics on points and the Hausdorff metric on tropical polytopes.
//!
//! Both ambient metrics have coordinate boxes as closed balls, which makes
//! the `ε`-neighbourhood test exact: the greatest hull element below the
//! box's upper corner either clears the lower corner or nothing does.

use serde::{Deserialize, Serialize};

use crate::algebra::{sup_dist, Point, RmaxScalar};
use crate::error::{check_dim, Result, TropicError};
use crate::polytope::TropicalPolytope;

/// Default bisection tolerance for [`dist_point_to_hull`].
pub const BISECT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbientMetric {
    /// `max_j |x_j - y_j|`.
    Sup,
    /// `max_i min(|x_i - y_i|, 1) / 2^i`, coordinates numbered from 1.
    Weighted,
}

impl AmbientMetric {
    pub const ALL: [AmbientMetric; 2] = [AmbientMetric::Sup, AmbientMetric::Weighted];

    pub fn name(self) -> &'static str {
        match self {
            AmbientMetric::Sup => "sup",
            AmbientMetric::Weighted => "weighted",
        }
    }

    /// Rate at which the ball's half-width along 0-based coordinate `k` grows with `ε`.
    #[inline]
    fn rate(self, k: usize) -> f64 {
        match self {
            AmbientMetric::Sup => 1.0,
            AmbientMetric::Weighted => (2.0f64).powi(k as i32 + 1),
        }
    }

    /// Half-width of the closed ball of radius `eps` along coordinate `k`;
    /// `None` when the coordinate is unconstrained.
    #[inline]
    fn half_width(self, k: usize, eps: f64) -> Option<f64> {
        let h = eps * self.rate(k);
        match self {
            AmbientMetric::Weighted if h >= 1.0 => None,
            _ => Some(h),
        }
    }
}

impl std::str::FromStr for AmbientMetric {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "sup" => Ok(AmbientMetric::Sup),
            "weighted" => Ok(AmbientMetric::Weighted),
            other => Err(format!("unknown metric `{other}` (expected sup or weighted)")),
        }
    }
}

/// `|e^x - e^y|` on `R ∪ {-inf}`, with `e^{-inf} = 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExpMetric;

impl ExpMetric {
    pub fn distance(&self, x: RmaxScalar, y: RmaxScalar) -> f64 {
        (x.value().exp() - y.value().exp()).abs()
    }
}

#[inline]
pub(crate) fn raw_dist(m: AmbientMetric, x: &[f64], y: &[f64]) -> f64 {
    match m {
        AmbientMetric::Sup => sup_dist(x, y),
        AmbientMetric::Weighted => x
            .iter()
            .zip(y)
            .enumerate()
            .fold(0.0, |acc, (k, (a, b))| acc.max((a - b).abs().min(1.0) / m.rate(k))),
    }
}

pub fn point_dist(m: AmbientMetric, x: &Point, y: &Point) -> Result<f64> {
    check_dim(x.dim(), y.dim())?;
    Ok(raw_dist(m, x.coords(), y.coords()))
}

/// Whether the hull meets the closed ball of radius `eps` around `x`.
pub fn eps_feasible(m: AmbientMetric, x: &Point, p: &TropicalPolytope, eps: f64) -> Result<bool> {
    if eps.is_nan() || eps < 0.0 {
        return Err(TropicError::OutOfRange {
            name: "eps",
            value: eps,
            range: "[0, inf)",
        });
    }
    check_dim(p.dim(), x.dim())?;
    Ok(feasible_raw(m, x.coords(), p, eps))
}

fn feasible_raw(m: AmbientMetric, x: &[f64], p: &TropicalPolytope, eps: f64) -> bool {
    let widths: Vec<Option<f64>> = (0..x.len()).map(|k| m.half_width(k, eps)).collect();
    let coeffs: Vec<f64> = p
        .generators()
        .iter()
        .map(|v| {
            v.coords()
                .iter()
                .zip(x)
                .zip(&widths)
                .filter_map(|((vj, xj), h)| h.map(|h| xj + h - vj))
                .fold(0.0_f64, f64::min)
        })
        .collect();
    if coeffs.iter().copied().fold(f64::NEG_INFINITY, f64::max) < 0.0 {
        return false;
    }
    (0..x.len()).all(|k| match widths[k] {
        None => true,
        Some(h) => {
            let z = p
                .generators()
                .iter()
                .zip(&coeffs)
                .fold(f64::NEG_INFINITY, |acc, (v, c)| acc.max(c + v[k]));
            z >= x[k] - h
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistMode {
    #[default]
    Exact,
    Bisect,
}

impl std::str::FromStr for DistMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(DistMode::Exact),
            "bisect" => Ok(DistMode::Bisect),
            other => Err(format!("unknown mode `{other}` (expected exact or bisect)")),
        }
    }
}

/// Distance from `x` to the hull: the least `ε` with [`eps_feasible`] true.
///
/// `tol` is only used by [`DistMode::Bisect`].
pub fn dist_point_to_hull(
    m: AmbientMetric,
    x: &Point,
    p: &TropicalPolytope,
    mode: DistMode,
    tol: f64,
) -> Result<f64> {
    check_dim(p.dim(), x.dim())?;
    Ok(match mode {
        DistMode::Exact => exact_dist(m, x.coords(), p),
        DistMode::Bisect => bisect_dist(m, x.coords(), p, tol),
    })
}

fn bisect_dist(m: AmbientMetric, x: &[f64], p: &TropicalPolytope, tol: f64) -> f64 {
    if feasible_raw(m, x, p, 0.0) {
        return 0.0;
    }
    let mut lo = 0.0;
    let mut hi = raw_dist(m, x, p.max_point().coords()) + 1.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if feasible_raw(m, x, p, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Exact distance from the feasibility breakpoints.
///
/// While the set `S` of constrained coordinates is fixed, the ball is the box
/// `x ± ε w` over `S`, and feasibility holds iff `ε` clears
/// * `min_i max_{j∈S} (v_ij - x_j) / w_j` (some canonical coefficient reaches 0), and
/// * for each `k ∈ S`, `min_i max((x_k - v_ik) / w_k,
///   max_{j∈S} ((x_k - v_ik) - (x_j - v_ij)) / (w_j + w_k))`
///   (some term of the greatest hull element clears the lower corner).
///
/// Under the weighted metric `S` shrinks as `ε` passes `2^-n, ..., 2^-1`, so
/// the ranges are scanned in increasing order.
fn exact_dist(m: AmbientMetric, x: &[f64], p: &TropicalPolytope) -> f64 {
    let n = x.len();
    let rates: Vec<f64> = (0..n).map(|k| m.rate(k)).collect();
    let gaps: Vec<Vec<f64>> = p
        .generators()
        .iter()
        .map(|v| x.iter().zip(v.coords()).map(|(a, b)| a - b).collect())
        .collect();

    let threshold = |s: usize| -> f64 {
        if s == 0 {
            return f64::NEG_INFINITY;
        }
        let reach = gaps
            .iter()
            .map(|g| (0..s).map(|j| -g[j] / rates[j]).fold(f64::NEG_INFINITY, f64::max))
            .fold(f64::INFINITY, f64::min);
        let cover = (0..s)
            .map(|k| {
                gaps.iter()
                    .map(|g| {
                        (0..s)
                            .map(|j| (g[k] - g[j]) / (rates[j] + rates[k]))
                            .fold(g[k] / rates[k], f64::max)
                    })
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        reach.max(cover)
    };

    match m {
        AmbientMetric::Sup => threshold(n).max(0.0),
        AmbientMetric::Weighted => {
            // s = number of constrained coordinates on [lo, hi)
            for s in (0..=n).rev() {
                let lo = if s == n { 0.0 } else { 1.0 / rates[s] };
                let hi = if s == 0 { f64::INFINITY } else { 1.0 / rates[s - 1] };
                let t = threshold(s);
                if t < hi {
                    return t.max(lo);
                }
            }
            unreachable!("every coordinate is unconstrained past 1/2")
        }
    }
}

/// `sup_{a ∈ P} dist(a, Q)`, attained at a generator of `P`.
///
/// `a ↦ dist(a, Q)` is tropically quasi-convex because `⊕` is nonexpansive
/// and `⊙` is an isometry under both metrics, so the generators suffice.
pub fn directed_hausdorff(m: AmbientMetric, p: &TropicalPolytope, q: &TropicalPolytope) -> Result<f64> {
    check_dim(p.dim(), q.dim())?;
    let p = p.reduce_generators();
    let q = q.reduce_generators();
    Ok(directed_reduced(m, &p, &q))
}

fn directed_reduced(m: AmbientMetric, p: &TropicalPolytope, q: &TropicalPolytope) -> f64 {
    p.generators()
        .iter()
        .map(|v| exact_dist(m, v.coords(), q))
        .fold(0.0, f64::max)
}

pub fn hausdorff(m: AmbientMetric, p: &TropicalPolytope, q: &TropicalPolytope) -> Result<f64> {
    check_dim(p.dim(), q.dim())?;
    let p = p.reduce_generators();
    let q = q.reduce_generators();
    Ok(directed_reduced(m, &p, &q).max(directed_reduced(m, &q, &p)))
}
