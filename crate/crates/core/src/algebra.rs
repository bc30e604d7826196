//! Max-plus scalars and vectors.
//!
//! `⊕` is the coordinatewise maximum and `λ ⊙ x` adds `λ` to every
//! coordinate of `x`. Coefficients live in `R ∪ {-inf}`; points always have
//! finite coordinates, so a `-inf` coefficient only ever appears inside a
//! tropical combination, where its term is dropped.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Result, TropicError};

/// Default absolute tolerance for comparing points.
pub const DEFAULT_TOL: f64 = 1e-9;

/// An element of `R ∪ {-inf}`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct RmaxScalar(f64);

impl RmaxScalar {
    pub const NEG_INFINITY: RmaxScalar = RmaxScalar(f64::NEG_INFINITY);
    pub const ZERO: RmaxScalar = RmaxScalar(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value == f64::INFINITY {
            Err(TropicError::InvalidScalar(value))
        } else {
            Ok(RmaxScalar(value))
        }
    }

    /// `ln t` with the convention `ln 0 = -inf`.
    pub fn ln(t: f64) -> Result<Self> {
        if t.is_nan() || t < 0.0 || t == f64::INFINITY {
            return Err(TropicError::InvalidScalar(t));
        }
        Ok(RmaxScalar(t.ln()))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    #[inline]
    pub fn oplus(self, other: Self) -> Self {
        RmaxScalar(self.0.max(other.0))
    }

    /// Tropical product; `-inf` is absorbing.
    #[inline]
    pub fn odot(self, other: Self) -> Self {
        if self.0 == f64::NEG_INFINITY || other.0 == f64::NEG_INFINITY {
            Self::NEG_INFINITY
        } else {
            RmaxScalar(self.0 + other.0)
        }
    }
}

impl TryFrom<f64> for RmaxScalar {
    type Error = TropicError;

    fn try_from(value: f64) -> Result<Self> {
        RmaxScalar::new(value)
    }
}

impl<'de> Deserialize<'de> for RmaxScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        RmaxScalar::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for RmaxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::NEG_INFINITY {
            f.write_str("-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// A point of `R^n`, `n >= 1`, with finite coordinates.
#[derive(Debug, Clone, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(TropicError::EmptyPoint);
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(TropicError::NonFiniteCoordinate { index, value });
        }
        Ok(Point(coords))
    }

    /// Callers guarantee finiteness and nonemptiness.
    #[inline]
    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty() && coords.iter().all(|v| v.is_finite()));
        Point(coords)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    /// Sup-norm distance, used for tolerance comparisons.
    pub fn sup_dist(&self, other: &Point) -> f64 {
        sup_dist(&self.0, &other.0)
    }

    pub fn approx_eq(&self, other: &Point, tol: f64) -> bool {
        self.dim() == other.dim() && self.sup_dist(other) <= tol
    }

    pub fn oplus(&self, other: &Point) -> Result<Point> {
        vec_oplus(self, other)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Point) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Index<usize> for Point {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = TropicError;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Point::new(v)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Vec<f64> {
        p.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

#[inline]
pub(crate) fn sup_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}

/// `x ⊕ y`, the coordinatewise maximum.
pub fn vec_oplus(x: &Point, y: &Point) -> Result<Point> {
    check_dim(x.dim(), y.dim())?;
    Ok(Point(x.0.iter().zip(&y.0).map(|(a, b)| a.max(*b)).collect()))
}

/// `λ ⊙ x`; `λ` must be finite.
pub fn vec_odot(lambda: RmaxScalar, x: &Point) -> Result<Point> {
    if !lambda.is_finite() {
        return Err(TropicError::NegativeInfinityShift);
    }
    Ok(shift(lambda.value(), x))
}

#[inline]
pub(crate) fn shift(lambda: f64, x: &Point) -> Point {
    Point(x.0.iter().map(|v| v + lambda).collect())
}

/// Checks that every coefficient is `<= 0` and the largest one is exactly `0`.
pub fn check_normalized(lambdas: &[RmaxScalar]) -> Result<()> {
    if lambdas.is_empty() {
        return Err(TropicError::Normalization("no coefficients".into()));
    }
    if let Some(bad) = lambdas.iter().find(|l| l.value() > 0.0) {
        return Err(TropicError::Normalization(format!("coefficient {bad} > 0")));
    }
    let top = lambdas.iter().fold(f64::NEG_INFINITY, |m, l| m.max(l.value()));
    if top != 0.0 {
        return Err(TropicError::Normalization(format!(
            "largest coefficient is {} instead of 0",
            RmaxScalar(top)
        )));
    }
    Ok(())
}

/// `⊕_i λ_i ⊙ p_i` over a normalized coefficient vector; `-inf` terms are dropped.
pub fn tropical_combination(points: &[Point], lambdas: &[RmaxScalar]) -> Result<Point> {
    if points.len() != lambdas.len() {
        return Err(TropicError::LengthMismatch {
            points: points.len(),
            coefficients: lambdas.len(),
        });
    }
    check_normalized(lambdas)?;
    let dim = points[0].dim();
    for p in points {
        check_dim(dim, p.dim())?;
    }
    let raw: Vec<f64> = lambdas.iter().map(|l| l.value()).collect();
    Ok(Point(combine(points, &raw)))
}

/// Unchecked combination used on hot paths. At least one coefficient must be
/// finite for the result to be a point.
#[inline]
pub(crate) fn combine(points: &[Point], lambdas: &[f64]) -> Vec<f64> {
    let dim = points[0].dim();
    let mut out = vec![f64::NEG_INFINITY; dim];
    for (p, &l) in points.iter().zip(lambdas) {
        if l == f64::NEG_INFINITY {
            continue;
        }
        for (o, v) in out.iter_mut().zip(&p.0) {
            *o = o.max(v + l);
        }
    }
    out
}
