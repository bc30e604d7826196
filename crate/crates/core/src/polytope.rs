//! Tropical polytopes: max-plus convex hulls of finitely many generators.
//!
//! The hull of generators `v_1..v_m` is the set of normalized combinations
//! `⊕_i λ_i ⊙ v_i` with every `λ_i <= 0` and `max_i λ_i = 0`. Every
//! construction here (sums, scalings, products, projections, homotopy
//! images) maps generator lists to generator lists, so no other
//! representation is needed.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::algebra::{check_normalized, combine, shift, sup_dist, Point, RmaxScalar, DEFAULT_TOL};
use crate::error::{check_dim, Result, TropicError};

/// A nonempty max-plus convex compactum given by generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPolytope")]
pub struct TropicalPolytope {
    dim: usize,
    generators: Vec<Point>,
}

#[derive(Deserialize)]
struct RawPolytope {
    dim: usize,
    generators: Vec<Point>,
}

impl TryFrom<RawPolytope> for TropicalPolytope {
    type Error = TropicError;

    fn try_from(raw: RawPolytope) -> Result<Self> {
        let p = TropicalPolytope::new(raw.generators)?;
        check_dim(raw.dim, p.dim)?;
        Ok(p)
    }
}

/// Result of a membership query.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipWitness {
    pub is_member: bool,
    /// Canonical (greatest admissible) coefficients, one per generator.
    pub lambdas: Vec<RmaxScalar>,
    /// `⊕_i λ_i ⊙ v_i` for the canonical coefficients.
    pub reconstruction: Point,
}

impl TropicalPolytope {
    pub fn new(generators: Vec<Point>) -> Result<Self> {
        let first = generators.first().ok_or(TropicError::EmptyGenerators)?;
        let dim = first.dim();
        for g in &generators {
            check_dim(dim, g.dim())?;
        }
        Ok(TropicalPolytope { dim, generators })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(rows.into_iter().map(Point::new).collect::<Result<_>>()?)
    }

    pub fn singleton(p: Point) -> Self {
        TropicalPolytope {
            dim: p.dim(),
            generators: vec![p],
        }
    }

    pub(crate) fn from_unchecked(dim: usize, generators: Vec<Point>) -> Self {
        debug_assert!(!generators.is_empty() && generators.iter().all(|g| g.dim() == dim));
        TropicalPolytope { dim, generators }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_generators(self) -> Vec<Point> {
        self.generators
    }

    /// Greatest admissible coefficients whose combination lies below `x`:
    /// `λ_i = min(0, min_j (x_j - v_ij))`.
    pub fn canonical_coeffs(&self, x: &Point) -> Result<Vec<RmaxScalar>> {
        check_dim(self.dim, x.dim())?;
        Ok(self
            .generators
            .iter()
            .map(|v| RmaxScalar::new(residual(v.coords(), x.coords())).expect("finite residual"))
            .collect())
    }

    /// Decides `x ∈ hull` by residuation.
    ///
    /// `x` is a member iff the canonical coefficients reconstruct `x` and the
    /// largest of them is `0`. Reconstruction alone would accept every point
    /// of the downward span `{⊕ λ_i ⊙ v_i : λ_i <= 0}`.
    pub fn hull_member(&self, x: &Point, tol: f64) -> Result<MembershipWitness> {
        check_dim(self.dim, x.dim())?;
        let lambdas: Vec<f64> = self
            .generators
            .iter()
            .map(|v| residual(v.coords(), x.coords()))
            .collect();
        let reconstruction = combine(&self.generators, &lambdas);
        let top = lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let is_member = top >= -tol && sup_dist(&reconstruction, x.coords()) <= tol;
        Ok(MembershipWitness {
            is_member,
            lambdas: lambdas.into_iter().map(|l| RmaxScalar::new(l).unwrap()).collect(),
            reconstruction: Point::from_raw(reconstruction),
        })
    }

    pub fn contains(&self, x: &Point, tol: f64) -> Result<bool> {
        check_dim(self.dim, x.dim())?;
        Ok(member_raw(self.generators.iter(), x.coords(), tol))
    }

    /// Greedily drops, in list order, every generator lying in the hull of
    /// the generators still kept.
    pub fn reduce_generators(&self) -> TropicalPolytope {
        let mut kept = self.generators.clone();
        let mut i = 0;
        while i < kept.len() {
            if kept.len() > 1 {
                let others = kept
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, g)| g);
                if member_raw(others, kept[i].coords(), DEFAULT_TOL) {
                    kept.remove(i);
                    continue;
                }
            }
            i += 1;
        }
        TropicalPolytope::from_unchecked(self.dim, kept)
    }

    /// Reduced generators sorted lexicographically. Two polytopes with equal
    /// hulls and no near-duplicate generators have equal canonical forms.
    pub fn canonical(&self) -> TropicalPolytope {
        let mut reduced = self.reduce_generators();
        reduced.generators.sort_by(|a, b| lex_cmp(a.coords(), b.coords()));
        reduced
    }

    /// Hull equality by mutual generator membership.
    pub fn hull_eq(&self, other: &TropicalPolytope, tol: f64) -> bool {
        self.dim == other.dim
            && self
                .generators
                .iter()
                .all(|g| member_raw(other.generators.iter(), g.coords(), tol))
            && other
                .generators
                .iter()
                .all(|g| member_raw(self.generators.iter(), g.coords(), tol))
    }

    /// `{a ⊕ b : a ∈ self, b ∈ other}`, generated by the pairwise sums of generators.
    pub fn set_oplus(&self, other: &TropicalPolytope) -> Result<TropicalPolytope> {
        check_dim(self.dim, other.dim)?;
        let mut gens = Vec::with_capacity(self.len() * other.len());
        for v in &self.generators {
            for w in &other.generators {
                gens.push(Point::from_raw(
                    v.coords().iter().zip(w.coords()).map(|(a, b)| a.max(*b)).collect(),
                ));
            }
        }
        Ok(TropicalPolytope::from_unchecked(self.dim, gens).reduce_generators())
    }

    /// `t ⊙ self` for finite `t`.
    pub fn set_scale(&self, t: RmaxScalar) -> Result<TropicalPolytope> {
        if !t.is_finite() {
            return Err(TropicError::NegativeInfinityShift);
        }
        Ok(self.shifted(t.value()))
    }

    pub(crate) fn shifted(&self, t: f64) -> TropicalPolytope {
        TropicalPolytope::from_unchecked(
            self.dim,
            self.generators.iter().map(|g| shift(t, g)).collect(),
        )
    }

    /// Cartesian product, generated by all concatenations of generators.
    pub fn product(&self, other: &TropicalPolytope) -> TropicalPolytope {
        let mut gens = Vec::with_capacity(self.len() * other.len());
        for v in &self.generators {
            for w in &other.generators {
                let mut c = Vec::with_capacity(self.dim + other.dim);
                c.extend_from_slice(v.coords());
                c.extend_from_slice(w.coords());
                gens.push(Point::from_raw(c));
            }
        }
        TropicalPolytope::from_unchecked(self.dim + other.dim, gens).reduce_generators()
    }

    /// Image under the coordinate projection onto `coords` (0-based, in the
    /// given order).
    pub fn project(&self, coords: &[usize]) -> Result<TropicalPolytope> {
        validate_coords(coords, self.dim)?;
        let gens = self
            .generators
            .iter()
            .map(|g| Point::from_raw(coords.iter().map(|&c| g[c]).collect()))
            .collect();
        Ok(TropicalPolytope::from_unchecked(coords.len(), gens).reduce_generators())
    }

    /// The coordinatewise maximum of the hull, i.e. `⊕` of the generators.
    pub fn max_point(&self) -> Point {
        let mut out = self.generators[0].coords().to_vec();
        for g in &self.generators[1..] {
            for (o, v) in out.iter_mut().zip(g.coords()) {
                *o = o.max(*v);
            }
        }
        Point::from_raw(out)
    }
}

pub(crate) fn validate_coords(coords: &[usize], dim: usize) -> Result<()> {
    if coords.is_empty() {
        return Err(TropicError::EmptyCoordinates);
    }
    for (k, &c) in coords.iter().enumerate() {
        if c >= dim {
            return Err(TropicError::CoordinateOutOfRange { index: c, dim });
        }
        if coords[..k].contains(&c) {
            return Err(TropicError::DuplicateCoordinate(c));
        }
    }
    Ok(())
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// `min(0, min_j (x_j - v_j))`.
#[inline]
pub(crate) fn residual(v: &[f64], x: &[f64]) -> f64 {
    v.iter().zip(x).fold(0.0_f64, |m, (vj, xj)| m.min(xj - vj))
}

#[inline]
pub(crate) fn member_raw<'a>(gens: impl Iterator<Item = &'a Point> + Clone, x: &[f64], tol: f64) -> bool {
    let mut recon = vec![f64::NEG_INFINITY; x.len()];
    let mut top = f64::NEG_INFINITY;
    for v in gens {
        let l = residual(v.coords(), x);
        top = top.max(l);
        for (r, vj) in recon.iter_mut().zip(v.coords()) {
            *r = r.max(vj + l);
        }
    }
    top >= -tol && sup_dist(&recon, x) <= tol
}

/// Vertices of the tropical segment between `a` and `b`, ordered from `a`
/// to `b`, with repeated and collinear intermediate vertices removed.
///
/// The segment is the union of the branches `a ⊕ t ⊙ b` and `t ⊙ a ⊕ b` for
/// `t ∈ [-inf, 0]`; each branch bends only where `t` equals one of the
/// coordinate differences.
pub fn tropical_segment(a: &Point, b: &Point) -> Result<Vec<Point>> {
    check_dim(a.dim(), b.dim())?;
    let branch = |base: &Point, moving: &Point, descending: bool| -> Vec<Vec<f64>> {
        let mut ts: Vec<f64> = base
            .coords()
            .iter()
            .zip(moving.coords())
            .map(|(x, y)| x - y)
            .filter(|&t| t <= 0.0)
            .collect();
        ts.sort_by(f64::total_cmp);
        if descending {
            ts.reverse();
        }
        ts.into_iter()
            .map(|t| {
                base.coords()
                    .iter()
                    .zip(moving.coords())
                    .map(|(x, y)| x.max(y + t))
                    .collect()
            })
            .collect()
    };

    let top: Vec<f64> = a.coords().iter().zip(b.coords()).map(|(x, y)| x.max(*y)).collect();
    let mut raw = vec![a.coords().to_vec()];
    raw.extend(branch(a, b, false));
    raw.push(top);
    raw.extend(branch(b, a, true));
    raw.push(b.coords().to_vec());

    let mut verts: Vec<Vec<f64>> = Vec::with_capacity(raw.len());
    for p in raw {
        if verts.last().is_some_and(|q| sup_dist(q, &p) <= 1e-12) {
            continue;
        }
        while verts.len() >= 2 && collinear(&verts[verts.len() - 2], &verts[verts.len() - 1], &p) {
            verts.pop();
        }
        verts.push(p);
    }
    Ok(verts.into_iter().map(Point::from_raw).collect())
}

/// True when `q` lies on the straight segment from `p` to `r`.
fn collinear(p: &[f64], q: &[f64], r: &[f64]) -> bool {
    let u: Vec<f64> = q.iter().zip(p).map(|(a, b)| a - b).collect();
    let w: Vec<f64> = r.iter().zip(p).map(|(a, b)| a - b).collect();
    let scale = w.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    for k in 0..u.len() {
        for l in k + 1..u.len() {
            if (u[k] * w[l] - u[l] * w[k]).abs() > 1e-12 * scale * scale {
                return false;
            }
        }
    }
    // same direction, not overshooting
    let dot: f64 = u.iter().zip(&w).map(|(a, b)| a * b).sum();
    let ww: f64 = w.iter().map(|v| v * v).sum();
    dot >= 0.0 && dot <= ww
}

/// `⊕_i α_i ⊙ P_i` for normalized `α`; `-inf` terms are dropped.
pub fn f_combination(polytopes: &[TropicalPolytope], alphas: &[RmaxScalar]) -> Result<TropicalPolytope> {
    if polytopes.len() != alphas.len() {
        return Err(TropicError::LengthMismatch {
            points: polytopes.len(),
            coefficients: alphas.len(),
        });
    }
    check_normalized(alphas)?;
    let dim = polytopes[0].dim();
    for p in polytopes {
        check_dim(dim, p.dim())?;
    }
    let mut acc: Option<TropicalPolytope> = None;
    for (p, a) in polytopes.iter().zip(alphas) {
        if !a.is_finite() {
            continue;
        }
        let term = p.shifted(a.value());
        acc = Some(match acc {
            None => term.reduce_generators(),
            Some(prev) => prev.set_oplus(&term)?,
        });
    }
    Ok(acc.expect("normalized coefficients include a zero"))
}

fn check_unit_interval(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(TropicError::OutOfRange {
            name: "t",
            value: t,
            range: "[0, 1]",
        })
    }
}

/// `H(C, t) = C ⊕ (ln t) ⊙ A`, contracting the family whose top element is `A`.
pub fn lemma1_homotopy(c: &TropicalPolytope, a: &TropicalPolytope, t: f64) -> Result<TropicalPolytope> {
    check_unit_interval(t)?;
    check_dim(c.dim(), a.dim())?;
    if t == 0.0 {
        return Ok(c.clone());
    }
    c.set_oplus(&a.shifted(t.ln()))
}

/// `H(A, t) = {a ⊕ (ln t) ⊙ max A : a ∈ A}`, deforming `A` onto the
/// singleton `{max A}`.
pub fn retraction_homotopy(a: &TropicalPolytope, t: f64) -> Result<TropicalPolytope> {
    check_unit_interval(t)?;
    if t == 0.0 {
        return Ok(a.clone());
    }
    let top = TropicalPolytope::singleton(shift(t.ln(), &a.max_point()));
    a.set_oplus(&top)
}
