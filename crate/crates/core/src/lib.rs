//! Max-plus (tropical) convex geometry.
//!
//! * [`algebra`]: `R ∪ {-inf}` scalars, points, `⊕`, `⊙` and tropical combinations.
//! * [`polytope`]: finitely generated max-plus convex compacta, membership by
//!   residuation, generator reduction, and the set operations `⊕`, `⊙`,
//!   products and projections.
//! * [`metrics`]: sup and weighted truncated metrics, exact point-to-hull
//!   distance, Hausdorff distance.
//! * [`hyperspace`]: the c-structure of finite families, the ball F-set
//!   check, the projection functor, selections and the fiber-product
//!   counterexample.
//! * [`bconvex`]: B-convex hulls in the positive orthant and the log bridge.
//!
//! ```
//! use tropic_core::{Point, TropicalPolytope, DEFAULT_TOL};
//!
//! let diagonal = TropicalPolytope::from_rows(vec![vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
//! let x = Point::new(vec![0.5, 0.5]).unwrap();
//! assert!(diagonal.hull_member(&x, DEFAULT_TOL).unwrap().is_member);
//! ```

pub mod algebra;
pub mod bconvex;
pub mod error;
pub mod hyperspace;
pub mod metrics;
pub mod polytope;
pub mod sampling;

pub use algebra::{check_normalized, tropical_combination, vec_odot, vec_oplus, Point, RmaxScalar, DEFAULT_TOL};
pub use bconvex::{b_convexity_check, BPolytope};
pub use error::{Result, TropicError};
pub use hyperspace::{
    fiber_member, mpcc_project, pullback_counterexample, selection_map, verify_ball_is_fset, CStructureFamily,
    CounterexampleReport, VerificationReport,
};
pub use metrics::{
    directed_hausdorff, dist_point_to_hull, eps_feasible, hausdorff, point_dist, AmbientMetric, DistMode, ExpMetric,
};
pub use polytope::{
    f_combination, lemma1_homotopy, retraction_homotopy, tropical_segment, MembershipWitness, TropicalPolytope,
};
