//! Acceptance suite: one check per criterion, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the report lines are always
//! printed; exits non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use common::{brute_force_min_dist, sup};
use rand::Rng;
use tropic_core::sampling::{random_admissible, random_point, sample_hull_point, trial_rng, HullShape};
use tropic_core::*;

const HULL_EQ_TOL: f64 = 1e-9;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:.2?}, limit {limit:?}"))
}

/// 1. hull_member agrees with a brute-force search over 10^5 coefficient vectors.
fn membership_oracle() -> Result<String, String> {
    let start = Instant::now();
    let (mut members, mut outsiders) = (0, 0);
    for dim in 2..=4usize {
        let shape = HullShape::with_dim(dim);
        for trial in 0..1000u64 {
            let mut rng = trial_rng(1000 + dim as u64, trial);
            let p = shape.polytope(&mut rng, dim);
            let x = if trial % 2 == 0 {
                sample_hull_point(&mut rng, &p)
            } else {
                random_point(&mut rng, dim, (-1.5, 1.5))
            };
            let verdict = p.hull_member(&x, DEFAULT_TOL).unwrap().is_member;
            if verdict {
                members += 1;
                let best = brute_force_min_dist(&p, &x, 100_000, 1e-6, &mut rng);
                ensure(best <= 1e-6, || format!("dim {dim} trial {trial}: member but oracle min {best:e}"))?;
            } else {
                outsiders += 1;
                let best = brute_force_min_dist(&p, &x, 100_000, 0.0, &mut rng);
                ensure(best > 1e-3, || format!("dim {dim} trial {trial}: non-member but oracle min {best:e}"))?;
            }
        }
    }
    within(start, Duration::from_secs(60), "membership oracle")?;
    Ok(format!(
        "3000 pairs ({members} members, {outsiders} non-members) in {:.1?}",
        start.elapsed()
    ))
}

/// 2. Balls are F-sets: zero violations for every (metric, r).
fn lemma1_balls() -> Result<String, String> {
    let start = Instant::now();
    let shape = HullShape::default();
    let mut worst = f64::NEG_INFINITY;
    for m in AmbientMetric::ALL {
        for (k, r) in [0.1, 0.5, 0.9].into_iter().enumerate() {
            let mut rng = trial_rng(42, 10 + k as u64);
            let dim = shape.sample_dim(&mut rng);
            let center = shape.polytope(&mut rng, dim);
            let report = verify_ball_is_fset(&center, r, m, 500, 42).unwrap();
            ensure(report.trials == 500 && report.violations == 0, || {
                format!("{} r={r}: {report:?}", m.name())
            })?;
            worst = worst.max(report.worst_margin);
        }
    }
    within(start, Duration::from_secs(120), "ball verification")?;
    Ok(format!("6 x 500 trials, worst margin {worst:.3e}, {:.1?}", start.elapsed()))
}

/// 3. Homotopy endpoints on random families.
fn homotopy_endpoints() -> Result<String, String> {
    let shape = HullShape::default();
    for trial in 0..200u64 {
        let mut rng = trial_rng(3, trial);
        let dim = shape.sample_dim(&mut rng);
        let n = rng.random_range(1..=4);
        let fam = CStructureFamily::new((0..n).map(|_| shape.polytope(&mut rng, dim)).collect()).unwrap();
        let (c, _) = fam.sample_f_element(&mut rng);
        let top = fam.top();
        ensure(lemma1_homotopy(&c, top, 0.0).unwrap().hull_eq(&c, HULL_EQ_TOL), || {
            format!("trial {trial}: H(C,0) != C")
        })?;
        ensure(lemma1_homotopy(&c, top, 1.0).unwrap().hull_eq(top, HULL_EQ_TOL), || {
            format!("trial {trial}: H(C,1) != A")
        })?;

        let a = shape.polytope(&mut rng, dim);
        let end = retraction_homotopy(&a, 1.0).unwrap();
        ensure(end.len() == 1 && end.generators()[0].approx_eq(&a.max_point(), HULL_EQ_TOL), || {
            format!("trial {trial}: retraction at 1 is {end:?}")
        })?;
        ensure(retraction_homotopy(&a, 0.0).unwrap().hull_eq(&a, HULL_EQ_TOL), || {
            format!("trial {trial}: retraction at 0 moved A")
        })?;
    }
    Ok("200 families".into())
}

/// 4. The fiber-product counterexample.
fn pullback() -> Result<String, String> {
    let start = Instant::now();
    let report = pullback_counterexample();
    let eq = |p: &TropicalPolytope, c: &[usize], t: &TropicalPolytope| {
        mpcc_project(p, c).unwrap().hull_eq(t, 1e-12)
    };
    ensure(eq(&report.d, &[0, 1], &report.b) && eq(&report.d1, &[0, 1], &report.b), || {
        "projection onto coords {1,2} differs from B".into()
    })?;
    ensure(eq(&report.d, &[0, 2], &report.c) && eq(&report.d1, &[0, 2], &report.c), || {
        "projection onto coords {1,3} differs from C".into()
    })?;
    ensure(report.projections_equal, || "report flags unequal projections".into())?;
    let d = hausdorff(AmbientMetric::Sup, &report.d, &report.d1).unwrap();
    ensure((d - 0.5).abs() <= 1e-9, || format!("d_H(D, D1) = {d}"))?;
    // grid oracle: nearest diagonal point to each square point
    let grid = (0..=100)
        .flat_map(|i| (0..=100).map(move |j| (i as f64 / 100.0, j as f64 / 100.0)))
        .map(|(x, y)| {
            (0..=1000)
                .map(|k| {
                    let s = k as f64 / 1000.0;
                    (x - s).abs().max((y - s).abs())
                })
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    ensure((grid - 0.5).abs() < 1e-3, || format!("grid oracle gives {grid}"))?;
    within(start, Duration::from_secs(1), "counterexample")?;
    Ok(format!("d_H(D, D1) = {d}, grid oracle {grid:.4}"))
}

/// 5. Distance engine: exact vs bisection, generator attainment, metric axioms.
fn hausdorff_engine() -> Result<String, String> {
    let shape = HullShape::default();
    let mut worst_gap: f64 = 0.0;
    for m in AmbientMetric::ALL {
        for trial in 0..1000u64 {
            let mut rng = trial_rng(50, trial);
            let dim = shape.sample_dim(&mut rng);
            let p = shape.polytope(&mut rng, dim);
            let x = random_point(&mut rng, dim, (-2.0, 2.0));
            let exact = dist_point_to_hull(m, &x, &p, DistMode::Exact, 0.0).unwrap();
            let bis = dist_point_to_hull(m, &x, &p, DistMode::Bisect, 1e-10).unwrap();
            worst_gap = worst_gap.max((exact - bis).abs());
            ensure((exact - bis).abs() <= 1e-8, || format!("{} trial {trial}: {exact} vs {bis}", m.name()))?;
        }

        for trial in 0..40u64 {
            let mut rng = trial_rng(51, trial);
            let dim = shape.sample_dim(&mut rng);
            let p = shape.polytope(&mut rng, dim);
            let q = shape.polytope(&mut rng, dim);
            let directed = directed_hausdorff(m, &p, &q).unwrap();
            let sampled = (0..10_000)
                .map(|_| {
                    let a = sample_hull_point(&mut rng, &p);
                    dist_point_to_hull(m, &a, &q, DistMode::Exact, 0.0).unwrap()
                })
                .fold(0.0, f64::max);
            ensure(sampled <= directed + 1e-9 && directed - sampled <= 1e-6, || {
                format!("{} trial {trial}: directed {directed}, sampled sup {sampled}", m.name())
            })?;
        }

        for trial in 0..500u64 {
            let mut rng = trial_rng(52, trial);
            let dim = shape.sample_dim(&mut rng);
            let [p, q, r] = [0; 3].map(|_| shape.polytope(&mut rng, dim));
            let pq = hausdorff(m, &p, &q).unwrap();
            ensure(pq == hausdorff(m, &q, &p).unwrap(), || "asymmetric".into())?;
            let via = hausdorff(m, &p, &r).unwrap() + hausdorff(m, &r, &q).unwrap();
            ensure(pq <= via + 1e-9, || format!("{} trial {trial}: triangle {pq} > {via}", m.name()))?;
            ensure((pq <= 1e-9) == p.hull_eq(&q, 1e-9), || "indiscernibles".into())?;
            ensure(hausdorff(m, &p, &p.reduce_generators()).unwrap() == 0.0, || "d(P,P) != 0".into())?;
        }
    }
    Ok(format!("worst exact/bisect gap {worst_gap:.2e}"))
}

/// 6. Generator formulas and algebraic identities, 500 checks each.
fn algebraic_identities() -> Result<String, String> {
    let shape = HullShape::default();
    for trial in 0..500u64 {
        let mut rng = trial_rng(60, trial);
        let dim = shape.sample_dim(&mut rng);
        let p = shape.polytope(&mut rng, dim);
        let q = shape.polytope(&mut rng, dim);

        // set_oplus: forward via min-coupling, backward via marginals
        let sum = p.set_oplus(&q).unwrap();
        let lam = random_admissible(&mut rng, p.len());
        let mu = random_admissible(&mut rng, q.len());
        let a = common::evaluate(p.generators(), &lam);
        let b = common::evaluate(q.generators(), &mu);
        let ab: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x.max(*y)).collect();
        ensure(sum.contains(&Point::new(ab).unwrap(), HULL_EQ_TOL).unwrap(), || {
            format!("trial {trial}: a ⊕ b outside set_oplus")
        })?;
        let z = sample_hull_point(&mut rng, &sum);
        // z = a' ⊕ b' with a' the greatest point of P below z, b' likewise
        let split_ok = {
            let below = |poly: &TropicalPolytope| {
                let w = poly.hull_member(&z, HULL_EQ_TOL).unwrap();
                (w.lambdas.iter().fold(f64::NEG_INFINITY, |m, l| m.max(l.value())), w.reconstruction)
            };
            let ((ta, pa), (tb, pb)) = (below(&p), below(&q));
            ta == 0.0 && tb == 0.0 && {
                let joined: Vec<f64> = pa.coords().iter().zip(pb.coords()).map(|(x, y)| x.max(*y)).collect();
                sup(&joined, z.coords()) <= HULL_EQ_TOL
            }
        };
        ensure(split_ok, || format!("trial {trial}: member of set_oplus does not split"))?;

        // product
        let k = shape.sample_dim(&mut rng);
        let r = shape.polytope(&mut rng, k);
        let prod = p.product(&r);
        let pa = sample_hull_point(&mut rng, &p);
        let rb = sample_hull_point(&mut rng, &r);
        let mut cat = pa.coords().to_vec();
        cat.extend_from_slice(rb.coords());
        ensure(prod.contains(&Point::new(cat).unwrap(), HULL_EQ_TOL).unwrap(), || {
            format!("trial {trial}: product misses a pair")
        })?;
        let first: Vec<usize> = (0..dim).collect();
        let second: Vec<usize> = (dim..dim + k).collect();
        ensure(
            prod.project(&first).unwrap().hull_eq(&p, HULL_EQ_TOL)
                && prod.project(&second).unwrap().hull_eq(&r, HULL_EQ_TOL),
            || format!("trial {trial}: product does not project onto its factors"),
        )?;

        // idempotency
        ensure(p.set_oplus(&p).unwrap().hull_eq(&p, HULL_EQ_TOL), || format!("trial {trial}: P ⊕ P != P"))?;

        // absorption
        let n = rng.random_range(1..=4);
        let fam = CStructureFamily::new((0..n).map(|_| shape.polytope(&mut rng, dim)).collect()).unwrap();
        let (c, _) = fam.sample_f_element(&mut rng);
        ensure(c.set_oplus(fam.top()).unwrap().hull_eq(fam.top(), HULL_EQ_TOL), || {
            format!("trial {trial}: C ⊕ A != A")
        })?;

        // functoriality
        let coords: Vec<usize> = (0..dim).filter(|_| rng.random_bool(0.6)).collect();
        let coords = if coords.is_empty() { vec![dim - 1] } else { coords };
        let t = RmaxScalar::new(rng.random_range(-2.0..2.0)).unwrap();
        ensure(
            sum.project(&coords)
                .unwrap()
                .hull_eq(&p.project(&coords).unwrap().set_oplus(&q.project(&coords).unwrap()).unwrap(), HULL_EQ_TOL),
            || format!("trial {trial}: projection does not commute with ⊕"),
        )?;
        ensure(
            p.set_scale(t)
                .unwrap()
                .project(&coords)
                .unwrap()
                .hull_eq(&p.project(&coords).unwrap().set_scale(t).unwrap(), HULL_EQ_TOL),
            || format!("trial {trial}: projection does not commute with ⊙"),
        )?;
        let nested = mpcc_project(&mpcc_project(&p, &coords).unwrap(), &[coords.len() - 1]).unwrap();
        ensure(
            nested.hull_eq(&mpcc_project(&p, &[coords[coords.len() - 1]]).unwrap(), HULL_EQ_TOL),
            || format!("trial {trial}: nested projections do not compose"),
        )?;
    }
    Ok("500 x {oplus, product, idempotency, absorption, functoriality}".into())
}

/// 7. B-convex bridge and closure.
fn bconvex_bridge() -> Result<String, String> {
    let shape = HullShape::default();
    let mut checked = 0;
    for trial in 0..20u64 {
        let mut rng = trial_rng(70, trial);
        let dim = shape.sample_dim(&mut rng);
        let b = BPolytope::exp_bridge(&shape.polytope(&mut rng, dim)).unwrap();
        let q = b.log_bridge();
        for i in 0..1000 {
            let x = if i % 2 == 0 {
                b.sample_point(&mut rng)
            } else {
                Point::new((0..dim).map(|_| rng.random_range(0.2..3.5)).collect()).unwrap()
            };
            let lx = Point::new(x.coords().iter().map(|v| v.ln()).collect()).unwrap();
            let lhs = b.b_member(&x, 1e-9).unwrap();
            let rhs = q.contains(&lx, 1e-9).unwrap();
            ensure(lhs == rhs, || format!("polytope {trial}, point {x}: b_member {lhs}, log side {rhs}"))?;
            checked += 1;
        }
    }
    let mut rng = trial_rng(71, 0);
    let b = BPolytope::exp_bridge(&shape.polytope(&mut rng, 3)).unwrap();
    let report = b_convexity_check(&b, 500, 71);
    ensure(report.violations == 0, || format!("{report:?}"))?;
    Ok(format!("{checked} bridge points, closure worst margin {:.2e}", report.worst_margin))
}

fn tropic() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tropic"))
}

fn fixtures() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

/// 8. CLI determinism, fixture round-trip, counterexample exit code.
fn cli_contract() -> Result<String, String> {
    let runs = [
        vec!["verify-lemma1", "--r", "0.5", "--trials", "100", "--seed", "9", "--metric", "weighted"],
        vec!["verify-bconvex", "--trials", "100", "--seed", "9"],
        vec!["counterexample"],
    ];
    for args in &runs {
        let a = tropic().args(args).env_remove("TROPIC_SEED").output().unwrap();
        let b = tropic().args(args).env_remove("TROPIC_SEED").output().unwrap();
        ensure(a.status.success() && a.stdout == b.stdout, || format!("`{}` not deterministic", args.join(" ")))?;
    }

    let files = fixtures();
    ensure(!files.is_empty(), || "no fixtures shipped".into())?;
    for f in &files {
        let text = std::fs::read(f).unwrap();
        let out = tropic().arg("reduce").arg(f).output().unwrap();
        ensure(out.status.success() && out.stdout == text, || format!("{} does not round-trip", f.display()))?;
    }

    let out = tropic().arg("counterexample").output().unwrap();
    ensure(out.status.code() == Some(0), || format!("counterexample exited {:?}", out.status.code()))?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    ensure(v["projections_equal"] == true && v["hausdorff_D_D1"] == 0.5, || format!("report {v}"))?;
    Ok(format!("{} fixtures round-trip", files.len()))
}

fn main() {
    let checks: [(&str, Check); 8] = [
        ("AC1 membership oracle equivalence", membership_oracle),
        ("AC2 ball F-set verification", lemma1_balls),
        ("AC3 homotopy endpoints", homotopy_endpoints),
        ("AC4 pullback counterexample", pullback),
        ("AC5 Hausdorff engine", hausdorff_engine),
        ("AC6 algebraic identities", algebraic_identities),
        ("AC7 B-convex bridge", bconvex_bridge),
        ("AC8 CLI determinism and round-trip", cli_contract),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
