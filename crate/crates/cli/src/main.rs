//! `tropic`: JSON front end for tropic-core.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

mod polyfile;
mod output;

use std::fmt;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tropic_core::hyperspace::verify_ball_is_fset;
use tropic_core::metrics::BISECT_TOL;
use tropic_core::sampling::{trial_rng, HullShape};
use tropic_core::{
    b_convexity_check, directed_hausdorff, dist_point_to_hull, f_combination, hausdorff, lemma1_homotopy,
    pullback_counterexample, retraction_homotopy, tropical_segment, AmbientMetric, BPolytope, DistMode, Point,
    RmaxScalar, TropicError, TropicalPolytope, DEFAULT_TOL,
};

use crate::output::{fmt_num, point_value, to_json_string};
use crate::polyfile::{load, load_tropical, AnyPolytope, PolytopeFile};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl From<TropicError> for CliError {
    fn from(e: TropicError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

#[derive(Parser)]
#[command(name = "tropic", version, about = "Max-plus convex geometry on JSON polytope files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Sup,
    Weighted,
}

impl From<MetricArg> for AmbientMetric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Sup => AmbientMetric::Sup,
            MetricArg::Weighted => AmbientMetric::Weighted,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Bisect,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Lemma1,
    Retraction,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership of a point in a polytope (tropical or bconvex).
    Member {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Print the canonical form: reduced, sorted generators.
    Reduce { file: String },
    /// Set sum {a ⊕ b}.
    Oplus { a: String, b: String },
    /// Shift every point by a finite t.
    Scale {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Cartesian product.
    Product { a: String, b: String },
    /// Coordinate projection (1-based coordinates).
    Project {
        file: String,
        #[arg(long)]
        coords: String,
    },
    /// Coordinatewise maximum of the hull.
    Maxpoint { file: String },
    /// Vertices of the tropical segment between two points.
    Segment {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Distance from a point to a hull.
    Dist {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value = "sup")]
        metric: MetricArg,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[arg(long, default_value_t = BISECT_TOL)]
        tol: f64,
    },
    /// Hausdorff distance between two hulls.
    Hausdorff {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "sup")]
        metric: MetricArg,
    },
    /// Evaluate a homotopy at time t.
    Homotopy {
        file: String,
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long)]
        t: f64,
        /// Top element A for the lemma1 variant (C is FILE).
        #[arg(long)]
        top: Option<String>,
    },
    /// ⊕ α_i ⊙ A_i over the given files.
    Fcombine {
        #[arg(required = true)]
        files: Vec<String>,
        /// Comma-separated coefficients; `-inf` allowed.
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
    },
    /// Check that Hausdorff balls are F-sets.
    VerifyLemma1 {
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value = "sup")]
        metric: MetricArg,
        /// Center polytope; a random one is drawn from the seed if omitted.
        #[arg(long)]
        center: Option<String>,
    },
    /// Check closure of a B-convex hull under max(t·x, y).
    VerifyBconvex {
        file: Option<String>,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Reproduce the fiber-product counterexample.
    Counterexample,
    /// Emit plot data: generators and tropical segments between all pairs.
    Plot {
        file: String,
        #[arg(long, value_enum, default_value = "json")]
        format: PlotFormat,
        /// Two 1-based coordinates to project onto first.
        #[arg(long)]
        coords: Option<String>,
    },
}

fn parse_floats(field: &str, s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            match t {
                "-inf" => Ok(f64::NEG_INFINITY),
                _ => t
                    .parse::<f64>()
                    .map_err(|_| CliError::usage(format!("--{field}: cannot parse `{t}` as a number"))),
            }
        })
        .collect()
}

fn parse_point(field: &str, s: &str) -> Result<Point, CliError> {
    Point::new(parse_floats(field, s)?).map_err(|e| CliError::usage(format!("--{field}: {e}")))
}

fn parse_coords(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(c) if c >= 1 => Ok(c - 1),
            _ => Err(CliError::usage(format!("--coords: `{t}` is not a 1-based coordinate index"))),
        })
        .collect()
}

/// `TROPIC_SEED` overrides `--seed`.
fn effective_seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var("TROPIC_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("TROPIC_SEED: `{v}` is not an unsigned integer"))),
        Err(_) => Ok(flag),
    }
}

fn polytope_out(p: &TropicalPolytope) -> Value {
    PolytopeFile::canonical_tropical(p).to_value()
}

struct Outcome {
    body: String,
    passed: bool,
}

impl Outcome {
    fn json(v: Value) -> Self {
        Outcome {
            body: to_json_string(v),
            passed: true,
        }
    }
}

fn run(cmd: Command) -> Result<Outcome, CliError> {
    Ok(match cmd {
        Command::Member { file, point, tol } => {
            let x = parse_point("point", &point)?;
            match load(&file)? {
                AnyPolytope::Tropical(p) => {
                    let w = p.hull_member(&x, tol)?;
                    Outcome::json(json!({
                        "member": w.is_member,
                        "lambdas": w.lambdas.iter().map(|l| l.value()).collect::<Vec<_>>(),
                        "reconstruction": point_value(w.reconstruction.coords()),
                    }))
                }
                AnyPolytope::Bconvex(p) => Outcome::json(json!({ "member": p.b_member(&x, tol)? })),
            }
        }
        Command::Reduce { file } => Outcome::json(match load(&file)? {
            AnyPolytope::Tropical(p) => polytope_out(&p),
            AnyPolytope::Bconvex(p) => PolytopeFile::canonical_bconvex(&p).to_value(),
        }),
        Command::Oplus { a, b } => {
            let (a, b) = (load_tropical(&a)?, load_tropical(&b)?);
            Outcome::json(polytope_out(&a.set_oplus(&b)?))
        }
        Command::Scale { file, t } => {
            let p = load_tropical(&file)?;
            Outcome::json(polytope_out(&p.set_scale(RmaxScalar::new(t)?)?))
        }
        Command::Product { a, b } => {
            let (a, b) = (load_tropical(&a)?, load_tropical(&b)?);
            Outcome::json(polytope_out(&a.product(&b)))
        }
        Command::Project { file, coords } => {
            let p = load_tropical(&file)?;
            Outcome::json(polytope_out(&p.project(&parse_coords(&coords)?)?))
        }
        Command::Maxpoint { file } => {
            let p = load_tropical(&file)?;
            Outcome::json(json!({ "max_point": point_value(p.max_point().coords()) }))
        }
        Command::Segment { a, b } => {
            let (a, b) = (parse_point("a", &a)?, parse_point("b", &b)?);
            let verts: Vec<Value> = tropical_segment(&a, &b)?.iter().map(|v| point_value(v.coords())).collect();
            Outcome::json(json!({ "vertices": verts }))
        }
        Command::Dist { file, point, metric, mode, tol } => {
            let p = load_tropical(&file)?;
            let x = parse_point("point", &point)?;
            let m: AmbientMetric = metric.into();
            let mode = match mode {
                ModeArg::Exact => DistMode::Exact,
                ModeArg::Bisect => DistMode::Bisect,
            };
            let d = dist_point_to_hull(m, &x, &p, mode, tol)?;
            Outcome::json(json!({
                "distance": d,
                "metric": m.name(),
                "mode": match mode { DistMode::Exact => "exact", DistMode::Bisect => "bisect" },
            }))
        }
        Command::Hausdorff { a, b, metric } => {
            let (a, b) = (load_tropical(&a)?, load_tropical(&b)?);
            let m: AmbientMetric = metric.into();
            Outcome::json(json!({
                "hausdorff": hausdorff(m, &a, &b)?,
                "directed_ab": directed_hausdorff(m, &a, &b)?,
                "directed_ba": directed_hausdorff(m, &b, &a)?,
                "metric": m.name(),
            }))
        }
        Command::Homotopy { file, variant, t, top } => {
            let c = load_tropical(&file)?;
            let out = match variant {
                Variant::Lemma1 => {
                    let top = top.ok_or_else(|| CliError::usage("--top is required for --variant lemma1"))?;
                    lemma1_homotopy(&c, &load_tropical(&top)?, t)?
                }
                Variant::Retraction => retraction_homotopy(&c, t)?,
            };
            Outcome::json(polytope_out(&out))
        }
        Command::Fcombine { files, alphas } => {
            let polys = files.iter().map(|f| load_tropical(f)).collect::<Result<Vec<_>, _>>()?;
            let alphas = parse_floats("alphas", &alphas)?
                .into_iter()
                .map(RmaxScalar::new)
                .collect::<Result<Vec<_>, _>>()?;
            Outcome::json(polytope_out(&f_combination(&polys, &alphas)?))
        }
        Command::VerifyLemma1 { r, trials, seed, metric, center } => {
            let seed = effective_seed(seed)?;
            let m: AmbientMetric = metric.into();
            let center = match center {
                Some(f) => load_tropical(&f)?,
                None => {
                    let mut rng = trial_rng(seed, u64::MAX - 1);
                    let shape = HullShape::default();
                    let dim = shape.sample_dim(&mut rng);
                    shape.polytope(&mut rng, dim)
                }
            };
            let report = verify_ball_is_fset(&center, r, m, trials, seed)?;
            Outcome {
                passed: report.passed(),
                body: to_json_string(json!({
                    "metric": m.name(),
                    "r": r,
                    "center": polytope_out(&center),
                    "trials": report.trials,
                    "violations": report.violations,
                    "worst_margin": report.worst_margin,
                    "seed": report.seed,
                })),
            }
        }
        Command::VerifyBconvex { file, trials, seed } => {
            let seed = effective_seed(seed)?;
            let p = match file {
                Some(f) => match load(&f)? {
                    AnyPolytope::Bconvex(p) => p,
                    AnyPolytope::Tropical(_) => {
                        return Err(CliError::usage(format!("{f}: field `kind`: expected \"bconvex\"")))
                    }
                },
                None => {
                    let mut rng = trial_rng(seed, u64::MAX);
                    let shape = HullShape::default();
                    let dim = shape.sample_dim(&mut rng);
                    BPolytope::exp_bridge(&shape.polytope(&mut rng, dim))?
                }
            };
            let report = b_convexity_check(&p, trials, seed);
            Outcome {
                passed: report.passed(),
                body: to_json_string(json!({
                    "polytope": PolytopeFile::canonical_bconvex(&p).to_value(),
                    "trials": report.trials,
                    "violations": report.violations,
                    "worst_margin": report.worst_margin,
                    "seed": report.seed,
                })),
            }
        }
        Command::Counterexample => {
            let report = pullback_counterexample();
            let mut v = serde_json::to_value(&report).expect("plain data");
            for key in ["A", "B", "C", "D", "D1"] {
                let p: TropicalPolytope = serde_json::from_value(v[key].take()).expect("polytope");
                v[key] = polytope_out(&p);
            }
            v["not_a_pullback"] = json!(report.not_a_pullback());
            Outcome {
                passed: report.not_a_pullback(),
                body: to_json_string(v),
            }
        }
        Command::Plot { file, format, coords } => {
            let mut p = load_tropical(&file)?;
            if let Some(c) = coords {
                p = p.project(&parse_coords(&c)?)?;
            }
            if p.dim() != 2 {
                return Err(CliError::usage(format!(
                    "plot needs a 2-dimensional polytope (got {}); pass --coords i,j",
                    p.dim()
                )));
            }
            plot(&p.canonical(), format)?
        }
    })
}

fn plot(p: &TropicalPolytope, format: PlotFormat) -> Result<Outcome, CliError> {
    let gens = p.generators();
    let mut segments = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            segments.push((i, j, tropical_segment(&gens[i], &gens[j])?));
        }
    }
    let body = match format {
        PlotFormat::Json => to_json_string(json!({
            "generators": gens.iter().map(|g| point_value(g.coords())).collect::<Vec<_>>(),
            "segments": segments.iter().map(|(i, j, poly)| json!({
                "from": i,
                "to": j,
                "polyline": poly.iter().map(|v| point_value(v.coords())).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        PlotFormat::Csv => {
            let mut out = String::from("kind,id,order,x,y\n");
            for (i, g) in gens.iter().enumerate() {
                out += &format!("generator,{i},0,{},{}\n", fmt_num(g[0]), fmt_num(g[1]));
            }
            for (i, j, poly) in &segments {
                for (k, v) in poly.iter().enumerate() {
                    out += &format!("segment,{i}-{j},{k},{},{}\n", fmt_num(v[0]), fmt_num(v[1]));
                }
            }
            out.pop();
            out
        }
    };
    Ok(Outcome { body, passed: true })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout(), "{}", out.body);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
