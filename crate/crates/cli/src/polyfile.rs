//! The on-disk polytope format:
//! `{"version": 1, "kind": "tropical" | "bconvex", "dim": n, "generators": [[...], ...]}`.
//!
//! `version` defaults to 1 and `kind` to `"tropical"` when absent.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use tropic_core::{BPolytope, Point, TropicalPolytope};

use crate::output::round_sig;
use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    #[default]
    Tropical,
    Bconvex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    #[serde(default = "default_version")]
    pub version: u32,
    #[serde(default)]
    pub kind: Kind,
    pub dim: usize,
    pub generators: Vec<Vec<f64>>,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

#[derive(Debug, Clone)]
pub enum AnyPolytope {
    Tropical(TropicalPolytope),
    Bconvex(BPolytope),
}

impl PolytopeFile {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: PolytopeFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            if path == "." {
                CliError::usage(format!("{origin}: {}", e.inner()))
            } else {
                CliError::usage(format!("{origin}: field `{path}`: {}", e.inner()))
            }
        })?;
        file.validate(origin)?;
        Ok(file)
    }

    fn validate(&self, origin: &str) -> Result<(), CliError> {
        let bad = |field: String, msg: String| CliError::usage(format!("{origin}: field `{field}`: {msg}"));
        if self.version != FORMAT_VERSION {
            return Err(bad("version".into(), format!("unsupported version {}", self.version)));
        }
        if self.dim == 0 {
            return Err(bad("dim".into(), "must be at least 1".into()));
        }
        if self.generators.is_empty() {
            return Err(bad("generators".into(), "must contain at least one point".into()));
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.len() != self.dim {
                return Err(bad(
                    format!("generators[{i}]"),
                    format!("expected {} coordinates, found {}", self.dim, g.len()),
                ));
            }
            if self.kind == Kind::Bconvex {
                if let Some(j) = g.iter().position(|v| *v <= 0.0) {
                    return Err(bad(
                        format!("generators[{i}][{j}]"),
                        "bconvex coordinates must be strictly positive".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn into_polytope(self) -> Result<AnyPolytope, CliError> {
        let points = self
            .generators
            .into_iter()
            .map(Point::new)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(match self.kind {
            Kind::Tropical => AnyPolytope::Tropical(TropicalPolytope::new(points)?),
            Kind::Bconvex => AnyPolytope::Bconvex(BPolytope::new(points)?),
        })
    }

    /// Canonical form: reduced generators in lexicographic order, every
    /// coordinate rounded to 12 significant digits.
    pub fn canonical_tropical(p: &TropicalPolytope) -> Self {
        Self::from_points(Kind::Tropical, p.dim(), p.canonical().generators())
    }

    pub fn canonical_bconvex(p: &BPolytope) -> Self {
        Self::from_points(Kind::Bconvex, p.dim(), p.canonical().generators())
    }

    fn from_points(kind: Kind, dim: usize, gens: &[Point]) -> Self {
        PolytopeFile {
            version: FORMAT_VERSION,
            kind,
            dim,
            generators: gens
                .iter()
                .map(|g| g.coords().iter().map(|&v| round_sig(v)).collect())
                .collect(),
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }
}

pub fn load(path: &str) -> Result<AnyPolytope, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{path}: {e}")))?;
    PolytopeFile::parse(&text, path)?.into_polytope()
}

pub fn load_tropical(path: &str) -> Result<TropicalPolytope, CliError> {
    match load(path)? {
        AnyPolytope::Tropical(p) => Ok(p),
        AnyPolytope::Bconvex(_) => Err(CliError::usage(format!(
            "{path}: field `kind`: this command needs a tropical polytope"
        ))),
    }
}
