use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand};
use hullbound::{Complex64, Generator};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Subcommand, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Exact membership of --w, or a hull-point search, for a finite point set
    Points,
    /// Inscribed-angle construction for points on the unit circle
    CirclePoints,
    /// Minimax values over a grid, written as CSV
    Grid,
    /// Non-convexity witnesses and quadratic separators for circular arcs
    Arc,
    /// Separation of the origin from a torus knot at a given degree
    Knot,
    /// Degree-2 separator of a point from a totally real circle or disk
    Separate2,
    /// Clearance of a level-set family from a torus knot
    Family,
    /// Monic minimax polynomial on a conjugation-symmetric set
    Cheb,
    /// Exact membership checks on the rings of the accumulating curve
    Pathological,
    /// Determinant check for the power-sum Jacobian
    Jacobian,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Points => "points",
            Command::CirclePoints => "circle-points",
            Command::Grid => "grid",
            Command::Arc => "arc",
            Command::Knot => "knot",
            Command::Separate2 => "separate2",
            Command::Family => "family",
            Command::Cheb => "cheb",
            Command::Pathological => "pathological",
            Command::Jacobian => "jacobian",
        }
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T, String> {
    serde_json::from_str(s).map_err(|e| e.to_string())
}

/// Complex number written `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pt(pub Complex64);

impl FromStr for Pt {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        parse_json(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointList(pub Vec<Complex64>);

impl FromStr for PointList {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        parse_json(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Numbers(pub Vec<f64>);

impl FromStr for Numbers {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        parse_json(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorArg(pub Generator<f64>);

impl FromStr for GeneratorArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        parse_json(s)
    }
}

/// Every run parameter. Flags and the `--config` file share these names
/// (snake_case in JSON); a flag wins over the file.
#[derive(Args, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// JSON file holding a RunConfig document
    #[arg(long, global = true, value_name = "FILE")]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// Subcommand; only settable from the config file
    #[arg(skip)]
    pub subcommand: Option<Command>,

    /// Points as a JSON array of [re, im]
    #[arg(long, global = true, value_name = "JSON")]
    pub points: Option<PointList>,
    /// File holding a JSON array of [re, im]
    #[arg(long, global = true, value_name = "FILE")]
    pub points_file: Option<PathBuf>,
    /// Compact set generator, e.g. {"kind":"circle","center":[0,0],"radius":1}
    #[arg(long, global = true, value_name = "JSON")]
    pub generator: Option<GeneratorArg>,
    /// Query point [re, im] (second coordinate for separate2)
    #[arg(long, global = true, value_name = "JSON")]
    pub w: Option<Pt>,
    /// First coordinate [re, im] of the separate2 query point
    #[arg(long, global = true, value_name = "JSON")]
    pub z: Option<Pt>,
    /// Increasing angles in [0, 2π) as a JSON array
    #[arg(long, global = true, value_name = "JSON")]
    pub angles: Option<Numbers>,
    /// Degree of the point construction or point count parameter
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// First gap of the sequential circle construction
    #[arg(long, global = true)]
    pub g0: Option<f64>,
    /// Position of w along the first gap circle, in (0, 1)
    #[arg(long, global = true)]
    pub t: Option<f64>,
    /// Arc half-angle
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true)]
    pub p: Option<u32>,
    #[arg(long, global = true)]
    pub q: Option<u32>,
    /// Radius of the totally real circle
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    /// Coefficients a b c of the family a·zw + b·z + c·w
    #[arg(long, global = true, num_args = 3, allow_negative_numbers = true, value_names = ["A", "B", "C"])]
    pub bilinear: Option<Vec<i32>>,
    /// Degree bound d
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Relative residual threshold of the exact oracle
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub eps_member: Option<f64>,
    #[arg(long, global = true)]
    pub eps_sep: Option<f64>,
    /// Half-plane count L of the polygonal modulus relaxation
    #[arg(long, short = 'L', global = true)]
    pub directions: Option<usize>,
    /// Sampling density N
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Grid box: LO HI for a square, or XMIN XMAX YMIN YMAX
    #[arg(long, global = true, num_args = 2..=4, allow_negative_numbers = true)]
    pub bbox: Option<Vec<f64>>,
    /// Grid nodes per side
    #[arg(long, global = true)]
    pub res: Option<usize>,
    /// Seed for randomized sweeps
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of random trials in sweeps
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Largest ring index of the pathological curve
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    /// JSON report path (stdout when absent)
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_name = "FILE")]
    pub csv: Option<PathBuf>,
    #[arg(long, global = true, value_name = "FILE")]
    pub svg: Option<PathBuf>,
}

pub fn strip_nulls(v: Value) -> Value {
    match v {
        Value::Object(map) => Value::Object(map.into_iter().filter(|(_, v)| !v.is_null()).collect()),
        other => other,
    }
}

impl RunConfig {
    /// Overlays `self` (the flags) on the config file named by `--config`.
    pub fn resolve(self) -> Result<RunConfig> {
        let Some(path) = self.config.clone() else {
            let out = self;
            out.validate()?;
            return Ok(out);
        };
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let file: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        let Value::Object(mut merged) = file else { bail!("{} must hold a JSON object", path.display()) };
        let Value::Object(flags) = strip_nulls(serde_json::to_value(&self)?) else { unreachable!() };
        merged.extend(flags);
        let mut out: RunConfig = serde_json::from_value(Value::Object(merged))
            .with_context(|| format!("invalid config in {}", path.display()))?;
        out.config = Some(path);
        out.validate()?;
        Ok(out)
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [("tol", self.tol), ("eps_member", self.eps_member), ("eps_sep", self.eps_sep)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    bail!("{name} must be positive, got {v}");
                }
            }
        }
        if let Some(r) = self.res {
            if r < 2 {
                bail!("res must be at least 2, got {r}");
            }
        }
        if self.points.is_some() && self.points_file.is_some() {
            bail!("give either points or points_file, not both");
        }
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    /// Points from `points` or `points_file`, if either is set.
    pub fn point_list(&self) -> Result<Option<Vec<Complex64>>> {
        if let Some(p) = &self.points {
            return Ok(Some(p.0.clone()));
        }
        match &self.points_file {
            Some(path) => Ok(Some(read_points(path)?)),
            None => Ok(None),
        }
    }
}

fn read_points(path: &Path) -> Result<Vec<Complex64>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let list: PointList = serde_json::from_str(&text)
        .with_context(|| format!("{} must hold a JSON array of [re, im]", path.display()))?;
    Ok(list.0)
}
