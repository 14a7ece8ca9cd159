//! TOML scenario files.
//!
//! ```toml
//! id = "example32"
//! dimension = 1
//! kind = "kannan"            # or "chatterjea"
//! alpha = 0.5
//! gamma = 0.3333333333333333
//! map = ["if(x>0, -(1/2)*x*exp(-1/abs(x)), if(x<0, -(1/3)*x*exp(-1/abs(x)), 0))"]
//!
//! [domain]
//! lower = [-1.0]
//! upper = [1.0]
//!
//! [gmetric]
//! construction = "sum"       # "sum" | "max" over `metric`, or "raw" with `expression`
//! metric = "abs(x - y)"
//!
//! [[subsets]]
//! boxes = [{ lower = [0.0], upper = [1.0] }]
//!
//! [[subsets]]
//! predicate = "x <= 0"
//!
//! [phi]
//! kind = "identity"          # "identity" | "expression" (in t) | "integral" (density in t)
//!
//! [psi]
//! kind = "zero"              # "zero" | "expression" (in x, y, z)
//! mode = "degenerate-allowed"
//!
//! [solver]
//! tol = 1e-8
//! max_iter = 200
//! seed = 0
//! samples = 10000
//! ```
//!
//! Point variables are `x`, `y`, `z` with coordinates `x0 .. x{d-1}`; the bare
//! name is the single coordinate when `dimension = 1`. Maps and predicates
//! see `x`; metrics see `x, y`; raw G-metrics see `x, y, z`.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::config::expr::{eval_bool, eval_expr, parse_expr, Expr, ExprError, ValueKind};
use crate::contraction::{ContractionKind, Scenario, ScenarioParts};
use crate::control::{make_integral_phi, AlteringDistanceFn, DensityFn, PsiFn, PsiMode};
use crate::corpus::DEFAULT_QUAD_TOL;
use crate::cyclic::{CyclicCover, SubsetSpec};
use crate::error::{Error, Result};
use crate::gmetric::{estimate_g_diameter, g_max_from_metric, g_sum_from_metric, BoxDomain, GMetricFn, MetricFn};
use crate::operator::Operator;

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BoxConfig {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum KindConfig {
    Kannan,
    Chatterjea,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "construction", rename_all = "lowercase", deny_unknown_fields)]
pub enum GMetricConfig {
    Sum { metric: String },
    Max { metric: String },
    Raw { expression: String },
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SubsetConfig {
    pub boxes: Option<Vec<BoxConfig>>,
    pub predicate: Option<String>,
    pub boundary_tol: Option<f64>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PhiConfig {
    Identity {},
    Expression { expression: String },
    Integral { density: String, quad_tol: Option<f64> },
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum PsiModeConfig {
    Strict,
    DegenerateAllowed,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PsiConfig {
    Zero { mode: Option<PsiModeConfig> },
    Expression { expression: String, mode: Option<PsiModeConfig> },
}

impl Default for PhiConfig {
    fn default() -> Self {
        PhiConfig::Identity {}
    }
}

impl Default for PsiConfig {
    fn default() -> Self {
        PsiConfig::Zero { mode: None }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct SolverDefaults {
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    pub samples: usize,
    pub x0: Option<Vec<f64>>,
}

impl Default for SolverDefaults {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 200,
            seed: 0,
            samples: 10_000,
            x0: None,
        }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub id: String,
    pub dimension: usize,
    pub kind: KindConfig,
    pub alpha: f64,
    pub gamma: f64,
    pub domain: BoxConfig,
    pub gmetric: GMetricConfig,
    pub subsets: Vec<SubsetConfig>,
    pub map: Vec<String>,
    #[serde(default)]
    pub phi: PhiConfig,
    #[serde(default)]
    pub psi: PsiConfig,
    #[serde(default)]
    pub solver: SolverDefaults,
}

/// A built scenario together with the file's solver defaults.
#[derive(Clone, Debug)]
pub struct LoadedScenario {
    pub scenario: Scenario<f64>,
    pub solver: SolverDefaults,
}

/// Resolves `x`, `x0`, `x1`, … against point coordinates, and plain names
/// against scalars.
struct Env<'a> {
    points: &'a [(&'a str, &'a [f64])],
    scalars: &'a [(&'a str, f64)],
}

impl Env<'_> {
    fn get(&self, name: &str) -> Option<f64> {
        if let Some(&(_, v)) = self.scalars.iter().find(|(n, _)| *n == name) {
            return Some(v);
        }
        for &(prefix, coords) in self.points {
            if name == prefix && coords.len() == 1 {
                return Some(coords[0]);
            }
            if let Some(rest) = name.strip_prefix(prefix) {
                if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                    return rest.parse::<usize>().ok().and_then(|k| coords.get(k).copied());
                }
            }
        }
        None
    }
}

fn ctx(path: impl Into<String>) -> impl FnOnce(ExprError) -> Error {
    let path = path.into();
    move |source| Error::ConfigExpr { path, source }
}

/// Parses `text`, checks its kind, and checks every variable is bound by
/// `points` (each of dimension `dim`) and `scalars`.
fn compile(
    path: &str,
    text: &str,
    kind: ValueKind,
    dim: usize,
    points: &[&str],
    scalars: &[&str],
) -> Result<Arc<Expr>> {
    let e = parse_expr(text).map_err(ctx(path))?;
    let got = e.kind().map_err(ctx(path))?;
    if got != kind {
        return Err(Error::config(
            path,
            match kind {
                ValueKind::Number => "expected a numeric expression; booleans are allowed only inside if/and/or/not",
                ValueKind::Boolean => "expected a boolean predicate",
            },
        ));
    }
    let zeros = vec![0.0; dim];
    let pts: Vec<(&str, &[f64])> = points.iter().map(|&p| (p, zeros.as_slice())).collect();
    let sc: Vec<(&str, f64)> = scalars.iter().map(|&s| (s, 0.0)).collect();
    let env = Env {
        points: &pts,
        scalars: &sc,
    };
    for v in e.variables() {
        if env.get(&v).is_none() {
            return Err(Error::ConfigExpr {
                path: path.into(),
                source: ExprError::UnboundVariable { name: v },
            });
        }
    }
    Ok(Arc::new(e))
}

fn box_domain(path: &str, b: &BoxConfig, dim: usize) -> Result<BoxDomain<f64>> {
    if b.lower.len() != dim || b.upper.len() != dim {
        return Err(Error::config(
            path,
            format!(
                "box bounds have lengths {} and {}, dimension is {dim}",
                b.lower.len(),
                b.upper.len()
            ),
        ));
    }
    BoxDomain::new(b.lower.clone(), b.upper.clone()).map_err(|e| Error::config(path, e.to_string()))
}

impl ScenarioConfig {
    pub fn parse(document: &str) -> Result<Self> {
        toml::from_str(document).map_err(|e| Error::config("document", e.to_string().trim_end()))
    }

    /// Builds the scenario. Runs construction-time validation only.
    pub fn build(&self) -> Result<Scenario<f64>> {
        let d = self.dimension;
        if d == 0 {
            return Err(Error::config("dimension", "must be at least 1"));
        }
        let domain = box_domain("domain", &self.domain, d)?;

        let gmetric = match &self.gmetric {
            GMetricConfig::Sum { metric } | GMetricConfig::Max { metric } => {
                let e = compile("gmetric.metric", metric, ValueKind::Number, d, &["x", "y"], &[])?;
                let name = metric.clone();
                let m = MetricFn::new(name, domain.clone(), move |x: &[f64], y: &[f64]| {
                    let env = Env {
                        points: &[("x", x), ("y", y)],
                        scalars: &[],
                    };
                    Ok(eval_expr(&e, &|n: &str| env.get(n))?)
                });
                if matches!(self.gmetric, GMetricConfig::Sum { .. }) {
                    g_sum_from_metric(&m)
                } else {
                    g_max_from_metric(&m)
                }
            }
            GMetricConfig::Raw { expression } => {
                let e = compile("gmetric.expression", expression, ValueKind::Number, d, &["x", "y", "z"], &[])?;
                GMetricFn::new(expression.clone(), domain.clone(), move |x: &[f64], y: &[f64], z: &[f64]| {
                    let env = Env {
                        points: &[("x", x), ("y", y), ("z", z)],
                        scalars: &[],
                    };
                    Ok(eval_expr(&e, &|n: &str| env.get(n))?)
                })
            }
        };

        if self.subsets.is_empty() {
            return Err(Error::config("subsets", "at least one subset is required"));
        }
        let mut specs = Vec::with_capacity(self.subsets.len());
        for (i, s) in self.subsets.iter().enumerate() {
            let path = format!("subsets[{i}]");
            let spec = match (&s.boxes, &s.predicate) {
                (Some(boxes), None) => {
                    if boxes.is_empty() {
                        return Err(Error::config(format!("{path}.boxes"), "empty box list"));
                    }
                    let bs = boxes
                        .iter()
                        .enumerate()
                        .map(|(j, b)| box_domain(&format!("{path}.boxes[{j}]"), b, d))
                        .collect::<Result<Vec<_>>>()?;
                    SubsetSpec::boxes(bs)
                }
                (None, Some(pred)) => {
                    let p = format!("{path}.predicate");
                    let e = compile(&p, pred, ValueKind::Boolean, d, &["x"], &[])?;
                    SubsetSpec::predicate(pred.clone(), domain.clone(), move |x: &[f64]| {
                        let env = Env {
                            points: &[("x", x)],
                            scalars: &[],
                        };
                        Ok(eval_bool(&e, &|n: &str| env.get(n))?)
                    })
                }
                _ => {
                    return Err(Error::config(path, "exactly one of `boxes` or `predicate` is required"));
                }
            };
            let spec = match s.boundary_tol {
                Some(b) if !(b >= 0.0 && b.is_finite()) => {
                    return Err(Error::config(format!("{path}.boundary_tol"), "must be finite and >= 0"));
                }
                Some(b) => spec.with_boundary_tol(b),
                None => spec,
            };
            specs.push(spec);
        }
        let cover = CyclicCover::new(specs)?;

        if self.map.len() != d {
            return Err(Error::config(
                "map",
                format!("{} component(s) given, dimension is {d}", self.map.len()),
            ));
        }
        let comps = self
            .map
            .iter()
            .enumerate()
            .map(|(k, m)| compile(&format!("map[{k}]"), m, ValueKind::Number, d, &["x"], &[]))
            .collect::<Result<Vec<_>>>()?;
        let map = Operator::new(format!("{}-map", self.id), d, move |x: &[f64]| {
            let env = Env {
                points: &[("x", x)],
                scalars: &[],
            };
            comps
                .iter()
                .map(|e| Ok(eval_expr(e, &|n: &str| env.get(n))?))
                .collect()
        });

        let phi = match &self.phi {
            PhiConfig::Identity {} => AlteringDistanceFn::identity(),
            PhiConfig::Expression { expression } => {
                let e = compile("phi.expression", expression, ValueKind::Number, d, &[], &["t"])?;
                AlteringDistanceFn::new(expression.clone(), move |t: f64| {
                    Ok(eval_expr(&e, &|n: &str| (n == "t").then_some(t))?)
                })
            }
            PhiConfig::Integral { density, quad_tol } => {
                let e = compile("phi.density", density, ValueKind::Number, d, &[], &["t"])?;
                let rho = DensityFn::new(density.clone(), move |t: f64| {
                    Ok(eval_expr(&e, &|n: &str| (n == "t").then_some(t))?)
                });
                let t_max = estimate_g_diameter(&gmetric, 1_000, 0)?.max(1.0);
                make_integral_phi(rho, quad_tol.unwrap_or(DEFAULT_QUAD_TOL), t_max)?
            }
        };

        let mode = |m: Option<PsiModeConfig>, default: PsiMode| match m {
            Some(PsiModeConfig::Strict) => PsiMode::Strict,
            Some(PsiModeConfig::DegenerateAllowed) => PsiMode::DegenerateAllowed,
            None => default,
        };
        let (psi, psi_mode) = match &self.psi {
            PsiConfig::Zero { mode: m } => (PsiFn::zero(), mode(*m, PsiMode::DegenerateAllowed)),
            PsiConfig::Expression { expression, mode: m } => {
                let e = compile("psi.expression", expression, ValueKind::Number, 1, &["x", "y", "z"], &[])?;
                let psi = PsiFn::new(expression.clone(), move |a: f64, b: f64, c: f64| {
                    let env = Env {
                        points: &[],
                        scalars: &[("x", a), ("y", b), ("z", c)],
                    };
                    Ok(eval_expr(&e, &|n: &str| env.get(n))?)
                });
                (psi, mode(*m, PsiMode::Strict))
            }
        };

        Scenario::new(ScenarioParts {
            id: self.id.clone(),
            gmetric,
            cover,
            map,
            phi,
            psi,
            psi_mode,
            kind: match self.kind {
                KindConfig::Kannan => ContractionKind::KannanG,
                KindConfig::Chatterjea => ContractionKind::ChatterjeaG,
            },
            alpha: self.alpha,
            gamma: self.gamma,
        })
    }
}

/// Parses and builds a scenario document.
pub fn load_scenario(document: &str) -> Result<Scenario<f64>> {
    ScenarioConfig::parse(document)?.build()
}

pub fn load_scenario_with_defaults(document: &str) -> Result<LoadedScenario> {
    let cfg = ScenarioConfig::parse(document)?;
    Ok(LoadedScenario {
        scenario: cfg.build()?,
        solver: cfg.solver,
    })
}

pub fn load_scenario_file(path: impl AsRef<Path>) -> Result<LoadedScenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(path.display().to_string(), e.to_string()))?;
    load_scenario_with_defaults(&text)
}
