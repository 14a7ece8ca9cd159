//! Generalized (G-)metric spaces, cyclic covers and the (φ−ψ)-Kannan and
//! (φ−ψ)-Chatterjea contraction conditions: sampled axiom and contraction
//! checks, constant estimation and Picard iteration with residual bounds.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below fix it to `f64`, which is what scenario files and the CLI use.
//!
//! ```
//! use gcyclic::{build_example32_scenario, picard, PicardOptions, Point64};
//!
//! let s = build_example32_scenario::<f64>();
//! let trace = picard(&s, &Point64::scalar(1.0).unwrap(), PicardOptions::new(1e-8, 200)).unwrap();
//! assert!(trace.last().coords()[0].abs() <= 1e-8);
//! ```
// `!(a < b)` is used on purpose so that NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod contraction;
pub mod control;
pub mod corpus;
pub mod cyclic;
pub mod error;
pub mod gmetric;
pub mod operator;
pub mod quadrature;
pub mod sampling;
pub mod scalar;
pub mod solver;

pub use config::{eval_expr, load_scenario, parse_expr, Expr, ExprError};
pub use contraction::{
    certify, chatterjea_gap, chatterjea_gap_pair, classic_chatterjea_gap, classic_kannan_gap,
    estimate_constants, kannan_gap, kannan_gap_pair, zamfirescu_check, Certificate, CertifyOptions,
    ConstantEstimate, ContractionKind, Scenario, ScenarioParts,
};
pub use control::{
    check_control_pair, make_integral_phi, AlteringDistanceFn, DensityFn, PsiFn, PsiMode,
};
pub use corpus::{build_example31_scenario, build_example32_scenario, corpus_entry, example32_map};
pub use cyclic::{locate, validate_cyclic_cover, CyclicCover, SubsetSpec};
pub use error::{Error, Result};
pub use gmetric::{
    check_g_axioms, check_g_axioms_seeded, g_max_from_metric, g_sum_from_metric, Axiom, BoxDomain,
    GMetricFn, MetricFn, Point,
};
pub use operator::Operator;
pub use scalar::Scalar;
pub use solver::{
    a_priori_iterations, check_trace_properties, contraction_factor, picard, verify_fixed_point,
    IterationTrace, Outcome, PicardOptions,
};

pub type Point64 = Point<f64>;
pub type BoxDomain64 = BoxDomain<f64>;
pub type GMetric64 = GMetricFn<f64>;
pub type Metric64 = MetricFn<f64>;
pub type Scenario64 = Scenario<f64>;
pub type Certificate64 = Certificate<f64>;
pub type IterationTrace64 = IterationTrace<f64>;

pub type Point32 = Point<f32>;
pub type Scenario32 = Scenario<f32>;
