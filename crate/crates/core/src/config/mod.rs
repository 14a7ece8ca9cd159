//! Scenario files and the expression language they are written in.

pub mod expr;
pub mod scenario;

pub use expr::{eval_bool, eval_expr, parse_expr, Expr, ExprError, ValueKind};
pub use scenario::{
    load_scenario, load_scenario_file, load_scenario_with_defaults, LoadedScenario, ScenarioConfig,
    SolverDefaults,
};
