//! Altering distance functions `φ`, ternary control functions `ψ`, and the
//! integral construction `φ(t) = ∫₀ᵗ ρ(s) ds`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::adaptive_simpson;
use crate::scalar::Scalar;

type UnaryEval<S> = Arc<dyn Fn(S) -> Result<S> + Send + Sync>;
type TernaryEval<S> = Arc<dyn Fn(S, S, S) -> Result<S> + Send + Sync>;

fn finite<S: Scalar>(v: S, what: &str, at: impl fmt::Display) -> Result<S> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation(format!("{what}({at}) = {v}")))
    }
}

/// `φ: [0, ∞) → [0, ∞)`, expected continuous, nondecreasing and zero only at 0.
#[derive(Clone)]
pub struct AlteringDistanceFn<S> {
    name: String,
    eval: UnaryEval<S>,
}

impl<S: Scalar> AlteringDistanceFn<S> {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(S) -> Result<S> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            eval: Arc::new(f),
        }
    }

    pub fn identity() -> Self {
        Self::new("identity", Ok)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, t: S) -> Result<S> {
        if !(t >= S::zero()) {
            return Err(Error::Precondition(format!(
                "{} evaluated at negative or NaN argument {t}",
                self.name
            )));
        }
        finite((self.eval)(t)?, &self.name, t)
    }
}

impl<S> fmt::Debug for AlteringDistanceFn<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlteringDistanceFn({})", self.name)
    }
}

/// `ψ: [0, ∞)³ → [0, ∞)`.
#[derive(Clone)]
pub struct PsiFn<S> {
    name: String,
    eval: TernaryEval<S>,
    identically_zero: bool,
}

impl<S: Scalar> PsiFn<S> {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(S, S, S) -> Result<S> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            eval: Arc::new(f),
            identically_zero: false,
        }
    }

    /// `ψ ≡ 0`, the degenerate choice used by both worked examples.
    pub fn zero() -> Self {
        Self {
            name: "zero".into(),
            eval: Arc::new(|_, _, _| Ok(S::zero())),
            identically_zero: true,
        }
    }

    pub fn sum() -> Self {
        Self::new("sum", |a, b, c| Ok(a + b + c))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_identically_zero(&self) -> bool {
        self.identically_zero
    }

    pub fn eval(&self, a: S, b: S, c: S) -> Result<S> {
        if self.identically_zero {
            return Ok(S::zero());
        }
        finite((self.eval)(a, b, c)?, &self.name, format_args!("{a}, {b}, {c}"))
    }
}

impl<S> fmt::Debug for PsiFn<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PsiFn({})", self.name)
    }
}

/// Nonnegative density `ρ` for integral-type altering distances.
#[derive(Clone)]
pub struct DensityFn<S> {
    name: String,
    eval: UnaryEval<S>,
}

impl<S: Scalar> DensityFn<S> {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(S) -> Result<S> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            eval: Arc::new(f),
        }
    }

    pub fn constant(c: S) -> Self {
        Self::new(format!("{c}"), move |_| Ok(c))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `ρ(s)`, rejecting negative values.
    pub fn eval(&self, s: S) -> Result<S> {
        let v = finite((self.eval)(s)?, &self.name, s)?;
        if v < S::zero() {
            return Err(Error::InvalidDensity {
                at: s.to_f64_lossy(),
                value: v.to_f64_lossy(),
            });
        }
        Ok(v)
    }
}

impl<S> fmt::Debug for DensityFn<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensityFn({})", self.name)
    }
}

/// Number of grid intervals used to screen a density before integrating it.
const DENSITY_SCAN: usize = 512;

/// `φ(t) = ∫₀ᵗ ρ(s) ds` by adaptive quadrature with absolute tolerance
/// `quad_tol`.
///
/// `rho` is screened for negative values on `[0, t_max]`, the range the
/// scenario will apply φ over; negativity found later during integration is
/// reported the same way.
pub fn make_integral_phi<S: Scalar>(
    rho: DensityFn<S>,
    quad_tol: S,
    t_max: S,
) -> Result<AlteringDistanceFn<S>> {
    if !(quad_tol > S::zero()) {
        return Err(Error::Precondition(format!("quad_tol must be > 0, got {quad_tol}")));
    }
    if !(t_max > S::zero()) || !t_max.is_finite() {
        return Err(Error::Precondition(format!("t_max must be finite and > 0, got {t_max}")));
    }
    let n = S::from_usize(DENSITY_SCAN).expect("small integer");
    for i in 0..=DENSITY_SCAN {
        let s = t_max * S::from_usize(i).expect("small integer") / n;
        rho.eval(s)?;
    }
    let first = t_max / n;
    let mass = adaptive_simpson(&|s| rho.eval(s), S::zero(), first, quad_tol)?;
    if !(mass > S::zero()) {
        return Err(Error::Precondition(format!(
            "density {} has no mass on [0, {first}]",
            rho.name()
        )));
    }
    let name = format!("integral({})", rho.name());
    Ok(AlteringDistanceFn::new(name, move |t| {
        if t == S::zero() {
            return Ok(S::zero());
        }
        adaptive_simpson(&|s| rho.eval(s), S::zero(), t, quad_tol)
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiMode {
    /// ψ must vanish exactly at the origin.
    Strict,
    /// ψ ≡ 0 (or any ψ failing positivity) is reported but not fatal.
    DegenerateAllowed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome<S> {
    pub pass: bool,
    pub worst_violation: S,
    /// Arguments at the first violation in grid order.
    pub witness: Option<Vec<S>>,
}

impl<S: Scalar> CheckOutcome<S> {
    fn passing() -> Self {
        Self {
            pass: true,
            worst_violation: S::zero(),
            witness: None,
        }
    }

    fn record(&mut self, magnitude: S, at: impl FnOnce() -> Vec<S>) {
        if self.pass {
            self.witness = Some(at());
        }
        self.pass = false;
        self.worst_violation = self.worst_violation.max(magnitude);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ControlReport<S> {
    pub grid_points: usize,
    pub grid_min: S,
    pub grid_max: S,
    pub phi_zero_at_zero: bool,
    pub phi_monotone: CheckOutcome<S>,
    pub phi_positive: CheckOutcome<S>,
    pub psi_zero_at_zero: bool,
    pub psi_positive: CheckOutcome<S>,
    pub psi_mode: PsiMode,
    /// ψ failed positivity and the mode let it through.
    pub psi_degenerate: bool,
    /// Largest `|φ(t_{i+1}) − φ(t_i)|`; diagnostic only.
    pub max_oscillation: S,
    /// Largest `|φ(t_{i+1}) − φ(t_i)| / (t_{i+1} − t_i)`; diagnostic only.
    pub oscillation_modulus: S,
    pub pass: bool,
}

/// Maximum number of grid values per ψ argument when sampling triples.
const PSI_AXIS: usize = 12;

pub fn check_control_pair<S: Scalar>(
    phi: &AlteringDistanceFn<S>,
    psi: &PsiFn<S>,
    grid: &[S],
    tol: S,
    mode: PsiMode,
) -> Result<ControlReport<S>> {
    if grid.is_empty() {
        return Err(Error::Precondition("control grid is empty".into()));
    }
    if let Some(bad) = grid.iter().find(|t| !(**t >= S::zero()) || !t.is_finite()) {
        return Err(Error::Precondition(format!("grid value {bad} is not in [0, inf)")));
    }
    if let Some(i) = grid.windows(2).position(|w| !(w[0] < w[1])) {
        return Err(Error::Precondition(format!(
            "grid is not strictly increasing at index {}",
            i + 1
        )));
    }
    let strict = S::tol_strict();
    let values = grid.iter().map(|&t| phi.eval(t)).collect::<Result<Vec<_>>>()?;

    let phi_zero_at_zero = phi.eval(S::zero())?.abs() <= tol;

    let mut phi_monotone = CheckOutcome::passing();
    let mut max_oscillation = S::zero();
    let mut oscillation_modulus = S::zero();
    for (i, w) in values.windows(2).enumerate() {
        let drop = w[0] - w[1];
        if drop > tol {
            phi_monotone.record(drop, || vec![grid[i], grid[i + 1]]);
        }
        let osc = (w[1] - w[0]).abs();
        max_oscillation = max_oscillation.max(osc);
        oscillation_modulus = oscillation_modulus.max(osc / (grid[i + 1] - grid[i]));
    }

    let mut phi_positive = CheckOutcome::passing();
    for (&t, &v) in grid.iter().zip(&values) {
        if t > strict && v <= strict {
            phi_positive.record(strict - v, || vec![t]);
        }
    }

    let psi_zero_at_zero = psi.eval(S::zero(), S::zero(), S::zero())?.abs() <= tol;

    let stride = grid.len().div_ceil(PSI_AXIS);
    let axis: Vec<S> = grid.iter().copied().step_by(stride.max(1)).collect();
    let mut psi_positive = CheckOutcome::passing();
    for &a in &axis {
        for &b in &axis {
            for &c in &axis {
                if a.max(b).max(c) <= strict {
                    continue;
                }
                let v = psi.eval(a, b, c)?;
                if v <= strict {
                    psi_positive.record(strict - v, || vec![a, b, c]);
                }
            }
        }
    }

    let psi_degenerate = !psi_positive.pass && mode == PsiMode::DegenerateAllowed;
    let psi_ok = psi_zero_at_zero && (psi_positive.pass || psi_degenerate);
    let pass = phi_zero_at_zero && phi_monotone.pass && phi_positive.pass && psi_ok;

    Ok(ControlReport {
        grid_points: grid.len(),
        grid_min: grid[0],
        grid_max: grid[grid.len() - 1],
        phi_zero_at_zero,
        phi_monotone,
        phi_positive,
        psi_zero_at_zero,
        psi_positive,
        psi_mode: mode,
        psi_degenerate,
        max_oscillation,
        oscillation_modulus,
        pass,
    })
}

/// `n + 1` equally spaced points on `[0, t_max]`.
pub fn uniform_grid<S: Scalar>(t_max: S, n: usize) -> Vec<S> {
    let nn = S::from_usize(n.max(1)).expect("small integer");
    (0..=n.max(1))
        .map(|i| t_max * S::from_usize(i).expect("small integer") / nn)
        .collect()
}
