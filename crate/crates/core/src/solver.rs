//! Picard iteration `x_{n+1} = T x_n` with residual tracking
//! `r_n = G(x_n, x_{n+1}, x_{n+1})`, the a-priori iteration bound implied by a
//! geometric residual rate, fixed-point verification and trace diagnostics.

use std::io::Write;

use crate::contraction::{ContractionKind, Scenario};
use crate::cyclic::locate;
use crate::error::{Error, Result};
use crate::gmetric::Point;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Converged,
    MaxIterExhausted,
    EscapedCover,
    NonFinite,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Converged => "converged",
            Outcome::MaxIterExhausted => "max_iter_exhausted",
            Outcome::EscapedCover => "escaped_cover",
            Outcome::NonFinite => "non_finite",
        }
    }
}

pub const DEFAULT_RECORD_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PicardOptions<S> {
    pub tol: S,
    pub max_iter: usize,
    /// Iterates beyond this many are not stored (residuals always are).
    pub record_cap: usize,
}

impl<S: Scalar> PicardOptions<S> {
    pub fn new(tol: S, max_iter: usize) -> Self {
        Self {
            tol,
            max_iter,
            record_cap: DEFAULT_RECORD_CAP,
        }
    }
}

/// Orbit of one Picard run.
///
/// `residuals[n] = G(x_n, x_{n+1}, x_{n+1})`, so a full trace holds one more
/// iterate than residuals.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationTrace<S> {
    iterates: Vec<Point<S>>,
    residuals: Vec<S>,
    labels: Vec<Vec<usize>>,
    last: Point<S>,
    outcome: Outcome,
    tol: S,
}

impl<S: Scalar> IterationTrace<S> {
    /// Rebuilds a trace from an explicit orbit, recomputing residuals and
    /// labels under `s`. Useful for auditing orbits produced elsewhere.
    pub fn from_orbit(s: &Scenario<S>, orbit: Vec<Point<S>>, outcome: Outcome, tol: S) -> Result<Self> {
        if orbit.is_empty() {
            return Err(Error::Precondition("orbit has no points".into()));
        }
        let residuals = orbit
            .windows(2)
            .map(|w| s.g(&w[0], &w[1], &w[1]))
            .collect::<Result<Vec<_>>>()?;
        let labels = orbit
            .iter()
            .map(|x| locate(s.cover(), x))
            .collect::<Result<Vec<_>>>()?;
        let last = orbit[orbit.len() - 1].clone();
        Ok(Self {
            iterates: orbit,
            residuals,
            labels,
            last,
            outcome,
            tol,
        })
    }

    /// Recorded iterates `x_0, x_1, …` (possibly truncated at the record cap).
    pub fn iterates(&self) -> &[Point<S>] {
        &self.iterates
    }

    pub fn residuals(&self) -> &[S] {
        &self.residuals
    }

    /// Subset labels of each recorded iterate.
    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    pub fn tol(&self) -> S {
        self.tol
    }

    /// Final iterate, recorded or not.
    pub fn last(&self) -> &Point<S> {
        &self.last
    }

    /// Number of map applications performed.
    pub fn steps(&self) -> usize {
        self.residuals.len()
    }

    /// Whether every iterate was kept.
    pub fn is_complete(&self) -> bool {
        self.iterates.len() == self.residuals.len() + 1
    }

    /// Writes `n,x_0..x_{d-1},residual,subset_indices`, one row per recorded
    /// iterate. Values carry 17 significant digits; the final iterate has an
    /// empty residual; labels are `|`-joined.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let dim = self.last.dim();
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["n".to_string()];
        header.extend((0..dim).map(|k| format!("x_{k}")));
        header.push("residual".into());
        header.push("subset_indices".into());
        let io = |e: csv::Error| Error::Evaluation(format!("csv write failed: {e}"));
        w.write_record(&header).map_err(io)?;
        for (n, x) in self.iterates.iter().enumerate() {
            let mut row = vec![n.to_string()];
            row.extend(x.coords().iter().map(|c| fmt17(*c)));
            row.push(self.residuals.get(n).map(|r| fmt17(*r)).unwrap_or_default());
            row.push(
                self.labels[n]
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join("|"),
            );
            w.write_record(&row).map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::Evaluation(format!("csv flush failed: {e}")))?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

/// 17 significant digits in scientific notation.
pub fn fmt17<S: Scalar>(v: S) -> String {
    format!("{:.16e}", v.to_f64_lossy())
}

/// Runs `x_{n+1} = T x_n` from `x0` until `r_n ≤ tol`, `max_iter` steps, an
/// iterate outside every subset, or a non-finite image.
pub fn picard<S: Scalar>(s: &Scenario<S>, x0: &Point<S>, opts: PicardOptions<S>) -> Result<IterationTrace<S>> {
    if opts.max_iter == 0 {
        return Err(Error::Precondition("max_iter must be >= 1".into()));
    }
    if !(opts.tol > S::zero()) {
        return Err(Error::Precondition(format!("tol must be > 0, got {}", opts.tol)));
    }
    let l0 = locate(s.cover(), x0)?;
    if l0.is_empty() {
        return Err(Error::Precondition(format!("x0 = {x0} is outside every subset of the cover")));
    }
    let domain = s.gmetric().domain();
    let mut iterates = vec![x0.clone()];
    let mut labels = vec![l0];
    let mut residuals = Vec::new();
    let mut current = x0.clone();
    let mut outcome = Outcome::MaxIterExhausted;
    for _ in 0..opts.max_iter {
        let next = match s.apply(&current) {
            Ok(p) => p,
            Err(Error::NonFinite { .. }) => {
                outcome = Outcome::NonFinite;
                break;
            }
            Err(e) => return Err(e),
        };
        let r = s.g(&current, &next, &next)?;
        residuals.push(r);
        let lab = if domain.contains(&next) {
            locate(s.cover(), &next)?
        } else {
            Vec::new()
        };
        let escaped = lab.is_empty();
        if iterates.len() < opts.record_cap {
            iterates.push(next.clone());
            labels.push(lab);
        }
        current = next;
        if escaped {
            outcome = Outcome::EscapedCover;
            break;
        }
        if r <= opts.tol {
            outcome = Outcome::Converged;
            break;
        }
    }
    Ok(IterationTrace {
        iterates,
        residuals,
        labels,
        last: current,
        outcome,
        tol: opts.tol,
    })
}

/// Geometric residual ratio κ: `α/(1−γ)` for Kannan, `α/(1−α)` for
/// Chatterjea. `None` where no rate exists (Chatterjea at α = ½, and the
/// metric-space Zamfirescu kind).
pub fn contraction_factor<S: Scalar>(kind: ContractionKind, alpha: S, gamma: S) -> Result<Option<S>> {
    let one = S::one();
    match kind {
        ContractionKind::KannanG => {
            if gamma == one {
                return Err(Error::Precondition("kappa = alpha/(1-gamma) is undefined at gamma = 1".into()));
            }
            Ok(Some(alpha / (one - gamma)))
        }
        ContractionKind::ChatterjeaG => {
            if alpha == S::lit(0.5) {
                Ok(None)
            } else {
                Ok(Some(alpha / (one - alpha)))
            }
        }
        ContractionKind::ZamfirescuMetric => Ok(None),
    }
}

/// Smallest `n` with `κⁿ·r0 ≤ tol`.
pub fn a_priori_iterations<S: Scalar>(kappa: S, r0: S, tol: S) -> Result<u64> {
    if !(kappa >= S::zero() && kappa < S::one()) {
        return Err(Error::Precondition(format!("kappa must lie in [0, 1), got {kappa}")));
    }
    if !(r0 >= S::zero()) || !(tol > S::zero()) {
        return Err(Error::Precondition(format!("need r0 >= 0 and tol > 0, got {r0}, {tol}")));
    }
    if r0 <= tol {
        return Ok(0);
    }
    if kappa == S::zero() {
        return Ok(1);
    }
    let est = ((tol / r0).ln() / kappa.ln()).ceil().to_f64_lossy().max(1.0) as u64;
    let bound = |n: u64| kappa.powi(n as i32) * r0 <= tol;
    let mut n = est;
    while !bound(n) {
        n += 1;
    }
    while n > 1 && bound(n - 1) {
        n -= 1;
    }
    Ok(n)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointReport<S> {
    pub candidate: Point<S>,
    pub image: Point<S>,
    /// `G(u, Tu, Tu)`.
    pub defect: S,
    pub membership: Vec<usize>,
    pub missing: Vec<usize>,
    pub tol: S,
    pub pass: bool,
}

/// Checks `G(u, Tu, Tu) ≤ tol` and `u ∈ A_i` for every `i`.
pub fn verify_fixed_point<S: Scalar>(s: &Scenario<S>, u: &Point<S>, tol: S) -> Result<FixedPointReport<S>> {
    let image = s.apply(u)?;
    let defect = s.g(u, &image, &image)?;
    let membership = locate(s.cover(), u)?;
    let missing: Vec<usize> = s
        .cover()
        .labels()
        .filter(|l| !membership.contains(l))
        .collect();
    let pass = defect <= tol && missing.is_empty();
    Ok(FixedPointReport {
        candidate: u.clone(),
        image,
        defect,
        membership,
        missing,
        tol,
        pass,
    })
}

/// Tail window for the double-limit proxies.
pub const TAIL_WINDOW: usize = 32;

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyCheck<S> {
    pub pass: bool,
    pub worst: S,
    /// Index of the first offending step, if any.
    pub first_failure: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TailChecks<S> {
    /// First trace index of the tail window.
    pub start: usize,
    pub len: usize,
    /// `max G(x_n, x_n, u)`
    pub g_xn_xn_u: S,
    /// `max G(x_n, u, u)`
    pub g_xn_u_u: S,
    /// `max G(x_n, x_m, u)` over tail pairs
    pub g_xn_xm_u: S,
    /// `max G(x_n, x_m, x_m)` over tail pairs (Cauchy)
    pub cauchy: S,
    pub convergence_pass: bool,
    pub cauchy_pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceReport<S> {
    /// (a) `r_{n+1} ≤ r_n + tol`
    pub monotone: PropertyCheck<S>,
    /// (b) `r_n ≤ (κ + tol)ⁿ·r_0`; `None` when κ is undefined.
    pub geometric: Option<PropertyCheck<S>>,
    pub kappa: Option<S>,
    /// (c) and (d); `None` for traces that did not converge.
    pub tail: Option<TailChecks<S>>,
    /// Tail maximum of `G(x_{n−1}, x_{n+1}, x_{n+1}) / r_n`, reported for
    /// Chatterjea scenarios at α = ½ where the limit should be 2.
    pub two_step_ratio: Option<S>,
    pub notes: Vec<String>,
    pub pass: bool,
}

/// Start of the tail: the later of the last [`TAIL_WINDOW`] iterates and the
/// first index after which every residual is within `tol`.
fn tail_start<S: Scalar>(residuals: &[S], iterates: usize, tol: S) -> usize {
    let settled = residuals
        .iter()
        .rposition(|&r| r > tol)
        .map_or(0, |i| i + 1);
    settled.max(iterates.saturating_sub(TAIL_WINDOW))
}

pub fn check_trace_properties<S: Scalar>(
    trace: &IterationTrace<S>,
    s: &Scenario<S>,
    tol: S,
) -> Result<TraceReport<S>> {
    if trace.iterates.len() < 2 {
        return Err(Error::Precondition("trace needs at least two iterates".into()));
    }
    let r = &trace.residuals;
    let mut notes = Vec::new();

    let mut monotone = PropertyCheck {
        pass: true,
        worst: S::zero(),
        first_failure: None,
    };
    for (n, w) in r.windows(2).enumerate() {
        let excess = w[1] - w[0];
        if excess > tol {
            if monotone.pass {
                monotone.first_failure = Some(n + 1);
            }
            monotone.pass = false;
        }
        monotone.worst = monotone.worst.max(excess);
    }

    let kappa = s.kappa()?;
    let geometric = match kappa {
        Some(k) => {
            let ratio = k + tol;
            let mut chk = PropertyCheck {
                pass: true,
                worst: S::zero(),
                first_failure: None,
            };
            let mut bound = r[0];
            for (n, &rn) in r.iter().enumerate() {
                if n > 0 {
                    bound = bound * ratio;
                }
                let excess = rn - bound;
                if excess > S::zero() {
                    if chk.pass {
                        chk.first_failure = Some(n);
                    }
                    chk.pass = false;
                }
                chk.worst = chk.worst.max(excess);
            }
            Some(chk)
        }
        None => {
            notes.push("no geometric rate for this kind/constants; check (b) skipped".into());
            None
        }
    };

    let two_step_ratio = if s.kind() == ContractionKind::ChatterjeaG && s.alpha() == S::lit(0.5) {
        let xs = &trace.iterates;
        let start = xs.len().saturating_sub(TAIL_WINDOW).max(1);
        let mut worst: Option<S> = None;
        for n in start..xs.len().saturating_sub(1) {
            if r[n] > S::zero() {
                let v = s.g(&xs[n - 1], &xs[n + 1], &xs[n + 1])? / r[n];
                worst = Some(worst.map_or(v, |w: S| w.max(v)));
            }
        }
        worst
    } else {
        None
    };

    let tail = if trace.outcome == Outcome::Converged && trace.is_complete() {
        let xs = &trace.iterates;
        let u = trace.last();
        let start = tail_start(r, xs.len(), tol);
        let window = &xs[start..];
        let mut t = TailChecks {
            start,
            len: window.len(),
            g_xn_xn_u: S::zero(),
            g_xn_u_u: S::zero(),
            g_xn_xm_u: S::zero(),
            cauchy: S::zero(),
            convergence_pass: false,
            cauchy_pass: false,
        };
        for xn in window {
            t.g_xn_xn_u = t.g_xn_xn_u.max(s.g(xn, xn, u)?);
            t.g_xn_u_u = t.g_xn_u_u.max(s.g(xn, u, u)?);
            for xm in window {
                t.g_xn_xm_u = t.g_xn_xm_u.max(s.g(xn, xm, u)?);
                t.cauchy = t.cauchy.max(s.g(xn, xm, xm)?);
            }
        }
        t.convergence_pass = t.g_xn_xn_u <= tol && t.g_xn_u_u <= tol && t.g_xn_xm_u <= tol;
        t.cauchy_pass = t.cauchy <= tol;
        Some(t)
    } else {
        notes.push(format!(
            "trace outcome is {}; convergence and Cauchy checks skipped",
            trace.outcome.name()
        ));
        None
    };

    let pass = monotone.pass
        && geometric.as_ref().is_none_or(|g| g.pass)
        && tail
            .as_ref()
            .is_none_or(|t| t.convergence_pass && t.cauchy_pass);
    Ok(TraceReport {
        monotone,
        geometric,
        kappa,
        tail,
        two_step_ratio,
        notes,
        pass,
    })
}
