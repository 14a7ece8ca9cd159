//! Scenarios and the G-cyclic (φ−ψ)-Kannan / Chatterjea contraction
//! inequalities: pointwise gaps, sampled certification, and a grid search for
//! admissible constants.
//!
//! Every gap is `rhs − lhs`; a nonnegative gap means the inequality holds at
//! that tuple.
//!
//! Constants are stored as `(alpha, gamma)`. In the two-point form (`z = y`)
//! Kannan reads
//!
//! ```text
//! φ(G(Tx,Ty,Ty)) ≤ φ(α·G(x,Tx,Tx) + γ·G(y,Ty,Ty)) − ψ(G(x,Tx,Tx), G(y,Ty,Ty), G(y,Ty,Ty))
//! ```
//!
//! and the three-point form uses `β = γ/2` on `G(y,Ty,Ty) + G(z,Tz,Tz)`.
//! Chatterjea's second constant (δ in the two-point form, β in the
//! three-point form) is `gamma` in both.

use std::fmt;

use rayon::prelude::*;

use crate::control::{AlteringDistanceFn, PsiFn, PsiMode};
use crate::cyclic::{locate, CyclicCover};
use crate::error::{Error, Result};
use crate::gmetric::{GMetricFn, MetricFn, Point};
use crate::operator::Operator;
use crate::scalar::Scalar;
use crate::solver::contraction_factor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContractionKind {
    KannanG,
    ChatterjeaG,
    /// Classic metric-space conditions; evaluated by [`zamfirescu_check`],
    /// not by G-cyclic scenarios.
    ZamfirescuMetric,
}

impl ContractionKind {
    pub fn name(self) -> &'static str {
        match self {
            ContractionKind::KannanG => "kannan",
            ContractionKind::ChatterjeaG => "chatterjea",
            ContractionKind::ZamfirescuMetric => "zamfirescu",
        }
    }
}

impl fmt::Display for ContractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Checks the admissible constant region of `kind`.
pub fn validate_constants<S: Scalar>(kind: ContractionKind, alpha: S, gamma: S) -> Result<()> {
    let (zero, one, half) = (S::zero(), S::one(), S::lit(0.5));
    let finite = alpha.is_finite() && gamma.is_finite();
    let sum = alpha + gamma;
    match kind {
        ContractionKind::KannanG => {
            if !finite || !(gamma >= zero && gamma < one) {
                return Err(Error::InvalidConstants(format!(
                    "kannan requires 0≤γ<1, got gamma = {gamma}"
                )));
            }
            if !(alpha >= zero) || !(sum > zero && sum <= one) {
                return Err(Error::InvalidConstants(format!(
                    "kannan requires α≥0 and 0<α+γ≤1, got alpha = {alpha}, gamma = {gamma}"
                )));
            }
        }
        ContractionKind::ChatterjeaG => {
            if !finite || !(alpha >= zero && alpha <= half) {
                return Err(Error::InvalidConstants(format!(
                    "chatterjea requires 0≤α≤1/2, got alpha = {alpha}"
                )));
            }
            if !(gamma >= zero) || !(sum > zero && sum <= one) {
                return Err(Error::InvalidConstants(format!(
                    "chatterjea requires δ≥0 and 0<α+δ≤1, got alpha = {alpha}, delta = {gamma}"
                )));
            }
        }
        ContractionKind::ZamfirescuMetric => {
            return Err(Error::InvalidConstants(
                "zamfirescu conditions are metric-space checks, not a G-cyclic scenario kind"
                    .into(),
            ));
        }
    }
    Ok(())
}

/// Everything needed to state one contraction inequality.
#[derive(Clone, Debug)]
pub struct ScenarioParts<S> {
    pub id: String,
    pub gmetric: GMetricFn<S>,
    pub cover: CyclicCover<S>,
    pub map: Operator<S>,
    pub phi: AlteringDistanceFn<S>,
    pub psi: PsiFn<S>,
    pub psi_mode: PsiMode,
    pub kind: ContractionKind,
    pub alpha: S,
    pub gamma: S,
}

/// A validated [`ScenarioParts`]: constants inside the kind's admissible
/// region and all components of the same dimension.
#[derive(Clone, Debug)]
pub struct Scenario<S> {
    parts: ScenarioParts<S>,
}

impl<S: Scalar> Scenario<S> {
    pub fn new(parts: ScenarioParts<S>) -> Result<Self> {
        validate_constants(parts.kind, parts.alpha, parts.gamma)?;
        let dim = parts.gmetric.dim();
        if parts.map.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: parts.map.dim(),
            });
        }
        if let Some(d) = parts.cover.dim().filter(|&d| d != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: d });
        }
        Ok(Self { parts })
    }

    pub fn into_parts(self) -> ScenarioParts<S> {
        self.parts
    }

    /// Same scenario with different constants.
    pub fn with_constants(&self, alpha: S, gamma: S) -> Result<Self> {
        let mut parts = self.parts.clone();
        parts.alpha = alpha;
        parts.gamma = gamma;
        Self::new(parts)
    }

    pub fn id(&self) -> &str {
        &self.parts.id
    }

    pub fn gmetric(&self) -> &GMetricFn<S> {
        &self.parts.gmetric
    }

    pub fn cover(&self) -> &CyclicCover<S> {
        &self.parts.cover
    }

    pub fn map(&self) -> &Operator<S> {
        &self.parts.map
    }

    pub fn phi(&self) -> &AlteringDistanceFn<S> {
        &self.parts.phi
    }

    pub fn psi(&self) -> &PsiFn<S> {
        &self.parts.psi
    }

    pub fn psi_mode(&self) -> PsiMode {
        self.parts.psi_mode
    }

    pub fn kind(&self) -> ContractionKind {
        self.parts.kind
    }

    pub fn alpha(&self) -> S {
        self.parts.alpha
    }

    pub fn gamma(&self) -> S {
        self.parts.gamma
    }

    pub fn dim(&self) -> usize {
        self.parts.gmetric.dim()
    }

    pub fn g(&self, x: &Point<S>, y: &Point<S>, z: &Point<S>) -> Result<S> {
        self.parts.gmetric.eval(x, y, z)
    }

    pub fn apply(&self, x: &Point<S>) -> Result<Point<S>> {
        self.parts.map.apply(x)
    }

    /// Contraction factor κ of the scenario's kind and constants.
    pub fn kappa(&self) -> Result<Option<S>> {
        contraction_factor(self.kind(), self.alpha(), self.gamma())
    }
}

/// Finds `i` with `x ∈ A_i` and `y, z ∈ A_{i+1}`; returns `i`.
pub fn adjacent_label<S: Scalar>(
    cover: &CyclicCover<S>,
    x: &Point<S>,
    y: &Point<S>,
    z: &Point<S>,
) -> Result<usize> {
    let lx = locate(cover, x)?;
    if lx.is_empty() {
        return Err(Error::Adjacency {
            which: "x",
            point: x.to_f64(),
            reason: "not in any subset".into(),
        });
    }
    let ly = locate(cover, y)?;
    let lz = locate(cover, z)?;
    let mut y_ok = false;
    for &i in &lx {
        let next = cover.next_label(i);
        if ly.contains(&next) {
            y_ok = true;
            if lz.contains(&next) {
                return Ok(i);
            }
        }
    }
    let (which, point) = if y_ok { ("z", z) } else { ("y", y) };
    Err(Error::Adjacency {
        which,
        point: point.to_f64(),
        reason: format!("not in the successor of any subset containing x (x in {lx:?})"),
    })
}

fn require_kind<S: Scalar>(s: &Scenario<S>, kind: ContractionKind) -> Result<()> {
    if s.kind() != kind {
        return Err(Error::Precondition(format!(
            "scenario `{}` is {}, not {}",
            s.id(),
            s.kind(),
            kind
        )));
    }
    Ok(())
}

fn kannan_three<S: Scalar>(s: &Scenario<S>, x: &Point<S>, y: &Point<S>, z: &Point<S>) -> Result<S> {
    let (tx, ty, tz) = (s.apply(x)?, s.apply(y)?, s.apply(z)?);
    let gx = s.g(x, &tx, &tx)?;
    let gy = s.g(y, &ty, &ty)?;
    let gz = s.g(z, &tz, &tz)?;
    let beta = s.gamma() * S::lit(0.5);
    let rhs = s.phi().eval(s.alpha() * gx + beta * (gy + gz))? - s.psi().eval(gx, gy, gz)?;
    Ok(rhs - s.phi().eval(s.g(&tx, &ty, &tz)?)?)
}

fn kannan_two<S: Scalar>(s: &Scenario<S>, x: &Point<S>, y: &Point<S>) -> Result<S> {
    let (tx, ty) = (s.apply(x)?, s.apply(y)?);
    let gx = s.g(x, &tx, &tx)?;
    let gy = s.g(y, &ty, &ty)?;
    let rhs = s.phi().eval(s.alpha() * gx + s.gamma() * gy)? - s.psi().eval(gx, gy, gy)?;
    Ok(rhs - s.phi().eval(s.g(&tx, &ty, &ty)?)?)
}

fn chatterjea_three<S: Scalar>(
    s: &Scenario<S>,
    x: &Point<S>,
    y: &Point<S>,
    z: &Point<S>,
) -> Result<S> {
    let (tx, ty, tz) = (s.apply(x)?, s.apply(y)?, s.apply(z)?);
    let a = s.g(x, &ty, &tz)?;
    let b = s.g(y, z, &tx)?;
    let c = s.g(z, y, &tx)?;
    let rhs = s.phi().eval(s.alpha() * a + s.gamma() * b)? - s.psi().eval(a, b, c)?;
    Ok(rhs - s.phi().eval(s.g(&tx, &ty, &tz)?)?)
}

fn chatterjea_two<S: Scalar>(s: &Scenario<S>, x: &Point<S>, y: &Point<S>) -> Result<S> {
    let (tx, ty) = (s.apply(x)?, s.apply(y)?);
    let a = s.g(x, &ty, &ty)?;
    let b = s.g(y, y, &tx)?;
    let rhs = s.phi().eval(s.alpha() * a + s.gamma() * b)? - s.psi().eval(a, b, b)?;
    Ok(rhs - s.phi().eval(s.g(&tx, &ty, &ty)?)?)
}

/// Three-point Kannan gap for `x ∈ A_i`, `y, z ∈ A_{i+1}`.
pub fn kannan_gap<S: Scalar>(s: &Scenario<S>, x: &Point<S>, y: &Point<S>, z: &Point<S>) -> Result<S> {
    require_kind(s, ContractionKind::KannanG)?;
    adjacent_label(s.cover(), x, y, z)?;
    kannan_three(s, x, y, z)
}

/// Two-point (`z = y`) Kannan gap.
pub fn kannan_gap_pair<S: Scalar>(s: &Scenario<S>, x: &Point<S>, y: &Point<S>) -> Result<S> {
    require_kind(s, ContractionKind::KannanG)?;
    adjacent_label(s.cover(), x, y, y)?;
    kannan_two(s, x, y)
}

/// Three-point Chatterjea gap for `x ∈ A_i`, `y, z ∈ A_{i+1}`.
pub fn chatterjea_gap<S: Scalar>(
    s: &Scenario<S>,
    x: &Point<S>,
    y: &Point<S>,
    z: &Point<S>,
) -> Result<S> {
    require_kind(s, ContractionKind::ChatterjeaG)?;
    adjacent_label(s.cover(), x, y, z)?;
    chatterjea_three(s, x, y, z)
}

/// Two-point (`z = y`) Chatterjea gap.
pub fn chatterjea_gap_pair<S: Scalar>(s: &Scenario<S>, x: &Point<S>, y: &Point<S>) -> Result<S> {
    require_kind(s, ContractionKind::ChatterjeaG)?;
    adjacent_label(s.cover(), x, y, y)?;
    chatterjea_two(s, x, y)
}

/// Three-point gap of the scenario's own kind.
pub fn gap<S: Scalar>(s: &Scenario<S>, x: &Point<S>, y: &Point<S>, z: &Point<S>) -> Result<S> {
    match s.kind() {
        ContractionKind::KannanG => kannan_gap(s, x, y, z),
        ContractionKind::ChatterjeaG => chatterjea_gap(s, x, y, z),
        ContractionKind::ZamfirescuMetric => unreachable!("rejected by Scenario::new"),
    }
}

/// Two-point gap of the scenario's own kind.
pub fn pair_gap<S: Scalar>(s: &Scenario<S>, x: &Point<S>, y: &Point<S>) -> Result<S> {
    match s.kind() {
        ContractionKind::KannanG => kannan_gap_pair(s, x, y),
        ContractionKind::ChatterjeaG => chatterjea_gap_pair(s, x, y),
        ContractionKind::ZamfirescuMetric => unreachable!("rejected by Scenario::new"),
    }
}

fn unchecked_gap<S: Scalar>(s: &Scenario<S>, t: &Tuple<S>) -> Result<S> {
    match (s.kind(), &t.z) {
        (ContractionKind::KannanG, None) => kannan_two(s, &t.x, &t.y),
        (ContractionKind::KannanG, Some(z)) => kannan_three(s, &t.x, &t.y, z),
        (ContractionKind::ChatterjeaG, None) => chatterjea_two(s, &t.x, &t.y),
        (ContractionKind::ChatterjeaG, Some(z)) => chatterjea_three(s, &t.x, &t.y, z),
        (ContractionKind::ZamfirescuMetric, _) => unreachable!("rejected by Scenario::new"),
    }
}

/// Classic Kannan gap `α[d(x,Tx) + d(y,Ty)] − d(Tx,Ty)`, `α ∈ [0, ½)`.
pub fn classic_kannan_gap<S: Scalar>(
    d: &MetricFn<S>,
    map: &Operator<S>,
    alpha: S,
    x: &Point<S>,
    y: &Point<S>,
) -> Result<S> {
    if !(alpha >= S::zero() && alpha < S::lit(0.5)) {
        return Err(Error::Precondition(format!("kannan needs alpha in [0, 1/2), got {alpha}")));
    }
    let (tx, ty) = (map.apply(x)?, map.apply(y)?);
    Ok(alpha * (d.distance(x, &tx)? + d.distance(y, &ty)?) - d.distance(&tx, &ty)?)
}

/// Classic Chatterjea gap `α[d(x,Ty) + d(y,Tx)] − d(Tx,Ty)`, `α ∈ [0, ½)`.
pub fn classic_chatterjea_gap<S: Scalar>(
    d: &MetricFn<S>,
    map: &Operator<S>,
    alpha: S,
    x: &Point<S>,
    y: &Point<S>,
) -> Result<S> {
    if !(alpha >= S::zero() && alpha < S::lit(0.5)) {
        return Err(Error::Precondition(format!(
            "chatterjea needs alpha in [0, 1/2), got {alpha}"
        )));
    }
    let (tx, ty) = (map.apply(x)?, map.apply(y)?);
    Ok(alpha * (d.distance(x, &ty)? + d.distance(y, &tx)?) - d.distance(&tx, &ty)?)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZamfirescuGaps<S> {
    /// `α·d(x,y) − d(Tx,Ty)`
    pub banach: S,
    /// `β[d(x,Tx) + d(y,Ty)] − d(Tx,Ty)`
    pub kannan: S,
    /// `γ[d(x,Ty) + d(y,Tx)] − d(Tx,Ty)`
    pub chatterjea: S,
    /// At least one gap is `≥ −tol`.
    pub any: bool,
}

/// Evaluates the three Zamfirescu alternatives at `(x, y)`.
#[allow(clippy::too_many_arguments)]
pub fn zamfirescu_check<S: Scalar>(
    d: &MetricFn<S>,
    map: &Operator<S>,
    alpha: S,
    beta: S,
    gamma: S,
    x: &Point<S>,
    y: &Point<S>,
    tol: S,
) -> Result<ZamfirescuGaps<S>> {
    let half = S::lit(0.5);
    if !(alpha >= S::zero() && alpha < S::one())
        || !(beta >= S::zero() && beta < half)
        || !(gamma >= S::zero() && gamma < half)
    {
        return Err(Error::Precondition(format!(
            "zamfirescu needs 0≤α<1 and 0≤β,γ<1/2, got {alpha}, {beta}, {gamma}"
        )));
    }
    let (tx, ty) = (map.apply(x)?, map.apply(y)?);
    let lhs = d.distance(&tx, &ty)?;
    let banach = alpha * d.distance(x, y)? - lhs;
    let kannan = beta * (d.distance(x, &tx)? + d.distance(y, &ty)?) - lhs;
    let chatterjea = gamma * (d.distance(x, &ty)? + d.distance(y, &tx)?) - lhs;
    let any = [banach, kannan, chatterjea].iter().any(|&g| g >= -tol);
    Ok(ZamfirescuGaps {
        banach,
        kannan,
        chatterjea,
        any,
    })
}

#[derive(Clone, Debug, PartialEq)]
struct Tuple<S> {
    from: usize,
    x: Point<S>,
    y: Point<S>,
    z: Option<Point<S>>,
}

/// The tuple attaining the smallest gap.
#[derive(Clone, Debug, PartialEq)]
pub struct GapWitness<S> {
    /// `x ∈ A_from`, `y, z ∈ A_{from+1}`.
    pub from: usize,
    pub x: Point<S>,
    pub y: Point<S>,
    pub z: Point<S>,
    pub gap: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<S> {
    pub scenario: String,
    pub kind: ContractionKind,
    pub alpha: S,
    pub gamma: S,
    /// `None` when the kind gives no geometric rate (Chatterjea with α = ½).
    pub kappa: Option<S>,
    /// Tuples evaluated.
    pub samples: usize,
    pub min_gap: S,
    pub witness: Option<GapWitness<S>>,
    pub tol: S,
    pub seed: u64,
    pub three_point: bool,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Also test tuples with independent `z`.
    pub three_point: bool,
}

/// Samples `samples` tuples `x ∈ A_i`, `y ∈ A_{i+1}` for every `i` (with
/// wraparound), evaluates the scenario's gap and certifies iff the smallest
/// gap is `≥ −tol`.
///
/// Subset `i` draws `x` from stream `3i`, `y` from `3i+1`, `z` from `3i+2`
/// of `seed`, so the result is fixed by the seed whatever the thread count.
pub fn certify<S: Scalar>(
    s: &Scenario<S>,
    samples: usize,
    tol: S,
    seed: u64,
    opts: CertifyOptions,
) -> Result<Certificate<S>> {
    if samples == 0 {
        return Err(Error::Precondition("certify needs at least one sample".into()));
    }
    if !(tol >= S::zero()) {
        return Err(Error::Precondition(format!("tolerance must be >= 0, got {tol}")));
    }
    validate_constants(s.kind(), s.alpha(), s.gamma())?;
    let cover = s.cover();
    let mut tuples = Vec::new();
    for i in cover.labels() {
        let next = cover.next_label(i);
        let stream = 3 * i as u64;
        let draw = |label: usize, stream: u64| -> Result<Vec<Point<S>>> {
            let pts = cover.subset(label).sample(samples, seed, stream)?;
            if pts.len() < samples {
                return Err(Error::SamplerExhausted {
                    requested: samples,
                    obtained: pts.len(),
                });
            }
            Ok(pts)
        };
        let xs = draw(i, stream)?;
        let ys = draw(next, stream + 1)?;
        let zs = if opts.three_point {
            Some(draw(next, stream + 2)?)
        } else {
            None
        };
        for (k, (x, y)) in xs.into_iter().zip(ys).enumerate() {
            if let Some(zs) = &zs {
                tuples.push(Tuple {
                    from: i,
                    x: x.clone(),
                    y: y.clone(),
                    z: Some(zs[k].clone()),
                });
            }
            tuples.push(Tuple {
                from: i,
                x,
                y,
                z: None,
            });
        }
    }

    let gaps = tuples
        .par_iter()
        .map(|t| unchecked_gap(s, t))
        .collect::<Result<Vec<S>>>()?;

    let (idx, min_gap) = gaps
        .iter()
        .copied()
        .enumerate()
        .fold((0, S::infinity()), |(bi, bv), (i, v)| if v < bv { (i, v) } else { (bi, bv) });
    let t = &tuples[idx];
    let witness = GapWitness {
        from: t.from,
        x: t.x.clone(),
        y: t.y.clone(),
        z: t.z.clone().unwrap_or_else(|| t.y.clone()),
        gap: min_gap,
    };
    Ok(Certificate {
        scenario: s.id().to_string(),
        kind: s.kind(),
        alpha: s.alpha(),
        gamma: s.gamma(),
        kappa: s.kappa()?,
        samples: tuples.len(),
        min_gap,
        witness: Some(witness),
        tol,
        seed,
        three_point: opts.three_point,
        pass: min_gap >= -tol,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstantEstimate<S> {
    pub feasible: bool,
    pub alpha: Option<S>,
    pub gamma: Option<S>,
    pub kappa: Option<S>,
    /// Grid pairs certified before the first feasible one (or all of them).
    pub candidates_tried: usize,
    pub grid_size: usize,
    pub certificate: Option<Certificate<S>>,
}

/// Admissible `(alpha, gamma)` grid for `kind` at `resolution` steps per
/// interval, as integer numerators over the grid denominators.
fn constant_grid(kind: ContractionKind, resolution: usize) -> Vec<(usize, usize, usize, usize)> {
    let r = resolution;
    let mut out = Vec::new();
    match kind {
        // alpha = i/r, gamma = j/r, 0 ≤ j < r, 0 < i + j ≤ r
        ContractionKind::KannanG => {
            for j in 0..r {
                for i in 0..=r - j {
                    if i + j > 0 {
                        out.push((i, r, j, r));
                    }
                }
            }
        }
        // alpha = i/(2r) ∈ [0, ½], delta = j/r, 0 < i/(2r) + j/r ≤ 1
        ContractionKind::ChatterjeaG => {
            for i in 0..=r {
                for j in 0..=r {
                    if i + j > 0 && i + 2 * j <= 2 * r {
                        out.push((i, 2 * r, j, r));
                    }
                }
            }
        }
        ContractionKind::ZamfirescuMetric => {}
    }
    out
}

/// Searches the admissible constant grid for the certified pair with the
/// smallest contraction factor κ, breaking ties by smaller α then smaller γ.
/// Pairs without a geometric rate (Chatterjea, α = ½) rank after every pair
/// that has one.
pub fn estimate_constants<S: Scalar>(
    s: &Scenario<S>,
    samples: usize,
    resolution: usize,
    seed: u64,
) -> Result<ConstantEstimate<S>> {
    if resolution < 2 {
        return Err(Error::Precondition(format!(
            "grid resolution must be >= 2, got {resolution}"
        )));
    }
    let frac = |n: usize, d: usize| S::from_usize(n).unwrap() / S::from_usize(d).unwrap();
    let mut candidates = constant_grid(s.kind(), resolution)
        .into_iter()
        .map(|(an, ad, gn, gd)| {
            let (alpha, gamma) = (frac(an, ad), frac(gn, gd));
            let kappa = contraction_factor(s.kind(), alpha, gamma)?;
            Ok((kappa, alpha, gamma))
        })
        .collect::<Result<Vec<(Option<S>, S, S)>>>()?;
    let grid_size = candidates.len();
    let rank = |k: &Option<S>| k.unwrap_or_else(S::infinity);
    candidates.sort_by(|a, b| {
        rank(&a.0)
            .partial_cmp(&rank(&b.0))
            .unwrap()
            .then(a.1.partial_cmp(&b.1).unwrap())
            .then(a.2.partial_cmp(&b.2).unwrap())
    });
    for (n, (kappa, alpha, gamma)) in candidates.into_iter().enumerate() {
        let trial = s.with_constants(alpha, gamma)?;
        let cert = certify(&trial, samples, S::zero(), seed, CertifyOptions::default())?;
        if cert.pass {
            return Ok(ConstantEstimate {
                feasible: true,
                alpha: Some(alpha),
                gamma: Some(gamma),
                kappa,
                candidates_tried: n + 1,
                grid_size,
                certificate: Some(cert),
            });
        }
    }
    Ok(ConstantEstimate {
        feasible: false,
        alpha: None,
        gamma: None,
        kappa: None,
        candidates_tried: grid_size,
        grid_size,
        certificate: None,
    })
}
