//! G-metrics: points, box domains, the sum/max constructions from an ordinary
//! metric, and a sampling checker for the five G-metric axioms.
//!
//! A G-metric `G: X³ → [0, ∞)` satisfies
//!
//! * G1: `G(x, x, x) = 0`
//! * G2: `G(x, x, y) > 0` for `x ≠ y`
//! * G3: `G(x, x, y) ≤ G(x, y, z)` for `y ≠ z`
//! * G4: `G` is invariant under every permutation of its arguments
//! * G5: `G(x, y, z) ≤ G(x, a, a) + G(a, y, z)` (rectangle inequality)
//!
//! On continuous domains the axioms can only be falsified, never proven, so
//! [`check_g_axioms`] reports the worst violation found among sampled tuples.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sampling::BoxSampler;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Point<S> {
    coords: Vec<S>,
}

impl<S: Scalar> Point<S> {
    /// Builds a point, rejecting NaN and infinite coordinates.
    pub fn new(coords: Vec<S>) -> Result<Self> {
        if let Some(index) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        if coords.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        Ok(Self { coords })
    }

    pub fn scalar(v: S) -> Result<Self> {
        Self::new(vec![v])
    }

    pub(crate) fn from_raw(coords: Vec<S>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    /// Largest coordinate-wise absolute difference.
    pub fn separation(&self, other: &Self) -> S {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(S::zero(), |acc, (&a, &b)| acc.max((a - b).abs()))
    }

    /// `x ≠ y` in the floating-point sense used by the axiom checker.
    pub fn is_distinct_from(&self, other: &Self) -> bool {
        self.separation(other) > S::distinct_sep()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64_lossy()).collect()
    }
}

impl<S: Scalar> fmt::Display for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Closed coordinate box `[lower_k, upper_k]`. Bounds may be infinite; such
/// boxes support membership but not uniform sampling.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxDomain<S> {
    lower: Vec<S>,
    upper: Vec<S>,
}

impl<S: Scalar> BoxDomain<S> {
    pub fn new(lower: Vec<S>, upper: Vec<S>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::InvalidDomain("box has dimension 0".into()));
        }
        for (k, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if lo.is_nan() || hi.is_nan() || lo > hi {
                return Err(Error::InvalidDomain(format!(
                    "coordinate {k}: bounds [{lo}, {hi}] are not an interval"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn interval(lo: S, hi: S) -> Result<Self> {
        Self::new(vec![lo], vec![hi])
    }

    /// `[-∞, ∞]^dim`.
    pub fn unbounded(dim: usize) -> Self {
        Self {
            lower: vec![S::neg_infinity(); dim],
            upper: vec![S::infinity(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[S] {
        &self.lower
    }

    pub fn upper(&self) -> &[S] {
        &self.upper
    }

    pub fn is_bounded(&self) -> bool {
        self.lower
            .iter()
            .chain(&self.upper)
            .all(|b| b.is_finite())
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        self.contains_within(p, S::zero())
    }

    /// Membership in the box widened by `band` on every side.
    pub fn contains_within(&self, p: &Point<S>, band: S) -> bool {
        p.dim() == self.dim()
            && p
                .coords()
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&c, (&lo, &hi))| c >= lo - band && c <= hi + band)
    }

    /// Constructs a point of this domain; anything outside the box is rejected.
    pub fn point(&self, coords: Vec<S>) -> Result<Point<S>> {
        let p = Point::new(coords)?;
        self.check(&p)?;
        Ok(p)
    }

    pub fn check(&self, p: &Point<S>) -> Result<()> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: p.dim(),
            });
        }
        if !self.contains(p) {
            return Err(Error::OutsideDomain { point: p.to_f64() });
        }
        Ok(())
    }

    pub fn sampler(&self, seed: u64, stream: u64) -> Result<BoxSampler<S>> {
        BoxSampler::new(vec![self.clone()], seed, stream)
    }

    /// All `2^dim` corners (bounded boxes only).
    pub fn vertices(&self) -> Vec<Point<S>> {
        let d = self.dim();
        (0..1usize << d)
            .map(|mask| {
                Point::from_raw(
                    (0..d)
                        .map(|k| {
                            if mask >> k & 1 == 1 {
                                self.upper[k]
                            } else {
                                self.lower[k]
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

type PairEval<S> = Arc<dyn Fn(&[S], &[S]) -> Result<S> + Send + Sync>;
type TripleEval<S> = Arc<dyn Fn(&[S], &[S], &[S]) -> Result<S> + Send + Sync>;

fn finite_nonneg<S: Scalar>(v: S, what: &str) -> Result<S> {
    if !v.is_finite() {
        return Err(Error::Evaluation(format!("{what} returned {v}")));
    }
    if v < S::zero() {
        return Err(Error::Evaluation(format!("{what} returned negative value {v}")));
    }
    Ok(v)
}

fn same_dim<S: Scalar>(expected: usize, pts: &[&Point<S>]) -> Result<()> {
    match pts.iter().find(|p| p.dim() != expected) {
        Some(p) => Err(Error::DimensionMismatch {
            expected,
            got: p.dim(),
        }),
        None => Ok(()),
    }
}

/// An ordinary metric `d` on a box domain.
#[derive(Clone)]
pub struct MetricFn<S> {
    name: String,
    domain: BoxDomain<S>,
    eval: PairEval<S>,
}

impl<S: Scalar> MetricFn<S> {
    pub fn new<F>(name: impl Into<String>, domain: BoxDomain<S>, eval: F) -> Self
    where
        F: Fn(&[S], &[S]) -> Result<S> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            domain,
            eval: Arc::new(eval),
        }
    }

    /// `d(x, y) = Σ |x_k − y_k|`; on the real line this is `|x − y|`.
    pub fn abs(domain: BoxDomain<S>) -> Self {
        Self::new("abs", domain, |x, y| {
            Ok(x.iter()
                .zip(y)
                .fold(S::zero(), |acc, (&a, &b)| acc + (a - b).abs()))
        })
    }

    pub fn euclidean(domain: BoxDomain<S>) -> Self {
        Self::new("euclidean", domain, |x, y| {
            Ok(x.iter()
                .zip(y)
                .fold(S::zero(), |acc, (&a, &b)| acc + (a - b) * (a - b))
                .sqrt())
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &BoxDomain<S> {
        &self.domain
    }

    pub fn distance(&self, x: &Point<S>, y: &Point<S>) -> Result<S> {
        same_dim(self.domain.dim(), &[x, y])?;
        finite_nonneg((self.eval)(x.coords(), y.coords())?, &self.name)
    }
}

impl<S> fmt::Debug for MetricFn<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricFn").field("name", &self.name).finish()
    }
}

/// A ternary distance `G` on a box domain. Being a G-metric is a property
/// checked by [`check_g_axioms`], not assumed by construction.
#[derive(Clone)]
pub struct GMetricFn<S> {
    name: String,
    domain: BoxDomain<S>,
    eval: TripleEval<S>,
}

impl<S: Scalar> GMetricFn<S> {
    pub fn new<F>(name: impl Into<String>, domain: BoxDomain<S>, eval: F) -> Self
    where
        F: Fn(&[S], &[S], &[S]) -> Result<S> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            domain,
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &BoxDomain<S> {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn eval(&self, x: &Point<S>, y: &Point<S>, z: &Point<S>) -> Result<S> {
        same_dim(self.domain.dim(), &[x, y, z])?;
        finite_nonneg((self.eval)(x.coords(), y.coords(), z.coords())?, &self.name)
    }

    /// Same as [`eval`](Self::eval) but also rejects points outside the domain.
    pub fn eval_in_domain(&self, x: &Point<S>, y: &Point<S>, z: &Point<S>) -> Result<S> {
        for p in [x, y, z] {
            self.domain.check(p)?;
        }
        self.eval(x, y, z)
    }
}

impl<S> fmt::Debug for GMetricFn<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GMetricFn").field("name", &self.name).finish()
    }
}

/// `G_s(x, y, z) = d(x, y) + d(y, z) + d(x, z)`.
pub fn g_sum_from_metric<S: Scalar>(d: &MetricFn<S>) -> GMetricFn<S> {
    let inner = d.eval.clone();
    GMetricFn::new(format!("sum({})", d.name), d.domain.clone(), move |x, y, z| {
        Ok(inner(x, y)? + inner(y, z)? + inner(x, z)?)
    })
}

/// `G_m(x, y, z) = max{d(x, y), d(y, z), d(x, z)}`.
pub fn g_max_from_metric<S: Scalar>(d: &MetricFn<S>) -> GMetricFn<S> {
    let inner = d.eval.clone();
    GMetricFn::new(format!("max({})", d.name), d.domain.clone(), move |x, y, z| {
        Ok(inner(x, y)?.max(inner(y, z)?).max(inner(x, z)?))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    G1,
    G2,
    G3,
    G4,
    G5,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [Axiom::G1, Axiom::G2, Axiom::G3, Axiom::G4, Axiom::G5];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::G1 => "G1",
            Axiom::G2 => "G2",
            Axiom::G3 => "G3",
            Axiom::G4 => "G4",
            Axiom::G5 => "G5",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Axiom::G1 => "G(x,x,x) = 0",
            Axiom::G2 => "G(x,x,y) > 0 for x != y",
            Axiom::G3 => "G(x,x,y) <= G(x,y,z) for y != z",
            Axiom::G4 => "symmetry in all three arguments",
            Axiom::G5 => "G(x,y,z) <= G(x,a,a) + G(a,y,z)",
        }
    }
}

/// Outcome of one axiom over all sampled tuples.
///
/// For G1, G3, G4 and G5 a tuple violates the axiom when its violation
/// magnitude exceeds the report tolerance, so `pass ⇔ worst_violation ≤ tol`.
/// G2 is strict: a tuple violates it when `G(x,x,y) ≤ tol_strict`, and the
/// recorded magnitude is `tol_strict − G(x,x,y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomOutcome<S> {
    pub axiom: Axiom,
    pub pass: bool,
    /// Tuples the axiom applied to (G2/G3 skip tuples with coincident points).
    pub tested: usize,
    pub violations: usize,
    pub worst_violation: S,
    /// Points of the worst violating tuple, in the axiom's argument order.
    pub witness: Option<Vec<Point<S>>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport<S> {
    pub gmetric: String,
    pub outcomes: Vec<AxiomOutcome<S>>,
    pub samples_used: usize,
    pub tolerance: S,
    pub tol_strict: S,
    pub seed: Option<u64>,
}

impl<S: Scalar> AxiomReport<S> {
    pub fn pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }

    pub fn outcome(&self, axiom: Axiom) -> &AxiomOutcome<S> {
        self.outcomes
            .iter()
            .find(|o| o.axiom == axiom)
            .expect("report holds every axiom")
    }

    pub fn failing(&self) -> impl Iterator<Item = &AxiomOutcome<S>> {
        self.outcomes.iter().filter(|o| !o.pass)
    }
}

/// Per-tuple magnitudes, `None` where the axiom does not apply.
type TupleMagnitudes<S> = [Option<(S, bool)>; 5];

fn tuple_magnitudes<S: Scalar>(
    g: &GMetricFn<S>,
    q: &[Point<S>; 4],
    tol: S,
) -> Result<TupleMagnitudes<S>> {
    let [x, y, z, a] = q;
    let strict = S::tol_strict();
    let mut out: TupleMagnitudes<S> = [None; 5];

    let g1 = g.eval(x, x, x)?;
    out[0] = Some((g1, g1 > tol));

    let gxxy = g.eval(x, x, y)?;
    if x.is_distinct_from(y) {
        out[1] = Some(((strict - gxxy).max(S::zero()), gxxy <= strict));
    }

    let gxyz = g.eval(x, y, z)?;
    if y.is_distinct_from(z) {
        let m = gxxy - gxyz;
        out[2] = Some((m.max(S::zero()), m > tol));
    }

    let perms = [
        g.eval(x, z, y)?,
        g.eval(y, x, z)?,
        g.eval(y, z, x)?,
        g.eval(z, x, y)?,
        g.eval(z, y, x)?,
    ];
    let (lo, hi) = perms
        .iter()
        .fold((gxyz, gxyz), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let spread = hi - lo;
    out[3] = Some((spread, spread > tol));

    let m = gxyz - g.eval(x, a, a)? - g.eval(a, y, z)?;
    out[4] = Some((m.max(S::zero()), m > tol));

    Ok(out)
}

fn witness_points<S: Scalar>(axiom: Axiom, q: &[Point<S>; 4]) -> Vec<Point<S>> {
    let [x, y, z, a] = q;
    match axiom {
        Axiom::G1 => vec![x.clone()],
        Axiom::G2 => vec![x.clone(), y.clone()],
        Axiom::G3 | Axiom::G4 => vec![x.clone(), y.clone(), z.clone()],
        Axiom::G5 => vec![x.clone(), y.clone(), z.clone(), a.clone()],
    }
}

/// Checks G1–G5 on `count` sampled quadruples `(x, y, z, a)` drawn from
/// `sampler` (4·`count` points in total).
///
/// Tuples are evaluated in parallel; aggregation keeps the first tuple (in
/// draw order) attaining the worst violation, so the report does not depend
/// on how the work was split.
pub fn check_g_axioms<S, I>(
    g: &GMetricFn<S>,
    sampler: I,
    count: usize,
    tol: S,
) -> Result<AxiomReport<S>>
where
    S: Scalar,
    I: IntoIterator<Item = Point<S>>,
{
    if count == 0 {
        return Err(Error::Precondition("axiom check needs count >= 1".into()));
    }
    if !(tol >= S::zero()) {
        return Err(Error::Precondition(format!("tolerance must be >= 0, got {tol}")));
    }
    let requested = 4 * count;
    let points: Vec<Point<S>> = sampler.into_iter().take(requested).collect();
    if points.len() < requested {
        return Err(Error::SamplerExhausted {
            requested,
            obtained: points.len(),
        });
    }
    let quads: Vec<[Point<S>; 4]> = points
        .chunks_exact(4)
        .map(|c| [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()])
        .collect();

    let per_tuple = quads
        .par_iter()
        .map(|q| tuple_magnitudes(g, q, tol))
        .collect::<Result<Vec<_>>>()?;

    let outcomes = Axiom::ALL
        .iter()
        .enumerate()
        .map(|(k, &axiom)| {
            let mut tested = 0;
            let mut violations = 0;
            let mut worst = S::zero();
            let mut worst_idx: Option<usize> = None;
            for (i, m) in per_tuple.iter().enumerate() {
                if let Some((mag, violated)) = m[k] {
                    tested += 1;
                    if violated {
                        violations += 1;
                        if worst_idx.is_none() || mag > worst {
                            worst = mag;
                            worst_idx = Some(i);
                        }
                    }
                }
            }
            AxiomOutcome {
                axiom,
                pass: violations == 0,
                tested,
                violations,
                worst_violation: worst,
                witness: worst_idx.map(|i| witness_points(axiom, &quads[i])),
            }
        })
        .collect();

    Ok(AxiomReport {
        gmetric: g.name.clone(),
        outcomes,
        samples_used: count,
        tolerance: tol,
        tol_strict: S::tol_strict(),
        seed: None,
    })
}

/// [`check_g_axioms`] with points drawn uniformly from the G-metric's own
/// domain; the seed is recorded so failures replay.
pub fn check_g_axioms_seeded<S: Scalar>(
    g: &GMetricFn<S>,
    count: usize,
    tol: S,
    seed: u64,
) -> Result<AxiomReport<S>> {
    let sampler = g.domain().sampler(seed, 0)?;
    let mut report = check_g_axioms(g, sampler, count, tol)?;
    report.seed = Some(seed);
    Ok(report)
}

/// Largest G-value seen over the domain's vertex triples and `samples`
/// random triples. A lower bound on the G-diameter, exact for G_s/G_m of
/// |·| on an interval.
pub fn estimate_g_diameter<S: Scalar>(g: &GMetricFn<S>, samples: usize, seed: u64) -> Result<S> {
    let mut best = S::zero();
    if g.domain().dim() <= 4 {
        let v = g.domain().vertices();
        for a in &v {
            for b in &v {
                for c in &v {
                    best = best.max(g.eval(a, b, c)?);
                }
            }
        }
    }
    let mut sampler = g.domain().sampler(seed, 1)?;
    for _ in 0..samples {
        let (a, b, c) = (sampler.draw(), sampler.draw(), sampler.draw());
        best = best.max(g.eval(&a, &b, &c)?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> MetricFn<f64> {
        MetricFn::abs(BoxDomain::interval(-1.0, 1.0).unwrap())
    }

    fn p(v: f64) -> Point<f64> {
        Point::scalar(v).unwrap()
    }

    #[test]
    fn sum_construction_values() {
        let g = g_sum_from_metric(&line());
        assert_eq!(g.eval(&p(0.0), &p(0.5), &p(1.0)).unwrap(), 2.0);
        assert_eq!(g.eval(&p(0.0), &p(1.0), &p(-1.0)).unwrap(), 4.0);
        assert_eq!(g.eval(&p(0.3), &p(0.3), &p(0.3)).unwrap(), 0.0);
    }

    #[test]
    fn max_construction_values() {
        let g = g_max_from_metric(&line());
        assert_eq!(g.eval(&p(0.0), &p(0.5), &p(1.0)).unwrap(), 1.0);
        assert_eq!(g.eval(&p(0.0), &p(1.0), &p(-1.0)).unwrap(), 2.0);
        assert_eq!(g.eval(&p(-0.7), &p(-0.7), &p(-0.7)).unwrap(), 0.0);
    }

    #[test]
    fn points_outside_domain_are_rejected() {
        let d = BoxDomain::interval(-1.0, 1.0).unwrap();
        assert!(matches!(d.point(vec![1.5]), Err(Error::OutsideDomain { .. })));
        assert!(matches!(
            d.point(vec![0.0, 0.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(Point::new(vec![f64::NAN]), Err(Error::NonFinite { index: 0 })));
        assert!(d.point(vec![1.0]).is_ok());
    }

    #[test]
    fn mixed_dimension_evaluation_is_an_error() {
        let g = g_sum_from_metric(&line());
        let q = Point::new(vec![0.0, 0.0]).unwrap();
        assert!(matches!(
            g.eval(&p(0.0), &q, &p(0.0)),
            Err(Error::DimensionMismatch { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn sum_and_max_pass_all_axioms() {
        for g in [g_sum_from_metric(&line()), g_max_from_metric(&line())] {
            let report = check_g_axioms_seeded(&g, 10_000, 1e-12, 11).unwrap();
            for o in &report.outcomes {
                assert!(o.pass, "{} failed {:?}", g.name(), o);
                assert!(o.tested > 0);
            }
        }
    }

    #[test]
    fn ignoring_third_argument_breaks_symmetry() {
        let d = BoxDomain::interval(-1.0, 1.0).unwrap();
        let g = GMetricFn::new("first-pair", d, |x: &[f64], y: &[f64], _z: &[f64]| {
            Ok((x[0] - y[0]).abs())
        });
        let report = check_g_axioms_seeded(&g, 1_000, 1e-12, 3).unwrap();
        let g4 = report.outcome(Axiom::G4);
        assert!(!g4.pass);
        let w = g4.witness.as_ref().unwrap();
        assert_eq!(w.len(), 3);
        let (a, b, c) = (&w[0], &w[1], &w[2]);
        assert!(g.eval(a, b, c).unwrap() != g.eval(a, c, b).unwrap()
            || g.eval(a, b, c).unwrap() != g.eval(b, c, a).unwrap());
        // the hand counterexample from the construction: (0, 0, 1)
        assert_eq!(g.eval(&p(0.0), &p(0.0), &p(1.0)).unwrap(), 0.0);
        assert_eq!(g.eval(&p(0.0), &p(1.0), &p(0.0)).unwrap(), 1.0);
    }

    #[test]
    fn exhausted_sampler_reports_what_it_got() {
        let g = g_sum_from_metric(&line());
        let pts = vec![p(0.0); 7];
        assert_eq!(
            check_g_axioms(&g, pts, 2, 0.0),
            Err(Error::SamplerExhausted {
                requested: 8,
                obtained: 7
            })
        );
    }

    #[test]
    fn zero_metric_fails_strict_positivity() {
        let d = BoxDomain::interval(-1.0, 1.0).unwrap();
        let g = GMetricFn::new("zero", d, |_: &[f64], _: &[f64], _: &[f64]| Ok(0.0));
        let report = check_g_axioms_seeded(&g, 100, 1e-12, 5).unwrap();
        assert!(!report.outcome(Axiom::G2).pass);
        assert!(report.outcome(Axiom::G1).pass);
        assert!(report.outcome(Axiom::G4).pass);
    }

    #[test]
    fn diameter_of_interval() {
        let g = g_sum_from_metric(&line());
        assert_eq!(estimate_g_diameter(&g, 100, 0).unwrap(), 4.0);
    }

    #[test]
    fn f32_constructions() {
        let d = MetricFn::<f32>::abs(BoxDomain::interval(-1.0, 1.0).unwrap());
        let g = g_sum_from_metric(&d);
        let pt = |v: f32| Point::scalar(v).unwrap();
        assert_eq!(g.eval(&pt(0.0), &pt(0.5), &pt(1.0)).unwrap(), 2.0f32);
        let report = check_g_axioms_seeded(&g, 2_000, 1e-6, 1).unwrap();
        assert!(report.pass());
    }
}
