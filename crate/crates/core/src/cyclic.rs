//! Cyclic covers `A_1, …, A_p` and the check `T(A_i) ⊆ A_{i+1}` (with
//! `A_{p+1} = A_1`).
//!
//! Subsets are labelled `1..=p` everywhere they are reported. Closedness of
//! each `A_i` is assumed, not verified.

use std::fmt;
use std::sync::Arc;

use rand::distributions::Uniform;
use rand::prelude::*;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gmetric::{BoxDomain, Point};
use crate::operator::Operator;
use crate::sampling::{stream_rng, BoxSampler};
use crate::scalar::Scalar;

type PredicateEval<S> = Arc<dyn Fn(&[S]) -> Result<bool> + Send + Sync>;

/// Rejection-sampling attempts allowed per accepted point of a predicate set.
const REJECTION_ATTEMPTS: usize = 10_000;

#[derive(Clone)]
pub enum Region<S> {
    /// Finite union of closed boxes.
    Boxes(Vec<BoxDomain<S>>),
    /// `{x ∈ bounds : pred(x)}`; sampled by rejection from `bounds`.
    Predicate {
        name: String,
        pred: PredicateEval<S>,
        bounds: BoxDomain<S>,
    },
}

impl<S> fmt::Debug for Region<S>
where
    S: fmt::Debug,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Boxes(b) => f.debug_tuple("Boxes").field(b).finish(),
            Region::Predicate { name, .. } => write!(f, "Predicate({name})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SubsetSpec<S> {
    label: usize,
    region: Region<S>,
    boundary_tol: S,
}

impl<S: Scalar> SubsetSpec<S> {
    pub fn boxes(boxes: Vec<BoxDomain<S>>) -> Self {
        Self {
            label: 0,
            region: Region::Boxes(boxes),
            boundary_tol: S::zero(),
        }
    }

    pub fn interval(lo: S, hi: S) -> Result<Self> {
        Ok(Self::boxes(vec![BoxDomain::interval(lo, hi)?]))
    }

    pub fn predicate<F>(name: impl Into<String>, bounds: BoxDomain<S>, pred: F) -> Self
    where
        F: Fn(&[S]) -> Result<bool> + Send + Sync + 'static,
    {
        Self {
            label: 0,
            region: Region::Predicate {
                name: name.into(),
                pred: Arc::new(pred),
                bounds,
            },
            boundary_tol: S::zero(),
        }
    }

    /// Widens box membership by `band` on every side (default 0, i.e. exact
    /// closed intervals).
    pub fn with_boundary_tol(mut self, band: S) -> Self {
        self.boundary_tol = band;
        self
    }

    pub fn label(&self) -> usize {
        self.label
    }

    pub fn region(&self) -> &Region<S> {
        &self.region
    }

    pub fn contains(&self, x: &Point<S>) -> Result<bool> {
        match &self.region {
            Region::Boxes(bs) => Ok(bs
                .iter()
                .any(|b| b.contains_within(x, self.boundary_tol))),
            Region::Predicate { pred, bounds, .. } => {
                Ok(bounds.contains_within(x, self.boundary_tol) && pred(x.coords())?)
            }
        }
    }

    /// Draws up to `count` members. Returns fewer only when rejection
    /// sampling of a predicate set runs out of attempts.
    pub fn sample(&self, count: usize, seed: u64, stream: u64) -> Result<Vec<Point<S>>> {
        match &self.region {
            Region::Boxes(bs) => {
                Ok(BoxSampler::new(bs.clone(), seed, stream)?.take(count).collect())
            }
            Region::Predicate { pred, bounds, .. } => {
                if !bounds.is_bounded() {
                    return Err(Error::Precondition(format!(
                        "predicate subset A_{} needs bounded sampling bounds",
                        self.label
                    )));
                }
                let mut rng = stream_rng(seed, stream);
                let axes: Vec<_> = bounds
                    .lower()
                    .iter()
                    .zip(bounds.upper())
                    .map(|(&lo, &hi)| Uniform::new_inclusive(lo, hi.max(lo)))
                    .collect();
                let mut out = Vec::with_capacity(count);
                'points: while out.len() < count {
                    for _ in 0..REJECTION_ATTEMPTS {
                        let c: Vec<S> = axes.iter().map(|u| u.sample(&mut rng)).collect();
                        if pred(&c)? {
                            out.push(Point::from_raw(c));
                            continue 'points;
                        }
                    }
                    break;
                }
                Ok(out)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CyclicCover<S> {
    subsets: Vec<SubsetSpec<S>>,
}

impl<S: Scalar> CyclicCover<S> {
    /// Labels the subsets `1..=p` in order and checks each one is non-empty.
    pub fn new(subsets: Vec<SubsetSpec<S>>) -> Result<Self> {
        if subsets.is_empty() {
            return Err(Error::Precondition("a cyclic cover needs p >= 1 subsets".into()));
        }
        let subsets: Vec<_> = subsets
            .into_iter()
            .enumerate()
            .map(|(i, mut s)| {
                s.label = i + 1;
                s
            })
            .collect();
        for s in &subsets {
            let empty = match &s.region {
                Region::Boxes(bs) => bs.is_empty(),
                Region::Predicate { .. } => s.sample(1, 0, 0)?.is_empty(),
            };
            if empty {
                return Err(Error::EmptySubset { label: s.label });
            }
        }
        Ok(Self { subsets })
    }

    pub fn p(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[SubsetSpec<S>] {
        &self.subsets
    }

    /// Subset with 1-based `label`.
    pub fn subset(&self, label: usize) -> &SubsetSpec<S> {
        &self.subsets[label - 1]
    }

    /// Label following `label`, wrapping `p` back to 1.
    pub fn next_label(&self, label: usize) -> usize {
        label % self.p() + 1
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> {
        1..=self.p()
    }

    /// Dimension of the cover's points.
    pub fn dim(&self) -> Option<usize> {
        self.subsets.iter().find_map(|s| match &s.region {
            Region::Boxes(bs) => bs.first().map(|b| b.dim()),
            Region::Predicate { bounds, .. } => Some(bounds.dim()),
        })
    }
}

/// Labels of every subset containing `x`, ascending. Empty means `x` has
/// escaped the cover. Fails only if a predicate subset fails to evaluate.
pub fn locate<S: Scalar>(cover: &CyclicCover<S>, x: &Point<S>) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for s in &cover.subsets {
        if s.contains(x)? {
            out.push(s.label);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubsetCheck<S> {
    pub label: usize,
    pub target: usize,
    pub samples: usize,
    pub violations: usize,
    /// First sampled `(x, T(x))` with `x ∈ A_label` and `T(x) ∉ A_target`.
    pub witness: Option<(Point<S>, Point<S>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CyclicReport<S> {
    pub subsets: Vec<SubsetCheck<S>>,
    pub seed: u64,
    pub pass: bool,
}

/// Samples `count` points of every `A_i`, applies `T` and checks membership
/// in `A_{i+1}`. Subset `i` draws from stream `i` of `seed`.
pub fn validate_cyclic_cover<S: Scalar>(
    cover: &CyclicCover<S>,
    map: &Operator<S>,
    count: usize,
    seed: u64,
) -> Result<CyclicReport<S>> {
    if count == 0 {
        return Err(Error::Precondition("cyclic validation needs count >= 1".into()));
    }
    let subsets = cover
        .subsets
        .par_iter()
        .map(|s| -> Result<SubsetCheck<S>> {
            let pts = s.sample(count, seed, s.label as u64)?;
            if pts.is_empty() {
                return Err(Error::EmptySubset { label: s.label });
            }
            let target = cover.subset(cover.next_label(s.label));
            let mut violations = 0;
            let mut witness = None;
            for x in pts.iter() {
                let tx = map.apply(x)?;
                if !target.contains(&tx)? {
                    violations += 1;
                    if witness.is_none() {
                        witness = Some((x.clone(), tx));
                    }
                }
            }
            Ok(SubsetCheck {
                label: s.label,
                target: target.label,
                samples: pts.len(),
                violations,
                witness,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = subsets.iter().all(|s| s.violations == 0);
    Ok(CyclicReport {
        subsets,
        seed,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split() -> CyclicCover<f64> {
        CyclicCover::new(vec![
            SubsetSpec::interval(0.0, 1.0).unwrap(),
            SubsetSpec::interval(-1.0, 0.0).unwrap(),
        ])
        .unwrap()
    }

    fn p(v: f64) -> Point<f64> {
        Point::scalar(v).unwrap()
    }

    #[test]
    fn locate_examples() {
        let c = split();
        assert_eq!(locate(&c, &p(0.5)).unwrap(), vec![1]);
        assert_eq!(locate(&c, &p(0.0)).unwrap(), vec![1, 2]);
        assert_eq!(locate(&c, &p(2.0)).unwrap(), Vec::<usize>::new());
        assert_eq!(locate(&c, &p(-0.25)).unwrap(), vec![2]);
    }

    #[test]
    fn wraparound_goes_back_to_first() {
        let c = split();
        assert_eq!(c.next_label(1), 2);
        assert_eq!(c.next_label(2), 1);
    }

    #[test]
    fn identity_is_not_cyclic_on_split() {
        let c = split();
        let r = validate_cyclic_cover(&c, &Operator::identity(1), 200, 1).unwrap();
        assert!(!r.pass);
        let (x, tx) = r.subsets[0].witness.clone().unwrap();
        assert!(x.coords()[0] > 0.0);
        assert!(!locate(&c, &tx).unwrap().contains(&2));
    }

    #[test]
    fn single_set_cycle_is_a_self_map_check() {
        let c = CyclicCover::new(vec![SubsetSpec::interval(-1.0, 1.0).unwrap()]).unwrap();
        let half = Operator::scalar("half", |x: f64| Ok(x / 2.0));
        let r = validate_cyclic_cover(&c, &half, 500, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.subsets[0].target, 1);
    }

    #[test]
    fn boundary_band_widens_membership() {
        let s = SubsetSpec::interval(0.0, 1.0).unwrap();
        assert!(!s.contains(&p(-1e-10)).unwrap());
        let s = s.with_boundary_tol(1e-9);
        assert!(s.contains(&p(-1e-10)).unwrap());
    }

    #[test]
    fn empty_predicate_subset_is_rejected() {
        let bounds = BoxDomain::interval(-1.0, 1.0).unwrap();
        let never = SubsetSpec::predicate("never", bounds, |_: &[f64]| Ok(false));
        assert!(matches!(
            CyclicCover::new(vec![never]),
            Err(Error::EmptySubset { label: 1 })
        ));
        assert!(matches!(CyclicCover::<f64>::new(vec![]), Err(Error::Precondition(_))));
    }

    #[test]
    fn predicate_subsets_sample_members() {
        let bounds = BoxDomain::interval(-1.0, 1.0).unwrap();
        let s = SubsetSpec::predicate("nonpos", bounds, |x: &[f64]| Ok(x[0] <= 0.0));
        let pts = s.sample(100, 4, 0).unwrap();
        assert_eq!(pts.len(), 100);
        assert!(pts.iter().all(|x| x.coords()[0] <= 0.0));
    }
}
